#include "nsplit/measures.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "nsplit/combinat.hpp"

namespace nsplit::measures {

std::string Symbol::name() const {
  switch (kind) {
    case Kind::unit:
      return "1";
    case Kind::background:
      return "A";
    default:
      return "m[" + std::to_string(cell) + "][" + std::to_string(color) + "]";
  }
}

SymbolicQuantity SymbolicQuantity::of(const Symbol& s, const Rational& r) {
  SymbolicQuantity q;
  if (r != Rational(0)) q.coeffs_.emplace(s, r);
  return q;
}

Rational SymbolicQuantity::coefficient(const Symbol& s) const {
  const auto it = coeffs_.find(s);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

bool SymbolicQuantity::has_independent_term() const {
  // zero coefficients are never stored, so presence means nonzero
  for (const auto& [s, r] : coeffs_)
    if (s.kind == Symbol::Kind::independent) return true;
  return false;
}

int SymbolicQuantity::formal_sign() const {
  if (coeffs_.empty()) return 0;
  return coeffs_.begin()->second > Rational(0) ? 1 : -1;
}

SymbolicQuantity& SymbolicQuantity::operator+=(const SymbolicQuantity& o) {
  for (const auto& [s, r] : o.coeffs_) {
    const auto [it, inserted] = coeffs_.try_emplace(s, r);
    if (!inserted) {
      it->second += r;
      if (it->second == Rational(0)) coeffs_.erase(it);
    }
  }
  return *this;
}

SymbolicQuantity& SymbolicQuantity::operator-=(const SymbolicQuantity& o) {
  for (const auto& [s, r] : o.coeffs_) {
    const auto [it, inserted] = coeffs_.try_emplace(s, -r);
    if (!inserted) {
      it->second -= r;
      if (it->second == Rational(0)) coeffs_.erase(it);
    }
  }
  return *this;
}

SymbolicQuantity SymbolicQuantity::scaled(const Rational& r) const {
  SymbolicQuantity q;
  if (r == Rational(0)) return q;
  for (const auto& [s, c] : coeffs_) q.coeffs_.emplace(s, c * r);
  return q;
}

namespace {

std::string rational_str(const Rational& r) {
  std::string s = std::to_string(r.numerator());
  if (r.denominator() != 1) s += "/" + std::to_string(r.denominator());
  return s;
}

}  // namespace

std::string SymbolicQuantity::str() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [s, r] : coeffs_) {
    Rational a = r;
    if (first) {
      if (a < Rational(0)) {
        os << "-";
        a = -a;
      }
      first = false;
    } else {
      os << (a < Rational(0) ? " - " : " + ");
      if (a < Rational(0)) a = -a;
    }
    if (s.kind == Symbol::Kind::unit) {
      os << rational_str(a);
    } else if (a == Rational(1)) {
      os << s.name();
    } else {
      os << rational_str(a) << "*" << s.name();
    }
  }
  return os.str();
}

SymbolicQuantity sq_add(const SymbolicQuantity& a, const SymbolicQuantity& b) { return a + b; }
SymbolicQuantity sq_sub(const SymbolicQuantity& a, const SymbolicQuantity& b) { return a - b; }
SymbolicQuantity sq_scale(const SymbolicQuantity& q, const Rational& r) { return q.scaled(r); }
bool sq_is_zero(const SymbolicQuantity& q) { return q.is_zero(); }

std::vector<SymbolicQuantity> SymbolicColoring::totals() const {
  std::vector<SymbolicQuantity> tot(static_cast<std::size_t>(palette));
  for (const auto& cell : cells)
    for (const auto& reg : cell) tot[static_cast<std::size_t>(reg.color)] += reg.measure;
  return tot;
}

SymbolicColoring build_construction(int d, int t, int N, int k) {
  if (d != 1 && d != 2) throw std::invalid_argument("build_construction: d must be 1 or 2");
  if (N < 2) throw std::invalid_argument("build_construction: N must be >= 2");
  if (k < 2) throw std::invalid_argument("build_construction: k must be >= 2");
  if (t < 0) throw std::invalid_argument("build_construction: t must be >= 0");

  SymbolicColoring col;
  col.d = d;
  col.t = t;
  col.N = N;
  col.k = k;
  col.delta = Rational(1, 8);
  std::size_t ncells = 1;
  for (int i = 0; i < d; ++i) ncells *= static_cast<std::size_t>(N);
  col.palette = k + 1 + static_cast<int>(ncells);

  const SymbolicQuantity half_flank = SymbolicQuantity::of(Symbol::area(), Rational(1, 2));
  const SymbolicQuantity full_area = SymbolicQuantity::of(Symbol::area(), Rational(1));
  // white filler per gap: (1 - A) / (k + 1), minus the adjacent V measures
  const SymbolicQuantity gap = SymbolicQuantity::unit(Rational(1, k + 1)) -
                               SymbolicQuantity::of(Symbol::area(), Rational(1, k + 1));

  for (std::size_t cell = 0; cell < ncells; ++cell) {
    std::vector<Region> regs;
    const int bg = col.background_color(static_cast<int>(cell));
    const int white = col.white_color();
    auto mq = [&](int eta, const Rational& r) {
      return SymbolicQuantity::of(Symbol::m(static_cast<int>(cell), eta), r);
    };
    if (d == 1) {
      // [bg A/2][w0][V0][w1][V1]...[V_{k-1}][wk][bg A/2]
      regs.push_back({bg, half_flank});
      for (int eta = 0; eta < k; ++eta) {
        SymbolicQuantity w = gap;
        if (eta > 0) w -= mq(eta - 1, Rational(1));
        w -= mq(eta, Rational(1));
        regs.push_back({white, w});
        regs.push_back({eta, mq(eta, Rational(2))});
      }
      SymbolicQuantity wlast = gap - mq(k - 1, Rational(1));
      regs.push_back({white, wlast});
      regs.push_back({bg, half_flank});
    } else {
      // atomic cell: background A, white remainder, one V patch per color
      regs.push_back({bg, full_area});
      SymbolicQuantity w = SymbolicQuantity::unit(Rational(1)) - full_area;
      for (int eta = 0; eta < k; ++eta) w -= mq(eta, Rational(4));
      regs.push_back({white, w});
      for (int eta = 0; eta < k; ++eta) regs.push_back({eta, mq(eta, Rational(4))});
    }
    for (const auto& r : regs)
      if (r.measure.formal_sign() <= 0)
        throw std::logic_error("build_construction: region measure not formally positive");
    col.cells.push_back(std::move(regs));
  }

  if (d == 1) {
    const std::size_t per_cell = col.cells.front().size();  // 2k + 3
    for (std::size_t cell = 0; cell < ncells; ++cell) {
      const std::size_t base = cell * per_cell;
      if (cell > 0) col.candidate_boundaries.push_back(base);
      for (int eta = 0; eta < k; ++eta) {
        const std::size_t v_atom = base + 2 + 2 * static_cast<std::size_t>(eta);
        col.candidate_boundaries.push_back(v_atom);
        col.candidate_boundaries.push_back(v_atom + 1);
      }
    }
    std::sort(col.candidate_boundaries.begin(), col.candidate_boundaries.end());
  }
  for (std::size_t cell = 0; cell < ncells; ++cell)
    col.background_colors.push_back(col.background_color(static_cast<int>(cell)));
  return col;
}

namespace {

// Incremental Q-rank bookkeeping for the derived alpha fragments, counted
// beyond the seeded Q·A direction.
struct SpanCounter {
  std::vector<SymbolicQuantity> basis;  // normalized: leading coefficient 1
  int extra = 0;
  std::set<std::map<Symbol, Rational>> seen;

  void insert(SymbolicQuantity q, bool count) {
    while (!q.is_zero()) {
      const Symbol lead = q.coefficients().begin()->first;
      const Rational c = q.coefficients().begin()->second;
      bool reduced = false;
      for (const auto& b : basis) {
        if (b.coefficients().begin()->first == lead) {
          q -= b.scaled(c);
          reduced = true;
          break;
        }
      }
      if (!reduced) {
        basis.push_back(q.scaled(Rational(1) / c));
        if (count) ++extra;
        return;
      }
    }
  }
  void seed(const SymbolicQuantity& q) { insert(q, false); }
  void add(const SymbolicQuantity& q) {
    if (q.is_zero()) return;
    if (!seen.insert(q.coefficients()).second) return;
    insert(q, true);
  }
};

struct Bookkeeping {
  Certificate cert;
  std::vector<std::optional<FailureWitness>> exemplars;
  SpanCounter alpha;
  std::vector<bool> is_background;

  explicit Bookkeeping(const SymbolicColoring& col) {
    cert.witness_counts.assign(static_cast<std::size_t>(col.palette), 0);
    exemplars.assign(static_cast<std::size_t>(col.palette), std::nullopt);
    alpha.seed(SymbolicQuantity::of(Symbol::area(), Rational(1)));
    is_background.assign(static_cast<std::size_t>(col.palette), false);
    for (ColorId c : col.background_colors) is_background[static_cast<std::size_t>(c)] = true;
  }

  // Judge one (splitting, pieces) against every assignment mask; nullopt if
  // every assignment fails, otherwise the first fair assignment.
  std::optional<FamilyAssignment> judge(const std::vector<std::vector<SymbolicQuantity>>& pm,
                                        const std::vector<SymbolicQuantity>& totals) {
    const std::size_t p = pm.size();
    const int palette = static_cast<int>(totals.size());
    // conservation: pieces must add up to the totals, symbolically
    for (int c = 0; c < palette; ++c) {
      SymbolicQuantity sum;
      for (std::size_t j = 0; j < p; ++j) sum += pm[j][static_cast<std::size_t>(c)];
      if (!(sum == totals[static_cast<std::size_t>(c)])) cert.conservation_ok = false;
    }
    for (std::size_t j = 0; j < p; ++j)
      for (int c = 0; c < palette; ++c)
        if (is_background[static_cast<std::size_t>(c)])
          alpha.add(pm[j][static_cast<std::size_t>(c)]);

    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << p); ++mask) {
      ++cert.assignments_checked;
      int witness_color = -1;
      bool witness_m = false;
      SymbolicQuantity witness_diff;
      bool fair = true;
      for (int c = 0; c < palette; ++c) {
        SymbolicQuantity diff;
        for (std::size_t j = 0; j < p; ++j) {
          const bool fam1 = (mask >> (p - 1 - j)) & 1;
          if (fam1)
            diff -= pm[j][static_cast<std::size_t>(c)];
          else
            diff += pm[j][static_cast<std::size_t>(c)];
        }
        if (diff.is_zero()) continue;
        fair = false;
        const bool has_m = diff.has_independent_term();
        if (witness_color < 0 || (has_m && !witness_m)) {
          witness_color = c;
          witness_m = has_m;
          witness_diff = diff;
          if (has_m) break;  // colors scanned in index order; first m-witness wins
        }
      }
      if (fair) {
        FamilyAssignment a(p, 0);
        for (std::size_t j = 0; j < p; ++j) a[j] = static_cast<std::uint8_t>((mask >> (p - 1 - j)) & 1);
        return a;
      }
      cert.all_failures_m_witnessed = cert.all_failures_m_witnessed && witness_m;
      ++cert.witness_counts[static_cast<std::size_t>(witness_color)];
      if (!exemplars[static_cast<std::size_t>(witness_color)]) {
        FailureWitness fw;
        fw.color = witness_color;
        fw.m_witnessed = witness_m;
        // prefer an m symbol as the exhibit; otherwise the leading symbol
        Symbol sym = witness_diff.coefficients().begin()->first;
        if (witness_m) {
          for (const auto& [s, r] : witness_diff.coefficients())
            if (s.kind == Symbol::Kind::independent) {
              sym = s;
              break;
            }
        }
        fw.symbol = sym.name();
        fw.coefficient = witness_diff.coefficient(sym);
        exemplars[static_cast<std::size_t>(witness_color)] = fw;
      }
    }
    return std::nullopt;
  }

  Certificate finish() {
    for (const auto& e : exemplars)
      if (e) cert.exemplars.push_back(*e);
    cert.alpha_span_count = alpha.extra;
    return cert;
  }
};

CheckResult check_1d(const SymbolicColoring& col, int t, const CheckOptions& opts) {
  std::vector<const Region*> atoms;
  for (const auto& cell : col.cells)
    for (const auto& reg : cell) atoms.push_back(&reg);
  const std::size_t n = atoms.size();
  for (std::size_t b : col.candidate_boundaries)
    if (b == 0 || b >= n)
      throw std::invalid_argument("check_no_fair_on_grid: candidate boundary out of range");
  for (std::size_t i = 0; i + 1 < col.candidate_boundaries.size(); ++i)
    if (col.candidate_boundaries[i] >= col.candidate_boundaries[i + 1])
      throw std::invalid_argument("check_no_fair_on_grid: candidates must be strictly increasing");

  const int palette = col.palette;
  // prefix[c][i] = measure of color c among atoms [0, i)
  std::vector<std::vector<SymbolicQuantity>> prefix(
      static_cast<std::size_t>(palette), std::vector<SymbolicQuantity>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (int c = 0; c < palette; ++c) prefix[static_cast<std::size_t>(c)][i + 1] = prefix[static_cast<std::size_t>(c)][i];
    prefix[static_cast<std::size_t>(atoms[i]->color)][i + 1] += atoms[i]->measure;
  }
  std::vector<SymbolicQuantity> totals(static_cast<std::size_t>(palette));
  for (int c = 0; c < palette; ++c) totals[static_cast<std::size_t>(c)] = prefix[static_cast<std::size_t>(c)][n];

  Bookkeeping bk(col);
  bk.cert.candidate_count = col.candidate_boundaries.size();
  const int cap = static_cast<int>(col.candidate_boundaries.size());

  for (int m = 0; m <= std::min(t, cap); ++m) {
    if (m + 1 > 62) throw std::invalid_argument("check_no_fair_on_grid: too many pieces");
    std::vector<std::int64_t> combo = first_combination(static_cast<std::size_t>(m), 0);
    bool more = true;
    while (more) {
      if (bk.cert.splittings_checked >= opts.max_splittings)
        throw resource_error("check_no_fair_on_grid: splitting budget exhausted");
      ++bk.cert.splittings_checked;
      std::vector<std::size_t> bounds;
      bounds.push_back(0);
      for (int i = 0; i < m; ++i)
        bounds.push_back(col.candidate_boundaries[static_cast<std::size_t>(combo[static_cast<std::size_t>(i)])]);
      bounds.push_back(n);
      const std::size_t p = static_cast<std::size_t>(m) + 1;
      std::vector<std::vector<SymbolicQuantity>> pm(p, std::vector<SymbolicQuantity>(static_cast<std::size_t>(palette)));
      for (std::size_t j = 0; j < p; ++j)
        for (int c = 0; c < palette; ++c)
          pm[j][static_cast<std::size_t>(c)] =
              prefix[static_cast<std::size_t>(c)][bounds[j + 1]] - prefix[static_cast<std::size_t>(c)][bounds[j]];
      if (auto fair = bk.judge(pm, totals)) {
        CheckResult res;
        res.certified = false;
        SplitSolution sol;
        sol.cuts.cuts.resize(1);
        for (int i = 0; i < m; ++i)
          sol.cuts.cuts[0].push_back(static_cast<std::int64_t>(bounds[static_cast<std::size_t>(i) + 1]));
        sol.assignment = *fair;
        sol.metric_total = m;
        res.counterexample = std::move(sol);
        return res;
      }
      more = m > 0 && next_combination(combo, 0, cap);
    }
  }
  CheckResult res;
  res.certified = true;
  res.certificate = bk.finish();
  return res;
}

CheckResult check_2d(const SymbolicColoring& col, int t, const CheckOptions& opts) {
  const int N = col.N;
  const int palette = col.palette;
  if (static_cast<std::size_t>(N) * static_cast<std::size_t>(N) != col.cells.size())
    throw std::invalid_argument("check_no_fair_on_grid: cell count does not match N^2");
  // cellq[cell][c] = total measure of color c inside the cell
  std::vector<std::vector<SymbolicQuantity>> cellq(col.cells.size(),
                                                   std::vector<SymbolicQuantity>(static_cast<std::size_t>(palette)));
  for (std::size_t cell = 0; cell < col.cells.size(); ++cell)
    for (const auto& reg : col.cells[cell])
      cellq[cell][static_cast<std::size_t>(reg.color)] += reg.measure;
  // 2-D prefix: P[c][i][j] = measure over cells [0,i) x [0,j)
  std::vector<std::vector<std::vector<SymbolicQuantity>>> P(
      static_cast<std::size_t>(palette),
      std::vector<std::vector<SymbolicQuantity>>(static_cast<std::size_t>(N) + 1,
                                                 std::vector<SymbolicQuantity>(static_cast<std::size_t>(N) + 1)));
  for (int c = 0; c < palette; ++c)
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        auto& Pc = P[static_cast<std::size_t>(c)];
        Pc[static_cast<std::size_t>(i) + 1][static_cast<std::size_t>(j) + 1] =
            Pc[static_cast<std::size_t>(i)][static_cast<std::size_t>(j) + 1] +
            Pc[static_cast<std::size_t>(i) + 1][static_cast<std::size_t>(j)] -
            Pc[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +
            cellq[static_cast<std::size_t>(i * N + j)][static_cast<std::size_t>(c)];
      }
  std::vector<SymbolicQuantity> totals(static_cast<std::size_t>(palette));
  for (int c = 0; c < palette; ++c)
    totals[static_cast<std::size_t>(c)] =
        P[static_cast<std::size_t>(c)][static_cast<std::size_t>(N)][static_cast<std::size_t>(N)];

  Bookkeeping bk(col);
  const int cap = std::min(t, N - 1);
  bk.cert.candidate_count = 2 * static_cast<std::size_t>(N - 1);

  auto box_measure = [&](int c, int r0, int r1, int c0, int c1) {
    const auto& Pc = P[static_cast<std::size_t>(c)];
    return Pc[static_cast<std::size_t>(r1)][static_cast<std::size_t>(c1)] -
           Pc[static_cast<std::size_t>(r0)][static_cast<std::size_t>(c1)] -
           Pc[static_cast<std::size_t>(r1)][static_cast<std::size_t>(c0)] +
           Pc[static_cast<std::size_t>(r0)][static_cast<std::size_t>(c0)];
  };

  // allocations ordered by total cuts, then lexicographically
  for (int total = 0; total <= 2 * cap; ++total) {
    for (int a = std::max(0, total - cap); a <= std::min(total, cap); ++a) {
      const int b = total - a;
      std::vector<std::int64_t> ra = first_combination(static_cast<std::size_t>(a), 1);
      bool more_a = true;
      while (more_a) {
        std::vector<std::int64_t> rb = first_combination(static_cast<std::size_t>(b), 1);
        bool more_b = true;
        while (more_b) {
          if (bk.cert.splittings_checked >= opts.max_splittings)
            throw resource_error("check_no_fair_on_grid: splitting budget exhausted");
          ++bk.cert.splittings_checked;
          std::vector<int> rows = {0};
          for (int i = 0; i < a; ++i) rows.push_back(static_cast<int>(ra[static_cast<std::size_t>(i)]));
          rows.push_back(N);
          std::vector<int> cols = {0};
          for (int i = 0; i < b; ++i) cols.push_back(static_cast<int>(rb[static_cast<std::size_t>(i)]));
          cols.push_back(N);
          const std::size_t p = static_cast<std::size_t>(a + 1) * static_cast<std::size_t>(b + 1);
          if (p > 62) throw std::invalid_argument("check_no_fair_on_grid: too many pieces");
          std::vector<std::vector<SymbolicQuantity>> pm(p, std::vector<SymbolicQuantity>(static_cast<std::size_t>(palette)));
          std::size_t flat = 0;
          for (int i = 0; i + 1 < static_cast<int>(rows.size()); ++i)
            for (int j = 0; j + 1 < static_cast<int>(cols.size()); ++j, ++flat)
              for (int c = 0; c < palette; ++c)
                pm[flat][static_cast<std::size_t>(c)] =
                    box_measure(c, rows[static_cast<std::size_t>(i)], rows[static_cast<std::size_t>(i) + 1],
                                cols[static_cast<std::size_t>(j)], cols[static_cast<std::size_t>(j) + 1]);
          if (auto fair = bk.judge(pm, totals)) {
            CheckResult res;
            res.certified = false;
            SplitSolution sol;
            sol.cuts.cuts.resize(2);
            for (int i = 0; i < a; ++i) sol.cuts.cuts[0].push_back(ra[static_cast<std::size_t>(i)]);
            for (int i = 0; i < b; ++i) sol.cuts.cuts[1].push_back(rb[static_cast<std::size_t>(i)]);
            sol.assignment = *fair;
            sol.metric_total = a + b;
            res.counterexample = std::move(sol);
            return res;
          }
          more_b = b > 0 && next_combination(rb, 1, N);
        }
        more_a = a > 0 && next_combination(ra, 1, N);
      }
    }
  }
  CheckResult res;
  res.certified = true;
  res.certificate = bk.finish();
  return res;
}

}  // namespace

CheckResult check_no_fair_on_grid(const SymbolicColoring& col, int t, const CheckOptions& opts) {
  if (t < 0) throw std::invalid_argument("check_no_fair_on_grid: t must be >= 0");
  if (col.palette < 1) throw std::invalid_argument("check_no_fair_on_grid: empty palette");
  for (const auto& cell : col.cells)
    for (const auto& reg : cell)
      if (reg.color < 0 || reg.color >= col.palette)
        throw std::invalid_argument("check_no_fair_on_grid: region color out of range");
  if (col.d == 1) return check_1d(col, t, opts);
  if (col.d == 2) return check_2d(col, t, opts);
  throw std::invalid_argument("check_no_fair_on_grid: d must be 1 or 2");
}

}  // namespace nsplit::measures
