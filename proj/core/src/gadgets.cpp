#include "nsplit/gadgets.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <limits>
#include <stdexcept>
#include <tuple>

#include "nsplit/parallel.hpp"

namespace nsplit::gadgets {
namespace {

std::int64_t half_floor(std::int64_t v) { return v >= 0 ? v / 2 : -((-v + 1) / 2); }

// One representative cut position between each pair of consecutive distinct
// coordinates. Complete: moving a cut between the same two coordinates never
// changes which points fall on which side.
std::vector<std::vector<std::int64_t>> cut_candidates(const PointSet& ps) {
  std::vector<std::vector<std::int64_t>> cands(static_cast<std::size_t>(ps.dim));
  for (int a = 0; a < ps.dim; ++a) {
    std::vector<std::int64_t> coords;
    coords.reserve(ps.points.size());
    for (const auto& p : ps.points) coords.push_back(p.x[static_cast<std::size_t>(a)]);
    std::sort(coords.begin(), coords.end());
    coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
    auto& out = cands[static_cast<std::size_t>(a)];
    for (std::size_t i = 0; i + 1 < coords.size(); ++i)
      out.push_back(half_floor(coords[i] + coords[i + 1]) + 1);
  }
  return cands;
}

// All size-m subsets of cand, ascending index order within and across
// subsets. Local on purpose: the certifier must not lean on the solver's
// enumeration helpers, so that the two act as independent cross-checks.
std::vector<std::vector<std::int64_t>> all_cut_subsets(const std::vector<std::int64_t>& cand,
                                                       int m) {
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> cur;
  auto rec = [&](auto&& self, std::size_t start, int left) -> void {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i + static_cast<std::size_t>(left) <= cand.size(); ++i) {
      cur.push_back(cand[i]);
      self(self, i + 1, left - 1);
      cur.pop_back();
    }
  };
  rec(rec, 0, m);
  return out;
}

// Exhaustive two-family labeling search over box count vectors, family 0
// first so the first fair labeling found is the lexicographically least.
struct LabelSearch {
  const std::vector<std::vector<std::int64_t>>& vec;    // per box, per color
  const std::vector<std::vector<std::int64_t>>& suffix; // suffix[i] = sum of vec[i..]
  const std::vector<std::int64_t>& target;
  FamilyAssignment label;
  std::uint64_t nodes = 0;
  std::uint64_t leaves = 0;

  LabelSearch(const std::vector<std::vector<std::int64_t>>& v,
              const std::vector<std::vector<std::int64_t>>& s,
              const std::vector<std::int64_t>& t)
      : vec(v), suffix(s), target(t), label(v.size(), 0) {}

  bool run() {
    std::vector<std::int64_t> f0(target.size(), 0);
    return rec(0, f0);
  }

  bool rec(std::size_t i, std::vector<std::int64_t>& f0) {
    ++nodes;
    if (i == vec.size()) {
      ++leaves;
      return f0 == target;
    }
    // what family 0 still lacks must be available in the remaining boxes
    for (std::size_t c = 0; c < target.size(); ++c)
      if (f0[c] + suffix[i][c] < target[c]) return false;
    bool fits = true;
    for (std::size_t c = 0; c < target.size(); ++c)
      if (f0[c] + vec[i][c] > target[c]) {
        fits = false;
        break;
      }
    if (fits) {
      for (std::size_t c = 0; c < target.size(); ++c) f0[c] += vec[i][c];
      label[i] = 0;
      if (rec(i + 1, f0)) return true;
      for (std::size_t c = 0; c < target.size(); ++c) f0[c] -= vec[i][c];
    }
    label[i] = 1;
    return rec(i + 1, f0);
  }
};

struct SplittingHit {
  Splitting cuts;
  FamilyAssignment assignment;
};

}  // namespace

CertifyResult certify_min_lines(const PointSet& ps, int max_lines, const CertifyOptions& opts) {
  ps.validate();
  if (max_lines < 0) throw std::invalid_argument("certify_min_lines: max_lines must be >= 0");
  const int d = ps.dim;
  const int k = ps.palette;
  ColorVector tot = ps.totals();
  if (!tot.all_even())
    throw std::invalid_argument("certify_min_lines: every color count must be even");
  const std::vector<std::int64_t> target = tot.halved().counts;

  const auto cands = cut_candidates(ps);
  Certificate cert;
  cert.max_lines = max_lines;
  cert.candidates = cands;

  std::vector<int> caps(static_cast<std::size_t>(d));
  for (int a = 0; a < d; ++a)
    caps[static_cast<std::size_t>(a)] =
        static_cast<int>(cands[static_cast<std::size_t>(a)].size());

  std::uint64_t budget = opts.max_splittings;
  const unsigned threads = resolve_threads(opts.threads);
  std::atomic<std::uint64_t> nodes{0}, leaves{0};

  // one allocation = cut counts per axis; scanned in ascending-total then
  // lexicographic order so a counterexample, if any, is the canonical first
  std::vector<int> alloc(static_cast<std::size_t>(d), 0);
  std::optional<SplittingHit> hit;

  auto scan_alloc = [&]() -> bool {  // true = stop (hit found)
    ++cert.allocations_checked;
    // per-axis subset tables; product scanned axis 0 most significant
    std::vector<std::vector<std::vector<std::int64_t>>> tables(static_cast<std::size_t>(d));
    std::uint64_t total = 1;
    for (int a = 0; a < d; ++a) {
      tables[static_cast<std::size_t>(a)] =
          all_cut_subsets(cands[static_cast<std::size_t>(a)], alloc[static_cast<std::size_t>(a)]);
      total *= tables[static_cast<std::size_t>(a)].size();
    }
    if (total == 0) return false;
    const std::uint64_t effective = std::min<std::uint64_t>(total, budget);

    std::vector<std::uint64_t> stride(static_cast<std::size_t>(d), 1);
    for (int a = d - 2; a >= 0; --a)
      stride[static_cast<std::size_t>(a)] =
          stride[static_cast<std::size_t>(a + 1)] * tables[static_cast<std::size_t>(a + 1)].size();

    std::size_t nb = 1;
    for (int a = 0; a < d; ++a) nb *= static_cast<std::size_t>(alloc[static_cast<std::size_t>(a)]) + 1;

    auto scan_one = [&](std::uint64_t job) -> std::optional<SplittingHit> {
      Splitting s;
      s.cuts.resize(static_cast<std::size_t>(d));
      for (int a = 0; a < d; ++a) {
        const auto& tab = tables[static_cast<std::size_t>(a)];
        s.cuts[static_cast<std::size_t>(a)] =
            tab[(job / stride[static_cast<std::size_t>(a)]) % tab.size()];
      }
      std::vector<std::vector<std::int64_t>> vec(nb, std::vector<std::int64_t>(static_cast<std::size_t>(k), 0));
      for (const auto& p : ps.points) {
        std::size_t flat = 0;
        for (int a = 0; a < d; ++a) {
          const auto& cc = s.cuts[static_cast<std::size_t>(a)];
          const std::size_t piece = static_cast<std::size_t>(
              std::upper_bound(cc.begin(), cc.end(), p.x[static_cast<std::size_t>(a)]) - cc.begin());
          flat = flat * (static_cast<std::size_t>(alloc[static_cast<std::size_t>(a)]) + 1) + piece;
        }
        ++vec[flat][static_cast<std::size_t>(p.color)];
      }
      std::vector<std::vector<std::int64_t>> suffix(nb + 1, std::vector<std::int64_t>(static_cast<std::size_t>(k), 0));
      for (std::size_t i = nb; i-- > 0;) {
        suffix[i] = suffix[i + 1];
        for (std::size_t c = 0; c < static_cast<std::size_t>(k); ++c) suffix[i][c] += vec[i][c];
      }
      LabelSearch ls(vec, suffix, target);
      const bool fair = ls.run();
      nodes.fetch_add(ls.nodes, std::memory_order_relaxed);
      leaves.fetch_add(ls.leaves, std::memory_order_relaxed);
      if (!fair) return std::nullopt;
      return SplittingHit{std::move(s), std::move(ls.label)};
    };

    hit = parallel_first_hit<SplittingHit>(effective, threads, scan_one);
    if (hit) return true;
    cert.splittings_checked += effective;
    if (effective < total)
      throw resource_error("certify_min_lines: splitting budget exhausted");
    budget -= effective;
    return false;
  };

  bool stopped = false;
  for (int total_cuts = 0; total_cuts <= max_lines && !stopped; ++total_cuts) {
    auto rec = [&](auto&& self, int axis, int left) -> bool {
      if (axis == d - 1) {
        if (left > caps[static_cast<std::size_t>(axis)]) return false;
        alloc[static_cast<std::size_t>(axis)] = left;
        return scan_alloc();
      }
      for (int v = 0; v <= std::min(left, caps[static_cast<std::size_t>(axis)]); ++v) {
        alloc[static_cast<std::size_t>(axis)] = v;
        if (self(self, axis + 1, left - v)) return true;
      }
      return false;
    };
    stopped = rec(rec, 0, total_cuts);
  }

  CertifyResult res;
  if (hit) {
    res.certified = false;
    Counterexample cx;
    cx.cuts = hit->cuts;
    cx.assignment = hit->assignment;
    cx.total_lines = splitting_total(cx.cuts);
    res.counterexample = std::move(cx);
    return res;
  }
  cert.assignment_nodes = nodes.load();
  cert.assignment_leaves = leaves.load();
  res.certified = true;
  res.certificate = std::move(cert);
  return res;
}

namespace {

// ---- gadget search -------------------------------------------------------

using Coord = std::pair<std::int64_t, std::int64_t>;

std::vector<Coord> sorted_coords(const PointSet& ps) {
  std::vector<Coord> v;
  v.reserve(ps.points.size());
  for (const auto& p : ps.points) v.emplace_back(p.x[0], p.x[1]);
  std::sort(v.begin(), v.end());
  return v;
}

// the 8 symmetries of the square applied to (x, y)
Coord apply_transform(int t, Coord c) {
  auto [x, y] = c;
  switch (t) {
    case 0: return {x, y};
    case 1: return {-y, x};
    case 2: return {-x, -y};
    case 3: return {y, -x};
    case 4: return {-x, y};
    case 5: return {x, -y};
    case 6: return {y, x};
    default: return {-y, -x};
  }
}

std::vector<Coord> normalized(std::vector<Coord> v) {
  if (v.empty()) return v;
  std::int64_t mx = std::numeric_limits<std::int64_t>::max(), my = mx;
  for (const auto& [x, y] : v) {
    mx = std::min(mx, x);
    my = std::min(my, y);
  }
  for (auto& [x, y] : v) {
    x -= mx;
    y -= my;
  }
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

PointSet canonical_form(const PointSet& ps) {
  ps.validate();
  if (ps.dim != 2) {
    // other dimensions: translation to the origin plus sorting only
    PointSet out = ps;
    if (!out.points.empty()) {
      std::vector<std::int64_t> mins(static_cast<std::size_t>(out.dim),
                                     std::numeric_limits<std::int64_t>::max());
      for (const auto& p : out.points)
        for (std::size_t a = 0; a < mins.size(); ++a) mins[a] = std::min(mins[a], p.x[a]);
      for (auto& p : out.points)
        for (std::size_t a = 0; a < mins.size(); ++a) p.x[a] -= mins[a];
    }
    std::sort(out.points.begin(), out.points.end(),
              [](const Point& a, const Point& b) { return std::tie(a.x, a.color) < std::tie(b.x, b.color); });
    return out;
  }
  // per transform: transform, translate to origin, sort; keep the least.
  // Colors ride along with their points and break ties last.
  std::vector<std::pair<std::vector<Coord>, std::vector<ColorId>>> variants;
  for (int t = 0; t < 8; ++t) {
    std::vector<std::pair<Coord, ColorId>> pts;
    pts.reserve(ps.points.size());
    for (const auto& p : ps.points)
      pts.emplace_back(apply_transform(t, {p.x[0], p.x[1]}), p.color);
    std::int64_t mx = 0, my = 0;
    if (!pts.empty()) {
      mx = my = std::numeric_limits<std::int64_t>::max();
      for (const auto& [c, col] : pts) {
        mx = std::min(mx, c.first);
        my = std::min(my, c.second);
      }
    }
    for (auto& [c, col] : pts) {
      c.first -= mx;
      c.second -= my;
    }
    std::sort(pts.begin(), pts.end());
    std::vector<Coord> cs;
    std::vector<ColorId> cols;
    for (const auto& [c, col] : pts) {
      cs.push_back(c);
      cols.push_back(col);
    }
    variants.emplace_back(std::move(cs), std::move(cols));
  }
  const auto& best = *std::min_element(variants.begin(), variants.end());
  PointSet out;
  out.palette = ps.palette;
  out.dim = 2;
  for (std::size_t i = 0; i < best.first.size(); ++i)
    out.points.push_back(Point{{best.first[i].first, best.first[i].second}, best.second[i]});
  return out;
}

namespace {

struct GadgetSearch {
  int B, n, h, target;
  CertifyOptions certify_opts;
  std::vector<int> profile;       // column counts, set per profile
  std::vector<std::uint32_t> col_masks;
  std::vector<int> rows;          // accumulated row counts
  std::optional<PointSet> found;

  GadgetSearch(int box, int points, int tgt, const SearchOptions& opts)
      : B(box), n(points), h(points / 2), target(tgt) {
    certify_opts.threads = opts.threads;
    certify_opts.max_splittings = opts.max_splittings_per_certify;
  }

  static int popcount(std::uint32_t m) { return __builtin_popcount(m); }

  bool profile_ok(int W) const {
    if (target >= 2 && W >= 2) {
      int pre = 0;
      for (int j = 0; j + 1 < W; ++j) {
        pre += profile[static_cast<std::size_t>(j)];
        if (pre == h) return false;  // one vertical line suffices
      }
    }
    if (target >= 3) {
      // interior column blocks: vertical lines at a and b isolate columns
      // [a, b); a middle block of h points makes a fair two-line splitting
      for (int a = 1; a <= W - 2; ++a) {
        int block = 0;
        for (int b = a + 1; b <= W - 1; ++b) {
          block += profile[static_cast<std::size_t>(b - 1)];
          if (block == h) return false;
        }
      }
    }
    return true;
  }

  // true when a complete gadget has been found (stops the whole search)
  bool fill_columns(int W, int j, int placed) {
    if (found) return true;
    if (j == W) return leaf(W);
    const int c = profile[static_cast<std::size_t>(j)];
    if (c == 0) {
      col_masks[static_cast<std::size_t>(j)] = 0;
      return fill_columns(W, j + 1, placed);
    }
    std::uint32_t mask = (1u << c) - 1;
    const std::uint32_t end = 1u << B;
    while (mask < end) {
      col_masks[static_cast<std::size_t>(j)] = mask;
      for (int y = 0; y < B; ++y)
        if (mask & (1u << y)) ++rows[static_cast<std::size_t>(y)];
      bool prune = false;
      if (target >= 3 && j + 1 < W) {
        // a fair cross split needs only: h points left-below (or left-above)
        // some horizontal position, with the vertical line after column j
        const int now = placed + c;
        int below = 0;
        for (int gy = 1; gy < B && !prune; ++gy) {
          below += rows[static_cast<std::size_t>(gy - 1)];
          if (below == h || now - below == h) prune = true;
        }
      }
      if (!prune && fill_columns(W, j + 1, placed + c)) return true;
      for (int y = 0; y < B; ++y)
        if (mask & (1u << y)) --rows[static_cast<std::size_t>(y)];
      // Gosper's hack: next mask with the same popcount
      const std::uint32_t lo = mask & (~mask + 1);
      const std::uint32_t left = mask + lo;
      mask = left | (((mask ^ left) >> 2) / lo);
    }
    return false;
  }

  bool leaf(int W) {
    if (rows[0] == 0) return false;  // y-translation canonical: touch y = 0
    int maxY = 0;
    for (int y = 0; y < B; ++y)
      if (rows[static_cast<std::size_t>(y)] > 0) maxY = y;
    if (target >= 2) {
      int pre = 0;
      for (int gy = 1; gy <= maxY; ++gy) {
        pre += rows[static_cast<std::size_t>(gy - 1)];
        if (pre == h) return false;  // one horizontal line
      }
    }
    if (target >= 3) {
      for (int a = 1; a <= maxY; ++a) {
        int block = 0;
        for (int b = a + 1; b <= maxY; ++b) {
          block += rows[static_cast<std::size_t>(b - 1)];
          if (block == h) return false;  // two horizontal lines
        }
      }
      // crosses: one vertical and one horizontal line
      for (int gx = 1; gx < W; ++gx) {
        int colcum = 0;
        for (int j = 0; j < gx; ++j) colcum += profile[static_cast<std::size_t>(j)];
        int rowcum = 0;
        for (int gy = 1; gy <= maxY; ++gy) {
          rowcum += rows[static_cast<std::size_t>(gy - 1)];
          int q00 = 0;
          for (int j = 0; j < gx; ++j) {
            const std::uint32_t m = col_masks[static_cast<std::size_t>(j)] & ((1u << gy) - 1);
            q00 += popcount(m);
          }
          const int q01 = colcum - q00;
          const int q10 = rowcum - q00;
          const int q11 = n - q00 - q01 - q10;
          if (q00 == h || q01 == h || q10 == h || q11 == h) return false;
          if (q00 + q11 == h || q01 + q10 == h) return false;
        }
      }
    }
    PointSet ps;
    ps.palette = 1;
    ps.dim = 2;
    for (int x = 0; x < W; ++x) {
      const std::uint32_t m = col_masks[static_cast<std::size_t>(x)];
      for (int y = 0; y < B; ++y)
        if (m & (1u << y)) ps.points.push_back(Point{{x, y}, 0});
    }
    // dedup under the symmetry group: only canonical representatives reach
    // the certifier
    const PointSet canon = canonical_form(ps);
    if (!(canon.points == ps.points)) return false;
    const auto res = certify_min_lines(ps, target - 1, certify_opts);
    if (!res.certified) return false;
    found = std::move(ps);
    return true;
  }
};

}  // namespace

std::optional<PointSet> search_gadget(int box_bound, int max_points, int target_min_lines,
                                      const SearchOptions& opts) {
  if (box_bound < 1 || box_bound > 30)
    throw std::invalid_argument("search_gadget: box_bound must be in [1, 30]");
  if (target_min_lines < 1) throw std::invalid_argument("search_gadget: target must be >= 1");
  if (max_points < 2) return std::nullopt;

  for (int n = 2; n <= max_points; n += 2) {
    if (n > box_bound * box_bound) break;
    GadgetSearch gs(box_bound, n, target_min_lines, opts);
    for (int W = 1; W <= box_bound; ++W) {
      gs.profile.assign(static_cast<std::size_t>(W), 0);
      gs.col_masks.assign(static_cast<std::size_t>(W), 0);
      gs.rows.assign(static_cast<std::size_t>(box_bound), 0);
      // column profiles: first and last columns nonempty, each <= box_bound
      auto rec = [&](auto&& self, int j, int left) -> bool {
        if (j == W - 1) {
          if (left < 1 || left > gs.B) return false;
          gs.profile[static_cast<std::size_t>(j)] = left;
          if (!gs.profile_ok(W)) return false;
          return gs.fill_columns(W, 0, 0);
        }
        const int lo = (j == 0) ? 1 : 0;
        for (int v = lo; v <= std::min(left - 1, gs.B); ++v) {
          gs.profile[static_cast<std::size_t>(j)] = v;
          // prefix screen applies to every proper prefix as soon as chosen
          if (gs.target >= 2) {
            int pre = 0;
            bool bad = false;
            for (int i = 0; i <= j; ++i) {
              pre += gs.profile[static_cast<std::size_t>(i)];
              if (pre == gs.h) {
                bad = true;
                break;
              }
            }
            if (bad) continue;
          }
          if (self(self, j + 1, left - v)) return true;
        }
        return false;
      };
      if (rec(rec, 0, n)) return gs.found;
    }
  }
  return std::nullopt;
}

PointSet compose_far_apart(const PointSet& gadget, int k) {
  gadget.validate();
  if (k < 2) throw std::invalid_argument("compose_far_apart: k must be >= 2");
  if (gadget.points.empty())
    throw std::invalid_argument("compose_far_apart: gadget must be nonempty");
  for (const auto& p : gadget.points)
    if (p.color != gadget.points.front().color)
      throw std::invalid_argument("compose_far_apart: gadget must be single-colored");

  const int d = gadget.dim;
  std::vector<std::int64_t> mins(static_cast<std::size_t>(d),
                                 std::numeric_limits<std::int64_t>::max());
  std::vector<std::int64_t> maxs(static_cast<std::size_t>(d),
                                 std::numeric_limits<std::int64_t>::min());
  for (const auto& p : gadget.points)
    for (int a = 0; a < d; ++a) {
      mins[static_cast<std::size_t>(a)] = std::min(mins[static_cast<std::size_t>(a)], p.x[static_cast<std::size_t>(a)]);
      maxs[static_cast<std::size_t>(a)] = std::max(maxs[static_cast<std::size_t>(a)], p.x[static_cast<std::size_t>(a)]);
    }
  std::vector<std::int64_t> stride(static_cast<std::size_t>(d));
  for (int a = 0; a < d; ++a) {
    const std::int64_t extent = maxs[static_cast<std::size_t>(a)] - mins[static_cast<std::size_t>(a)] + 1;
    stride[static_cast<std::size_t>(a)] = 2 * (extent + 1);
  }

  PointSet out;
  out.palette = k;
  out.dim = d;
  for (int copy = 1; copy < k; ++copy) {
    for (const auto& p : gadget.points) {
      Point q;
      q.color = copy;
      q.x.resize(static_cast<std::size_t>(d));
      for (int a = 0; a < d; ++a)
        q.x[static_cast<std::size_t>(a)] = p.x[static_cast<std::size_t>(a)] -
                                           mins[static_cast<std::size_t>(a)] +
                                           static_cast<std::int64_t>(copy - 1) * stride[static_cast<std::size_t>(a)];
      out.points.push_back(std::move(q));
    }
  }
  // color 0: a two-point anchor past the last copy, separated from everything
  // on every axis. Splitting it 1-1 costs one line no copy can share, so the
  // composition needs (gadget minimum) * (k-1) + 1 lines.
  for (int j = 0; j < 2; ++j) {
    Point q;
    q.color = 0;
    q.x.resize(static_cast<std::size_t>(d));
    for (int a = 0; a < d; ++a)
      q.x[static_cast<std::size_t>(a)] =
          static_cast<std::int64_t>(k - 1) * stride[static_cast<std::size_t>(a)] + j;
    out.points.push_back(std::move(q));
  }
  out.validate();
  return out;
}

}  // namespace nsplit::gadgets
