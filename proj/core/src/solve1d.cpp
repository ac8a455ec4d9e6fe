#include "nsplit/solve1d.hpp"

#include <map>
#include <numeric>
#include <set>
#include <unordered_set>

#include "nsplit/combinat.hpp"

namespace nsplit::solve1d {
namespace {

// DP over (piece index, remaining family-0 target); dead states memoized.
// Trying family 0 before family 1 at every piece yields the lex-least
// feasible labeling.
class PartitionDp {
 public:
  PartitionDp(const std::vector<ColorVector>& pieces, const ColorVector& target)
      : pieces_(pieces), k_(target.size()) {
    const std::size_t n = pieces.size();
    suffix_.assign(n + 1, ColorVector(k_));
    for (std::size_t i = n; i-- > 0;) {
      suffix_[i] = suffix_[i + 1];
      suffix_[i] += pieces[i];
    }
    // Mixed-radix state encoding into 64 bits when the space allows it.
    stride_.assign(k_, 0);
    unsigned __int128 p = 1;
    for (std::size_t c = 0; c < k_; ++c) {
      stride_[c] = static_cast<std::uint64_t>(p);
      p *= static_cast<unsigned __int128>(suffix_[0][c]) + 1;
    }
    encodable_ = p * (n + 1) < (static_cast<unsigned __int128>(1) << 63);
  }

  bool solve(std::size_t i, ColorVector& rem, FamilyAssignment& label) {
    if (i == pieces_.size()) return rem.is_zero();
    for (std::size_t c = 0; c < k_; ++c)
      if (rem[c] > suffix_[i][c]) return false;  // not enough left to collect
    if (is_dead(i, rem)) return false;
    const ColorVector& p = pieces_[i];
    bool fits = true;
    for (std::size_t c = 0; c < k_ && fits; ++c) fits = rem[c] >= p[c];
    if (fits) {
      rem -= p;
      label[i] = 0;
      if (solve(i + 1, rem, label)) return true;
      rem += p;
    }
    label[i] = 1;
    if (solve(i + 1, rem, label)) return true;
    mark_dead(i, rem);
    return false;
  }

 private:
  std::uint64_t encode(std::size_t i, const ColorVector& rem) const {
    std::uint64_t code = static_cast<std::uint64_t>(i);
    for (std::size_t c = 0; c < k_; ++c)
      code += stride_[c] * static_cast<std::uint64_t>(rem[c]) * (pieces_.size() + 1);
    return code;
  }

  bool is_dead(std::size_t i, const ColorVector& rem) const {
    if (encodable_) return dead_.count(encode(i, rem)) > 0;
    return dead_big_.count({i, rem.counts}) > 0;
  }

  void mark_dead(std::size_t i, const ColorVector& rem) {
    if (encodable_)
      dead_.insert(encode(i, rem));
    else
      dead_big_.insert({i, rem.counts});
  }

  const std::vector<ColorVector>& pieces_;
  std::size_t k_;
  std::vector<ColorVector> suffix_;
  std::vector<std::uint64_t> stride_;
  bool encodable_ = false;
  std::unordered_set<std::uint64_t> dead_;
  std::set<std::pair<std::size_t, std::vector<std::int64_t>>> dead_big_;
};

// Meet-in-the-middle: index every labeling of the back half by its family-0
// sum (keeping the lexicographically least bits per sum), then walk front-
// half labelings in lex order and look up the complement.
std::optional<FamilyAssignment> mitm(const std::vector<ColorVector>& pieces,
                                     const ColorVector& target) {
  const std::size_t n = pieces.size(), k = target.size();
  const std::size_t nb = n / 2, na = n - nb;

  std::map<std::vector<std::int64_t>, std::uint64_t> back;  // sum -> min bits
  {
    std::vector<std::int64_t> sum(k, 0);
    auto rec = [&](auto&& self, std::size_t j, std::uint64_t bits) -> void {
      if (j == nb) {
        back.emplace(sum, bits);  // first insert wins = lex least
        return;
      }
      const ColorVector& p = pieces[na + j];
      for (std::size_t c = 0; c < k; ++c) sum[c] += p[c];
      self(self, j + 1, bits);  // label 0 first
      for (std::size_t c = 0; c < k; ++c) sum[c] -= p[c];
      self(self, j + 1, bits | (std::uint64_t{1} << (nb - 1 - j)));
    };
    rec(rec, 0, 0);
  }

  FamilyAssignment label(n, 1);
  ColorVector rem = target;
  auto rec = [&](auto&& self, std::size_t j) -> bool {
    if (j == na) {
      auto it = back.find(rem.counts);
      if (it == back.end()) return false;
      for (std::size_t b = 0; b < nb; ++b)
        label[na + b] = static_cast<std::uint8_t>((it->second >> (nb - 1 - b)) & 1);
      return true;
    }
    const ColorVector& p = pieces[j];
    bool fits = true;
    for (std::size_t c = 0; c < k && fits; ++c) fits = rem[c] >= p[c];
    if (fits) {
      rem -= p;
      label[j] = 0;
      if (self(self, j + 1)) return true;
      rem += p;
    }
    label[j] = 1;
    return self(self, j + 1);
  };
  if (rec(rec, 0)) return label;
  return std::nullopt;
}

// Shared search context: prefix color counts of a 1-D necklace.
struct Prefix1d {
  explicit Prefix1d(const NecklaceGrid& g)
      : n(g.cell_count()), k(static_cast<std::size_t>(g.palette())) {
    counts.assign(k, std::vector<std::int64_t>(static_cast<std::size_t>(n) + 1, 0));
    const auto& cells = g.cells();
    for (std::int64_t i = 0; i < n; ++i) {
      for (std::size_t c = 0; c < k; ++c) counts[c][i + 1] = counts[c][i];
      counts[static_cast<std::size_t>(cells[i])][i + 1]++;
    }
  }

  std::vector<ColorVector> pieces(const std::vector<std::int64_t>& cuts) const {
    std::vector<ColorVector> out(cuts.size() + 1, ColorVector(k));
    std::int64_t lo = 0;
    for (std::size_t j = 0; j <= cuts.size(); ++j) {
      const std::int64_t hi = (j < cuts.size()) ? cuts[j] : n;
      for (std::size_t c = 0; c < k; ++c) out[j][c] = counts[c][hi] - counts[c][lo];
      lo = hi;
    }
    return out;
  }

  std::int64_t n;
  std::size_t k;
  std::vector<std::vector<std::int64_t>> counts;
};

// Lex-least fair splitting with exactly m cuts, or nullopt.
std::optional<SplitSolution> search_exact_cuts(const Prefix1d& ctx, const ColorVector& target,
                                               int m) {
  std::vector<std::int64_t> cut = first_combination(static_cast<std::size_t>(m), 1);
  for (;;) {
    if (auto a = partition_feasible(ctx.pieces(cut), target))
      return SplitSolution{Splitting{{cut}}, std::move(*a), m};
    if (!next_combination(cut, 1, ctx.n)) return std::nullopt;
  }
}

void require_1d(const NecklaceGrid& grid) {
  if (grid.dimensions() != 1) throw std::invalid_argument("expected a 1-D necklace");
}

}  // namespace

std::optional<FamilyAssignment> partition_feasible(const std::vector<ColorVector>& pieces,
                                                   const ColorVector& target) {
  const std::size_t k = target.size();
  ColorVector totals(k);
  for (const ColorVector& p : pieces) {
    if (p.size() != k) throw std::invalid_argument("piece palette mismatch");
    totals += p;
  }
  for (std::size_t c = 0; c < k; ++c)
    if (totals[c] != 2 * target[c])
      throw std::invalid_argument("target must be half of the piece totals");

  const std::size_t n = pieces.size();
  if (n == 0) return FamilyAssignment{};

  // The DP state space is the product of per-color target ranges; when that
  // dwarfs the 2^(n/2) of meet-in-the-middle, switch strategies.
  long double states = 1;
  for (std::size_t c = 0; c < k; ++c) states *= static_cast<long double>(totals[c]) + 1;
  if (n >= 20 && n <= 62 && states > 2e6L) return mitm(pieces, target);

  PartitionDp dp(pieces, target);
  FamilyAssignment label(n, 1);
  ColorVector rem = target;
  if (dp.solve(0, rem, label)) return label;
  return std::nullopt;
}

Result exists_fair_with_cuts(const NecklaceGrid& grid, int max_cuts) {
  require_1d(grid);
  if (max_cuts < 0) throw std::invalid_argument("cut budget must be nonnegative");
  const ColorVector totals = grid.totals();
  if (!totals.all_even()) return {SearchStatus::impossible, std::nullopt};
  const ColorVector target = totals.halved();
  Prefix1d ctx(grid);
  const int mmax = static_cast<int>(std::min<std::int64_t>(max_cuts, ctx.n - 1));
  for (int m = 0; m <= mmax; ++m)
    if (auto sol = search_exact_cuts(ctx, target, m))
      return {SearchStatus::found, std::move(sol)};
  return {SearchStatus::none, std::nullopt};
}

MinResult min_cuts_fair(const NecklaceGrid& grid) {
  require_1d(grid);
  const ColorVector totals = grid.totals();
  if (!totals.all_even()) return {SearchStatus::impossible, -1, std::nullopt};
  const ColorVector target = totals.halved();
  Prefix1d ctx(grid);
  for (int m = 0; m < ctx.n; ++m) {
    if (auto sol = search_exact_cuts(ctx, target, m)) {
      // Every even-count necklace splits with at most palette-many cuts;
      // exceeding that means the solver itself is broken.
      if (m > grid.palette())
        throw std::logic_error("minimum cut count exceeded the palette size");
      return {SearchStatus::found, m, std::move(sol)};
    }
  }
  throw std::logic_error("even-count necklace without any fair splitting");
}

bool oracle_brute(const NecklaceGrid& grid, int max_cuts) {
  require_1d(grid);
  if (max_cuts < 0) throw std::invalid_argument("cut budget must be nonnegative");
  const std::int64_t n = grid.cell_count();
  const std::size_t k = static_cast<std::size_t>(grid.palette());
  const auto& cells = grid.cells();

  ColorVector totals = grid.totals();
  if (!totals.all_even()) return false;
  const ColorVector half = totals.halved();

  // Deliberately naive: piece counts are recomputed from the cells for every
  // candidate cut set, and every family mask is tried outright. This is the
  // reference the pruned solver is checked against, so it shares none of its
  // machinery.
  std::vector<std::int64_t> cuts;
  auto fair_here = [&]() {
    const std::size_t m = cuts.size();
    std::vector<ColorVector> piece(m + 1, ColorVector(k));
    std::size_t j = 0;
    for (std::int64_t i = 0; i < n; ++i) {
      while (j < m && i >= cuts[j]) ++j;
      piece[j][static_cast<std::size_t>(cells[i])]++;
    }
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (m + 1)); ++mask) {
      ColorVector family0(k);
      for (std::size_t b = 0; b <= m; ++b)
        if (((mask >> b) & 1u) == 0) family0 += piece[b];
      if (family0 == half) return true;
    }
    return false;
  };

  auto rec = [&](auto&& self, std::int64_t next) -> bool {
    if (fair_here()) return true;
    if (static_cast<int>(cuts.size()) == max_cuts) return false;
    for (std::int64_t p = next; p < n; ++p) {
      cuts.push_back(p);
      if (self(self, p + 1)) return true;
      cuts.pop_back();
    }
    return false;
  };
  return rec(rec, 1);
}

}  // namespace nsplit::solve1d
