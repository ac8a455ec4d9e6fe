#include "nsplit/solvend.hpp"

#include <algorithm>

#include "nsplit/combinat.hpp"
#include "nsplit/parallel.hpp"
#include "nsplit/solve1d.hpp"

namespace nsplit::solvend {
namespace {

std::int64_t floor_div2(std::int64_t a) { return a >= 0 ? a / 2 : -((-a + 1) / 2); }

void check_splitting_for_points(const PointSet& ps, const Splitting& s) {
  if (s.dimensions() != static_cast<std::size_t>(ps.dim))
    throw std::invalid_argument("splitting dimension mismatch");
  for (const auto& axis : s.cuts)
    if (!std::is_sorted(axis.begin(), axis.end()) ||
        std::adjacent_find(axis.begin(), axis.end()) != axis.end())
      throw std::invalid_argument("cut positions must be strictly increasing");
}

// One per-axis block of the enumeration: a combination of candidate indices.
struct AxisState {
  std::vector<std::int64_t> idx;
  std::size_t n_candidates = 0;
};

// Enumerates the product of per-axis index combinations in lexicographic
// order (axis 0 most significant) and tests each splitting. PieceFn turns a
// Splitting into per-box ColorVectors. Returns the first (canonical-least)
// solution; spends at most *budget splittings, decrementing it, and throws
// resource_error if the allocation could not be covered.
template <typename PieceFn>
std::optional<SplitSolution> scan_allocation(const std::vector<std::vector<std::int64_t>>& cands,
                                             const std::vector<int>& alloc,
                                             const ColorVector& target, PieceFn&& piece_vectors,
                                             const Options& opts, std::uint64_t& budget) {
  const std::size_t d = cands.size();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < d; ++i)
    total = sat_mul(total, binomial(cands[i].size(), static_cast<std::uint64_t>(alloc[i])));
  if (total == 0) return std::nullopt;
  const std::uint64_t effective = std::min(total, budget);

  auto splitting_at = [&](const std::vector<AxisState>& axes) {
    Splitting s;
    s.cuts.resize(d);
    for (std::size_t i = 0; i < d; ++i) {
      s.cuts[i].reserve(axes[i].idx.size());
      for (std::int64_t ix : axes[i].idx)
        s.cuts[i].push_back(cands[i][static_cast<std::size_t>(ix)]);
    }
    return s;
  };

  auto try_one = [&](const Splitting& s) -> std::optional<SplitSolution> {
    auto pieces = piece_vectors(s);
    if (auto a = solve1d::partition_feasible(pieces, target))
      return SplitSolution{s, std::move(*a), splitting_total(s)};
    return std::nullopt;
  };

  std::optional<SplitSolution> hit;
  const unsigned threads = opts.threads;
  // Worth building random-access tables only when several workers can help.
  bool tabulate = threads > 1 && effective > 2048;
  if (tabulate) {
    std::vector<std::vector<std::vector<std::int64_t>>> tables(d);
    std::uint64_t table_cells = 0;
    for (std::size_t i = 0; i < d && tabulate; ++i) {
      const std::uint64_t cnt =
          binomial(cands[i].size(), static_cast<std::uint64_t>(alloc[i]));
      table_cells += cnt;
      if (table_cells > 4'000'000) {
        tabulate = false;  // too big to tabulate; fall back to the sequential walk
        break;
      }
      auto c = first_combination(static_cast<std::size_t>(alloc[i]), 0);
      do
        tables[i].push_back(c);
      while (next_combination(c, 0, static_cast<std::int64_t>(cands[i].size())));
    }
    if (tabulate) {
      hit = parallel_first_hit<SplitSolution>(
          effective, threads,
          [&](std::uint64_t j) -> std::optional<SplitSolution> {
            Splitting s;
            s.cuts.resize(d);
            std::uint64_t rest = j;
            for (std::size_t i = d; i-- > 0;) {
              const auto& tab = tables[i];
              const std::uint64_t pos = rest % tab.size();
              rest /= tab.size();
              s.cuts[i].resize(tab[pos].size());
              for (std::size_t q = 0; q < tab[pos].size(); ++q)
                s.cuts[i][q] = cands[i][static_cast<std::size_t>(tab[pos][q])];
            }
            return try_one(s);
          });
      budget -= hit ? 0 : effective;
      if (!hit && effective < total) throw resource_error("splitting budget exhausted");
      return hit;
    }
  }

  // Sequential odometer over per-axis combinations, last axis fastest.
  std::vector<AxisState> axes(d);
  for (std::size_t i = 0; i < d; ++i) {
    axes[i].idx = first_combination(static_cast<std::size_t>(alloc[i]), 0);
    axes[i].n_candidates = cands[i].size();
  }
  for (std::uint64_t j = 0; j < effective; ++j) {
    if (auto r = try_one(splitting_at(axes))) {
      budget -= j;  // j splittings were fully scanned before the hit
      return r;
    }
    std::size_t ax = d;
    while (ax-- > 0) {
      if (next_combination(axes[ax].idx, 0, static_cast<std::int64_t>(axes[ax].n_candidates)))
        break;
      axes[ax].idx = first_combination(axes[ax].idx.size(), 0);
    }
  }
  budget -= effective;
  if (effective < total) throw resource_error("splitting budget exhausted");
  return std::nullopt;
}

std::vector<std::vector<std::int64_t>> grid_candidates(const NecklaceGrid& g) {
  std::vector<std::vector<std::int64_t>> cands(g.dimensions());
  for (std::size_t i = 0; i < g.dimensions(); ++i)
    for (std::int64_t p = 1; p < g.dims()[i]; ++p) cands[i].push_back(p);
  return cands;
}

}  // namespace

std::vector<std::vector<std::int64_t>> candidate_positions(const PointSet& ps) {
  ps.validate();
  if (ps.points.empty()) throw std::invalid_argument("point set is empty");
  std::vector<std::vector<std::int64_t>> out(static_cast<std::size_t>(ps.dim));
  for (std::size_t axis = 0; axis < out.size(); ++axis) {
    std::vector<std::int64_t> xs;
    xs.reserve(ps.points.size());
    for (const Point& p : ps.points) xs.push_back(p.x[axis]);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    for (std::size_t i = 0; i + 1 < xs.size(); ++i)
      out[axis].push_back(floor_div2(xs[i] + xs[i + 1]) + 1);
  }
  return out;
}

std::vector<ColorVector> region_vectors(const PointSet& ps, const Splitting& s) {
  ps.validate();
  check_splitting_for_points(ps, s);
  const std::size_t d = static_cast<std::size_t>(ps.dim);
  std::size_t nboxes = 1;
  for (std::size_t i = 0; i < d; ++i) nboxes *= s.cuts[i].size() + 1;
  std::vector<ColorVector> out(nboxes, ColorVector(static_cast<std::size_t>(ps.palette)));
  for (const Point& p : ps.points) {
    std::size_t box = 0;
    for (std::size_t i = 0; i < d; ++i) {
      const auto& axis = s.cuts[i];
      const std::size_t iv = static_cast<std::size_t>(
          std::upper_bound(axis.begin(), axis.end(), p.x[i]) - axis.begin());
      box = box * (axis.size() + 1) + iv;
    }
    out[box][static_cast<std::size_t>(p.color)]++;
  }
  return out;
}

Fairness fairness_points(const PointSet& ps, const Splitting& s, const FamilyAssignment& a) {
  std::vector<ColorVector> vecs = region_vectors(ps, s);
  if (a.size() != vecs.size())
    throw std::invalid_argument("assignment length does not match box count");
  const ColorVector totals = ps.totals();
  if (!totals.all_even()) return Fairness::impossible;
  ColorVector family0(static_cast<std::size_t>(ps.palette));
  for (std::size_t i = 0; i < vecs.size(); ++i) {
    if (a[i] > 1) throw std::invalid_argument("family labels must be 0 or 1");
    if (a[i] == 0) family0 += vecs[i];
  }
  return family0 == totals.halved() ? Fairness::fair : Fairness::unfair;
}

bool is_fair_points(const PointSet& ps, const Splitting& s, const FamilyAssignment& a) {
  return fairness_points(ps, s, a) == Fairness::fair;
}

Result exists_fair_budgets(const NecklaceGrid& grid, const std::vector<int>& budgets,
                           const Options& opts) {
  if (budgets.size() != grid.dimensions())
    throw std::invalid_argument("budget vector dimension mismatch");
  for (std::size_t i = 0; i < budgets.size(); ++i)
    if (budgets[i] < 0 || budgets[i] > grid.dims()[i] - 1)
      throw std::invalid_argument("budget out of range for axis extent");
  const ColorVector totals = grid.totals();
  if (!totals.all_even()) return {SearchStatus::impossible, std::nullopt};
  const ColorVector target = totals.halved();

  const auto cands = grid_candidates(grid);
  std::uint64_t budget = opts.max_splittings;
  auto pieces = [&](const Splitting& s) { return box_vectors(grid, s); };
  if (auto sol = scan_allocation(cands, budgets, target, pieces, opts, budget))
    return {SearchStatus::found, std::move(sol)};
  return {SearchStatus::none, std::nullopt};
}

MinTotalResult min_total_lines(const NecklaceGrid& grid, const Options& opts) {
  const ColorVector totals = grid.totals();
  if (!totals.all_even()) return {SearchStatus::impossible, -1, std::nullopt};
  const ColorVector target = totals.halved();

  const auto cands = grid_candidates(grid);
  std::vector<int> caps(cands.size());
  int cap_sum = 0;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    caps[i] = static_cast<int>(cands[i].size());
    cap_sum += caps[i];
  }
  std::uint64_t budget = opts.max_splittings;
  auto pieces = [&](const Splitting& s) { return box_vectors(grid, s); };
  for (int t = 0; t <= cap_sum; ++t)
    for (const auto& alloc : compositions_capped(t, caps))
      if (auto sol = scan_allocation(cands, alloc, target, pieces, opts, budget))
        return {SearchStatus::found, t, std::move(sol)};
  return {SearchStatus::none, -1, std::nullopt};
}

MinTotalResult min_total_lines(const PointSet& ps, const Options& opts) {
  ps.validate();
  if (ps.points.empty()) throw std::invalid_argument("point set is empty");
  const ColorVector totals = ps.totals();
  if (!totals.all_even()) return {SearchStatus::impossible, -1, std::nullopt};
  const ColorVector target = totals.halved();

  const auto cands = candidate_positions(ps);
  std::vector<int> caps(cands.size());
  int cap_sum = 0;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    caps[i] = static_cast<int>(cands[i].size());
    cap_sum += caps[i];
  }
  std::uint64_t budget = opts.max_splittings;
  auto pieces = [&](const Splitting& s) { return region_vectors(ps, s); };
  for (int t = 0; t <= cap_sum; ++t)
    for (const auto& alloc : compositions_capped(t, caps))
      if (auto sol = scan_allocation(cands, alloc, target, pieces, opts, budget))
        return {SearchStatus::found, t, std::move(sol)};
  return {SearchStatus::none, -1, std::nullopt};
}

}  // namespace nsplit::solvend
