#pragma once

#include <optional>

#include "nsplit/core.hpp"

namespace nsplit::solve1d {

// Splits `pieces` into two families so that family 0 sums exactly to
// `target`, which must be half of the component-wise totals (each total
// even) — std::invalid_argument otherwise. Returns the lexicographically
// least feasible labeling (0 = family 0), or nullopt.
//
// Exact DP over remaining-target states with memoized dead ends; when the
// piece count is small but the per-color targets are large (the DP state
// space, not the piece count, is the binding constraint) it switches to
// meet-in-the-middle over the two halves of the piece list.
std::optional<FamilyAssignment> partition_feasible(const std::vector<ColorVector>& pieces,
                                                   const ColorVector& target);

struct Result {
  SearchStatus status = SearchStatus::none;
  std::optional<SplitSolution> solution;  // engaged iff status == found
};

// Least-cuts-first search for a fair splitting of a 1-D necklace with at
// most max_cuts cuts. The witness is canonical: minimal (total cuts,
// cut positions lexicographically, assignment bits lexicographically).
Result exists_fair_with_cuts(const NecklaceGrid& grid, int max_cuts);

struct MinResult {
  SearchStatus status = SearchStatus::none;
  int min_cuts = -1;  // set iff status == found
  std::optional<SplitSolution> solution;
};

// Least m admitting a fair splitting, with canonical witness. For even
// color counts this always exists and never exceeds the palette size.
MinResult min_cuts_fair(const NecklaceGrid& grid);

// Independent reference implementation: enumerates every cut set with at
// most max_cuts cuts and every family assignment outright. Shares no
// search or pruning code with the solver above; used to cross-check it.
bool oracle_brute(const NecklaceGrid& grid, int max_cuts);

}  // namespace nsplit::solve1d
