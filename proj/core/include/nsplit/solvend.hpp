#pragma once

#include <limits>
#include <optional>

#include "nsplit/core.hpp"

namespace nsplit::solvend {

struct Options {
  unsigned threads = 1;
  // Upper bound on enumerated splittings before the search gives up with a
  // resource_error instead of an answer.
  std::uint64_t max_splittings = std::numeric_limits<std::uint64_t>::max();
};

struct Result {
  SearchStatus status = SearchStatus::none;
  std::optional<SplitSolution> solution;  // engaged iff status == found
};

// Fair splitting with exactly budgets[i] cuts on axis i, complete over all
// integer cut positions; at-most semantics is the caller's loop over
// budgets. Throws std::invalid_argument if budgets[i] exceeds dims[i]-1.
Result exists_fair_budgets(const NecklaceGrid& grid, const std::vector<int>& budgets,
                           const Options& opts = {});

struct MinTotalResult {
  SearchStatus status = SearchStatus::none;
  int total = -1;  // set iff status == found
  std::optional<SplitSolution> solution;
};

// Least total line count admitting a fair splitting. Search order: total
// ascending, per-axis allocation lexicographic, positions lexicographic —
// so the witness is the canonical minimal one, independent of thread count.
MinTotalResult min_total_lines(const NecklaceGrid& grid, const Options& opts = {});

// Point-set variant; cuts are drawn from candidate_positions only, which is
// complete: separating hyperplanes between equal point classes are
// interchangeable. status == none means no fair splitting exists at all.
MinTotalResult min_total_lines(const PointSet& ps, const Options& opts = {});

// For each axis, the sorted representative cut positions between
// consecutive distinct occupied coordinates. Throws on an empty point set.
std::vector<std::vector<std::int64_t>> candidate_positions(const PointSet& ps);

// Color counts of every box the splitting induces on the points, in the
// same lexicographic box order as core boxes(); includes empty boxes.
std::vector<ColorVector> region_vectors(const PointSet& ps, const Splitting& s);

// Fairness of a point-set division: exactly half of every color per family.
Fairness fairness_points(const PointSet& ps, const Splitting& s, const FamilyAssignment& a);
bool is_fair_points(const PointSet& ps, const Splitting& s, const FamilyAssignment& a);

}  // namespace nsplit::solvend
