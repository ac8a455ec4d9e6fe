#pragma once

#include <optional>

#include "nsplit/core.hpp"

namespace nsplit::gadgets {

struct CertifyOptions {
  unsigned threads = 1;
  // Enumerated-splitting budget; past it the certifier throws resource_error
  // rather than guessing.
  std::uint64_t max_splittings = 50'000'000;
};

// Replayable enumeration transcript: re-running the certifier with the same
// point set and max_lines must reproduce these counts exactly.
struct Certificate {
  int max_lines = 0;
  std::vector<std::vector<std::int64_t>> candidates;  // per-axis cut positions considered
  std::uint64_t allocations_checked = 0;
  std::uint64_t splittings_checked = 0;
  std::uint64_t assignment_nodes = 0;   // DFS nodes over box labelings
  std::uint64_t assignment_leaves = 0;  // complete labelings reached
};

struct Counterexample {
  Splitting cuts;
  FamilyAssignment assignment;  // every box of the arrangement, lex order
  int total_lines = 0;
};

struct CertifyResult {
  bool certified = false;
  std::optional<Certificate> certificate;        // engaged iff certified
  std::optional<Counterexample> counterexample;  // engaged iff !certified
};

// Decides "no fair splitting of ps uses at most max_lines lines" by complete
// enumeration over candidate cut positions and box labelings. Even color
// counts required (std::invalid_argument otherwise). Deliberately
// self-contained: shares no enumeration machinery with the solver modules,
// so the two can serve as cross-checks.
CertifyResult certify_min_lines(const PointSet& ps, int max_lines,
                                const CertifyOptions& opts = {});

struct SearchOptions {
  unsigned threads = 1;
  std::uint64_t max_splittings_per_certify = 50'000'000;
};

// Smallest-first exhaustive search for a single-color point set inside
// [0, box_bound)^2 with at most max_points points (even cardinality) whose
// minimum fair-splitting line count is at least target_min_lines, certified
// by certify_min_lines. Candidates are screened by necessary conditions and
// deduplicated by canonical_form before certification. nullopt = exhausted.
std::optional<PointSet> search_gadget(int box_bound, int max_points, int target_min_lines,
                                      const SearchOptions& opts = {});

// k-1 copies of a single-color gadget (copy i recolored to color i, shifted
// along every axis so no axis-aligned line can touch two groups) plus a
// two-point color-0 anchor beyond the last copy. Each copy forces its own
// lines and the anchor forces one more, independently.
PointSet compose_far_apart(const PointSet& gadget, int k);

// Canonical representative under translation and, for d=2, the symmetry
// group of the square: the lexicographically least sorted point list over
// all eight transforms, each translated to the origin.
PointSet canonical_form(const PointSet& ps);

}  // namespace nsplit::gadgets
