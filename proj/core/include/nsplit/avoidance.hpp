#pragma once

#include <cstdint>
#include <limits>
#include <string_view>
#include <vector>

#include "nsplit/core.hpp"

namespace nsplit::avoidance {

struct Options {
  // Branch order over colors at each extension step; empty = 0..k-1.
  std::vector<int> color_order;
  // Force first occurrences of colors to appear in ascending order, pruning
  // color-permutation-equivalent branches. Does not change the exhaustion
  // depth, only the node count.
  bool symmetry_breaking = true;
  // Extension-attempt budget; past it the search throws resource_error.
  std::uint64_t max_nodes = std::numeric_limits<std::uint64_t>::max();
};

struct Run {
  int k = 0, t = 0, d = 0;
  int limit = 0;         // requested frontier bound (cell count)
  int side = 0;          // d=2: side of the square patch being filled
  int depth_reached = 0; // deepest valid coloring seen (cell count)
  bool exhausted = false;
  std::uint64_t nodes = 0;
  // Deepest witness, in fill order: 1-D left to right; 2-D diagonal by
  // diagonal (x+y ascending, x ascending within a diagonal).
  std::vector<ColorId> witness;
};

// True iff word[lo, hi) admits a fair splitting with at most t cuts.
// Odd-count subwords never do.
bool interval_is_bad(const std::vector<ColorId>& word, std::size_t lo, std::size_t hi, int t);

// No even-length factor splits at its midpoint into halves with equal color
// counts. Standalone implementation (prefix-count table), cross-validated
// against interval_is_bad in the tests.
bool is_abelian_square_free(const std::vector<ColorId>& word);
bool is_abelian_square_free(std::string_view word);

// Depth-first extension, one cell at a time, rejecting any extension that
// creates a bad interval (1-D) or bad square sub-grid (2-D). Returns the
// deepest witness found; exhausted=true iff the full tree was pruned before
// the limit.
Run backtrack_search(int k, int t, int d, int limit, const Options& opts = {});

}  // namespace nsplit::avoidance
