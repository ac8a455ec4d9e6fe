#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace nsplit {

using ColorId = int;

// Thrown when a search exceeds an explicit work budget. Callers that map
// results to process exit codes treat this as "resources exhausted", not
// as a proof of anything.
struct resource_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Per-color counts. Always indexed by ColorId in [0, palette).
struct ColorVector {
  std::vector<std::int64_t> counts;

  ColorVector() = default;
  explicit ColorVector(std::size_t k) : counts(k, 0) {}
  ColorVector(std::initializer_list<std::int64_t> init) : counts(init) {}

  std::size_t size() const { return counts.size(); }
  std::int64_t& operator[](std::size_t c) { return counts[c]; }
  std::int64_t operator[](std::size_t c) const { return counts[c]; }

  ColorVector& operator+=(const ColorVector& o);
  ColorVector& operator-=(const ColorVector& o);
  friend bool operator==(const ColorVector&, const ColorVector&) = default;

  bool is_zero() const;
  // True iff every component is even.
  bool all_even() const;
  // Component-wise half; caller must have checked all_even().
  ColorVector halved() const;
};

// Axis-aligned box of cells, half-open on every axis: lo[i] <= x_i < hi[i].
struct Box {
  std::vector<std::int64_t> lo, hi;

  std::size_t dimensions() const { return lo.size(); }
  std::int64_t cell_count() const;
  friend bool operator==(const Box&, const Box&) = default;
};

// A set of full axis-aligned hyperplane cuts: cuts[i] holds the cut
// positions on axis i, each strictly between 0 and the extent, strictly
// increasing. A cut at position p separates coordinates < p from >= p.
struct Splitting {
  std::vector<std::vector<std::int64_t>> cuts;

  std::size_t dimensions() const { return cuts.size(); }
  friend bool operator==(const Splitting&, const Splitting&) = default;
};

// Total ordering used everywhere a canonical "first" splitting is needed:
// fewer total cuts first, then positions compared axis 0 first.
bool splitting_less(const Splitting& a, const Splitting& b);

// d-dimensional grid of colored cells. Immutable after construction.
class NecklaceGrid {
 public:
  // cells are row-major: the last axis varies fastest.
  NecklaceGrid(std::vector<int> dims, int palette, std::vector<ColorId> cells);

  // 1-D shorthand: 'a'..'z' map to colors 0..25; palette = max color + 1.
  static NecklaceGrid from_string(std::string_view word);

  const std::vector<int>& dims() const { return dims_; }
  int palette() const { return palette_; }
  const std::vector<ColorId>& cells() const { return cells_; }
  std::size_t dimensions() const { return dims_.size(); }
  std::int64_t cell_count() const { return static_cast<std::int64_t>(cells_.size()); }

  ColorId at(std::size_t flat_index) const { return cells_[flat_index]; }
  ColorId at(const std::vector<std::int64_t>& idx) const;

  // Count of each color over the whole grid.
  ColorVector totals() const;

 private:
  std::vector<int> dims_;
  int palette_;
  std::vector<ColorId> cells_;
};

// Family label (0 or 1) per box, in the box order produced by boxes().
using FamilyAssignment = std::vector<std::uint8_t>;

// Outcome of a bounded search for a fair splitting.
enum class SearchStatus {
  found,       // a fair splitting within the budget exists (witness attached)
  none,        // the whole search space was covered; nothing fair in it
  impossible,  // some color has odd total count; fairness is unachievable
};

// A witnessed division: cuts plus the family label of each box.
struct SplitSolution {
  Splitting cuts;
  FamilyAssignment assignment;
  int metric_total = 0;  // total cut count of `cuts`
  friend bool operator==(const SplitSolution&, const SplitSolution&) = default;
};

// One colored point; coordinates may be anywhere in Z^d.
struct Point {
  std::vector<std::int64_t> x;
  ColorId color = 0;
  friend bool operator==(const Point&, const Point&) = default;
};

// Finite multiset of colored points in Z^d.
struct PointSet {
  int palette = 1;
  int dim = 0;
  std::vector<Point> points;

  ColorVector totals() const;
  // Throws std::invalid_argument on inconsistent dimensions/colors.
  void validate() const;
};

// True iff s is a valid splitting for a grid with the given extents.
bool splitting_valid_for(const Splitting& s, const std::vector<int>& dims);

// The boxes a splitting tiles the grid into, in lexicographic order of the
// per-axis interval index (axis 0 most significant). Throws
// std::invalid_argument if the splitting is invalid for the grid.
std::vector<Box> boxes(const NecklaceGrid& g, const Splitting& s);

// Color counts of grid cells inside one box (box may be any sub-box of the
// grid, not necessarily one produced by a splitting).
ColorVector color_vector(const NecklaceGrid& g, const Box& b);

// Color counts of every box of the splitting, in boxes() order.
// One pass over the cells; much cheaper than per-box queries.
std::vector<ColorVector> box_vectors(const NecklaceGrid& g, const Splitting& s);

enum class Fairness {
  fair,        // both families get exactly half of every color
  unfair,      // this particular assignment misses the half-half target
  impossible,  // some color has odd total count; no assignment can be fair
};

// Judges one candidate division. assignment.size() must equal the number of
// boxes of s (std::invalid_argument otherwise).
Fairness fairness(const NecklaceGrid& g, const Splitting& s, const FamilyAssignment& a);
bool is_fair(const NecklaceGrid& g, const Splitting& s, const FamilyAssignment& a);

// Metrics of a splitting.
int splitting_size(const Splitting& s);   // max cuts on any single axis
int splitting_total(const Splitting& s);  // sum of cuts over all axes
// Minimum gap between consecutive boundaries on any axis, where 0 and the
// axis extent count as boundaries. An axis with no cuts contributes its
// full extent.
std::int64_t granularity(const Splitting& s, const std::vector<int>& dims);

}  // namespace nsplit
