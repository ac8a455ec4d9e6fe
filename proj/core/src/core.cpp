#include "nsplit/core.hpp"

#include <algorithm>
#include <limits>

namespace nsplit {

ColorVector& ColorVector::operator+=(const ColorVector& o) {
  if (counts.size() != o.counts.size())
    throw std::invalid_argument("color vector size mismatch");
  for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += o.counts[i];
  return *this;
}

ColorVector& ColorVector::operator-=(const ColorVector& o) {
  if (counts.size() != o.counts.size())
    throw std::invalid_argument("color vector size mismatch");
  for (std::size_t i = 0; i < counts.size(); ++i) counts[i] -= o.counts[i];
  return *this;
}

bool ColorVector::is_zero() const {
  return std::all_of(counts.begin(), counts.end(), [](std::int64_t v) { return v == 0; });
}

bool ColorVector::all_even() const {
  return std::all_of(counts.begin(), counts.end(), [](std::int64_t v) { return v % 2 == 0; });
}

ColorVector ColorVector::halved() const {
  ColorVector h(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) h.counts[i] = counts[i] / 2;
  return h;
}

std::int64_t Box::cell_count() const {
  std::int64_t n = 1;
  for (std::size_t i = 0; i < lo.size(); ++i) n *= hi[i] - lo[i];
  return n;
}

bool splitting_less(const Splitting& a, const Splitting& b) {
  int ta = splitting_total(a), tb = splitting_total(b);
  if (ta != tb) return ta < tb;
  return a.cuts < b.cuts;
}

NecklaceGrid::NecklaceGrid(std::vector<int> dims, int palette, std::vector<ColorId> cells)
    : dims_(std::move(dims)), palette_(palette), cells_(std::move(cells)) {
  if (dims_.empty()) throw std::invalid_argument("grid needs at least one axis");
  std::int64_t n = 1;
  for (int d : dims_) {
    if (d <= 0) throw std::invalid_argument("grid extents must be positive");
    n *= d;
  }
  if (palette_ <= 0) throw std::invalid_argument("palette must be positive");
  if (static_cast<std::int64_t>(cells_.size()) != n)
    throw std::invalid_argument("cell count does not match extents");
  for (ColorId c : cells_)
    if (c < 0 || c >= palette_) throw std::invalid_argument("cell color out of palette");
}

NecklaceGrid NecklaceGrid::from_string(std::string_view word) {
  if (word.empty()) throw std::invalid_argument("empty necklace word");
  std::vector<ColorId> cells;
  cells.reserve(word.size());
  int palette = 1;
  for (char ch : word) {
    if (ch < 'a' || ch > 'z') throw std::invalid_argument("necklace word must be lowercase a-z");
    int c = ch - 'a';
    cells.push_back(c);
    palette = std::max(palette, c + 1);
  }
  return NecklaceGrid({static_cast<int>(word.size())}, palette, std::move(cells));
}

ColorId NecklaceGrid::at(const std::vector<std::int64_t>& idx) const {
  if (idx.size() != dims_.size()) throw std::invalid_argument("index dimension mismatch");
  std::size_t flat = 0;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] < 0 || idx[i] >= dims_[i]) throw std::out_of_range("grid index out of range");
    flat = flat * dims_[i] + static_cast<std::size_t>(idx[i]);
  }
  return cells_[flat];
}

ColorVector NecklaceGrid::totals() const {
  ColorVector t(static_cast<std::size_t>(palette_));
  for (ColorId c : cells_) ++t[static_cast<std::size_t>(c)];
  return t;
}

ColorVector PointSet::totals() const {
  ColorVector t(static_cast<std::size_t>(palette));
  for (const Point& p : points) ++t[static_cast<std::size_t>(p.color)];
  return t;
}

void PointSet::validate() const {
  if (palette <= 0) throw std::invalid_argument("palette must be positive");
  if (dim <= 0) throw std::invalid_argument("point set dimension must be positive");
  for (const Point& p : points) {
    if (static_cast<int>(p.x.size()) != dim)
      throw std::invalid_argument("point dimension mismatch");
    if (p.color < 0 || p.color >= palette)
      throw std::invalid_argument("point color out of palette");
  }
}

bool splitting_valid_for(const Splitting& s, const std::vector<int>& dims) {
  if (s.cuts.size() != dims.size()) return false;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    std::int64_t prev = 0;
    for (std::int64_t p : s.cuts[i]) {
      if (p <= prev || p >= dims[i]) return false;
      prev = p;
    }
  }
  return true;
}

std::vector<Box> boxes(const NecklaceGrid& g, const Splitting& s) {
  if (!splitting_valid_for(s, g.dims()))
    throw std::invalid_argument("splitting invalid for grid");
  const std::size_t d = g.dimensions();
  // Per-axis boundary lists 0, cuts..., extent.
  std::vector<std::vector<std::int64_t>> bounds(d);
  for (std::size_t i = 0; i < d; ++i) {
    bounds[i].push_back(0);
    bounds[i].insert(bounds[i].end(), s.cuts[i].begin(), s.cuts[i].end());
    bounds[i].push_back(g.dims()[i]);
  }
  std::size_t count = 1;
  for (std::size_t i = 0; i < d; ++i) count *= bounds[i].size() - 1;
  std::vector<Box> out;
  out.reserve(count);
  std::vector<std::size_t> idx(d, 0);
  for (;;) {
    Box b;
    b.lo.resize(d);
    b.hi.resize(d);
    for (std::size_t i = 0; i < d; ++i) {
      b.lo[i] = bounds[i][idx[i]];
      b.hi[i] = bounds[i][idx[i] + 1];
    }
    out.push_back(std::move(b));
    // Odometer with axis 0 most significant.
    std::size_t ax = d;
    while (ax > 0) {
      --ax;
      if (++idx[ax] < bounds[ax].size() - 1) break;
      idx[ax] = 0;
      if (ax == 0) return out;
    }
  }
}

ColorVector color_vector(const NecklaceGrid& g, const Box& b) {
  const std::size_t d = g.dimensions();
  if (b.dimensions() != d) throw std::invalid_argument("box dimension mismatch");
  for (std::size_t i = 0; i < d; ++i)
    if (b.lo[i] < 0 || b.hi[i] > g.dims()[i] || b.lo[i] > b.hi[i])
      throw std::invalid_argument("box out of grid");
  ColorVector v(static_cast<std::size_t>(g.palette()));
  if (b.cell_count() == 0) return v;
  std::vector<std::int64_t> idx(b.lo);
  for (;;) {
    v[static_cast<std::size_t>(g.at(idx))]++;
    std::size_t ax = d;
    while (ax > 0) {
      --ax;
      if (++idx[ax] < b.hi[ax]) break;
      idx[ax] = b.lo[ax];
      if (ax == 0) return v;
    }
  }
}

std::vector<ColorVector> box_vectors(const NecklaceGrid& g, const Splitting& s) {
  if (!splitting_valid_for(s, g.dims()))
    throw std::invalid_argument("splitting invalid for grid");
  const std::size_t d = g.dimensions();
  // interval_of[i][x] = index of the interval coordinate x falls into on axis i.
  std::vector<std::vector<std::size_t>> interval_of(d);
  std::vector<std::size_t> intervals(d);
  for (std::size_t i = 0; i < d; ++i) {
    interval_of[i].resize(static_cast<std::size_t>(g.dims()[i]));
    std::size_t iv = 0, next_cut = 0;
    for (std::int64_t x = 0; x < g.dims()[i]; ++x) {
      while (next_cut < s.cuts[i].size() && s.cuts[i][next_cut] <= x) {
        ++iv;
        ++next_cut;
      }
      interval_of[i][static_cast<std::size_t>(x)] = iv;
    }
    intervals[i] = s.cuts[i].size() + 1;
  }
  std::size_t nboxes = 1;
  for (std::size_t i = 0; i < d; ++i) nboxes *= intervals[i];
  std::vector<ColorVector> out(nboxes, ColorVector(static_cast<std::size_t>(g.palette())));
  // Walk all cells once in row-major order.
  std::vector<std::int64_t> idx(d, 0);
  const auto& cells = g.cells();
  for (std::size_t cell = 0; cell < cells.size(); ++cell) {
    std::size_t box = 0;
    for (std::size_t i = 0; i < d; ++i)
      box = box * intervals[i] + interval_of[i][static_cast<std::size_t>(idx[i])];
    out[box][static_cast<std::size_t>(cells[cell])]++;
    std::size_t ax = d;
    while (ax > 0) {
      --ax;
      if (++idx[ax] < g.dims()[ax]) break;
      idx[ax] = 0;
    }
  }
  return out;
}

Fairness fairness(const NecklaceGrid& g, const Splitting& s, const FamilyAssignment& a) {
  std::vector<ColorVector> vecs = box_vectors(g, s);
  if (a.size() != vecs.size())
    throw std::invalid_argument("assignment length does not match box count");
  ColorVector total = g.totals();
  if (!total.all_even()) return Fairness::impossible;
  ColorVector family0(static_cast<std::size_t>(g.palette()));
  for (std::size_t i = 0; i < vecs.size(); ++i) {
    if (a[i] > 1) throw std::invalid_argument("family labels must be 0 or 1");
    if (a[i] == 0) family0 += vecs[i];
  }
  return family0 == total.halved() ? Fairness::fair : Fairness::unfair;
}

bool is_fair(const NecklaceGrid& g, const Splitting& s, const FamilyAssignment& a) {
  return fairness(g, s, a) == Fairness::fair;
}

int splitting_size(const Splitting& s) {
  std::size_t m = 0;
  for (const auto& axis : s.cuts) m = std::max(m, axis.size());
  return static_cast<int>(m);
}

int splitting_total(const Splitting& s) {
  std::size_t t = 0;
  for (const auto& axis : s.cuts) t += axis.size();
  return static_cast<int>(t);
}

std::int64_t granularity(const Splitting& s, const std::vector<int>& dims) {
  if (!splitting_valid_for(s, dims))
    throw std::invalid_argument("splitting invalid for grid");
  std::int64_t g = std::numeric_limits<std::int64_t>::max();
  for (std::size_t i = 0; i < dims.size(); ++i) {
    std::int64_t prev = 0;
    for (std::int64_t p : s.cuts[i]) {
      g = std::min(g, p - prev);
      prev = p;
    }
    g = std::min(g, dims[i] - prev);
  }
  return g;
}

}  // namespace nsplit
