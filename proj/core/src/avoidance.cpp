#include "nsplit/avoidance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "nsplit/solve1d.hpp"
#include "nsplit/solvend.hpp"

namespace nsplit::avoidance {

bool interval_is_bad(const std::vector<ColorId>& word, std::size_t lo, std::size_t hi, int t) {
  if (lo >= hi || hi > word.size())
    throw std::invalid_argument("interval_is_bad: bad interval bounds");
  if (t < 0) throw std::invalid_argument("interval_is_bad: t must be >= 0");
  int palette = 1;
  for (std::size_t i = lo; i < hi; ++i) {
    if (word[i] < 0) throw std::invalid_argument("interval_is_bad: negative color");
    palette = std::max(palette, word[i] + 1);
  }
  NecklaceGrid g({static_cast<int>(hi - lo)}, palette,
                 std::vector<ColorId>(word.begin() + static_cast<std::ptrdiff_t>(lo),
                                      word.begin() + static_cast<std::ptrdiff_t>(hi)));
  return solve1d::exists_fair_with_cuts(g, t).status == SearchStatus::found;
}

bool is_abelian_square_free(const std::vector<ColorId>& word) {
  const std::size_t n = word.size();
  if (n < 2) return true;
  int palette = 1;
  for (ColorId c : word) {
    if (c < 0) throw std::invalid_argument("is_abelian_square_free: negative color");
    palette = std::max(palette, c + 1);
  }
  // pref[i][c] = occurrences of c in word[0, i)
  std::vector<std::vector<int>> pref(n + 1, std::vector<int>(static_cast<std::size_t>(palette), 0));
  for (std::size_t i = 0; i < n; ++i) {
    pref[i + 1] = pref[i];
    ++pref[i + 1][static_cast<std::size_t>(word[i])];
  }
  for (std::size_t m = 1; 2 * m <= n; ++m) {
    for (std::size_t i = 0; i + 2 * m <= n; ++i) {
      bool equal = true;
      for (int c = 0; c < palette && equal; ++c) {
        const std::size_t cc = static_cast<std::size_t>(c);
        if (pref[i + m][cc] - pref[i][cc] != pref[i + 2 * m][cc] - pref[i + m][cc]) equal = false;
      }
      if (equal) return false;
    }
  }
  return true;
}

bool is_abelian_square_free(std::string_view word) {
  std::vector<ColorId> v;
  v.reserve(word.size());
  for (char ch : word) {
    if (ch < 'a' || ch > 'z')
      throw std::invalid_argument("is_abelian_square_free: expected letters a-z");
    v.push_back(ch - 'a');
  }
  return is_abelian_square_free(v);
}

namespace {

std::vector<int> resolve_order(int k, const std::vector<int>& requested) {
  if (requested.empty()) {
    std::vector<int> o(static_cast<std::size_t>(k));
    std::iota(o.begin(), o.end(), 0);
    return o;
  }
  std::vector<int> sorted = requested;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < k; ++i)
    if (sorted[static_cast<std::size_t>(i)] != i)
      throw std::invalid_argument("backtrack_search: color_order must be a permutation of 0..k-1");
  if (static_cast<int>(requested.size()) != k)
    throw std::invalid_argument("backtrack_search: color_order size must be k");
  return requested;
}

struct Search1d {
  int k, t, limit;
  std::vector<int> order;
  bool sym;
  std::uint64_t max_nodes;
  Run run;

  std::vector<ColorId> word;
  std::vector<std::vector<int>> pref;  // pref[i][c]
  int used = 0;
  bool reached = false;

  void push(ColorId c) {
    word.push_back(c);
    pref.push_back(pref.back());
    ++pref.back()[static_cast<std::size_t>(c)];
  }
  void pop() {
    word.pop_back();
    pref.pop_back();
  }

  // does word (with its last cell just added) now end in a bad interval?
  bool ends_bad() const {
    const std::size_t len = word.size();
    if (t == 1) {
      // with one cut only the midpoint split can be fair: an abelian square
      for (std::size_t m = 1; 2 * m <= len; ++m) {
        const std::size_t lo = len - 2 * m, mid = len - m;
        bool equal = true;
        for (int c = 0; c < k && equal; ++c) {
          const std::size_t cc = static_cast<std::size_t>(c);
          if (pref[mid][cc] - pref[lo][cc] != pref[len][cc] - pref[mid][cc]) equal = false;
        }
        if (equal) return true;
      }
      return false;
    }
    for (std::size_t L = 2; L <= len; ++L) {
      const std::size_t lo = len - L;
      bool even = true;
      for (int c = 0; c < k && even; ++c) {
        const std::size_t cc = static_cast<std::size_t>(c);
        if ((pref[len][cc] - pref[lo][cc]) % 2 != 0) even = false;
      }
      if (!even) continue;
      if (interval_is_bad(word, lo, len, t)) return true;
    }
    return false;
  }

  void dfs() {
    if (static_cast<int>(word.size()) > run.depth_reached) {
      run.depth_reached = static_cast<int>(word.size());
      run.witness = word;
    }
    if (static_cast<int>(word.size()) >= limit) {
      reached = true;
      return;
    }
    for (int c : order) {
      if (sym && c > used) continue;
      if (++run.nodes > max_nodes) throw resource_error("backtrack_search: node budget exhausted");
      push(c);
      if (!ends_bad()) {
        const int prev_used = used;
        used = std::max(used, c + 1);
        dfs();
        used = prev_used;
        if (reached) {
          pop();
          return;
        }
      }
      pop();
    }
  }
};

struct Search2d {
  int k, t, limit, side;
  std::vector<int> order;
  bool sym;
  std::uint64_t max_nodes;
  Run run;

  std::vector<std::pair<int, int>> fill_order;  // (x, y) diagonal by diagonal
  std::vector<ColorId> grid;                    // side*side, -1 = empty
  std::vector<ColorId> colors_placed;
  int used = 0;
  bool reached = false;

  ColorId& cell(int x, int y) { return grid[static_cast<std::size_t>(x * side + y)]; }
  ColorId cell(int x, int y) const { return grid[static_cast<std::size_t>(x * side + y)]; }

  // squares with their max-diagonal corner at (x, y) are the only fully
  // filled squares containing the cell just placed there
  bool makes_bad_square(int x, int y) const {
    const int wmax = std::min(x, y) + 1;
    for (int w = 2; w <= wmax; ++w) {
      std::vector<ColorId> cells;
      cells.reserve(static_cast<std::size_t>(w) * static_cast<std::size_t>(w));
      ColorVector counts(static_cast<std::size_t>(k));
      for (int i = 0; i < w; ++i)
        for (int j = 0; j < w; ++j) {
          const ColorId c = cell(x - w + 1 + i, y - w + 1 + j);
          cells.push_back(c);
          ++counts[static_cast<std::size_t>(c)];
        }
      if (!counts.all_even()) continue;
      NecklaceGrid g({w, w}, k, cells);
      bool bad = false;
      for (int a = 0; a <= std::min(t, w - 1) && !bad; ++a)
        for (int b = 0; a + b <= t && b <= w - 1 && !bad; ++b)
          if (solvend::exists_fair_budgets(g, {a, b}).status == SearchStatus::found) bad = true;
      if (bad) return true;
    }
    return false;
  }

  void dfs(std::size_t idx) {
    if (static_cast<int>(idx) > run.depth_reached) {
      run.depth_reached = static_cast<int>(idx);
      run.witness = colors_placed;
    }
    if (static_cast<int>(idx) >= limit) {
      reached = true;
      return;
    }
    const auto [x, y] = fill_order[idx];
    for (int c : order) {
      if (sym && c > used) continue;
      if (++run.nodes > max_nodes) throw resource_error("backtrack_search: node budget exhausted");
      cell(x, y) = c;
      colors_placed.push_back(c);
      if (!makes_bad_square(x, y)) {
        const int prev_used = used;
        used = std::max(used, c + 1);
        dfs(idx + 1);
        used = prev_used;
        if (reached) {
          colors_placed.pop_back();
          cell(x, y) = -1;
          return;
        }
      }
      colors_placed.pop_back();
      cell(x, y) = -1;
    }
  }
};

}  // namespace

Run backtrack_search(int k, int t, int d, int limit, const Options& opts) {
  if (k < 1) throw std::invalid_argument("backtrack_search: k must be >= 1");
  if (t < 1) throw std::invalid_argument("backtrack_search: t must be >= 1");
  if (d != 1 && d != 2) throw std::invalid_argument("backtrack_search: d must be 1 or 2");
  if (limit < 1) throw std::invalid_argument("backtrack_search: limit must be >= 1");
  const std::vector<int> order = resolve_order(k, opts.color_order);

  if (d == 1) {
    Search1d s{k, t, limit, order, opts.symmetry_breaking, opts.max_nodes, {}};
    s.run.k = k;
    s.run.t = t;
    s.run.d = 1;
    s.run.limit = limit;
    s.pref.emplace_back(static_cast<std::size_t>(k), 0);
    s.dfs();
    s.run.exhausted = !s.reached;
    return s.run;
  }

  int side = 1;
  while (side * side < limit) ++side;
  Search2d s{k, t, limit, side, order, opts.symmetry_breaking, opts.max_nodes, {}};
  s.run.k = k;
  s.run.t = t;
  s.run.d = 2;
  s.run.limit = limit;
  s.run.side = side;
  for (int sum = 0; sum <= 2 * (side - 1); ++sum)
    for (int x = std::max(0, sum - (side - 1)); x <= std::min(sum, side - 1); ++x)
      s.fill_order.emplace_back(x, sum - x);
  s.grid.assign(static_cast<std::size_t>(side) * static_cast<std::size_t>(side), -1);
  s.dfs(0);
  s.run.exhausted = !s.reached;
  return s.run;
}

}  // namespace nsplit::avoidance
