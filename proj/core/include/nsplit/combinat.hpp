#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

namespace nsplit {

// Advances c to the next combination of |c| distinct integers drawn from
// [lo, hi), in lexicographic order; returns false after the last one (and
// immediately for the empty combination, which occurs exactly once).
inline bool next_combination(std::vector<std::int64_t>& c, std::int64_t lo, std::int64_t hi) {
  const std::size_t m = c.size();
  std::size_t i = m;
  while (i-- > 0) {
    if (c[i] + 1 <= hi - static_cast<std::int64_t>(m - i)) {
      ++c[i];
      for (std::size_t j = i + 1; j < m; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  (void)lo;
  return false;
}

// First combination of m integers from [lo, hi): lo, lo+1, …, lo+m−1.
inline std::vector<std::int64_t> first_combination(std::size_t m, std::int64_t lo) {
  std::vector<std::int64_t> c(m);
  for (std::size_t i = 0; i < m; ++i) c[i] = lo + static_cast<std::int64_t>(i);
  return c;
}

inline std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  const std::uint64_t cap = std::numeric_limits<std::uint64_t>::max();
  return p > cap ? cap : static_cast<std::uint64_t>(p);
}

// C(n, r), saturating at UINT64_MAX.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t r) {
  if (r > n) return 0;
  if (r > n - r) r = n - r;
  unsigned __int128 v = 1;
  const unsigned __int128 cap = std::numeric_limits<std::uint64_t>::max();
  for (std::uint64_t i = 1; i <= r; ++i) {
    v = v * (n - r + i) / i;  // exact at every step: v is C(n-r+i, i)
    if (v > cap) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(v);
}

// All vectors a with Σ a_i = total and 0 ≤ a_i ≤ caps[i], in lexicographic
// order. Empty result if total is unreachable.
inline std::vector<std::vector<int>> compositions_capped(int total, const std::vector<int>& caps) {
  std::vector<std::vector<int>> out;
  std::vector<int> a(caps.size(), 0);
  std::vector<int> suffix_cap(caps.size() + 1, 0);
  for (std::size_t i = caps.size(); i-- > 0;) suffix_cap[i] = suffix_cap[i + 1] + caps[i];
  auto rec = [&](auto&& self, std::size_t i, int rest) -> void {
    if (i == caps.size()) {
      if (rest == 0) out.push_back(a);
      return;
    }
    const int lo = std::max(0, rest - suffix_cap[i + 1]);
    const int hi = std::min(caps[i], rest);
    for (int v = lo; v <= hi; ++v) {
      a[i] = v;
      self(self, i + 1, rest - v);
    }
  };
  rec(rec, 0, total);
  return out;
}

}  // namespace nsplit
