#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "nsplit/avoidance.hpp"
#include "nsplit/core.hpp"
#include "nsplit/solvend.hpp"

using namespace nsplit;

namespace {

std::vector<ColorId> letters(const std::string& w) {
  std::vector<ColorId> out;
  for (char c : w) out.push_back(c - 'a');
  return out;
}

// Exhaustive longest-prefix-extendable free word, as an independent oracle
// for the exhaustion depth of the t=1 backtracking search.
int longest_free(int k, int maxlen) {
  int best = 0;
  std::vector<ColorId> w;
  auto dfs = [&](auto&& self) -> void {
    best = std::max(best, static_cast<int>(w.size()));
    if (static_cast<int>(w.size()) == maxlen) return;
    for (int c = 0; c < k; ++c) {
      w.push_back(c);
      if (avoidance::is_abelian_square_free(w)) self(self);
      w.pop_back();
    }
  };
  dfs(dfs);
  return best;
}

bool has_bad_interval(const std::vector<ColorId>& w, int t) {
  for (std::size_t lo = 0; lo < w.size(); ++lo)
    for (std::size_t hi = lo + 2; hi <= w.size(); ++hi)
      if (avoidance::interval_is_bad(w, lo, hi, t)) return true;
  return false;
}

}  // namespace

TEST_CASE("interval badness on hand-checked words") {
  CHECK(avoidance::interval_is_bad(letters("abab"), 0, 4, 1));
  CHECK_FALSE(avoidance::interval_is_bad(letters("ab"), 0, 2, 0));
  CHECK_FALSE(avoidance::interval_is_bad(letters("aabb"), 0, 4, 1));
  CHECK(avoidance::interval_is_bad(letters("aabb"), 0, 4, 2));
  CHECK(avoidance::interval_is_bad(letters("aa"), 0, 2, 1));
}

TEST_CASE("odd intervals are never bad") {
  std::mt19937 rng(11);
  for (int iter = 0; iter < 100; ++iter) {
    std::vector<ColorId> w(1 + rng() % 11);
    for (auto& c : w) c = static_cast<ColorId>(rng() % 3);
    for (std::size_t lo = 0; lo < w.size(); ++lo)
      for (std::size_t hi = lo + 1; hi <= w.size(); hi += 2)
        if ((hi - lo) % 2 == 1) CHECK_FALSE(avoidance::interval_is_bad(w, lo, hi, 3));
  }
}

TEST_CASE("interval bounds are validated") {
  const auto w = letters("abc");
  CHECK_THROWS_AS(avoidance::interval_is_bad(w, 2, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(avoidance::interval_is_bad(w, 0, 4, 1), std::invalid_argument);
  CHECK_THROWS_AS(avoidance::interval_is_bad(w, 0, 2, -1), std::invalid_argument);
}

TEST_CASE("abelian-square freedom on hand-checked words") {
  CHECK(avoidance::is_abelian_square_free("abacaba"));
  CHECK_FALSE(avoidance::is_abelian_square_free("abcabc"));   // halves match as multisets
  CHECK_FALSE(avoidance::is_abelian_square_free("aa"));
  CHECK(avoidance::is_abelian_square_free("a"));
  CHECK(avoidance::is_abelian_square_free(""));
  CHECK_FALSE(avoidance::is_abelian_square_free("abcacb"));   // abc|acb
}

TEST_CASE("freedom coincides with the absence of bad even intervals at one cut") {
  std::mt19937 rng(20202);
  for (int iter = 0; iter < 300; ++iter) {
    std::vector<ColorId> w(1 + rng() % 14);
    for (auto& c : w) c = static_cast<ColorId>(rng() % 3);
    CHECK(avoidance::is_abelian_square_free(w) == !has_bad_interval(w, 1));
  }
}

TEST_CASE("witnesses are valid and prefix-closed") {
  const auto run = avoidance::backtrack_search(4, 1, 1, 24);
  CHECK_FALSE(run.exhausted);
  CHECK(run.depth_reached == 24);
  REQUIRE(run.witness.size() == 24);
  for (std::size_t len = 1; len <= run.witness.size(); ++len) {
    const std::vector<ColorId> prefix(run.witness.begin(),
                                      run.witness.begin() + static_cast<std::ptrdiff_t>(len));
    CHECK_FALSE(has_bad_interval(prefix, 1));
  }
}

TEST_CASE("one color dies at length one") {
  const auto run = avoidance::backtrack_search(1, 1, 1, 10);
  CHECK(run.exhausted);
  CHECK(run.depth_reached == 1);
}

TEST_CASE("three colors exhaust exactly at the oracle depth") {
  const int oracle = longest_free(3, 20);
  const auto run = avoidance::backtrack_search(3, 1, 1, 20);
  CHECK(run.exhausted);
  CHECK(run.depth_reached == oracle);

  avoidance::Options permuted;
  permuted.color_order = {2, 0, 1};
  const auto run2 = avoidance::backtrack_search(3, 1, 1, 20, permuted);
  CHECK(run2.exhausted);
  CHECK(run2.depth_reached == oracle);

  avoidance::Options nosym;
  nosym.symmetry_breaking = false;
  const auto run3 = avoidance::backtrack_search(3, 1, 1, 20, nosym);
  CHECK(run3.exhausted);
  CHECK(run3.depth_reached == oracle);
  CHECK(run3.nodes >= run.nodes);  // symmetry breaking only prunes
}

TEST_CASE("a larger cut budget never lengthens the survivable prefix") {
  const auto t1 = avoidance::backtrack_search(3, 1, 1, 20);
  const auto t2 = avoidance::backtrack_search(3, 2, 1, 20);
  REQUIRE(t1.exhausted);
  REQUIRE(t2.exhausted);
  CHECK(t2.depth_reached <= t1.depth_reached);
}

TEST_CASE("search options are validated") {
  avoidance::Options bad;
  bad.color_order = {0, 0, 2};
  CHECK_THROWS_AS(avoidance::backtrack_search(3, 1, 1, 5, bad), std::invalid_argument);
  CHECK_THROWS_AS(avoidance::backtrack_search(0, 1, 1, 5), std::invalid_argument);
  CHECK_THROWS_AS(avoidance::backtrack_search(2, 1, 3, 5), std::invalid_argument);
  CHECK_THROWS_AS(avoidance::backtrack_search(2, 1, 1, 0), std::invalid_argument);
}

TEST_CASE("node budgets surface as resource errors") {
  avoidance::Options opts;
  opts.max_nodes = 1;
  CHECK_THROWS_AS(avoidance::backtrack_search(3, 1, 1, 20, opts), resource_error);
}

TEST_CASE("plane witnesses kill every complete square") {
  const auto run = avoidance::backtrack_search(3, 1, 2, 9);
  REQUIRE(run.side >= 3);
  const int side = run.side;

  // rebuild the patch in fill order: diagonals of x+y, x ascending
  std::vector<ColorId> grid(static_cast<std::size_t>(side) * side, -1);
  std::size_t idx = 0;
  for (int sum = 0; sum <= 2 * (side - 1); ++sum)
    for (int x = std::max(0, sum - (side - 1)); x <= std::min(sum, side - 1); ++x) {
      const int y = sum - x;
      if (idx < run.witness.size()) grid[static_cast<std::size_t>(x) * side + y] = run.witness[idx];
      ++idx;
    }

  for (int w = 2; w <= side; ++w)
    for (int x0 = 0; x0 + w <= side; ++x0)
      for (int y0 = 0; y0 + w <= side; ++y0) {
        std::vector<ColorId> cells;
        bool complete = true;
        for (int x = x0; x < x0 + w && complete; ++x)
          for (int y = y0; y < y0 + w; ++y) {
            const ColorId c = grid[static_cast<std::size_t>(x) * side + y];
            if (c < 0) {
              complete = false;
              break;
            }
            cells.push_back(c);
          }
        if (!complete) continue;
        const NecklaceGrid patch({w, w}, 3, cells);
        for (int a = 0; a <= 1; ++a)
          for (int b = 0; a + b <= 1; ++b) {
            if (a > w - 1 || b > w - 1) continue;
            CHECK(solvend::exists_fair_budgets(patch, {a, b}).status != SearchStatus::found);
          }
      }
}
