#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdlib>
#include <random>
#include <set>

#include "nsplit/core.hpp"
#include "nsplit/solve1d.hpp"
#include "nsplit/stringing.hpp"

using namespace nsplit;

namespace {

// snake position of every cell of a box, to test piece membership
std::vector<std::int64_t> snake_positions_of_box(const stringing::SnakeMap& map, const Box& b) {
  std::vector<std::int64_t> out;
  for (std::int64_t r = b.lo[0]; r < b.hi[0]; ++r)
    for (std::int64_t c = b.lo[1]; c < b.hi[1]; ++c)
      out.push_back(map.pos_of(static_cast<int>(r), static_cast<int>(c)));
  return out;
}

std::size_t piece_of(const std::vector<std::int64_t>& cuts, std::int64_t pos) {
  return static_cast<std::size_t>(std::upper_bound(cuts.begin(), cuts.end(), pos) - cuts.begin());
}

}  // namespace

TEST_CASE("boustrophedon order on the 2x2 traces") {
  const NecklaceGrid g({2, 2}, 2, {0, 1, 0, 1});  // rows: ab / ab
  const auto [line, map] = stringing::snake_order(g);
  CHECK(line.dims() == std::vector<int>{4});
  CHECK(line.cells() == std::vector<ColorId>{0, 1, 1, 0});  // "abba"
  CHECK(map.cell_of(0) == std::pair<int, int>{0, 0});
  CHECK(map.cell_of(1) == std::pair<int, int>{0, 1});
  CHECK(map.cell_of(2) == std::pair<int, int>{1, 1});
  CHECK(map.cell_of(3) == std::pair<int, int>{1, 0});

  const NecklaceGrid h({2, 2}, 2, {0, 0, 1, 1});  // rows: aa / bb
  CHECK(stringing::snake_order(h).first.cells() == std::vector<ColorId>{0, 0, 1, 1});  // "aabb"
}

TEST_CASE("one-row grids string to themselves") {
  const NecklaceGrid g({1, 5}, 3, {0, 1, 2, 1, 0});
  const auto [line, map] = stringing::snake_order(g);
  CHECK(line.cells() == g.cells());
  for (int c = 0; c < 5; ++c) CHECK(map.pos_of(0, c) == c);
}

TEST_CASE("snake map is a bijection with grid-adjacent neighbors") {
  const NecklaceGrid g({4, 3}, 1, std::vector<ColorId>(12, 0));
  const auto map = stringing::snake_order(g).second;
  std::set<std::pair<int, int>> seen;
  for (std::int64_t p = 0; p < map.length(); ++p) seen.insert(map.cell_of(p));
  CHECK(seen.size() == 12);
  for (std::int64_t p = 0; p + 1 < map.length(); ++p) {
    const auto [r1, c1] = map.cell_of(p);
    const auto [r2, c2] = map.cell_of(p + 1);
    CHECK(std::abs(r1 - r2) + std::abs(c1 - c2) == 1);
  }
  for (std::int64_t p = 0; p < map.length(); ++p) {
    const auto [r, c] = map.cell_of(p);
    CHECK(map.pos_of(r, c) == p);
  }
}

TEST_CASE("snake preserves the color totals") {
  std::mt19937 rng(5150);
  for (int iter = 0; iter < 50; ++iter) {
    const int rows = 1 + static_cast<int>(rng() % 6);
    const int cols = 1 + static_cast<int>(rng() % 6);
    std::vector<ColorId> cells(static_cast<std::size_t>(rows) * cols);
    for (auto& c : cells) c = static_cast<ColorId>(rng() % 3);
    const NecklaceGrid g({rows, cols}, 3, cells);
    CHECK(stringing::snake_order(g).first.totals() == g.totals());
  }
}

TEST_CASE("lifting a cut at the row turn needs one horizontal line") {
  const NecklaceGrid g({2, 2}, 2, {0, 1, 0, 1});
  const auto map = stringing::snake_order(g).second;
  const auto lifted = stringing::lift_cuts({2}, map);
  CHECK(lifted.cuts[0] == std::vector<std::int64_t>{1});
  CHECK(lifted.cuts[1].empty());
}

TEST_CASE("lifting a cut inside row 0 needs a vertical and one interior horizontal") {
  const NecklaceGrid g({2, 2}, 2, {0, 1, 0, 1});
  const auto map = stringing::snake_order(g).second;
  const auto lifted = stringing::lift_cuts({1}, map);
  CHECK(lifted.cuts[0] == std::vector<std::int64_t>{1});  // grid edge above row 0 is free
  CHECK(lifted.cuts[1] == std::vector<std::int64_t>{1});
  CHECK(splitting_total(lifted) == 2);
}

TEST_CASE("lifting nothing yields the empty splitting") {
  const NecklaceGrid g({3, 3}, 1, std::vector<ColorId>(9, 0));
  const auto map = stringing::snake_order(g).second;
  const auto lifted = stringing::lift_cuts({}, map);
  CHECK(splitting_total(lifted) == 0);
}

TEST_CASE("pipeline on the two 2x2 examples") {
  const NecklaceGrid g({2, 2}, 2, {0, 1, 0, 1});
  const auto r = stringing::split_via_stringing(g);
  REQUIRE(r.status == SearchStatus::found);
  CHECK(r.lines_used == 1);
  CHECK(is_fair(g, r.lines, r.assignment));

  const NecklaceGrid h({2, 2}, 2, {0, 0, 1, 1});
  const auto rh = stringing::split_via_stringing(h);
  REQUIRE(rh.status == SearchStatus::found);
  CHECK(rh.snake_cuts_used == 2);
  CHECK(rh.lines_used <= 6);
  CHECK(is_fair(h, rh.lines, rh.assignment));
}

TEST_CASE("odd color counts are impossible") {
  const NecklaceGrid g({1, 3}, 2, {0, 1, 0});
  CHECK(stringing::split_via_stringing(g).status == SearchStatus::impossible);
}

TEST_CASE("random grids: fair, refining, and within three lines per snake cut") {
  std::mt19937 rng(424242);
  int done = 0;
  while (done < 120) {
    const int rows = 1 + static_cast<int>(rng() % 8);
    const int cols = 1 + static_cast<int>(rng() % 8);
    const int palette = 1 + static_cast<int>(rng() % 4);
    std::vector<ColorId> cells(static_cast<std::size_t>(rows) * cols);
    for (auto& c : cells) c = static_cast<ColorId>(rng() % palette);
    const NecklaceGrid g({rows, cols}, palette, cells);
    if (!g.totals().all_even()) continue;
    ++done;

    const auto r = stringing::split_via_stringing(g);
    REQUIRE(r.status == SearchStatus::found);

    // (a) fair
    CHECK(is_fair(g, r.lines, r.assignment));
    // (b) three lines per 1-D cut, and the 1-D solve is within the palette bound
    CHECK(r.lines_used == splitting_total(r.lines));
    CHECK(r.lines_used <= 3 * r.snake_cuts_used);
    CHECK(r.snake_cuts_used <= palette);
    // (c) refinement: every lifted box lives inside one snake piece
    const auto map = stringing::snake_order(g).second;
    for (const auto& box : boxes(g, r.lines)) {
      const auto ps = snake_positions_of_box(map, box);
      REQUIRE(!ps.empty());
      const auto piece = piece_of(r.snake_cuts, ps.front());
      for (const auto p : ps) CHECK(piece_of(r.snake_cuts, p) == piece);
    }
  }
}
