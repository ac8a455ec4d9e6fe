#include "nsplit/stringing.hpp"

#include <algorithm>
#include <set>

#include "nsplit/solve1d.hpp"

namespace nsplit::stringing {

std::pair<int, int> SnakeMap::cell_of(std::int64_t pos) const {
  const int r = static_cast<int>(pos / cols);
  const int i = static_cast<int>(pos % cols);
  return {r, r % 2 == 0 ? i : cols - 1 - i};
}

std::int64_t SnakeMap::pos_of(int row, int col) const {
  const int i = row % 2 == 0 ? col : cols - 1 - col;
  return static_cast<std::int64_t>(row) * cols + i;
}

std::pair<NecklaceGrid, SnakeMap> snake_order(const NecklaceGrid& grid) {
  if (grid.dimensions() != 2)
    throw std::invalid_argument("snake stringing expects a 2-D necklace");
  SnakeMap map{grid.dims()[0], grid.dims()[1]};
  std::vector<ColorId> beads(static_cast<std::size_t>(map.length()));
  for (std::int64_t p = 0; p < map.length(); ++p) {
    auto [r, c] = map.cell_of(p);
    beads[static_cast<std::size_t>(p)] =
        grid.cells()[static_cast<std::size_t>(r) * map.cols + c];
  }
  return {NecklaceGrid({static_cast<int>(map.length())}, grid.palette(), std::move(beads)),
          map};
}

Splitting lift_cuts(const std::vector<std::int64_t>& snake_cuts, const SnakeMap& map) {
  std::set<std::int64_t> horiz, vert;
  for (std::int64_t p : snake_cuts) {
    if (p <= 0 || p >= map.length())
      throw std::invalid_argument("snake cut out of range");
    auto [r0, c0] = map.cell_of(p - 1);
    auto [r1, c1] = map.cell_of(p);
    if (r0 != r1) {
      horiz.insert(r1);  // cut at the turn: one horizontal line
    } else {
      vert.insert(std::max(c0, c1));
      if (r0 > 0) horiz.insert(r0);
      if (r0 + 1 < map.rows) horiz.insert(r0 + 1);
    }
  }
  Splitting s;
  s.cuts = {std::vector<std::int64_t>(horiz.begin(), horiz.end()),
            std::vector<std::int64_t>(vert.begin(), vert.end())};
  return s;
}

StringingResult split_via_stringing(const NecklaceGrid& grid) {
  auto [snake, map] = snake_order(grid);
  solve1d::MinResult one_d = solve1d::min_cuts_fair(snake);
  if (one_d.status != SearchStatus::found) {
    StringingResult r;
    r.status = one_d.status;
    return r;
  }
  const auto& cuts1d = one_d.solution->cuts.cuts[0];
  Splitting lines = lift_cuts(cuts1d, map);

  // Each lifted box lies inside one snake piece (the lift inserts the full
  // boundary of every cut row, so no box straddles a 1-D cut); the box
  // inherits that piece's family via any of its cells.
  std::vector<Box> bs = boxes(grid, lines);
  FamilyAssignment assignment(bs.size());
  for (std::size_t i = 0; i < bs.size(); ++i) {
    const std::int64_t pos =
        map.pos_of(static_cast<int>(bs[i].lo[0]), static_cast<int>(bs[i].lo[1]));
    const std::size_t piece = static_cast<std::size_t>(
        std::upper_bound(cuts1d.begin(), cuts1d.end(), pos) - cuts1d.begin());
    assignment[i] = one_d.solution->assignment[piece];
  }

  StringingResult r;
  r.status = SearchStatus::found;
  r.lines = lines;
  r.assignment = std::move(assignment);
  r.lines_used = splitting_total(r.lines);
  r.snake_cuts_used = static_cast<int>(cuts1d.size());
  r.snake_cuts = cuts1d;
  return r;
}

}  // namespace nsplit::stringing
