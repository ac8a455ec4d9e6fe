#pragma once

#include "nsplit/core.hpp"

namespace nsplit::stringing {

// Boustrophedon linearization of a rows×cols grid: even rows left→right,
// odd rows right→left, so consecutive snake positions are always adjacent
// cells.
struct SnakeMap {
  int rows = 0, cols = 0;

  std::int64_t length() const { return static_cast<std::int64_t>(rows) * cols; }
  // snake position -> (row, col)
  std::pair<int, int> cell_of(std::int64_t pos) const;
  // (row, col) -> snake position
  std::int64_t pos_of(int row, int col) const;
};

// Strings a 2-D necklace into 1-D along the snake. Throws for d ≠ 2.
std::pair<NecklaceGrid, SnakeMap> snake_order(const NecklaceGrid& grid);

// Lifts 1-D snake cuts to full grid lines: a cut at a row turn becomes one
// horizontal line; a cut inside row r between columns becomes one vertical
// line plus horizontal lines at both boundaries of row r. Grid edges are
// never counted; lines are deduplicated. Axis 0 = rows, axis 1 = columns.
Splitting lift_cuts(const std::vector<std::int64_t>& snake_cuts, const SnakeMap& map);

struct StringingResult {
  SearchStatus status = SearchStatus::none;
  Splitting lines;               // lifted 2-D splitting
  FamilyAssignment assignment;   // per lifted box, inherited from snake pieces
  int lines_used = 0;            // deduplicated total line count
  int snake_cuts_used = 0;       // 1-D cuts behind the lift
  std::vector<std::int64_t> snake_cuts;  // their positions on the snake
};

// Full pipeline: snake, 1-D minimum-cut solve, lift, family inheritance.
// The lifted boxes refine the snake pieces, so each box's family is the
// family of the unique piece containing it; the result always passes
// is_fair and uses at most 3 × snake_cuts_used ≤ 3 × palette lines.
//
// Only d = 2 is implemented. The lift rule generalizes: snaking a d-cube
// grid axis by axis turns one 1-D cut into at most 2d−1 full hyperplanes
// (one on the cut's own axis plus two bounding each coarser axis' turn),
// giving (2d−1)·k lines for k colors. Not implemented here.
StringingResult split_via_stringing(const NecklaceGrid& grid);

}  // namespace nsplit::stringing
