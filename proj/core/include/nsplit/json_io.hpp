#pragma once

#include <string>

#include "nsplit/core.hpp"

namespace nsplit::io {

// Accepts the canonical object form {"dims":[...],"palette":k,"cells":[...]},
// a JSON string literal holding a 1-D word over 'a'..'z', or that word bare.
NecklaceGrid parse_grid(const std::string& text);
std::string grid_json(const NecklaceGrid& g);

// {"palette":k,"points":[[x1,..,xd,color],...]}
PointSet parse_point_set(const std::string& text);
std::string point_set_json(const PointSet& ps);

}  // namespace nsplit::io
