#include "nsplit/json_io.hpp"

#include <cctype>
#include <stdexcept>

#include "json.hpp"

namespace nsplit::io {

namespace {

using nlohmann::json;

std::string trimmed(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool looks_like_word(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < 'a' || c > 'z') return false;
  return true;
}

NecklaceGrid grid_from_object(const json& j) {
  if (!j.contains("dims") || !j.contains("palette") || !j.contains("cells"))
    throw std::invalid_argument("grid JSON needs dims, palette, cells");
  std::vector<int> dims = j.at("dims").get<std::vector<int>>();
  const int palette = j.at("palette").get<int>();
  std::vector<ColorId> cells = j.at("cells").get<std::vector<ColorId>>();
  return NecklaceGrid(std::move(dims), palette, std::move(cells));
}

}  // namespace

NecklaceGrid parse_grid(const std::string& text) {
  const std::string t = trimmed(text);
  if (looks_like_word(t)) return NecklaceGrid::from_string(t);
  json j = json::parse(t, nullptr, false);
  if (j.is_discarded()) throw std::invalid_argument("grid input is neither a word nor valid JSON");
  if (j.is_string()) {
    const std::string w = j.get<std::string>();
    if (!looks_like_word(w)) throw std::invalid_argument("grid word must use 'a'..'z' only");
    return NecklaceGrid::from_string(w);
  }
  if (j.is_object()) return grid_from_object(j);
  throw std::invalid_argument("grid JSON must be an object or a string");
}

std::string grid_json(const NecklaceGrid& g) {
  json j;
  j["dims"] = g.dims();
  j["palette"] = g.palette();
  j["cells"] = g.cells();
  return j.dump(2) + "\n";
}

PointSet parse_point_set(const std::string& text) {
  json j = json::parse(trimmed(text), nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("palette") || !j.contains("points"))
    throw std::invalid_argument("point set JSON needs palette and points");
  PointSet ps;
  ps.palette = j.at("palette").get<int>();
  const json& rows = j.at("points");
  if (!rows.is_array()) throw std::invalid_argument("points must be an array");
  for (const json& row : rows) {
    if (!row.is_array() || row.size() < 2)
      throw std::invalid_argument("each point is [x1,..,xd,color] with d >= 1");
    Point p;
    for (std::size_t i = 0; i + 1 < row.size(); ++i) p.x.push_back(row[i].get<std::int64_t>());
    p.color = row.back().get<ColorId>();
    if (ps.points.empty())
      ps.dim = static_cast<int>(p.x.size());
    else if (static_cast<int>(p.x.size()) != ps.dim)
      throw std::invalid_argument("points must share one dimension");
    ps.points.push_back(std::move(p));
  }
  ps.validate();
  return ps;
}

std::string point_set_json(const PointSet& ps) {
  json rows = json::array();
  for (const Point& p : ps.points) {
    json row = json::array();
    for (std::int64_t v : p.x) row.push_back(v);
    row.push_back(p.color);
    rows.push_back(row);
  }
  json j;
  j["palette"] = ps.palette;
  j["points"] = std::move(rows);
  return j.dump(2) + "\n";
}

}  // namespace nsplit::io
