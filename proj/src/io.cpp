#include "latnum/io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace latnum {

namespace {

using json = nlohmann::json;

Rational parse_coordinate(const json& x) {
  if (x.is_number_integer()) return Rational(x.get<long>());
  if (x.is_string()) return Rational::parse(x.get<std::string>());
  if (x.is_array() && x.size() == 2) {
    const Rational num = parse_coordinate(x[0]), den = parse_coordinate(x[1]);
    if (!num.is_integer() || !den.is_integer() || den.is_zero())
      throw std::invalid_argument("coordinate pair must be [num, den] with integer entries");
    return num / den;
  }
  throw std::invalid_argument("coordinate must be an integer, a \"p/q\" string or a [num, den] pair");
}

long parse_positive(const std::string& text, const std::string& name) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || v < 1) throw std::invalid_argument("bad parameter in body name " + name);
  return v;
}

}  // namespace

VPolytope parse_polytope_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed polytope JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("dim") || !j.contains("vertices"))
    throw std::invalid_argument("polytope JSON needs \"dim\" and \"vertices\"");
  if (!j["dim"].is_number_integer() || j["dim"].get<long>() < 1)
    throw std::invalid_argument("\"dim\" must be a positive integer");
  const auto dim = j["dim"].get<std::size_t>();
  if (!j["vertices"].is_array() || j["vertices"].empty())
    throw std::invalid_argument("\"vertices\" must be a nonempty array");
  std::vector<Point> pts;
  for (const auto& row : j["vertices"]) {
    if (!row.is_array() || row.size() != dim) throw std::invalid_argument("vertex with the wrong number of coordinates");
    Point p;
    for (const auto& x : row) p.push_back(parse_coordinate(x));
    pts.push_back(std::move(p));
  }
  return hull(pts);
}

std::string polytope_json(const VPolytope& p) {
  json verts = json::array();
  for (const auto& v : p.vertices()) {
    json row = json::array();
    for (const auto& x : v) row.push_back(x.str());
    verts.push_back(std::move(row));
  }
  return json{{"dim", p.ambient_dim()}, {"vertices", std::move(verts)}}.dump();
}

VPolytope named_body(const std::string& name) {
  std::vector<std::string> parts;
  std::stringstream ss(name.substr(name.starts_with('@') ? 1 : 0));
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  if (parts.empty()) throw std::invalid_argument("empty body name");
  const std::string& kind = parts[0];
  auto dim = [&](std::size_t i) {
    const long n = parse_positive(parts.at(i), name);
    if (n > 8) throw std::invalid_argument("built-in bodies support dimension at most 8");
    return static_cast<std::size_t>(n);
  };
  if (kind == "hexagon" && parts.size() == 1) return hexagon();
  if (kind == "cube" && parts.size() == 2) return cube(dim(1));
  if (kind == "diamond" && parts.size() == 2) return crosspolytope(dim(1));
  if (kind == "cross" && parts.size() == 3) return crosspolytope(dim(1), parse_positive(parts[2], name));
  throw std::invalid_argument("unknown body " + name + " (expected @hexagon, @cube:n, @cross:n:l, @diamond:n)");
}

VPolytope load_body(const std::string& spec) {
  if (spec.starts_with('@')) return named_body(spec);
  std::ifstream in(spec, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + spec);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_polytope_json(buf.str());
}

std::vector<std::string> builtin_corpus() {
  return {"@hexagon", "@cube:2",    "@diamond:2", "@cross:2:3", "@cube:3",
          "@diamond:3", "@cross:3:2", "@cube:4",    "@diamond:4", "@cross:4:3"};
}

VPolytope random_symmetric_polytope(std::mt19937_64& rng, std::size_t dim, long coord) {
  std::uniform_int_distribution<long> entry(-coord, coord);
  std::uniform_int_distribution<std::size_t> pairs(dim, dim + 3);
  while (true) {
    std::vector<IntVector> pts;
    const std::size_t k = pairs(rng);
    while (pts.size() < 2 * k) {
      IntVector v(dim);
      bool zero = true;
      for (auto& x : v) {
        x = entry(rng);
        zero = zero && x == 0;
      }
      if (zero) continue;
      IntVector w = v;
      for (auto& x : w) x = -x;
      pts.push_back(std::move(v));
      pts.push_back(std::move(w));
    }
    VPolytope p = hull(pts);
    if (p.full_dimensional()) return p;
  }
}

std::vector<IntVector> random_independent_vectors(std::mt19937_64& rng, std::size_t n, long coord) {
  std::uniform_int_distribution<long> entry(-coord, coord);
  while (true) {
    std::vector<IntVector> rows(n, IntVector(n));
    for (auto& r : rows)
      for (auto& x : r) x = entry(rng);
    if (det(IntMatrix::from_rows(rows)) != 0) return rows;
  }
}

}  // namespace latnum
