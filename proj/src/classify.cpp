#include "latnum/classify.hpp"

#include "latnum/lattice_count.hpp"

#include <json.hpp>
#include <openssl/evp.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace latnum {

namespace {

using json = nlohmann::json;
using Wide = __int128;

IntVector to_integer_vector(const Point& p) {
  IntVector v;
  v.reserve(p.size());
  for (const auto& x : p) {
    if (!x.is_integer()) throw std::invalid_argument("canonical form needs a lattice polytope");
    v.push_back(x.num());
  }
  return v;
}

Wide small_det(const std::vector<const std::vector<long>*>& rows, std::size_t n, std::size_t col_mask_skip,
               std::size_t row) {
  if (row == n) return 1;
  Wide sum = 0;
  int sign = 1;
  for (std::size_t c = 0; c < n; ++c) {
    if (col_mask_skip >> c & 1u) continue;
    const long a = (*rows[row])[c];
    if (a != 0) sum += sign * static_cast<Wide>(a) * small_det(rows, n, col_mask_skip | (1u << c), row + 1);
    sign = -sign;
  }
  return sum;
}

IntMatrix adjugate(const IntMatrix& m) {
  const std::size_t n = m.rows();
  IntMatrix adj(n, n);
  if (n == 1) {
    adj(0, 0) = 1;
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      IntMatrix minor(n - 1, n - 1);
      for (std::size_t r = 0, rr = 0; r < n; ++r) {
        if (r == j) continue;
        for (std::size_t c = 0, cc = 0; c < n; ++c) {
          if (c == i) continue;
          minor(rr, cc++) = m(r, c);
        }
        ++rr;
      }
      adj(i, j) = det(minor);
      if ((i + j) % 2 == 1) adj(i, j) = -adj(i, j);
    }
  return adj;
}

using Key = std::pair<std::vector<IntVector>, std::vector<IntVector>>;

}  // namespace

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

CanonicalForm canonical_form(const VPolytope& p) {
  const std::size_t n = p.ambient_dim();
  if (!p.full_dimensional()) throw std::invalid_argument("canonical form needs a full-dimensional polytope");
  if (!is_centrally_symmetric(p)) throw std::invalid_argument("canonical form needs a centrally symmetric polytope");
  if (n > 6) throw std::invalid_argument("canonical form supports dimension at most 6");
  std::vector<IntVector> verts;
  for (const auto& v : p.vertices()) verts.push_back(to_integer_vector(v));
  const std::size_t m = verts.size();

  // Primitive integer facet normals; lattice distances colour the vertices.
  std::vector<std::pair<IntVector, Integer>> fs;
  for (const auto& h : facets(p).inequalities) {
    Integer l = 1;
    for (const auto& x : h.normal) l = lcm(l, x.den());
    IntVector a;
    for (const auto& x : h.normal) a.push_back(x.num() * (l / x.den()));
    Integer g = 0;
    for (const auto& x : a) g = gcd(g, x);
    for (auto& x : a) x /= g;
    const Rational b = h.offset * Rational(l) / Rational(g);
    fs.emplace_back(std::move(a), b.num());
  }
  std::map<IntVector, std::vector<std::size_t>> by_colour;
  for (std::size_t i = 0; i < m; ++i) {
    IntVector colour;
    for (const auto& [a, b] : fs) {
      Integer s = b;
      for (std::size_t j = 0; j < n; ++j) s -= a[j] * verts[i][j];
      colour.push_back(s);
    }
    std::sort(colour.begin(), colour.end());
    by_colour[colour].push_back(i);
  }
  const std::vector<std::size_t>* first = nullptr;
  for (const auto& [colour, members] : by_colour)
    if (!first || members.size() < first->size()) first = &members;

  bool fits = true;
  std::vector<std::vector<long>> small(m);
  for (std::size_t i = 0; i < m; ++i)
    for (const auto& x : verts[i]) {
      if (abs(x) >= (1 << 20)) fits = false;
      small[i].push_back(fits ? x.get_si() : 0);
    }

  // All ordered vertex bases starting in the chosen colour class with minimal |det|.
  std::vector<std::vector<std::size_t>> best;
  Integer best_det = -1;
  std::vector<std::size_t> tuple(n);
  std::vector<const std::vector<long>*> rows(n);
  auto visit = [&](auto&& self, std::size_t depth) -> void {
    if (depth == n) {
      Integer d;
      if (fits) {
        for (std::size_t r = 0; r < n; ++r) rows[r] = &small[tuple[r]];
        Wide w = small_det(rows, n, 0, 0);
        if (w < 0) w = -w;
        // |w| < 2^(20 n) n! stays below 2^127 for n <= 6
        const auto hi = static_cast<unsigned long>(w >> 64);
        const auto lo = static_cast<unsigned long>(w);
        d = Integer(hi);
        d <<= 64;
        d += Integer(lo);
      } else {
        std::vector<IntVector> b;
        for (auto i : tuple) b.push_back(verts[i]);
        d = abs(det(IntMatrix::from_rows(b)));
      }
      if (d == 0) return;
      if (best_det < 0 || d < best_det) {
        best_det = d;
        best.clear();
      }
      if (d == best_det) best.push_back(tuple);
      return;
    }
    const std::size_t limit = depth == 0 ? first->size() : m;
    for (std::size_t t = 0; t < limit; ++t) {
      const std::size_t i = depth == 0 ? (*first)[t] : t;
      if (std::find(tuple.begin(), tuple.begin() + static_cast<long>(depth), i) !=
          tuple.begin() + static_cast<long>(depth))
        continue;
      tuple[depth] = i;
      self(self, depth + 1);
    }
  };
  visit(visit, 0);

  std::optional<Key> best_key;
  for (const auto& t : best) {
    std::vector<IntVector> b;
    for (auto i : t) b.push_back(verts[i]);
    const IntMatrix bm = IntMatrix::from_rows(b);
    IntMatrix a = adjugate(bm);
    if (det(bm) < 0)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = -a(i, j);
    Key key;
    key.first = hnf(a).h.to_rows();
    for (const auto& v : verts) {
      IntVector y(n, Integer(0));
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) y[j] += v[i] * a(i, j);
      key.second.push_back(std::move(y));
    }
    std::sort(key.second.begin(), key.second.end());
    if (!best_key || key < *best_key) best_key = std::move(key);
  }

  std::vector<IntVector> out;
  IntVector head(n, Integer(0));
  head[0] = best_det;
  out.push_back(std::move(head));
  for (auto& r : best_key->first) out.push_back(std::move(r));
  for (auto& r : best_key->second) out.push_back(std::move(r));
  CanonicalForm f;
  f.dim = n;
  f.matrix = IntMatrix::from_rows(out);
  f.hash = sha256_hex(std::to_string(n) + ":" + f.matrix.str());
  return f;
}

std::string class_name(const CanonicalForm& form) {
  static const std::vector<std::pair<std::string, CanonicalForm>> named = [] {
    std::vector<std::pair<std::string, CanonicalForm>> v;
    v.emplace_back("square", canonical_form(cube(2)));
    v.emplace_back("diamond", canonical_form(crosspolytope(2)));
    v.emplace_back("hexagon", canonical_form(hexagon()));
    v.emplace_back("cube3", canonical_form(cube(3)));
    v.emplace_back("cross3", canonical_form(crosspolytope(3)));
    return v;
  }();
  for (const auto& [name, f] : named)
    if (f == form) return name;
  return "";
}

// ---------------------------------------------------------------------------
// search

namespace {

std::vector<IntVector> box_representatives(unsigned dim, unsigned bound) {
  std::vector<IntVector> reps;
  const long b = bound;
  IntVector v(dim, Integer(-b));
  while (true) {
    std::size_t k = 0;
    while (k < dim && v[k] == 0) ++k;
    if (k < dim && v[k] > 0) reps.push_back(v);
    std::size_t i = dim;
    while (i > 0 && v[i - 1] == b) v[--i] = -b;
    if (i == 0) break;
    ++v[i - 1];
  }
  auto norm = [](const IntVector& x) {
    Integer r = 0;
    for (const auto& c : x) r = std::max<Integer>(r, abs(c));
    return r;
  };
  std::stable_sort(reps.begin(), reps.end(), [&](const IntVector& a, const IntVector& c) {
    const Integer na = norm(a), nc = norm(c);
    if (na != nc) return na < nc;
    return a < c;
  });
  return reps;
}

// Hull of the pairs; nullopt unless every point is a vertex.
std::optional<VPolytope> convex_pairs(const std::vector<IntVector>& reps, const std::vector<std::size_t>& set) {
  std::vector<IntVector> pts;
  for (auto i : set) {
    pts.push_back(reps[i]);
    IntVector neg = reps[i];
    for (auto& x : neg) x = -x;
    pts.push_back(std::move(neg));
  }
  VPolytope h = hull(pts);
  if (h.size() != pts.size()) return std::nullopt;
  return h;
}

// Moves the cursor to the next set in preorder; returns its hull.
std::optional<VPolytope> advance(const std::vector<IntVector>& reps, std::vector<std::size_t>& cursor) {
  const std::size_t r = reps.size();
  auto try_from = [&](std::size_t start) -> std::optional<VPolytope> {
    for (std::size_t c = start; c < r; ++c) {
      cursor.push_back(c);
      if (auto h = convex_pairs(reps, cursor)) return h;
      cursor.pop_back();
    }
    return std::nullopt;
  };
  if (auto h = try_from(cursor.empty() ? 0 : cursor.back() + 1)) return h;
  while (!cursor.empty()) {
    const std::size_t last = cursor.back();
    cursor.pop_back();
    if (auto h = try_from(last + 1)) return h;
  }
  return std::nullopt;
}

void check_guard(const SearchOptions& o) {
  if (o.dim != 2 && o.dim != 3) throw std::invalid_argument("search supports dimensions 2 and 3");
  if (o.bound < 1) throw std::invalid_argument("coordinate bound must be at least 1");
  const unsigned cap = o.dim == 2 ? 4 : 3;
  if (o.bound > cap)
    throw std::invalid_argument("coordinate bound " + std::to_string(o.bound) + " exceeds the cost guard " +
                                std::to_string(cap) + " for dimension " + std::to_string(o.dim));
}

json state_body(const SearchState& s) {
  json classes = json::array();
  for (const auto& c : s.classes) {
    json verts = json::array();
    for (const auto& v : c.vertices) {
      json row = json::array();
      for (const auto& x : v) row.push_back(x.get_si());
      verts.push_back(std::move(row));
    }
    classes.push_back({{"hash", c.form.hash},
                       {"vertices", std::move(verts)},
                       {"total", c.total.get_str()},
                       {"interior", c.interior.get_str()},
                       {"value", c.value.str()}});
  }
  return {{"schema_version", SearchState::schema_version},
          {"dim", s.options.dim},
          {"bound", s.options.bound},
          {"interior_filter", s.options.interior_filter ? json(*s.options.interior_filter) : json(nullptr)},
          {"cursor", s.cursor},
          {"started", s.started},
          {"finished", s.finished},
          {"counters",
           {{"nodes", s.counters.nodes},
            {"full_dimensional", s.counters.full_dimensional},
            {"filtered_out", s.counters.filtered_out},
            {"skipped_no_interior_origin", s.counters.skipped_no_interior_origin}}},
          {"classes", std::move(classes)}};
}

}  // namespace

SearchState start_search(const SearchOptions& options) {
  check_guard(options);
  SearchState s;
  s.options = options;
  return s;
}

bool run_search(SearchState& state, std::optional<std::uint64_t> max_nodes) {
  check_guard(state.options);
  if (state.finished) return true;
  const auto reps = box_representatives(state.options.dim, state.options.bound);
  std::unordered_set<std::string> seen;
  for (const auto& c : state.classes) seen.insert(c.form.hash);

  std::uint64_t done = 0;
  while (!max_nodes || done < *max_nodes) {
    std::optional<VPolytope> k = advance(reps, state.cursor);
    state.started = true;
    if (!k) {
      state.finished = true;
      return true;
    }
    ++done;
    ++state.counters.nodes;
    if (!k->full_dimensional()) continue;
    ++state.counters.full_dimensional;
    if (!origin_in_interior(*k)) {
      ++state.counters.skipped_no_interior_origin;
      continue;
    }
    const LatticeCount c = count(*k);
    if (state.options.interior_filter && c.interior != *state.options.interior_filter) {
      ++state.counters.filtered_out;
      continue;
    }
    CanonicalForm form = canonical_form(*k);
    if (!seen.insert(form.hash).second) continue;
    ClassRecord rec;
    for (const auto& v : k->vertices()) rec.vertices.push_back(to_integer_vector(v));
    rec.total = c.total;
    rec.interior = c.interior;
    rec.value = Rational(c.total) * volume(polar(*k));
    rec.name = class_name(form);
    rec.form = std::move(form);
    state.classes.push_back(std::move(rec));
  }
  return false;
}

std::string checkpoint_text(const SearchState& state) {
  json body = state_body(state);
  const std::string digest = sha256_hex(body.dump());
  body["digest"] = digest;
  return body.dump(2) + "\n";
}

SearchState parse_checkpoint(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("malformed checkpoint: ") + e.what());
  }
  if (!j.is_object() || !j.contains("schema_version") || j["schema_version"] != SearchState::schema_version)
    throw std::runtime_error("unsupported checkpoint schema version");
  if (!j.contains("digest") || !j["digest"].is_string()) throw std::runtime_error("checkpoint has no digest");
  const std::string digest = j["digest"];
  j.erase("digest");
  if (sha256_hex(j.dump()) != digest) throw std::runtime_error("checkpoint digest mismatch");

  try {
    SearchState s;
    s.options.dim = j.at("dim");
    s.options.bound = j.at("bound");
    if (!j.at("interior_filter").is_null()) s.options.interior_filter = j.at("interior_filter").get<long>();
    check_guard(s.options);
    s.cursor = j.at("cursor").get<std::vector<std::size_t>>();
    s.started = j.at("started");
    s.finished = j.at("finished");
    const json& c = j.at("counters");
    s.counters.nodes = c.at("nodes");
    s.counters.full_dimensional = c.at("full_dimensional");
    s.counters.filtered_out = c.at("filtered_out");
    s.counters.skipped_no_interior_origin = c.at("skipped_no_interior_origin");
    for (const auto& rc : j.at("classes")) {
      ClassRecord rec;
      for (const auto& row : rc.at("vertices")) {
        IntVector v;
        for (const auto& x : row) v.emplace_back(x.get<long>());
        rec.vertices.push_back(std::move(v));
      }
      const VPolytope k = hull(rec.vertices);
      rec.form = canonical_form(k);
      if (rec.form.hash != rc.at("hash").get<std::string>())
        throw std::runtime_error("checkpoint class does not match its hash");
      rec.total = Integer(rc.at("total").get<std::string>());
      rec.interior = Integer(rc.at("interior").get<std::string>());
      rec.value = Rational::parse(rc.at("value").get<std::string>());
      rec.name = class_name(rec.form);
      s.classes.push_back(std::move(rec));
    }
    return s;
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("malformed checkpoint: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("malformed checkpoint: ") + e.what());
  }
}

void save_checkpoint(const SearchState& state, const std::string& path) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write checkpoint " + tmp);
    out << checkpoint_text(state);
    if (!out) throw std::runtime_error("cannot write checkpoint " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

SearchState load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read checkpoint " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_checkpoint(ss.str());
}

std::vector<ClassRecord> rank_classes(std::vector<ClassRecord> classes) {
  std::sort(classes.begin(), classes.end(), [](const ClassRecord& a, const ClassRecord& b) {
    if (a.value != b.value) return a.value > b.value;
    return a.form.hash < b.form.hash;
  });
  return classes;
}

std::vector<ClassRecord> enumerate_cs_polytopes(unsigned dim, unsigned bound, std::optional<long> interior_filter) {
  SearchState s = start_search({dim, bound, interior_filter});
  run_search(s);
  return s.classes;
}

std::vector<ClassRecord> maximize_gs_product(unsigned dim, unsigned bound,
                                             const std::optional<std::string>& checkpoint,
                                             std::uint64_t save_every) {
  if (!checkpoint) return rank_classes(enumerate_cs_polytopes(dim, bound));
  SearchState s;
  if (std::filesystem::exists(*checkpoint)) {
    s = load_checkpoint(*checkpoint);
    if (s.options.dim != dim || s.options.bound != bound || s.options.interior_filter)
      throw std::runtime_error("checkpoint belongs to a different search");
  } else {
    s = start_search({dim, bound, std::nullopt});
  }
  while (!run_search(s, std::max<std::uint64_t>(save_every, 1))) save_checkpoint(s, *checkpoint);
  save_checkpoint(s, *checkpoint);
  return rank_classes(s.classes);
}

}  // namespace latnum
