#include "hull.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace latnum::detail {

Integer dot(const IntVector& a, const IntVector& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

namespace {

IntVector sub(const IntVector& a, const IntVector& b) {
  IntVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

// Normal of the hyperplane through d affinely independent points of Z^d,
// by cofactor expansion of the difference matrix.
IntVector hyperplane_normal(const std::vector<IntVector>& pts, const std::vector<std::size_t>& sel) {
  const std::size_t d = pts[sel[0]].size();
  IntVector normal(d);
  if (d == 1) {
    normal[0] = 1;
    return normal;
  }
  std::vector<IntVector> diffs;
  for (std::size_t i = 1; i < sel.size(); ++i) diffs.push_back(sub(pts[sel[i]], pts[sel[0]]));
  for (std::size_t j = 0; j < d; ++j) {
    IntMatrix minor(d - 1, d - 1);
    for (std::size_t r = 0; r + 1 < d; ++r)
      for (std::size_t c = 0, cc = 0; c < d; ++c)
        if (c != j) minor(r, cc++) = diffs[r][c];
    normal[j] = (j % 2 == 0) ? det(minor) : Integer(-det(minor));
  }
  make_primitive(normal);
  return normal;
}

struct WorkFacet {
  IntVector normal;
  Integer offset;
  std::vector<std::size_t> incident;
};

}  // namespace

FullHull full_hull(const std::vector<IntVector>& pts) {
  if (pts.empty()) throw std::invalid_argument("hull of an empty point set");
  const std::size_t d = pts[0].size();
  const std::size_t n = pts.size();
  FullHull out;

  if (d == 1) {
    std::size_t lo = 0, hi = 0;
    for (std::size_t i = 1; i < n; ++i) {
      if (pts[i][0] < pts[lo][0]) lo = i;
      if (pts[i][0] > pts[hi][0]) hi = i;
    }
    if (lo == hi || pts[lo][0] == pts[hi][0])
      throw std::invalid_argument("point set is not full-dimensional");
    out.vertices = {std::min(lo, hi), std::max(lo, hi)};
    out.facets.push_back({IntVector{Integer(1)}, pts[hi][0], {hi}});
    out.facets.push_back({IntVector{Integer(-1)}, Integer(-pts[lo][0]), {lo}});
    return out;
  }

  std::vector<std::size_t> simplex{0};
  EchelonBasis span(d);
  for (std::size_t i = 1; i < n && simplex.size() < d + 1; ++i)
    if (span.add(sub(pts[i], pts[0]))) simplex.push_back(i);
  if (simplex.size() < d + 1) throw std::invalid_argument("point set is not full-dimensional");

  // (d+1) times the centroid of the initial simplex; strictly inside every later hull.
  IntVector centre(d, Integer(0));
  for (auto s : simplex)
    for (std::size_t j = 0; j < d; ++j) centre[j] += pts[s][j];
  const Integer weight = static_cast<unsigned long>(d + 1);

  auto make_facet = [&](const std::vector<std::size_t>& defining, std::vector<std::size_t> incident) {
    WorkFacet f;
    f.normal = hyperplane_normal(pts, defining);
    f.offset = dot(f.normal, pts[defining[0]]);
    if (dot(f.normal, centre) > weight * f.offset) {
      for (auto& x : f.normal) x = -x;
      f.offset = -f.offset;
    }
    std::sort(incident.begin(), incident.end());
    f.incident = std::move(incident);
    return f;
  };

  // Greedy choice of `need` affinely independent points from a sorted index set.
  auto independent_subset = [&](const std::vector<std::size_t>& idx, std::size_t need) {
    std::vector<std::size_t> sel{idx[0]};
    EchelonBasis basis(d);
    for (std::size_t i = 1; i < idx.size() && sel.size() < need; ++i)
      if (basis.add(sub(pts[idx[i]], pts[idx[0]]))) sel.push_back(idx[i]);
    return sel;
  };

  std::vector<WorkFacet> facets;
  for (std::size_t skip = 0; skip <= d; ++skip) {
    std::vector<std::size_t> defining;
    for (std::size_t i = 0; i <= d; ++i)
      if (i != skip) defining.push_back(simplex[i]);
    facets.push_back(make_facet(defining, defining));
  }

  std::vector<char> in_simplex(n, 0);
  for (auto s : simplex) in_simplex[s] = 1;

  std::vector<int> side;
  std::vector<std::size_t> common;
  for (std::size_t p = 0; p < n; ++p) {
    if (in_simplex[p]) continue;
    side.assign(facets.size(), 0);
    bool any_visible = false;
    for (std::size_t f = 0; f < facets.size(); ++f) {
      const int c = cmp(dot(facets[f].normal, pts[p]), facets[f].offset);
      side[f] = c;
      any_visible = any_visible || c > 0;
    }
    if (!any_visible) continue;

    std::map<std::pair<IntVector, Integer>, std::size_t> created;
    std::vector<WorkFacet> fresh;
    for (std::size_t f = 0; f < facets.size(); ++f) {
      if (side[f] <= 0) continue;
      for (std::size_t g = 0; g < facets.size(); ++g) {
        if (side[g] > 0) continue;
        common.clear();
        std::set_intersection(facets[f].incident.begin(), facets[f].incident.end(),
                              facets[g].incident.begin(), facets[g].incident.end(),
                              std::back_inserter(common));
        if (common.size() + 1 < d) continue;
        std::vector<std::size_t> sel = independent_subset(common, d - 1);
        if (sel.size() + 1 < d) continue;  // not a ridge
        if (side[g] == 0) continue;         // p extends the coplanar facet g
        sel.push_back(p);
        std::vector<std::size_t> incident = common;
        incident.push_back(p);
        WorkFacet nf = make_facet(sel, std::move(incident));
        auto key = std::make_pair(nf.normal, nf.offset);
        if (auto it = created.find(key); it != created.end()) {
          auto& inc = fresh[it->second].incident;
          std::vector<std::size_t> merged;
          std::set_union(inc.begin(), inc.end(), nf.incident.begin(), nf.incident.end(),
                         std::back_inserter(merged));
          inc = std::move(merged);
        } else {
          created.emplace(std::move(key), fresh.size());
          fresh.push_back(std::move(nf));
        }
      }
    }

    std::vector<WorkFacet> next;
    next.reserve(facets.size() + fresh.size());
    for (std::size_t f = 0; f < facets.size(); ++f) {
      if (side[f] > 0) continue;
      if (side[f] == 0) {
        auto& inc = facets[f].incident;
        inc.insert(std::upper_bound(inc.begin(), inc.end(), p), p);
      }
      next.push_back(std::move(facets[f]));
    }
    for (auto& f : fresh) next.push_back(std::move(f));
    facets = std::move(next);
  }

  // A boundary point is a vertex iff the normals of its facets span R^d.
  std::map<std::size_t, std::vector<std::size_t>> point_facets;
  for (std::size_t f = 0; f < facets.size(); ++f)
    for (auto i : facets[f].incident) point_facets[i].push_back(f);
  std::vector<char> is_vertex(n, 0);
  for (const auto& [i, fs] : point_facets) {
    EchelonBasis normals(d);
    for (auto f : fs) {
      normals.add(facets[f].normal);
      if (normals.rank() == d) break;
    }
    if (normals.rank() == d) {
      is_vertex[i] = 1;
      out.vertices.push_back(i);
    }
  }
  for (auto& f : facets) {
    IntFacet g{std::move(f.normal), std::move(f.offset), {}};
    for (auto i : f.incident)
      if (is_vertex[i]) g.vertices.push_back(i);
    out.facets.push_back(std::move(g));
  }
  std::sort(out.facets.begin(), out.facets.end(), [](const IntFacet& a, const IntFacet& b) {
    return std::tie(a.normal, a.offset) < std::tie(b.normal, b.offset);
  });
  return out;
}

ScaledPoints to_integer(const std::vector<Point>& points) {
  ScaledPoints out;
  Integer l = 1;
  for (const auto& p : points)
    for (const auto& x : p) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.den().get_mpz_t());
  out.scale = l;
  out.pts.reserve(points.size());
  for (const auto& p : points) {
    IntVector v(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) v[i] = (p[i] * Rational(l)).num();
    out.pts.push_back(std::move(v));
  }
  return out;
}

AffineFrame affine_frame(const std::vector<IntVector>& pts) {
  AffineFrame frame;
  const std::size_t n = pts.at(0).size();
  frame.base = pts[0];
  EchelonBasis basis(n);
  for (std::size_t i = 1; i < pts.size() && basis.rank() < n; ++i) {
    IntVector diff = sub(pts[i], pts[0]);
    if (basis.add(diff)) frame.directions.push_back(std::move(diff));
  }
  frame.dim = basis.rank();
  frame.coords = basis.pivots();
  std::sort(frame.coords.begin(), frame.coords.end());
  return frame;
}

std::vector<IntVector> project(const std::vector<IntVector>& pts,
                               const std::vector<std::size_t>& coords) {
  std::vector<IntVector> out;
  out.reserve(pts.size());
  for (const auto& p : pts) {
    IntVector q;
    q.reserve(coords.size());
    for (auto c : coords) q.push_back(p[c]);
    out.push_back(std::move(q));
  }
  return out;
}

std::vector<std::vector<std::size_t>> triangulate_full(const std::vector<IntVector>& pts) {
  const std::size_t d = pts.at(0).size();
  if (d == 1) {
    FullHull h = full_hull(pts);
    return {h.vertices};
  }
  FullHull h = full_hull(pts);
  const std::size_t apex = h.vertices.front();
  std::vector<std::vector<std::size_t>> out;
  for (const auto& f : h.facets) {
    if (std::binary_search(f.vertices.begin(), f.vertices.end(), apex)) continue;
    std::size_t drop = 0;
    while (f.normal[drop] == 0) ++drop;
    std::vector<std::size_t> keep;
    for (std::size_t c = 0; c < d; ++c)
      if (c != drop) keep.push_back(c);
    std::vector<IntVector> face;
    for (auto v : f.vertices) face.push_back(pts[v]);
    for (auto& s : triangulate_full(project(face, keep))) {
      std::vector<std::size_t> simplex{apex};
      for (auto local : s) simplex.push_back(f.vertices[local]);
      out.push_back(std::move(simplex));
    }
  }
  return out;
}

ScaledHull scaled_hull(const VPolytope& p) {
  if (!p.full_dimensional() || p.ambient_dim() == 0)
    throw std::invalid_argument("polytope is not full-dimensional");
  ScaledPoints s = to_integer(p.vertices());
  FullHull h = full_hull(s.pts);
  return {s.scale, std::move(s.pts), std::move(h)};
}

}  // namespace latnum::detail
