#include "latnum/polytope.hpp"

#include "hull.hpp"

#include <algorithm>
#include <stdexcept>

namespace latnum {

using detail::dot;

Point to_point(const IntVector& v) {
  Point p;
  p.reserve(v.size());
  for (const auto& x : v) p.emplace_back(x);
  return p;
}

namespace {

Rational dot(const Point& a, const Point& b) {
  Rational s;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Integer abs_det_from(const std::vector<IntVector>& pts, const std::vector<std::size_t>& simplex) {
  const std::size_t d = simplex.size() - 1;
  IntMatrix m(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) = pts[simplex[i + 1]][j] - pts[simplex[0]][j];
  return ::abs(det(m));
}

// sqrt of a rational if it is the square of a rational.
bool exact_sqrt(const Rational& q, Rational& out) {
  if (q.sign() < 0) return false;
  Integer n = q.num();
  Integer d = q.den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return false;
  Integer rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  out = Rational(rn, rd);
  return true;
}

void check_coords(const std::vector<std::size_t>& coords, std::size_t n) {
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (coords[i] >= n) throw std::invalid_argument("coordinate index out of range");
    if (i > 0 && coords[i] <= coords[i - 1])
      throw std::invalid_argument("coordinate indices must be strictly increasing");
  }
}

}  // namespace

bool Halfspace::contains(const Point& x) const { return dot(normal, x) <= offset; }

bool HPolytope::contains(const Point& x) const {
  return std::all_of(inequalities.begin(), inequalities.end(),
                     [&](const Halfspace& h) { return h.contains(x); });
}

bool VPolytope::is_lattice() const {
  return std::all_of(vertices_.begin(), vertices_.end(), [](const Point& p) {
    return std::all_of(p.begin(), p.end(), [](const Rational& x) { return x.is_integer(); });
  });
}

VPolytope hull(const std::vector<Point>& points) {
  if (points.empty()) throw std::invalid_argument("hull of an empty point set");
  const std::size_t n = points[0].size();
  for (const auto& p : points)
    if (p.size() != n) throw std::invalid_argument("points of different dimensions");

  std::vector<Point> pts = points;
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() == 1) return VPolytope(n, 0, std::move(pts));

  detail::ScaledPoints scaled = detail::to_integer(pts);
  detail::AffineFrame frame = detail::affine_frame(scaled.pts);
  std::vector<Point> verts;
  if (frame.dim == 1) {
    const std::size_t c = frame.coords[0];
    // points are sorted, but not necessarily along c
    auto [lo, hi] = std::minmax_element(pts.begin(), pts.end(),
                                        [c](const Point& a, const Point& b) { return a[c] < b[c]; });
    verts = {*lo, *hi};
  } else {
    std::vector<IntVector> proj =
        frame.dim == n ? scaled.pts : detail::project(scaled.pts, frame.coords);
    for (auto i : detail::full_hull(proj).vertices) verts.push_back(pts[i]);
  }
  std::sort(verts.begin(), verts.end());
  return VPolytope(n, frame.dim, std::move(verts));
}

VPolytope hull(const std::vector<IntVector>& points) {
  std::vector<Point> pts;
  pts.reserve(points.size());
  for (const auto& v : points) pts.push_back(to_point(v));
  return hull(pts);
}

HPolytope facets(const VPolytope& p) {
  if (!p.full_dimensional() || p.ambient_dim() == 0)
    throw std::invalid_argument("facets() needs a full-dimensional polytope");
  detail::ScaledHull sh = detail::scaled_hull(p);
  HPolytope h;
  h.ambient_dim = p.ambient_dim();
  for (const auto& f : sh.hull.facets)
    h.inequalities.push_back({to_point(f.normal), Rational(f.offset, sh.scale)});
  return h;
}

Triangulation triangulate(const VPolytope& p) {
  if (p.dim() == 0) return {{{0}}};
  detail::ScaledPoints scaled = detail::to_integer(p.vertices());
  if (p.full_dimensional()) return {detail::triangulate_full(scaled.pts)};
  detail::AffineFrame frame = detail::affine_frame(scaled.pts);
  return {detail::triangulate_full(detail::project(scaled.pts, frame.coords))};
}

Rational volume(const VPolytope& p) {
  if (p.dim() == 0) return Rational(1);
  detail::ScaledPoints scaled = detail::to_integer(p.vertices());
  const std::size_t d = p.dim();
  std::vector<IntVector> pts = scaled.pts;
  detail::AffineFrame frame;
  if (!p.full_dimensional()) {
    frame = detail::affine_frame(scaled.pts);
    pts = detail::project(scaled.pts, frame.coords);
  }
  Integer total = 0;
  for (const auto& s : detail::triangulate_full(pts)) total += abs_det_from(pts, s);
  Integer scale_pow;
  mpz_pow_ui(scale_pow.get_mpz_t(), scaled.scale.get_mpz_t(), d);
  Rational projected(total, factorial(static_cast<unsigned>(d)) * scale_pow);
  if (p.full_dimensional()) return projected;

  // Induced measure: sqrt(det G) / |det D_C| with G the Gram matrix of the directions.
  IntMatrix dirs = IntMatrix::from_rows(frame.directions);
  IntMatrix gram = dirs * dirs.transpose();
  IntMatrix minor(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) minor(i, j) = frame.directions[i][frame.coords[j]];
  Integer m = det(minor);
  Rational factor;
  if (!exact_sqrt(Rational(det(gram), m * m), factor))
    throw std::domain_error("intrinsic volume of this lower-dimensional polytope is irrational");
  return projected * factor;
}

VPolytope minkowski_sum(const VPolytope& a, const VPolytope& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw std::invalid_argument("Minkowski sum of polytopes in different dimensions");
  std::vector<Point> sums;
  sums.reserve(a.size() * b.size());
  for (const auto& u : a.vertices())
    for (const auto& v : b.vertices()) {
      Point s(u.size());
      for (std::size_t i = 0; i < u.size(); ++i) s[i] = u[i] + v[i];
      sums.push_back(std::move(s));
    }
  return hull(sums);
}

bool origin_in_interior(const VPolytope& p) {
  if (!p.full_dimensional() || p.ambient_dim() == 0) return false;
  detail::ScaledHull sh = detail::scaled_hull(p);
  return std::all_of(sh.hull.facets.begin(), sh.hull.facets.end(),
                     [](const detail::IntFacet& f) { return f.offset > 0; });
}

VPolytope polar(const VPolytope& p) {
  if (!p.full_dimensional() || p.ambient_dim() == 0)
    throw std::invalid_argument("polar needs a full-dimensional polytope");
  detail::ScaledHull sh = detail::scaled_hull(p);
  std::vector<Point> pts;
  for (const auto& f : sh.hull.facets) {
    if (f.offset <= 0) throw std::invalid_argument("origin is not interior; the polar is unbounded");
    Point v(f.normal.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = Rational(f.normal[i] * sh.scale, f.offset);
    pts.push_back(std::move(v));
  }
  return hull(pts);
}

bool is_centrally_symmetric(const VPolytope& p) { return negate(p) == p; }

VPolytope coordinate_section(const VPolytope& p, const std::vector<std::size_t>& coords) {
  check_coords(coords, p.ambient_dim());
  if (coords.size() == p.ambient_dim()) return p;
  if (!origin_in_interior(p))
    throw std::invalid_argument("coordinate_section needs the origin in the interior");
  if (coords.empty()) return hull(std::vector<Point>{Point{}});
  // The section is the polar of the hull of the restricted facet normals.
  std::vector<Point> dual;
  for (const auto& h : facets(p).inequalities) {
    Point q;
    bool zero = true;
    for (auto c : coords) {
      q.push_back(h.normal[c] / h.offset);
      zero = zero && h.normal[c].is_zero();
    }
    if (!zero) dual.push_back(std::move(q));
  }
  return polar(hull(dual));
}

VPolytope coordinate_projection(const VPolytope& p, const std::vector<std::size_t>& coords) {
  check_coords(coords, p.ambient_dim());
  std::vector<Point> pts;
  for (const auto& v : p.vertices()) {
    Point q;
    for (auto c : coords) q.push_back(v[c]);
    pts.push_back(std::move(q));
  }
  return hull(pts);
}

VPolytope linear_image(const VPolytope& p, const IntMatrix& m) {
  if (m.rows() != p.ambient_dim() || m.cols() != p.ambient_dim())
    throw std::invalid_argument("linear map dimension mismatch");
  std::vector<Point> pts;
  for (const auto& v : p.vertices()) {
    Point w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = 0; j < v.size(); ++j) w[i] += Rational(m(i, j)) * v[j];
    pts.push_back(std::move(w));
  }
  return hull(pts);
}

VPolytope translate(const VPolytope& p, const Point& t) {
  if (t.size() != p.ambient_dim()) throw std::invalid_argument("translation dimension mismatch");
  std::vector<Point> pts = p.vertices();
  for (auto& v : pts)
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += t[i];
  return hull(pts);
}

VPolytope negate(const VPolytope& p) {
  std::vector<Point> pts = p.vertices();
  for (auto& v : pts)
    for (auto& x : v) x = -x;
  return hull(pts);
}

VPolytope zonotope(const IntMatrix& gens) {
  const std::size_t n = gens.cols();
  std::vector<Point> pts{Point(n)};
  for (std::size_t j = 0; j < gens.rows(); ++j) {
    std::vector<Point> next = pts;
    for (auto v : pts) {
      for (std::size_t i = 0; i < n; ++i) v[i] += Rational(gens(j, i));
      next.push_back(std::move(v));
    }
    pts = hull(next).vertices();
  }
  return hull(pts);
}

VPolytope cube(std::size_t n, long half_width) {
  std::vector<Point> pts;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Point v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = (mask >> i & 1) ? half_width : -half_width;
    pts.push_back(std::move(v));
  }
  return hull(pts);
}

VPolytope crosspolytope(std::size_t n, long stretch) {
  std::vector<Point> pts;
  for (std::size_t i = 0; i < n; ++i)
    for (long s : {-1L, 1L}) {
      Point v(n);
      v[i] = i == 0 ? s * stretch : s;
      pts.push_back(std::move(v));
    }
  return hull(pts);
}

VPolytope hexagon() {
  return hull(std::vector<IntVector>{{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {-1, -1}});
}

}  // namespace latnum
