#pragma once

// Exact rational polytopes in vertex and facet form.

#include "latnum/exact.hpp"

#include <cstddef>
#include <vector>

namespace latnum {

using Point = std::vector<Rational>;

Point to_point(const IntVector& v);

/// One inequality normal . x <= offset.
struct Halfspace {
  Point normal;
  Rational offset;

  bool contains(const Point& x) const;
  friend bool operator==(const Halfspace&, const Halfspace&) = default;
};

/// Facet description of a full-dimensional polytope.
struct HPolytope {
  std::size_t ambient_dim = 0;
  std::vector<Halfspace> inequalities;

  bool contains(const Point& x) const;
};

/// Simplices as (k+1)-tuples of vertex indices, k the polytope's dimension.
struct Triangulation {
  std::vector<std::vector<std::size_t>> simplices;
};

/**
 * Polytope given by its irredundant, lexicographically sorted vertex set.
 * Instances are only produced by hull(), so the invariant always holds.
 */
class VPolytope {
 public:
  std::size_t ambient_dim() const { return ambient_dim_; }
  const std::vector<Point>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }

  /// Dimension of the affine hull (0 for a single point).
  std::size_t dim() const { return dim_; }
  bool full_dimensional() const { return dim_ == ambient_dim_; }
  bool is_lattice() const;

  friend bool operator==(const VPolytope&, const VPolytope&) = default;

 private:
  friend VPolytope hull(const std::vector<Point>& points);
  VPolytope(std::size_t ambient, std::size_t dim, std::vector<Point> vertices)
      : ambient_dim_(ambient), dim_(dim), vertices_(std::move(vertices)) {}

  std::size_t ambient_dim_;
  std::size_t dim_;
  std::vector<Point> vertices_;
};

VPolytope hull(const std::vector<Point>& points);
VPolytope hull(const std::vector<IntVector>& points);

/// Irredundant facets with integer-primitive normals of a full-dimensional polytope.
HPolytope facets(const VPolytope& p);

/// Pulling triangulation of p within its affine hull; indices refer to p.vertices().
Triangulation triangulate(const VPolytope& p);

/**
 * Exact volume with respect to Lebesgue measure on the affine hull. A single
 * point has volume 1. For lower-dimensional polytopes the induced measure is
 * used, which throws std::domain_error when that value is irrational.
 */
Rational volume(const VPolytope& p);

VPolytope minkowski_sum(const VPolytope& a, const VPolytope& b);

/// Polar body; requires the origin in the interior.
VPolytope polar(const VPolytope& p);

bool is_centrally_symmetric(const VPolytope& p);

/// True iff the origin lies in the topological interior of p.
bool origin_in_interior(const VPolytope& p);

/**
 * p intersected with {x_j = 0 for j not in coords}, written in the retained
 * coordinates (0-based, sorted). Requires the origin in the interior of p.
 */
VPolytope coordinate_section(const VPolytope& p, const std::vector<std::size_t>& coords);

/// Orthogonal projection onto the coordinates in `coords` (0-based).
VPolytope coordinate_projection(const VPolytope& p, const std::vector<std::size_t>& coords);

/// Image under x -> m x for a square integer matrix m.
VPolytope linear_image(const VPolytope& p, const IntMatrix& m);
VPolytope translate(const VPolytope& p, const Point& t);
VPolytope negate(const VPolytope& p);

/// Parallelepiped sum_j [0, gens_j] (rows of gens).
VPolytope zonotope(const IntMatrix& gens);

/// Named bodies used throughout tests and the CLI.
VPolytope cube(std::size_t n, long half_width = 1);
VPolytope crosspolytope(std::size_t n, long stretch = 1);
VPolytope hexagon();

}  // namespace latnum
