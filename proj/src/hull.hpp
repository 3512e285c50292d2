#pragma once

// Integer-coordinate convex hull kernel shared by the polytope, lattice
// counting and classification code. Not part of the public interface.

#include "latnum/exact.hpp"
#include "latnum/polytope.hpp"

#include <cstddef>
#include <vector>

namespace latnum::detail {

struct IntFacet {
  IntVector normal;  // primitive, outward
  Integer offset;    // normal . x <= offset on the hull
  std::vector<std::size_t> vertices;
};

struct FullHull {
  std::vector<std::size_t> vertices;  // indices into the input, ascending
  std::vector<IntFacet> facets;
};

/// Beneath-beyond hull of a full-dimensional point set in Z^d (d = point size).
FullHull full_hull(const std::vector<IntVector>& pts);

/// Rational points scaled by the lcm of their denominators.
struct ScaledPoints {
  std::vector<IntVector> pts;
  Integer scale = 1;
};
ScaledPoints to_integer(const std::vector<Point>& points);

/// Affine hull of an integer point set: base point, independent directions,
/// and coordinates on which the projection of the hull is injective.
struct AffineFrame {
  std::size_t dim = 0;
  IntVector base;
  std::vector<IntVector> directions;
  std::vector<std::size_t> coords;
};
AffineFrame affine_frame(const std::vector<IntVector>& pts);

std::vector<IntVector> project(const std::vector<IntVector>& pts,
                               const std::vector<std::size_t>& coords);

/// Pulling triangulation of a full-dimensional point set (local indices).
std::vector<std::vector<std::size_t>> triangulate_full(const std::vector<IntVector>& pts);

Integer dot(const IntVector& a, const IntVector& b);

/// Facets of a full-dimensional VPolytope in scaled integer coordinates:
/// normal . (scale * x) <= offset. Facet vertex indices refer to p.vertices().
struct ScaledHull {
  Integer scale;
  std::vector<IntVector> pts;
  FullHull hull;
};
ScaledHull scaled_hull(const VPolytope& p);

}  // namespace latnum::detail
