#pragma once

// Lattice point enumeration for rational polytopes.

#include "latnum/exact.hpp"
#include "latnum/polytope.hpp"

#include <map>
#include <vector>

namespace latnum {

struct LatticeCount {
  Integer total;     // points of Z^n in p
  Integer interior;  // points in the topological interior
  Integer boundary;
};

/// Bounding-box sweep with exact facet tests; strict inequalities give the interior.
LatticeCount count(const VPolytope& p);

/// All points of p intersected with Z^n, in lexicographic order.
std::vector<IntVector> lattice_points(const VPolytope& p);

/// Number of points of the lattice spanned by the rows of `basis` inside p.
Integer count_sublattice(const VPolytope& p, const IntMatrix& basis);

/// Whether x lies in the row lattice of a matrix already in Hermite normal form.
bool in_row_lattice(const IntMatrix& hermite, IntVector x);

/**
 * Counts of p intersected with each residue class r + L, for L the full-rank
 * lattice spanned by the rows of `basis`. Representatives are reduced against
 * the Hermite normal form, so every class of Z^n / L has an entry.
 */
std::map<IntVector, Integer> residue_class_counts(const VPolytope& p, const IntMatrix& basis);

/// Dimension of the affine hull of p intersected with Z^n, -1 when empty.
int lattice_span_dim(const VPolytope& p);

struct PickIdentity {
  Rational area;
  Integer interior;
  Integer boundary;
  Rational residual;  // area - (interior + boundary/2 - 1)
};

PickIdentity pick_identity(const VPolytope& p);

}  // namespace latnum
