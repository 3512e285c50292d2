#pragma once

// Multilinear Minkowski-sum volume polynomial vol(K + sum_j t_j [0, z_j]),
// the lattice point bound it yields, and its equality cases.

#include "latnum/exact.hpp"
#include "latnum/polytope.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace latnum {

/// Lattice parallelepiped sum_j [0, z_j] with z_j the rows of `generators`.
class ParallelepipedSpec {
 public:
  /// Throws std::invalid_argument unless the generators are n independent vectors in Z^n.
  explicit ParallelepipedSpec(IntMatrix generators);

  static ParallelepipedSpec unit_cell(std::size_t n);

  const IntMatrix& generators() const { return generators_; }
  std::size_t dim() const { return generators_.rows(); }
  Integer index() const { return lattice_index(generators_); }

  /// Sum of [0, scale_j * z_j] over the generators selected by `subset`.
  VPolytope face(std::uint32_t subset, const std::vector<Integer>& scale = {}) const;

 private:
  IntMatrix generators_;
};

/// Coefficients c_J indexed by bitmask J (bit j set iff generator j is in J).
struct DavenportDecomposition {
  std::size_t n = 0;
  std::vector<Rational> coefficients;
  Rational total;

  const Rational& coefficient(std::uint32_t subset) const { return coefficients.at(subset); }
  /// The polynomial sum_J c_J prod_{j in J} t_j.
  Rational evaluate(const std::vector<Integer>& t) const;
};

/// "{1,3}" style 1-based label for a subset bitmask.
std::string subset_label(std::uint32_t subset, std::size_t n);

/**
 * Evaluates f(1_S) = vol(K + P_S) for all 2^n subsets S and extracts the
 * multilinear coefficients by inclusion-exclusion. `jobs` > 1 evaluates the
 * Minkowski volumes of each subset-size layer concurrently.
 */
DavenportDecomposition volume_polynomial(const VPolytope& k, const ParallelepipedSpec& p,
                                         unsigned jobs = 1);

struct DavenportCheck {
  Integer lhs;                  // lattice points of K
  Rational rhs;                 // vol(K + P)
  bool holds = false;           // lhs <= rhs
  bool equality = false;        // lhs == rhs
  bool characterization = false;
};

/// Fundamental cell and K a lattice translate of sum_j [0, l_j z_j], l_j >= 0.
bool equality_characterization(const VPolytope& k, const ParallelepipedSpec& p);

/// Lattice point count against the decomposition total.
DavenportCheck davenport_bound_check(const VPolytope& k, const ParallelepipedSpec& p,
                                     unsigned jobs = 1);
DavenportCheck davenport_bound_check(const VPolytope& k, const ParallelepipedSpec& p,
                                     const DavenportDecomposition& decomposition);

/// Lattice point count against vol(K + P) computed directly.
DavenportCheck tile_bound_check(const VPolytope& k, const ParallelepipedSpec& p);

/**
 * For unit-cell generators the coefficient c_J equals the volume of the
 * projection of K onto the coordinates outside J. Compares both routes.
 */
bool coefficient_cross_check(const VPolytope& k, std::uint32_t subset);
bool coefficient_cross_check(const VPolytope& k, std::uint32_t subset,
                             const DavenportDecomposition& unit_cell_decomposition);

/// vol(K) <= vol(K|E^perp) vol(K cap E) <= binom(n, i) vol(K) on a coordinate subspace E.
struct SectionProjectionCheck {
  Rational volume;
  Rational product;
  Integer binomial;
  bool lower_holds = false;
  bool upper_holds = false;
};
SectionProjectionCheck section_projection_check(const VPolytope& k,
                                                const std::vector<std::size_t>& coords);

/**
 * For centrally symmetric K containing +-z_j with z_j = a_j e_j, checks
 * vol_i(K cap L_J) >= (2^i / i!) vol_i(P_J) on the coordinate subspace L_J.
 */
struct SymmetricSectionCheck {
  Rational section_volume;
  Rational cross_volume;  // (2^i / i!) vol_i(P_J)
  bool holds = false;
};
SymmetricSectionCheck symmetric_section_check(const VPolytope& k, const std::vector<Integer>& axis_lengths,
                                              std::uint32_t subset);

}  // namespace latnum
