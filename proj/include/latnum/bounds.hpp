#pragma once

// Volume / lattice point inequalities for convex lattice polytopes, checked
// with exact or certified arithmetic.

#include "latnum/exact.hpp"
#include "latnum/polytope.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace latnum {

/// Raised when a body does not satisfy the hypotheses of an inequality.
class HypothesisError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// lhs <= rhs, decided exactly or by certified enclosure.
struct BoundReport {
  std::string name;
  PiScaled lhs;
  PiScaled rhs;
  bool holds = false;
  bool equality = false;
  std::optional<Rational> slack;  // rhs - lhs, when both sides share a power of pi
};

BoundReport make_report(std::string name, const PiScaled& lhs, const PiScaled& rhs);

/// L_n(2) = sum_k binom(n,k) 2^k / k!, by direct summation.
Rational laguerre_at_2(unsigned n);

/// L_n(2) from (k+1) L_{k+1} = (2k+3) L_k - k L_{k-1}.
Rational laguerre_at_2_recurrence(unsigned n);

/// (Lambda(K) - n)/n! <= vol(K); needs dim(K cap Z^n) = n.
BoundReport blichfeldt_lower_check(const VPolytope& k);

/// vol(K) <= 2^(n-1) (Lambda(int K) + 1) for K = -K.
BoundReport vdcorput_upper_check(const VPolytope& k);

struct SymmetricExactResult {
  BoundReport bound;           // Lambda(K) <= vol(K) n!/2^n L_n(2)
  BoundReport davenport_step;  // Lambda(K) <= vol(K + P)
  BoundReport chain_step;      // vol(K + P) <= vol(K) n!/2^n L_n(2)
  std::vector<IntVector> generators;
  std::size_t subsets_tried = 0;
  Interval normalized_ratio;   // (n! vol(K) / Lambda(K))^(1/n)
};

/**
 * Lattice point bound for symmetric K with dim(K cap Z^n) = n. The
 * parallelepiped uses the lexicographically least independent lattice points
 * of K; with subset_cap > 1 up to that many independent n-subsets are tried
 * and the smallest vol(K + P) is kept.
 */
SymmetricExactResult sym_blichfeldt_exact_check(const VPolytope& k, std::size_t subset_cap = 1);

/// conv{+-l e_1, +-e_2, ..., +-e_n}.
struct CrosspolytopeFamily {
  unsigned n = 1;
  unsigned long l = 1;

  VPolytope realize() const;
};

struct CrosspolytopeStats {
  Integer closed_count;       // 2(n + l) - 1
  Integer enumerated_count;
  Rational closed_volume;     // 2^n l / n!
  Rational computed_volume;
  bool agree = false;
  Rational normalized_power;  // n! vol / Lambda
  Interval normalized_root;   // its n-th root
};

CrosspolytopeStats crosspolytope_stats(const CrosspolytopeFamily& family);

/// Lambda(K) vol(K*) <= n! kappa_n^2 L_n(2) / 2^n.
BoundReport gs_product_exact_check(const VPolytope& k);

/// vol(K) vol(K*) / 2^n <= Lambda(K) vol(K*).
BoundReport gs_product_lower_check(const VPolytope& k);

/// Lambda(K) / (Lambda(K*) vol(K)).
Rational gs_ratio(const VPolytope& k);

struct GsRatioChain {
  Rational ratio;
  unsigned k = 0;     // dim lin(K* cap Z^n)
  BoundReport bound;  // 4^k <= ratio 2^n k! kappa_k^2 L_k(2)
};

GsRatioChain gs_ratio_lower_check(const VPolytope& k);

/// vol(K) vol(K*) >= 8 in the plane.
BoundReport mahler_planar_check(const VPolytope& k);

/// Enclosure of g(k) = 4^k / (k! kappa_k^2 L_k(2)).
Interval g_enclosure(unsigned k, unsigned bits = 64);

struct GMonotonicityStep {
  unsigned k = 0;
  BoundReport nonincreasing;  // g(k+1) <= g(k)
  BoundReport ball_estimate;  // kappa_k^2 / kappa_{k+1}^2 <= (k+2)/(2 pi)
  BoundReport sufficient;     // (k+2)/(2 pi) L_k / L_{k+1} <= (k+1)/4
};

/// Steps k = 0 .. k_max - 1.
std::vector<GMonotonicityStep> g_monotonicity_check(unsigned k_max);

struct RecurrenceAuditRow {
  unsigned k = 0;
  Rational direct;       // L_{k+1}(2) by summation
  Rational stated;       // 2 L_k(2) - 2^k (k - 1) / (k + 1)!
  Rational discrepancy;  // direct - stated
};

/// Rows k = 0 .. k_max.
std::vector<RecurrenceAuditRow> laguerre_recurrence_audit(unsigned k_max);

struct AsymptoticRow {
  unsigned n = 0;
  Rational laguerre_ratio;       // L_n(2) / 2^n
  double laguerre_ratio_approx = 0;
  double szego_approx = 0;       // Szego approximant of L_n(2) / 2^n
  double exponential_bound = 0;  // e^(2 sqrt(2n+1)) / 2^n
  Rational threshold;            // (2 - eps)^(-n)
  bool below_threshold = false;  // exact
  PiScaled product_constant;     // n! kappa_n^2 L_n(2) / 2^n
  Interval product_root;         // its n-th root
  bool product_root_below = false;  // certified against pi + eps
};

struct AsymptoticReport {
  Rational epsilon;
  std::vector<AsymptoticRow> rows;
  std::optional<unsigned> first_threshold_crossing;
  std::optional<unsigned> first_product_crossing;
};

AsymptoticReport asymptotic_report(unsigned n_max, const Rational& epsilon);

}  // namespace latnum
