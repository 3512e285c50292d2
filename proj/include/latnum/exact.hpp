#pragma once

// Exact arithmetic substrate: arbitrary-precision integers and rationals,
// integer matrices (determinant, Hermite normal form), and scalars of the
// form q * pi^m with certified comparison.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace latnum {

using Integer = mpz_class;
using IntVector = std::vector<Integer>;

std::string to_string(const Integer& z);

/**
 * Exact rational number, always stored in lowest terms with a positive
 * denominator. Zero is 0/1.
 */
class Rational {
 public:
  Rational() = default;
  Rational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(const Integer& v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(const Integer& num, const Integer& den);

  /// Parses "p", "p/q" or a plain decimal such as "0.25".
  static Rational parse(std::string_view text);

  Integer num() const { return q_.get_num(); }
  Integer den() const { return q_.get_den(); }
  int sign() const { return sgn(q_); }
  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }

  Integer floor() const;
  Integer ceil() const;
  Rational abs() const;
  Rational inverse() const;
  Rational pow(unsigned exponent) const;
  double to_double() const { return q_.get_d(); }

  /// "p/q", or "p" for integers.
  std::string str() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  const mpq_class& raw() const { return q_; }

 private:
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }
  mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

Integer factorial(unsigned n);
Integer binomial(unsigned n, unsigned k);

/// Closed rational interval [lo, hi].
struct Interval {
  Rational lo;
  Rational hi;

  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
};

Interval operator*(const Interval& a, const Interval& b);
Interval operator+(const Interval& a, const Interval& b);
Interval scale(const Interval& a, const Rational& c);
Interval pow(const Interval& a, unsigned exponent);

/// Enclosure of pi with endpoints of denominator 2^bits and width below 2^(5-bits).
Interval pi_enclosure(unsigned bits);

/// Enclosure of x^(1/n) for x >= 0, endpoints with denominator 2^bits.
Interval nth_root_enclosure(const Interval& x, unsigned n, unsigned bits);

/**
 * Decides a < b for two quantities known only through enclosures that
 * tighten with precision. `enclose(bits)` returns enclosures of (a, b).
 * Throws std::runtime_error if the enclosures never separate (the quantities
 * are presumably equal) before `max_bits`.
 */
bool certified_less(const std::function<std::pair<Interval, Interval>(unsigned)>& enclose,
                    unsigned max_bits = 1u << 16);

/// Exact value coeff * pi^pi_power.
class PiScaled {
 public:
  PiScaled() = default;
  PiScaled(Rational coeff, unsigned pi_power = 0)  // NOLINT(google-explicit-constructor)
      : coeff_(std::move(coeff)), pi_power_(pi_power) {}

  const Rational& coeff() const { return coeff_; }
  unsigned pi_power() const { return pi_power_; }
  bool is_rational() const { return pi_power_ == 0 || coeff_.is_zero(); }

  Interval enclose(unsigned bits) const;
  double approx() const;
  std::string str() const;

  friend PiScaled operator*(const PiScaled& a, const PiScaled& b) {
    return {a.coeff_ * b.coeff_, a.pi_power_ + b.pi_power_};
  }
  PiScaled pow(unsigned exponent) const { return {coeff_.pow(exponent), pi_power_ * exponent}; }

  /// Certified three-way comparison; equal pi powers compare coefficients exactly.
  friend std::strong_ordering operator<=>(const PiScaled& a, const PiScaled& b);
  friend bool operator==(const PiScaled& a, const PiScaled& b) {
    return (a <=> b) == std::strong_ordering::equal;
  }

 private:
  Rational coeff_;
  unsigned pi_power_ = 0;
};

/// Volume of the Euclidean unit ball in dimension n.
PiScaled ball_volume(unsigned n);

/// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix(std::size_t rows, std::size_t cols);
  static IntMatrix from_rows(const std::vector<IntVector>& rows);
  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  IntVector row(std::size_t i) const;
  std::vector<IntVector> to_rows() const;
  IntMatrix transpose() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;
  friend auto operator<=>(const IntMatrix& a, const IntMatrix& b) {
    if (auto c = a.rows_ <=> b.rows_; c != 0) return c;
    if (auto c = a.cols_ <=> b.cols_; c != 0) return c;
    for (std::size_t i = 0; i < a.data_.size(); ++i) {
      const int s = cmp(a.data_[i], b.data_[i]);
      if (s != 0) return s < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
  }

  std::string str() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Integer> data_;
};

/// Fraction-free (Bareiss) determinant. Throws std::invalid_argument if not square.
Integer det(const IntMatrix& m);

struct HermiteResult {
  IntMatrix h;
  IntMatrix u;
};

/**
 * Row-style Hermite normal form: h = u * m with u unimodular, h in row
 * echelon form with positive pivots and entries above each pivot reduced
 * into [0, pivot). Zero rows are moved to the bottom.
 */
HermiteResult hnf(const IntMatrix& m);

/// |det(basis)| for a square full-rank basis (rows are lattice vectors).
Integer lattice_index(const IntMatrix& basis);

/**
 * Incrementally built echelon basis of a subspace of Q^n, used for rank
 * tests and independence selection. Rows are kept primitive.
 */
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t n) : n_(n) {}

  /// Adds v if independent of the current rows; returns whether it was added.
  bool add(const IntVector& v);
  bool contains(const IntVector& v) const;
  std::size_t rank() const { return rows_.size(); }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

 private:
  IntVector reduce(IntVector v) const;

  std::size_t n_;
  std::vector<IntVector> rows_;
  std::vector<std::size_t> pivots_;
};

std::size_t rank(const std::vector<IntVector>& vectors, std::size_t n);

/// Solves a x = b for square nonsingular a; throws std::domain_error if singular.
std::vector<Rational> solve(const IntMatrix& a, std::vector<Rational> b);

/// Divides v by the gcd of its entries (no-op for the zero vector).
void make_primitive(IntVector& v);

}  // namespace latnum
