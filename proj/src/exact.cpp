#include "latnum/exact.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace latnum {

std::string to_string(const Integer& z) { return z.get_str(); }

// ---------------------------------------------------------------------------
// Rational

Rational::Rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  auto trim = [](std::string& t) {
    t.erase(0, t.find_first_not_of(" \t\n"));
    t.erase(t.find_last_not_of(" \t\n") + 1);
  };
  trim(s);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto parse_int = [&](const std::string& part) {
    Integer z;
    std::string body = part;
    if (!body.empty() && body[0] == '+') body.erase(0, 1);
    if (body.empty() || z.set_str(body, 10) != 0)
      throw std::invalid_argument("malformed rational literal '" + s + "'");
    return z;
  };
  if (auto slash = s.find('/'); slash != std::string::npos)
    return Rational(parse_int(s.substr(0, slash)), parse_int(s.substr(slash + 1)));
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string whole = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    const bool negative = !whole.empty() && whole[0] == '-';
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    if (frac.empty() || frac.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("malformed rational literal '" + s + "'");
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    Integer w = parse_int(whole);
    Integer f = parse_int(frac);
    Integer num = negative ? Integer(w * scale - f) : Integer(w * scale + f);
    return Rational(num, scale);
  }
  return Rational(parse_int(s));
}

Integer Rational::floor() const {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return r;
}

Integer Rational::ceil() const {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return r;
}

Rational Rational::abs() const { return Rational(mpq_class(::abs(q_))); }

Rational Rational::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  return Rational(mpq_class(1 / q_));
}

Rational Rational::pow(unsigned exponent) const {
  Integer n, d;
  mpz_pow_ui(n.get_mpz_t(), q_.get_num_mpz_t(), exponent);
  mpz_pow_ui(d.get_mpz_t(), q_.get_den_mpz_t(), exponent);
  return Rational(n, d);
}

std::string Rational::str() const {
  if (is_integer()) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Rational Rational::operator-() const { return Rational(mpq_class(-q_)); }

Rational& Rational::operator+=(const Rational& o) {
  q_ += o.q_;
  return *this;
}
Rational& Rational::operator-=(const Rational& o) {
  q_ -= o.q_;
  return *this;
}
Rational& Rational::operator*=(const Rational& o) {
  q_ *= o.q_;
  return *this;
}
Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  q_ /= o.q_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Integer factorial(unsigned n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

Integer binomial(unsigned n, unsigned k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

// ---------------------------------------------------------------------------
// Intervals and pi

Interval operator*(const Interval& a, const Interval& b) {
  Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }

Interval scale(const Interval& a, const Rational& c) {
  if (c.sign() >= 0) return {a.lo * c, a.hi * c};
  return {a.hi * c, a.lo * c};
}

Interval pow(const Interval& a, unsigned exponent) {
  Interval r{Rational(1), Rational(1)};
  for (unsigned i = 0; i < exponent; ++i) r = r * a;
  return r;
}

namespace {

// atan(1/x) * scale as an integer, with an absolute error bound.
std::pair<Integer, Integer> scaled_arctan_inv(unsigned long x, const Integer& scale) {
  Integer sum = 0;
  Integer power = scale / x;  // floor(scale / x^(2k+1))
  const unsigned long x2 = x * x;
  unsigned long k = 0;
  unsigned long terms = 0;
  while (power != 0) {
    Integer term = power / (2 * k + 1);
    if (k % 2 == 0)
      sum += term;
    else
      sum -= term;
    power /= x2;
    ++k;
    ++terms;
  }
  // each term is off by less than 2 units, and the tail is below one unit
  return {sum, Integer(2 * terms + 1)};
}

Interval compute_pi(unsigned bits) {
  constexpr unsigned guard = 32;
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 2, bits + guard);
  auto [a, ea] = scaled_arctan_inv(5, scale);
  auto [b, eb] = scaled_arctan_inv(239, scale);
  Integer value = 16 * a - 4 * b;
  Integer err = 16 * ea + 4 * eb;
  Integer lo = value - err;
  Integer hi = value + err;
  Integer g;
  mpz_ui_pow_ui(g.get_mpz_t(), 2, guard);
  Integer lo_q, hi_q;
  mpz_fdiv_q(lo_q.get_mpz_t(), lo.get_mpz_t(), g.get_mpz_t());
  mpz_cdiv_q(hi_q.get_mpz_t(), hi.get_mpz_t(), g.get_mpz_t());
  Integer den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, bits);
  return {Rational(lo_q, den), Rational(hi_q, den)};
}

}  // namespace

Interval pi_enclosure(unsigned bits) {
  static std::mutex mutex;
  static std::map<unsigned, Interval> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(bits);
  if (it == cache.end()) it = cache.emplace(bits, compute_pi(bits)).first;
  return it->second;
}

Interval nth_root_enclosure(const Interval& x, unsigned n, unsigned bits) {
  if (n == 0) throw std::invalid_argument("zeroth root");
  if (x.lo.sign() < 0) throw std::domain_error("root of negative interval");
  Integer shift;
  mpz_ui_pow_ui(shift.get_mpz_t(), 2, static_cast<unsigned long>(n) * bits);
  Integer den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, bits);

  Integer lo_scaled = (x.lo * Rational(shift)).floor();
  Integer lo_root;
  mpz_root(lo_root.get_mpz_t(), lo_scaled.get_mpz_t(), n);

  Integer hi_scaled = (x.hi * Rational(shift)).ceil();
  Integer hi_root;
  mpz_root(hi_root.get_mpz_t(), hi_scaled.get_mpz_t(), n);
  Integer check;
  mpz_pow_ui(check.get_mpz_t(), hi_root.get_mpz_t(), n);
  if (check < hi_scaled) hi_root += 1;
  return {Rational(lo_root, den), Rational(hi_root, den)};
}

bool certified_less(const std::function<std::pair<Interval, Interval>(unsigned)>& enclose,
                    unsigned max_bits) {
  for (unsigned bits = 64; bits <= max_bits; bits *= 2) {
    auto [a, b] = enclose(bits);
    if (a.hi < b.lo) return true;
    if (a.lo > b.hi) return false;
  }
  throw std::runtime_error("certified comparison undecided at maximum precision");
}

// ---------------------------------------------------------------------------
// PiScaled

Interval PiScaled::enclose(unsigned bits) const {
  if (pi_power_ == 0) return {coeff_, coeff_};
  return scale(latnum::pow(pi_enclosure(bits), pi_power_), coeff_);
}

double PiScaled::approx() const {
  Interval i = enclose(64);
  return ((i.lo + i.hi) / Rational(2)).to_double();
}

std::string PiScaled::str() const {
  if (is_rational()) return coeff_.str();
  std::string s = coeff_.str() + "*pi";
  if (pi_power_ > 1) s += "^" + std::to_string(pi_power_);
  return s;
}

std::strong_ordering operator<=>(const PiScaled& a, const PiScaled& b) {
  if (a.pi_power_ == b.pi_power_ || (a.coeff_.is_zero() && b.coeff_.is_zero()))
    return a.coeff_ <=> b.coeff_;
  const int sa = a.coeff_.sign();
  const int sb = b.coeff_.sign();
  if (sa != sb) return sa <=> sb;
  // same nonzero sign and distinct powers of a transcendental: never equal
  const bool less = certified_less([&](unsigned bits) {
    return std::pair{a.enclose(bits), b.enclose(bits)};
  });
  return less ? std::strong_ordering::less : std::strong_ordering::greater;
}

PiScaled ball_volume(unsigned n) {
  const unsigned m = n / 2;
  if (n % 2 == 0) return {Rational(Integer(1), factorial(m)), m};
  Integer two_n;
  mpz_ui_pow_ui(two_n.get_mpz_t(), 2, n);
  return {Rational(two_n * factorial(m), factorial(n)), m};
}

// ---------------------------------------------------------------------------
// IntMatrix

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {
  if (rows == 0 || cols == 0) throw std::invalid_argument("matrix dimensions must be positive");
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows) {
  if (rows.empty()) throw std::invalid_argument("matrix needs at least one row");
  IntMatrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols_) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntVector IntMatrix::row(std::size_t i) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

std::vector<IntVector> IntMatrix::to_rows() const {
  std::vector<IntVector> out;
  out.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product dimension mismatch");
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

std::string IntMatrix::str() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j).get_str();
    os << ']';
  }
  os << ']';
  return os.str();
}

Integer det(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  std::vector<IntVector> a = m.to_rows();
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(a[k], a[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a[i][j] = v;
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

HermiteResult hnf(const IntMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<IntVector> h = m.to_rows();
  std::vector<IntVector> u = IntMatrix::identity(rows).to_rows();

  auto axpy = [](IntVector& dst, const IntVector& src, const Integer& q) {
    for (std::size_t j = 0; j < dst.size(); ++j) dst[j] -= q * src[j];
  };

  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    while (true) {
      std::size_t best = rows;
      for (std::size_t i = r; i < rows; ++i)
        if (h[i][c] != 0 && (best == rows || ::abs(h[i][c]) < ::abs(h[best][c]))) best = i;
      if (best == rows) break;
      std::swap(h[r], h[best]);
      std::swap(u[r], u[best]);
      bool done = true;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (h[i][c] == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), h[i][c].get_mpz_t(), h[r][c].get_mpz_t());
        axpy(h[i], h[r], q);
        axpy(u[i], u[r], q);
        if (h[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (h[r][c] == 0) continue;
    if (h[r][c] < 0) {
      for (auto& x : h[r]) x = -x;
      for (auto& x : u[r]) x = -x;
    }
    for (std::size_t i = 0; i < r; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), h[i][c].get_mpz_t(), h[r][c].get_mpz_t());
      if (q == 0) continue;
      axpy(h[i], h[r], q);
      axpy(u[i], u[r], q);
    }
    ++r;
  }
  return {IntMatrix::from_rows(h), IntMatrix::from_rows(u)};
}

Integer lattice_index(const IntMatrix& basis) {
  if (basis.rows() != basis.cols())
    throw std::invalid_argument("lattice basis must have as many vectors as coordinates");
  Integer d = det(basis);
  if (d == 0) throw std::invalid_argument("rank-deficient lattice basis");
  return ::abs(d);
}

// ---------------------------------------------------------------------------
// EchelonBasis

void make_primitive(IntVector& v) {
  Integer g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g > 1)
    for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

IntVector EchelonBasis::reduce(IntVector v) const {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const std::size_t p = pivots_[i];
    if (v[p] == 0) continue;
    const Integer a = rows_[i][p];
    const Integer b = v[p];
    for (std::size_t j = 0; j < n_; ++j) v[j] = v[j] * a - rows_[i][j] * b;
    make_primitive(v);
  }
  return v;
}

bool EchelonBasis::add(const IntVector& v) {
  if (v.size() != n_) throw std::invalid_argument("vector dimension mismatch");
  IntVector r = reduce(v);
  auto it = std::find_if(r.begin(), r.end(), [](const Integer& x) { return x != 0; });
  if (it == r.end()) return false;
  pivots_.push_back(static_cast<std::size_t>(it - r.begin()));
  rows_.push_back(std::move(r));
  return true;
}

bool EchelonBasis::contains(const IntVector& v) const {
  IntVector r = reduce(v);
  return std::all_of(r.begin(), r.end(), [](const Integer& x) { return x == 0; });
}

std::size_t rank(const std::vector<IntVector>& vectors, std::size_t n) {
  EchelonBasis basis(n);
  for (const auto& v : vectors) {
    basis.add(v);
    if (basis.rank() == n) break;
  }
  return basis.rank();
}

std::vector<Rational> solve(const IntMatrix& a, std::vector<Rational> b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) throw std::invalid_argument("solve needs a square system");
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = Rational(a(i, j));
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c].is_zero()) ++piv;
    if (piv == n) throw std::domain_error("singular system");
    std::swap(m[c], m[piv]);
    std::swap(b[c], b[piv]);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m[i][c].is_zero()) continue;
      const Rational f = m[i][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
      b[i] -= f * b[c];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = n; i-- > 0;) {
    Rational s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= m[i][j] * x[j];
    x[i] = s / m[i][i];
  }
  return x;
}

}  // namespace latnum
