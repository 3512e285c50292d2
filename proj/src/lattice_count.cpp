#include "latnum/lattice_count.hpp"

#include "hull.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <stdexcept>

namespace latnum {

namespace {

struct IntHalfspace {
  IntVector a;  // a . x <= b for integer x
  Integer b;
};

// Calls `line(prefix, lo, hi, strict_lo, strict_hi, strict_ok)` for every
// integer prefix of the bounding box; the callback receives the closed and
// open ranges of the last coordinate.
using LineFn = std::function<void(const IntVector&, const Integer&, const Integer&,
                                  const Integer&, const Integer&, bool)>;

void sweep(const std::vector<IntHalfspace>& hs, const IntVector& box_lo, const IntVector& box_hi,
           const LineFn& line) {
  const std::size_t n = box_lo.size();
  IntVector prefix(n);
  std::vector<IntVector> partial(n + 1, IntVector(hs.size(), Integer(0)));

  std::function<void(std::size_t)> rec = [&](std::size_t level) {
    if (level + 1 == n) {
      Integer lo = box_lo[level], hi = box_hi[level];
      Integer slo = box_lo[level], shi = box_hi[level];
      bool strict_ok = true;
      Integer q;
      for (std::size_t f = 0; f < hs.size(); ++f) {
        const Integer& a = hs[f].a[level];
        Integer r = hs[f].b - partial[level][f];
        if (a > 0) {
          mpz_fdiv_q(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t());
          if (q < hi) hi = q;
          mpz_cdiv_q(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t());
          q -= 1;
          if (q < shi) shi = q;
        } else if (a < 0) {
          mpz_cdiv_q(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t());
          if (q > lo) lo = q;
          mpz_fdiv_q(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t());
          q += 1;
          if (q > slo) slo = q;
        } else {
          if (r < 0) return;
          if (r == 0) strict_ok = false;
        }
      }
      if (lo <= hi) line(prefix, lo, hi, slo, shi, strict_ok && slo <= shi);
      return;
    }
    for (Integer x = box_lo[level]; x <= box_hi[level]; ++x) {
      prefix[level] = x;
      for (std::size_t f = 0; f < hs.size(); ++f)
        partial[level + 1][f] = partial[level][f] + hs[f].a[level] * x;
      rec(level + 1);
    }
  };
  rec(0);
}

struct FullDimSetup {
  std::vector<IntHalfspace> hs;
  IntVector lo, hi;
};

FullDimSetup setup_full(const VPolytope& p) {
  detail::ScaledHull sh = detail::scaled_hull(p);
  FullDimSetup s;
  for (const auto& f : sh.hull.facets) {
    IntVector a = f.normal;
    for (auto& x : a) x *= sh.scale;
    s.hs.push_back({std::move(a), f.offset});
  }
  const std::size_t n = p.ambient_dim();
  s.lo.resize(n);
  s.hi.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    Rational mn = p.vertices()[0][j], mx = mn;
    for (const auto& v : p.vertices()) {
      mn = std::min(mn, v[j]);
      mx = std::max(mx, v[j]);
    }
    s.lo[j] = mn.ceil();
    s.hi[j] = mx.floor();
  }
  return s;
}

// Lattice points of a full-dimensional polytope, plus the interior count.
void enumerate_full(const VPolytope& p, std::vector<IntVector>* points, LatticeCount* counts) {
  FullDimSetup s = setup_full(p);
  const std::size_t n = p.ambient_dim();
  if (counts) *counts = {0, 0, 0};
  sweep(s.hs, s.lo, s.hi,
        [&](const IntVector& prefix, const Integer& lo, const Integer& hi, const Integer& slo,
            const Integer& shi, bool strict_ok) {
          if (counts) {
            counts->total += hi - lo + 1;
            if (strict_ok) counts->interior += shi - slo + 1;
          }
          if (points) {
            IntVector x = prefix;
            for (Integer t = lo; t <= hi; ++t) {
              x[n - 1] = t;
              points->push_back(x);
            }
          }
        });
  if (counts) counts->boundary = counts->total - counts->interior;
}

// Rational Gauss-Jordan inverse of a small square matrix.
std::vector<std::vector<Rational>> inverse(std::vector<std::vector<Rational>> m) {
  const std::size_t n = m.size();
  std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c].is_zero()) ++piv;
    if (piv == n) throw std::domain_error("singular matrix");
    std::swap(m[c], m[piv]);
    std::swap(inv[c], inv[piv]);
    const Rational scale = m[c][c].inverse();
    for (std::size_t j = 0; j < n; ++j) {
      m[c][j] *= scale;
      inv[c][j] *= scale;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m[i][c].is_zero()) continue;
      const Rational f = m[i][c];
      for (std::size_t j = 0; j < n; ++j) {
        m[i][j] -= f * m[c][j];
        inv[i][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

// Lattice points of a lower-dimensional polytope: enumerate the injective
// coordinate projection and keep the lifts that are integral.
std::vector<IntVector> enumerate_lower(const VPolytope& p) {
  const std::size_t n = p.ambient_dim();
  if (p.dim() == 0) {
    const Point& v = p.vertices()[0];
    if (!p.is_lattice()) return {};
    IntVector x;
    for (const auto& c : v) x.push_back(c.num());
    return {x};
  }
  detail::ScaledPoints scaled = detail::to_integer(p.vertices());
  detail::AffineFrame frame = detail::affine_frame(scaled.pts);
  const std::size_t r = frame.dim;
  VPolytope shadow = coordinate_projection(p, frame.coords);

  std::vector<std::vector<Rational>> m(r, std::vector<Rational>(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) m[i][j] = Rational(frame.directions[j][frame.coords[i]]);
  auto minv = inverse(m);
  const Point& base = p.vertices()[0];

  std::vector<IntVector> shadow_points;
  enumerate_full(shadow, &shadow_points, nullptr);
  std::vector<IntVector> out;
  for (const auto& y : shadow_points) {
    std::vector<Rational> lambda(r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j)
        lambda[i] += minv[i][j] * (Rational(y[j]) - base[frame.coords[j]]);
    IntVector x(n);
    bool integral = true;
    for (std::size_t k = 0; k < n && integral; ++k) {
      Rational v = base[k];
      for (std::size_t i = 0; i < r; ++i) v += lambda[i] * Rational(frame.directions[i][k]);
      integral = v.is_integer();
      if (integral) x[k] = v.num();
    }
    if (integral) out.push_back(std::move(x));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

LatticeCount count(const VPolytope& p) {
  if (p.full_dimensional() && p.ambient_dim() > 0) {
    LatticeCount c;
    enumerate_full(p, nullptr, &c);
    return c;
  }
  Integer total = static_cast<unsigned long>(enumerate_lower(p).size());
  return {total, 0, total};
}

std::vector<IntVector> lattice_points(const VPolytope& p) {
  if (p.full_dimensional() && p.ambient_dim() > 0) {
    std::vector<IntVector> pts;
    enumerate_full(p, &pts, nullptr);
    return pts;
  }
  return enumerate_lower(p);
}

bool in_row_lattice(const IntMatrix& hermite, IntVector x) {
  std::size_t col = 0;
  for (std::size_t i = 0; i < hermite.rows(); ++i) {
    std::size_t pivot = 0;
    while (pivot < hermite.cols() && hermite(i, pivot) == 0) ++pivot;
    if (pivot == hermite.cols()) break;
    for (; col < pivot; ++col)
      if (x[col] != 0) return false;
    if (!mpz_divisible_p(x[pivot].get_mpz_t(), hermite(i, pivot).get_mpz_t())) return false;
    Integer q = x[pivot] / hermite(i, pivot);
    for (std::size_t j = pivot; j < hermite.cols(); ++j) x[j] -= q * hermite(i, j);
    col = pivot + 1;
  }
  return std::all_of(x.begin(), x.end(), [](const Integer& v) { return v == 0; });
}

Integer count_sublattice(const VPolytope& p, const IntMatrix& basis) {
  if (basis.cols() != p.ambient_dim()) throw std::invalid_argument("basis dimension mismatch");
  if (rank(basis.to_rows(), basis.cols()) != basis.rows())
    throw std::invalid_argument("sublattice basis vectors are linearly dependent");
  IntMatrix h = hnf(basis).h;
  Integer n = 0;
  for (const auto& x : lattice_points(p))
    if (in_row_lattice(h, x)) ++n;
  return n;
}

std::map<IntVector, Integer> residue_class_counts(const VPolytope& p, const IntMatrix& basis) {
  const std::size_t n = p.ambient_dim();
  if (basis.rows() != n || basis.cols() != n) throw std::invalid_argument("basis must be square");
  lattice_index(basis);  // rejects rank-deficient bases
  IntMatrix h = hnf(basis).h;

  std::map<IntVector, Integer> counts;
  IntVector rep(n, Integer(0));
  std::function<void(std::size_t)> fill = [&](std::size_t i) {
    if (i == n) {
      counts.emplace(rep, 0);
      return;
    }
    for (Integer t = 0; t < h(i, i); ++t) {
      rep[i] = t;
      fill(i + 1);
    }
  };
  fill(0);

  for (auto x : lattice_points(p)) {
    for (std::size_t i = 0; i < n; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), x[i].get_mpz_t(), h(i, i).get_mpz_t());
      if (q != 0)
        for (std::size_t j = i; j < n; ++j) x[j] -= q * h(i, j);
    }
    counts[x] += 1;
  }
  return counts;
}

int lattice_span_dim(const VPolytope& p) {
  auto pts = lattice_points(p);
  if (pts.empty()) return -1;
  std::vector<IntVector> diffs;
  for (const auto& x : pts) {
    IntVector d(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - pts[0][i];
    diffs.push_back(std::move(d));
  }
  return static_cast<int>(rank(diffs, p.ambient_dim()));
}

PickIdentity pick_identity(const VPolytope& p) {
  if (p.ambient_dim() != 2 || !p.full_dimensional())
    throw std::invalid_argument("Pick's identity needs a two-dimensional polygon in the plane");
  if (!p.is_lattice()) throw std::invalid_argument("Pick's identity needs a lattice polygon");
  LatticeCount c = count(p);
  Rational area = volume(p);
  Rational residual = area - (Rational(c.interior) + Rational(c.boundary, 2) - Rational(1));
  return {area, c.interior, c.boundary, residual};
}

}  // namespace latnum
