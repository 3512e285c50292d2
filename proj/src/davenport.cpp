#include "latnum/davenport.hpp"

#include "latnum/lattice_count.hpp"
#include "latnum/parallel.hpp"

#include <algorithm>
#include <bit>
#include <optional>
#include <set>
#include <stdexcept>

namespace latnum {

ParallelepipedSpec::ParallelepipedSpec(IntMatrix generators) : generators_(std::move(generators)) {
  if (generators_.rows() != generators_.cols())
    throw std::invalid_argument("a parallelepiped in R^n needs exactly n generators");
  if (generators_.rows() > 20) throw std::invalid_argument("too many generators");
  if (det(generators_) == 0) throw std::invalid_argument("parallelepiped generators are dependent");
}

ParallelepipedSpec ParallelepipedSpec::unit_cell(std::size_t n) {
  return ParallelepipedSpec(IntMatrix::identity(n));
}

VPolytope ParallelepipedSpec::face(std::uint32_t subset, const std::vector<Integer>& scale) const {
  const std::size_t n = dim();
  std::vector<IntVector> rows;
  for (std::size_t j = 0; j < n; ++j) {
    if (!(subset >> j & 1u)) continue;
    IntVector z = generators_.row(j);
    if (!scale.empty())
      for (auto& x : z) x *= scale.at(j);
    rows.push_back(std::move(z));
  }
  if (rows.empty()) return hull(std::vector<Point>{Point(n)});
  return zonotope(IntMatrix::from_rows(rows));
}

Rational DavenportDecomposition::evaluate(const std::vector<Integer>& t) const {
  Rational sum;
  for (std::uint32_t s = 0; s < coefficients.size(); ++s) {
    Integer term = 1;
    for (std::size_t j = 0; j < n; ++j)
      if (s >> j & 1u) term *= t.at(j);
    sum += coefficients[s] * Rational(term);
  }
  return sum;
}

std::string subset_label(std::uint32_t subset, std::size_t n) {
  std::string s = "{";
  bool first = true;
  for (std::size_t j = 0; j < n; ++j) {
    if (!(subset >> j & 1u)) continue;
    if (!first) s += ",";
    s += std::to_string(j + 1);
    first = false;
  }
  return s + "}";
}

namespace {

// n-dimensional volume, zero for flat bodies
Rational full_volume(const VPolytope& p) { return p.full_dimensional() ? volume(p) : Rational(0); }

}  // namespace

DavenportDecomposition volume_polynomial(const VPolytope& k, const ParallelepipedSpec& p, unsigned jobs) {
  const std::size_t n = p.dim();
  if (k.ambient_dim() != n) throw std::invalid_argument("body and parallelepiped dimensions differ");
  const std::uint32_t count = 1u << n;

  // sums[S] = K + sum_{j in S} [0, z_j], built from S minus its highest element
  std::vector<std::optional<VPolytope>> sums(count);
  std::vector<Rational> values(count);
  sums[0] = k;
  values[0] = full_volume(k);
  for (std::size_t layer = 1; layer <= n; ++layer) {
    std::vector<std::uint32_t> members;
    for (std::uint32_t s = 1; s < count; ++s)
      if (static_cast<std::size_t>(std::popcount(s)) == layer) members.push_back(s);
    parallel_for(members.size(), jobs, [&](std::size_t idx) {
      const std::uint32_t s = members[idx];
      const std::uint32_t top = std::bit_floor(s);
      const std::size_t j = static_cast<std::size_t>(std::countr_zero(top));
      const VPolytope& base = *sums[s ^ top];
      std::vector<Point> pts = base.vertices();
      for (const auto& v : base.vertices()) {
        Point w = v;
        for (std::size_t i = 0; i < n; ++i) w[i] += Rational(p.generators()(j, i));
        pts.push_back(std::move(w));
      }
      sums[s] = hull(pts);
      values[s] = full_volume(*sums[s]);
    });
  }

  DavenportDecomposition d;
  d.n = n;
  d.total = values[count - 1];
  // Moebius inversion over the subset lattice.
  for (std::size_t j = 0; j < n; ++j)
    for (std::uint32_t s = 0; s < count; ++s)
      if (s >> j & 1u) values[s] -= values[s ^ (1u << j)];
  d.coefficients = std::move(values);
  return d;
}

bool equality_characterization(const VPolytope& k, const ParallelepipedSpec& p) {
  if (p.index() != 1) return false;
  const std::size_t n = p.dim();
  if (k.ambient_dim() != n) return false;
  const IntMatrix zt = p.generators().transpose();

  std::set<std::vector<Rational>> coords;
  for (const auto& v : k.vertices()) coords.insert(solve(zt, v));
  std::vector<Rational> lo = *coords.begin(), hi = lo;
  for (const auto& y : coords)
    for (std::size_t j = 0; j < n; ++j) {
      lo[j] = std::min(lo[j], y[j]);
      hi[j] = std::max(hi[j], y[j]);
    }
  for (std::size_t j = 0; j < n; ++j)
    if (!lo[j].is_integer() || !hi[j].is_integer()) return false;

  std::set<std::vector<Rational>> corners;
  for (std::uint32_t s = 0; s < (1u << n); ++s) {
    std::vector<Rational> c(n);
    for (std::size_t j = 0; j < n; ++j) c[j] = (s >> j & 1u) ? hi[j] : lo[j];
    corners.insert(std::move(c));
  }
  return corners == coords;
}

DavenportCheck davenport_bound_check(const VPolytope& k, const ParallelepipedSpec& p,
                                     const DavenportDecomposition& decomposition) {
  DavenportCheck c;
  c.lhs = count(k).total;
  c.rhs = decomposition.total;
  c.holds = Rational(c.lhs) <= c.rhs;
  c.equality = Rational(c.lhs) == c.rhs;
  c.characterization = equality_characterization(k, p);
  return c;
}

DavenportCheck davenport_bound_check(const VPolytope& k, const ParallelepipedSpec& p, unsigned jobs) {
  return davenport_bound_check(k, p, volume_polynomial(k, p, jobs));
}

DavenportCheck tile_bound_check(const VPolytope& k, const ParallelepipedSpec& p) {
  if (k.ambient_dim() != p.dim()) throw std::invalid_argument("body and parallelepiped dimensions differ");
  DavenportCheck c;
  c.lhs = count(k).total;
  c.rhs = volume(minkowski_sum(k, p.face((1u << p.dim()) - 1)));
  c.holds = Rational(c.lhs) <= c.rhs;
  c.equality = Rational(c.lhs) == c.rhs;
  c.characterization = equality_characterization(k, p);
  return c;
}

bool coefficient_cross_check(const VPolytope& k, std::uint32_t subset,
                             const DavenportDecomposition& unit_cell_decomposition) {
  const std::size_t n = k.ambient_dim();
  std::vector<std::size_t> rest;
  for (std::size_t j = 0; j < n; ++j)
    if (!(subset >> j & 1u)) rest.push_back(j);
  return unit_cell_decomposition.coefficient(subset) == full_volume(coordinate_projection(k, rest));
}

bool coefficient_cross_check(const VPolytope& k, std::uint32_t subset) {
  return coefficient_cross_check(
      k, subset, volume_polynomial(k, ParallelepipedSpec::unit_cell(k.ambient_dim())));
}

SectionProjectionCheck section_projection_check(const VPolytope& k,
                                                const std::vector<std::size_t>& coords) {
  const std::size_t n = k.ambient_dim();
  std::vector<std::size_t> rest;
  for (std::size_t j = 0; j < n; ++j)
    if (!std::binary_search(coords.begin(), coords.end(), j)) rest.push_back(j);
  SectionProjectionCheck c;
  c.volume = volume(k);
  c.product = volume(coordinate_projection(k, rest)) * volume(coordinate_section(k, coords));
  c.binomial = binomial(static_cast<unsigned>(n), static_cast<unsigned>(coords.size()));
  c.lower_holds = c.volume <= c.product;
  c.upper_holds = c.product <= Rational(c.binomial) * c.volume;
  return c;
}

SymmetricSectionCheck symmetric_section_check(const VPolytope& k, const std::vector<Integer>& axis_lengths,
                                              std::uint32_t subset) {
  const std::size_t n = k.ambient_dim();
  if (axis_lengths.size() != n) throw std::invalid_argument("need one axis length per coordinate");
  HPolytope h = facets(k);
  std::vector<std::size_t> coords;
  Rational parallelepiped = 1;
  for (std::size_t j = 0; j < n; ++j) {
    if (!(subset >> j & 1u)) continue;
    coords.push_back(j);
    parallelepiped *= Rational(axis_lengths[j]).abs();
    for (int s : {-1, 1}) {
      Point z(n);
      z[j] = Rational(axis_lengths[j]) * Rational(s);
      if (!h.contains(z)) throw std::invalid_argument("body does not contain the generator +-z_j");
    }
  }
  const auto i = static_cast<unsigned>(coords.size());
  SymmetricSectionCheck c;
  c.section_volume = volume(coordinate_section(k, coords));
  c.cross_volume = Rational(Integer(Integer(1) << i), factorial(i)) * parallelepiped;
  c.holds = c.section_volume >= c.cross_volume;
  return c;
}

}  // namespace latnum
