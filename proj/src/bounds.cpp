#include "latnum/bounds.hpp"

#include "latnum/lattice_count.hpp"

#include <algorithm>
#include <cmath>

namespace latnum {

namespace {

Rational power_of_two(unsigned n) {
  return Rational(Integer(Integer(1) << n));
}

void require_symmetric_body(const VPolytope& k) {
  if (!k.full_dimensional()) throw HypothesisError("body is not full-dimensional");
  if (!is_centrally_symmetric(k)) throw HypothesisError("body is not centrally symmetric");
}

void require_lattice_span(const VPolytope& k) {
  if (lattice_span_dim(k) != static_cast<int>(k.ambient_dim()))
    throw HypothesisError("lattice points of the body do not span the space");
}

// k! kappa_k^2 L_k(2)
PiScaled ball_laguerre_term(unsigned k) {
  const PiScaled kappa = ball_volume(k);
  return {Rational(factorial(k)) * kappa.coeff() * kappa.coeff() * laguerre_at_2(k), 2 * kappa.pi_power()};
}

}  // namespace

BoundReport make_report(std::string name, const PiScaled& lhs, const PiScaled& rhs) {
  BoundReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  const auto c = lhs <=> rhs;
  r.holds = c != std::strong_ordering::greater;
  r.equality = c == std::strong_ordering::equal;
  if (lhs.pi_power() == rhs.pi_power()) r.slack = rhs.coeff() - lhs.coeff();
  return r;
}

Rational laguerre_at_2(unsigned n) {
  Rational sum;
  Integer two_k = 1;
  for (unsigned k = 0; k <= n; ++k) {
    sum += Rational(binomial(n, k) * two_k, factorial(k));
    two_k *= 2;
  }
  return sum;
}

Rational laguerre_at_2_recurrence(unsigned n) {
  Rational prev = 1, cur = 3;
  if (n == 0) return prev;
  for (unsigned k = 1; k < n; ++k) {
    Rational next = (Rational(2 * k + 3) * cur - Rational(k) * prev) / Rational(k + 1);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

BoundReport blichfeldt_lower_check(const VPolytope& k) {
  require_lattice_span(k);
  const auto n = static_cast<unsigned>(k.ambient_dim());
  const Rational lhs = (Rational(count(k).total) - Rational(n)) / Rational(factorial(n));
  return make_report("blichfeldt", lhs, volume(k));
}

BoundReport vdcorput_upper_check(const VPolytope& k) {
  require_symmetric_body(k);
  const auto n = static_cast<unsigned>(k.ambient_dim());
  const Rational rhs = power_of_two(n - 1) * (Rational(count(k).interior) + 1);
  return make_report("vdcorput", volume(k), rhs);
}

SymmetricExactResult sym_blichfeldt_exact_check(const VPolytope& k, std::size_t subset_cap) {
  require_symmetric_body(k);
  require_lattice_span(k);
  const std::size_t n = k.ambient_dim();
  const auto un = static_cast<unsigned>(n);

  std::vector<IntVector> points = lattice_points(k);
  std::erase_if(points, [](const IntVector& v) {
    return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
  });
  const Integer lambda = count(k).total;
  const Rational vol = volume(k);
  const Rational rhs = vol * Rational(factorial(un)) / power_of_two(un) * laguerre_at_2(un);

  std::optional<Rational> best;
  std::vector<IntVector> best_gens;
  std::size_t tried = 0;
  // Index tuples in lexicographic order; only independent prefixes are extended.
  std::vector<std::size_t> idx;
  std::vector<EchelonBasis> bases{EchelonBasis(n)};
  std::size_t next = 0;
  while (tried < std::max<std::size_t>(subset_cap, 1)) {
    if (idx.size() == n) {
      std::vector<IntVector> gens;
      for (auto i : idx) gens.push_back(points[i]);
      const Rational v = volume(minkowski_sum(k, zonotope(IntMatrix::from_rows(gens))));
      ++tried;
      if (!best || v < *best) {
        best = v;
        best_gens = gens;
      }
      next = idx.back() + 1;
      idx.pop_back();
      bases.pop_back();
      continue;
    }
    if (next >= points.size()) {
      if (idx.empty()) break;
      next = idx.back() + 1;
      idx.pop_back();
      bases.pop_back();
      continue;
    }
    EchelonBasis b = bases.back();
    if (b.add(points[next])) {
      idx.push_back(next);
      bases.push_back(std::move(b));
    }
    ++next;
  }
  if (!best) throw HypothesisError("no independent lattice points in the body");

  SymmetricExactResult r;
  r.bound = make_report("sym-exact", Rational(lambda), rhs);
  r.davenport_step = make_report("sym-exact:davenport", Rational(lambda), *best);
  r.chain_step = make_report("sym-exact:chain", *best, rhs);
  r.generators = std::move(best_gens);
  r.subsets_tried = tried;
  const Rational power = Rational(factorial(un)) * vol / Rational(lambda);
  r.normalized_ratio = nth_root_enclosure({power, power}, un, 64);
  return r;
}

VPolytope CrosspolytopeFamily::realize() const {
  if (n < 1 || l < 1) throw std::invalid_argument("crosspolytope family needs n >= 1 and l >= 1");
  return crosspolytope(n, static_cast<long>(l));
}

CrosspolytopeStats crosspolytope_stats(const CrosspolytopeFamily& family) {
  const VPolytope c = family.realize();
  CrosspolytopeStats s;
  s.closed_count = Integer(2 * (family.n + family.l) - 1);
  s.enumerated_count = count(c).total;
  s.closed_volume = power_of_two(family.n) * Rational(Integer(family.l)) / Rational(factorial(family.n));
  s.computed_volume = volume(c);
  s.agree = s.closed_count == s.enumerated_count && s.closed_volume == s.computed_volume;
  s.normalized_power = Rational(factorial(family.n)) * s.closed_volume / Rational(s.closed_count);
  s.normalized_root = nth_root_enclosure({s.normalized_power, s.normalized_power}, family.n, 64);
  return s;
}

BoundReport gs_product_exact_check(const VPolytope& k) {
  require_symmetric_body(k);
  require_lattice_span(k);
  const auto n = static_cast<unsigned>(k.ambient_dim());
  const Rational lhs = Rational(count(k).total) * volume(polar(k));
  const PiScaled t = ball_laguerre_term(n);
  return make_report("gs-product", lhs, PiScaled(t.coeff() / power_of_two(n), t.pi_power()));
}

BoundReport gs_product_lower_check(const VPolytope& k) {
  require_symmetric_body(k);
  const auto n = static_cast<unsigned>(k.ambient_dim());
  const Rational polar_volume = volume(polar(k));
  return make_report("gs-product-lower", volume(k) * polar_volume / power_of_two(n),
                     Rational(count(k).total) * polar_volume);
}

Rational gs_ratio(const VPolytope& k) {
  require_symmetric_body(k);
  return Rational(count(k).total) / (Rational(count(polar(k)).total) * volume(k));
}

GsRatioChain gs_ratio_lower_check(const VPolytope& k) {
  GsRatioChain c;
  c.ratio = gs_ratio(k);
  const int span = lattice_span_dim(polar(k));
  c.k = static_cast<unsigned>(std::max(span, 0));
  const auto n = static_cast<unsigned>(k.ambient_dim());
  const PiScaled t = ball_laguerre_term(c.k);
  c.bound = make_report("gs-ratio", Rational(Integer(Integer(1) << (2 * c.k))),
                        PiScaled(c.ratio * power_of_two(n) * t.coeff(), t.pi_power()));
  return c;
}

BoundReport mahler_planar_check(const VPolytope& k) {
  if (k.ambient_dim() != 2) throw HypothesisError("planar check needs a body in R^2");
  require_symmetric_body(k);
  return make_report("mahler", Rational(8), volume(k) * volume(polar(k)));
}

Interval g_enclosure(unsigned k, unsigned bits) {
  const PiScaled t = ball_laguerre_term(k);
  const Interval denom = t.enclose(bits);
  const Rational num(Integer(Integer(1) << (2 * k)));
  return {num / denom.hi, num / denom.lo};
}

std::vector<GMonotonicityStep> g_monotonicity_check(unsigned k_max) {
  std::vector<GMonotonicityStep> steps;
  for (unsigned k = 0; k < k_max; ++k) {
    GMonotonicityStep s;
    s.k = k;
    const PiScaled a = ball_volume(k).pow(2);
    const PiScaled b = ball_volume(k + 1).pow(2);
    const Rational lk = laguerre_at_2(k), lk1 = laguerre_at_2(k + 1);
    // g(k+1) <= g(k)  <=>  4 kappa_k^2 L_k <= (k+1) kappa_{k+1}^2 L_{k+1}
    s.nonincreasing = make_report("g-monotone:" + std::to_string(k),
                                  PiScaled(Rational(4) * a.coeff() * lk, a.pi_power()),
                                  PiScaled(Rational(k + 1) * b.coeff() * lk1, b.pi_power()));
    // 2 pi kappa_k^2 <= (k+2) kappa_{k+1}^2
    s.ball_estimate = make_report("ball-ratio:" + std::to_string(k),
                                  PiScaled(Rational(2) * a.coeff(), a.pi_power() + 1),
                                  PiScaled(Rational(k + 2) * b.coeff(), b.pi_power()));
    // 4 (k+2) L_k <= 2 pi (k+1) L_{k+1}
    s.sufficient = make_report("g-sufficient:" + std::to_string(k), Rational(4 * (k + 2)) * lk,
                               PiScaled(Rational(2 * (k + 1)) * lk1, 1));
    steps.push_back(std::move(s));
  }
  return steps;
}

std::vector<RecurrenceAuditRow> laguerre_recurrence_audit(unsigned k_max) {
  std::vector<RecurrenceAuditRow> rows;
  for (unsigned k = 0; k <= k_max; ++k) {
    RecurrenceAuditRow r;
    r.k = k;
    r.direct = laguerre_at_2(k + 1);
    const Rational correction =
        Rational(Integer(Integer(1) << k) * (Integer(k) - 1), factorial(k + 1));
    r.stated = Rational(2) * laguerre_at_2(k) - correction;
    r.discrepancy = r.direct - r.stated;
    rows.push_back(std::move(r));
  }
  return rows;
}

AsymptoticReport asymptotic_report(unsigned n_max, const Rational& epsilon) {
  if (epsilon <= Rational(0) || epsilon > Rational(1))
    throw std::invalid_argument("epsilon must lie in (0, 1]");
  AsymptoticReport rep;
  rep.epsilon = epsilon;
  const double sqrt_pi = std::sqrt(std::acos(-1.0));
  for (unsigned n = 1; n <= n_max; ++n) {
    AsymptoticRow r;
    r.n = n;
    const Rational ln = laguerre_at_2(n);
    r.laguerre_ratio = ln / power_of_two(n);
    r.laguerre_ratio_approx = r.laguerre_ratio.to_double();
    const double dn = n;
    const double grow = std::exp(2.0 * std::sqrt(2.0 * dn + 1.0) - dn * std::log(2.0));
    r.szego_approx = grow / (2.0 * std::exp(1.0) * sqrt_pi * std::pow(2.0 * dn, 0.25));
    r.exponential_bound = grow;
    r.threshold = (Rational(2) - epsilon).pow(n).inverse();
    r.below_threshold = r.laguerre_ratio <= r.threshold;
    if (r.below_threshold && !rep.first_threshold_crossing) rep.first_threshold_crossing = n;

    const PiScaled t = ball_laguerre_term(n);
    r.product_constant = PiScaled(t.coeff() / power_of_two(n), t.pi_power());
    r.product_root = nth_root_enclosure(r.product_constant.enclose(64), n, 64);
    // the two sides are distinct polynomials in pi, so never equal
    r.product_root_below = certified_less([&](unsigned bits) {
      const Interval shift = pi_enclosure(bits) + Interval{epsilon, epsilon};
      return std::pair{r.product_constant.enclose(bits), pow(shift, n)};
    });
    if (r.product_root_below && !rep.first_product_crossing) rep.first_product_crossing = n;
    rep.rows.push_back(std::move(r));
  }
  return rep;
}

}  // namespace latnum
