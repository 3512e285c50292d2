#include "latnum/bounds.hpp"
#include "latnum/io.hpp"
#include "latnum/lattice_count.hpp"

#include <doctest.h>

#include <random>

using namespace latnum;

namespace {

Rational q(const char* s) { return Rational::parse(s); }

}  // namespace

TEST_CASE("Laguerre values at 2") {
  // frozen from an independent rational evaluation of sum_k C(n,k) 2^k / k!
  const char* expected[] = {"1", "3", "7", "43/3", "27", "719/15", "3661/45", "13991/105", "66769/315"};
  for (unsigned n = 0; n < 9; ++n) CHECK(laguerre_at_2(n) == q(expected[n]));
  for (unsigned n = 0; n <= 200; ++n) CHECK(laguerre_at_2(n) == laguerre_at_2_recurrence(n));
}

TEST_CASE("Blichfeldt lower bound") {
  const BoundReport s = blichfeldt_lower_check(hull(std::vector<IntVector>{{0, 0}, {1, 0}, {0, 1}}));
  CHECK(s.lhs == PiScaled(q("1/2")));
  CHECK(s.rhs == PiScaled(q("1/2")));
  CHECK(s.holds);
  CHECK(s.equality);
  const BoundReport h = blichfeldt_lower_check(hexagon());
  CHECK(h.lhs == PiScaled(q("5/2")));
  CHECK(h.rhs == PiScaled(Rational(3)));
  CHECK(*h.slack == q("1/2"));
  CHECK(blichfeldt_lower_check(cube(2)).lhs == PiScaled(q("7/2")));
  CHECK_THROWS_AS(blichfeldt_lower_check(hull(std::vector<IntVector>{{0, 0}, {1, 0}})), HypothesisError);
}

TEST_CASE("van der Corput upper bound") {
  const BoundReport c = vdcorput_upper_check(cube(2));
  CHECK(c.equality);
  CHECK(c.rhs == PiScaled(Rational(4)));
  CHECK(vdcorput_upper_check(hexagon()).rhs == PiScaled(Rational(4)));
  const BoundReport x = vdcorput_upper_check(crosspolytope(3));
  CHECK(x.lhs == PiScaled(q("4/3")));
  CHECK(x.rhs == PiScaled(Rational(8)));
  for (std::size_t n = 1; n <= 4; ++n) CHECK(vdcorput_upper_check(cube(n)).equality);
  CHECK_THROWS_AS(vdcorput_upper_check(hull(std::vector<IntVector>{{0, 0}, {1, 0}, {0, 1}})), HypothesisError);
}

TEST_CASE("exact symmetric lattice point bound") {
  CHECK(sym_blichfeldt_exact_check(hexagon()).bound.rhs == PiScaled(q("21/2")));
  CHECK(sym_blichfeldt_exact_check(cube(2)).bound.rhs == PiScaled(Rational(14)));
  const SymmetricExactResult c = sym_blichfeldt_exact_check(crosspolytope(3, 2));
  CHECK(c.bound.lhs == PiScaled(Rational(9)));
  CHECK(c.bound.rhs == PiScaled(q("86/3")));
  CHECK(c.davenport_step.holds);
  CHECK(c.chain_step.holds);
  CHECK(c.subsets_tried == 1);
  // lexicographically least independent points of the hexagon
  CHECK(sym_blichfeldt_exact_check(hexagon()).generators == std::vector<IntVector>{{-1, -1}, {-1, 0}});
  const SymmetricExactResult wide = sym_blichfeldt_exact_check(hexagon(), 50);
  CHECK(wide.subsets_tried > 1);
  CHECK(wide.davenport_step.rhs <= sym_blichfeldt_exact_check(hexagon()).davenport_step.rhs);
  // (3! (8/3) / 9)^(1/3)
  CHECK(c.normalized_ratio.lo * c.normalized_ratio.lo * c.normalized_ratio.lo <= q("16/9"));
  // (6/7)^(1/2) = 0.925820...
  const Interval hr = sym_blichfeldt_exact_check(hexagon()).normalized_ratio;
  CHECK(hr.lo > q("0.92581"));
  CHECK(hr.hi < q("0.92583"));
}

TEST_CASE("crosspolytope family closed forms") {
  const CrosspolytopeStats a = crosspolytope_stats({3, 2});
  CHECK(a.enumerated_count == 9);
  CHECK(a.computed_volume == q("8/3"));
  CHECK(crosspolytope_stats({2, 1}).computed_volume == Rational(2));
  const CrosspolytopeStats b = crosspolytope_stats({4, 10});
  CHECK(b.enumerated_count == 27);
  CHECK(b.computed_volume == q("20/3"));
  for (unsigned n = 1; n <= 4; ++n)
    for (unsigned long l = 1; l <= 10; ++l) CHECK(crosspolytope_stats({n, l}).agree);
  CHECK_THROWS(CrosspolytopeFamily{0, 1}.realize());
}

TEST_CASE("product bounds") {
  const BoundReport h = gs_product_exact_check(hexagon());
  CHECK(h.lhs == PiScaled(Rational(21)));
  CHECK(h.rhs == PiScaled(q("7/2"), 2));
  CHECK(h.holds);
  CHECK_FALSE(h.equality);
  CHECK_FALSE(h.slack.has_value());
  CHECK(gs_product_exact_check(cube(2)).lhs == PiScaled(Rational(18)));
  CHECK(gs_product_exact_check(crosspolytope(2)).lhs == PiScaled(Rational(20)));

  CHECK(gs_product_lower_check(cube(2)).lhs == PiScaled(Rational(2)));
  CHECK(gs_product_lower_check(hexagon()).lhs == PiScaled(q("9/4")));
  CHECK(gs_product_lower_check(crosspolytope(2)).rhs == PiScaled(Rational(20)));
}

TEST_CASE("ratio of lattice points of K and its polar") {
  CHECK(gs_ratio(hexagon()) == q("1/3"));
  CHECK(gs_ratio(cube(2)) == q("9/20"));
  CHECK(gs_ratio(crosspolytope(2)) == q("5/18"));
  const GsRatioChain c = gs_ratio_lower_check(hexagon());
  CHECK(c.k == 2);
  CHECK(c.bound.holds);
  // the polar of C*_{3,2} only contains lattice points in the last two axes
  CHECK(gs_ratio_lower_check(crosspolytope(3, 2)).k == 2);
}

TEST_CASE("planar Mahler bound") {
  CHECK(mahler_planar_check(cube(2)).equality);
  CHECK(mahler_planar_check(crosspolytope(2)).equality);
  const BoundReport h = mahler_planar_check(hexagon());
  CHECK(h.rhs == PiScaled(Rational(9)));
  CHECK_FALSE(h.equality);
  CHECK_THROWS_AS(mahler_planar_check(cube(3)), HypothesisError);
}

TEST_CASE("g(k) monotonicity") {
  CHECK(g_enclosure(0).contains(Rational(1)));
  CHECK(g_enclosure(1).contains(q("1/3")));
  // g(2) = 8 / (7 pi^2) = 0.1157956...
  const Interval g2 = g_enclosure(2, 64);
  CHECK(g2.lo > q("0.1157955"));
  CHECK(g2.hi < q("0.1157957"));
  CHECK(g2.hi < q("1/3"));
  const auto steps = g_monotonicity_check(60);
  REQUIRE(steps.size() == 60);
  for (const auto& s : steps) {
    CHECK(s.nonincreasing.holds);
    CHECK(s.ball_estimate.holds);
    CHECK(s.sufficient.holds);
  }
}

TEST_CASE("stated Laguerre recurrence audit") {
  // discrepancy = direct L_{k+1}(2) minus 2 L_k(2) - 2^k (k-1)/(k+1)!, frozen from direct summation
  const char* stated[] = {"3", "6", "40/3", "28", "268/5", "4306/45", "17078/105", "5596/21"};
  const char* discrepancy[] = {"0", "1", "1", "-1", "-17/3", "-43/3", "-147/5", "-2453/45"};
  const auto rows = laguerre_recurrence_audit(7);
  REQUIRE(rows.size() == 8);
  for (unsigned k = 0; k < 8; ++k) {
    CHECK(rows[k].stated == q(stated[k]));
    CHECK(rows[k].discrepancy == q(discrepancy[k]));
    CHECK(rows[k].direct == laguerre_at_2(k + 1));
  }
}

TEST_CASE("asymptotic crossing table") {
  const AsymptoticReport r = asymptotic_report(60, Rational(1));
  REQUIRE(r.first_threshold_crossing.has_value());
  CHECK(*r.first_threshold_crossing == 8);
  CHECK(r.rows[1].laguerre_ratio == q("7/4"));
  CHECK(r.rows[1].product_constant == PiScaled(q("7/2"), 2));
  CHECK_FALSE(r.rows[1].product_root_below);
  CHECK(r.rows[1].product_root.lo.to_double() == doctest::Approx(5.877).epsilon(1e-3));
  CHECK_THROWS(asymptotic_report(5, Rational(0)));
  CHECK_THROWS(asymptotic_report(5, Rational(2)));
}

TEST_CASE("every inequality holds on random symmetric lattice polytopes") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 90; ++trial) {
    const std::size_t n = 2 + trial % 3;
    const VPolytope k = random_symmetric_polytope(rng, n, 4);
    CHECK(vdcorput_upper_check(k).holds);
    CHECK(gs_product_lower_check(k).holds);
    CHECK(gs_ratio_lower_check(k).bound.holds);
    if (lattice_span_dim(k) == static_cast<int>(n)) {
      CHECK(blichfeldt_lower_check(k).holds);
      const SymmetricExactResult s = sym_blichfeldt_exact_check(k);
      CHECK(s.bound.holds);
      CHECK(s.davenport_step.holds);
      CHECK(s.chain_step.holds);
      CHECK(gs_product_exact_check(k).holds);
    }
    if (n == 2) CHECK(mahler_planar_check(k).holds);
  }
}
