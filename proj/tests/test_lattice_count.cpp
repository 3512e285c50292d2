#include "latnum/io.hpp"
#include "latnum/lattice_count.hpp"

#include "support.hpp"

#include <doctest.h>

#include <random>

using namespace latnum;

TEST_CASE("counts of named bodies") {
  const LatticeCount h = count(hexagon());
  CHECK(h.total == 7);
  CHECK(h.interior == 1);
  CHECK(h.boundary == 6);
  CHECK(count(cube(4)).total == 81);
  CHECK(count(cube(3, 2)).total == 125);
  CHECK(count(cube(3, 2)).interior == 27);
  CHECK(count(crosspolytope(3, 2)).total == 9);
  CHECK(count(crosspolytope(4, 10)).total == 27);
  CHECK(count(polar(cube(2))).total == 5);
  CHECK(count(polar(crosspolytope(2))).total == 9);
}

TEST_CASE("planar counts against a cross-product membership oracle") {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<long> c(-6, 6);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<oracle::P2> pts;
    for (int i = 0; i < 3 + trial % 9; ++i) pts.emplace_back(c(rng), c(rng));
    const auto ref = oracle::convex_hull(pts);
    if (ref.size() < 3) continue;
    long total = 0, interior = 0;
    for (long x = -6; x <= 6; ++x)
      for (long y = -6; y <= 6; ++y) {
        const int where = oracle::locate(ref, {x, y});
        total += where >= 0;
        interior += where > 0;
      }
    std::vector<IntVector> v;
    for (const auto& [x, y] : pts) v.push_back({x, y});
    const LatticeCount got = count(hull(v));
    CHECK(got.total == total);
    CHECK(got.interior == interior);
    CHECK(got.boundary == total - interior);
  }
}

TEST_CASE("rational polytopes and strict interiors") {
  // triangle (0,0), (5/2, 0), (0, 5/2)
  const VPolytope t = hull(std::vector<Point>{{Rational(0), Rational(0)},
                                              {Rational(5) / Rational(2), Rational(0)},
                                              {Rational(0), Rational(5) / Rational(2)}});
  const LatticeCount c = count(t);
  CHECK(c.total == 6);
  CHECK(c.interior == 1);
  CHECK(lattice_points(t).front() == IntVector{0, 0});
  CHECK(lattice_points(t).size() == 6);
}

TEST_CASE("lower-dimensional polytopes have no interior points") {
  const VPolytope seg = hull(std::vector<IntVector>{{0, 0, 0}, {4, 2, 6}});
  const LatticeCount c = count(seg);
  CHECK(c.total == 3);
  CHECK(c.interior == 0);
  CHECK(lattice_span_dim(seg) == 1);
  const VPolytope slanted = hull(std::vector<Point>{{Rational(1) / Rational(2), Rational(0)},
                                                    {Rational(1) / Rational(2), Rational(3)}});
  CHECK(count(slanted).total == 0);
  CHECK(lattice_span_dim(slanted) == -1);
}

TEST_CASE("Pick identity on random lattice polygons") {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<long> c(-5, 5);
  int tested = 0;
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<IntVector> pts;
    for (int i = 0; i < 3 + trial % 8; ++i) pts.push_back({c(rng), c(rng)});
    const VPolytope p = hull(pts);
    if (!p.full_dimensional()) continue;
    const PickIdentity id = pick_identity(p);
    CHECK(id.residual == Rational(0));
    ++tested;
  }
  CHECK(tested > 250);
  CHECK_THROWS(pick_identity(cube(3)));
}

TEST_CASE("sublattice counts and residue classes") {
  const IntMatrix even = IntMatrix::from_rows({{2, 0}, {0, 2}});
  CHECK(count_sublattice(cube(2), even) == 1);
  CHECK(count_sublattice(cube(2, 2), even) == 9);
  CHECK_THROWS(count_sublattice(cube(2), IntMatrix::from_rows({{1, 1}, {2, 2}})));

  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + trial % 2;
    const VPolytope p = random_symmetric_polytope(rng, n, 4);
    const auto basis = random_independent_vectors(rng, n, 3);
    const IntMatrix b = IntMatrix::from_rows(basis);
    const auto classes = residue_class_counts(p, b);
    CHECK(Integer(classes.size()) == lattice_index(b));
    Integer sum = 0;
    for (const auto& [rep, k] : classes) sum += k;
    CHECK(sum == count(p).total);
    const IntVector zero(n, Integer(0));
    CHECK(classes.at(zero) == count_sublattice(p, b));
  }
}

TEST_CASE("row lattice membership") {
  const IntMatrix h = hnf(IntMatrix::from_rows({{2, 1}, {0, 3}})).h;
  CHECK(in_row_lattice(h, {2, 1}));
  CHECK(in_row_lattice(h, {4, 5}));
  CHECK_FALSE(in_row_lattice(h, {1, 0}));
}
