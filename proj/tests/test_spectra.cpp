#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "spectile/spectra/spectra.hpp"

using namespace spectile;
using namespace spectile::fixtures;

namespace {

Lattice diag(std::initializer_list<Rational> entries) {
  std::vector<RVec> gens;
  std::size_t i = 0;
  for (const auto& e : entries) {
    RVec g(entries.size(), Rational(0));
    g[i++] = e;
    gens.push_back(g);
  }
  return Lattice(gens);
}

Region interval() { return Region(unit_cube(1)); }

Region two_intervals() {
  return Region(BoxUnion({{RVec{Rational(0)}, RVec{Rational(1, 2)}}, {RVec{Rational(1)}, RVec{Rational(3, 2)}}}));
}

PointSetSpec spectrum_of_two_intervals(std::vector<RVec> exclude = {}) {
  return PointSetSpec(PeriodicPoints{Lattice({RVec{Rational(2)}}), {RVec{Rational(0)}, RVec{Rational(1, 2)}}},
                      std::move(exclude));
}

}  // namespace

TEST(DualLattice, IntegerLatticeIsSelfDual) {
  for (std::size_t d = 1; d <= 4; ++d) EXPECT_EQ(dual_lattice(Lattice::integer(d)), Lattice::integer(d));
}

TEST(DualLattice, Diagonal) {
  EXPECT_EQ(dual_lattice(diag({2, 1})), diag({Rational(1, 2), 1}));
  EXPECT_EQ(dual_lattice(diag({2, 1})).determinant(), Rational(1, 2));
}

TEST(DualLattice, HexagonalBasisIntegrality) {
  const Lattice l({rv({1, 1}), rv({-1, 2})});
  const Lattice dual = dual_lattice(l);
  EXPECT_EQ(dual.determinant() * l.determinant(), 1);
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<long> c(-9, 9);
  for (int i = 0; i < 20; ++i) {
    const RVec x = l.point({c(rng), c(rng)});
    const RVec y = dual.point({c(rng), c(rng)});
    EXPECT_EQ(boost::multiprecision::denominator(Rational(dot(x, y))), 1);
  }
}

TEST(DualLattice, Involution) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 10; ++i) {
    std::vector<RVec> gens;
    for (int k = 0; k < 3; ++k) gens.push_back(random_rational_vector(rng, 3, 4, 5));
    if (linalg::rank(gens) < 3) continue;
    const Lattice l(gens);
    EXPECT_EQ(dual_lattice(dual_lattice(l)), l);
  }
}

TEST(Orthogonality, CubeWithIntegerLattice) {
  for (std::size_t d = 1; d <= 3; ++d) {
    const auto report =
        orthogonality_check(Region(unit_cube(d)), PointSetSpec::lattice(Lattice::integer(d)), 5, 1e-8);
    EXPECT_TRUE(report.pass);
    EXPECT_GT(report.differences_checked, 0u);
  }
}

TEST(Orthogonality, CubeWithHalfIntegerLatticeFails) {
  const auto report = orthogonality_check(Region(unit_cube(2)),
                                          PointSetSpec::lattice(diag({Rational(1, 2), Rational(1, 2)})), 5, 1e-8);
  EXPECT_FALSE(report.pass);
  bool found = false;
  for (const auto& v : report.violations) found = found || (v == DVec{0.5, 0.0});
  EXPECT_TRUE(found);
}

TEST(Orthogonality, TwoIntervalsExampleSpectrum) {
  EXPECT_TRUE(orthogonality_check(two_intervals(), spectrum_of_two_intervals(), 10, 1e-8).pass);
}

TEST(Orthogonality, InvariantUnderTranslation) {
  std::mt19937_64 rng(4);
  const Region cube(unit_cube(2));
  const std::vector<PointSetSpec> sets{PointSetSpec::lattice(Lattice::integer(2)),
                                      PointSetSpec::lattice(diag({Rational(1, 2), 1})),
                                      PointSetSpec::explicit_points({rv({0, 0}), rv({1, 0}), rv({0, 3}), rv({2, 2})}),
                                      PointSetSpec::explicit_points({rv({0, 0}), {Rational(1, 3), 0}})};
  for (const auto& s : sets) {
    const auto base = orthogonality_check(cube, s, 5, 1e-8);
    for (int i = 0; i < 3; ++i) {
      const auto moved = orthogonality_check(cube, s.translated(random_rational_vector(rng, 2, 5, 7)), 5, 1e-8);
      EXPECT_EQ(moved.pass, base.pass);
      EXPECT_EQ(moved.differences_checked, base.differences_checked);
    }
  }
}

TEST(Orthogonality, SinglePointHasEmptyWindow) {
  try {
    orthogonality_check(Region(unit_cube(2)), PointSetSpec::explicit_points({rv({0, 0})}), 5, 1e-8);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::WindowEmpty);
  }
}

TEST(Orthogonality, ParabolicCubeIsOrthogonalForSquare) {
  const auto report = orthogonality_check(Region(unit_cube(2)), PointSetSpec::parabolic_cube(std::sqrt(2.0)), 5, 1e-8);
  EXPECT_TRUE(report.pass);
}

TEST(Completeness, IntervalWithIntegers) {
  const auto grid = GridSpec{{0.0}, {1.0}, 101};
  const auto report = completeness_residual(interval(), PointSetSpec::lattice(Lattice::integer(1)), grid, 500);
  EXPECT_LE(report.residual, 1e-2);
  EXPECT_GE(report.min_terms, 1000u);
  EXPECT_EQ(report.grid_points, 101u);
}

TEST(Completeness, RemovingAPointBreaksCompleteness) {
  const auto grid = GridSpec{{0.0}, {1.0}, 101};
  const auto set = PointSetSpec(LatticePoints{Lattice::integer(1)}, {RVec{Rational(0)}});
  const auto report = completeness_residual(interval(), set, grid, 500);
  EXPECT_GE(report.residual, 0.5);
  EXPECT_LT(report.worst_point[0], 0.05);
}

TEST(Completeness, TwoIntervalsExample) {
  const auto grid = GridSpec{{0.0}, {2.0}, 101};
  EXPECT_LE(completeness_residual(two_intervals(), spectrum_of_two_intervals(), grid, 500).residual, 1e-2);
  const auto broken = completeness_residual(two_intervals(), spectrum_of_two_intervals({RVec{Rational(1, 2)}}), grid, 500);
  EXPECT_GE(broken.residual, 0.5);
}

TEST(Completeness, ResidualShrinksWithTruncation) {
  const auto grid = GridSpec{{0.0}, {1.0}, 51};
  const auto set = PointSetSpec::lattice(Lattice::integer(1));
  double previous = 1e9;
  for (double rt : {100.0, 200.0, 400.0}) {
    const double r = completeness_residual(interval(), set, grid, rt).residual;
    EXPECT_LE(r, previous + 1e-3);
    previous = r;
  }
}

TEST(LatticeTiling, CubeWithIntegerLattice) {
  for (std::size_t d = 1; d <= 3; ++d) {
    const auto report = lattice_tiling_check(Region(unit_cube(d)), Lattice::integer(d), 50, 1e-8);
    EXPECT_TRUE(report.pass);
    EXPECT_EQ(report.dual_vectors_checked, 50u);
  }
}

TEST(LatticeTiling, CubeWithDoubledLatticeFails) {
  const auto report = lattice_tiling_check(Region(unit_cube(2)), diag({2, 2}), 20, 1e-8);
  EXPECT_FALSE(report.pass);
  EXPECT_FALSE(report.volume_matches);
}

TEST(LatticeTiling, HexagonWithItsLattice) {
  EXPECT_TRUE(lattice_tiling_check(Region(hexagon()), Lattice({rv({1, 1}), rv({-1, 2})}), 100, 1e-8).pass);
  // Same determinant, wrong lattice.
  EXPECT_FALSE(lattice_tiling_check(Region(hexagon()), diag({3, 1}), 100, 1e-8).pass);
}

TEST(LatticeTiling, TilingLatticeDualIsAnOrthogonalSet) {
  const std::vector<std::pair<Region, Lattice>> cases{{Region(unit_cube(2)), Lattice::integer(2)},
                                                      {Region(hexagon()), Lattice({rv({1, 1}), rv({-1, 2})})}};
  for (const auto& [region, l] : cases) {
    ASSERT_TRUE(lattice_tiling_check(region, l, 30, 1e-8).pass);
    EXPECT_TRUE(orthogonality_check(region, PointSetSpec::lattice(dual_lattice(l)), 4, 1e-8).pass);
  }
}
