#include <gtest/gtest.h>

#include <limits>

#include "cfslv/eigen.hpp"
#include "cfslv/errors.hpp"
#include "cfslv/gram.hpp"
#include "cfslv/oracle.hpp"
#include "cfslv/solver_dpk.hpp"
#include "cfslv/solver_single.hpp"
#include "support.hpp"

namespace cfslv {
namespace {

std::vector<double> sorted_first_coords(const VertexSet& vs) {
  std::vector<double> xs;
  for (const auto& p : vs.points) xs.push_back(p[0]);
  std::sort(xs.begin(), xs.end());
  return xs;
}

Matrix gaussian_matrix(std::mt19937_64& rng, std::size_t n, std::size_t k) {
  Matrix m(n, k);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = testing::gaussian_vector(rng, k);
    for (std::size_t j = 0; j < k; ++j) m(i, j) = row[j];
  }
  return m;
}

// Random D − VVᵀ pair with a non-uniform diagonal.
std::pair<GramMatrix, DpkDecomposition> random_dpk(std::mt19937_64& rng, std::size_t n, std::size_t k) {
  const Matrix v = gaussian_matrix(rng, n, k);
  const double top = symmetric_eig(v * v.transposed()).values.front();
  std::uniform_real_distribution<double> slack(0.2, 2.0);
  std::vector<double> d(n);
  for (double& x : d) x = top + slack(rng);
  DpkDecomposition dec(d, v);
  return {GramMatrix(dec.to_matrix()), dec};
}

TEST(VertexSet, CoincidentRowsMerge) {
  const double r2 = std::sqrt(2.0);
  const auto vs = vertex_set(DpkDecomposition({5, 5}, Matrix{{r2}, {r2}}), std::sqrt(3.0));
  EXPECT_EQ(vs.dim, 1u);
  const auto xs = sorted_first_coords(vs);
  const std::vector<double> c{-2.5, -1.5, -0.5, 0.5, 1.5, 2.5};
  ASSERT_EQ(xs.size(), c.size());
  for (std::size_t i = 0; i < c.size(); ++i) EXPECT_NEAR(xs[i], c[i] * 5 / r2, 1e-12);
}

TEST(VertexSet, ZeroRowContributesNothing) {
  const auto vs = vertex_set(DpkDecomposition({4, 4}, Matrix{{std::sqrt(3.0)}, {0}}), 1.0);
  const auto xs = sorted_first_coords(vs);
  const std::vector<double> c{-1.5, -0.5, 0.5, 1.5};
  ASSERT_EQ(xs.size(), c.size());
  for (std::size_t i = 0; i < c.size(); ++i) EXPECT_NEAR(xs[i], c[i] * 4 / std::sqrt(3.0), 1e-12);
}

TEST(VertexSet, OneByOne) {
  const auto xs = sorted_first_coords(vertex_set(DpkDecomposition({2}, Matrix{{1}}), 1.0));
  const std::vector<double> expected{-3, -1, 1, 3};
  ASSERT_EQ(xs.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_NEAR(xs[i], expected[i], 1e-15);
}

TEST(VertexSet, TwoDimensionalGrid) {
  // D⁻¹V = I₂: vertices are the half-integer grid points.
  const auto vs = vertex_set(DpkDecomposition({1, 1}, Matrix{{1, 0}, {0, 1}}), 1.0);
  EXPECT_EQ(vs.points.size(), 16u);
  for (const auto& p : vs.points) {
    EXPECT_NEAR(std::abs(std::fmod(std::abs(p[0]), 1.0)), 0.5, 1e-12);
    EXPECT_NEAR(std::abs(std::fmod(std::abs(p[1]), 1.0)), 0.5, 1e-12);
  }
}

TEST(VertexSet, BudgetAndRadius) {
  EXPECT_THROW(vertex_set(DpkDecomposition({1, 1}, Matrix{{1}, {1}}), 100.0, 10), ResourceError);
  EXPECT_THROW(vertex_set(DpkDecomposition({1, 1}, Matrix{{1}, {1}}), 0.9), InvalidArgument);
}

TEST(Binomial, ValuesAndSaturation) {
  EXPECT_EQ(binomial(5, 2), 10u);
  EXPECT_EQ(binomial(4, 0), 1u);
  EXPECT_EQ(binomial(3, 5), 0u);
  EXPECT_EQ(binomial(60, 30), 118264581564861424ull);
  EXPECT_EQ(binomial(67, 33), 14226520737620288370ull);
  EXPECT_EQ(binomial(200, 100), std::numeric_limits<std::uint64_t>::max());
  EXPECT_EQ(vertex_bound(5, 2, std::sqrt(3.0)), 10u * 36u);
}

TEST(SolveDpk, SingleAntennaExample) {
  const double r2 = std::sqrt(2.0);
  const auto r = solve_dpk(GramMatrix(Matrix{{3, -2}, {-2, 3}}), DpkDecomposition({5, 5}, Matrix{{r2}, {r2}}));
  EXPECT_NEAR(r.f_star, 2.0, 1e-12);
}

TEST(SolveDpk, MimoExample) {
  const auto mg = build_gram_mimo(MimoChannel(Matrix{{1}, {1}}, 2));
  const auto r = solve_dpk(mg.gram, *mg.decomposition);
  EXPECT_NEAR(r.f_star, 0.4, 1e-12);
  EXPECT_EQ(r.a_star, (CoefficientVector{1, 1}));
}

TEST(SolveDpk, DiagonalExample) {
  const GramMatrix g(Matrix{{0.25, 0}, {0, 1}});
  const auto r = solve_dpk(g, DpkDecomposition({1, 1}, Matrix{{std::sqrt(3.0) / 2}, {0}}));
  EXPECT_NEAR(r.f_star, 0.25, 1e-15);
  EXPECT_EQ(r.a_star, (CoefficientVector{1, 0}));
}

TEST(SolveDpk, RejectsMismatchedDecomposition) {
  EXPECT_THROW(solve_dpk(GramMatrix(Matrix::identity(2)), DpkDecomposition({1, 1}, Matrix{{0.1}, {0.1}})),
               InvalidArgument);
}

TEST(SolveDpk, CombinationBudget) {
  const auto mg = build_gram_mimo(MimoChannel(Matrix{{1, 0.3}, {0.2, 1}, {0.5, -0.7}}, 3));
  DpkSolverOptions options;
  options.combination_budget = 5;
  EXPECT_THROW(solve_dpk(mg.gram, *mg.decomposition, options), ResourceError);
}

TEST(SolveMimo, ZeroChannelFallsBack) {
  const auto r = solve_mimo(MimoChannel(Matrix{{0}, {0}, {0}}, 2));
  EXPECT_DOUBLE_EQ(r.f_star, 1.0);
  EXPECT_EQ(r.a_star, (CoefficientVector{1, 0, 0}));
}

TEST(SolveDpk, AgreesWithSingleSolver) {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + trial % 5;
    const ChannelVector h(testing::gaussian_vector(rng, n));
    const double p = testing::log_uniform(rng, 0.1, 10);
    const auto r1 = solve_single(h, p);
    const auto r2 = solve_dpk(build_gram_single(h, p), dpk_from_single(h, p));
    EXPECT_TRUE(testing::relative_equal(r2.f_star, r1.f_star)) << r2.f_star << " vs " << r1.f_star;
  }
}

TEST(SolveDpk, SharedCellMatchesExhaustive) {
  std::mt19937_64 rng(61);
  DpkSolverOptions exhaustive;
  exhaustive.strategy = SubsetStrategy::kExhaustive;
  int compared = 0;
  while (compared < 30) {
    const std::size_t n = 2 + compared % 2;
    const std::size_t k = 1 + compared % 2;
    const auto mg = build_gram_mimo(MimoChannel(gaussian_matrix(rng, n, k), testing::log_uniform(rng, 0.1, 0.6)));
    if (!mg.decomposition || search_radius_psi(mg.gram) > 2.0) continue;
    const auto a = solve_dpk(mg.gram, *mg.decomposition);
    const auto b = solve_dpk(mg.gram, *mg.decomposition, exhaustive);
    EXPECT_DOUBLE_EQ(a.f_star, b.f_star);
    ++compared;
  }
}

TEST(SolveDpk, GeneralDiagonalMatchesOracle) {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + trial % 4;
    const std::size_t k = 1 + trial % 2;
    const auto [g, dec] = random_dpk(rng, n, k);
    const double psi = search_radius_psi(g);
    const auto r = solve_dpk(g, dec);
    const auto o = brute_force_slv(g, std::max(1.0, psi));
    EXPECT_TRUE(testing::relative_equal(r.f_star, o.f_star)) << r.f_star << " vs " << o.f_star;
    EXPECT_TRUE(testing::relative_equal(r.f_star, testing::naive_min(g.matrix(), static_cast<Integer>(psi))));
  }
}

class MimoRandom : public ::testing::TestWithParam<int> {};

TEST_P(MimoRandom, OracleAndStructure) {
  std::mt19937_64 rng(2000 + GetParam());
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t n = 2 + (trial + GetParam()) % 4;
    const std::size_t k = 1 + trial % 2;
    const double p = testing::log_uniform(rng, 0.1, 5);
    const auto mg = build_gram_mimo(MimoChannel(gaussian_matrix(rng, n, k), p));
    ASSERT_TRUE(mg.decomposition.has_value());
    const auto& g = mg.gram;
    const auto& dec = *mg.decomposition;
    const double psi = search_radius_psi(g);
    const auto r = solve_dpk(g, dec);
    const auto a = r.a_star.entries();

    EXPECT_DOUBLE_EQ(r.f_star, quadratic_form(g, r.a_star));
    const auto o = brute_force_slv(g, std::max(1.0, psi));
    EXPECT_TRUE(testing::relative_equal(r.f_star, o.f_star)) << r.f_star << " vs " << o.f_star;
    EXPECT_LE(testing::norm(a), psi + 1e-9);
    EXPECT_LE(r.breakpoint_count, vertex_bound(n, dec.rank(), psi));
    EXPECT_GE(r.f_star, g.min_eigenvalue() * (1 - 1e-12));

    if (!testing::is_unit(a)) {
      ASSERT_EQ(r.witness.size(), dec.rank());
      const auto b = dec.scaled_v() * r.witness;
      for (std::size_t i = 0; i < n; ++i) {
        EXPECT_GE(b[i], static_cast<double>(a[i]) - 0.5 - 1e-9);
        EXPECT_LE(b[i], static_cast<double>(a[i]) + 0.5 + 1e-9);
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, MimoRandom, ::testing::Range(0, 4));

}  // namespace
}  // namespace cfslv
