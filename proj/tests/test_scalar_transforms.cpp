#include <gtest/gtest.h>

#include <random>

#include "favest/diagnostics.hpp"
#include "favest/quadrature.hpp"
#include "favest/scalar_transforms.hpp"

using namespace favest;

namespace {

std::vector<Complex> random_values(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<Complex> v(n);
  for (auto& x : v) x = {g(rng), g(rng)};
  return v;
}

ScalarCoefficients random_scalar(int L, unsigned seed) {
  ScalarCoefficients c(L);
  const auto v = random_values(c.size(), seed);
  std::copy(v.begin(), v.end(), c.values().begin());
  return c;
}

double max_diff(std::span<const Complex> a, std::span<const Complex> b) {
  double w = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) w = std::max(w, std::abs(a[i] - b[i]));
  return w;
}

}  // namespace

TEST(ScalarTransforms, FastForwardMatchesDirect) {
  for (int L : {0, 1, 5, 17}) {
    const auto [grid, rule] = gen_gl_tensor(2 * L + 3);
    const auto f = random_values(rule.size(), 1);
    const auto a = forward_sht_direct(f, rule, L);
    const auto b = forward_sht_fast(f, grid, L);
    EXPECT_LT(max_diff(a.values(), b.values()), 1e-12) << L;
  }
}

TEST(ScalarTransforms, FastAdjointMatchesDirect) {
  for (int L : {0, 2, 9, 20}) {
    const auto [grid, rule] = gen_gl_tensor(2 * L);
    const auto g = random_scalar(L, 2);
    const auto a = adjoint_sht_direct(g, rule.points);
    const auto b = adjoint_sht_fast(g, grid);
    EXPECT_LT(max_diff(a, b), 1e-12) << L;
  }
}

TEST(ScalarTransforms, BandLimitedRoundTrip) {
  const int L = 24;
  const auto [grid, rule] = gen_gl_tensor(2 * L);
  const auto g = random_scalar(L, 3);
  const auto f = adjoint_sht_fast(g, grid);
  EXPECT_LT(max_diff(forward_sht_fast(f, grid, L).values(), g.values()), 1e-12);
  EXPECT_LT(max_diff(forward_sht_direct(f, rule, L).values(), g.values()), 1e-12);
}

TEST(ScalarTransforms, AdjointnessUnderQuadratureInnerProduct) {
  const int L = 10;
  const auto [grid, rule] = gen_gl_tensor(21);
  const auto f = random_values(rule.size(), 4);
  const auto g = random_scalar(L, 5);
  const auto Sg = adjoint_sht_fast(g, grid);
  const auto Ff = forward_sht_fast(f, grid, L);
  Complex lhs{}, rhs{};
  for (std::size_t k = 0; k < f.size(); ++k) lhs += rule.weights[k] * std::conj(Sg[k]) * f[k];
  for (std::size_t i = 0; i < g.size(); ++i) rhs += std::conj(g.values()[i]) * Ff.values()[i];
  EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-11);
}

TEST(ScalarTransforms, ConstantFieldHasOnlyMeanCoefficient) {
  const auto [grid, rule] = gen_gl_tensor(8);
  const std::vector<Complex> one(rule.size(), 1.0);
  const auto c = forward_sht_fast(one, grid, 3);
  EXPECT_NEAR(c(0, 0).real(), std::sqrt(kFourPi), 1e-13);
  for (std::size_t i = 1; i < c.size(); ++i) EXPECT_LT(std::abs(c.values()[i]), 1e-13);
}

TEST(ScalarTransforms, FastPathNeedsEnoughLongitudes) {
  const auto grid = gl_tensor_grid(6);  // n_phi = 7
  const std::vector<Complex> f(grid.size());
  EXPECT_NO_THROW(forward_sht_fast(f, grid, 3));
  EXPECT_THROW(forward_sht_fast(f, grid, 4), PreconditionError);
  EXPECT_THROW(adjoint_sht_fast(ScalarCoefficients(4), grid), PreconditionError);
}

TEST(ScalarTransforms, LengthMismatchIsRejected) {
  const auto [grid, rule] = gen_gl_tensor(6);
  const std::vector<Complex> f(rule.size() - 1);
  EXPECT_THROW(forward_sht_direct(f, rule, 2), DomainError);
  EXPECT_THROW(forward_sht_fast(f, grid, 2), DomainError);
}

TEST(ScalarTransforms, DeterministicForFixedThreadCount) {
  const auto rule = gl_rule(30);
  const auto f = random_values(rule.size(), 6);
  const int saved = num_threads();
  set_num_threads(4);
  const auto a = forward_sht_direct(f, rule, 12);
  const auto b = forward_sht_direct(f, rule, 12);
  set_num_threads(1);
  const auto c = forward_sht_direct(f, rule, 12);
  set_num_threads(saved);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a.values()[i], b.values()[i]);
  EXPECT_LT(max_diff(a.values(), c.values()), 1e-13);
}
