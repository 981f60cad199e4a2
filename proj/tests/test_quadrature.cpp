#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "favest/diagnostics.hpp"
#include "favest/quadrature.hpp"

using namespace favest;

TEST(GaussLegendre, SmallRules) {
  const auto g1 = gauss_legendre(1);
  EXPECT_DOUBLE_EQ(g1.nodes[0], 0.0);
  EXPECT_DOUBLE_EQ(g1.weights[0], 2.0);
  const auto g2 = gauss_legendre(2);
  EXPECT_NEAR(g2.nodes[1], 1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(g2.nodes[0], -1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(g2.weights[0], 1.0, 1e-15);
  const auto g3 = gauss_legendre(3);
  EXPECT_NEAR(g3.nodes[2], std::sqrt(0.6), 1e-15);
  EXPECT_EQ(g3.nodes[1], 0.0);
  EXPECT_NEAR(g3.weights[1], 8.0 / 9.0, 1e-15);
  EXPECT_NEAR(g3.weights[0], 5.0 / 9.0, 1e-15);
  EXPECT_THROW(gauss_legendre(0), DomainError);
}

TEST(GaussLegendre, FivePointFrozenValues) {
  const auto g = gauss_legendre(5);
  EXPECT_NEAR(g.nodes[4], 0.90617984593866399280, 1e-15);
  EXPECT_NEAR(g.nodes[3], 0.53846931010568309104, 1e-15);
  EXPECT_NEAR(g.weights[4], 0.23692688505618908751, 1e-15);
  EXPECT_NEAR(g.weights[3], 0.47862867049936646804, 1e-15);
  EXPECT_NEAR(g.weights[2], 0.56888888888888888889, 1e-15);
}

TEST(GaussLegendre, IntegratesMonomialsExactly) {
  for (int n : {4, 17, 64}) {
    const auto g = gauss_legendre(n);
    for (int k = 0; k <= 2 * n - 1; ++k) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += g.weights[i] * std::pow(g.nodes[i], k);
      EXPECT_NEAR(s, (k % 2) ? 0.0 : 2.0 / (k + 1), 1e-13) << n << ' ' << k;
    }
  }
}

TEST(GlTensor, SizesAndWeights) {
  const auto [g3, r3] = gen_gl_tensor(3);
  EXPECT_EQ(r3.size(), 8u);
  EXPECT_NEAR(r3.weight_sum(), kFourPi, 1e-13);
  EXPECT_EQ(gl_rule(0).size(), 1u);
  EXPECT_NEAR(gl_rule(0).weight_sum(), kFourPi, 1e-13);
  EXPECT_THROW(gl_tensor_grid(-1), DomainError);
  const auto g = gl_tensor_grid(10);
  EXPECT_EQ(g.n_rings(), 6u);
  EXPECT_EQ(g.n_phi, 11);
  for (std::size_t i = 1; i < g.n_rings(); ++i) EXPECT_GT(g.ring_thetas[i], g.ring_thetas[i - 1]);
  EXPECT_EQ(r3.kind, RuleKind::GlTensor);
  EXPECT_TRUE(r3.grid.has_value());
}

TEST(GlTensor, CertifiedUpToClaimedDegreeOnly) {
  for (int t : {0, 1, 2, 5, 12, 31, 40}) {
    const auto rule = gl_rule(t);
    const auto rep = verify_exactness(rule, t);
    EXPECT_TRUE(rep.pass) << t << ' ' << rep.max_defect;
    EXPECT_LT(rep.max_defect, 1e-12);
    EXPECT_FALSE(verify_exactness(rule, t + 1).pass) << t;
  }
}

TEST(Exactness, TensorShortcutAgreesWithDirectSum) {
  auto rule = gl_rule(9);
  const auto fast = verify_exactness(rule, 12);
  rule.grid.reset();
  const auto slow = verify_exactness(rule, 12);
  EXPECT_NEAR(fast.max_defect, slow.max_defect, 1e-12);
}

TEST(Exactness, RandomPointsFail) {
  QuadratureRule r;
  r.points = random_sphere_points(50, 1);
  r.weights.assign(50, kFourPi / 50);
  EXPECT_FALSE(verify_exactness(r, 3).pass);
  EXPECT_TRUE(verify_exactness(r, 0).pass);
  EXPECT_THROW(verify_exactness(r, -1), DomainError);
}

TEST(Icosahedron, IsAFiveDesign) {
  const auto r = icosahedron_design();
  EXPECT_EQ(r.size(), 12u);
  EXPECT_TRUE(verify_exactness(r, 5).pass);
  EXPECT_FALSE(verify_exactness(r, 6).pass);
}

TEST(PointFiles, DesignFromStream) {
  std::istringstream in("# comment\n0 0 1\n\n0 0 -1\n");
  const auto r = load_design(in, 1);
  EXPECT_EQ(r.size(), 2u);
  EXPECT_DOUBLE_EQ(r.weights[0], 2 * kPi);
  EXPECT_EQ(r.exactness, 1);
  EXPECT_TRUE(verify_exactness(r, 1).pass);
}

TEST(PointFiles, MalformedInputIsRejected) {
  std::istringstream bad_number("0 0 x\n");
  EXPECT_THROW(load_rule(bad_number), DomainError);
  std::istringstream bad_columns("0 0\n");
  EXPECT_THROW(load_rule(bad_columns), DomainError);
  std::istringstream off_sphere("0 0 2\n");
  EXPECT_THROW(load_rule(off_sphere), DomainError);
  std::istringstream mixed("0 0 1 1\n0 0 -1\n");
  EXPECT_THROW(load_rule(mixed), DomainError);
  std::istringstream empty("# nothing\n");
  EXPECT_THROW(load_rule(empty), DomainError);
  std::istringstream weighted_design("0 0 1 2\n");
  EXPECT_THROW(load_design(weighted_design, 1), DomainError);
  EXPECT_THROW(load_rule(std::string("/nonexistent/rule.txt")), DomainError);
}

TEST(PointFiles, WriteThenLoadIsLossless) {
  const auto r = gl_rule(7);
  std::stringstream io;
  write_rule(io, r);
  const auto back = load_rule(io, 7);
  ASSERT_EQ(back.size(), r.size());
  EXPECT_EQ(back.kind, RuleKind::Custom);
  for (std::size_t i = 0; i < r.size(); ++i) {
    EXPECT_DOUBLE_EQ(back.weights[i], r.weights[i]);
    EXPECT_NEAR(back.points[i].x(), r.points[i].x(), 1e-16);
  }
  EXPECT_TRUE(verify_exactness(back, 7).pass);
}
