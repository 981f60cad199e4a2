#include <gtest/gtest.h>

#include <cmath>

#include "favest/core_types.hpp"

using namespace favest;

TEST(FlatIndex, OrdersByDegreeThenOrder) {
  EXPECT_EQ(flat_index(0, 0), 0u);
  EXPECT_EQ(flat_index(1, -1), 1u);
  EXPECT_EQ(flat_index(1, 1), 3u);
  EXPECT_EQ(flat_index(2, -2), 4u);
  EXPECT_EQ(flat_index(3, 3), 15u);
  EXPECT_EQ(spectrum_size(3), 16u);
}

TEST(FlatIndex, RejectsOutOfRange) {
  EXPECT_THROW(flat_index(2, 3), DomainError);
  EXPECT_THROW(flat_index(-1, 0), DomainError);
}

TEST(SpherePoint, RejectsPointsOffTheSphere) {
  EXPECT_THROW(SpherePoint::from_cartesian(1.0, 1.0, 0.0), DomainError);
  EXPECT_THROW(SpherePoint::from_cartesian(0.0, 0.0, 0.0), DomainError);
  EXPECT_THROW(SpherePoint::from_cartesian(NAN, 0.0, 1.0), DomainError);
}

TEST(SpherePoint, RenormalizesWithinTolerance) {
  const auto p = SpherePoint::from_cartesian(0.0, 0.0, 1.0 + 1e-10);
  EXPECT_DOUBLE_EQ(p.z(), 1.0);
}

TEST(SpherePoint, AnglesRoundTrip) {
  for (double th : {0.1, 1.0, 2.0, 3.0}) {
    for (double ph : {0.0, 0.5, 3.0, 6.0}) {
      const auto p = SpherePoint::from_angles(th, ph);
      EXPECT_NEAR(p.theta(), th, 1e-14);
      EXPECT_NEAR(p.phi(), ph, 1e-14);
      const auto s = to_spherical(p);
      EXPECT_NEAR(s.theta, th, 1e-14);
    }
  }
}

TEST(SpherePoint, PoleHasZeroLongitude) {
  const auto n = SpherePoint::from_cartesian(0, 0, 1);
  const auto s = SpherePoint::from_cartesian(0, 0, -1);
  EXPECT_EQ(n.phi(), 0.0);
  EXPECT_EQ(n.theta(), 0.0);
  EXPECT_EQ(s.phi(), 0.0);
  EXPECT_DOUBLE_EQ(s.theta(), kPi);
}

TEST(ScalarCoefficients, ReadsOutsideTriangleAreZero) {
  ScalarCoefficients c(2);
  c.at(2, -1) = {1.0, 2.0};
  EXPECT_EQ(c(2, -1), Complex(1.0, 2.0));
  EXPECT_EQ(c(3, 0), Complex{});
  EXPECT_EQ(c(1, 2), Complex{});
  EXPECT_EQ(c(-1, 0), Complex{});
  EXPECT_THROW(c.at(3, 0), DomainError);
  EXPECT_THROW(c.at(1, 2), DomainError);
}

TEST(ScalarCoefficients, ResizedPadsAndTruncates) {
  ScalarCoefficients c(2);
  c.at(1, 1) = 3.0;
  c.at(2, 2) = 4.0;
  const auto up = c.resized(4);
  EXPECT_EQ(up.l_max(), 4);
  EXPECT_EQ(up(2, 2), Complex(4.0));
  EXPECT_EQ(up(4, 0), Complex{});
  const auto down = c.resized(1);
  EXPECT_EQ(down(1, 1), Complex(3.0));
  EXPECT_EQ(down.size(), 4u);
}

TEST(ScalarCoefficients, RejectsWrongLength) {
  EXPECT_THROW(ScalarCoefficients(2, std::vector<Complex>(8)), DomainError);
  EXPECT_THROW(ScalarCoefficients(-1), DomainError);
}

TEST(VectorCoefficients, Invariants) {
  EXPECT_THROW(VectorCoefficients(0), DomainError);
  ScalarCoefficients a(2), b(3);
  EXPECT_THROW(VectorCoefficients(a, b), DomainError);
  ScalarCoefficients c(2);
  c.at(0, 0) = 1.0;
  EXPECT_THROW(VectorCoefficients(a, c), DomainError);
  EXPECT_NO_THROW(VectorCoefficients(a, ScalarCoefficients(2)));
}

TEST(TangentFieldSamples, NormalDefect) {
  const auto p = SpherePoint::from_cartesian(0, 0, 1);
  TangentFieldSamples tangent({p}, {CVec3{1.0, Complex{0, 1}, 0.0}});
  EXPECT_TRUE(tangent.is_tangent());
  TangentFieldSamples normal({p}, {CVec3{0.0, 0.0, 1.0}});
  EXPECT_FALSE(normal.is_tangent());
  EXPECT_DOUBLE_EQ(normal.max_normal_defect(), 0.5);
  EXPECT_THROW(TangentFieldSamples({p, p}, {CVec3{}}), DomainError);
}

TEST(TensorGrid, RingMajorPoints) {
  TensorGrid g;
  g.ring_thetas = {0.5, 1.5, 2.5};
  g.ring_weights = {1, 1, 1};
  g.n_phi = 4;
  const auto pts = g.points();
  ASSERT_EQ(pts.size(), 12u);
  EXPECT_NEAR(pts[5].theta(), 1.5, 1e-14);
  EXPECT_NEAR(pts[5].phi(), kPi / 2, 1e-14);
}

TEST(QuadratureRule, WeightSum) {
  QuadratureRule r;
  r.weights = {1.0, 2.5};
  EXPECT_DOUBLE_EQ(r.weight_sum(), 3.5);
  EXPECT_STREQ(to_string(RuleKind::GlTensor), "gl-tensor");
}
