#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "favest/diagnostics.hpp"
#include "favest/quadrature.hpp"
#include "favest/vsh.hpp"

using namespace favest;

namespace {

// grad* Y_{l,m} by central differences in (theta, phi).
CVec3 numeric_gradient(int l, int m, const SpherePoint& p) {
  const double h = 1e-6, th = p.theta(), ph = p.phi();
  const auto Y = [&](double t, double f) { return eval_ylm(l, m, SpherePoint::from_angles(t, f)); };
  const Complex dth = (Y(th + h, ph) - Y(th - h, ph)) / (2 * h);
  const Complex dph = (Y(th, ph + h) - Y(th, ph - h)) / (2 * h) / std::sin(th);
  const Vec3 et{std::cos(th) * std::cos(ph), std::cos(th) * std::sin(ph), -std::sin(th)};
  const Vec3 ep{-std::sin(ph), std::cos(ph), 0.0};
  CVec3 g;
  for (int i = 0; i < 3; ++i) g[i] = dth * et[i] + dph * ep[i];
  return g;
}

CVec3 cross(const Vec3& x, const CVec3& v) {
  return {x[1] * v[2] - x[2] * v[1], x[2] * v[0] - x[0] * v[2], x[0] * v[1] - x[1] * v[0]};
}

double max_diff(const CVec3& a, const CVec3& b) {
  double w = 0.0;
  for (int i = 0; i < 3; ++i) w = std::max(w, std::abs(a[i] - b[i]));
  return w;
}

}  // namespace

// The first family is the normalized surface gradient of Y_{l,m}; the second
// is its rotation by x cross.
TEST(Vsh, FamiliesAreNormalizedGradientAndRotatedGradient) {
  const auto pts = random_sphere_points(20, 8);
  for (const auto& p : pts) {
    if (p.sin_theta() < 0.05) continue;
    for (int l = 1; l <= 8; ++l) {
      for (int m = -l; m <= l; ++m) {
        const double s = 1.0 / std::sqrt(l * (l + 1.0));
        CVec3 g = numeric_gradient(l, m, p);
        for (auto& c : g) c *= s;
        const auto y = eval_vsh(l, m, p);
        EXPECT_LT(max_diff(y.div, g), 1e-7) << l << ' ' << m;
        EXPECT_LT(max_diff(y.curl, cross(p.cartesian(), g)), 1e-7) << l << ' ' << m;
      }
    }
  }
}

TEST(Vsh, TangentEverywhere) {
  const auto pts = random_sphere_points(50, 9);
  for (const auto& p : pts) {
    for (int l = 1; l <= 10; ++l) {
      for (int m = -l; m <= l; ++m) {
        const auto y = eval_vsh(l, m, p);
        EXPECT_LT(std::abs(dot(y.div, p.cartesian())), 1e-13);
        EXPECT_LT(std::abs(dot(y.curl, p.cartesian())), 1e-13);
      }
    }
  }
}

TEST(Vsh, OrthonormalUnderExactQuadrature) {
  const int L = 6;
  const auto rule = gl_rule(2 * L + 2);
  std::vector<std::vector<CVec3>> fam;  // all y^div then all y^curl
  for (int kind = 0; kind < 2; ++kind) {
    for (int l = 1; l <= L; ++l) {
      for (int m = -l; m <= l; ++m) {
        std::vector<CVec3> v;
        for (const auto& p : rule.points) {
          const auto y = eval_vsh(l, m, p);
          v.push_back(kind == 0 ? y.div : y.curl);
        }
        fam.push_back(std::move(v));
      }
    }
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < fam.size(); ++i) {
    for (std::size_t j = 0; j < fam.size(); ++j) {
      Complex s{};
      for (std::size_t k = 0; k < rule.size(); ++k) {
        for (int c = 0; c < 3; ++c) s += rule.weights[k] * std::conj(fam[i][k][c]) * fam[j][k][c];
      }
      worst = std::max(worst, std::abs(s - (i == j ? 1.0 : 0.0)));
    }
  }
  EXPECT_LT(worst, 1e-12);
}

TEST(Vsh, SphericalComponentsReproduceCartesian) {
  const auto p = SpherePoint::from_angles(0.9, 5.1);
  const auto bd = eval_bd(3, -2, p);
  const auto y = eval_vsh(3, -2, p);
  const double r = 1.0 / std::sqrt(2.0);
  const Complex I{0.0, 1.0};
  EXPECT_NEAR(std::abs(y.div[0] + r * (bd.b_plus - bd.b_minus)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(y.div[1] + r * I * (bd.b_plus + bd.b_minus)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(y.curl[2] - bd.d_zero), 0.0, 1e-15);
}

TEST(Vsh, RejectsDegreeZeroAndBadOrder) {
  const auto p = SpherePoint::from_angles(1.0, 1.0);
  EXPECT_THROW(eval_vsh(0, 0, p), DomainError);
  EXPECT_THROW(eval_bd(2, 3, p), DomainError);
}

TEST(VshDirect, ForwardOfSingleHarmonicIsUnitCoefficient) {
  const int L = 5;
  const auto rule = gl_rule(2 * L + 2);
  std::vector<CVec3> v;
  for (const auto& p : rule.points) v.push_back(eval_vsh(4, -1, p).curl);
  const auto c = forward_vsht_direct(TangentFieldSamples(rule.points, v), rule, L);
  for (int l = 1; l <= L; ++l) {
    for (int m = -l; m <= l; ++m) {
      EXPECT_LT(std::abs(c.div(l, m)), 1e-13);
      EXPECT_NEAR(std::abs(c.curl(l, m) - ((l == 4 && m == -1) ? 1.0 : 0.0)), 0.0, 1e-13);
    }
  }
}

TEST(VshDirect, AdjointMatchesTermwiseSum) {
  VectorCoefficients c(3);
  c.div.at(2, 1) = {0.5, -1.0};
  c.curl.at(3, -3) = 2.0;
  const auto pts = random_sphere_points(10, 10);
  const auto s = adjoint_vsht_direct(c, pts);
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const auto a = eval_vsh(2, 1, pts[k]).div;
    const auto b = eval_vsh(3, -3, pts[k]).curl;
    CVec3 want;
    for (int i = 0; i < 3; ++i) want[i] = c.div(2, 1) * a[i] + 2.0 * b[i];
    EXPECT_LT(max_diff(s.values[k], want), 1e-14);
  }
}
