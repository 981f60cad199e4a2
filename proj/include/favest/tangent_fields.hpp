#pragma once

// Simulated tangent fields T = L s + grad* v built from a stream function s
// and a velocity potential v, where grad* is the surface gradient and
// L s = x cross grad* s is the surface curl.
//
//   Field A: s = Rossby-Haurwitz wave (degree 1 and 5 harmonics),
//            v = (Y_{4,0} + Y_{6,-3}) / 25.
//   Field B: same s, v = sum of four compactly supported cubic B-spline bumps.
//   Field C: s, v built from the kernel g(x; theta_c, lambda_c) with a
//            logarithmic singularity in its derivatives at the centre, plus a
//            latitude-only term int sin^14(2 xi) d xi in s.
//
// Harmonics inside s and v are real (orthonormal cosine/sine convention) so
// the fields are real. Bump and kernel centres are given in
// (latitude, longitude).

#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "favest/core_types.hpp"
#include "favest/legendre.hpp"

namespace favest {

/// Partial derivatives (d/dtheta, d/dphi) in colatitude/longitude.
struct AngularGradient {
  double d_theta = 0.0;
  double d_phi = 0.0;
};

struct ScalarSurfaceFunction {
  std::function<double(const SpherePoint&)> value;
  std::function<AngularGradient(const SpherePoint&)> gradient;  // optional
};

inline constexpr double kFiniteDifferenceStep = 1e-5;

/// grad* f = theta_hat df/dtheta + phi_hat (1/sin theta) df/dphi, in
/// Cartesian components.
inline Vec3 surface_gradient(const ScalarSurfaceFunction& fn, const SpherePoint& p) {
  const double theta = p.theta();
  const double phi = p.phi();
  const double st = p.sin_theta();
  AngularGradient g;
  if (fn.gradient) {
    if (st == 0.0) throw DomainError("surface_gradient: undefined at the pole");
    g = fn.gradient(p);
  } else {
    if (theta < 1e-6 || theta > kPi - 1e-6) {
      throw DomainError("surface_gradient: finite differences too close to a pole");
    }
    const double h = kFiniteDifferenceStep;
    const auto f = [&](double th, double ph) { return fn.value(SpherePoint::from_angles(th, ph)); };
    g.d_theta = (f(theta + h, phi) - f(theta - h, phi)) / (2.0 * h);
    g.d_phi = (f(theta, phi + h) - f(theta, phi - h)) / (2.0 * h);
  }
  const double ct = p.cos_theta();
  const double cp = std::cos(phi), sp = std::sin(phi);
  const Vec3 theta_hat{ct * cp, ct * sp, -st};
  const Vec3 phi_hat{-sp, cp, 0.0};
  const double gp = g.d_phi / st;
  return {g.d_theta * theta_hat[0] + gp * phi_hat[0], g.d_theta * theta_hat[1] + gp * phi_hat[1],
          g.d_theta * theta_hat[2] + gp * phi_hat[2]};
}

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

/// L f = x cross grad* f.
inline Vec3 surface_curl(const ScalarSurfaceFunction& fn, const SpherePoint& p) {
  return cross(p.cartesian(), surface_gradient(fn, p));
}

// ---------------------------------------------------------------------------
// Real spherical harmonics and their angular derivatives.

namespace detail {

// Y_{l,m} and dY_{l,m}/dtheta for m >= 0 (complex convention).
inline std::pair<Complex, Complex> ylm_with_theta_derivative(int l, int m, const SpherePoint& p) {
  const auto P = eval_legendre_block(l, p.cos_theta(), p.sin_theta());
  const double dp = 0.5 * (std::sqrt((l - m) * (l + m + 1.0)) * P(l, m + 1) -
                           std::sqrt((l + m) * (l - m + 1.0)) * P(l, m - 1));
  const Complex e = std::polar(1.0, m * p.phi());
  return {P(l, m) * e, dp * e};
}

}  // namespace detail

/// Orthonormal real harmonic: sqrt2 (-1)^m Re Y_{l,m} for m > 0,
/// sqrt2 (-1)^m Im Y_{l,|m|} for m < 0, Y_{l,0} for m = 0.
inline double real_ylm(int l, int m, const SpherePoint& p) {
  const int am = std::abs(m);
  const Complex y = eval_ylm(l, am, p);
  if (m == 0) return y.real();
  const double s = (am & 1) ? -std::sqrt(2.0) : std::sqrt(2.0);
  return m > 0 ? s * y.real() : s * y.imag();
}

inline AngularGradient real_ylm_gradient(int l, int m, const SpherePoint& p) {
  const int am = std::abs(m);
  const auto [y, dy] = detail::ylm_with_theta_derivative(l, am, p);
  const Complex dphi = Complex{0.0, static_cast<double>(am)} * y;
  if (m == 0) return {dy.real(), 0.0};
  const double s = (am & 1) ? -std::sqrt(2.0) : std::sqrt(2.0);
  if (m > 0) return {s * dy.real(), s * dphi.real()};
  return {s * dy.imag(), s * dphi.imag()};
}

/// Linear combination sum_i coeff_i * Yreal_{l_i, m_i} with analytic gradient.
inline ScalarSurfaceFunction real_harmonic_sum(std::vector<std::array<double, 3>> terms) {
  ScalarSurfaceFunction fn;
  fn.value = [terms](const SpherePoint& p) {
    double s = 0.0;
    for (const auto& t : terms) s += t[2] * real_ylm(static_cast<int>(t[0]), static_cast<int>(t[1]), p);
    return s;
  };
  fn.gradient = [terms](const SpherePoint& p) {
    AngularGradient g;
    for (const auto& t : terms) {
      const auto d = real_ylm_gradient(static_cast<int>(t[0]), static_cast<int>(t[1]), p);
      g.d_theta += t[2] * d.d_theta;
      g.d_phi += t[2] * d.d_phi;
    }
    return g;
  };
  return fn;
}

// ---------------------------------------------------------------------------
// Building blocks of the simulated fields.

/// Unit vector at latitude `lat`, longitude `lon`.
inline Vec3 center_from_lat_lon(double lat, double lon) {
  return {std::cos(lat) * std::cos(lon), std::cos(lat) * std::sin(lon), std::sin(lat)};
}

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

/// Cubic B-spline bump of radius 2/sigma in geodesic distance r from the
/// centre: sigma^3/12 sum_{j=0}^{4} (-1)^j C(4,j) |r - (j-2)/sigma|^3.
inline double bspline_bump(const SpherePoint& p, double sigma, double lat_c, double lon_c) {
  const Vec3 c = center_from_lat_lon(lat_c, lon_c);
  const double r = std::acos(std::clamp(dot(p.cartesian(), c), -1.0, 1.0));
  static constexpr double binom[5] = {1, 4, 6, 4, 1};
  double s = 0.0;
  for (int j = 0; j <= 4; ++j) {
    const double u = std::abs(r - (j - 2) / sigma);
    s += ((j & 1) ? -1.0 : 1.0) * binom[j] * u * u * u;
  }
  return sigma * sigma * sigma / 12.0 * s;
}

/// g(x) = -1/2 ((3t + 3 sqrt2 a^{3/2} - 4) + (3t^2 - 4t + 1) log a
///              + (3t - 1) a log(sqrt(2a) + a)),   t = x.x_c, a = 1 - t.
inline double log_kernel(const SpherePoint& p, double lat_c, double lon_c) {
  const Vec3 c = center_from_lat_lon(lat_c, lon_c);
  const double t = std::clamp(dot(p.cartesian(), c), -1.0, 1.0);
  const double a = std::max(1.0 - t, 1e-15);
  return -0.5 * ((3.0 * t + 3.0 * std::sqrt(2.0) * a * std::sqrt(a) - 4.0) +
                 (3.0 * t * t - 4.0 * t + 1.0) * std::log(a) +
                 (3.0 * t - 1.0) * a * std::log(std::sqrt(2.0 * a) + a));
}

/// int_{-pi/2}^{lat} sin^14(2 xi) d xi by power reduction:
/// sin^{2n} u = 4^{-n} [C(2n,n) + 2 sum_{k<n} (-1)^{n-k} C(2n,k) cos(2(n-k)u)].
inline double sin14_integral(double lat) {
  constexpr int n = 7;
  const auto antiderivative = [](double xi) {
    double binom = 1.0;  // C(14, k)
    double s = 0.0;
    for (int k = 0; k < n; ++k) {
      const int f = 4 * (n - k);  // cos(2(n-k) * 2 xi)
      s += 2.0 * (((n - k) & 1) ? -1.0 : 1.0) * binom * std::sin(f * xi) / f;
      binom = binom * (2 * n - k) / (k + 1);
    }
    // binom is now C(14, 7)
    return (binom * xi + s) / std::pow(4.0, n);
  };
  return antiderivative(lat) - antiderivative(-kPi / 2.0);
}

inline double latitude(const SpherePoint& p) { return kPi / 2.0 - p.theta(); }

// ---------------------------------------------------------------------------

enum class FieldId { A, B, C };

inline std::optional<FieldId> parse_field_id(const std::string& s) {
  if (s == "a" || s == "A") return FieldId::A;
  if (s == "b" || s == "B") return FieldId::B;
  if (s == "c" || s == "C") return FieldId::C;
  return std::nullopt;
}

inline const char* to_string(FieldId id) {
  switch (id) {
    case FieldId::A: return "a";
    case FieldId::B: return "b";
    case FieldId::C: return "c";
  }
  return "?";
}

/// Stream function and velocity potential of a simulated field.
struct TangentFieldModel {
  ScalarSurfaceFunction stream;
  ScalarSurfaceFunction potential;

  /// Divergence-free part L s.
  Vec3 rotational(const SpherePoint& p) const { return surface_curl(stream, p); }
  /// Curl-free part grad* v.
  Vec3 irrotational(const SpherePoint& p) const { return surface_gradient(potential, p); }
  Vec3 operator()(const SpherePoint& p) const {
    const Vec3 a = rotational(p), b = irrotational(p);
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
  }
};

inline ScalarSurfaceFunction rossby_haurwitz_stream() {
  return real_harmonic_sum({{1, 0, -1.0 / std::sqrt(3.0)},
                            {5, 4, 8.0 * std::sqrt(2.0) / (3.0 * std::sqrt(385.0))}});
}

inline TangentFieldModel field_model(FieldId id) {
  TangentFieldModel model;
  switch (id) {
    case FieldId::A:
      model.stream = rossby_haurwitz_stream();
      model.potential = real_harmonic_sum({{4, 0, 1.0 / 25.0}, {6, -3, 1.0 / 25.0}});
      break;
    case FieldId::B:
      model.stream = rossby_haurwitz_stream();
      model.potential.value = [](const SpherePoint& p) {
        return bspline_bump(p, 5.0, kPi / 6.0, 0.0) / 8.0 -
               bspline_bump(p, 3.0, kPi / 5.0, -kPi / 7.0) / 7.0 +
               bspline_bump(p, 5.0, -kPi / 6.0, kPi / 2.0) / 9.0 -
               bspline_bump(p, 3.0, -kPi / 5.0, kPi / 3.0) / 8.0;
      };
      break;
    case FieldId::C:
      model.stream.value = [](const SpherePoint& p) {
        return sin14_integral(latitude(p)) - 3.0 * log_kernel(p, kPi / 4.0, -kPi / 12.0);
      };
      model.potential.value = [](const SpherePoint& p) {
        return 2.5 * log_kernel(p, kPi / 4.0, 0.0) - 1.75 * log_kernel(p, kPi / 6.0, kPi / 9.0) -
               1.5 * log_kernel(p, 5.0 * kPi / 16.0, kPi / 10.0);
      };
      break;
  }
  return model;
}

inline Vec3 field_a(const SpherePoint& p) { return field_model(FieldId::A)(p); }
inline Vec3 field_b(const SpherePoint& p) { return field_model(FieldId::B)(p); }
inline Vec3 field_c(const SpherePoint& p) { return field_model(FieldId::C)(p); }

inline CVec3 to_complex(const Vec3& v) { return {v[0], v[1], v[2]}; }

/// Samples a simulated field at every point.
inline TangentFieldSamples sample_field(FieldId id, std::span<const SpherePoint> points) {
  const TangentFieldModel model = field_model(id);
  std::vector<CVec3> values;
  values.reserve(points.size());
  for (const auto& p : points) values.push_back(to_complex(model(p)));
  return TangentFieldSamples({points.begin(), points.end()}, std::move(values));
}

}  // namespace favest
