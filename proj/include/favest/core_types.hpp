#pragma once

// Shared geometric and spectral types for the vector spherical harmonic
// transforms. Angles follow the colatitude convention: theta is measured from
// the north pole (0,0,1), phi is the longitude in [0, 2*pi).

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace favest {

using Complex = std::complex<double>;
using Vec3 = std::array<double, 3>;
using CVec3 = std::array<Complex, 3>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kFourPi = 4.0 * std::numbers::pi;

/// Raised when an argument lies outside the mathematical domain of an
/// operation (bad index, non-unit point, mismatched lengths).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a transform is called on data that violates its structural
/// requirements, e.g. too few longitudes for the requested degree.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Flat position of (l, m) in a triangular spectrum: l^2 + l + m.
inline std::size_t flat_index(int l, int m) {
  if (l < 0 || m < -l || m > l) {
    throw DomainError("flat_index: (l, m) = (" + std::to_string(l) + ", " +
                      std::to_string(m) + ") out of range");
  }
  return static_cast<std::size_t>(l * l + l + m);
}

/// Number of (l, m) pairs with l <= l_max.
constexpr std::size_t spectrum_size(int l_max) {
  return static_cast<std::size_t>((l_max + 1) * (l_max + 1));
}

/// A point on the unit sphere, stored in Cartesian form.
class SpherePoint {
 public:
  SpherePoint() = default;

  /// Validates |p| = 1 within `tol`; inputs within tolerance are
  /// renormalized.
  static SpherePoint from_cartesian(double x, double y, double z,
                                    double tol = 1e-9) {
    const double r = std::sqrt(x * x + y * y + z * z);
    if (!std::isfinite(r) || std::abs(r - 1.0) > tol) {
      throw DomainError("SpherePoint: point is not on the unit sphere (|p| = " +
                        std::to_string(r) + ")");
    }
    return SpherePoint(x / r, y / r, z / r);
  }

  static SpherePoint from_angles(double theta, double phi) {
    const double s = std::sin(theta);
    return SpherePoint(s * std::cos(phi), s * std::sin(phi), std::cos(theta));
  }

  double x() const { return x_; }
  double y() const { return y_; }
  double z() const { return z_; }
  Vec3 cartesian() const { return {x_, y_, z_}; }

  double theta() const { return std::atan2(sin_theta(), z_); }
  double phi() const {
    if (x_ == 0.0 && y_ == 0.0) return 0.0;
    double p = std::atan2(y_, x_);
    if (p < 0.0) p += 2.0 * kPi;
    if (p >= 2.0 * kPi) p = 0.0;
    return p;
  }
  double cos_theta() const { return z_; }
  double sin_theta() const { return std::hypot(x_, y_); }

 private:
  SpherePoint(double x, double y, double z) : x_(x), y_(y), z_(z) {}

  double x_ = 0.0;
  double y_ = 0.0;
  double z_ = 1.0;
};

struct SphericalAngles {
  double theta;
  double phi;
};

/// (theta, phi) of a unit vector; at the poles phi is reported as 0.
inline SphericalAngles to_spherical(const SpherePoint& p) {
  const double r2 = p.x() * p.x() + p.y() * p.y() + p.z() * p.z();
  if (std::abs(std::sqrt(r2) - 1.0) > 1e-9) {
    throw DomainError("to_spherical: point is not unit length");
  }
  return {std::acos(std::clamp(p.z(), -1.0, 1.0)), p.phi()};
}

/// Complex coefficient table f_{l,m}, 0 <= l <= l_max, |m| <= l, stored at
/// flat_index(l, m). Reads outside the triangle return zero.
class ScalarCoefficients {
 public:
  ScalarCoefficients() : ScalarCoefficients(0) {}
  explicit ScalarCoefficients(int l_max) : l_max_(l_max) {
    if (l_max < 0) throw DomainError("ScalarCoefficients: negative l_max");
    values_.assign(spectrum_size(l_max), Complex{});
  }
  ScalarCoefficients(int l_max, std::vector<Complex> values)
      : l_max_(l_max), values_(std::move(values)) {
    if (l_max < 0 || values_.size() != spectrum_size(l_max)) {
      throw DomainError("ScalarCoefficients: length must be (l_max+1)^2");
    }
  }

  int l_max() const { return l_max_; }
  std::size_t size() const { return values_.size(); }

  Complex operator()(int l, int m) const {
    if (l < 0 || l > l_max_ || m < -l || m > l) return {};
    return values_[static_cast<std::size_t>(l * l + l + m)];
  }
  Complex& at(int l, int m) {
    if (l > l_max_) throw DomainError("ScalarCoefficients: l exceeds l_max");
    return values_[flat_index(l, m)];
  }

  std::span<Complex> values() { return values_; }
  std::span<const Complex> values() const { return values_; }

  /// Copy truncated or zero-padded to a new degree bound.
  ScalarCoefficients resized(int l_max) const {
    ScalarCoefficients out(l_max);
    const int lm = std::min(l_max, l_max_);
    for (std::size_t i = 0; i < spectrum_size(lm); ++i) out.values_[i] = values_[i];
    return out;
  }

 private:
  int l_max_;
  std::vector<Complex> values_;
};

/// Paired coefficient tables: `div` holds a_{l,m}, `curl` holds b_{l,m}.
/// Degree-0 entries are always zero.
struct VectorCoefficients {
  ScalarCoefficients div;
  ScalarCoefficients curl;

  VectorCoefficients() : VectorCoefficients(1) {}
  explicit VectorCoefficients(int l_max) : div(l_max), curl(l_max) {
    if (l_max < 1) throw DomainError("VectorCoefficients: l_max must be >= 1");
  }
  VectorCoefficients(ScalarCoefficients a, ScalarCoefficients b)
      : div(std::move(a)), curl(std::move(b)) {
    if (div.l_max() != curl.l_max() || div.l_max() < 1) {
      throw DomainError("VectorCoefficients: tables must share l_max >= 1");
    }
    if (div(0, 0) != Complex{} || curl(0, 0) != Complex{}) {
      throw DomainError("VectorCoefficients: degree-0 entries must be zero");
    }
  }

  int l_max() const { return div.l_max(); }
};

/// Bilinear dot product sum_i T^(i) x^(i) of a complex vector with a real one.
inline Complex dot(const CVec3& t, const Vec3& x) {
  return t[0] * x[0] + t[1] * x[1] + t[2] * x[2];
}

inline double norm(const CVec3& t) {
  return std::sqrt(std::norm(t[0]) + std::norm(t[1]) + std::norm(t[2]));
}

/// Complex Cartesian 3-vectors attached to sample points.
struct TangentFieldSamples {
  std::vector<SpherePoint> points;
  std::vector<CVec3> values;

  TangentFieldSamples() = default;
  TangentFieldSamples(std::vector<SpherePoint> p, std::vector<CVec3> v)
      : points(std::move(p)), values(std::move(v)) {
    if (points.size() != values.size()) {
      throw DomainError("TangentFieldSamples: points/values length mismatch");
    }
  }

  std::size_t size() const { return points.size(); }

  /// Largest normal-component violation |T.x| / (1 + |T|).
  double max_normal_defect() const {
    double worst = 0.0;
    for (std::size_t k = 0; k < points.size(); ++k) {
      const double d = std::abs(dot(values[k], points[k].cartesian())) /
                       (1.0 + norm(values[k]));
      worst = std::max(worst, d);
    }
    return worst;
  }
  bool is_tangent(double tol = 1e-8) const { return max_normal_defect() <= tol; }
};

/// Iso-latitude tensor grid: rings at `ring_thetas`, each with `n_phi`
/// equispaced longitudes phi_j = 2*pi*j/n_phi. Point order is ring-major.
struct TensorGrid {
  std::vector<double> ring_thetas;
  std::vector<double> ring_weights;  // Gauss weight times 2*pi/n_phi
  int n_phi = 0;

  std::size_t n_rings() const { return ring_thetas.size(); }
  std::size_t size() const { return ring_thetas.size() * static_cast<std::size_t>(n_phi); }

  double phi(int j) const { return 2.0 * kPi * j / n_phi; }

  std::vector<SpherePoint> points() const {
    std::vector<SpherePoint> out;
    out.reserve(size());
    for (double theta : ring_thetas) {
      for (int j = 0; j < n_phi; ++j) out.push_back(SpherePoint::from_angles(theta, phi(j)));
    }
    return out;
  }
};

enum class RuleKind { GlTensor, SphericalDesign, Custom };

inline const char* to_string(RuleKind k) {
  switch (k) {
    case RuleKind::GlTensor: return "gl-tensor";
    case RuleKind::SphericalDesign: return "spherical-design";
    case RuleKind::Custom: return "custom";
  }
  return "custom";
}

/// Weighted point set. `exactness` is the claimed polynomial degree (-1 when
/// nothing is claimed). Rules built on a TensorGrid keep it in `grid` so the
/// separated fast transforms can be used.
struct QuadratureRule {
  std::vector<SpherePoint> points;
  std::vector<double> weights;
  int exactness = -1;
  RuleKind kind = RuleKind::Custom;
  std::optional<TensorGrid> grid;

  std::size_t size() const { return points.size(); }
  double weight_sum() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
  }
};

}  // namespace favest
