#pragma once

// Normalized associated Legendre functions and complex scalar spherical
// harmonics
//
//   Y_{l,m}(theta, phi) = Pbar_l^m(cos theta) e^{i m phi},   m >= 0,
//   Y_{l,-m}            = (-1)^m conj(Y_{l,m}),
//
// where Pbar_l^m carries the orthonormalization factor and the Condon-Shortley
// phase. Harmonics with |m| > l are zero.

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "favest/core_types.hpp"

namespace favest {

/// Pbar_l^m(t) for 0 <= m <= l <= l_max.
class LegendreBlock {
 public:
  LegendreBlock() = default;
  LegendreBlock(int l_max, double t, std::vector<double> values)
      : l_max_(l_max), t_(t), values_(std::move(values)) {}

  int l_max() const { return l_max_; }
  double t() const { return t_; }

  static constexpr std::size_t index(int l, int m) {
    return static_cast<std::size_t>(l) * static_cast<std::size_t>(l + 1) / 2 +
           static_cast<std::size_t>(m);
  }

  /// Pbar_l^m for any integer m; negative orders use Pbar_l^{-m} =
  /// (-1)^m Pbar_l^m, and out-of-range arguments give zero.
  double operator()(int l, int m) const {
    if (l < 0 || l > l_max_) return 0.0;
    if (m < 0) {
      if (-m > l) return 0.0;
      const double v = values_[index(l, -m)];
      return (m & 1) ? -v : v;
    }
    if (m > l) return 0.0;
    return values_[index(l, m)];
  }

  const std::vector<double>& values() const { return values_; }

 private:
  int l_max_ = 0;
  double t_ = 1.0;
  std::vector<double> values_;
};

namespace detail {

/// Fills out[index(l, m)] with Pbar_l^m for cos(theta) = t, sin(theta) = s.
/// Diagonal seed by product recurrence, then the three-term recurrence in l
/// at fixed m, entirely in normalized form.
inline void legendre_into(int l_max, double t, double s, double* out) {
  out[0] = 1.0 / std::sqrt(kFourPi);
  double diag = out[0];
  for (int m = 0; m <= l_max; ++m) {
    if (m > 0) {
      diag *= -std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * s;
      out[LegendreBlock::index(m, m)] = diag;
    }
    if (m + 1 > l_max) continue;
    double p2 = diag;
    double p1 = std::sqrt(2.0 * m + 3.0) * t * diag;
    out[LegendreBlock::index(m + 1, m)] = p1;
    for (int l = m + 2; l <= l_max; ++l) {
      const double ll = l, mm = m;
      const double a = std::sqrt((4.0 * ll * ll - 1.0) / (ll * ll - mm * mm));
      const double b = std::sqrt(((ll - 1.0) * (ll - 1.0) - mm * mm) /
                                 (4.0 * (ll - 1.0) * (ll - 1.0) - 1.0));
      const double p = a * (t * p1 - b * p2);
      out[LegendreBlock::index(l, m)] = p;
      p2 = p1;
      p1 = p;
    }
  }
}

inline void check_unit_interval(double t) {
  if (!(t >= -1.0 - 1e-12 && t <= 1.0 + 1e-12)) {
    throw DomainError("legendre: argument outside [-1, 1]");
  }
}

}  // namespace detail

inline LegendreBlock eval_legendre_block(int l_max, double t) {
  if (l_max < 0) throw DomainError("eval_legendre_block: negative degree");
  detail::check_unit_interval(t);
  t = std::clamp(t, -1.0, 1.0);
  std::vector<double> v(LegendreBlock::index(l_max, l_max) + 1);
  detail::legendre_into(l_max, t, std::sqrt((1.0 - t) * (1.0 + t)), v.data());
  return LegendreBlock(l_max, t, std::move(v));
}

/// Same as above with an explicitly supplied sin(theta), which keeps full
/// relative accuracy near the poles.
inline LegendreBlock eval_legendre_block(int l_max, double cos_theta, double sin_theta) {
  if (l_max < 0) throw DomainError("eval_legendre_block: negative degree");
  detail::check_unit_interval(cos_theta);
  std::vector<double> v(LegendreBlock::index(l_max, l_max) + 1);
  detail::legendre_into(l_max, std::clamp(cos_theta, -1.0, 1.0), sin_theta, v.data());
  return LegendreBlock(l_max, cos_theta, std::move(v));
}

inline Complex eval_ylm(int l, int m, const SpherePoint& p) {
  if (l < 0 || m > l || m < -l) return {};
  const auto block = eval_legendre_block(l, p.cos_theta(), p.sin_theta());
  return block(l, m) * std::polar(1.0, m * p.phi());
}

/// All Y_{l,m}(p), l <= l_max, in flat-index order. Writes into `out`, which
/// must hold spectrum_size(l_max) entries; `scratch` is reused between calls.
inline void eval_ylm_row_into(int l_max, const SpherePoint& p, std::span<Complex> out,
                              std::vector<double>& scratch) {
  scratch.resize(LegendreBlock::index(l_max, l_max) + 1);
  detail::legendre_into(l_max, std::clamp(p.cos_theta(), -1.0, 1.0), p.sin_theta(),
                        scratch.data());
  const double phi = p.phi();
  for (int m = 0; m <= l_max; ++m) {
    const Complex em = std::polar(1.0, m * phi);
    const double sign = (m & 1) ? -1.0 : 1.0;
    for (int l = m; l <= l_max; ++l) {
      const double v = scratch[LegendreBlock::index(l, m)];
      const Complex y = v * em;
      out[static_cast<std::size_t>(l * l + l + m)] = y;
      if (m > 0) out[static_cast<std::size_t>(l * l + l - m)] = sign * std::conj(y);
    }
  }
}

inline ScalarCoefficients eval_ylm_row(int l_max, const SpherePoint& p) {
  ScalarCoefficients row(l_max);
  std::vector<double> scratch;
  eval_ylm_row_into(l_max, p, row.values(), scratch);
  return row;
}

}  // namespace favest
