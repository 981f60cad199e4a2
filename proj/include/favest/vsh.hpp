#pragma once

// Vector spherical harmonics by direct evaluation, and the brute-force
// forward/adjoint vector transforms built on them.
//
// For l >= 1, |m| <= l the spherical components are
//   B_{+1} = c_l C^{l,m}_{l-1,m-1,1,1} Y_{l-1,m-1} + d_l C^{l,m}_{l+1,m-1,1,1} Y_{l+1,m-1}
//   B_0    = c_l C^{l,m}_{l-1,m,1,0}   Y_{l-1,m}   + d_l C^{l,m}_{l+1,m,1,0}   Y_{l+1,m}
//   B_{-1} = c_l C^{l,m}_{l-1,m+1,1,-1} Y_{l-1,m+1} + d_l C^{l,m}_{l+1,m+1,1,-1} Y_{l+1,m+1}
//   D_q    = i C^{l,m}_{l,m-q,1,q} Y_{l,m-q}
// and the Cartesian vectors are
//   y = ( -(B_{+1} - B_{-1})/sqrt2, -i (B_{+1} + B_{-1})/sqrt2, B_0 )
// with B replaced by D for the second family.

#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include "favest/clebsch_gordan.hpp"
#include "favest/core_types.hpp"
#include "favest/legendre.hpp"
#include "favest/parallel.hpp"

namespace favest {

struct BdValues {
  Complex b_plus, b_zero, b_minus;
  Complex d_plus, d_zero, d_minus;
};

struct VshValue {
  CVec3 div;
  CVec3 curl;
};

namespace detail {

// Y_{l,m} read from a flat row of degree >= l; zero outside the triangle.
inline Complex row_at(std::span<const Complex> row, int row_l_max, int l, int m) {
  if (l < 0 || l > row_l_max || m < -l || m > l) return {};
  return row[static_cast<std::size_t>(l * l + l + m)];
}

inline BdValues bd_from_row(int l, int m, std::span<const Complex> row, int row_l_max) {
  const double c = c_coeff(l);
  const double d = d_coeff(l);
  const Complex I{0.0, 1.0};
  auto Y = [&](int ll, int mm) { return row_at(row, row_l_max, ll, mm); };
  BdValues v;
  v.b_plus = c * cg_explicit(CgKind::PrevPlus, l, m) * Y(l - 1, m - 1) +
             d * cg_explicit(CgKind::NextPlus, l, m) * Y(l + 1, m - 1);
  v.b_zero = c * cg_explicit(CgKind::PrevZero, l, m) * Y(l - 1, m) +
             d * cg_explicit(CgKind::NextZero, l, m) * Y(l + 1, m);
  v.b_minus = c * cg_explicit(CgKind::PrevMinus, l, m) * Y(l - 1, m + 1) +
              d * cg_explicit(CgKind::NextMinus, l, m) * Y(l + 1, m + 1);
  v.d_plus = I * cg_explicit(CgKind::SamePlus, l, m) * Y(l, m - 1);
  v.d_zero = I * cg_explicit(CgKind::SameZero, l, m) * Y(l, m);
  v.d_minus = I * cg_explicit(CgKind::SameMinus, l, m) * Y(l, m + 1);
  return v;
}

inline CVec3 cartesian_from_spherical(Complex plus, Complex zero, Complex minus) {
  const double r = 1.0 / std::sqrt(2.0);
  const Complex I{0.0, 1.0};
  return {-r * (plus - minus), -r * I * (plus + minus), zero};
}

inline VshValue vsh_from_row(int l, int m, std::span<const Complex> row, int row_l_max) {
  const BdValues v = bd_from_row(l, m, row, row_l_max);
  return {cartesian_from_spherical(v.b_plus, v.b_zero, v.b_minus),
          cartesian_from_spherical(v.d_plus, v.d_zero, v.d_minus)};
}

inline void check_vsh_index(int l, int m, const char* who) {
  if (l < 1) throw DomainError(std::string(who) + ": vector harmonics need l >= 1");
  if (m < -l || m > l) throw DomainError(std::string(who) + ": |m| exceeds l");
}

}  // namespace detail

inline BdValues eval_bd(int l, int m, const SpherePoint& p) {
  detail::check_vsh_index(l, m, "eval_bd");
  const auto row = eval_ylm_row(l + 1, p);
  return detail::bd_from_row(l, m, row.values(), l + 1);
}

inline VshValue eval_vsh(int l, int m, const SpherePoint& p) {
  detail::check_vsh_index(l, m, "eval_vsh");
  const auto row = eval_ylm_row(l + 1, p);
  return detail::vsh_from_row(l, m, row.values(), l + 1);
}

/// a_{l,m} = sum_k w_k y^div_{l,m}(x_k)^* T_k and likewise b_{l,m} with
/// y^curl, summed directly over the rule.
inline VectorCoefficients forward_vsht_direct(const TangentFieldSamples& samples,
                                              const QuadratureRule& rule, int l_max) {
  if (l_max < 1) throw DomainError("forward_vsht_direct: degree must be >= 1");
  if (samples.size() != rule.size() || rule.weights.size() != rule.size()) {
    throw DomainError("forward_vsht_direct: samples do not match the rule's points");
  }
  const std::size_t ns = spectrum_size(l_max);
  const int chunks = num_threads();
  std::vector<std::vector<Complex>> partial(static_cast<std::size_t>(std::max(chunks, 1)));
  parallel_chunks(rule.size(), chunks, [&](int c, std::size_t b, std::size_t e) {
    auto& acc = partial[static_cast<std::size_t>(c)];
    acc.assign(2 * ns, Complex{});
    std::vector<Complex> row(spectrum_size(l_max + 1));
    std::vector<double> scratch;
    for (std::size_t k = b; k < e; ++k) {
      eval_ylm_row_into(l_max + 1, rule.points[k], row, scratch);
      const CVec3& t = samples.values[k];
      const double w = rule.weights[k];
      for (int l = 1; l <= l_max; ++l) {
        for (int m = -l; m <= l; ++m) {
          const VshValue y = detail::vsh_from_row(l, m, row, l_max + 1);
          Complex a{}, bb{};
          for (int i = 0; i < 3; ++i) {
            a += std::conj(y.div[i]) * t[i];
            bb += std::conj(y.curl[i]) * t[i];
          }
          const std::size_t idx = static_cast<std::size_t>(l * l + l + m);
          acc[idx] += w * a;
          acc[ns + idx] += w * bb;
        }
      }
    }
  });
  VectorCoefficients out(l_max);
  auto a = out.div.values();
  auto b = out.curl.values();
  for (const auto& acc : partial) {
    if (acc.empty()) continue;
    for (std::size_t i = 0; i < ns; ++i) {
      a[i] += acc[i];
      b[i] += acc[ns + i];
    }
  }
  return out;
}

/// sum_{l=1}^{L} sum_m (a_{l,m} y^div_{l,m}(x) + b_{l,m} y^curl_{l,m}(x))
/// evaluated term by term at every point.
inline TangentFieldSamples adjoint_vsht_direct(const VectorCoefficients& coeffs,
                                               std::span<const SpherePoint> points) {
  const int L = coeffs.l_max();
  std::vector<CVec3> values(points.size());
  parallel_chunks(points.size(), num_threads(), [&](int, std::size_t b, std::size_t e) {
    std::vector<Complex> row(spectrum_size(L + 1));
    std::vector<double> scratch;
    for (std::size_t k = b; k < e; ++k) {
      eval_ylm_row_into(L + 1, points[k], row, scratch);
      CVec3 s{};
      for (int l = 1; l <= L; ++l) {
        for (int m = -l; m <= l; ++m) {
          const Complex a = coeffs.div(l, m);
          const Complex bb = coeffs.curl(l, m);
          if (a == Complex{} && bb == Complex{}) continue;
          const VshValue y = detail::vsh_from_row(l, m, row, L + 1);
          for (int i = 0; i < 3; ++i) s[i] += a * y.div[i] + bb * y.curl[i];
        }
      }
      values[k] = s;
    }
  });
  return TangentFieldSamples({points.begin(), points.end()}, std::move(values));
}

}  // namespace favest
