#pragma once

// Clebsch-Gordan coefficients C^{l,m}_{j1,m1,1,q} coupling a degree-j1
// harmonic with the rank-one spherical basis (j2 = 1), in closed form, plus
// the coupling tables used by the fast vector transforms.
//
// Forward tables (degree l, order m):
//   xi1 = c_{l+1} C^{l+1,m+1}_{l,m,1,1}    xi2 = d_{l-1} C^{l-1,m+1}_{l,m,1,1}
//   xi3 = c_{l+1} C^{l+1,m-1}_{l,m,1,-1}   xi4 = d_{l-1} C^{l-1,m-1}_{l,m,1,-1}
//   xi5 = c_{l+1} C^{l+1,m}_{l,m,1,0}      xi6 = d_{l-1} C^{l-1,m}_{l,m,1,0}
//   mu1 = C^{l,m+1}_{l,m,1,1}   mu2 = C^{l,m}_{l,m,1,0}   mu3 = C^{l,m-1}_{l,m,1,-1}
// with c_l = sqrt((l+1)/(2l+1)) and d_l = sqrt(l/(2l+1)).
//
// Every coefficient whose arguments leave the valid (l, m) triangle is zero,
// so the assembly loops need no boundary branches.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdlib>
#include <string>
#include <vector>

#include "favest/core_types.hpp"

namespace favest {

/// The nine coefficients C^{l,m}_{j1, m - q, 1, q} appearing in the vector
/// harmonics, named by j1 relative to l and by q.
enum class CgKind {
  PrevPlus,   // C^{l,m}_{l-1,m-1,1,1}
  NextPlus,   // C^{l,m}_{l+1,m-1,1,1}
  PrevZero,   // C^{l,m}_{l-1,m,1,0}
  NextZero,   // C^{l,m}_{l+1,m,1,0}
  PrevMinus,  // C^{l,m}_{l-1,m+1,1,-1}
  NextMinus,  // C^{l,m}_{l+1,m+1,1,-1}
  SamePlus,   // C^{l,m}_{l,m-1,1,1}
  SameMinus,  // C^{l,m}_{l,m+1,1,-1}
  SameZero,   // C^{l,m}_{l,m,1,0}
};

inline constexpr std::array<CgKind, 9> kAllCgKinds = {
    CgKind::PrevPlus,  CgKind::NextPlus,  CgKind::PrevZero, CgKind::NextZero, CgKind::PrevMinus,
    CgKind::NextMinus, CgKind::SamePlus, CgKind::SameMinus, CgKind::SameZero};

/// (j1 - l, q) for a kind.
inline std::array<int, 2> cg_shape(CgKind kind) {
  switch (kind) {
    case CgKind::PrevPlus: return {-1, 1};
    case CgKind::NextPlus: return {1, 1};
    case CgKind::PrevZero: return {-1, 0};
    case CgKind::NextZero: return {1, 0};
    case CgKind::PrevMinus: return {-1, -1};
    case CgKind::NextMinus: return {1, -1};
    case CgKind::SamePlus: return {0, 1};
    case CgKind::SameMinus: return {0, -1};
    case CgKind::SameZero: return {0, 0};
  }
  throw DomainError("cg_shape: unknown coefficient kind " +
                    std::to_string(static_cast<int>(kind)));
}

/// Closed form of the selected coefficient at (l, m); zero whenever (l, m)
/// or (j1, m1) is outside its triangle or the triangle rule fails.
inline double cg_explicit(CgKind kind, int l, int m) {
  const auto [dj, q] = cg_shape(kind);
  const int j1 = l + dj;
  const int m1 = m - q;
  if (l < 0 || std::abs(m) > l || j1 < 0 || std::abs(m1) > j1) return 0.0;
  if (l == 0 && j1 == 0) return 0.0;
  const double L = l, M = m;
  switch (kind) {
    case CgKind::PrevPlus:
      return std::sqrt((L + M) * (L + M - 1.0) / ((2.0 * L) * (2.0 * L - 1.0)));
    case CgKind::NextPlus:
      return std::sqrt((L - M + 1.0) * (L - M + 2.0) / ((2.0 * L + 2.0) * (2.0 * L + 3.0)));
    case CgKind::PrevZero:
      return std::sqrt((L + M) * (L - M) / (L * (2.0 * L - 1.0)));
    case CgKind::NextZero:
      return -std::sqrt((L - M + 1.0) * (L + M + 1.0) / ((2.0 * L + 3.0) * (L + 1.0)));
    case CgKind::PrevMinus:
      return std::sqrt((L - M) * (L - M - 1.0) / ((2.0 * L) * (2.0 * L - 1.0)));
    case CgKind::NextMinus:
      return std::sqrt((L + M + 1.0) * (L + M + 2.0) / ((2.0 * L + 3.0) * (2.0 * L + 2.0)));
    case CgKind::SamePlus:
      return -std::sqrt((L + M) * (L - M + 1.0) / (L * (2.0 * L + 2.0)));
    case CgKind::SameMinus:
      return std::sqrt((L + M + 1.0) * (L - M) / (L * (2.0 * L + 2.0)));
    case CgKind::SameZero:
      return M / std::sqrt(L * (L + 1.0));
  }
  return 0.0;
}

/// C^{l,m}_{j1,m1,1,q} for |j1 - l| <= 1 and m = m1 + q; zero otherwise.
inline double cg_rank_one(int l, int m, int j1, int m1, int q) {
  if (m1 + q != m || q < -1 || q > 1) return 0.0;
  const int dj = j1 - l;
  if (dj < -1 || dj > 1) return 0.0;
  static constexpr CgKind table[3][3] = {
      {CgKind::PrevMinus, CgKind::PrevZero, CgKind::PrevPlus},
      {CgKind::SameMinus, CgKind::SameZero, CgKind::SamePlus},
      {CgKind::NextMinus, CgKind::NextZero, CgKind::NextPlus}};
  return cg_explicit(table[dj + 1][q + 1], l, m);
}

inline double c_coeff(int l) { return l < 0 ? 0.0 : std::sqrt((l + 1.0) / (2.0 * l + 1.0)); }
inline double d_coeff(int l) { return l < 0 ? 0.0 : std::sqrt(l / (2.0 * l + 1.0)); }

/// Real table over 0 <= l <= l_max, |m| <= l with zero reads outside.
class RealTable {
 public:
  RealTable() = default;
  explicit RealTable(int l_max) : l_max_(l_max), values_(spectrum_size(l_max), 0.0) {}

  int l_max() const { return l_max_; }
  double operator()(int l, int m) const {
    if (l < 0 || l > l_max_ || m < -l || m > l) return 0.0;
    return values_[static_cast<std::size_t>(l * l + l + m)];
  }
  double& at(int l, int m) { return values_[flat_index(l, m)]; }
  const std::vector<double>& values() const { return values_; }

 private:
  int l_max_ = 0;
  std::vector<double> values_;
};

/// Precomputed c_l, d_l and the xi/mu coupling tables up to degree L+1.
struct CGTables {
  int l_max = 0;  // the transform degree L; tables extend to L+1
  std::vector<double> c;
  std::vector<double> d;
  std::array<RealTable, 6> xi;
  std::array<RealTable, 3> mu;
};

inline CGTables build_cg_tables(int l_max) {
  if (l_max < 1) throw DomainError("build_cg_tables: degree must be >= 1");
  CGTables t;
  t.l_max = l_max;
  const int top = l_max + 1;
  t.c.resize(static_cast<std::size_t>(top + 2));
  t.d.resize(static_cast<std::size_t>(top + 2));
  for (int l = 0; l <= top + 1; ++l) {
    t.c[static_cast<std::size_t>(l)] = c_coeff(l);
    t.d[static_cast<std::size_t>(l)] = d_coeff(l);
  }
  for (auto& x : t.xi) x = RealTable(top);
  for (auto& x : t.mu) x = RealTable(top);
  for (int l = 0; l <= top; ++l) {
    const double c_next = c_coeff(l + 1);
    const double d_prev = d_coeff(l - 1);
    for (int m = -l; m <= l; ++m) {
      t.xi[0].at(l, m) = c_next * cg_rank_one(l + 1, m + 1, l, m, 1);
      t.xi[1].at(l, m) = d_prev * cg_rank_one(l - 1, m + 1, l, m, 1);
      t.xi[2].at(l, m) = c_next * cg_rank_one(l + 1, m - 1, l, m, -1);
      t.xi[3].at(l, m) = d_prev * cg_rank_one(l - 1, m - 1, l, m, -1);
      t.xi[4].at(l, m) = c_next * cg_rank_one(l + 1, m, l, m, 0);
      t.xi[5].at(l, m) = d_prev * cg_rank_one(l - 1, m, l, m, 0);
      t.mu[0].at(l, m) = cg_rank_one(l, m + 1, l, m, 1);
      t.mu[1].at(l, m) = cg_rank_one(l, m, l, m, 0);
      t.mu[2].at(l, m) = cg_rank_one(l, m - 1, l, m, -1);
    }
  }
  return t;
}

/// Scalar coefficient tables nu^(1..6) and eta^(1..3) for synthesizing a
/// vector expansion from scalar partial sums. All tables have degree L+1.
struct AdjointCoupling {
  std::array<ScalarCoefficients, 6> nu;
  std::array<ScalarCoefficients, 3> eta;
};

inline AdjointCoupling build_adjoint_coupling(const VectorCoefficients& coeffs,
                                              const CGTables& t) {
  const int L = coeffs.l_max();
  if (L < 1) throw DomainError("build_adjoint_coupling: degree must be >= 1");
  if (t.l_max < L) throw DomainError("build_adjoint_coupling: CG tables too small");
  const int top = L + 1;
  const auto& a = coeffs.div;
  const auto& b = coeffs.curl;
  const Complex I{0.0, 1.0};
  AdjointCoupling out;
  for (auto& x : out.nu) x = ScalarCoefficients(top);
  for (auto& x : out.eta) x = ScalarCoefficients(top);
  for (int l = 0; l <= top; ++l) {
    for (int m = -l; m <= l; ++m) {
      const Complex up_p = a(l + 1, m + 1) * t.xi[0](l, m);
      const Complex up_m = a(l + 1, m - 1) * t.xi[2](l, m);
      const Complex dn_p = a(l - 1, m + 1) * t.xi[1](l, m);
      const Complex dn_m = a(l - 1, m - 1) * t.xi[3](l, m);
      out.nu[0].at(l, m) = up_p - up_m;
      out.nu[1].at(l, m) = dn_p - dn_m;
      out.nu[2].at(l, m) = I * (up_p + up_m);
      out.nu[3].at(l, m) = I * (dn_p + dn_m);
      out.nu[4].at(l, m) = a(l + 1, m) * t.xi[4](l, m);
      out.nu[5].at(l, m) = a(l - 1, m) * t.xi[5](l, m);
      const Complex bp = b(l, m + 1) * t.mu[0](l, m);
      const Complex bm = b(l, m - 1) * t.mu[2](l, m);
      out.eta[0].at(l, m) = I * (bp - bm);
      out.eta[1].at(l, m) = bp + bm;
      out.eta[2].at(l, m) = I * b(l, m) * t.mu[1](l, m);
    }
  }
  return out;
}

inline AdjointCoupling build_adjoint_coupling(const VectorCoefficients& coeffs) {
  return build_adjoint_coupling(coeffs, build_cg_tables(coeffs.l_max()));
}

}  // namespace favest
