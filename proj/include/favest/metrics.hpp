#pragma once

#include <cmath>
#include <span>

#include "favest/core_types.hpp"

namespace favest {

struct ErrorMetrics {
  double rel_l2 = 0.0;   // sqrt(sum w |T - R|^2) / sqrt(sum w |T|^2)
  double max_abs = 0.0;  // max_k |T_k - R_k|
};

/// Quadrature-weighted relative L2 error and pointwise maximum error of a
/// reconstruction. Throws DomainError when the reference field has zero norm.
inline ErrorMetrics error_metrics(std::span<const CVec3> reference,
                                  std::span<const CVec3> reconstruction,
                                  std::span<const double> weights) {
  if (reference.size() != reconstruction.size() || reference.size() != weights.size()) {
    throw DomainError("error_metrics: length mismatch");
  }
  double num = 0.0, den = 0.0, worst = 0.0;
  for (std::size_t k = 0; k < reference.size(); ++k) {
    CVec3 diff;
    for (int i = 0; i < 3; ++i) diff[i] = reference[k][i] - reconstruction[k][i];
    const double e = norm(diff);
    const double r = norm(reference[k]);
    num += weights[k] * e * e;
    den += weights[k] * r * r;
    worst = std::max(worst, e);
  }
  if (!(den > 0.0)) throw DomainError("error_metrics: reference field has zero norm");
  return {std::sqrt(num / den), worst};
}

/// max_k |A_k - B_k| with the Euclidean magnitude of each 3-vector.
inline double max_vector_difference(std::span<const CVec3> a, std::span<const CVec3> b) {
  if (a.size() != b.size()) throw DomainError("max_vector_difference: length mismatch");
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    CVec3 diff;
    for (int i = 0; i < 3; ++i) diff[i] = a[k][i] - b[k][i];
    worst = std::max(worst, norm(diff));
  }
  return worst;
}

inline double max_abs_difference(const ScalarCoefficients& a, const ScalarCoefficients& b) {
  const int L = std::max(a.l_max(), b.l_max());
  double worst = 0.0;
  for (int l = 0; l <= L; ++l) {
    for (int m = -l; m <= l; ++m) worst = std::max(worst, std::abs(a(l, m) - b(l, m)));
  }
  return worst;
}

inline double max_abs_difference(const VectorCoefficients& a, const VectorCoefficients& b) {
  return std::max(max_abs_difference(a.div, b.div), max_abs_difference(a.curl, b.curl));
}

}  // namespace favest
