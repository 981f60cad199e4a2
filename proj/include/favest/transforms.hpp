#pragma once

// Fast forward and adjoint vector spherical harmonic transforms.
//
// Forward: the divergence-free and curl-free coefficients are linear
// combinations of three scalar forward transforms, of (-T1 + i T2),
// (T1 + i T2) and T3, taken to degree L+1 and weighted by the xi/mu tables.
//
// Adjoint: the coefficients are first coupled into nine scalar tables
// (nu^(1..6), eta^(1..3)); per Cartesian component they are merged into one
// degree-(L+1) table and synthesized with a single scalar adjoint transform:
//   T1 = -(S(nu1) + S(nu2) + S(eta1)) / sqrt2
//   T2 = -(S(nu3) + S(nu4) - S(eta2)) / sqrt2
//   T3 =   S(nu5) + S(nu6) + S(eta3)

#include <array>
#include <cmath>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include "favest/clebsch_gordan.hpp"
#include "favest/core_types.hpp"
#include "favest/metrics.hpp"
#include "favest/scalar_transforms.hpp"

namespace favest {

/// Which scalar-transform backend to use. Auto takes the fast tensor-grid
/// path whenever the rule carries a grid wide enough for degree L+1.
enum class ScalarPath { Auto, DirectScalar, FastScalar };

namespace detail {

inline bool grid_supports(const QuadratureRule& rule, int scalar_degree) {
  return rule.grid.has_value() && rule.grid->n_phi >= 2 * scalar_degree + 1 &&
         rule.grid->size() == rule.size();
}

inline bool use_fast(const QuadratureRule& rule, int scalar_degree, ScalarPath path,
                     const char* who) {
  switch (path) {
    case ScalarPath::DirectScalar: return false;
    case ScalarPath::Auto: return grid_supports(rule, scalar_degree);
    case ScalarPath::FastScalar:
      if (!rule.grid.has_value() || rule.grid->size() != rule.size()) {
        throw PreconditionError(std::string(who) + ": fast path needs a tensor-grid rule");
      }
      if (rule.grid->n_phi < 2 * scalar_degree + 1) {
        throw PreconditionError(std::string(who) + ": n_phi = " +
                                std::to_string(rule.grid->n_phi) + " too small for degree " +
                                std::to_string(scalar_degree) + " (need >= " +
                                std::to_string(2 * scalar_degree + 1) + ")");
      }
      return true;
  }
  return false;
}

inline void check_same_points(std::span<const SpherePoint> a, std::span<const SpherePoint> b,
                              const char* who) {
  if (a.size() != b.size()) {
    throw DomainError(std::string(who) + ": sample count does not match the rule");
  }
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double dx = a[k].x() - b[k].x(), dy = a[k].y() - b[k].y(), dz = a[k].z() - b[k].z();
    if (dx * dx + dy * dy + dz * dz > 1e-20) {
      throw DomainError(std::string(who) + ": sample points differ from the rule's points");
    }
  }
}

}  // namespace detail

/// Divergence-free and curl-free coefficients of samples taken at the rule's
/// points, for 1 <= l <= L.
inline VectorCoefficients forward_favest(const TangentFieldSamples& samples,
                                         const QuadratureRule& rule, int l_max,
                                         ScalarPath path = ScalarPath::Auto) {
  if (l_max < 1) throw DomainError("forward_favest: degree must be >= 1");
  detail::check_same_points(samples.points, rule.points, "forward_favest");
  const std::size_t n = samples.size();
  const int top = l_max + 1;
  const Complex I{0.0, 1.0};

  // Step 1: scalar forward transforms of the combined component sequences.
  std::vector<Complex> minus_seq(n), plus_seq(n), z_seq(n);
  for (std::size_t k = 0; k < n; ++k) {
    const CVec3& t = samples.values[k];
    minus_seq[k] = -t[0] + I * t[1];
    plus_seq[k] = t[0] + I * t[1];
    z_seq[k] = t[2];
  }
  const std::span<const Complex> seqs[] = {minus_seq, plus_seq, z_seq};
  const auto scalar = detail::use_fast(rule, top, path, "forward_favest")
                          ? forward_sht_fast_batch(seqs, *rule.grid, top)
                          : forward_sht_direct_batch(seqs, rule.points, rule.weights, top);
  const ScalarCoefficients& fm = scalar[0];
  const ScalarCoefficients& fp = scalar[1];
  const ScalarCoefficients& fz = scalar[2];

  // Step 2: coupling tables.
  const CGTables t = build_cg_tables(l_max);
  const auto& xi = t.xi;
  const auto& mu = t.mu;

  // Step 3: assembly.
  const double r = 1.0 / std::sqrt(2.0);
  VectorCoefficients out(l_max);
  for (int l = 1; l <= l_max; ++l) {
    for (int m = -l; m <= l; ++m) {
      out.div.at(l, m) =
          r * (xi[0](l - 1, m - 1) * fm(l - 1, m - 1) + xi[1](l + 1, m - 1) * fm(l + 1, m - 1) +
               xi[2](l - 1, m + 1) * fp(l - 1, m + 1) + xi[3](l + 1, m + 1) * fp(l + 1, m + 1)) +
          xi[4](l - 1, m) * fz(l - 1, m) + xi[5](l + 1, m) * fz(l + 1, m);
      out.curl.at(l, m) =
          -r * I * (mu[0](l, m - 1) * fm(l, m - 1) + mu[2](l, m + 1) * fp(l, m + 1)) -
          I * mu[1](l, m) * fz(l, m);
    }
  }
  return out;
}

namespace detail {

inline std::array<ScalarCoefficients, 3> merged_component_tables(const VectorCoefficients& coeffs) {
  const AdjointCoupling cp = build_adjoint_coupling(coeffs);
  const int top = coeffs.l_max() + 1;
  const double r = 1.0 / std::sqrt(2.0);
  std::array<ScalarCoefficients, 3> comp = {ScalarCoefficients(top), ScalarCoefficients(top),
                                            ScalarCoefficients(top)};
  for (std::size_t i = 0; i < spectrum_size(top); ++i) {
    const auto nu = [&](int j) { return cp.nu[static_cast<std::size_t>(j)].values()[i]; };
    const auto eta = [&](int j) { return cp.eta[static_cast<std::size_t>(j)].values()[i]; };
    comp[0].values()[i] = -r * (nu(0) + nu(1) + eta(0));
    comp[1].values()[i] = -r * (nu(2) + nu(3) - eta(1));
    comp[2].values()[i] = nu(4) + nu(5) + eta(2);
  }
  return comp;
}

inline TangentFieldSamples assemble_components(std::vector<SpherePoint> points,
                                               const std::vector<std::vector<Complex>>& comp) {
  std::vector<CVec3> values(points.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    values[k] = {comp[0][k], comp[1][k], comp[2][k]};
  }
  return TangentFieldSamples(std::move(points), std::move(values));
}

}  // namespace detail

/// Vector expansion of degree L evaluated at arbitrary points with the
/// direct scalar backend.
inline TangentFieldSamples adjoint_favest(const VectorCoefficients& coeffs,
                                          std::span<const SpherePoint> points) {
  const auto comp = detail::merged_component_tables(coeffs);
  const ScalarCoefficients* tables[] = {&comp[0], &comp[1], &comp[2]};
  return detail::assemble_components({points.begin(), points.end()},
                                     adjoint_sht_direct_batch(tables, points));
}

/// Vector expansion of degree L on a tensor grid with the fast backend.
inline TangentFieldSamples adjoint_favest(const VectorCoefficients& coeffs,
                                          const TensorGrid& grid) {
  const auto comp = detail::merged_component_tables(coeffs);
  const ScalarCoefficients* tables[] = {&comp[0], &comp[1], &comp[2]};
  return detail::assemble_components(grid.points(), adjoint_sht_fast_batch(tables, grid));
}

/// Vector expansion evaluated at a rule's points; the fast backend is used
/// when the rule has tensor-grid structure (or when requested explicitly).
inline TangentFieldSamples adjoint_favest(const VectorCoefficients& coeffs,
                                          const QuadratureRule& rule,
                                          ScalarPath path = ScalarPath::Auto) {
  const int top = coeffs.l_max() + 1;
  if (!detail::use_fast(rule, top, path, "adjoint_favest")) {
    return adjoint_favest(coeffs, std::span<const SpherePoint>(rule.points));
  }
  const auto comp = detail::merged_component_tables(coeffs);
  const ScalarCoefficients* tables[] = {&comp[0], &comp[1], &comp[2]};
  return detail::assemble_components(rule.points, adjoint_sht_fast_batch(tables, *rule.grid));
}

struct RoundtripResult {
  TangentFieldSamples reconstruction;
  double rel_l2_error = 0.0;
  double max_error = 0.0;
};

/// Forward then adjoint transform at the rule's points, with
/// quadrature-weighted error metrics against the input.
inline RoundtripResult roundtrip(const TangentFieldSamples& samples, const QuadratureRule& rule,
                                 int l_max, ScalarPath path = ScalarPath::Auto) {
  const auto coeffs = forward_favest(samples, rule, l_max, path);
  RoundtripResult out;
  out.reconstruction = adjoint_favest(coeffs, rule, path);
  const auto m = error_metrics(samples.values, out.reconstruction.values, rule.weights);
  out.rel_l2_error = m.rel_l2;
  out.max_error = m.max_abs;
  return out;
}

struct RepeatErrors {
  double t1_t0 = 0.0;        // |T1 - T0|_inf
  double t2_t0 = 0.0;        // |T2 - T0|_inf
  double t2_t1 = 0.0;        // |T2 - T1|_inf
  double coeff_drift = 0.0;  // max(|a1 - a0|_inf, |b1 - b0|_inf)
};

/// T0 -> (a0, b0) -> T1 -> (a1, b1) -> T2 with infinity-norm differences.
inline RepeatErrors repeat_transform_errors(const TangentFieldSamples& samples,
                                            const QuadratureRule& rule, int l_max,
                                            ScalarPath path = ScalarPath::Auto) {
  const auto c0 = forward_favest(samples, rule, l_max, path);
  const auto t1 = adjoint_favest(c0, rule, path);
  const auto c1 = forward_favest(t1, rule, l_max, path);
  const auto t2 = adjoint_favest(c1, rule, path);
  RepeatErrors e;
  e.t1_t0 = max_vector_difference(t1.values, samples.values);
  e.t2_t0 = max_vector_difference(t2.values, samples.values);
  e.t2_t1 = max_vector_difference(t2.values, t1.values);
  e.coeff_drift = max_abs_difference(c1, c0);
  return e;
}

}  // namespace favest
