#pragma once

// Stability ratios, random test data and the timing harness.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "favest/clebsch_gordan.hpp"
#include "favest/core_types.hpp"
#include "favest/legendre.hpp"
#include "favest/metrics.hpp"
#include "favest/parallel.hpp"
#include "favest/quadrature.hpp"
#include "favest/transforms.hpp"
#include "favest/vsh.hpp"

namespace favest {

// ---------------------------------------------------------------------------
// Seeded random data.

/// N points uniform on the sphere (normalized Gaussian vectors).
inline std::vector<SpherePoint> random_sphere_points(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<SpherePoint> out;
  out.reserve(n);
  while (out.size() < n) {
    const double x = g(rng), y = g(rng), z = g(rng);
    const double r = std::sqrt(x * x + y * y + z * z);
    if (r < 1e-12) continue;
    out.push_back(SpherePoint::from_cartesian(x / r, y / r, z / r));
  }
  return out;
}

/// Complex Gaussian vectors projected onto the tangent plane at each point.
inline TangentFieldSamples random_tangent_samples(std::vector<SpherePoint> points,
                                                  std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<CVec3> values(points.size());
  for (std::size_t k = 0; k < points.size(); ++k) {
    CVec3 v;
    for (auto& c : v) c = Complex{g(rng), g(rng)};
    const Complex n = dot(v, points[k].cartesian());
    for (int i = 0; i < 3; ++i) v[i] -= n * points[k].cartesian()[i];
    values[k] = v;
  }
  return TangentFieldSamples(std::move(points), std::move(values));
}

/// Complex Gaussian a_{l,m}, b_{l,m} for 1 <= l <= L.
inline VectorCoefficients random_coefficients(int l_max, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  VectorCoefficients c(l_max);
  for (int l = 1; l <= l_max; ++l) {
    for (int m = -l; m <= l; ++m) {
      c.div.at(l, m) = Complex{g(rng), g(rng)};
      c.curl.at(l, m) = Complex{g(rng), g(rng)};
    }
  }
  return c;
}

// ---------------------------------------------------------------------------
// Stability ratios.

struct StabilityReport {
  int L = 0;
  std::size_t N = 0;
  double r_hat = 0.0;    // max |y^div*(x_k)| / V^_{l,m,k}
  double r_tilde = 0.0;  // max |y^curl*(x_k)| / V~_{l,m,k}
  double r_hat_over_N = 0.0;
  double r_tilde_over_N = 0.0;
  // Largest excess of a single Cartesian component over its bound (<= 0 when
  // the triangle-inequality bound holds everywhere) and the number of
  // (l, m, k) triples checked.
  double max_component_excess = 0.0;
  std::size_t checked = 0;
  bool bound_holds() const { return max_component_excess <= 0.0; }
};

namespace detail {

// Relative slack for the per-component bound, covering rounding in both sides.
inline constexpr double kBoundSlack = 1e-12;

}  // namespace detail

/// Ratios of |y(x_k)| to the sum of absolute values of the terms in the
/// coefficient expansion, maximized over l <= L, 1 <= |m| <= l and the rule's
/// points. Triples whose denominator is <= 1e-300 are skipped.
inline StabilityReport stability_ratios(int l_max, std::span<const SpherePoint> points) {
  if (l_max < 1) throw DomainError("stability_ratios: degree must be >= 1");
  const CGTables t = build_cg_tables(l_max);
  const auto& xi = t.xi;
  const auto& mu = t.mu;
  struct Partial {
    double r_hat = 0.0, r_tilde = 0.0, excess = -1.0;
    std::size_t checked = 0;
  };
  const int chunks = num_threads();
  std::vector<Partial> partial(static_cast<std::size_t>(std::max(chunks, 1)));
  parallel_chunks(points.size(), chunks, [&](int c, std::size_t b, std::size_t e) {
    Partial acc;
    std::vector<Complex> row(spectrum_size(l_max + 1));
    std::vector<double> scratch;
    for (std::size_t k = b; k < e; ++k) {
      eval_ylm_row_into(l_max + 1, points[k], row, scratch);
      const auto Y = [&](int l, int m) { return std::abs(detail::row_at(row, l_max + 1, l, m)); };
      for (int l = 1; l <= l_max; ++l) {
        for (int m = -l; m <= l; ++m) {
          if (m == 0) continue;
          const VshValue y = detail::vsh_from_row(l, m, row, l_max + 1);
          const double v_hat =
              std::sqrt(2.0) *
              (std::abs(xi[0](l - 1, m - 1)) * Y(l - 1, m - 1) +
               std::abs(xi[1](l + 1, m - 1)) * Y(l + 1, m - 1) +
               std::abs(xi[2](l - 1, m + 1)) * Y(l - 1, m + 1) +
               std::abs(xi[3](l + 1, m + 1)) * Y(l + 1, m + 1) +
               std::abs(xi[4](l - 1, m)) * Y(l - 1, m) + std::abs(xi[5](l + 1, m)) * Y(l + 1, m));
          const double v_tilde =
              std::sqrt(2.0) * (std::abs(mu[0](l, m - 1)) * Y(l, m - 1) +
                                std::abs(mu[2](l, m + 1)) * Y(l, m + 1) +
                                std::abs(mu[1](l, m)) * Y(l, m));
          if (v_hat > 1e-300) {
            acc.r_hat = std::max(acc.r_hat, norm(y.div) / v_hat);
            for (const Complex& comp : y.div) {
              acc.excess = std::max(acc.excess, std::abs(comp) - v_hat * (1.0 + detail::kBoundSlack));
            }
            ++acc.checked;
          }
          if (v_tilde > 1e-300) {
            acc.r_tilde = std::max(acc.r_tilde, norm(y.curl) / v_tilde);
            for (const Complex& comp : y.curl) {
              acc.excess =
                  std::max(acc.excess, std::abs(comp) - v_tilde * (1.0 + detail::kBoundSlack));
            }
            ++acc.checked;
          }
        }
      }
    }
    partial[static_cast<std::size_t>(c)] = acc;
  });
  StabilityReport rep;
  rep.L = l_max;
  rep.N = points.size();
  rep.max_component_excess = -1.0;
  for (const auto& p : partial) {
    rep.r_hat = std::max(rep.r_hat, p.r_hat);
    rep.r_tilde = std::max(rep.r_tilde, p.r_tilde);
    rep.max_component_excess = std::max(rep.max_component_excess, p.excess);
    rep.checked += p.checked;
  }
  if (rep.N > 0) {
    rep.r_hat_over_N = rep.r_hat / static_cast<double>(rep.N);
    rep.r_tilde_over_N = rep.r_tilde / static_cast<double>(rep.N);
  }
  return rep;
}

inline StabilityReport stability_ratios(int l_max, const QuadratureRule& rule) {
  return stability_ratios(l_max, std::span<const SpherePoint>(rule.points));
}

// ---------------------------------------------------------------------------
// Timing harness.

struct BenchRecord {
  int L = 0;
  std::size_t N = 0;
  std::size_t M = 0;  // L^2 + L
  double t_fwd = 0.0;
  double t_adj = 0.0;
  std::optional<double> ratio_fwd;  // t_fwd / previous t_fwd
  std::optional<double> ratio_adj;
  int threads = 1;
};

namespace detail {

template <typename Fn>
double median_seconds(int reps, Fn&& fn) {
  std::vector<double> t;
  for (int r = 0; r < std::max(reps, 1); ++r) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    t.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  std::sort(t.begin(), t.end());
  return t[t.size() / 2];
}

}  // namespace detail

/// Median wall-clock time of forward_favest and adjoint_favest on a GL
/// tensor rule of exactness 2(L+1) for each degree, using the chosen scalar
/// backend and `threads` workers (1 by default for clean timings).
inline std::vector<BenchRecord> bench(std::span<const int> degrees, ScalarPath path, int reps,
                                      int threads = 1, std::uint64_t seed = 1) {
  const int saved = num_threads();
  set_num_threads(threads);
  std::vector<BenchRecord> out;
  try {
    for (int L : degrees) {
      const QuadratureRule rule = gl_rule(2 * (L + 1));
      const TangentFieldSamples samples = random_tangent_samples(rule.points, seed);
      const VectorCoefficients coeffs = random_coefficients(L, seed + 1);
      BenchRecord rec;
      rec.L = L;
      rec.N = rule.size();
      rec.M = static_cast<std::size_t>(L) * static_cast<std::size_t>(L + 1);
      rec.threads = num_threads();
      rec.t_fwd = detail::median_seconds(reps, [&] { (void)forward_favest(samples, rule, L, path); });
      rec.t_adj = detail::median_seconds(reps, [&] { (void)adjoint_favest(coeffs, rule, path); });
      if (!out.empty()) {
        rec.ratio_fwd = rec.t_fwd / out.back().t_fwd;
        rec.ratio_adj = rec.t_adj / out.back().t_adj;
      }
      out.push_back(rec);
    }
  } catch (...) {
    set_num_threads(saved);
    throw;
  }
  set_num_threads(saved);
  return out;
}

}  // namespace favest
