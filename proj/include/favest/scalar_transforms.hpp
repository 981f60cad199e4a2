#pragma once

// Forward and adjoint scalar spherical harmonic transforms.
//
//   forward:  F_{l,m} = sum_k w_k f_k conj(Y_{l,m}(x_k))
//   adjoint:  S_L(g; x) = sum_{l <= L} sum_m g_{l,m} Y_{l,m}(x)
//
// The direct routines work for any point set at O(N L^2) cost. The fast
// routines exploit an iso-latitude TensorGrid: a longitudinal FFT per ring
// followed by a Legendre sum over rings per order m, O(N log n_phi + n_rings L^2).

#include <fftw3.h>

#include <complex>
#include <cstddef>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "favest/core_types.hpp"
#include "favest/legendre.hpp"
#include "favest/parallel.hpp"

namespace favest {

namespace detail {

inline std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

// In-place batch of `howmany` contiguous complex FFTs of length n.
class RingFft {
 public:
  RingFft(int n, int howmany, Complex* data, int sign) {
    std::lock_guard lock(fftw_planner_mutex());
    auto* buf = reinterpret_cast<fftw_complex*>(data);
    plan_ = fftw_plan_many_dft(1, &n, howmany, buf, nullptr, 1, n, buf, nullptr, 1, n, sign,
                               FFTW_ESTIMATE);
  }
  RingFft(const RingFft&) = delete;
  RingFft& operator=(const RingFft&) = delete;
  ~RingFft() {
    std::lock_guard lock(fftw_planner_mutex());
    if (plan_ != nullptr) fftw_destroy_plan(plan_);
  }

  void execute(Complex* data) const {
    auto* buf = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(plan_, buf, buf);
  }

 private:
  fftw_plan plan_ = nullptr;
};

inline std::size_t fft_bin(int m, int n) {
  const int r = m % n;
  return static_cast<std::size_t>(r < 0 ? r + n : r);
}

inline void check_grid(const TensorGrid& grid, int l_max, const char* who) {
  if (grid.ring_weights.size() != grid.ring_thetas.size() || grid.n_phi < 1) {
    throw DomainError(std::string(who) + ": malformed tensor grid");
  }
  if (grid.n_phi < 2 * l_max + 1) {
    throw PreconditionError(std::string(who) + ": n_phi = " + std::to_string(grid.n_phi) +
                            " aliases orders for degree " + std::to_string(l_max) +
                            " (need n_phi >= 2L+1)");
  }
}

/// Pbar_l^m for every ring, ring-major.
inline std::vector<double> ring_legendre(const TensorGrid& grid, int l_max) {
  const std::size_t stride = LegendreBlock::index(l_max, l_max) + 1;
  std::vector<double> out(stride * grid.n_rings());
  parallel_for(grid.n_rings(), [&](std::size_t r) {
    const double th = grid.ring_thetas[r];
    legendre_into(l_max, std::cos(th), std::sin(th), out.data() + r * stride);
  });
  return out;
}

}  // namespace detail

/// Forward transforms of several sample sequences sharing one point set;
/// spherical harmonics are evaluated once per point.
inline std::vector<ScalarCoefficients> forward_sht_direct_batch(
    std::span<const std::span<const Complex>> fields, std::span<const SpherePoint> points,
    std::span<const double> weights, int l_max) {
  if (l_max < 0) throw DomainError("forward_sht_direct: negative degree");
  if (weights.size() != points.size()) {
    throw DomainError("forward_sht_direct: weights/points length mismatch");
  }
  for (const auto& f : fields) {
    if (f.size() != points.size()) {
      throw DomainError("forward_sht_direct: sample count does not match the rule");
    }
  }
  const std::size_t nf = fields.size();
  const std::size_t ns = spectrum_size(l_max);
  const int chunks = num_threads();
  std::vector<std::vector<Complex>> partial(static_cast<std::size_t>(std::max(chunks, 1)));
  parallel_chunks(points.size(), chunks, [&](int c, std::size_t b, std::size_t e) {
    auto& acc = partial[static_cast<std::size_t>(c)];
    acc.assign(nf * ns, Complex{});
    std::vector<Complex> row(ns);
    std::vector<double> scratch;
    for (std::size_t k = b; k < e; ++k) {
      eval_ylm_row_into(l_max, points[k], row, scratch);
      for (std::size_t f = 0; f < nf; ++f) {
        const Complex wf = weights[k] * fields[f][k];
        Complex* out = acc.data() + f * ns;
        for (std::size_t i = 0; i < ns; ++i) out[i] += wf * std::conj(row[i]);
      }
    }
  });
  std::vector<ScalarCoefficients> result(nf, ScalarCoefficients(l_max));
  for (const auto& acc : partial) {
    if (acc.empty()) continue;
    for (std::size_t f = 0; f < nf; ++f) {
      auto v = result[f].values();
      for (std::size_t i = 0; i < ns; ++i) v[i] += acc[f * ns + i];
    }
  }
  return result;
}

inline ScalarCoefficients forward_sht_direct(std::span<const Complex> f,
                                             const QuadratureRule& rule, int l_max) {
  const std::span<const Complex> one[] = {f};
  return std::move(forward_sht_direct_batch(one, rule.points, rule.weights, l_max).front());
}

/// Fast forward transforms on a tensor grid. Sample order is ring-major.
inline std::vector<ScalarCoefficients> forward_sht_fast_batch(
    std::span<const std::span<const Complex>> fields, const TensorGrid& grid, int l_max) {
  if (l_max < 0) throw DomainError("forward_sht_fast: negative degree");
  detail::check_grid(grid, l_max, "forward_sht_fast");
  const std::size_t n = grid.size();
  for (const auto& f : fields) {
    if (f.size() != n) throw DomainError("forward_sht_fast: sample count does not match grid");
  }
  const int n_phi = grid.n_phi;
  const std::size_t n_rings = grid.n_rings();
  const auto legendre = detail::ring_legendre(grid, l_max);
  const std::size_t stride = LegendreBlock::index(l_max, l_max) + 1;

  std::vector<ScalarCoefficients> result;
  result.reserve(fields.size());
  std::vector<Complex> buf(n);
  detail::RingFft fft(n_phi, static_cast<int>(n_rings), buf.data(), FFTW_FORWARD);
  for (const auto& f : fields) {
    std::copy(f.begin(), f.end(), buf.begin());
    fft.execute(buf.data());
    ScalarCoefficients out(l_max);
    auto values = out.values();
    // Each order m owns a disjoint set of output entries.
    parallel_for(static_cast<std::size_t>(2 * l_max + 1), [&](std::size_t im) {
      const int m = static_cast<int>(im) - l_max;
      const int am = std::abs(m);
      const double sign = (m < 0 && (am & 1)) ? -1.0 : 1.0;
      const std::size_t bin = detail::fft_bin(m, n_phi);
      for (std::size_t r = 0; r < n_rings; ++r) {
        const Complex ring = grid.ring_weights[r] * sign * buf[r * static_cast<std::size_t>(n_phi) + bin];
        const double* p = legendre.data() + r * stride;
        for (int l = am; l <= l_max; ++l) {
          values[static_cast<std::size_t>(l * l + l + m)] += ring * p[LegendreBlock::index(l, am)];
        }
      }
    });
    result.push_back(std::move(out));
  }
  return result;
}

inline ScalarCoefficients forward_sht_fast(std::span<const Complex> f, const TensorGrid& grid,
                                           int l_max) {
  const std::span<const Complex> one[] = {f};
  return std::move(forward_sht_fast_batch(one, grid, l_max).front());
}

/// Synthesis of several coefficient tables at the same points.
inline std::vector<std::vector<Complex>> adjoint_sht_direct_batch(
    std::span<const ScalarCoefficients* const> coeffs, std::span<const SpherePoint> points) {
  int l_max = 0;
  for (const auto* g : coeffs) l_max = std::max(l_max, g->l_max());
  const std::size_t ns = spectrum_size(l_max);
  std::vector<std::vector<Complex>> out(coeffs.size(), std::vector<Complex>(points.size()));
  std::vector<std::vector<Complex>> padded;
  padded.reserve(coeffs.size());
  for (const auto* g : coeffs) {
    const ScalarCoefficients full = g->resized(l_max);
    const auto v = full.values();
    padded.emplace_back(v.begin(), v.end());
  }
  parallel_chunks(points.size(), num_threads(), [&](int, std::size_t b, std::size_t e) {
    std::vector<Complex> row(ns);
    std::vector<double> scratch;
    for (std::size_t k = b; k < e; ++k) {
      eval_ylm_row_into(l_max, points[k], row, scratch);
      for (std::size_t f = 0; f < padded.size(); ++f) {
        Complex s{};
        const Complex* g = padded[f].data();
        for (std::size_t i = 0; i < ns; ++i) s += g[i] * row[i];
        out[f][k] = s;
      }
    }
  });
  return out;
}

inline std::vector<Complex> adjoint_sht_direct(const ScalarCoefficients& g,
                                               std::span<const SpherePoint> points) {
  const ScalarCoefficients* one[] = {&g};
  return std::move(adjoint_sht_direct_batch(one, points).front());
}

/// Fast synthesis on a tensor grid; output is ring-major.
inline std::vector<std::vector<Complex>> adjoint_sht_fast_batch(
    std::span<const ScalarCoefficients* const> coeffs, const TensorGrid& grid) {
  int l_max = 0;
  for (const auto* g : coeffs) l_max = std::max(l_max, g->l_max());
  detail::check_grid(grid, l_max, "adjoint_sht_fast");
  const int n_phi = grid.n_phi;
  const std::size_t n_rings = grid.n_rings();
  const auto legendre = detail::ring_legendre(grid, l_max);
  const std::size_t stride = LegendreBlock::index(l_max, l_max) + 1;

  std::vector<std::vector<Complex>> result;
  result.reserve(coeffs.size());
  for (const auto* gp : coeffs) {
    const ScalarCoefficients& g = *gp;
    const int lg = g.l_max();
    std::vector<Complex> buf(grid.size(), Complex{});
    detail::RingFft fft(n_phi, static_cast<int>(n_rings), buf.data(), FFTW_BACKWARD);
    parallel_for(static_cast<std::size_t>(2 * lg + 1), [&](std::size_t im) {
      const int m = static_cast<int>(im) - lg;
      const int am = std::abs(m);
      const double sign = (m < 0 && (am & 1)) ? -1.0 : 1.0;
      const std::size_t bin = detail::fft_bin(m, n_phi);
      for (std::size_t r = 0; r < n_rings; ++r) {
        const double* p = legendre.data() + r * stride;
        Complex s{};
        for (int l = am; l <= lg; ++l) s += g(l, m) * p[LegendreBlock::index(l, am)];
        buf[r * static_cast<std::size_t>(n_phi) + bin] = sign * s;
      }
    });
    fft.execute(buf.data());
    result.push_back(std::move(buf));
  }
  return result;
}

inline std::vector<Complex> adjoint_sht_fast(const ScalarCoefficients& g, const TensorGrid& grid) {
  const ScalarCoefficients* one[] = {&g};
  return std::move(adjoint_sht_fast_batch(one, grid).front());
}

}  // namespace favest
