#pragma once

// Wigner 3-j symbols by the Racah factorial sum, accumulated in log space.
// This is a reference evaluator used to cross-check the closed-form
// Clebsch-Gordan coefficients; production code never calls it.

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace favest {

namespace detail {
inline long double log_factorial(int n) { return std::lgamma(static_cast<long double>(n) + 1.0L); }
}  // namespace detail

/// (j1 j2 j3; m1 m2 m3) for integer arguments. Selection-rule violations
/// return 0. Accurate to ~1e-13 for j up to about 40.
inline double wigner3j_oracle(int j1, int j2, int j3, int m1, int m2, int m3) {
  if (j1 < 0 || j2 < 0 || j3 < 0) return 0.0;
  if (m1 + m2 + m3 != 0) return 0.0;
  if (std::abs(m1) > j1 || std::abs(m2) > j2 || std::abs(m3) > j3) return 0.0;
  if (j3 < std::abs(j1 - j2) || j3 > j1 + j2) return 0.0;

  using detail::log_factorial;
  const long double log_delta = log_factorial(j1 + j2 - j3) + log_factorial(j1 - j2 + j3) +
                                log_factorial(-j1 + j2 + j3) - log_factorial(j1 + j2 + j3 + 1);
  const long double log_pref =
      0.5L * (log_delta + log_factorial(j1 + m1) + log_factorial(j1 - m1) +
              log_factorial(j2 + m2) + log_factorial(j2 - m2) + log_factorial(j3 + m3) +
              log_factorial(j3 - m3));

  const int k_min = std::max({0, j2 - j3 - m1, j1 - j3 + m2});
  const int k_max = std::min({j1 + j2 - j3, j1 - m1, j2 + m2});
  long double sum = 0.0L;
  for (int k = k_min; k <= k_max; ++k) {
    const long double log_den = log_factorial(k) + log_factorial(j3 - j2 + k + m1) +
                                log_factorial(j3 - j1 + k - m2) +
                                log_factorial(j1 + j2 - j3 - k) + log_factorial(j1 - k - m1) +
                                log_factorial(j2 - k + m2);
    const long double term = std::exp(log_pref - log_den);
    sum += (k % 2 == 0) ? term : -term;
  }
  const int phase = j1 - j2 - m3;
  return static_cast<double>((std::abs(phase) % 2 == 0) ? sum : -sum);
}

/// Clebsch-Gordan coefficient <j1 m1; j2 m2 | j m> through the 3-j relation
/// C = (-1)^{m + j1 - j2} sqrt(2j+1) (j1 j2 j; m1 m2 -m).
inline double clebsch_gordan_oracle(int j, int m, int j1, int m1, int j2, int m2) {
  const double three_j = wigner3j_oracle(j1, j2, j, m1, m2, -m);
  const int phase = m + j1 - j2;
  const double s = (std::abs(phase) % 2 == 0) ? 1.0 : -1.0;
  return s * std::sqrt(2.0 * j + 1.0) * three_j;
}

}  // namespace favest
