#pragma once

// Polynomial-exact quadrature rules on the unit sphere: Gauss-Legendre tensor
// rules, spherical designs read from point files, and an exactness check.

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "favest/core_types.hpp"
#include "favest/legendre.hpp"
#include "favest/parallel.hpp"

namespace favest {

struct GaussLegendre {
  std::vector<double> nodes;    // ascending in [-1, 1]
  std::vector<double> weights;  // sum to 2
};

/// n-point Gauss-Legendre rule by Newton iteration on P_n from asymptotic
/// initial guesses (tolerance 1e-15, at most 100 steps per node).
inline GaussLegendre gauss_legendre(int n) {
  if (n < 1) throw DomainError("gauss_legendre: need at least one node");
  // P_n(x) and P_n'(x) by the three-term recurrence
  const auto legendre_with_derivative = [n](double x) {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    return std::pair{p1, n * (x * p1 - p0) / (x * x - 1.0)};
  };
  GaussLegendre gl;
  gl.nodes.resize(static_cast<std::size_t>(n));
  gl.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = legendre_with_derivative(x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-15) break;
    }
    const double dp = legendre_with_derivative(x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    gl.nodes[static_cast<std::size_t>(i)] = -x;
    gl.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    gl.weights[static_cast<std::size_t>(i)] = w;
    gl.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  if (n % 2 == 1) gl.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
  return gl;
}

/// Tensor grid exact for spherical polynomials of degree <= t:
/// ceil((t+1)/2) Gauss-Legendre rings in cos(theta), t+1 longitudes each.
inline TensorGrid gl_tensor_grid(int t) {
  if (t < 0) throw DomainError("gen_gl_tensor: exactness must be >= 0");
  const int n_theta = (t + 2) / 2;
  const int n_phi = t + 1;
  const auto gl = gauss_legendre(n_theta);
  TensorGrid g;
  g.n_phi = n_phi;
  // nodes ascend in cos(theta), so walk them backwards for increasing theta
  for (int i = n_theta - 1; i >= 0; --i) {
    g.ring_thetas.push_back(std::acos(gl.nodes[static_cast<std::size_t>(i)]));
    g.ring_weights.push_back(gl.weights[static_cast<std::size_t>(i)] * 2.0 * kPi / n_phi);
  }
  return g;
}

inline QuadratureRule rule_from_grid(const TensorGrid& grid, int exactness) {
  QuadratureRule rule;
  rule.points = grid.points();
  rule.weights.reserve(rule.points.size());
  for (double w : grid.ring_weights) {
    for (int j = 0; j < grid.n_phi; ++j) rule.weights.push_back(w);
  }
  rule.exactness = exactness;
  rule.kind = RuleKind::GlTensor;
  rule.grid = grid;
  return rule;
}

inline std::pair<TensorGrid, QuadratureRule> gen_gl_tensor(int t) {
  TensorGrid grid = gl_tensor_grid(t);
  QuadratureRule rule = rule_from_grid(grid, t);
  return {std::move(grid), std::move(rule)};
}

/// Rule with tensor structure, for callers that only need the rule.
inline QuadratureRule gl_rule(int t) { return gen_gl_tensor(t).second; }

namespace detail {

struct PointRow {
  double x, y, z, w;
  bool has_weight;
};

inline std::vector<PointRow> read_point_rows(std::istream& in, const std::string& name) {
  std::vector<PointRow> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::vector<double> vals;
    std::string tok;
    while (ls >> tok) {
      try {
        std::size_t used = 0;
        vals.push_back(std::stod(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw DomainError(name + ":" + std::to_string(line_no) + ": malformed number '" + tok + "'");
      }
    }
    if (vals.size() != 3 && vals.size() != 4) {
      throw DomainError(name + ":" + std::to_string(line_no) +
                        ": expected 3 or 4 columns, got " + std::to_string(vals.size()));
    }
    rows.push_back({vals[0], vals[1], vals[2], vals.size() == 4 ? vals[3] : 0.0, vals.size() == 4});
  }
  return rows;
}

inline SpherePoint checked_point(const PointRow& r, const std::string& name, std::size_t i) {
  try {
    return SpherePoint::from_cartesian(r.x, r.y, r.z, 1e-6);
  } catch (const DomainError&) {
    throw DomainError(name + ": point " + std::to_string(i + 1) + " is not on the unit sphere");
  }
}

inline std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open point file '" + path + "'");
  return in;
}

}  // namespace detail

/// Equal-weight spherical design from an "x y z" file. The claimed exactness
/// is recorded; call verify_exactness to certify it.
inline QuadratureRule load_design(std::istream& in, int t, const std::string& name = "design") {
  const auto rows = detail::read_point_rows(in, name);
  if (rows.empty()) throw DomainError(name + ": no points");
  QuadratureRule rule;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].has_weight) throw DomainError(name + ": design files carry no weight column");
    rule.points.push_back(detail::checked_point(rows[i], name, i));
  }
  rule.weights.assign(rule.points.size(), kFourPi / static_cast<double>(rule.points.size()));
  rule.exactness = t;
  rule.kind = RuleKind::SphericalDesign;
  return rule;
}

inline QuadratureRule load_design(const std::string& path, int t) {
  auto in = detail::open_or_throw(path);
  return load_design(in, t, path);
}

/// Rule from an "x y z" (equal weights) or "x y z w" file. Exactness is
/// unclaimed (-1) unless given.
inline QuadratureRule load_rule(std::istream& in, int exactness = -1,
                                const std::string& name = "rule") {
  const auto rows = detail::read_point_rows(in, name);
  if (rows.empty()) throw DomainError(name + ": no points");
  const bool weighted = rows.front().has_weight;
  QuadratureRule rule;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].has_weight != weighted) throw DomainError(name + ": inconsistent column count");
    rule.points.push_back(detail::checked_point(rows[i], name, i));
    if (weighted) rule.weights.push_back(rows[i].w);
  }
  if (!weighted) {
    rule.weights.assign(rule.points.size(), kFourPi / static_cast<double>(rule.points.size()));
    rule.kind = RuleKind::SphericalDesign;
  } else {
    rule.kind = RuleKind::Custom;
  }
  rule.exactness = exactness;
  return rule;
}

inline QuadratureRule load_rule(const std::string& path, int exactness = -1) {
  auto in = detail::open_or_throw(path);
  return load_rule(in, exactness, path);
}

/// Writes "x y z w" rows with 17 significant digits.
inline void write_rule(std::ostream& out, const QuadratureRule& rule) {
  out << std::setprecision(17);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const auto& p = rule.points[i];
    out << p.x() << ' ' << p.y() << ' ' << p.z() << ' ' << rule.weights[i] << '\n';
  }
}

struct ExactnessReport {
  double max_defect = 0.0;
  bool pass = false;
};

inline constexpr double kExactnessTolerance = 1e-8;

/// max over l <= t, |m| <= l of |sum_i w_i Y_{l,m}(x_i) - sqrt(4 pi) [l = m = 0]|.
/// Tensor rules are evaluated ring by ring (longitude sums once per order).
inline ExactnessReport verify_exactness(const QuadratureRule& rule, int t) {
  if (t < 0) throw DomainError("verify_exactness: negative degree");
  ScalarCoefficients moments(t);
  auto mv = moments.values();
  if (rule.grid && rule.grid->size() == rule.size()) {
    const TensorGrid& g = *rule.grid;
    // sum_j e^{i m phi_j} for each order
    std::vector<Complex> lon(static_cast<std::size_t>(2 * t + 1));
    for (int m = -t; m <= t; ++m) {
      Complex s{};
      for (int j = 0; j < g.n_phi; ++j) s += std::polar(1.0, m * g.phi(j));
      lon[static_cast<std::size_t>(m + t)] = s;
    }
    std::vector<double> p(LegendreBlock::index(t, t) + 1);
    for (std::size_t r = 0; r < g.n_rings(); ++r) {
      const double th = g.ring_thetas[r];
      detail::legendre_into(t, std::cos(th), std::sin(th), p.data());
      for (int l = 0; l <= t; ++l) {
        for (int m = -l; m <= l; ++m) {
          const int am = std::abs(m);
          const double sign = (m < 0 && (am & 1)) ? -1.0 : 1.0;
          mv[static_cast<std::size_t>(l * l + l + m)] +=
              g.ring_weights[r] * sign * p[LegendreBlock::index(l, am)] *
              lon[static_cast<std::size_t>(m + t)];
        }
      }
    }
  } else {
    std::vector<Complex> row(spectrum_size(t));
    std::vector<double> scratch;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      eval_ylm_row_into(t, rule.points[i], row, scratch);
      for (std::size_t j = 0; j < row.size(); ++j) mv[j] += rule.weights[i] * row[j];
    }
  }
  ExactnessReport rep;
  mv[0] -= std::sqrt(kFourPi);
  for (const Complex& v : mv) rep.max_defect = std::max(rep.max_defect, std::abs(v));
  rep.pass = rep.max_defect <= kExactnessTolerance;
  return rep;
}

/// The 12 vertices of the regular icosahedron, a spherical 5-design.
inline QuadratureRule icosahedron_design() {
  const double g = (1.0 + std::sqrt(5.0)) / 2.0;
  const double s = 1.0 / std::sqrt(1.0 + g * g);
  const double a = s, b = g * s;
  const double verts[12][3] = {{0, a, b},  {0, a, -b},  {0, -a, b},  {0, -a, -b},
                               {a, b, 0},  {a, -b, 0},  {-a, b, 0},  {-a, -b, 0},
                               {b, 0, a},  {b, 0, -a},  {-b, 0, a},  {-b, 0, -a}};
  QuadratureRule rule;
  for (const auto& v : verts) rule.points.push_back(SpherePoint::from_cartesian(v[0], v[1], v[2]));
  rule.weights.assign(12, kFourPi / 12.0);
  rule.exactness = 5;
  rule.kind = RuleKind::SphericalDesign;
  return rule;
}

}  // namespace favest
