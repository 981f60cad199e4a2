#pragma once

// Text formats for coefficients (JSON) and field samples (CSV).
//
// Coefficients: {"L_max": L, "a": [[re, im], ...], "b": [[re, im], ...]}
// with (L+1)^2 entries per array in flat order l^2 + l + m.
// Samples: header "theta,phi,t1_re,t1_im,t2_re,t2_im,t3_re,t3_im", then one
// row per point. Doubles are written with 17 significant digits.

#include <cctype>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "favest/core_types.hpp"

namespace favest {

namespace detail {

inline nlohmann::json coefficients_to_json(const ScalarCoefficients& c) {
  nlohmann::json arr = nlohmann::json::array();
  for (const Complex& v : c.values()) arr.push_back({v.real(), v.imag()});
  return arr;
}

inline ScalarCoefficients coefficients_from_json(const nlohmann::json& arr, int l_max,
                                                 const char* key) {
  if (!arr.is_array() || arr.size() != spectrum_size(l_max)) {
    throw DomainError(std::string("coefficients file: \"") + key + "\" must hold (L_max+1)^2 pairs");
  }
  ScalarCoefficients c(l_max);
  auto v = c.values();
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto& e = arr[i];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw DomainError(std::string("coefficients file: bad entry in \"") + key + "\"");
    }
    v[i] = Complex{e[0].get<double>(), e[1].get<double>()};
  }
  return c;
}

}  // namespace detail

inline void write_coefficients(std::ostream& out, const VectorCoefficients& c) {
  nlohmann::json j;
  j["L_max"] = c.l_max();
  j["a"] = detail::coefficients_to_json(c.div);
  j["b"] = detail::coefficients_to_json(c.curl);
  out << j.dump() << '\n';
}

inline VectorCoefficients read_coefficients(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("coefficients file: ") + e.what());
  }
  if (!j.is_object() || !j.contains("L_max") || !j["L_max"].is_number_integer()) {
    throw DomainError("coefficients file: missing integer \"L_max\"");
  }
  const int L = j["L_max"].get<int>();
  if (L < 1) throw DomainError("coefficients file: L_max must be >= 1");
  if (!j.contains("a") || !j.contains("b")) throw DomainError("coefficients file: missing \"a\" or \"b\"");
  return VectorCoefficients(detail::coefficients_from_json(j["a"], L, "a"),
                            detail::coefficients_from_json(j["b"], L, "b"));
}

inline const char* kSamplesHeader = "theta,phi,t1_re,t1_im,t2_re,t2_im,t3_re,t3_im";

inline void write_samples(std::ostream& out, const TangentFieldSamples& s) {
  out << kSamplesHeader << '\n' << std::setprecision(17);
  for (std::size_t k = 0; k < s.size(); ++k) {
    out << s.points[k].theta() << ',' << s.points[k].phi();
    for (const Complex& v : s.values[k]) out << ',' << v.real() << ',' << v.imag();
    out << '\n';
  }
}

inline TangentFieldSamples read_samples(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw DomainError("samples file: empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kSamplesHeader) throw DomainError("samples file: unexpected header");
  std::vector<SpherePoint> points;
  std::vector<CVec3> values;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    std::string tok;
    std::vector<double> f;
    while (std::getline(ls, tok, ',')) {
      try {
        std::size_t used = 0;
        f.push_back(std::stod(tok, &used));
        while (used < tok.size() && std::isspace(static_cast<unsigned char>(tok[used]))) ++used;
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw DomainError("samples file:" + std::to_string(line_no) + ": malformed number");
      }
    }
    if (f.size() != 8) throw DomainError("samples file:" + std::to_string(line_no) + ": expected 8 columns");
    points.push_back(SpherePoint::from_angles(f[0], f[1]));
    values.push_back({Complex{f[2], f[3]}, Complex{f[4], f[5]}, Complex{f[6], f[7]}});
  }
  return TangentFieldSamples(std::move(points), std::move(values));
}

inline void save_coefficients(const std::string& path, const VectorCoefficients& c) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write '" + path + "'");
  write_coefficients(out, c);
}

inline VectorCoefficients load_coefficients(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open '" + path + "'");
  return read_coefficients(in);
}

inline void save_samples(const std::string& path, const TangentFieldSamples& s) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write '" + path + "'");
  write_samples(out, s);
}

inline TangentFieldSamples load_samples(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open '" + path + "'");
  return read_samples(in);
}

}  // namespace favest
