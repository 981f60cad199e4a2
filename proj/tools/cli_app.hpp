#pragma once

// Command-line front end. Exit codes: 0 success, 1 numerical check failed,
// 2 usage or I/O error.

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "favest/favest.hpp"

namespace favest::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

namespace detail {

// Writes to a file, or to `fallback` when the path is empty or "-".
class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw DomainError("cannot write '" + path + "'");
      stream_ = file_.get();
    }
    *stream_ << std::setprecision(17);
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

struct RuleChoice {
  QuadratureRule rule;
  std::string label;
};

// "--rule gl" or "--rule design FILE".
inline RuleChoice choose_rule(const std::vector<std::string>& args, int exactness) {
  if (args.empty() || args[0] == "gl") {
    if (args.size() > 1) throw CLI::ValidationError("--rule", "gl takes no file");
    return {gl_rule(exactness), "gl"};
  }
  if (args[0] == "design") {
    if (args.size() != 2) throw CLI::ValidationError("--rule", "design needs a FILE");
    return {load_design(args[1], exactness), "design"};
  }
  throw CLI::ValidationError("--rule", "expected 'gl' or 'design FILE'");
}

inline FieldId field_or_throw(const std::string& name) {
  const auto id = parse_field_id(name);
  if (!id) throw CLI::ValidationError("--field", "expected a, b or c");
  return *id;
}

inline QuadratureRule points_or_gl(const std::string& path, int exactness) {
  return path.empty() ? gl_rule(exactness) : load_rule(path, exactness);
}

}  // namespace detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
  CLI::App app{"Fast vector spherical harmonic transforms on the sphere", "favest"};
  app.require_subcommand(1);
  int threads = 0;
  std::uint64_t seed = 1;
  app.add_option_function<int>(
         "--threads",
         [&](int n) {
           threads = n;
           if (n > 0) set_num_threads(n);
         },
         "worker threads (default: FAVEST_THREADS or all cores)")
      ->check(CLI::NonNegativeNumber)
      ->trigger_on_parse();
  app.add_option("--seed", seed, "seed for random points and data");

  int status = kExitOk;

  // quad gen-gl / quad check
  auto* quad = app.add_subcommand("quad", "quadrature rules");
  quad->require_subcommand(1);
  int gen_t = 0;
  std::string gen_out;
  auto* gen = quad->add_subcommand("gen-gl", "write a Gauss-Legendre tensor rule");
  gen->add_option("--exactness", gen_t, "polynomial degree t")->required()->check(CLI::NonNegativeNumber);
  gen->add_option("--out", gen_out, "x y z w file ('-' for stdout)");
  gen->callback([&] {
    detail::Output o(gen_out, out);
    write_rule(*o, gl_rule(gen_t));
  });

  std::string check_file;
  int check_t = 0;
  auto* check = quad->add_subcommand("check", "verify polynomial exactness of a rule file");
  check->add_option("--file", check_file, "x y z [w] file")->required();
  check->add_option("--exactness", check_t, "degree to certify")->required()->check(CLI::NonNegativeNumber);
  check->callback([&] {
    const auto rep = verify_exactness(load_rule(check_file), check_t);
    out << std::setprecision(6) << "max_defect " << rep.max_defect << '\n'
        << (rep.pass ? "pass" : "fail") << '\n';
    if (!rep.pass) status = kExitCheckFailed;
  });

  // fwd
  std::string fwd_points, fwd_field, fwd_out;
  int fwd_L = 0;
  std::optional<int> fwd_t;
  auto* fwd = app.add_subcommand("fwd", "forward transform of a field to coefficients");
  fwd->add_option("--points", fwd_points, "rule file (default: GL tensor rule)");
  fwd->add_option("--exactness", fwd_t, "exactness of the default GL rule (default 2(L+1))");
  fwd->add_option("--field", fwd_field, "a, b, c or a samples CSV file")->required();
  fwd->add_option("--degree", fwd_L, "degree L")->required()->check(CLI::PositiveNumber);
  fwd->add_option("--out", fwd_out, "coefficients JSON ('-' for stdout)");
  fwd->callback([&] {
    const QuadratureRule rule = detail::points_or_gl(fwd_points, fwd_t.value_or(2 * (fwd_L + 1)));
    const auto id = parse_field_id(fwd_field);
    TangentFieldSamples samples = id ? sample_field(*id, rule.points) : load_samples(fwd_field);
    const auto coeffs = forward_favest(samples, rule, fwd_L);
    detail::Output o(fwd_out, out);
    write_coefficients(*o, coeffs);
  });

  // adj
  std::string adj_coeffs, adj_points, adj_out;
  std::optional<int> adj_t;
  auto* adj = app.add_subcommand("adj", "evaluate a coefficient file at points");
  adj->add_option("--coeffs", adj_coeffs, "coefficients JSON")->required();
  adj->add_option("--points", adj_points, "rule or point file (default: GL tensor rule)");
  adj->add_option("--exactness", adj_t, "exactness of the default GL rule (default 2(L+1))");
  adj->add_option("--out", adj_out, "samples CSV ('-' for stdout)");
  adj->callback([&] {
    const auto coeffs = load_coefficients(adj_coeffs);
    const QuadratureRule rule =
        detail::points_or_gl(adj_points, adj_t.value_or(2 * (coeffs.l_max() + 1)));
    const auto samples = adjoint_favest(coeffs, rule);
    detail::Output o(adj_out, out);
    write_samples(*o, samples);
  });

  // roundtrip
  std::string rt_field = "a", rt_out;
  std::vector<std::string> rt_rule{"gl"};
  std::vector<std::string> rt_degrees;
  std::optional<int> rt_t;
  auto* rt = app.add_subcommand("roundtrip", "relative L2 error of forward then adjoint");
  rt->add_option("--field", rt_field, "a, b or c");
  rt->add_option("--rule", rt_rule, "gl | design FILE")->expected(1, 2);
  rt->add_option("--degrees", rt_degrees, "comma-separated degrees")->delimiter(',')->expected(0, -1);
  rt->add_option("--exactness", rt_t, "rule exactness (default 2(L+1))");
  rt->add_option("--out", rt_out, "CSV ('-' for stdout)");
  rt->callback([&] {
    const FieldId id = detail::field_or_throw(rt_field);
    std::vector<int> degrees;
    for (const std::string& tok : rt_degrees) {
      // A bare --degrees yields one empty token: an empty table.
      if (tok.empty()) continue;
      int L = 0;
      if (!CLI::detail::lexical_cast(tok, L)) {
        throw CLI::ValidationError("--degrees", "not an integer: " + tok);
      }
      if (L < 1) throw CLI::ValidationError("--degrees", "degrees must be >= 1");
      degrees.push_back(L);
    }
    detail::Output o(rt_out, out);
    *o << "field,rule,L,N,rel_l2,max_abs\n";
    for (int L : degrees) {
      const auto choice = detail::choose_rule(rt_rule, rt_t.value_or(2 * (L + 1)));
      const auto res = roundtrip(sample_field(id, choice.rule.points), choice.rule, L);
      *o << to_string(id) << ',' << choice.label << ',' << L << ',' << choice.rule.size() << ','
         << res.rel_l2_error << ',' << res.max_error << '\n';
    }
  });

  // repeat
  std::string rep_field = "a", rep_out;
  std::vector<std::string> rep_rule{"gl"};
  int rep_L = 0;
  std::optional<int> rep_t;
  auto* rep = app.add_subcommand("repeat", "errors of repeated forward/adjoint transforms");
  rep->add_option("--field", rep_field, "a, b or c");
  rep->add_option("--rule", rep_rule, "gl | design FILE")->expected(1, 2);
  rep->add_option("--degree", rep_L, "degree L")->required()->check(CLI::PositiveNumber);
  rep->add_option("--exactness", rep_t, "rule exactness (default 2(L+1))");
  rep->add_option("--out", rep_out, "CSV ('-' for stdout)");
  rep->callback([&] {
    const FieldId id = detail::field_or_throw(rep_field);
    const auto choice = detail::choose_rule(rep_rule, rep_t.value_or(2 * (rep_L + 1)));
    const auto e = repeat_transform_errors(sample_field(id, choice.rule.points), choice.rule, rep_L);
    detail::Output o(rep_out, out);
    *o << "field,rule,L,N,t1_t0,t2_t0,t2_t1,coeff_drift\n"
       << to_string(id) << ',' << choice.label << ',' << rep_L << ',' << choice.rule.size() << ','
       << e.t1_t0 << ',' << e.t2_t0 << ',' << e.t2_t1 << ',' << e.coeff_drift << '\n';
  });

  // bench
  std::vector<int> bench_degrees;
  std::string bench_out, bench_path = "fast";
  int bench_reps = 5;
  auto* bn = app.add_subcommand("bench", "timing of forward and adjoint transforms");
  bn->add_option("--degrees", bench_degrees, "comma-separated degrees")->delimiter(',')->required();
  bn->add_option("--path", bench_path, "scalar backend")->check(CLI::IsMember({"fast", "direct"}));
  bn->add_option("--reps", bench_reps, "repetitions (median is reported)")->check(CLI::PositiveNumber);
  bn->add_option("--out", bench_out, "CSV ('-' for stdout)");
  bn->callback([&] {
    for (int L : bench_degrees) {
      if (L < 1) throw CLI::ValidationError("--degrees", "degrees must be >= 1");
    }
    const ScalarPath path = bench_path == "fast" ? ScalarPath::FastScalar : ScalarPath::DirectScalar;
    const auto recs = bench(bench_degrees, path, bench_reps, threads > 0 ? threads : 1, seed);
    detail::Output o(bench_out, out);
    *o << "L,N,M,t_fwd,t_adj,ratio_fwd,ratio_adj,threads,path\n";
    for (const auto& r : recs) {
      *o << r.L << ',' << r.N << ',' << r.M << ',' << r.t_fwd << ',' << r.t_adj << ',';
      if (r.ratio_fwd) *o << *r.ratio_fwd;
      *o << ',';
      if (r.ratio_adj) *o << *r.ratio_adj;
      *o << ',' << r.threads << ',' << bench_path << '\n';
    }
  });

  // stability
  int st_L = 5;
  std::vector<int> st_n;
  std::string st_out;
  auto* st = app.add_subcommand("stability", "stability ratios at seeded random points");
  st->add_option("--degree", st_L, "degree L")->check(CLI::PositiveNumber);
  st->add_option("--n-list", st_n, "comma-separated point counts")->delimiter(',')->required();
  st->add_option("--out", st_out, "CSV ('-' for stdout)");
  st->callback([&] {
    for (int n : st_n) {
      if (n < 1) throw CLI::ValidationError("--n-list", "point counts must be >= 1");
    }
    detail::Output o(st_out, out);
    *o << "L,N,r_hat,r_tilde,r_hat_over_N,r_tilde_over_N,bound_holds\n";
    bool all_hold = true;
    for (int n : st_n) {
      const auto pts = random_sphere_points(static_cast<std::size_t>(n), seed + static_cast<std::uint64_t>(n));
      const auto r = stability_ratios(st_L, pts);
      all_hold = all_hold && r.bound_holds();
      *o << r.L << ',' << r.N << ',' << r.r_hat << ',' << r.r_tilde << ',' << r.r_hat_over_N << ','
         << r.r_tilde_over_N << ',' << (r.bound_holds() ? 1 : 0) << '\n';
    }
    if (!all_hold) status = kExitCheckFailed;
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "favest: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "favest: " << e.what() << '\n';
    return kExitUsage;
  } catch (const PreconditionError& e) {
    err << "favest: " << e.what() << '\n';
    return kExitUsage;
  }
  return status;
}

}  // namespace favest::cli
