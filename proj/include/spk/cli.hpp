#ifndef SPK_CLI_HPP
#define SPK_CLI_HPP

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "spk/csv.hpp"
#include "spk/error.hpp"
#include "spk/jacobi_integrals.hpp"
#include "spk/spherical_kernels.hpp"
#include "spk/verification.hpp"

namespace spk::cli {

enum ExitCode { kOk = 0, kUsage = 1, kNegative = 2, kExhausted = 3 };

inline constexpr const char* kThreadsEnv = "SPK_THREADS";

/// Parses "lo..hi[:step]" or a single number; step defaults to 1.
inline std::vector<double> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) return {parse_double(text)};
  const auto colon = text.find(':', dots);
  const double lo = parse_double(text.substr(0, dots));
  const double hi = parse_double(text.substr(dots + 2, colon == std::string::npos
                                                           ? std::string::npos
                                                           : colon - dots - 2));
  const double step = colon == std::string::npos ? 1.0 : parse_double(text.substr(colon + 1));
  if (!(step > 0.0) || hi < lo) throw std::invalid_argument("bad range '" + text + "'");
  std::vector<double> out;
  for (long k = 0;; ++k) {
    const double v = lo + k * step;
    if (v > hi + 1e-9 * step) break;
    out.push_back(v);
  }
  return out;
}

/// Comma-separated items, each a number or a range.
inline std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split_csv_line(text)) {
    if (item.empty()) throw std::invalid_argument("empty item in '" + text + "'");
    const auto part = parse_range(item);
    out.insert(out.end(), part.begin(), part.end());
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

inline std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_double(v[i]);
  return s;
}

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

/// `key = value` lines; blank lines are skipped and a leading "# " is
/// stripped, so an output header can be fed back as a config file. Reading
/// stops at the first other line, which in an output file is the CSV column
/// row, so nothing from the body is taken as a setting.
inline std::vector<std::pair<std::string, std::string>> read_config(std::istream& in) {
  std::vector<std::pair<std::string, std::string>> kv;
  std::string line;
  while (std::getline(in, line)) {
    std::string body = trim(line);
    if (body.rfind('#', 0) == 0) body = trim(body.substr(1));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) break;
    kv.emplace_back(trim(body.substr(0, eq)), trim(body.substr(eq + 1)));
  }
  return kv;
}

using Echo = std::vector<std::pair<std::string, std::string>>;

struct Common {
  std::string output;
  std::string format = "csv";
  unsigned threads = 1;
  std::uint64_t seed = 0;
};

inline void write_header(std::ostream& out, const std::string& command, const Echo& echo) {
  out << "# command = " << command << '\n';
  for (const auto& [k, v] : echo) out << "# " << k << " = " << v << '\n';
}

inline nlohmann::ordered_json config_json(const std::string& command, const Echo& echo) {
  nlohmann::ordered_json j;
  j["command"] = command;
  for (const auto& [k, v] : echo) j[k] = v;
  return j;
}

inline void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--output", c.output, "Write results here instead of stdout");
  sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--threads", c.threads, "Worker threads (0 = all cores)");
  sub->add_option("--seed", c.seed, "RNG seed");
  sub->add_option("--config", "key = value file; command-line flags win");
}

/// Parses and runs one command. Output goes to `out` unless --output is set.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Jacobi-integral positivity and truncated-power kernel toolkit", "spk"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);

  Common common;
  // eval
  double e_alpha = 0.0, e_beta = 0.0, e_delta = 1.0, e_t = kPi;
  int e_n = 0, e_m = 0;
  // coeffs / pdtest
  std::string k_space = "sphere";
  int k_dim = 3, k_nmax = 50, k_points = 100;
  double k_delta = 2.0, k_t = kPi;
  std::string k_gram;
  // scan / frontier
  std::string s_alpha = "0", s_beta = "0", s_rule = "alpha+1", s_delta = "1", s_t;
  int s_nmax = 50, s_tgrid = 64;
  double s_tol = 1e-12;
  bool s_skip_origin = false;
  // limits
  double l_alpha = 1.0, l_delta = NAN;
  std::string l_n = "1,2,4,8", l_t, l_m = "4..10";
  // polya
  double p_power = 3.0;
  int p_dim = 3, p_samples = 1000;
  std::string p_file;
  double p_tol = 1e-6;

  auto* eval = app.add_subcommand("eval", "Evaluate one F_{n,m}^{(alpha,beta),delta}(t)");
  eval->add_option("--alpha", e_alpha)->required();
  eval->add_option("--beta", e_beta)->required();
  eval->add_option("--delta", e_delta)->required();
  eval->add_option("--n", e_n)->required();
  eval->add_option("--m", e_m);
  eval->add_option("--t", e_t)->required();

  auto* coeffs = app.add_subcommand("coeffs", "Expansion coefficients of (t - theta)_+^delta");
  auto* pdtest = app.add_subcommand("pdtest", "Smallest Gram eigenvalue on a random point set");
  for (auto* sub : {coeffs, pdtest}) {
    sub->add_option("--space", k_space)
        ->check(CLI::IsMember({"sphere", "rp", "cp", "hp", "cayley"}));
    sub->add_option("--dim", k_dim);
    sub->add_option("--delta", k_delta)->required();
    sub->add_option("--t", k_t)->required();
  }
  coeffs->add_option("--nmax", k_nmax);
  pdtest->add_option("--points", k_points);
  pdtest->add_option("--gram-out", k_gram, "Also write the Gram matrix as CSV");

  auto* scan = app.add_subcommand("scan", "Sign scan of F_n over an (alpha, beta, delta, t) grid");
  auto* frontier = app.add_subcommand("frontier", "EXPLORATORY sign scan over a delta list");
  for (auto* sub : {scan, frontier}) {
    sub->add_option("--alpha", s_alpha, "List or lo..hi[:step]");
    sub->add_option("--beta", s_beta, "List or lo..hi[:step]");
    sub->add_option("--nmax", s_nmax);
    sub->add_option("--tgrid", s_tgrid, "Use t = k pi / K, k = 1..K");
    sub->add_option("--t", s_t, "Explicit t list (radians); overrides --tgrid");
    sub->add_option("--tol", s_tol, "Relative quadrature tolerance");
  }
  scan->add_option("--delta-rule", s_rule, "alpha+1, ceil(alpha)+1, or an explicit list");
  scan->add_option("--skip-origin", s_skip_origin, "Skip alpha = beta = 0");
  frontier->add_option("--delta", s_delta, "List or lo..hi[:step]");

  auto* limits = app.add_subcommand("limits", "Dyadic sequence against its Bessel limit");
  limits->add_option("--alpha", l_alpha);
  limits->add_option("--delta", l_delta, "Defaults to alpha+1");
  limits->add_option("--n", l_n);
  limits->add_option("--t", l_t, "Defaults to pi/4,pi/2,pi");
  limits->add_option("--m", l_m);

  auto* polya = app.add_subcommand("polya", "Polya-type criterion on g = (pi - theta)^p or samples");
  polya->add_option("--power", p_power);
  polya->add_option("--file", p_file, "CSV with a column g on theta = k pi / K");
  polya->add_option("--dim", p_dim);
  polya->add_option("--samples", p_samples, "Grid intervals K when sampling (pi - theta)^p");
  polya->add_option("--tol", p_tol);

  for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; })) {
    add_common(sub, common);
  }

  // Splice config-file entries in front of the command-line flags so the
  // latter take precedence.
  bool threads_flag = false;
  try {
    if (args.empty()) throw CLI::CallForHelp();
    std::vector<std::string> config_args;
    for (std::size_t i = 1; i < args.size(); ++i) {
      std::string path;
      if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
      if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
      if (args[i] == "--threads" || args[i].rfind("--threads=", 0) == 0) threads_flag = true;
      if (path.empty()) continue;
      std::ifstream f(path);
      if (!f) throw CLI::ValidationError("--config", "cannot open " + path);
      for (const auto& [k, v] : read_config(f)) {
        if (k == "command") {
          if (v != args[0]) throw CLI::ValidationError("--config", "config is for '" + v + "'");
          continue;
        }
        config_args.push_back("--" + k);
        config_args.push_back(v);
      }
    }
    std::vector<std::string> merged{args[0]};
    merged.insert(merged.end(), config_args.begin(), config_args.end());
    merged.insert(merged.end(), args.begin() + 1, args.end());
    std::reverse(merged.begin(), merged.end());  // CLI11 consumes from the back
    app.parse(merged);
  } catch (const CLI::CallForHelp&) {
    err << app.help();
    return args.empty() ? kUsage : kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  if (!threads_flag) {
    if (const char* env = std::getenv(kThreadsEnv)) common.threads = std::stoul(env);
  }

  const std::string command = app.get_subcommands().front()->get_name();
  std::ostringstream body;
  Echo echo;
  int code = kOk;
  const bool json = common.format == "json";
  nlohmann::ordered_json doc;

  auto finish_csv_header = [&] {
    echo.emplace_back("format", common.format);
    echo.emplace_back("threads", std::to_string(common.threads));
    echo.emplace_back("seed", std::to_string(common.seed));
  };

  try {
    if (command == "eval") {
      echo = {{"alpha", format_double(e_alpha)}, {"beta", format_double(e_beta)},
              {"delta", format_double(e_delta)}, {"n", std::to_string(e_n)},
              {"m", std::to_string(e_m)},        {"t", format_double(e_t)}};
      finish_csv_header();
      EvalResult r;
      try {
        r = f_integral({e_alpha, e_beta, e_delta, e_n, e_m, e_t});
      } catch (const PrecisionExhausted& ex) {
        r = {ex.best_value(), ex.err_bound(), -1, 0.0};
        code = kExhausted;
      }
      const Verdict v = code == kExhausted ? Verdict::PrecisionExhausted : classify(r);
      if (json) {
        doc["result"] = {{"value", r.value},
                         {"err_bound", r.err_bound},
                         {"nodes_used", r.nodes_used},
                         {"verdict", to_string(v)}};
      } else {
        body << "value,err_bound,nodes_used,verdict\n"
             << format_double(r.value) << ',' << format_double(r.err_bound) << ','
             << r.nodes_used << ',' << to_string(v) << '\n';
      }
    } else if (command == "coeffs") {
      echo = {{"space", k_space},      {"dim", std::to_string(k_dim)},
              {"delta", format_double(k_delta)}, {"t", format_double(k_t)},
              {"nmax", std::to_string(k_nmax)}};
      finish_csv_header();
      const KernelSpec spec{k_t, k_delta, make_space(k_space, k_dim)};
      const CoeffVector cv = schoenberg_coeffs(spec, k_nmax);
      if (json) {
        doc["a_n"] = cv.coeffs;
        doc["err_bound"] = cv.err_bounds;
      } else {
        write_csv(body, cv);
      }
    } else if (command == "pdtest") {
      echo = {{"space", k_space},
              {"dim", std::to_string(k_dim)},
              {"delta", format_double(k_delta)},
              {"t", format_double(k_t)},
              {"points", std::to_string(k_points)}};
      finish_csv_header();
      const KernelSpec spec{k_t, k_delta, make_space(k_space, k_dim)};
      const PdTestResult r = strict_pd_test(spec, k_points, common.seed, common.threads);
      const bool backed = k_delta >= spec.space.spd_delta_threshold;
      const char* verdict = r.passed ? "positive-definite" : "not-confirmed";
      if (!r.passed && backed) code = kNegative;
      if (json) {
        doc["result"] = {{"min_eigenvalue", r.min_eigenvalue}, {"threshold", r.threshold},
                         {"cholesky", r.cholesky_ok},         {"resamples", r.resamples},
                         {"verdict", verdict}};
      } else {
        body << "min_eigenvalue,threshold,cholesky,resamples,verdict\n"
             << format_double(r.min_eigenvalue) << ',' << format_double(r.threshold) << ','
             << (r.cholesky_ok ? "ok" : "failed") << ',' << r.resamples << ',' << verdict << '\n';
      }
      if (!k_gram.empty()) {
        CounterRng rng(common.seed);
        const Eigen::MatrixXd dist =
            spec.space.kind == SpaceKind::Sphere
                ? sphere_distances(sample_sphere(spec.space.dim, k_points, rng))
                : sample_projective_distances(spec.space, k_points, rng);
        std::ofstream g(k_gram);
        write_csv(g, gram_from_distances(spec, dist, common.threads));
      }
    } else if (command == "scan" || command == "frontier") {
      const auto alphas = parse_list(s_alpha);
      const auto betas = parse_list(s_beta);
      const auto tgrid = s_t.empty() ? uniform_t_grid(s_tgrid) : parse_list(s_t);
      echo = {{"alpha", join(alphas)}, {"beta", join(betas)}};
      if (command == "scan") {
        DeltaRule rule = s_rule == "alpha+1"         ? DeltaRule::alpha_plus_one()
                         : s_rule == "ceil(alpha)+1" ? DeltaRule::ceil_alpha_plus_one()
                                                     : DeltaRule::explicit_list(parse_list(s_rule));
        echo.emplace_back("delta-rule", rule.to_string());
        echo.emplace_back("nmax", std::to_string(s_nmax));
        echo.emplace_back("t", join(tgrid));
        echo.emplace_back("tol", format_double(s_tol));
        echo.emplace_back("skip-origin", s_skip_origin ? "true" : "false");
        finish_csv_header();
        const ScanGrid grid{alphas, betas, rule, s_nmax, tgrid, s_tol, s_skip_origin};
        const ScanReport rep = scan_positivity(grid, common.threads);
        const ScanSummary sum = rep.summary();
        if (sum.negative_within_hypotheses > 0) {
          code = kNegative;
        } else if (sum.count(Verdict::PrecisionExhausted) > 0) {
          code = kExhausted;
        }
        if (json) {
          doc["summary"] = rep.summary_json();
        } else {
          rep.write_csv(body);
          body << "# summary = " << rep.summary_json().dump() << '\n';
        }
      } else {
        const auto deltas = parse_list(s_delta);
        echo.emplace_back("delta", join(deltas));
        echo.emplace_back("nmax", std::to_string(s_nmax));
        echo.emplace_back("t", join(tgrid));
        echo.emplace_back("tol", format_double(s_tol));
        finish_csv_header();
        for (double a : alphas) {
          for (double b : betas) {
            const FrontierReport rep = conjecture_frontier(a, b, deltas, s_nmax, tgrid,
                                                           common.threads);
            if (json) {
              for (const auto& r : rep.rows) {
                doc["rows"].push_back({{"alpha", a},
                                       {"beta", b},
                                       {"delta", r.delta},
                                       {"negatives", r.negatives},
                                       {"zero_consistent", r.zero_consistent},
                                       {"exhausted", r.exhausted},
                                       {"min_value", r.min_value},
                                       {"worst_n", r.worst_n},
                                       {"worst_t", r.worst_t}});
              }
            } else {
              if (body.tellp() == 0) {
                body << "# " << FrontierReport::label << '\n'
                     << "alpha,beta,delta,negatives,zero_consistent,exhausted,min_value,"
                        "worst_n,worst_t\n";
              }
              for (const auto& r : rep.rows) {
                body << format_double(a) << ',' << format_double(b) << ','
                     << format_double(r.delta) << ',' << r.negatives << ','
                     << r.zero_consistent << ',' << r.exhausted << ','
                     << format_double(r.min_value) << ',' << r.worst_n << ','
                     << format_double(r.worst_t) << '\n';
              }
            }
          }
        }
        if (json) doc["label"] = FrontierReport::label;
      }
    } else if (command == "limits") {
      const double delta = std::isnan(l_delta) ? l_alpha + 1.0 : l_delta;
      const auto ns = parse_list(l_n);
      const auto ts = l_t.empty() ? std::vector<double>{kPi / 4, kPi / 2, kPi} : parse_list(l_t);
      const auto ms = parse_list(l_m);
      echo = {{"alpha", format_double(l_alpha)}, {"delta", format_double(delta)},
              {"n", join(ns)}, {"t", join(ts)}, {"m", join(ms)}};
      finish_csv_header();
      if (!json) body << "n,t,m,scaled,target,gap\n";
      for (double nd : ns) {
        for (double t : ts) {
          const int n = static_cast<int>(nd);
          const double target = bessel_limit_target(l_alpha, delta, n, t).value;
          for (double md : ms) {
            const int m = static_cast<int>(md);
            const double v = scaled_dyadic_integral(l_alpha, delta, n, m, t).value;
            if (json) {
              doc["rows"].push_back({{"n", n},      {"t", t},           {"m", m},
                                     {"scaled", v}, {"target", target}, {"gap", std::abs(v - target)}});
            } else {
              body << n << ',' << format_double(t) << ',' << m << ',' << format_double(v) << ','
                   << format_double(target) << ',' << format_double(std::abs(v - target)) << '\n';
            }
          }
        }
      }
    } else if (command == "polya") {
      PolyaInput in;
      if (!p_file.empty()) {
        std::ifstream f(p_file);
        if (!f) throw DomainError("cannot open " + p_file);
        in.values = read_csv(f).numeric_column("g");
        echo = {{"file", p_file}};
      } else {
        in = sample_for_polya([&](double th) { return std::pow(kPi - th, p_power); }, p_samples);
        echo = {{"power", format_double(p_power)}, {"samples", std::to_string(p_samples)}};
      }
      echo.emplace_back("dim", std::to_string(p_dim));
      echo.emplace_back("tol", format_double(p_tol));
      finish_csv_header();
      const PolyaResult r = polya_check(in, p_dim, p_tol);
      if (json) {
        doc["result"] = {{"lambda", r.lambda}, {"verdict", r.describe()}};
      } else {
        body << "lambda,verdict\n" << r.lambda << ',' << r.describe() << '\n';
      }
    }
  } catch (const PrecisionExhausted& ex) {
    err << "precision exhausted: " << ex.what() << '\n';
    return kExhausted;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return kUsage;
  }

  std::ofstream file;
  std::ostream* sink = &out;
  if (!common.output.empty()) {
    file.open(common.output);
    if (!file) {
      err << "error: cannot write " << common.output << '\n';
      return kUsage;
    }
    sink = &file;
  }
  if (json) {
    nlohmann::ordered_json full;
    full["config"] = config_json(command, echo);
    for (auto& [k, v] : doc.items()) full[k] = v;
    *sink << full.dump(2) << '\n';
  } else {
    write_header(*sink, command, echo);
    *sink << body.str();
  }
  return code;
}

inline int run(int argc, char** argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  return run(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace spk::cli

#endif  // SPK_CLI_HPP
