// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "spk/jacobi_integrals.hpp"
#include "spk/spherical_kernels.hpp"
#include "spk/verification.hpp"

using namespace spk;

namespace {

unsigned threads() {
  if (const char* env = std::getenv("SPK_THREADS")) return std::stoul(env);
  return 0;
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

Outcome integer_scan() {
  ScanGrid g{{0, 1, 2, 3, 4}, {0, 1, 2, 3, 4}, DeltaRule::alpha_plus_one(), 50, uniform_t_grid(64)};
  g.skip_both_zero = true;
  const auto s = scan_positivity(g, threads()).summary();
  const bool pass = s.count(Verdict::Negative) == 0 && s.count(Verdict::Positive) == s.total &&
                    s.min_margin > 10.0;
  return {pass, std::to_string(s.total) + " values, negative=" +
                    std::to_string(s.count(Verdict::Negative)) +
                    " non-positive=" + std::to_string(s.total - s.count(Verdict::Positive)) +
                    fmt(" min value/err=%.3g", s.min_margin)};
}

Outcome zero_case() {
  const auto grid = uniform_t_grid(64);
  const auto rep = scan_positivity({{0}, {0}, DeltaRule::explicit_list({1}), 50, grid}, threads());
  double worst = 0.0;
  std::size_t bad_verdict = 0, misplaced_zero = 0, zeros = 0;
  for (const auto& r : rep.records) {
    const int n = r.n;
    const double exact = n == 0 ? 0.5 * r.t * r.t
                                : pochhammer(0.5, n) / std::tgamma(n + 1.0) *
                                      (1.0 - std::cos(n * r.t)) / (double(n) * n);
    worst = std::max(worst, std::abs(r.result.value - exact));
    if (r.verdict == Verdict::Negative || r.verdict == Verdict::PrecisionExhausted) ++bad_verdict;
    if (r.verdict == Verdict::ZeroConsistent) {
      ++zeros;
      const double period = n == 0 ? INFINITY : 2.0 * kPi / n;
      const double off = std::abs(r.t - period * std::round(r.t / period));
      if (!(off < 1e-3)) ++misplaced_zero;
    }
  }
  const bool pass = worst <= 1e-12 && bad_verdict == 0 && misplaced_zero == 0;
  return {pass, fmt("max |F - closed form|=%.2e", worst) + " zero-consistent=" +
                    std::to_string(zeros) + " misplaced=" + std::to_string(misplaced_zero) +
                    " bad verdicts=" + std::to_string(bad_verdict)};
}

Outcome identities() {
  const auto stats = identity_suite({0, 1, 2, 3, 4}, {0, 1, 2, 3, 4}, DeltaRule::alpha_plus_one(),
                                    50, uniform_t_grid(64), 10.0, threads());
  bool pass = true;
  std::string detail;
  for (const auto& s : stats) {
    pass = pass && s.failures == 0;
    detail += s.name + ": " + std::to_string(s.failures) + "/" + std::to_string(s.checks) +
              fmt(" fail (worst ratio %.2g); ", s.worst_ratio);
  }
  return {pass, detail};
}

Outcome closed_form() {
  double worst_abs = 0.0, worst_rel = 0.0;
  for (int mu : {1, 2}) {
    for (Parity p : {Parity::Odd, Parity::Even}) {
      const int lambda = p == Parity::Odd ? 2 * mu - 1 : 2 * mu;
      for (int n = 0; n <= 40; ++n) {
        for (int k = 1; k <= 32; ++k) {
          const double t = k * kPi / 32;
          const double q = f_integral_gegenbauer(lambda, lambda + 1.0, n, t).value;
          worst_abs = std::max(worst_abs, std::abs(f_closed_form(mu, p, n, t) - q));
        }
        const double q = f_integral_gegenbauer(lambda, lambda + 1.0, n, 1e-3).value;
        worst_rel = std::max(worst_rel, std::abs(f_closed_form(mu, p, n, 1e-3) / q - 1.0));
      }
    }
  }
  return {worst_abs <= 1e-9 && worst_rel <= 1e-6,
          fmt("max abs diff=%.2e", worst_abs) + fmt(" max rel diff at t=1e-3=%.2e", worst_rel)};
}

Outcome bessel() {
  std::size_t non_positive = 0;
  for (int k = 1; k <= 16; ++k) {
    const auto r = bessel_limit_integral(0.5, 1.0, k * kPi / 4);
    if (classify(r) != Verdict::Positive) ++non_positive;
  }
  std::size_t not_monotone = 0, too_far = 0;
  double worst_final = 0.0;
  std::string far_cases;
  const double alpha = 1.0, delta = alpha + 1.0;
  for (int n : {1, 2, 4, 8}) {
    for (double t : {kPi / 4, kPi / 2, kPi}) {
      const double target = bessel_limit_target(alpha, delta, n, t).value;
      double prev = INFINITY;
      for (int m = 4; m <= 10; ++m) {
        const double gap = std::abs(scaled_dyadic_integral(alpha, delta, n, m, t).value - target);
        if (!(gap < prev)) ++not_monotone;
        prev = gap;
      }
      worst_final = std::max(worst_final, prev);
      if (!(prev < 1e-4)) {
        ++too_far;
        far_cases += " (n=" + std::to_string(n) + fmt(",t=%.4f", t) + fmt(",gap=%.2e)", prev);
      }
    }
  }
  const bool pass = non_positive == 0 && not_monotone == 0 && too_far == 0;
  return {pass, "non-positive Bessel integrals=" + std::to_string(non_positive) +
                    " non-monotone steps=" + std::to_string(not_monotone) +
                    fmt(" worst final gap=%.2e", worst_final) + " cases >= 1e-4:" +
                    std::to_string(too_far) + far_cases};
}

Outcome strict_pd() {
  std::vector<SpaceSpec> spaces;
  for (int d : {3, 4, 5, 6}) spaces.push_back(SpaceSpec::sphere(d));
  for (int d : {3, 4, 5, 6}) spaces.push_back(SpaceSpec::real_projective(d));
  for (int d : {4, 6}) spaces.push_back(SpaceSpec::complex_projective(d));
  spaces.push_back(SpaceSpec::quaternionic_projective(8));
  spaces.push_back(SpaceSpec::cayley_plane());
  std::size_t runs = 0, failed = 0, negative_coeffs = 0;
  double worst_ratio = INFINITY;
  for (const auto& sp : spaces) {
    for (double t : {kPi / 4, kPi / 2, kPi}) {
      const KernelSpec spec{t, sp.spd_delta_threshold, sp};
      for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto r = strict_pd_test(spec, 100, seed, threads());
        ++runs;
        failed += !r.passed;
        worst_ratio = std::min(worst_ratio, r.min_eigenvalue / r.threshold);
      }
      if (sp.kind == SpaceKind::Sphere) continue;
      const auto cv = schoenberg_coeffs(spec, 200);
      for (int n = 0; n <= 200; ++n) negative_coeffs += cv.coeffs[n] < -10.0 * cv.err_bounds[n];
    }
  }
  return {failed == 0 && negative_coeffs == 0,
          std::to_string(runs) + " runs, below floor=" + std::to_string(failed) +
              fmt(" min eigenvalue/floor=%.3g", worst_ratio) +
              " negative coefficients (n<=200)=" + std::to_string(negative_coeffs)};
}

Outcome decay() {
  bool pass = true;
  std::string detail;
  for (auto [a, b] : {std::pair{1.0, 0.0}, {1.0, 1.0}, {2.0, 1.0}, {2.0, 2.0}}) {
    const auto f = decay_fit(a, b, a + 1.0, 20, 200, 0, threads());
    const bool ok = f.fit.slope <= -(a + 2.0);
    pass = pass && ok;
    detail += fmt("(%g,", a) + fmt("%g)", b) + fmt(" slope=%.3f", f.fit.slope) +
              fmt(" bound=%g; ", -(a + 2.0));
  }
  return {pass, detail};
}

Outcome half_integer_scan() {
  ScanReport all;
  for (auto [a, b] : {std::pair{0.5, 0.5}, {1.5, 1.5}, {0.5, 1.0}, {1.5, 2.0}}) {
    all.merge(scan_positivity({{a}, {b}, DeltaRule::ceil_alpha_plus_one(), 50, uniform_t_grid(64)},
                              threads()));
  }
  const auto s = all.summary();
  return {s.count(Verdict::Negative) == 0 && s.count(Verdict::PrecisionExhausted) == 0,
          std::to_string(s.total) + " values, negative=" +
              std::to_string(s.count(Verdict::Negative)) +
              " zero-consistent=" + std::to_string(s.count(Verdict::ZeroConsistent)) +
              " exhausted=" + std::to_string(s.count(Verdict::PrecisionExhausted))};
}

Outcome polya() {
  const auto cubic = polya_check(sample_for_polya([](double x) { return std::pow(kPi - x, 3); }, 1000), 3);
  const auto square = polya_check(sample_for_polya([](double x) { return std::pow(kPi - x, 2); }, 1000), 3);
  const bool pass = cubic.verdict == PolyaVerdict::StrictlyPositiveDefinite &&
                    square.verdict == PolyaVerdict::Fails && square.failed_condition == "(ii)" &&
                    square.failed_order == 2;
  return {pass, "cubic: " + cubic.describe() + "; square: " + square.describe()};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"integer-parameter positivity scan", integer_scan},
      {"alpha=beta=0 closed form and zero set", zero_case},
      {"raising and quadratic-transform identities", identities},
      {"finite-sum closed form vs quadrature", closed_form},
      {"Bessel integral positivity and dyadic limit", bessel},
      {"strict positive definiteness on spheres and projective spaces", strict_pd},
      {"decay of sup_t |F_n|", decay},
      {"half-integer positivity scan", half_integer_scan},
      {"Polya criterion verdicts", polya},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !o.pass;
    std::printf("criterion %zu %s: %s [%.1fs] %s\n", i + 1, o.pass ? "PASS" : "FAIL",
                criteria[i].first, secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
