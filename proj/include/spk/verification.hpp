#ifndef SPK_VERIFICATION_HPP
#define SPK_VERIFICATION_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"

#include "spk/csv.hpp"
#include "spk/error.hpp"
#include "spk/jacobi_integrals.hpp"
#include "spk/parallel.hpp"
#include "spk/random.hpp"
#include "spk/sampling.hpp"
#include "spk/spherical_kernels.hpp"

namespace spk {

/// {kπ/k_max : 1 ≤ k ≤ k_max}.
inline std::vector<double> uniform_t_grid(int k_max) {
  if (k_max < 1) throw DomainError("t-grid needs at least one point");
  std::vector<double> g(k_max);
  for (int k = 1; k <= k_max; ++k) g[k - 1] = k * kPi / k_max;
  return g;
}

// ---------------------------------------------------------------------------
// Positivity scans.

/// δ as a function of α: an explicit list, α+1, or ⌈α⌉+1.
struct DeltaRule {
  enum class Kind { Explicit, AlphaPlusOne, CeilAlphaPlusOne };
  Kind kind = Kind::AlphaPlusOne;
  std::vector<double> values;

  std::vector<double> deltas_for(double alpha) const {
    switch (kind) {
      case Kind::Explicit: return values;
      case Kind::AlphaPlusOne: return {alpha + 1.0};
      case Kind::CeilAlphaPlusOne: return {std::ceil(alpha) + 1.0};
    }
    return {};
  }

  std::string to_string() const {
    switch (kind) {
      case Kind::AlphaPlusOne: return "alpha+1";
      case Kind::CeilAlphaPlusOne: return "ceil(alpha)+1";
      case Kind::Explicit: break;
    }
    std::string s;
    for (std::size_t i = 0; i < values.size(); ++i) s += (i ? "," : "") + format_double(values[i]);
    return s;
  }

  static DeltaRule alpha_plus_one() { return {Kind::AlphaPlusOne, {}}; }
  static DeltaRule ceil_alpha_plus_one() { return {Kind::CeilAlphaPlusOne, {}}; }
  static DeltaRule explicit_list(std::vector<double> v) { return {Kind::Explicit, std::move(v)}; }
};

struct ScanGrid {
  std::vector<double> alpha_set;
  std::vector<double> beta_set;
  DeltaRule delta_rule;
  int n_max = 50;
  std::vector<double> t_grid = uniform_t_grid(64);
  double tolerance = 1e-12;
  bool skip_both_zero = false;

  void validate() const {
    if (alpha_set.empty() || beta_set.empty() || t_grid.empty()) {
      throw DomainError("scan grid sets must be non-empty");
    }
    if (!std::is_sorted(t_grid.begin(), t_grid.end())) throw DomainError("t-grid must be sorted");
    if (!(t_grid.front() > 0.0) || !(t_grid.back() <= kPi)) {
      throw DomainError("t-grid must lie in (0, pi]");
    }
    if (n_max < 0 || n_max > 400) throw DomainError("n_max must lie in [0, 400]");
    if (delta_rule.kind == DeltaRule::Kind::Explicit && delta_rule.values.empty()) {
      throw DomainError("explicit delta list is empty");
    }
  }
};

/// Which theorem, if any, predicts the sign of F_n^{(α,β),δ}.
enum class Hypothesis { None, StrictIntegerCase, NonnegativeZeroCase, StrictHalfCase };

inline bool is_natural(double x) { return x >= 0.0 && x == std::floor(x); }

inline Hypothesis theorem_hypothesis(double alpha, double beta, double delta) {
  if (is_natural(alpha) && is_natural(beta)) {
    if (alpha == 0.0 && beta == 0.0) {
      return delta >= 1.0 ? Hypothesis::NonnegativeZeroCase : Hypothesis::None;
    }
    return delta >= alpha + 1.0 ? Hypothesis::StrictIntegerCase : Hypothesis::None;
  }
  if (is_natural(alpha) || beta < 0.0 || delta < std::ceil(alpha) + 1.0) return Hypothesis::None;
  const bool case1 = alpha > 0.0 && is_natural(beta);
  const bool case2 = alpha == beta && alpha > 0.0;
  const bool case3 = std::floor(beta) < alpha && alpha <= beta;
  return case1 || case2 || case3 ? Hypothesis::StrictHalfCase : Hypothesis::None;
}

struct ScanRecord {
  double alpha = 0.0;
  double beta = 0.0;
  double delta = 0.0;
  int n = 0;
  double t = 0.0;
  EvalResult result;
  Verdict verdict = Verdict::Positive;
  Hypothesis hypothesis = Hypothesis::None;

  /// value / err_bound.
  double margin() const {
    if (result.err_bound > 0.0) return result.value / result.err_bound;
    if (result.value == 0.0) return 0.0;
    return std::copysign(std::numeric_limits<double>::infinity(), result.value);
  }

  auto key() const { return std::tie(alpha, beta, delta, t, n); }
};

struct ScanSummary {
  std::array<std::size_t, 4> counts{};
  std::size_t negative_within_hypotheses = 0;
  std::size_t total = 0;
  double min_margin = std::numeric_limits<double>::infinity();
  const ScanRecord* worst = nullptr;

  std::size_t count(Verdict v) const { return counts[static_cast<int>(v)]; }
};

/// Verdict table. Merging is concatenation followed by a sort on the query
/// key, so it is associative and independent of worker order.
struct ScanReport {
  std::vector<ScanRecord> records;

  void merge(const ScanReport& other) {
    records.insert(records.end(), other.records.begin(), other.records.end());
    std::sort(records.begin(), records.end(),
              [](const ScanRecord& a, const ScanRecord& b) { return a.key() < b.key(); });
  }

  ScanSummary summary() const {
    ScanSummary s;
    s.total = records.size();
    for (const auto& r : records) {
      ++s.counts[static_cast<int>(r.verdict)];
      if (r.verdict == Verdict::Negative && r.hypothesis != Hypothesis::None) {
        ++s.negative_within_hypotheses;
      }
      if (r.margin() < s.min_margin || !s.worst) {
        s.min_margin = r.margin();
        s.worst = &r;
      }
    }
    return s;
  }

  void write_csv(std::ostream& out) const {
    out << "alpha,beta,delta,n,t,value,err,verdict\n";
    for (const auto& r : records) {
      out << format_double(r.alpha) << ',' << format_double(r.beta) << ','
          << format_double(r.delta) << ',' << r.n << ',' << format_double(r.t) << ','
          << format_double(r.result.value) << ',' << format_double(r.result.err_bound) << ','
          << to_string(r.verdict) << '\n';
    }
  }

  nlohmann::ordered_json summary_json() const {
    const ScanSummary s = summary();
    nlohmann::ordered_json j;
    j["records"] = s.total;
    auto& c = j["counts"];
    for (Verdict v : {Verdict::Positive, Verdict::ZeroConsistent, Verdict::Negative,
                      Verdict::PrecisionExhausted}) {
      c[to_string(v)] = s.count(v);
    }
    j["negative_within_hypotheses"] = s.negative_within_hypotheses;
    j["min_margin"] = std::isfinite(s.min_margin) ? nlohmann::json(s.min_margin) : nlohmann::json();
    if (s.worst) {
      const auto& w = *s.worst;
      j["worst"] = {{"alpha", w.alpha}, {"beta", w.beta},     {"delta", w.delta},
                    {"n", w.n},         {"t", w.t},           {"value", w.result.value},
                    {"err", w.result.err_bound}, {"verdict", to_string(w.verdict)}};
    }
    return j;
  }
};

namespace detail {

struct ScanTask {
  double alpha;
  double beta;
  double delta;
  double t;
};

inline ScanReport scan_tasks(const std::vector<ScanTask>& tasks, int n_max, double tolerance,
                             unsigned threads) {
  std::vector<std::vector<ScanRecord>> parts(tasks.size());
  QuadratureOptions opts;
  opts.rel_tol = tolerance;
  parallel_for(tasks.size(), threads, [&](std::size_t i) {
    const ScanTask& q = tasks[i];
    const auto batch = f_integral_batch_unchecked(q.alpha, q.beta, q.delta, 0, q.t, n_max, opts);
    const Hypothesis h = theorem_hypothesis(q.alpha, q.beta, q.delta);
    auto& out = parts[i];
    out.reserve(batch.size());
    for (int n = 0; n <= n_max; ++n) {
      out.push_back({q.alpha, q.beta, q.delta, n, q.t, batch[n], classify(batch[n]), h});
    }
  });
  ScanReport report;
  for (auto& p : parts) report.records.insert(report.records.end(), p.begin(), p.end());
  report.merge({});
  return report;
}

}  // namespace detail

/// Sign verdict for every (α, β, δ, n, t) in the grid.
inline ScanReport scan_positivity(const ScanGrid& grid, unsigned threads = 1) {
  grid.validate();
  std::vector<detail::ScanTask> tasks;
  for (double a : grid.alpha_set) {
    for (double b : grid.beta_set) {
      if (grid.skip_both_zero && a == 0.0 && b == 0.0) continue;
      for (double d : grid.delta_rule.deltas_for(a)) {
        for (double t : grid.t_grid) tasks.push_back({a, b, d, t});
      }
    }
  }
  return detail::scan_tasks(tasks, grid.n_max, grid.tolerance, threads);
}

// ---------------------------------------------------------------------------
// Strict positive definiteness on random point sets.

struct PdTestResult {
  int n_points = 0;
  std::uint64_t seed = 0;
  int resamples = 0;
  bool cholesky_ok = false;
  double min_eigenvalue = 0.0;
  double threshold = 0.0;
  bool passed = false;
};

/// Eigenvalue floor 1e-10 N t^δ.
inline double pd_threshold(const KernelSpec& spec, int n_points) {
  return 1e-10 * n_points * std::pow(spec.t, spec.delta);
}

/// Samples N uniform points (sphere) or a projective distance set, then
/// reports the smallest Gram eigenvalue. Duplicate samples are redrawn up to
/// three times.
inline PdTestResult strict_pd_test(const KernelSpec& spec, int n_points, std::uint64_t seed,
                                   unsigned threads = 1) {
  spec.validate();
  if (n_points < 1 || n_points > 512) throw DomainError("n_points must lie in [1, 512]");
  CounterRng rng(seed);
  PdTestResult r;
  r.n_points = n_points;
  r.seed = seed;
  r.threshold = pd_threshold(spec, n_points);
  for (;; ++r.resamples) {
    try {
      const Eigen::MatrixXd dist =
          spec.space.kind == SpaceKind::Sphere
              ? sphere_distances(sample_sphere(spec.space.dim, n_points, rng))
              : sample_projective_distances(spec.space, n_points, rng);
      const DefinitenessReport d = definiteness(gram_from_distances(spec, dist, threads));
      r.cholesky_ok = d.cholesky_ok;
      r.min_eigenvalue = d.min_eigenvalue;
      r.passed = d.min_eigenvalue > r.threshold;
      return r;
    } catch (const DegenerateInput&) {
      if (r.resamples >= 3) throw;
    }
  }
}

// ---------------------------------------------------------------------------
// Monotonicity in β.

struct MonotonicityReport {
  std::size_t checks = 0;
  std::size_t violations = 0;
  double min_margin = std::numeric_limits<double>::infinity();
  double max_identity_residual = 0.0;
  double max_identity_err = 0.0;
};

/// F^{(α,β),δ} - F^{(α,β+1),δ} > 0 for β = 0..beta_max, with margin
/// measured in units of the combined error bound. The difference is also
/// compared with F^{(α+1,β),δ}, which it must equal.
inline MonotonicityReport monotonicity_check(double alpha, int beta_max, double delta, int n_max,
                                             const std::vector<double>& t_grid,
                                             unsigned threads = 1) {
  if (!(alpha > 0.0)) throw DomainError("monotonicity needs alpha > 0");
  if (delta < std::ceil(alpha) + 2.0) throw DomainError("monotonicity needs delta >= ceil(alpha)+2");
  if (beta_max < 0) throw DomainError("beta_max must be non-negative");
  const std::size_t per_beta = t_grid.size();
  std::vector<MonotonicityReport> parts(per_beta * (beta_max + 1));
  parallel_for(parts.size(), threads, [&](std::size_t i) {
    const double beta = static_cast<double>(i / per_beta);
    const double t = t_grid[i % per_beta];
    const auto lo = f_integral_batch(alpha, beta, delta, 0, t, n_max);
    const auto hi = f_integral_batch(alpha, beta + 1.0, delta, 0, t, n_max);
    const auto up = f_integral_batch(alpha + 1.0, beta, delta, 0, t, n_max);
    auto& r = parts[i];
    for (int n = 0; n <= n_max; ++n) {
      const double diff = lo[n].value - hi[n].value;
      const double err = lo[n].err_bound + hi[n].err_bound;
      ++r.checks;
      if (!(diff > 10.0 * err)) ++r.violations;
      r.min_margin = std::min(r.min_margin, diff / err);
      r.max_identity_residual = std::max(r.max_identity_residual, std::abs(diff - up[n].value));
      r.max_identity_err = std::max(r.max_identity_err, err + up[n].err_bound);
    }
  });
  MonotonicityReport total;
  for (const auto& r : parts) {
    total.checks += r.checks;
    total.violations += r.violations;
    total.min_margin = std::min(total.min_margin, r.min_margin);
    total.max_identity_residual = std::max(total.max_identity_residual, r.max_identity_residual);
    total.max_identity_err = std::max(total.max_identity_err, r.max_identity_err);
  }
  return total;
}

// ---------------------------------------------------------------------------
// Decay of sup_t |F_n|.

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Least-squares line through (log x, log y).
inline LineFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("need at least two points to fit");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0) || !std::isfinite(y[i])) {
      throw DegenerateInput("log-log fit needs positive finite data");
    }
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double m = static_cast<double>(x.size());
  const double den = m * sxx - sx * sx;
  if (den == 0.0) throw DegenerateInput("abscissae are all equal");
  LineFit f;
  f.slope = (m * sxy - sx * sy) / den;
  f.intercept = (sy - f.slope * sx) / m;
  return f;
}

struct DecayFit {
  LineFit fit;
  std::vector<double> degrees;
  std::vector<double> sup_values;
};

/// Slope of log sup_t |F_n^{(α,β),δ}(t)| against log n over [n_lo, n_hi],
/// with the sup taken over {kπ/t_points}.
inline DecayFit decay_fit(double alpha, double beta, double delta, int n_lo, int n_hi,
                          int t_points = 0, unsigned threads = 1) {
  if (n_lo < 1 || n_hi <= n_lo || n_hi > 400) throw DomainError("need 1 <= n_lo < n_hi <= 400");
  if (t_points == 0) t_points = std::max(256, 8 * n_hi);
  const auto grid = uniform_t_grid(t_points);
  std::vector<std::vector<double>> per_t(grid.size());
  parallel_for(grid.size(), threads, [&](std::size_t i) {
    const auto batch = f_integral_batch(alpha, beta, delta, 0, grid[i], n_hi);
    per_t[i].resize(batch.size());
    for (std::size_t n = 0; n < batch.size(); ++n) per_t[i][n] = std::abs(batch[n].value);
  });
  DecayFit out;
  for (int n = n_lo; n <= n_hi; ++n) {
    double sup = 0.0;
    for (const auto& row : per_t) sup = std::max(sup, row[n]);
    out.degrees.push_back(n);
    out.sup_values.push_back(sup);
  }
  out.fit = fit_loglog(out.degrees, out.sup_values);
  return out;
}

// ---------------------------------------------------------------------------
// Pólya-type criterion.

/// Samples of g on the uniform grid θ_k = k π / K, k = 0..K, optionally with
/// derivatives[j-1] holding g^{(j)} on the same grid.
struct PolyaInput {
  std::vector<double> values;
  std::vector<std::vector<double>> derivatives;
};

enum class PolyaVerdict { PositiveDefinite, StrictlyPositiveDefinite, Fails };

struct PolyaResult {
  PolyaVerdict verdict = PolyaVerdict::Fails;
  int lambda = 0;
  /// "(i)" or "(ii)" when the verdict is Fails.
  std::string failed_condition;
  /// Derivative order at which (ii) failed, else -1.
  int failed_order = -1;

  std::string describe() const {
    switch (verdict) {
      case PolyaVerdict::PositiveDefinite: return "positive-definite";
      case PolyaVerdict::StrictlyPositiveDefinite: return "strictly-positive-definite";
      case PolyaVerdict::Fails: break;
    }
    std::string s = "fails condition " + failed_condition;
    if (failed_order >= 0) s += " at j=" + std::to_string(failed_order);
    return s;
  }
};

namespace detail {

/// Fornberg's finite-difference weights for the m-th derivative at z.
inline std::vector<double> fd_weights(double z, const std::vector<double>& x, int m) {
  const int n = static_cast<int>(x.size());
  std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
  double c1 = 1.0;
  double c4 = x[0] - z;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - z;
    for (int j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) w[i] = c[i][m];
  return w;
}

/// m-th derivative on the whole grid from a (m + 5)-point stencil, centred in
/// the interior and shifted inwards at the ends.
inline std::vector<double> grid_derivative(const std::vector<double>& f, double h, int m) {
  const int size = static_cast<int>(f.size());
  const int width = m + 5;
  std::vector<double> out(size);
  std::vector<double> x(width);
  for (int k = 0; k < size; ++k) {
    const int first = std::clamp(k - width / 2, 0, size - width);
    for (int i = 0; i < width; ++i) x[i] = (first + i - k) * 1.0;
    const auto w = fd_weights(0.0, x, m);
    double acc = 0.0;
    for (int i = 0; i < width; ++i) acc += w[i] * f[first + i];
    out[k] = acc / std::pow(h, m);
  }
  return out;
}

inline double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace detail

/// Checks (i) (-1)^λ g^{(λ)} convex and (ii) g^{(j)}(π) = 0 for j ≤ λ+1 with
/// g^{(λ+1)}(0) finite, λ = ⌈(d-2)/2⌉. Strict additionally needs g^{(λ)}
/// not affine. Comparisons are relative to the sampled size of each
/// derivative, at level `tol`.
inline PolyaResult polya_check(const PolyaInput& in, int d, double tol = 1e-6) {
  if (d < 3) throw DomainError("dimension must be at least 3");
  PolyaResult res;
  res.lambda = (d - 1) / 2;  // ⌈(d-2)/2⌉
  const int top = res.lambda + 1;
  const int size = static_cast<int>(in.values.size());
  if (size < 4 * (top + 5)) {
    throw ResolutionError("grid of " + std::to_string(size) + " points is too coarse for order " +
                          std::to_string(top));
  }
  const double h = kPi / (size - 1);
  std::vector<std::vector<double>> deriv(top + 1);
  deriv[0] = in.values;
  for (int j = 1; j <= top; ++j) {
    if (j <= static_cast<int>(in.derivatives.size()) && !in.derivatives[j - 1].empty()) {
      if (static_cast<int>(in.derivatives[j - 1].size()) != size) {
        throw DomainError("derivative samples do not match the grid");
      }
      deriv[j] = in.derivatives[j - 1];
    } else {
      deriv[j] = detail::grid_derivative(in.values, h, j);
    }
  }
  for (const auto& v : deriv) {
    for (double x : v) {
      if (!std::isfinite(x)) throw DomainError("non-finite sample");
    }
  }

  // (ii)
  const double base = detail::max_abs(deriv[0]);
  for (int j = 0; j <= top; ++j) {
    const double scale = std::max(base, detail::max_abs(deriv[j]));
    if (std::abs(deriv[j].back()) > tol * scale) {
      res.failed_condition = "(ii)";
      res.failed_order = j;
      return res;
    }
  }

  // (i) on second differences of g^{(λ)}.
  const auto& gl = deriv[res.lambda];
  const double sign = res.lambda % 2 == 0 ? 1.0 : -1.0;
  const double scale = std::max(base, detail::max_abs(gl)) * h * h;
  double max_curv = 0.0;
  for (int k = 1; k + 1 < size; ++k) {
    const double d2 = sign * (gl[k + 1] - 2.0 * gl[k] + gl[k - 1]);
    if (d2 < -tol * scale) {
      res.failed_condition = "(i)";
      return res;
    }
    max_curv = std::max(max_curv, std::abs(d2));
  }
  res.verdict = max_curv > tol * scale ? PolyaVerdict::StrictlyPositiveDefinite
                                       : PolyaVerdict::PositiveDefinite;
  return res;
}

/// Samples g on the K+1 point grid of polya_check.
template <typename G>
PolyaInput sample_for_polya(G&& g, int intervals) {
  PolyaInput in;
  in.values.resize(intervals + 1);
  for (int k = 0; k <= intervals; ++k) in.values[k] = g(k * kPi / intervals);
  return in;
}

// ---------------------------------------------------------------------------
// Exploratory scans outside the proven range.

struct FrontierRow {
  double delta = 0.0;
  std::size_t negatives = 0;
  std::size_t zero_consistent = 0;
  std::size_t exhausted = 0;
  double min_value = std::numeric_limits<double>::infinity();
  int worst_n = -1;
  double worst_t = 0.0;
};

struct FrontierReport {
  static constexpr const char* label = "EXPLORATORY";
  double alpha = 0.0;
  double beta = 0.0;
  std::vector<FrontierRow> rows;
};

/// For each δ, whether any F_n^{(α,β),δ}(t) on the grid came out NEGATIVE.
/// No theorem backs these verdicts.
inline FrontierReport conjecture_frontier(double alpha, double beta,
                                          const std::vector<double>& delta_grid, int n_max,
                                          const std::vector<double>& t_grid,
                                          unsigned threads = 1) {
  ScanGrid grid{{alpha}, {beta}, DeltaRule::explicit_list(delta_grid), n_max, t_grid};
  const ScanReport scan = scan_positivity(grid, threads);
  FrontierReport rep{alpha, beta, {}};
  for (double d : delta_grid) {
    FrontierRow row;
    row.delta = d;
    for (const auto& r : scan.records) {
      if (r.delta != d) continue;
      row.negatives += r.verdict == Verdict::Negative;
      row.zero_consistent += r.verdict == Verdict::ZeroConsistent;
      row.exhausted += r.verdict == Verdict::PrecisionExhausted;
      if (r.result.value < row.min_value) {
        row.min_value = r.result.value;
        row.worst_n = r.n;
        row.worst_t = r.t;
      }
    }
    rep.rows.push_back(row);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Identity residuals over a grid.

struct IdentityStats {
  std::string name;
  std::size_t checks = 0;
  std::size_t failures = 0;
  /// max residual / combined error bound.
  double worst_ratio = 0.0;
  double max_residual = 0.0;
};

/// β-raising, α-raising, their sum, and the quadratic transforms at levels
/// 0 and 1, each judged by |lhs - rhs| <= factor * (sum of error bounds of
/// every term, weighted by its coefficient).
inline std::vector<IdentityStats> identity_suite(const std::vector<double>& alphas,
                                                 const std::vector<double>& betas,
                                                 const DeltaRule& rule, int n_max,
                                                 const std::vector<double>& t_grid,
                                                 double factor = 10.0, unsigned threads = 1) {
  enum { kBeta, kAlpha, kSum, kQuad, kQuadLevel, kCount };
  const char* names[kCount] = {"beta-raise", "alpha-raise", "raise-sum", "quadratic",
                               "quadratic-level"};
  struct Task {
    double a, b, d, t;
  };
  std::vector<Task> tasks;
  for (double a : alphas) {
    for (double b : betas) {
      for (double d : rule.deltas_for(a)) {
        for (double t : t_grid) tasks.push_back({a, b, d, t});
      }
    }
  }
  std::vector<std::array<IdentityStats, kCount>> parts(tasks.size());
  parallel_for(tasks.size(), threads, [&](std::size_t i) {
    const auto [a, b, d, t] = tasks[i];
    auto& st = parts[i];
    auto record = [&](int which, double lhs, double rhs, double err) {
      const double res = std::abs(lhs - rhs);
      auto& s = st[which];
      ++s.checks;
      if (res > factor * err) ++s.failures;
      s.max_residual = std::max(s.max_residual, res);
      s.worst_ratio = std::max(s.worst_ratio, err > 0.0 ? res / err : (res > 0.0 ? INFINITY : 0.0));
    };
    const auto base = f_integral_batch(a, b, d, 0, t, n_max + 1);
    const auto beta_up = f_integral_batch(a, b + 1.0, d, 0, t, n_max);
    const auto alpha_up = f_integral_batch(a + 1.0, b, d, 0, t, n_max);
    for (int n = 0; n <= n_max; ++n) {
      const double ca = raise_coeff_a(a, b, n), cb = raise_coeff_b(a, b, n);
      const double cs = raise_coeff_a(b, a, n);
      const double e0 = base[n].err_bound, e1 = base[n + 1].err_bound;
      record(kBeta, beta_up[n].value, beta_raise(base[n].value, base[n + 1].value, a, b, n),
             beta_up[n].err_bound + ca * e0 + cb * e1);
      record(kAlpha, alpha_up[n].value, alpha_raise(base[n].value, base[n + 1].value, a, b, n),
             alpha_up[n].err_bound + cs * e0 + cb * e1);
      record(kSum, alpha_up[n].value + beta_up[n].value, base[n].value,
             alpha_up[n].err_bound + beta_up[n].err_bound + e0);
    }
    if (b == betas.front()) {
      // The quadratic transforms involve α only.
      const auto lhs = f_integral_batch(a, 0.0, d, 0, t, n_max);
      const auto half = f_integral_batch(a, a, d, 0, 0.5 * t, 2 * n_max);
      const auto lhs1 = f_integral_batch(a, 0.0, d, 1, t, n_max);
      const auto next = f_integral_batch(a, a, d, 1, t, n_max);
      const auto next2 = f_integral_batch(a, a, d, 2, t, n_max);
      for (int n = 0; n <= n_max; ++n) {
        const double c = std::exp2(2.0 * a + d + 1.0) * quadratic_transform_coeff(a, n);
        record(kQuad, lhs[n].value, c * half[2 * n].value,
               lhs[n].err_bound + c * half[2 * n].err_bound);
        const double c0 = std::exp2(2.0 * a) * quadratic_transform_coeff(a, n);
        record(kQuadLevel, lhs[n].value, c0 * next[n].value,
               lhs[n].err_bound + c0 * next[n].err_bound);
        const double c1 = std::exp2(2.0 * a) * quadratic_transform_coeff(a, 2 * n);
        record(kQuadLevel, lhs1[n].value, c1 * next2[n].value,
               lhs1[n].err_bound + c1 * next2[n].err_bound);
      }
    }
  });
  std::vector<IdentityStats> out(kCount);
  for (int k = 0; k < kCount; ++k) out[k].name = names[k];
  for (const auto& p : parts) {
    for (int k = 0; k < kCount; ++k) {
      out[k].checks += p[k].checks;
      out[k].failures += p[k].failures;
      out[k].worst_ratio = std::max(out[k].worst_ratio, p[k].worst_ratio);
      out[k].max_residual = std::max(out[k].max_residual, p[k].max_residual);
    }
  }
  return out;
}

}  // namespace spk

#endif  // SPK_VERIFICATION_HPP
