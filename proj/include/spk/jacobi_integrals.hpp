#ifndef SPK_JACOBI_INTEGRALS_HPP
#define SPK_JACOBI_INTEGRALS_HPP

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "spk/error.hpp"
#include "spk/gauss_jacobi.hpp"
#include "spk/numeric.hpp"
#include "spk/special_fn.hpp"

namespace spk {

/// One instance of F_{n,m}^{(α,β),δ}(t); m = 0 is the plain F_n^{(α,β),δ}(t).
struct IntegralQuery {
  double alpha = 0.0;
  double beta = 0.0;
  double delta = 1.0;
  int n = 0;
  int m = 0;
  double t = kPi;

  void validate() const {
    if (!(t > 0.0) || !(t <= kPi)) throw DomainError("t must lie in (0, pi]");
    if (!(delta > 0.0)) throw DomainError("delta must be positive");
    if (n < 0) throw DomainError("degree must be non-negative");
    if (m < 0 || m > 20) throw DomainError("dyadic level must lie in [0, 20]");
    if (!(alpha >= 0.0) || !(beta >= 0.0)) {
      throw UnsupportedParameter("alpha and beta must be non-negative");
    }
  }
};

/// Quadrature value with its error estimate.
///
/// err_bound is |Q_N - Q_2N| for the last two rules of the node ladder,
/// floored at the rounding level (degree+1) eps abs_integral: forward
/// recurrence error grows linearly in the degree and is smooth in θ, so
/// the two rules share it and their difference cannot see it.
/// abs_integral estimates ∫|integrand|, the magnitude against which
/// cancellation is judged.
struct EvalResult {
  double value = 0.0;
  double err_bound = 0.0;
  int nodes_used = 0;
  double abs_integral = 0.0;
};

struct QuadratureOptions {
  /// Converged once |Q_N - Q_2N| <= rel_tol * abs_integral * (1 + degree/256)
  /// or abs_tol. The degree factor allows for recurrence rounding.
  double rel_tol = 1e-12;
  double abs_tol = 0.0;
  int min_nodes = 32;
  int max_nodes = 512;
};

namespace detail {

inline double round_floor(double abs_integral, int degree = 0) {
  return (degree + 1.0) * std::numeric_limits<double>::epsilon() * abs_integral;
}

inline double stop_tol(const QuadratureOptions& opts, double abs_integral, int degree) {
  return std::max(opts.abs_tol, opts.rel_tol * abs_integral * (1.0 + degree / 256.0));
}

inline bool twice_is_integer(double x) {
  return std::abs(2.0 * x - std::round(2.0 * x)) < 1e-12;
}

/// Integrand layout of F_{n,m} after θ = t(1+s)/2: Gauss–Jacobi weight
/// (1-s)^{wa} (1+s)^{wb}, a constant prefactor, and a smooth remainder.
struct FLayout {
  double wa = 0.0;
  double wb = 0.0;
  double prefactor = 1.0;
  bool absorb_cos = false;
};

inline FLayout f_layout(double alpha, double beta, double delta, int m, double t) {
  FLayout l;
  // (sin θ/2^{m+1})^{2α} = (t/2^{m+2})^{2α} (1+s)^{2α} sinc(.)^{2α}
  l.wb = 2.0 * alpha;
  l.wa = delta;
  l.prefactor = std::pow(0.5 * t, delta + 1.0) * std::pow(std::ldexp(t, -(m + 2)), 2.0 * alpha);
  // cos(θ/2)^{2β} vanishes non-smoothly at θ = π when 2β is not an integer.
  if (m == 0 && t == kPi && beta > 0.0 && !twice_is_integer(beta)) {
    l.absorb_cos = true;
    l.wa += 2.0 * beta;
    l.prefactor *= std::pow(0.25 * kPi, 2.0 * beta);
  }
  return l;
}

/// Smooth part of the integrand at one node, excluding the polynomial.
inline double f_smooth_factor(const FLayout& l, double alpha, double beta, int m, double t,
                              double s) {
  const double theta = 0.5 * t * (1.0 + s);
  const double half_angle = std::ldexp(theta, -(m + 1));
  double v = alpha == 0.0 ? 1.0 : std::pow(sinc(half_angle), 2.0 * alpha);
  if (beta != 0.0) {
    if (l.absorb_cos) {
      v *= std::pow(sinc(0.25 * kPi * (1.0 - s)), 2.0 * beta);
    } else {
      v *= std::pow(std::cos(half_angle), 2.0 * beta);
    }
  }
  return v;
}

/// Quadrature sums of F_{n,m} for n = 0..n_max with an N-node rule.
inline void f_sums(double alpha, double beta, double delta, int m, double t, int n_max, int nodes,
                   std::vector<double>& sums, std::vector<double>& abs_sums) {
  const FLayout l = f_layout(alpha, beta, delta, m, t);
  const auto rule = cached_gauss_jacobi(nodes, l.wa, l.wb);
  const int stride = 1 << m;
  const int degree = stride * n_max;
  sums.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
  abs_sums.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
  std::vector<double> poly;
  for (int i = 0; i < nodes; ++i) {
    const double s = rule->nodes[i];
    const double theta = 0.5 * t * (1.0 + s);
    const double w = rule->weights[i] * f_smooth_factor(l, alpha, beta, m, t, s);
    jacobi_eval_all_angle(alpha - 0.5, beta - 0.5, degree, std::ldexp(theta, -m), poly);
    for (int n = 0; n <= n_max; ++n) {
      const double term = w * poly[static_cast<std::size_t>(n) * stride];
      sums[n] += term;
      abs_sums[n] += std::abs(term);
    }
  }
  for (int n = 0; n <= n_max; ++n) {
    sums[n] *= l.prefactor;
    abs_sums[n] *= l.prefactor;
  }
}

}  // namespace detail

/// F_{n,m}^{(α,β),δ}(t) for every n = 0..n_max at once.
///
/// Each degree stops at the first rung of the node ladder where two
/// successive rules agree, so entry n matches f_integral for that n.
/// Degrees that never converge are reported with a negative nodes_used.
inline std::vector<EvalResult> f_integral_batch_unchecked(double alpha, double beta, double delta,
                                                          int m, double t, int n_max,
                                                          const QuadratureOptions& opts = {}) {
  IntegralQuery{alpha, beta, delta, n_max, m, t}.validate();
  std::vector<EvalResult> out(static_cast<std::size_t>(n_max) + 1);
  std::vector<bool> done(out.size(), false);
  std::size_t remaining = out.size();
  std::vector<double> prev;
  std::vector<double> prev_abs;
  std::vector<double> cur;
  std::vector<double> cur_abs;
  detail::f_sums(alpha, beta, delta, m, t, n_max, opts.min_nodes, prev, prev_abs);
  for (int nodes = 2 * opts.min_nodes; nodes <= opts.max_nodes && remaining > 0; nodes *= 2) {
    detail::f_sums(alpha, beta, delta, m, t, n_max, nodes, cur, cur_abs);
    const bool last = 2 * nodes > opts.max_nodes;
    for (std::size_t n = 0; n < out.size(); ++n) {
      if (done[n]) continue;
      const double diff = std::abs(cur[n] - prev[n]);
      const double tol = detail::stop_tol(opts, cur_abs[n], static_cast<int>(n) << m);
      if (diff <= tol || last) {
        out[n] = {cur[n], std::max(diff, detail::round_floor(cur_abs[n], static_cast<int>(n) << m)),
                  diff <= tol ? nodes : -nodes, cur_abs[n]};
        done[n] = true;
        --remaining;
      }
    }
    std::swap(prev, cur);
    std::swap(prev_abs, cur_abs);
  }
  return out;
}

/// As f_integral_batch_unchecked, but throws PrecisionExhausted if any
/// degree fails to converge.
inline std::vector<EvalResult> f_integral_batch(double alpha, double beta, double delta, int m,
                                                double t, int n_max,
                                                const QuadratureOptions& opts = {}) {
  auto out = f_integral_batch_unchecked(alpha, beta, delta, m, t, n_max, opts);
  for (const auto& r : out) {
    if (r.nodes_used < 0) {
      throw PrecisionExhausted("F-integral quadrature did not converge", r.value, r.err_bound);
    }
  }
  return out;
}

/// F_{n,m}^{(α,β),δ}(t) by Gauss–Jacobi quadrature on a doubling node ladder.
inline EvalResult f_integral(const IntegralQuery& q, const QuadratureOptions& opts = {}) {
  q.validate();
  std::vector<double> prev;
  std::vector<double> prev_abs;
  std::vector<double> cur;
  std::vector<double> cur_abs;
  // Only degree n is needed, but the recurrence produces all lower ones anyway.
  auto sums_for = [&](int nodes, std::vector<double>& s, std::vector<double>& a) {
    detail::f_sums(q.alpha, q.beta, q.delta, q.m, q.t, q.n, nodes, s, a);
  };
  sums_for(opts.min_nodes, prev, prev_abs);
  EvalResult best{};
  for (int nodes = 2 * opts.min_nodes; nodes <= opts.max_nodes; nodes *= 2) {
    sums_for(nodes, cur, cur_abs);
    const double diff = std::abs(cur.back() - prev.back());
    best = {cur.back(), std::max(diff, detail::round_floor(cur_abs.back(), q.n << q.m)), nodes,
            cur_abs.back()};
    if (diff <= detail::stop_tol(opts, cur_abs.back(), q.n << q.m)) return best;
    std::swap(prev, cur);
    std::swap(prev_abs, cur_abs);
  }
  throw PrecisionExhausted("F-integral quadrature did not converge", best.value, best.err_bound);
}

inline EvalResult scale(EvalResult r, double c) {
  r.value *= c;
  r.err_bound *= std::abs(c);
  r.abs_integral *= std::abs(c);
  return r;
}

/// F_n^{λ,δ}(t) = ∫_0^t (t-θ)^δ C_n^λ(cos θ) (sin θ)^{2λ} dθ, through
/// 2^{2λ} (2λ)_n/(λ+1/2)_n F_n^{(λ,λ),δ}(t).
inline EvalResult f_integral_gegenbauer(double lambda, double delta, int n, double t,
                                        const QuadratureOptions& opts = {}) {
  if (!(lambda > 0.0)) throw DomainError("Gegenbauer index must be positive");
  const EvalResult r = f_integral({lambda, lambda, delta, n, 0, t}, opts);
  return scale(r, std::exp2(2.0 * lambda) * gegenbauer_jacobi_ratio(lambda, n));
}

// ---------------------------------------------------------------------------
// Finite-sum closed form for integer λ and δ.

enum class Parity { Odd, Even };

/// b^λ_{k,n} = 2^{1-2λ}/Γ(λ) (-1)^k C(λ,k) (n+1)_{2λ-1} / (n+k)_{λ+1}.
inline double closed_form_coeff(int lambda, int k, int n) {
  if (lambda < 1 || k < 0 || k > lambda || n < 0) throw DomainError("invalid closed-form index");
  SignedLog c{(1.0 - 2.0 * lambda) * std::log(2.0) - std::lgamma(double(lambda)), 1};
  c = c * SignedLog{std::lgamma(lambda + 1.0) - std::lgamma(k + 1.0) - std::lgamma(lambda - k + 1.0),
                    k % 2 == 0 ? 1 : -1};
  c = c * log_pochhammer(n + 1.0, 2 * lambda - 1);
  return (c / log_pochhammer(double(n + k), lambda + 1)).value();
}

namespace detail {

/// b^λ_{k,n} (n+2k), finite also at n = k = 0 where b itself has a pole.
inline double closed_form_coeff_times_freq(int lambda, int k, int n) {
  if (n == 0 && k == 0) {
    // lim_{n→0} b^λ_{0,n} n = 2^{1-2λ}/Γ(λ) (2λ-1)! / λ!
    return std::exp((1.0 - 2.0 * lambda) * std::log(2.0) - std::lgamma(double(lambda)) +
                    std::lgamma(2.0 * lambda) - std::lgamma(lambda + 1.0));
  }
  return closed_form_coeff(lambda, k, n) * (n + 2 * k);
}

/// Remainder of sin(xt) (odd) or cos(xt) (even) after its Taylor polynomial,
/// divided by x^{p}, where p = 2μ+1 (odd) or 2μ+2 (even).
///
/// Uses the tail series when x t < 1 and direct subtraction otherwise.
inline double scaled_remainder(Parity parity, int mu, double x, double t) {
  const double xt = x * t;
  const int first_j = parity == Parity::Odd ? mu : mu + 1;
  auto power = [&](int j) { return parity == Parity::Odd ? 2 * j + 1 : 2 * j; };
  if (xt < 1.0) {
    // Σ_{j≥first_j} (-1)^j x^{power(j)-p} t^{power(j)} / power(j)!
    double term = std::pow(t, power(first_j)) / std::tgamma(power(first_j) + 1.0);
    if (first_j % 2 != 0) term = -term;
    double sum = 0.0;
    for (int j = first_j; j < first_j + 60; ++j) {
      sum += term;
      if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
      const int q = power(j);
      term *= -(x * x) * (t * t) / ((q + 1.0) * (q + 2.0));
    }
    return sum;
  }
  double taylor = 0.0;
  double term = parity == Parity::Odd ? xt : 1.0;
  for (int j = 0; j < first_j; ++j) {
    taylor += term;
    const int q = power(j);
    term *= -xt * xt / ((q + 1.0) * (q + 2.0));
  }
  const double head = parity == Parity::Odd ? std::sin(xt) : std::cos(xt);
  return (head - taylor) / std::pow(x, power(first_j));
}

}  // namespace detail

/// F_n^{λ,λ+1}(t) from the finite trigonometric sum, with λ = 2μ-1 (odd)
/// or λ = 2μ (even).
///
/// When every frequency satisfies (n+2k)t < 1 the sum is re-expanded as a
/// power series in t; all powers below t^{δ+2λ+1} cancel identically and
/// are dropped, which keeps full relative accuracy as t → 0.
inline double f_closed_form(int mu, Parity parity, int n, double t) {
  if (mu < 1) throw DomainError("mu must be a positive integer");
  if (n < 0) throw DomainError("degree must be non-negative");
  if (!(t > 0.0) || !(t <= kPi)) throw DomainError("t must lie in (0, pi]");
  const bool odd = parity == Parity::Odd;
  const int lambda = odd ? 2 * mu - 1 : 2 * mu;
  const int delta = odd ? 2 * mu : 2 * mu + 1;
  // (-1)^μ (2μ)!  or  (-1)^{μ+1} (2μ+1)!
  const double outer =
      (odd ? (mu % 2 == 0 ? 1.0 : -1.0) : (mu % 2 == 0 ? -1.0 : 1.0)) * std::tgamma(delta + 1.0);
  const double x_max = n + 2.0 * lambda;

  std::vector<double> weights(static_cast<std::size_t>(lambda) + 1);
  for (int k = 0; k <= lambda; ++k) weights[k] = detail::closed_form_coeff_times_freq(lambda, k, n);

  if (x_max * t >= 1.0) {
    double sum = 0.0;
    for (int k = 0; k <= lambda; ++k) {
      sum += weights[k] * detail::scaled_remainder(parity, mu, n + 2.0 * k, t);
    }
    return outer * sum;
  }

  // Power series: the remainder/x^{p} expands as Σ_j (-1)^j x^{q_j - p} t^{q_j} / q_j!.
  const int p = odd ? 2 * mu + 1 : 2 * mu + 2;
  const int leading = delta + 2 * lambda + 1;
  double sum = 0.0;
  for (int j = odd ? mu : mu + 1; j < 400; ++j) {
    const int q = odd ? 2 * j + 1 : 2 * j;
    if (q < leading) continue;
    double moment = 0.0;
    for (int k = 0; k <= lambda; ++k) {
      const double x = n + 2.0 * k;
      moment += weights[k] * (q == p ? 1.0 : std::pow(x, q - p));
    }
    const double term =
        (j % 2 == 0 ? 1.0 : -1.0) * moment * std::exp(q * std::log(t) - std::lgamma(q + 1.0));
    sum += term;
    if (q > leading + 4 && std::abs(term) <= 1e-18 * std::abs(sum)) break;
  }
  return outer * sum;
}

// ---------------------------------------------------------------------------
// Riemann–Liouville fractional integral on a uniform grid.

/// Samples f(k h), k = 0..K.
struct GridFunction {
  double step = 1.0;
  std::vector<double> values;

  double end() const { return step * static_cast<double>(values.size() - 1); }
};

/// (1/Γ(δ)) ∫_0^{t_k} (t_k - θ)^{δ-1} f(θ) dθ at every grid point, by product
/// integration of the piecewise-linear interpolant (exact for linear f).
inline GridFunction riemann_liouville(const GridFunction& f, double order) {
  if (!(order > 0.0)) throw DomainError("fractional order must be positive");
  if (f.values.empty() || !(f.step > 0.0)) throw DomainError("empty or invalid grid");
  const std::size_t size = f.values.size();
  const double d = order;
  const double c = std::pow(f.step, d) / std::tgamma(d + 2.0);
  auto pw = [d](double k) { return k <= 0.0 ? 0.0 : std::pow(k, d + 1.0); };
  GridFunction out{f.step, std::vector<double>(size, 0.0)};
  for (std::size_t kk = 1; kk < size; ++kk) {
    const double k = static_cast<double>(kk);
    double acc = (pw(k - 1.0) - (k - d - 1.0) * std::pow(k, d)) * f.values[0];
    for (std::size_t jj = 1; jj < kk; ++jj) {
      const double r = k - static_cast<double>(jj);
      acc += (pw(r + 1.0) - 2.0 * pw(r) + pw(r - 1.0)) * f.values[jj];
    }
    acc += f.values[kk];
    out.values[kk] = c * acc;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parameter-raising identities.

/// A_n^{α,β} = (n+β+1/2)/(2n+α+β+1).
inline double raise_coeff_a(double alpha, double beta, int n) {
  return (n + beta + 0.5) / (2.0 * n + alpha + beta + 1.0);
}

/// B_n^{α,β} = (n+1)/(2n+α+β+1).
inline double raise_coeff_b(double alpha, double beta, int n) {
  return (n + 1.0) / (2.0 * n + alpha + beta + 1.0);
}

/// F_n^{(α,β+1),δ} = A_n^{α,β} F_n^{(α,β),δ} + B_n^{α,β} F_{n+1}^{(α,β),δ}.
inline double beta_raise(double f_n, double f_n1, double alpha, double beta, int n) {
  return raise_coeff_a(alpha, beta, n) * f_n + raise_coeff_b(alpha, beta, n) * f_n1;
}

/// F_n^{(α+1,β),δ} = A_n^{β,α} F_n^{(α,β),δ} - B_n^{α,β} F_{n+1}^{(α,β),δ}.
inline double alpha_raise(double f_n, double f_n1, double alpha, double beta, int n) {
  return raise_coeff_a(beta, alpha, n) * f_n - raise_coeff_b(alpha, beta, n) * f_n1;
}

/// a_n^α = (2n)! (α+1/2)_n / (n! (α+1/2)_{2n}).
inline double quadratic_transform_coeff(double alpha, int n) {
  // Π_{k<n} 2(2k+1)(c+k) / ((c+2k)(c+2k+1)), c = α+1/2.
  const double c = alpha + 0.5;
  double r = 1.0;
  for (int k = 0; k < n; ++k) r *= 2.0 * (2 * k + 1) * (c + k) / ((c + 2 * k) * (c + 2 * k + 1));
  return r;
}

/// Two independently computed sides of an identity.
struct IdentityPair {
  EvalResult lhs;
  EvalResult rhs;

  double residual() const { return std::abs(lhs.value - rhs.value); }
  double combined_err() const { return lhs.err_bound + rhs.err_bound; }
};

/// F_n^{(α,0),δ}(t) against 2^{2α+δ+1} a_n^α F_{2n}^{(α,α),δ}(t/2).
inline IdentityPair quadratic_transform_pair(double alpha, double delta, int n, double t,
                                             const QuadratureOptions& opts = {}) {
  if (!(alpha >= 0.0)) throw UnsupportedParameter("alpha must be non-negative");
  const EvalResult lhs = f_integral({alpha, 0.0, delta, n, 0, t}, opts);
  const EvalResult half = f_integral({alpha, alpha, delta, 2 * n, 0, 0.5 * t}, opts);
  return {lhs, scale(half, std::exp2(2.0 * alpha + delta + 1.0) *
                               quadratic_transform_coeff(alpha, n))};
}

/// F_{n,m}^{(α,0),δ}(t) against 2^{2α} a_{2^m n}^α F_{n,m+1}^{(α,α),δ}(t).
inline IdentityPair quadratic_transform_pair_level(double alpha, double delta, int n, int m,
                                                   double t, const QuadratureOptions& opts = {}) {
  if (!(alpha >= 0.0)) throw UnsupportedParameter("alpha must be non-negative");
  const EvalResult lhs = f_integral({alpha, 0.0, delta, n, m, t}, opts);
  const EvalResult next = f_integral({alpha, alpha, delta, n, m + 1, t}, opts);
  return {lhs, scale(next, std::exp2(2.0 * alpha) * quadratic_transform_coeff(alpha, n << m))};
}

// ---------------------------------------------------------------------------
// Bessel integrals.

/// ∫_0^x (x-u)^δ u^p J_ν(u) du, with δ > -1 and p + ν > -1.
inline EvalResult bessel_moment(double nu, double power, double delta, double x,
                                const QuadratureOptions& opts = {}) {
  if (!(x >= 0.0)) throw DomainError("upper limit must be non-negative");
  if (!(delta > -1.0) || !(power + nu > -1.0)) throw DomainError("non-integrable Bessel moment");
  if (x == 0.0) return {0.0, 0.0, 0, 0.0};
  const double wb = power + nu;
  const double prefactor = std::pow(0.5 * x, delta + 1.0) * std::pow(0.5 * x, wb) * std::exp2(-nu);
  auto sum_with = [&](int nodes, double& abs_sum) {
    const auto rule = cached_gauss_jacobi(nodes, delta, wb);
    double acc = 0.0;
    abs_sum = 0.0;
    for (int i = 0; i < nodes; ++i) {
      const double u = 0.5 * x * (1.0 + rule->nodes[i]);
      const double term = rule->weights[i] * bessel_j_scaled(nu, u);
      acc += term;
      abs_sum += std::abs(term);
    }
    abs_sum *= prefactor;
    return acc * prefactor;
  };
  double abs_prev = 0.0;
  double prev = sum_with(opts.min_nodes, abs_prev);
  EvalResult best{};
  for (int nodes = 2 * opts.min_nodes; nodes <= opts.max_nodes; nodes *= 2) {
    double abs_cur = 0.0;
    const double cur = sum_with(nodes, abs_cur);
    const double diff = std::abs(cur - prev);
    best = {cur, std::max(diff, detail::round_floor(abs_cur)), nodes, abs_cur};
    if (diff <= std::max(opts.abs_tol, opts.rel_tol * abs_cur)) return best;
    prev = cur;
  }
  throw PrecisionExhausted("Bessel moment quadrature did not converge", best.value,
                           best.err_bound);
}

/// ∫_0^x (x-u)^{α+2μ-1/2} u^{α+μ} J_α(u) du, the Bessel integral whose sign is
/// known for 0 <= μ <= 1 and α + μ >= 1/2.
inline EvalResult bessel_limit_integral(double alpha, double mu, double x,
                                        const QuadratureOptions& opts = {}) {
  if (!(mu >= 0.0 && mu <= 1.0)) throw DomainError("mu must lie in [0, 1]");
  if (!(alpha + mu >= 0.5)) throw DomainError("requires alpha + mu >= 1/2");
  if (!(alpha >= 0.0)) throw UnsupportedParameter("alpha must be non-negative");
  if (!(x > 0.0)) throw DomainError("x must be positive");
  return bessel_moment(alpha, alpha + mu, alpha + 2.0 * mu - 0.5, x, opts);
}

/// 2^{m(α+1/2)} F_{n,m}^{(α,0),δ}(t), the sequence whose m → ∞ limit is
/// bessel_limit_target.
inline EvalResult scaled_dyadic_integral(double alpha, double delta, int n, int m, double t,
                                         const QuadratureOptions& opts = {}) {
  const EvalResult r = f_integral({alpha, 0.0, delta, n, m, t}, opts);
  return scale(r, std::exp2(m * (alpha + 0.5)));
}

/// lim_{m→∞} 2^{m(α+1/2)} F_{n,m}^{(α,0),δ}(t)
///   = 2^{-α-1/2} n^{-δ-α-3/2} ∫_0^{nt} (nt-u)^δ u^{α+1/2} J_{α-1/2}(u) du.
inline EvalResult bessel_limit_target(double alpha, double delta, int n, double t,
                                      const QuadratureOptions& opts = {}) {
  if (n < 1) throw DomainError("limit target needs n >= 1");
  if (!(alpha >= 0.0)) throw UnsupportedParameter("alpha must be non-negative");
  const EvalResult r = bessel_moment(alpha - 0.5, alpha + 0.5, delta, n * t, opts);
  return scale(r, std::exp2(-alpha - 0.5) * std::pow(double(n), -delta - alpha - 1.5));
}

// ---------------------------------------------------------------------------
// Sign classification.

enum class Verdict { Positive, ZeroConsistent, Negative, PrecisionExhausted };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Positive: return "positive";
    case Verdict::ZeroConsistent: return "zero-consistent";
    case Verdict::Negative: return "NEGATIVE";
    case Verdict::PrecisionExhausted: return "precision-exhausted";
  }
  return "?";
}

/// Relative floor below which a value is not called positive.
inline constexpr double kPositivityFloor = 1e-12;

/// Positive iff value > max(1e-12 * abs_integral, 10 err); NEGATIVE iff
/// value < -10 err; zero-consistent otherwise.
inline Verdict classify(const EvalResult& r) {
  if (r.nodes_used < 0) return Verdict::PrecisionExhausted;
  const double band = 10.0 * r.err_bound;
  if (r.value > std::max(kPositivityFloor * r.abs_integral, band)) return Verdict::Positive;
  if (r.value < -band) return Verdict::Negative;
  return Verdict::ZeroConsistent;
}

}  // namespace spk

#endif  // SPK_JACOBI_INTEGRALS_HPP
