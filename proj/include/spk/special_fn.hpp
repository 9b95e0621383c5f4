#ifndef SPK_SPECIAL_FN_HPP
#define SPK_SPECIAL_FN_HPP

#include <cmath>
#include <concepts>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "spk/error.hpp"
#include "spk/numeric.hpp"

namespace spk {

/// Weight exponents (α, β) of the integrals F_n^{(α,β),δ}. The associated
/// Jacobi polynomial is P_n^{(α-1/2, β-1/2)}.
class JacobiParam {
 public:
  JacobiParam(double alpha, double beta) : alpha_(alpha), beta_(beta) {
    if (!(alpha > -0.5) || !(beta > -0.5)) {
      throw DomainError("JacobiParam requires alpha, beta > -1/2");
    }
  }

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  /// Shifted polynomial indices.
  double a() const { return alpha_ - 0.5; }
  double b() const { return beta_ - 0.5; }

  friend bool operator==(const JacobiParam&, const JacobiParam&) = default;

 private:
  double alpha_;
  double beta_;
};

/// P_0..P_{n_max} at one abscissa.
struct PolySequence {
  JacobiParam params;
  int degree_max = 0;
  std::vector<double> values;
};

/// Degree above which the recurrence switches to compensated accumulation.
inline constexpr int kCompensatedDegree = 200;

namespace detail {

inline void check_jacobi_args(double a, double b, int n, double x) {
  if (!(a > -1.0) || !(b > -1.0)) throw DomainError("Jacobi indices must exceed -1");
  if (n < 0) throw DomainError("negative polynomial degree");
  if (!(std::abs(x) <= 1.0)) throw DomainError("Jacobi abscissa outside [-1, 1]");
}

/// Coefficients of P_{k+1} = (c1 x + c2) P_k - c3 P_{k-1}, valid for k >= 1.
struct RecurrenceCoeffs {
  double c1, c2, c3;
};

inline RecurrenceCoeffs jacobi_coeffs(double a, double b, int k) {
  const double s = 2.0 * k + a + b;
  const double denom = 2.0 * (k + 1) * (k + a + b + 1);
  return {(s + 1.0) * (s + 2.0) / denom,
          (s + 1.0) * (a - b) * (a + b) / (denom * s),
          2.0 * (k + a) * (k + b) * (s + 2.0) / (denom * s)};
}

}  // namespace detail

/// Writes P_0^{(a,b)}(x) .. P_n^{(a,b)}(x) into out (resized to n+1).
///
/// Forward three-term recurrence; above kCompensatedDegree the state is
/// carried in double-double so rounding does not accumulate over long runs.
inline void jacobi_eval_all(double a, double b, int n, double x, std::vector<double>& out) {
  detail::check_jacobi_args(a, b, n, x);
  out.resize(static_cast<std::size_t>(n) + 1);
  out[0] = 1.0;
  if (n == 0) return;
  out[1] = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x;
  if (n <= kCompensatedDegree) {
    double pm1 = out[0];
    double p = out[1];
    for (int k = 1; k < n; ++k) {
      const auto c = detail::jacobi_coeffs(a, b, k);
      const double next = (c.c1 * x + c.c2) * p - c.c3 * pm1;
      pm1 = p;
      p = next;
      out[k + 1] = p;
    }
    return;
  }
  DoubleDouble pm1{1.0, 0.0};
  DoubleDouble p = DoubleDouble{0.5 * (a - b), 0.0} + DoubleDouble{0.5 * (a + b + 2.0), 0.0} * x;
  for (int k = 1; k < n; ++k) {
    const auto c = detail::jacobi_coeffs(a, b, k);
    const DoubleDouble lead = DoubleDouble{c.c1, 0.0} * x + DoubleDouble{c.c2, 0.0};
    const DoubleDouble next = lead * p - pm1 * c.c3;
    pm1 = p;
    p = next;
    out[k + 1] = p.value();
  }
}

/// P_0^{(a,b)}(cos φ) .. P_n^{(a,b)}(cos φ) for φ in [0, π].
///
/// Runs the recurrence in y = 1 - cos φ = 2 sin²(φ/2), which stays accurate
/// for small φ where cos φ itself has lost the digits that matter.
inline void jacobi_eval_all_angle(double a, double b, int n, double phi,
                                  std::vector<double>& out) {
  if (!(phi >= 0.0) || !(phi <= kPi)) throw DomainError("angle outside [0, pi]");
  detail::check_jacobi_args(a, b, n, 0.0);
  const double sh = std::sin(0.5 * phi);
  const double y = 2.0 * sh * sh;
  out.resize(static_cast<std::size_t>(n) + 1);
  out[0] = 1.0;
  if (n == 0) return;
  out[1] = (a + 1.0) - 0.5 * (a + b + 2.0) * y;
  // c1 x + c2 = (c1 + c2) - c1 y with c1 + c2 formed before rounding.
  auto lead = [a, b](int k, double& at_one, double& slope, double& c3) {
    const double s = 2.0 * k + a + b;
    const double denom = 2.0 * (k + 1) * (k + a + b + 1);
    slope = (s + 1.0) * (s + 2.0) / denom;
    at_one = (s + 1.0) * ((s + 2.0) * s + (a - b) * (a + b)) / (denom * s);
    c3 = 2.0 * (k + a) * (k + b) * (s + 2.0) / (denom * s);
  };
  if (n <= kCompensatedDegree) {
    double pm1 = out[0];
    double p = out[1];
    for (int k = 1; k < n; ++k) {
      double at_one, slope, c3;
      lead(k, at_one, slope, c3);
      const double next = (at_one - slope * y) * p - c3 * pm1;
      pm1 = p;
      p = next;
      out[k + 1] = p;
    }
    return;
  }
  DoubleDouble pm1{1.0, 0.0};
  DoubleDouble p = DoubleDouble{a + 1.0, 0.0} - DoubleDouble{0.5 * (a + b + 2.0), 0.0} * y;
  for (int k = 1; k < n; ++k) {
    double at_one, slope, c3;
    lead(k, at_one, slope, c3);
    const DoubleDouble factor = DoubleDouble{at_one, 0.0} - DoubleDouble{slope, 0.0} * y;
    const DoubleDouble next = factor * p - pm1 * c3;
    pm1 = p;
    p = next;
    out[k + 1] = p.value();
  }
}

inline std::vector<double> jacobi_eval_all(double a, double b, int n, double x) {
  std::vector<double> out;
  jacobi_eval_all(a, b, n, x, out);
  return out;
}

/// P_n^{(a,b)}(x).
inline double jacobi_eval(double a, double b, int n, double x) {
  return jacobi_eval_all(a, b, n, x).back();
}

/// All degrees 0..n_max of P^{(α-1/2,β-1/2)} at x.
inline PolySequence jacobi_sequence(const JacobiParam& params, int n_max, double x) {
  PolySequence seq{params, n_max, {}};
  jacobi_eval_all(params.a(), params.b(), n_max, x, seq.values);
  return seq;
}

/// P_n^{(a,b)}(1) = Γ(n+a+1) / (Γ(a+1) n!).
inline double jacobi_at_one(double a, int n) {
  return pochhammer_ratio(a + 1.0, 1.0, n);
}

/// (2λ)_n / (λ+1/2)_n, the factor linking C_n^λ to P_n^{(λ-1/2,λ-1/2)}.
inline double gegenbauer_jacobi_ratio(double lambda, int n) {
  return pochhammer_ratio(2.0 * lambda, lambda + 0.5, n);
}

/// Gegenbauer polynomial C_n^λ(x) through the Jacobi relation.
inline double gegenbauer_eval(double lambda, int n, double x) {
  if (!(lambda > -0.5)) throw DomainError("Gegenbauer index must exceed -1/2");
  if (lambda == 0.0) throw UnsupportedParameter("Gegenbauer index 0 is not supported");
  if (n == 0) {
    detail::check_jacobi_args(lambda - 0.5, lambda - 0.5, n, x);
    return 1.0;
  }
  return gegenbauer_jacobi_ratio(lambda, n) * jacobi_eval(lambda - 0.5, lambda - 0.5, n, x);
}

/// h_n = 2^{1-α-β} ∫_{-1}^{1} |P_n^{(α-1/2,β-1/2)}(x)|² (1-x)^{α-1/2} (1+x)^{β-1/2} dx.
inline double jacobi_norm_h(const JacobiParam& p, int n) {
  if (n < 0) throw DomainError("negative polynomial degree");
  const double alpha = p.alpha();
  const double beta = p.beta();
  // 2/(2n+α+β) Γ(n+α+1/2) Γ(n+β+1/2) / (Γ(n+α+β) n!), written so that
  // n = 0, α+β = 0 stays finite.
  SignedLog num = log_gamma(n + alpha + 0.5) * log_gamma(n + beta + 0.5);
  SignedLog den = log_gamma(n + 1.0);
  if (n == 0) {
    den = den * log_gamma(alpha + beta + 1.0);
  } else {
    den = den * log_gamma(n + alpha + beta) * SignedLog{std::log(2.0 * n + alpha + beta), 1};
  }
  return 2.0 * (num / den).value();
}

/// ∫_0^π |P_n^{(α-1/2,β-1/2)}(cos θ)|² (sin θ/2)^{2α} (cos θ/2)^{2β} dθ, which
/// equals h_n / 2.
inline double jacobi_norm_theta(const JacobiParam& p, int n) { return 0.5 * jacobi_norm_h(p, n); }

/// Defining power series of J_ν(z), in any floating type.
///
/// Intended for small arguments or extended-precision types; in double the
/// alternating terms cancel badly beyond z of about 12.
template <typename Real>
Real bessel_j_series(Real nu, Real z) {
  using std::abs;
  using std::exp;
  using std::lgamma;
  using std::log;
  if (z == Real(0)) return nu == Real(0) ? Real(1) : Real(0);
  const Real half = z / Real(2);
  const Real q = half * half;
  const Real eps = std::numeric_limits<Real>::epsilon();
  Real term = Real(1);
  Real sum = Real(1);
  for (int k = 1; k < 4000; ++k) {
    term *= -q / (Real(k) * (Real(k) + nu));
    sum += term;
    if (Real(k) > half && abs(term) <= abs(sum) * eps) break;
  }
  return sum * exp(nu * log(half) - lgamma(nu + Real(1)));
}

namespace detail {

/// Spherical Bessel j_l(z) for l >= -1, z > 0.
inline double spherical_bessel_j(int l, double z) {
  const double jm1 = std::cos(z) / z;
  const double j0 = std::sin(z) / z;
  if (l == -1) return jm1;
  if (l == 0) return j0;
  if (z >= l) {
    double prev = jm1;
    double cur = j0;
    for (int k = 0; k < l; ++k) {
      const double next = (2.0 * k + 1.0) / z * cur - prev;
      prev = cur;
      cur = next;
    }
    return cur;
  }
  // Miller: downward from an order well past l; normalize with whichever
  // closed form (j_0 or j_{-1}) is larger in magnitude.
  const int start = l + 20 + static_cast<int>(std::sqrt(40.0 * l));
  double fp1 = 0.0;
  double f = 1e-30;
  double fl = 0.0;
  for (int k = start; k >= 0; --k) {
    // f holds f_k; produce f_{k-1} = (2k+1)/z f_k - f_{k+1}.
    if (k == l) fl = f;
    const double fm1 = (2.0 * k + 1.0) / z * f - fp1;
    fp1 = f;
    f = fm1;
    if (std::abs(f) > 1e250) {
      f *= 1e-250;
      fp1 *= 1e-250;
      fl *= 1e-250;
    }
  }
  // Now fp1 = f_0 and f = f_{-1}.
  const double scale = std::abs(j0) >= std::abs(jm1) ? j0 / fp1 : jm1 / f;
  return fl * scale;
}

inline bool is_half_integer(double nu) {
  const double twice = 2.0 * nu;
  return std::abs(twice - std::round(twice)) < 1e-14 && std::lround(twice) % 2 != 0;
}

}  // namespace detail

/// Bessel function J_ν(z), ν >= -1/2, z >= 0.
///
/// Half-integer orders go through spherical Bessel functions: closed forms
/// for J_{±1/2}, upward recurrence when z >= order, Miller's downward
/// recurrence otherwise. Other orders use the power series for z <= 12 and
/// std::cyl_bessel_j beyond.
inline double bessel_j(double nu, double z) {
  if (!(z >= 0.0)) throw DomainError("bessel_j requires z >= 0");
  if (!(nu >= -0.5)) throw DomainError("bessel_j requires order >= -1/2");
  if (z == 0.0) {
    if (nu == 0.0) return 1.0;
    if (nu > 0.0) return 0.0;
    throw DomainError("J_{-1/2} is unbounded at 0");
  }
  if (z < 0.5) return bessel_j_series<double>(nu, z);
  if (detail::is_half_integer(nu)) {
    const int l = static_cast<int>(std::lround(nu - 0.5));
    return std::sqrt(2.0 * z / kPi) * detail::spherical_bessel_j(l, z);
  }
  if (z <= 12.0) return bessel_j_series<double>(nu, z);
  return std::cyl_bessel_j(nu, z);
}

/// (z/2)^{-ν} J_ν(z): entire in z, equal to 1/Γ(ν+1) at 0.
inline double bessel_j_scaled(double nu, double z) {
  if (!(z >= 0.0)) throw DomainError("bessel_j_scaled requires z >= 0");
  if (z < 2.0) {
    const double q = 0.25 * z * z;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 60; ++k) {
      term *= -q / (k * (k + nu));
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum / std::tgamma(nu + 1.0);
  }
  return bessel_j(nu, z) / std::pow(0.5 * z, nu);
}

}  // namespace spk

#endif  // SPK_SPECIAL_FN_HPP
