#ifndef SPK_NUMERIC_HPP
#define SPK_NUMERIC_HPP

#include <cmath>
#include <numbers>
#include <utility>

namespace spk {

inline constexpr double kPi = std::numbers::pi;

/// Logarithm of |x| together with its sign.
struct SignedLog {
  double log_abs = 0.0;
  int sign = 1;

  double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }

  friend SignedLog operator*(SignedLog a, SignedLog b) {
    return {a.log_abs + b.log_abs, a.sign * b.sign};
  }
  friend SignedLog operator/(SignedLog a, SignedLog b) {
    return {a.log_abs - b.log_abs, a.sign * b.sign};
  }
};

/// log Γ(x) with the sign of Γ(x).
inline SignedLog log_gamma(double x) {
  int sign = 1;
  const double lg = ::lgamma_r(x, &sign);
  return {lg, sign};
}

/// Pochhammer symbol (x)_n = Γ(x+n)/Γ(x) in log space.
///
/// Handles non-positive x by the finite product, which also covers the cases
/// where the product hits an exact zero.
inline SignedLog log_pochhammer(double x, int n) {
  if (n == 0) return {0.0, 1};
  if (x > 0.0) return log_gamma(x + n) / log_gamma(x);
  SignedLog acc{0.0, 1};
  for (int k = 0; k < n; ++k) {
    const double f = x + k;
    if (f == 0.0) return {0.0, 0};
    acc = acc * SignedLog{std::log(std::abs(f)), f < 0 ? -1 : 1};
  }
  return acc;
}

inline double pochhammer(double x, int n) { return log_pochhammer(x, n).value(); }

/// (x)_n / (y)_n as a running product of term ratios, which stays in range
/// whenever the ratio itself does and keeps rounding near sqrt(n) eps.
inline double pochhammer_ratio(double x, double y, int n) {
  double r = 1.0;
  for (int k = 0; k < n; ++k) r *= (x + k) / (y + k);
  return r;
}

/// sin(x)/x, exact limit at 0.
inline double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
  }
  return std::sin(x) / x;
}

/// Double-double value used for compensated recurrences.
struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;

  double value() const { return hi + lo; }
};

namespace detail {

inline std::pair<double, double> two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  const double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

inline std::pair<double, double> two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

}  // namespace detail

inline DoubleDouble operator+(DoubleDouble a, DoubleDouble b) {
  auto [s, e] = detail::two_sum(a.hi, b.hi);
  e += a.lo + b.lo;
  auto [hi, lo] = detail::two_sum(s, e);
  return {hi, lo};
}

inline DoubleDouble operator-(DoubleDouble a) { return {-a.hi, -a.lo}; }
inline DoubleDouble operator-(DoubleDouble a, DoubleDouble b) { return a + (-b); }

inline DoubleDouble operator*(DoubleDouble a, double b) {
  auto [p, e] = detail::two_prod(a.hi, b);
  e += a.lo * b;
  auto [hi, lo] = detail::two_sum(p, e);
  return {hi, lo};
}

inline DoubleDouble operator*(DoubleDouble a, DoubleDouble b) {
  auto [p, e] = detail::two_prod(a.hi, b.hi);
  e += a.hi * b.lo + a.lo * b.hi;
  auto [hi, lo] = detail::two_sum(p, e);
  return {hi, lo};
}

inline DoubleDouble dd_div(DoubleDouble a, double b) {
  const double q1 = a.hi / b;
  DoubleDouble r = a - DoubleDouble{q1, 0.0} * DoubleDouble{b, 0.0};
  const double q2 = r.hi / b;
  auto [hi, lo] = detail::two_sum(q1, q2);
  return {hi, lo};
}

}  // namespace spk

#endif  // SPK_NUMERIC_HPP
