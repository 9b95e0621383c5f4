#ifndef SPK_GAUSS_JACOBI_HPP
#define SPK_GAUSS_JACOBI_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

#include "spk/error.hpp"
#include "spk/numeric.hpp"

namespace spk {

/// Nodes and weights for ∫_{-1}^{1} f(s) (1-s)^a (1+s)^b ds ≈ Σ w_i f(s_i).
struct GaussJacobiRule {
  double a = 0.0;
  double b = 0.0;
  std::vector<double> nodes;
  std::vector<double> weights;
};

namespace detail {

/// Implicit QL on a symmetric tridiagonal matrix. On return diag holds the
/// eigenvalues and first holds the first component of each eigenvector.
/// off[i] couples rows i and i+1; off.back() is scratch.
inline void tridiagonal_ql(std::vector<double>& diag, std::vector<double>& off,
                           std::vector<double>& first) {
  const int n = static_cast<int>(diag.size());
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m = l;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(diag[m]) + std::abs(diag[m + 1]);
        if (std::abs(off[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (++iter > 60) throw std::runtime_error("tridiagonal QL failed to converge");
        double g = (diag[l + 1] - diag[l]) / (2.0 * off[l]);
        double r = std::hypot(g, 1.0);
        g = diag[m] - diag[l] + off[l] / (g + std::copysign(r, g));
        double s = 1.0;
        double c = 1.0;
        double p = 0.0;
        int i = m - 1;
        for (; i >= l; --i) {
          double f = s * off[i];
          const double b = c * off[i];
          r = std::hypot(f, g);
          off[i + 1] = r;
          if (r == 0.0) {
            diag[i + 1] -= p;
            off[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = diag[i + 1] - p;
          r = (diag[i] - g) * s + 2.0 * c * b;
          p = s * r;
          diag[i + 1] = g + p;
          g = c * r - b;
          f = first[i + 1];
          first[i + 1] = s * first[i] + c * f;
          first[i] = c * first[i] - s * f;
        }
        if (r == 0.0 && i >= l) continue;
        diag[l] -= p;
        off[l] = g;
        off[m] = 0.0;
      }
    } while (m != l);
  }
}

}  // namespace detail

/// Golub–Welsch construction of the n-point Gauss–Jacobi rule.
inline GaussJacobiRule make_gauss_jacobi(int n, double a, double b) {
  if (n < 1) throw DomainError("Gauss-Jacobi rule needs at least one node");
  if (!(a > -1.0) || !(b > -1.0)) throw DomainError("Gauss-Jacobi exponents must exceed -1");
  std::vector<double> diag(n);
  std::vector<double> off(n, 0.0);
  std::vector<double> first(n, 0.0);
  first[0] = 1.0;
  const double ab = a + b;
  diag[0] = (b - a) / (ab + 2.0);
  for (int k = 1; k < n; ++k) {
    const double s = 2.0 * k + ab;
    diag[k] = (b * b - a * a) / (s * (s + 2.0));
    off[k - 1] = 2.0 / s * std::sqrt(k * (k + a) * (k + b) * (k + ab) / ((s - 1.0) * (s + 1.0)));
  }
  // The general k = 1 entry is 0/0 when a + b = -1; cancel the (1 + a + b) factor.
  if (n > 1) off[0] = 2.0 / (ab + 2.0) * std::sqrt((1.0 + a) * (1.0 + b) / (ab + 3.0));
  detail::tridiagonal_ql(diag, off, first);

  const double log_mu0 = (ab + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) +
                         std::lgamma(b + 1.0) - std::lgamma(ab + 2.0);
  const double mu0 = std::exp(log_mu0);

  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int x, int y) { return diag[x] < diag[y]; });

  GaussJacobiRule rule{a, b, std::vector<double>(n), std::vector<double>(n)};
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = diag[order[i]];
    rule.weights[i] = mu0 * first[order[i]] * first[order[i]];
  }
  return rule;
}

/// Process-wide memo of rules keyed by (n, a, b). Safe for concurrent use.
inline std::shared_ptr<const GaussJacobiRule> cached_gauss_jacobi(int n, double a, double b) {
  using Key = std::tuple<int, double, double>;
  static std::mutex mutex;
  static std::map<Key, std::shared_ptr<const GaussJacobiRule>> cache;
  const Key key{n, a, b};
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto rule = std::make_shared<const GaussJacobiRule>(make_gauss_jacobi(n, a, b));
  std::lock_guard lock(mutex);
  return cache.emplace(key, std::move(rule)).first->second;
}

}  // namespace spk

#endif  // SPK_GAUSS_JACOBI_HPP
