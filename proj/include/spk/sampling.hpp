#ifndef SPK_SAMPLING_HPP
#define SPK_SAMPLING_HPP

#include <array>
#include <cmath>

#include <Eigen/Dense>

#include "spk/error.hpp"
#include "spk/random.hpp"
#include "spk/spherical_kernels.hpp"

namespace spk {

/// N uniform points on S^{d-1} ⊂ ℝ^d, one per row.
inline Eigen::MatrixXd sample_sphere(int d, int count, CounterRng& rng) {
  if (d < 1 || count < 0) throw DomainError("invalid sample shape");
  Eigen::MatrixXd pts(count, d);
  for (int i = 0; i < count; ++i) {
    double norm = 0.0;
    do {
      for (int j = 0; j < d; ++j) pts(i, j) = rng.normal();
      norm = pts.row(i).norm();
    } while (norm == 0.0);
    pts.row(i) /= norm;
  }
  return pts;
}

namespace detail {

using Quaternion = std::array<double, 4>;

inline Quaternion conj_mul(const double* x, const double* y) {
  // conj(x) * y
  const double a = x[0], b = -x[1], c = -x[2], d = -x[3];
  return {a * y[0] - b * y[1] - c * y[2] - d * y[3], a * y[1] + b * y[0] + c * y[3] - d * y[2],
          a * y[2] - b * y[3] + c * y[0] + d * y[1], a * y[3] + b * y[2] - c * y[1] + d * y[0]};
}

/// |<x, y>| over the division algebra of real dimension k ∈ {1, 2, 4}, with
/// coordinates packed k reals at a time.
inline double hermitian_modulus(const Eigen::VectorXd& x, const Eigen::VectorXd& y, int k) {
  const Eigen::Index q = x.size() / k;
  Quaternion acc{0.0, 0.0, 0.0, 0.0};
  std::array<double, 4> xs{};
  std::array<double, 4> ys{};
  for (Eigen::Index i = 0; i < q; ++i) {
    xs.fill(0.0);
    ys.fill(0.0);
    for (int c = 0; c < k; ++c) {
      xs[c] = x(i * k + c);
      ys[c] = y(i * k + c);
    }
    const Quaternion p = conj_mul(xs.data(), ys.data());
    for (int c = 0; c < 4; ++c) acc[c] += p[c];
  }
  return std::sqrt(acc[0] * acc[0] + acc[1] * acc[1] + acc[2] * acc[2] + acc[3] * acc[3]);
}

}  // namespace detail

/// Pairwise geodesic angles θ = 2 arccos|<x, y>| of N uniform points in a
/// projective space, realized as unit vectors in K^{q}.
///
/// The Cayley plane has no such model; its samples come from the totally
/// geodesic ℙ^8(ℍ) inside it, whose distances are Cayley distances.
inline Eigen::MatrixXd sample_projective_distances(const SpaceSpec& space, int count,
                                                   CounterRng& rng) {
  int k = 1;
  int real_dim = space.dim;
  switch (space.kind) {
    case SpaceKind::Sphere: throw DomainError("spheres are sampled with sample_sphere");
    case SpaceKind::RealProjective: k = 1; break;
    case SpaceKind::ComplexProjective: k = 2; break;
    case SpaceKind::QuaternionicProjective: k = 4; break;
    case SpaceKind::CayleyPlane:
      k = 4;
      real_dim = 8;
      break;
  }
  if (real_dim % k != 0) {
    throw UnsupportedParameter("no point model for " + space.name() + " in dimension " +
                               std::to_string(space.dim));
  }
  const int ambient = real_dim + k;
  const Eigen::MatrixXd pts = sample_sphere(ambient, count, rng);
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(count, count);
  for (int i = 0; i < count; ++i) {
    const Eigen::VectorXd xi = pts.row(i).transpose();
    for (int j = i + 1; j < count; ++j) {
      const double c = detail::hermitian_modulus(xi, pts.row(j).transpose(), k);
      // 2 arccos c, written with atan2 so rounding past c = 1 stays harmless.
      const double s = std::sqrt(std::max(0.0, (1.0 - c) * (1.0 + c)));
      d(i, j) = d(j, i) = 2.0 * std::atan2(s, c);
    }
  }
  return d;
}

}  // namespace spk

#endif  // SPK_SAMPLING_HPP
