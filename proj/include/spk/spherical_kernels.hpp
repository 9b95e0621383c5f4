#ifndef SPK_SPHERICAL_KERNELS_HPP
#define SPK_SPHERICAL_KERNELS_HPP

#include <cmath>
#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "spk/csv.hpp"
#include "spk/error.hpp"
#include "spk/jacobi_integrals.hpp"
#include "spk/parallel.hpp"
#include "spk/special_fn.hpp"

namespace spk {

enum class SpaceKind { Sphere, RealProjective, ComplexProjective, QuaternionicProjective, CayleyPlane };

/// A compact two-point homogeneous space.
///
/// Zonal functions expand in P_n^{(jacobi_a, jacobi_b)}(cos(angle_scale θ)).
/// (alpha, beta) are the matching F-integral parameters, so that
/// P_n^{(alpha-1/2, beta-1/2)}(cos θ) is the zonal basis in the geodesic
/// angle θ ∈ [0, π].
///
/// Sphere(d) is S^{d-1} ⊂ ℝ^d. The projective spaces have real dimension d
/// and diameter π; ℙ^d(ℝ) keeps only even indices, with P_{2k}^{(a,a)}(cos θ/2)
/// proportional to P_k^{(a,-1/2)}(cos θ).
struct SpaceSpec {
  SpaceKind kind = SpaceKind::Sphere;
  int dim = 3;
  double alpha = 0.5;
  double beta = 0.5;
  double jacobi_a = 0.0;
  double jacobi_b = 0.0;
  double angle_scale = 1.0;
  bool parity_even_only = false;
  double spd_delta_threshold = 2.0;

  static SpaceSpec sphere(int d) {
    if (d < 2) throw DomainError("sphere dimension must be at least 2");
    const double lambda = (d - 2) / 2.0;
    return {SpaceKind::Sphere, d, lambda, lambda, lambda - 0.5, lambda - 0.5, 1.0, false,
            std::ceil(d / 2.0)};
  }

  static SpaceSpec real_projective(int d) {
    if (d < 2) throw DomainError("real projective dimension must be at least 2");
    const double a = (d - 2) / 2.0;
    return {SpaceKind::RealProjective, d, a + 0.5, 0.0, a, a, 0.5, true, std::ceil((d + 1) / 2.0)};
  }

  static SpaceSpec complex_projective(int d) {
    if (d < 4 || d % 2 != 0) throw DomainError("complex projective dimension must be even and >= 4");
    return from_table(SpaceKind::ComplexProjective, d, (d - 2) / 2.0, 0.0, std::ceil((d + 1) / 2.0));
  }

  static SpaceSpec quaternionic_projective(int d) {
    if (d < 8 || d % 2 != 0) {
      throw DomainError("quaternionic projective dimension must be even and >= 8");
    }
    return from_table(SpaceKind::QuaternionicProjective, d, (d - 2) / 2.0, 1.0,
                      std::ceil((d + 1) / 2.0));
  }

  static SpaceSpec cayley_plane() { return from_table(SpaceKind::CayleyPlane, 16, 7.0, 3.0, 9.0); }

  std::string name() const {
    switch (kind) {
      case SpaceKind::Sphere: return "sphere";
      case SpaceKind::RealProjective: return "rp";
      case SpaceKind::ComplexProjective: return "cp";
      case SpaceKind::QuaternionicProjective: return "hp";
      case SpaceKind::CayleyPlane: return "cayley";
    }
    return "?";
  }

 private:
  static SpaceSpec from_table(SpaceKind kind, int d, double a, double b, double threshold) {
    return {kind, d, a + 0.5, b + 0.5, a, b, 1.0, false, threshold};
  }
};

/// Parses a space name as printed by SpaceSpec::name().
inline SpaceSpec make_space(const std::string& name, int dim) {
  if (name == "sphere") return SpaceSpec::sphere(dim);
  if (name == "rp") return SpaceSpec::real_projective(dim);
  if (name == "cp") return SpaceSpec::complex_projective(dim);
  if (name == "hp") return SpaceSpec::quaternionic_projective(dim);
  if (name == "cayley") return SpaceSpec::cayley_plane();
  throw DomainError("unknown space '" + name + "'");
}

/// The truncated power (t - θ)_+^δ on a given space.
struct KernelSpec {
  double t = kPi;
  double delta = 1.0;
  SpaceSpec space = SpaceSpec::sphere(3);

  void validate() const {
    if (!(t > 0.0) || !(t <= kPi)) throw DomainError("t must lie in (0, pi]");
    if (!(delta > 0.0)) throw DomainError("delta must be positive");
  }
};

inline double kernel_eval(const KernelSpec& spec, double theta) {
  if (!(theta >= 0.0) || !(theta <= kPi)) throw DomainError("angle must lie in [0, pi]");
  return theta < spec.t ? std::pow(spec.t - theta, spec.delta) : 0.0;
}

/// Expansion coefficients a_0..a_{n_max} in the zonal basis of spec.space.
struct CoeffVector {
  KernelSpec spec;
  int n_max = 0;
  std::vector<double> coeffs;
  std::vector<double> err_bounds;
};

/// a_n = F_n^{(α,β),δ}(t) / ∫_0^π |P_n|² w dθ, i.e. F_n / (h_n/2).
///
/// For ℙ^d(ℝ) the even coefficients come from F^{((d-1)/2, 0)} through the
/// quadratic transformation and the odd ones are exactly zero.
inline CoeffVector schoenberg_coeffs(const KernelSpec& spec, int n_max,
                                     const QuadratureOptions& opts = {}) {
  spec.validate();
  if (n_max < 0) throw DomainError("n_max must be non-negative");
  const SpaceSpec& sp = spec.space;
  CoeffVector cv{spec, n_max, std::vector<double>(n_max + 1, 0.0),
                 std::vector<double>(n_max + 1, 0.0)};
  const JacobiParam param(sp.alpha, sp.beta);
  if (sp.parity_even_only) {
    const int k_max = n_max / 2;
    const auto f = f_integral_batch(sp.alpha, sp.beta, spec.delta, 0, spec.t, k_max, opts);
    for (int k = 0; k <= k_max; ++k) {
      const double c = quadratic_transform_coeff(sp.alpha, k) / jacobi_norm_theta(param, k);
      cv.coeffs[2 * k] = c * f[k].value;
      cv.err_bounds[2 * k] = std::abs(c) * f[k].err_bound;
    }
    return cv;
  }
  const auto f = f_integral_batch(sp.alpha, sp.beta, spec.delta, 0, spec.t, n_max, opts);
  for (int n = 0; n <= n_max; ++n) {
    const double norm = jacobi_norm_theta(param, n);
    cv.coeffs[n] = f[n].value / norm;
    cv.err_bounds[n] = f[n].err_bound / norm;
  }
  return cv;
}

/// Partial sum Σ_{n ≤ n_max} a_n P_n^{(a,b)}(cos(angle_scale θ)).
inline double expansion_eval(const CoeffVector& cv, double theta) {
  if (!(theta >= 0.0) || !(theta <= kPi)) throw DomainError("angle must lie in [0, pi]");
  const SpaceSpec& sp = cv.spec.space;
  std::vector<double> poly;
  jacobi_eval_all_angle(sp.jacobi_a, sp.jacobi_b, cv.n_max, sp.angle_scale * theta, poly);
  double sum = 0.0;
  for (int n = cv.n_max; n >= 0; --n) sum += cv.coeffs[n] * poly[n];
  return sum;
}

inline void write_csv(std::ostream& out, const CoeffVector& cv) {
  out << "n,a_n,err_bound\n";
  for (int n = 0; n <= cv.n_max; ++n) {
    out << n << ',' << format_double(cv.coeffs[n]) << ',' << format_double(cv.err_bounds[n])
        << '\n';
  }
}

// ---------------------------------------------------------------------------
// Point sets and Gram matrices.

/// Great-circle angle between unit vectors, as 2 atan2(|x-y|, |x+y|),
/// which stays accurate near 0 and π where arccos does not.
inline double geodesic_distance(const Eigen::Ref<const Eigen::VectorXd>& x,
                                const Eigen::Ref<const Eigen::VectorXd>& y) {
  if (x.size() != y.size()) throw DomainError("vectors differ in dimension");
  if (std::abs(x.norm() - 1.0) > 1e-10 || std::abs(y.norm() - 1.0) > 1e-10) {
    throw DomainError("geodesic distance needs unit vectors");
  }
  return 2.0 * std::atan2((x - y).norm(), (x + y).norm());
}

inline constexpr double kDuplicateDistance = 1e-12;

/// Kernel matrix from a symmetric matrix of pairwise geodesic angles.
inline Eigen::MatrixXd gram_from_distances(const KernelSpec& spec, const Eigen::MatrixXd& dist,
                                           unsigned threads = 1) {
  spec.validate();
  const Eigen::Index n = dist.rows();
  if (dist.cols() != n) throw DomainError("distance matrix must be square");
  Eigen::MatrixXd g(n, n);
  const double diag = std::pow(spec.t, spec.delta);
  parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t row) {
    const auto i = static_cast<Eigen::Index>(row);
    g(i, i) = diag;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (dist(i, j) != dist(j, i)) throw DomainError("distance matrix is not symmetric");
      if (dist(i, j) < kDuplicateDistance) throw DegenerateInput("duplicate points");
      g(i, j) = kernel_eval(spec, dist(i, j));
    }
  });
  g.triangularView<Eigen::StrictlyLower>() = g.transpose();
  return g;
}

/// Pairwise angles of points given as the rows of `points`.
inline Eigen::MatrixXd sphere_distances(const Eigen::MatrixXd& points) {
  const Eigen::Index n = points.rows();
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      d(i, j) = d(j, i) = geodesic_distance(points.row(i).transpose(), points.row(j).transpose());
    }
  }
  return d;
}

/// g[X_N] for unit vectors in ℝ^d (rows of `points`) on Sphere(d).
inline Eigen::MatrixXd gram_matrix(const KernelSpec& spec, const Eigen::MatrixXd& points,
                                   unsigned threads = 1) {
  if (spec.space.kind != SpaceKind::Sphere) {
    throw UnsupportedParameter("point sets are modeled on spheres only; use gram_from_distances");
  }
  if (points.cols() != spec.space.dim) throw DomainError("points do not match sphere dimension");
  return gram_from_distances(spec, sphere_distances(points), threads);
}

struct DefinitenessReport {
  bool cholesky_ok = false;
  double min_eigenvalue = 0.0;
};

/// Cholesky attempt plus the smallest eigenvalue from a dense symmetric solver.
inline DefinitenessReport definiteness(const Eigen::MatrixXd& g) {
  DefinitenessReport r;
  if (g.rows() == 0) throw DomainError("empty matrix");
  r.cholesky_ok = Eigen::LLT<Eigen::MatrixXd>(g).info() == Eigen::Success;
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
  r.min_eigenvalue = es.eigenvalues()(0);
  return r;
}

/// Row-major CSV, one matrix row per line.
inline void write_csv(std::ostream& out, const Eigen::MatrixXd& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
}

}  // namespace spk

#endif  // SPK_SPHERICAL_KERNELS_HPP
