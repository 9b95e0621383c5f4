#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "spk/csv.hpp"
#include "spk/verification.hpp"

using namespace spk;

namespace {

// Frozen from the dense eigensolver: Sphere(4), δ = 2, t = π/4, N = 200, seed 7.
constexpr double kSphere4Seed7MinEigenvalue = 0.11511490671638321;

std::vector<std::pair<double, int>> records_of(const ScanReport& r) {
  std::vector<std::pair<double, int>> out;
  for (const auto& x : r.records) out.emplace_back(x.result.value, x.n);
  return out;
}

}  // namespace

TEST(Grid, UniformTGrid) {
  const auto g = uniform_t_grid(64);
  ASSERT_EQ(g.size(), 64u);
  EXPECT_NEAR(g.front(), kPi / 64, 1e-16);
  EXPECT_EQ(g.back(), kPi);
  EXPECT_THROW(uniform_t_grid(0), DomainError);
}

TEST(Grid, DeltaRules) {
  EXPECT_EQ(DeltaRule::alpha_plus_one().deltas_for(1.5), std::vector<double>{2.5});
  EXPECT_EQ(DeltaRule::ceil_alpha_plus_one().deltas_for(1.5), std::vector<double>{3.0});
  EXPECT_EQ(DeltaRule::explicit_list({1, 2}).deltas_for(7), (std::vector<double>{1, 2}));
  EXPECT_EQ(DeltaRule::explicit_list({0.5, 2}).to_string(), "0.5,2");
  EXPECT_EQ(DeltaRule::ceil_alpha_plus_one().to_string(), "ceil(alpha)+1");
}

TEST(Grid, Validation) {
  const ScanGrid ok{{1}, {0}, DeltaRule::alpha_plus_one()};
  EXPECT_NO_THROW(ok.validate());
  ScanGrid bad = ok;
  bad.alpha_set.clear();
  EXPECT_THROW(bad.validate(), DomainError);
  bad = ok;
  bad.t_grid = {1.0, 0.5};
  EXPECT_THROW(bad.validate(), DomainError);
  bad = ok;
  bad.t_grid = {0.0, 0.5};
  EXPECT_THROW(bad.validate(), DomainError);
  bad = ok;
  bad.n_max = 401;
  EXPECT_THROW(bad.validate(), DomainError);
  bad = ok;
  bad.delta_rule = DeltaRule::explicit_list({});
  EXPECT_THROW(bad.validate(), DomainError);
}

TEST(Hypotheses, Classification) {
  EXPECT_EQ(theorem_hypothesis(1, 0, 2), Hypothesis::StrictIntegerCase);
  EXPECT_EQ(theorem_hypothesis(0, 3, 1), Hypothesis::StrictIntegerCase);
  EXPECT_EQ(theorem_hypothesis(2, 0, 2.5), Hypothesis::None);
  EXPECT_EQ(theorem_hypothesis(0, 0, 1), Hypothesis::NonnegativeZeroCase);
  EXPECT_EQ(theorem_hypothesis(0, 0, 0.5), Hypothesis::None);
  EXPECT_EQ(theorem_hypothesis(1.5, 1.5, 3), Hypothesis::StrictHalfCase);
  EXPECT_EQ(theorem_hypothesis(0.5, 1, 2), Hypothesis::StrictHalfCase);
  EXPECT_EQ(theorem_hypothesis(1.5, 2, 3), Hypothesis::StrictHalfCase);
  EXPECT_EQ(theorem_hypothesis(1.5, 1.5, 2.5), Hypothesis::None);
  EXPECT_EQ(theorem_hypothesis(2.5, 0.5, 4), Hypothesis::None);
}

TEST(Scan, IntegerParametersHaveNoNegatives) {
  ScanGrid g{{0, 1, 2, 3}, {0, 1, 2, 3}, DeltaRule::alpha_plus_one(), 50, uniform_t_grid(32)};
  g.skip_both_zero = true;
  const auto s = scan_positivity(g, 0).summary();
  EXPECT_EQ(s.total, 15u * 51 * 32);
  EXPECT_EQ(s.count(Verdict::Negative), 0u);
  EXPECT_EQ(s.count(Verdict::Positive), s.total);
  EXPECT_GT(s.min_margin, 10.0);
}

TEST(Scan, ZeroCaseZerosSitOnThePeriodLattice) {
  const auto rep = scan_positivity({{0}, {0}, DeltaRule::explicit_list({1}), 50, uniform_t_grid(64)}, 0);
  std::size_t zeros = 0;
  for (const auto& r : rep.records) {
    EXPECT_NE(r.verdict, Verdict::Negative);
    EXPECT_EQ(r.hypothesis, Hypothesis::NonnegativeZeroCase);
    if (r.verdict != Verdict::ZeroConsistent) continue;
    ++zeros;
    ASSERT_GT(r.n, 0);
    const double period = 2 * kPi / r.n;
    EXPECT_LT(std::abs(r.t - period * std::round(r.t / period)), 1e-3) << "n=" << r.n << " t=" << r.t;
  }
  EXPECT_GT(zeros, 0u);
}

TEST(Scan, HalfIntegerEqualParameters) {
  const auto s = scan_positivity({{1.5}, {1.5}, DeltaRule::ceil_alpha_plus_one(), 50, uniform_t_grid(64)})
                     .summary();
  EXPECT_EQ(s.count(Verdict::Negative), 0u);
  EXPECT_EQ(s.count(Verdict::PrecisionExhausted), 0u);
}

TEST(Scan, ResultIndependentOfThreadCount) {
  const ScanGrid g{{1, 2.5}, {0, 1}, DeltaRule::explicit_list({2, 3.5}), 20, uniform_t_grid(16)};
  EXPECT_EQ(records_of(scan_positivity(g, 1)), records_of(scan_positivity(g, 4)));
}

TEST(Scan, MergeIsAssociativeAndOrderFree) {
  auto part = [](double a) {
    return scan_positivity({{a}, {1}, DeltaRule::alpha_plus_one(), 8, uniform_t_grid(8)});
  };
  const ScanReport a = part(1), b = part(2), c = part(3);
  ScanReport left = a;
  left.merge(b);
  left.merge(c);
  ScanReport bc = b;
  bc.merge(c);
  ScanReport right = a;
  right.merge(bc);
  ScanReport reversed = c;
  reversed.merge(b);
  reversed.merge(a);
  EXPECT_EQ(records_of(left), records_of(right));
  EXPECT_EQ(records_of(left), records_of(reversed));
  EXPECT_EQ(left.records.size(), 3u * 9 * 8);
}

TEST(Scan, NegativeVerdictsRespectTheBand) {
  const auto rep = scan_positivity({{1}, {0}, DeltaRule::explicit_list({0.01}), 10, uniform_t_grid(64)});
  std::size_t negatives = 0;
  for (const auto& r : rep.records) {
    if (r.verdict != Verdict::Negative) continue;
    ++negatives;
    EXPECT_LT(r.result.value, -10 * r.result.err_bound);
    EXPECT_EQ(r.hypothesis, Hypothesis::None);
  }
  EXPECT_GT(negatives, 0u);
  EXPECT_EQ(rep.summary().negative_within_hypotheses, 0u);
}

TEST(Scan, CsvAndJsonOutput) {
  const auto rep = scan_positivity({{1}, {0, 2}, DeltaRule::alpha_plus_one(), 5, {0.5, kPi}});
  std::stringstream ss;
  rep.write_csv(ss);
  const CsvTable t = read_csv(ss);
  EXPECT_EQ(t.header, (std::vector<std::string>{"alpha", "beta", "delta", "n", "t", "value", "err",
                                                "verdict"}));
  ASSERT_EQ(t.rows.size(), rep.records.size());
  const auto values = t.numeric_column("value");
  for (std::size_t i = 0; i < values.size(); ++i) EXPECT_EQ(values[i], rep.records[i].result.value);
  EXPECT_EQ(t.rows[0][7], "positive");

  const auto j = rep.summary_json();
  EXPECT_EQ(j["records"], rep.records.size());
  EXPECT_EQ(j["counts"]["positive"], rep.records.size());
  EXPECT_EQ(j["counts"]["NEGATIVE"], 0);
  EXPECT_TRUE(j.contains("worst"));
  EXPECT_GT(j["min_margin"].get<double>(), 10.0);
}

TEST(StrictPd, SphereFiveExample) {
  const auto r = strict_pd_test({kPi / 2, 3.0, SpaceSpec::sphere(5)}, 100, 42);
  EXPECT_GT(r.min_eigenvalue, 0.0);
  EXPECT_TRUE(r.passed);
  EXPECT_NEAR(r.threshold, 1e-10 * 100 * std::pow(kPi / 2, 3), 1e-20);
}

TEST(StrictPd, SinglePointGivesKernelAtZero) {
  const KernelSpec spec{1.2, 2.5, SpaceSpec::sphere(3)};
  const auto r = strict_pd_test(spec, 1, 3);
  EXPECT_DOUBLE_EQ(r.min_eigenvalue, std::pow(1.2, 2.5));
  EXPECT_THROW(strict_pd_test(spec, 513, 3), DomainError);
  EXPECT_THROW(strict_pd_test(spec, 0, 3), DomainError);
}

TEST(StrictPd, Deterministic) {
  for (const auto& sp : {SpaceSpec::sphere(4), SpaceSpec::complex_projective(4)}) {
    const KernelSpec spec{kPi / 2, sp.spd_delta_threshold, sp};
    const auto a = strict_pd_test(spec, 80, 19);
    const auto b = strict_pd_test(spec, 80, 19, 4);
    EXPECT_EQ(a.min_eigenvalue, b.min_eigenvalue);
    EXPECT_NE(a.min_eigenvalue, strict_pd_test(spec, 80, 20).min_eigenvalue);
  }
}

TEST(StrictPd, RegressionFixture) {
  const auto r = strict_pd_test({kPi / 4, 2.0, SpaceSpec::sphere(4)}, 200, 7);
  EXPECT_GT(r.min_eigenvalue, 0.0);
  EXPECT_TRUE(r.cholesky_ok);
  EXPECT_EQ(r.resamples, 0);
  EXPECT_NEAR(r.min_eigenvalue, kSphere4Seed7MinEigenvalue, 1e-9 * kSphere4Seed7MinEigenvalue);
}

TEST(StrictPd, ProjectiveSpacesAtThreshold) {
  for (const auto& sp : {SpaceSpec::real_projective(4), SpaceSpec::complex_projective(4),
                         SpaceSpec::quaternionic_projective(8), SpaceSpec::cayley_plane()}) {
    const auto r = strict_pd_test({kPi / 2, sp.spd_delta_threshold, sp}, 60, 1);
    EXPECT_TRUE(r.passed) << sp.name() << " min eigenvalue " << r.min_eigenvalue;
  }
}

TEST(Monotonicity, Example) {
  const auto r = monotonicity_check(1.0, 2, 4.0, 30, uniform_t_grid(64));
  EXPECT_EQ(r.checks, 3u * 31 * 64);
  EXPECT_EQ(r.violations, 0u);
  EXPECT_GT(r.min_margin, 10.0);
  EXPECT_LE(r.max_identity_residual, 1e-9);
}

TEST(Monotonicity, BothSidesVanishAtOrigin) {
  const double t = 1e-4;
  for (double beta : {0.0, 1.0}) {
    EXPECT_LT(f_integral({1.0, beta, 4.0, 3, 0, t}).value, 1e-20);
    EXPECT_LT(f_integral({1.0, beta + 1, 4.0, 3, 0, t}).value, 1e-20);
  }
}

TEST(Monotonicity, Preconditions) {
  EXPECT_THROW(monotonicity_check(0.0, 1, 4.0, 5, {1.0}), DomainError);
  EXPECT_THROW(monotonicity_check(1.5, 1, 3.5, 5, {1.0}), DomainError);
  EXPECT_THROW(monotonicity_check(1.0, -1, 4.0, 5, {1.0}), DomainError);
}

TEST(Decay, Examples) {
  EXPECT_LE(decay_fit(1, 1, 2, 20, 200).fit.slope, -3.0);
  EXPECT_LE(decay_fit(0, 1, 1, 20, 200).fit.slope, -2.0);
  EXPECT_THROW(decay_fit(1, 1, 2, 20, 401), DomainError);
  EXPECT_THROW(decay_fit(1, 1, 2, 30, 20), DomainError);
}

TEST(Decay, LogLogFit) {
  std::vector<double> x, y;
  for (int n = 1; n <= 50; ++n) {
    x.push_back(n);
    y.push_back(3.0 * std::pow(n, -2.5));
  }
  const auto f = fit_loglog(x, y);
  EXPECT_NEAR(f.slope, -2.5, 1e-12);
  EXPECT_NEAR(std::exp(f.intercept), 3.0, 1e-12);
  EXPECT_THROW(fit_loglog(x, std::vector<double>(50, 0.0)), DegenerateInput);
  EXPECT_THROW(fit_loglog({1.0}, {1.0}), DomainError);
}

TEST(Polya, Examples) {
  const auto cubic = polya_check(sample_for_polya([](double x) { return std::pow(kPi - x, 3); }, 1000), 3);
  EXPECT_EQ(cubic.verdict, PolyaVerdict::StrictlyPositiveDefinite);
  EXPECT_EQ(cubic.lambda, 1);

  const auto square = polya_check(sample_for_polya([](double x) { return std::pow(kPi - x, 2); }, 1000), 3);
  EXPECT_EQ(square.verdict, PolyaVerdict::Fails);
  EXPECT_EQ(square.failed_condition, "(ii)");
  EXPECT_EQ(square.failed_order, 2);
  EXPECT_EQ(square.describe(), "fails condition (ii) at j=2");

  const auto zero = polya_check(sample_for_polya([](double) { return 0.0; }, 1000), 3);
  EXPECT_EQ(zero.verdict, PolyaVerdict::PositiveDefinite);
}

TEST(Polya, ConvexityFailure) {
  const auto r = polya_check(sample_for_polya([](double x) { return -std::pow(kPi - x, 3); }, 1000), 3);
  EXPECT_EQ(r.verdict, PolyaVerdict::Fails);
  EXPECT_EQ(r.failed_condition, "(i)");
}

TEST(Polya, HigherDimension) {
  // d = 5: λ = 2, so g', g'', g''' must vanish at π and g'' must be convex.
  const auto quartic = polya_check(sample_for_polya([](double x) { return std::pow(kPi - x, 4); }, 2000), 5);
  EXPECT_EQ(quartic.lambda, 2);
  EXPECT_EQ(quartic.verdict, PolyaVerdict::StrictlyPositiveDefinite);
  const auto cubic = polya_check(sample_for_polya([](double x) { return std::pow(kPi - x, 3); }, 2000), 5);
  EXPECT_EQ(cubic.verdict, PolyaVerdict::Fails);
  EXPECT_EQ(cubic.failed_order, 3);
}

TEST(Polya, SuppliedDerivativesAreUsed) {
  const int k = 500;
  PolyaInput in = sample_for_polya([](double x) { return std::pow(kPi - x, 3); }, k);
  in.derivatives.assign(2, std::vector<double>(k + 1));
  for (int i = 0; i <= k; ++i) {
    const double x = i * kPi / k;
    in.derivatives[0][i] = -3 * std::pow(kPi - x, 2);
    in.derivatives[1][i] = 6 * (kPi - x);
  }
  EXPECT_EQ(polya_check(in, 3).verdict, PolyaVerdict::StrictlyPositiveDefinite);
  in.derivatives[1].back() = 1.0;
  EXPECT_EQ(polya_check(in, 3).failed_order, 2);
  in.derivatives[1].pop_back();
  EXPECT_THROW(polya_check(in, 3), DomainError);
}

TEST(Polya, ResolutionAndDomain) {
  const auto coarse = sample_for_polya([](double x) { return std::pow(kPi - x, 3); }, 10);
  EXPECT_THROW(polya_check(coarse, 3), ResolutionError);
  EXPECT_THROW(polya_check(coarse, 2), DomainError);
}

TEST(Polya, FiniteDifferenceWeights) {
  const auto w = detail::fd_weights(0.0, {-1.0, 0.0, 1.0}, 2);
  ASSERT_EQ(w.size(), 3u);
  EXPECT_NEAR(w[0], 1.0, 1e-15);
  EXPECT_NEAR(w[1], -2.0, 1e-15);
  EXPECT_NEAR(w[2], 1.0, 1e-15);
  const auto d = detail::grid_derivative({0.0, 1.0, 8.0, 27.0, 64.0, 125.0, 216.0, 343.0}, 1.0, 1);
  for (std::size_t i = 0; i < d.size(); ++i) EXPECT_NEAR(d[i], 3.0 * i * i, 1e-9);
}

TEST(Polya, AgreesWithLegendreCoefficients) {
  // Direct route on S²: Legendre coefficients of (π-θ)³, by Simpson.
  const int n_max = 50, intervals = 40000;
  std::vector<double> c(n_max + 1, 0.0);
  const double h = kPi / intervals;
  std::vector<double> p(n_max + 1);
  for (int i = 0; i <= intervals; ++i) {
    const double th = i * h, x = std::cos(th);
    const double w = (i == 0 || i == intervals ? 1.0 : (i % 2 ? 4.0 : 2.0)) * h / 3.0;
    p[0] = 1.0;
    p[1] = x;
    for (int k = 1; k < n_max; ++k) p[k + 1] = ((2 * k + 1) * x * p[k] - k * p[k - 1]) / (k + 1);
    for (int k = 0; k <= n_max; ++k) c[k] += w * std::pow(kPi - th, 3) * p[k] * std::sin(th);
  }
  bool even_positive = false, odd_positive = false;
  for (int k = 0; k <= n_max; ++k) {
    c[k] *= (2 * k + 1) / 2.0;
    EXPECT_GE(c[k], -1e-10) << "k=" << k;
    if (c[k] > 1e-10) (k % 2 ? odd_positive : even_positive) = true;
  }
  EXPECT_TRUE(even_positive);
  EXPECT_TRUE(odd_positive);
  const auto cv = schoenberg_coeffs({kPi, 3.0, SpaceSpec::sphere(3)}, n_max);
  for (int k = 0; k <= n_max; ++k) EXPECT_NEAR(cv.coeffs[k], c[k], 1e-8);
}

TEST(Frontier, IntegerControlAndViolatedHypothesis) {
  const auto rep = conjecture_frontier(1.0, 1.0, {0.01, 2.0}, 10, uniform_t_grid(64));
  EXPECT_STREQ(FrontierReport::label, "EXPLORATORY");
  ASSERT_EQ(rep.rows.size(), 2u);
  EXPECT_GT(rep.rows[0].negatives, 0u);
  EXPECT_LT(rep.rows[0].min_value, 0.0);
  EXPECT_GE(rep.rows[0].worst_n, 1);
  EXPECT_EQ(rep.rows[1].negatives, 0u);
  EXPECT_GT(rep.rows[1].min_value, 0.0);
}

TEST(Frontier, HalfIntegerRecorded) {
  const auto rep = conjecture_frontier(0.5, 0.5, {1.5}, 50, uniform_t_grid(64));
  ASSERT_EQ(rep.rows.size(), 1u);
  EXPECT_EQ(rep.rows[0].delta, 1.5);
  EXPECT_EQ(rep.rows[0].exhausted, 0u);
}

TEST(Identities, SmallGrid) {
  const auto stats =
      identity_suite({0, 1, 2}, {0, 2}, DeltaRule::alpha_plus_one(), 20, uniform_t_grid(16), 10.0, 0);
  ASSERT_FALSE(stats.empty());
  for (const auto& s : stats) {
    EXPECT_GT(s.checks, 0u) << s.name;
    EXPECT_EQ(s.failures, 0u) << s.name << " worst ratio " << s.worst_ratio;
  }
}
