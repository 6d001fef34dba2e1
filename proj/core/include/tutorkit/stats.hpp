#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tutorkit/model.hpp"

namespace tutorkit::stats {

// ---------------------------------------------------------------------
// Distribution functions. Self-contained so results are reproducible and
// auditable; no external math library behind them.
// ---------------------------------------------------------------------

// I_x(a, b), continued-fraction evaluation, relative error <= 1e-10.
double regularized_incomplete_beta(double a, double b, double x);

double student_t_cdf(double t, double df);

// Inverse of student_t_cdf in t for fixed df (bisection; deterministic).
double student_t_quantile(double p, double df);

double f_cdf(double f, double df1, double df2);

// ---------------------------------------------------------------------
// Learning-improvement slope
// ---------------------------------------------------------------------

struct SlopeResult {
  Skill skill = Skill::fluency;
  double slope = 0.0;  // score units per session
  int n_points = 0;
};

// Least-squares slope of score on session_index. Throws
// std::invalid_argument with fewer than two points or zero x-variance.
SlopeResult ols_slope(const ScoreSeries& series);

// ---------------------------------------------------------------------
// Spearman rank correlation
// ---------------------------------------------------------------------

struct CorrelationResult {
  double rho = 0.0;
  // Two-sided p. Unset when n < 4 (the t approximation is meaningless).
  std::optional<double> p_value;
  int n = 0;
};

// Average ranks on ties, Pearson correlation of the ranks. p-value from
// t = rho * sqrt((n-2) / (1-rho^2)) against Student t with n-2 df; exact
// enumeration over all n! permutations instead when exact_permutation is
// set (n <= 10 only). Throws std::domain_error when either side has zero
// rank variance.
CorrelationResult spearman(std::span<const double> x,
                           std::span<const double> y,
                           bool exact_permutation = false);

// ---------------------------------------------------------------------
// One-way ANOVA + Tukey HSD
// ---------------------------------------------------------------------

struct PairwiseComparison {
  std::size_t group_i = 0;
  std::size_t group_j = 0;
  double mean_diff = 0.0;  // mean_i - mean_j
  double q_stat = 0.0;
  double p_adj = 1.0;
  double p_adj_se = 0.0;  // Monte Carlo standard error of p_adj
};

struct AnovaResult {
  double f_stat = 0.0;
  int df_between = 0;
  int df_within = 0;
  double p_value = 1.0;
  double ms_within = 0.0;
  std::vector<double> group_means;
  std::vector<std::size_t> group_sizes;
  std::vector<PairwiseComparison> pairwise;  // filled by tukey_hsd
};

// Requires >= 2 groups with >= 2 values each; throws std::domain_error
// when the within-group variance is zero.
AnovaResult one_way_anova(const std::vector<std::vector<double>>& groups);

// Tukey-Kramer pairwise comparisons: q = |m_i - m_j| /
// sqrt((MSW/2)(1/n_i + 1/n_j)). Adjusted p via seeded Monte Carlo
// sampling of the studentized range (draws of max-min over k standard
// normals divided by sqrt(chi2_df / df)); bit-exact reproducible for a
// fixed seed, standard error reported per pair.
std::vector<PairwiseComparison> tukey_hsd(
    const std::vector<std::vector<double>>& groups, const AnovaResult& anova,
    std::uint64_t seed, std::size_t n_draws = 200000);

// Half-width of the two-sided t confidence interval for a mean.
double t_confidence_halfwidth(double sd, std::size_t n,
                              double confidence = 0.95);

}  // namespace tutorkit::stats
