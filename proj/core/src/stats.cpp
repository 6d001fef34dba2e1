#include "tutorkit/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "tutorkit/rng.hpp"

namespace tutorkit::stats {

namespace {

// Continued fraction for the incomplete beta (Lentz's method).
double betacf(double a, double b, double x) {
  constexpr int kMaxIter = 500;
  constexpr double kEps = 1e-15;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return h;
}

// Average ranks, 1-based; ties get the mean of their positions.
std::vector<double> average_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b];
  });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx <= 0.0 || syy <= 0.0) {
    throw std::domain_error("spearman: zero rank variance");
  }
  double r = sxy / std::sqrt(sxx * syy);
  return std::clamp(r, -1.0, 1.0);
}

double two_sided_t_pvalue(double t, double df) {
  const double tail = 1.0 - student_t_cdf(std::abs(t), df);
  return std::clamp(2.0 * tail, 0.0, 1.0);
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::invalid_argument("incomplete beta: a, b must be positive");
  }
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) -
                          std::lgamma(b) + a * std::log(x) +
                          b * std::log(1.0 - x);
  const double front = std::exp(ln_front);
  // Continued fraction converges fast for x < (a+1)/(a+b+2); use the
  // symmetry I_x(a,b) = 1 - I_{1-x}(b,a) otherwise.
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * betacf(a, b, x) / a;
  }
  return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

double student_t_cdf(double t, double df) {
  if (!(df > 0.0)) {
    throw std::invalid_argument("student_t_cdf: df must be positive");
  }
  if (t == 0.0) return 0.5;
  const double x = df / (df + t * t);
  const double tail = 0.5 * regularized_incomplete_beta(df / 2.0, 0.5, x);
  return t > 0.0 ? 1.0 - tail : tail;
}

double student_t_quantile(double p, double df) {
  if (!(p > 0.0) || !(p < 1.0)) {
    throw std::invalid_argument("student_t_quantile: p must be in (0,1)");
  }
  double lo = -1e10, hi = 1e10;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (student_t_cdf(mid, df) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double f_cdf(double f, double df1, double df2) {
  if (!(df1 > 0.0) || !(df2 > 0.0)) {
    throw std::invalid_argument("f_cdf: dfs must be positive");
  }
  if (f <= 0.0) return 0.0;
  return regularized_incomplete_beta(df1 / 2.0, df2 / 2.0,
                                     df1 * f / (df1 * f + df2));
}

SlopeResult ols_slope(const ScoreSeries& series) {
  const std::size_t n = series.points.size();
  if (n < 2) {
    throw std::invalid_argument("ols_slope: need at least two scored sessions");
  }
  double mx = 0.0, my = 0.0;
  for (const ScorePoint& p : series.points) {
    mx += p.session_index;
    my += p.score;
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0;
  for (const ScorePoint& p : series.points) {
    const double dx = p.session_index - mx;
    sxy += dx * (p.score - my);
    sxx += dx * dx;
  }
  if (sxx <= 0.0) {
    throw std::invalid_argument("ols_slope: zero variance in session indices");
  }
  return {series.skill, sxy / sxx, static_cast<int>(n)};
}

namespace {

// Exact permutation two-sided p: share of permutations of y whose |rho|
// reaches the observed one.
double permutation_pvalue(std::span<const double> rank_x,
                          std::vector<double> rank_y, double observed) {
  const double threshold = std::abs(observed) - 1e-12;
  std::sort(rank_y.begin(), rank_y.end());
  std::size_t hits = 0;
  std::size_t total = 0;
  do {
    ++total;
    if (std::abs(pearson(rank_x, rank_y)) >= threshold) ++hits;
  } while (std::next_permutation(rank_y.begin(), rank_y.end()));
  return static_cast<double>(hits) / static_cast<double>(total);
}

}  // namespace

CorrelationResult spearman(std::span<const double> x,
                           std::span<const double> y,
                           bool exact_permutation) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("spearman: length mismatch");
  }
  const std::size_t n = x.size();
  if (n < 2) {
    throw std::invalid_argument("spearman: need n >= 2");
  }
  const std::vector<double> rx = average_ranks(x);
  const std::vector<double> ry = average_ranks(y);
  const double rho = pearson(rx, ry);

  CorrelationResult result;
  result.rho = rho;
  result.n = static_cast<int>(n);
  if (exact_permutation) {
    if (n > 10) {
      throw std::invalid_argument(
          "spearman: exact permutation p limited to n <= 10");
    }
    result.p_value = permutation_pvalue(rx, ry, rho);
    return result;
  }
  if (n < 4) return result;  // p undefined
  if (std::abs(rho) >= 1.0) {
    result.p_value = 0.0;
    return result;
  }
  const double df = static_cast<double>(n - 2);
  const double t = rho * std::sqrt(df / (1.0 - rho * rho));
  result.p_value = two_sided_t_pvalue(t, df);
  return result;
}

AnovaResult one_way_anova(const std::vector<std::vector<double>>& groups) {
  if (groups.size() < 2) {
    throw std::invalid_argument("one_way_anova: need at least two groups");
  }
  std::size_t total_n = 0;
  double grand_sum = 0.0;
  for (const auto& g : groups) {
    if (g.size() < 2) {
      throw std::invalid_argument(
          "one_way_anova: each group needs at least two values");
    }
    total_n += g.size();
    grand_sum += std::accumulate(g.begin(), g.end(), 0.0);
  }
  const double grand_mean = grand_sum / static_cast<double>(total_n);

  AnovaResult result;
  double ssb = 0.0, ssw = 0.0;
  for (const auto& g : groups) {
    const double m =
        std::accumulate(g.begin(), g.end(), 0.0) / static_cast<double>(g.size());
    ssb += static_cast<double>(g.size()) * (m - grand_mean) * (m - grand_mean);
    for (double v : g) ssw += (v - m) * (v - m);
    result.group_means.push_back(m);
    result.group_sizes.push_back(g.size());
  }
  result.df_between = static_cast<int>(groups.size()) - 1;
  result.df_within = static_cast<int>(total_n - groups.size());
  if (ssw <= 0.0) {
    throw std::domain_error("one_way_anova: zero within-group variance");
  }
  result.ms_within = ssw / result.df_within;
  result.f_stat = (ssb / result.df_between) / result.ms_within;
  result.p_value =
      1.0 - f_cdf(result.f_stat, result.df_between, result.df_within);
  result.p_value = std::clamp(result.p_value, 0.0, 1.0);
  return result;
}

std::vector<PairwiseComparison> tukey_hsd(
    const std::vector<std::vector<double>>& groups, const AnovaResult& anova,
    std::uint64_t seed, std::size_t n_draws) {
  const std::size_t k = groups.size();
  if (k != anova.group_means.size()) {
    throw std::invalid_argument("tukey_hsd: anova was fit on other groups");
  }
  if (n_draws == 0) {
    throw std::invalid_argument("tukey_hsd: need at least one draw");
  }

  // One shared sample of the studentized range distribution for all pairs.
  Rng rng(seed);
  const double df = anova.df_within;
  std::vector<double> samples(n_draws);
  for (double& q : samples) {
    double mn = 0.0, mx = 0.0;
    for (std::size_t g = 0; g < k; ++g) {
      const double z = rng.normal();
      if (g == 0) {
        mn = mx = z;
      } else {
        mn = std::min(mn, z);
        mx = std::max(mx, z);
      }
    }
    const double s = std::sqrt(rng.chi_squared(df) / df);
    q = (mx - mn) / s;
  }

  std::vector<PairwiseComparison> out;
  const double b = static_cast<double>(n_draws);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      PairwiseComparison cmp;
      cmp.group_i = i;
      cmp.group_j = j;
      cmp.mean_diff = anova.group_means[i] - anova.group_means[j];
      const double ni = static_cast<double>(anova.group_sizes[i]);
      const double nj = static_cast<double>(anova.group_sizes[j]);
      const double se =
          std::sqrt(anova.ms_within / 2.0 * (1.0 / ni + 1.0 / nj));
      cmp.q_stat = std::abs(cmp.mean_diff) / se;
      std::size_t hits = 0;
      for (double q : samples) {
        if (q >= cmp.q_stat) ++hits;
      }
      cmp.p_adj = static_cast<double>(hits) / b;
      cmp.p_adj_se = std::sqrt(cmp.p_adj * (1.0 - cmp.p_adj) / b);
      out.push_back(cmp);
    }
  }
  return out;
}

double t_confidence_halfwidth(double sd, std::size_t n, double confidence) {
  if (n < 2) {
    throw std::invalid_argument("t_confidence_halfwidth: need n >= 2");
  }
  const double q =
      student_t_quantile(0.5 + confidence / 2.0, static_cast<double>(n - 1));
  return q * sd / std::sqrt(static_cast<double>(n));
}

}  // namespace tutorkit::stats
