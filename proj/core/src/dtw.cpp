#include "tutorkit/dtw.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>

#include "tutorkit/parallel.hpp"

namespace tutorkit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

inline double local_cost(int a, int b) {
  return std::abs(static_cast<double>(a) - static_cast<double>(b));
}

void check_inputs(std::span<const int> x, std::span<const int> y,
                  const DtwOptions& options) {
  if (x.empty() || y.empty()) {
    throw std::invalid_argument("dtw_distance: empty sequence");
  }
  if (options.window) {
    if (*options.window < 1) {
      throw std::invalid_argument("dtw_distance: window must be >= 1");
    }
    const auto diff = static_cast<long long>(x.size()) -
                      static_cast<long long>(y.size());
    if (std::llabs(diff) > *options.window) {
      throw ValidationError(
          "dtw_distance: window " + std::to_string(*options.window) +
          " too small to connect corners of a " + std::to_string(x.size()) +
          " x " + std::to_string(y.size()) + " alignment");
    }
  }
}

// Two-row DP over cumulative cost only.
double dtw_plain(std::span<const int> x, std::span<const int> y,
                 const std::optional<int>& window) {
  const std::size_t m = x.size();
  const std::size_t n = y.size();
  std::vector<double> prev(n + 1, kInf);
  std::vector<double> curr(n + 1, kInf);
  prev[0] = 0.0;
  for (std::size_t i = 1; i <= m; ++i) {
    curr.assign(n + 1, kInf);
    std::size_t j_lo = 1;
    std::size_t j_hi = n;
    if (window) {
      const long long w = *window;
      const long long lo = static_cast<long long>(i) - w;
      const long long hi = static_cast<long long>(i) + w;
      if (lo > 1) j_lo = static_cast<std::size_t>(lo);
      if (hi < static_cast<long long>(n)) j_hi = static_cast<std::size_t>(hi);
    }
    for (std::size_t j = j_lo; j <= j_hi; ++j) {
      const double best =
          std::min(prev[j - 1], std::min(prev[j], curr[j - 1]));
      if (best == kInf) continue;
      curr[j] = local_cost(x[i - 1], y[j - 1]) + best;
    }
    std::swap(prev, curr);
  }
  return prev[n];
}

// DP over (cost, path cells), lexicographic: among minimum-cost paths the
// shortest one defines the normalization length.
double dtw_normalized(std::span<const int> x, std::span<const int> y,
                      const std::optional<int>& window) {
  struct Cell {
    double cost = kInf;
    std::size_t steps = 0;
  };
  const std::size_t m = x.size();
  const std::size_t n = y.size();
  std::vector<Cell> prev(n + 1), curr(n + 1);
  prev[0] = {0.0, 0};
  auto better = [](const Cell& a, const Cell& b) {
    return a.cost < b.cost || (a.cost == b.cost && a.steps < b.steps);
  };
  for (std::size_t i = 1; i <= m; ++i) {
    for (auto& c : curr) c = Cell{};
    std::size_t j_lo = 1;
    std::size_t j_hi = n;
    if (window) {
      const long long w = *window;
      const long long lo = static_cast<long long>(i) - w;
      const long long hi = static_cast<long long>(i) + w;
      if (lo > 1) j_lo = static_cast<std::size_t>(lo);
      if (hi < static_cast<long long>(n)) j_hi = static_cast<std::size_t>(hi);
    }
    for (std::size_t j = j_lo; j <= j_hi; ++j) {
      Cell best = prev[j - 1];
      if (better(prev[j], best)) best = prev[j];
      if (better(curr[j - 1], best)) best = curr[j - 1];
      if (best.cost == kInf) continue;
      curr[j] = {local_cost(x[i - 1], y[j - 1]) + best.cost, best.steps + 1};
    }
    std::swap(prev, curr);
  }
  return prev[n].cost / static_cast<double>(prev[n].steps);
}

}  // namespace

double dtw_distance(std::span<const int> x, std::span<const int> y,
                    const DtwOptions& options) {
  check_inputs(x, y, options);
  return options.length_normalize ? dtw_normalized(x, y, options.window)
                                  : dtw_plain(x, y, options.window);
}

DistanceMatrix::DistanceMatrix(std::vector<std::string> ids)
    : ids_(std::move(ids)), values_(ids_.size() * ids_.size(), 0.0) {}

DistanceMatrix pairwise_distance_matrix(
    const std::vector<EncodedSequence>& encs, const DtwOptions& options,
    int threads) {
  if (encs.size() < 2) {
    throw std::invalid_argument(
        "pairwise_distance_matrix: need at least two sequences");
  }
  std::vector<std::string> ids;
  ids.reserve(encs.size());
  for (const EncodedSequence& e : encs) ids.push_back(e.learner_id);
  DistanceMatrix mat(std::move(ids));

  const std::size_t n = encs.size();
  parallel_for(n, threads, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      mat.set(i, j, dtw_distance(encs[i].values, encs[j].values, options));
    }
  });
  return mat;
}

void stream_distance_rows(
    const std::vector<EncodedSequence>& encs, const DtwOptions& options,
    int threads,
    const std::function<void(std::size_t, std::span<const double>)>& sink) {
  const std::size_t n = encs.size();
  if (n < 2) {
    throw std::invalid_argument(
        "stream_distance_rows: need at least two sequences");
  }
  // Block of rows at a time: rows inside a block computed in parallel,
  // then emitted in order.
  const std::size_t block = 256;
  std::vector<std::vector<double>> rows(std::min(block, n));
  for (std::size_t base = 0; base < n; base += block) {
    const std::size_t count = std::min(block, n - base);
    parallel_for(count, threads, [&](std::size_t r) {
      const std::size_t i = base + r;
      auto& row = rows[r];
      row.assign(n, 0.0);
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        row[j] = dtw_distance(encs[i].values, encs[j].values, options);
      }
    });
    for (std::size_t r = 0; r < count; ++r) sink(base + r, rows[r]);
  }
}

}  // namespace tutorkit
