#pragma once

// Shared test utilities: independent oracles and small generators. These
// deliberately avoid the library's computation paths.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tutorkit/dtw.hpp"
#include "tutorkit/rng.hpp"

namespace test_helpers {

// Exhaustive warping-path minimization: walks every monotone path from
// (0,0) to (m-1,n-1) with steps right/down/diagonal, accumulating local
// costs, and keeps the minimum. Exponential; for tiny inputs only.
inline double dtw_path_enumeration(std::span<const int> x,
                                   std::span<const int> y,
                                   std::optional<int> window = std::nullopt) {
  const std::size_t m = x.size();
  const std::size_t n = y.size();
  double best = std::numeric_limits<double>::infinity();

  struct Walker {
    std::span<const int> x, y;
    std::size_t m, n;
    std::optional<int> window;
    double* best;

    void walk(std::size_t i, std::size_t j, double acc) const {
      if (window) {
        const long long band =
            static_cast<long long>(i) - static_cast<long long>(j);
        if (band > *window || -band > *window) return;
      }
      acc += std::abs(static_cast<double>(x[i]) - static_cast<double>(y[j]));
      if (i == m - 1 && j == n - 1) {
        *best = std::min(*best, acc);
        return;
      }
      if (i + 1 < m) walk(i + 1, j, acc);
      if (j + 1 < n) walk(i, j + 1, acc);
      if (i + 1 < m && j + 1 < n) walk(i + 1, j + 1, acc);
    }
  };
  Walker{x, y, m, n, window, &best}.walk(0, 0, 0.0);
  return best;
}

inline double binom2(double c) { return c * (c - 1.0) / 2.0; }

// Adjusted Rand Index between two labelings of the same items.
inline double adjusted_rand_index(std::span<const int> a,
                                  std::span<const int> b) {
  const int ka = *std::max_element(a.begin(), a.end()) + 1;
  const int kb = *std::max_element(b.begin(), b.end()) + 1;
  std::vector<std::vector<std::size_t>> table(
      static_cast<std::size_t>(ka), std::vector<std::size_t>(kb, 0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    ++table[static_cast<std::size_t>(a[i])][static_cast<std::size_t>(b[i])];
  }
  double sum_cells = 0.0, sum_rows = 0.0, sum_cols = 0.0;
  std::vector<double> col_sums(static_cast<std::size_t>(kb), 0.0);
  for (const auto& row : table) {
    double row_sum = 0.0;
    for (std::size_t j = 0; j < row.size(); ++j) {
      sum_cells += binom2(static_cast<double>(row[j]));
      row_sum += static_cast<double>(row[j]);
      col_sums[j] += static_cast<double>(row[j]);
    }
    sum_rows += binom2(row_sum);
  }
  for (double c : col_sums) sum_cols += binom2(c);
  const double total = binom2(static_cast<double>(a.size()));
  const double expected = sum_rows * sum_cols / total;
  const double max_index = 0.5 * (sum_rows + sum_cols);
  return (sum_cells - expected) / (max_index - expected);
}

// Best 2-medoid subset by exhaustive search over all C(N,2) pairs.
inline std::pair<double, std::vector<std::size_t>> best_medoid_pair(
    const tutorkit::DistanceMatrix& d) {
  double best_cost = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> best;
  for (std::size_t a = 0; a < d.size(); ++a) {
    for (std::size_t b = a + 1; b < d.size(); ++b) {
      double cost = 0.0;
      for (std::size_t j = 0; j < d.size(); ++j) {
        cost += std::min(d.at(j, a), d.at(j, b));
      }
      if (cost < best_cost) {
        best_cost = cost;
        best = {a, b};
      }
    }
  }
  return {best_cost, best};
}

// Random tutor sequence over an alphabet of the given size.
inline std::vector<std::string> random_tutors(tutorkit::Rng& rng,
                                              std::size_t length,
                                              std::size_t alphabet) {
  std::vector<std::string> out(length);
  for (auto& t : out) {
    t = std::string(1, static_cast<char>('a' + rng.uniform_int(alphabet)));
  }
  return out;
}

// All sequences of the given length over {0, ..., alphabet-1}, encoded as
// digit vectors. Enumeration is plain base-`alphabet` counting.
inline std::vector<std::vector<int>> all_sequences(std::size_t length,
                                                   std::size_t alphabet) {
  std::vector<std::vector<int>> out;
  std::vector<int> current(length, 0);
  for (;;) {
    out.push_back(current);
    std::size_t pos = 0;
    while (pos < length) {
      if (++current[pos] < static_cast<int>(alphabet)) break;
      current[pos] = 0;
      ++pos;
    }
    if (pos == length) break;
  }
  return out;
}

inline tutorkit::TutorshipSequence to_sequence(const std::vector<int>& digits,
                                               const std::string& id = "t") {
  tutorkit::TutorshipSequence seq;
  seq.learner_id = id;
  seq.tutors.reserve(digits.size());
  for (int d : digits) {
    seq.tutors.push_back(std::string(1, static_cast<char>('a' + d)));
  }
  return seq;
}

}  // namespace test_helpers
