#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tutorkit/encoding.hpp"
#include "tutorkit/model.hpp"

namespace tutorkit {

struct DtwOptions {
  // Sakoe-Chiba band: cells with |i - j| > window are excluded. Unset
  // means unconstrained, the default (sequences are compared within
  // similar-length buckets, so no band is needed).
  std::optional<int> window;
  // Divide the cumulative cost by the optimal path length (number of
  // cells; ties in cost resolved toward the shorter path). Off by default.
  bool length_normalize = false;
};

// Minimum cumulative |x_i - y_j| over monotone warping paths from (1,1)
// to (m,n) with steps (1,0), (0,1), (1,1). Handles unequal lengths.
// Throws std::invalid_argument for empty inputs and ValidationError when
// the window is too small to connect the corners (|m - n| > window).
double dtw_distance(std::span<const int> x, std::span<const int> y,
                    const DtwOptions& options = {});

// Symmetric all-pairs distances with zero diagonal, stored dense
// (N * N doubles; fine up to roughly 10^4 items, bucket before calling
// beyond that -- see stream_distance_rows).
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::vector<std::string> ids);

  std::size_t size() const { return ids_.size(); }
  const std::vector<std::string>& ids() const { return ids_; }

  double at(std::size_t i, std::size_t j) const {
    return values_[i * ids_.size() + j];
  }
  void set(std::size_t i, std::size_t j, double v) {
    values_[i * ids_.size() + j] = v;
    values_[j * ids_.size() + i] = v;
  }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<std::string> ids_;
  std::vector<double> values_;
};

// d[i][j] = dtw_distance(encs[i], encs[j]) under the given options.
// Pairs are independent and computed in parallel; output is identical
// for any thread count. Requires at least two sequences.
DistanceMatrix pairwise_distance_matrix(
    const std::vector<EncodedSequence>& encs, const DtwOptions& options = {},
    int threads = 1);

// Streaming variant for outputs too large to hold: computes one row at a
// time (row i against all j) and hands it to the sink in order. Memory is
// O(N) per row instead of O(N^2).
void stream_distance_rows(
    const std::vector<EncodedSequence>& encs, const DtwOptions& options,
    int threads,
    const std::function<void(std::size_t, std::span<const double>)>& sink);

}  // namespace tutorkit
