#pragma once

#include <cstdint>
#include <vector>

#include "tutorkit/dtw.hpp"
#include "tutorkit/model.hpp"

namespace tutorkit {

struct ClusterAssignment {
  int k = 0;
  // Item indices of the medoids, ascending.
  std::vector<std::size_t> medoid_indices;
  // labels[i] = item index of item i's medoid; medoids label themselves.
  std::vector<std::size_t> labels;
  // Sum over items of the distance to their medoid; equals the recomputed
  // sum from the matrix.
  double total_cost = 0.0;
  // total_cost after BUILD and after each accepted swap; strictly
  // decreasing past the first entry.
  std::vector<double> cost_trace;

  // Position of item i's medoid within medoid_indices (the cluster id).
  std::size_t cluster_of(std::size_t item) const;
};

// PAM: greedy cost-minimizing BUILD seeding, then best-improving swaps
// until none improves or max_iter is hit. All ties (seeding, swaps,
// nearest-medoid assignment) break toward the lower item index, so the
// result is deterministic; the seed is carried for interface stability
// and provenance but this variant draws nothing from it.
ClusterAssignment k_medoids(const DistanceMatrix& d, int k,
                            std::uint64_t seed, int max_iter = 100);

struct SilhouetteReport {
  std::vector<double> per_item;  // each in [-1, 1]
  double mean = 0.0;
};

// s(i) = (b(i) - a(i)) / max(a(i), b(i)) with a(i) the mean distance to
// the own cluster (excluding self) and b(i) the smallest mean distance to
// another cluster. Singletons score 0; 0/0 := 0. Requires k >= 2.
SilhouetteReport silhouette(const DistanceMatrix& d,
                            const ClusterAssignment& assignment);

struct KSweepEntry {
  int k = 0;
  double mean_silhouette = 0.0;
  ClusterAssignment assignment;
};

// Runs k_medoids + silhouette for every feasible k in k_range clipped to
// [2, N] (silhouette is undefined at k = 1, so 1 is skipped). Throws when
// no k is feasible. The caller picks k, typically by max mean silhouette.
std::vector<KSweepEntry> sweep_k(const DistanceMatrix& d, Interval k_range,
                                 std::uint64_t seed, int threads = 1);

// Lowest k maximizing mean silhouette.
int select_k(const std::vector<KSweepEntry>& sweep);

}  // namespace tutorkit
