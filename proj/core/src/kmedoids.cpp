#include "tutorkit/kmedoids.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "tutorkit/parallel.hpp"

namespace tutorkit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct NearestInfo {
  std::vector<std::size_t> nearest;   // position in medoids
  std::vector<double> nearest_d;
  std::vector<double> second_d;
};

// Nearest and second-nearest medoid distances per item. Nearest ties go to
// the medoid with the lower item index (medoids are kept sorted).
NearestInfo compute_nearest(const DistanceMatrix& d,
                            const std::vector<std::size_t>& medoids) {
  const std::size_t n = d.size();
  NearestInfo info;
  info.nearest.assign(n, 0);
  info.nearest_d.assign(n, kInf);
  info.second_d.assign(n, kInf);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t m = 0; m < medoids.size(); ++m) {
      const double dist = d.at(j, medoids[m]);
      if (dist < info.nearest_d[j]) {
        info.second_d[j] = info.nearest_d[j];
        info.nearest_d[j] = dist;
        info.nearest[j] = m;
      } else if (dist < info.second_d[j]) {
        info.second_d[j] = dist;
      }
    }
  }
  return info;
}

double assignment_cost(const DistanceMatrix& d,
                       const std::vector<std::size_t>& medoids) {
  double cost = 0.0;
  for (std::size_t j = 0; j < d.size(); ++j) {
    double best = kInf;
    for (std::size_t m : medoids) best = std::min(best, d.at(j, m));
    cost += best;
  }
  return cost;
}

// Greedy seeding: first the item minimizing total distance to everything,
// then repeatedly the item with the largest cost reduction.
std::vector<std::size_t> build_phase(const DistanceMatrix& d, int k) {
  const std::size_t n = d.size();
  std::vector<std::size_t> medoids;
  std::vector<bool> is_medoid(n, false);

  std::size_t first = 0;
  double best_total = kInf;
  for (std::size_t i = 0; i < n; ++i) {
    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j) total += d.at(i, j);
    if (total < best_total) {
      best_total = total;
      first = i;
    }
  }
  medoids.push_back(first);
  is_medoid[first] = true;

  std::vector<double> nearest_d(n);
  for (std::size_t j = 0; j < n; ++j) nearest_d[j] = d.at(j, first);

  while (static_cast<int>(medoids.size()) < k) {
    std::size_t best_c = n;
    double best_gain = -kInf;
    for (std::size_t c = 0; c < n; ++c) {
      if (is_medoid[c]) continue;
      double gain = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double diff = nearest_d[j] - d.at(j, c);
        if (diff > 0.0) gain += diff;
      }
      if (gain > best_gain) {
        best_gain = gain;
        best_c = c;
      }
    }
    medoids.push_back(best_c);
    is_medoid[best_c] = true;
    for (std::size_t j = 0; j < n; ++j) {
      nearest_d[j] = std::min(nearest_d[j], d.at(j, best_c));
    }
  }
  std::sort(medoids.begin(), medoids.end());
  return medoids;
}

}  // namespace

std::size_t ClusterAssignment::cluster_of(std::size_t item) const {
  const std::size_t medoid = labels[item];
  const auto it =
      std::lower_bound(medoid_indices.begin(), medoid_indices.end(), medoid);
  return static_cast<std::size_t>(it - medoid_indices.begin());
}

ClusterAssignment k_medoids(const DistanceMatrix& d, int k,
                            std::uint64_t /*seed*/, int max_iter) {
  const std::size_t n = d.size();
  if (n == 0) throw std::invalid_argument("k_medoids: empty distance matrix");
  if (k < 1 || static_cast<std::size_t>(k) > n) {
    throw std::invalid_argument("k_medoids: k must be in [1, N], got " +
                                std::to_string(k) + " for N = " +
                                std::to_string(n));
  }

  std::vector<std::size_t> medoids = build_phase(d, k);
  std::vector<bool> is_medoid(n, false);
  for (std::size_t m : medoids) is_medoid[m] = true;

  double cost = assignment_cost(d, medoids);
  ClusterAssignment result;
  result.cost_trace.push_back(cost);

  // Swap phase: evaluate every (medoid out, candidate in) exactly in one
  // O(N) pass per candidate, apply the single best strictly improving
  // swap, repeat. Each accepted swap's cost is recomputed from the matrix
  // so the trace decreases strictly by construction.
  for (int iter = 0; iter < max_iter; ++iter) {
    const NearestInfo info = compute_nearest(d, medoids);

    double best_delta = -1e-12;  // only strictly improving swaps qualify
    std::size_t best_m = n, best_c = n;
    std::vector<double> removal_delta(medoids.size());
    for (std::size_t c = 0; c < n; ++c) {
      if (is_medoid[c]) continue;
      std::fill(removal_delta.begin(), removal_delta.end(), 0.0);
      double shared = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double dc = d.at(j, c);
        const double dn = info.nearest_d[j];
        const double gain = dc < dn ? dc - dn : 0.0;
        shared += gain;
        removal_delta[info.nearest[j]] +=
            std::min(dc, info.second_d[j]) - dn - gain;
      }
      for (std::size_t m = 0; m < medoids.size(); ++m) {
        const double delta = shared + removal_delta[m];
        // Equal deltas keep the first hit: lower candidate index, then
        // lower medoid position, so the run is deterministic.
        if (delta < best_delta) {
          best_delta = delta;
          best_m = m;
          best_c = c;
        }
      }
    }
    if (best_m == n) break;

    const std::size_t old_medoid = medoids[best_m];
    is_medoid[old_medoid] = false;
    is_medoid[best_c] = true;
    medoids[best_m] = best_c;
    std::sort(medoids.begin(), medoids.end());

    const double new_cost = assignment_cost(d, medoids);
    if (new_cost >= cost) {
      // Numerically not an improvement after all; undo and stop.
      is_medoid[best_c] = false;
      is_medoid[old_medoid] = true;
      medoids.erase(std::find(medoids.begin(), medoids.end(), best_c));
      medoids.insert(
          std::lower_bound(medoids.begin(), medoids.end(), old_medoid),
          old_medoid);
      break;
    }
    cost = new_cost;
    result.cost_trace.push_back(cost);
  }

  result.k = k;
  result.medoid_indices = medoids;
  result.labels.assign(n, 0);
  double final_cost = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t best = medoids[0];
    double best_d = d.at(j, medoids[0]);
    for (std::size_t m = 1; m < medoids.size(); ++m) {
      const double dist = d.at(j, medoids[m]);
      if (dist < best_d) {  // ties stay with the lower medoid index
        best_d = dist;
        best = medoids[m];
      }
    }
    result.labels[j] = best;
    final_cost += best_d;
  }
  result.total_cost = final_cost;
  return result;
}

SilhouetteReport silhouette(const DistanceMatrix& d,
                            const ClusterAssignment& assignment) {
  if (assignment.k < 2) {
    throw std::invalid_argument("silhouette: undefined for k < 2");
  }
  const std::size_t n = d.size();
  const std::size_t k = assignment.medoid_indices.size();
  std::vector<std::size_t> cluster(n);
  std::vector<std::size_t> sizes(k, 0);
  for (std::size_t i = 0; i < n; ++i) {
    cluster[i] = assignment.cluster_of(i);
    ++sizes[cluster[i]];
  }

  SilhouetteReport report;
  report.per_item.assign(n, 0.0);
  std::vector<double> sum_to(k);
  for (std::size_t i = 0; i < n; ++i) {
    if (sizes[cluster[i]] <= 1) continue;  // singleton: s = 0
    std::fill(sum_to.begin(), sum_to.end(), 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) sum_to[cluster[j]] += d.at(i, j);
    }
    const double a = sum_to[cluster[i]] /
                     static_cast<double>(sizes[cluster[i]] - 1);
    double b = kInf;
    for (std::size_t c = 0; c < k; ++c) {
      if (c == cluster[i] || sizes[c] == 0) continue;
      b = std::min(b, sum_to[c] / static_cast<double>(sizes[c]));
    }
    const double denom = std::max(a, b);
    report.per_item[i] = denom > 0.0 ? (b - a) / denom : 0.0;
  }
  double sum = 0.0;
  for (double s : report.per_item) sum += s;
  report.mean = n > 0 ? sum / static_cast<double>(n) : 0.0;
  return report;
}

std::vector<KSweepEntry> sweep_k(const DistanceMatrix& d, Interval k_range,
                                 std::uint64_t seed, int threads) {
  const int n = static_cast<int>(d.size());
  const int lo = std::max(2, k_range.lo);  // k = 1 has no silhouette
  const int hi = std::min(n, k_range.hi);
  if (lo > hi) {
    throw std::runtime_error("sweep_k: no feasible k in " + k_range.label() +
                             " for N = " + std::to_string(n));
  }
  std::vector<KSweepEntry> entries(static_cast<std::size_t>(hi - lo + 1));
  parallel_for(entries.size(), threads, [&](std::size_t idx) {
    const int k = lo + static_cast<int>(idx);
    KSweepEntry entry;
    entry.k = k;
    entry.assignment = k_medoids(d, k, seed);
    entry.mean_silhouette = silhouette(d, entry.assignment).mean;
    entries[idx] = std::move(entry);
  });
  return entries;
}

int select_k(const std::vector<KSweepEntry>& sweep) {
  if (sweep.empty()) throw std::invalid_argument("select_k: empty sweep");
  const KSweepEntry* best = &sweep.front();
  for (const KSweepEntry& e : sweep) {
    if (e.mean_silhouette > best->mean_silhouette) best = &e;
  }
  return best->k;
}

}  // namespace tutorkit
