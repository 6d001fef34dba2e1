#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tutorkit/dtw.hpp"
#include "tutorkit/encoding.hpp"
#include "tutorkit/kmedoids.hpp"
#include "tutorkit/model.hpp"
#include "tutorkit/stats.hpp"

namespace tutorkit {

struct BucketSpec {
  std::vector<Interval> intervals;
};

struct BucketedLearners {
  // Record indices per interval, parallel to the spec's interval list.
  std::vector<std::vector<std::size_t>> members;
  // Records whose session count falls in no interval.
  std::vector<std::size_t> out_of_range;
};

// Assigns each learner to the (single) interval containing its session
// count. Throws ValidationError when intervals overlap or start below 2.
BucketedLearners bucket_learners(const std::vector<LearnerRecord>& records,
                                 const BucketSpec& spec);

// Per-learner measures the analyses run on, indexed like `records`.
struct LearnerDerived {
  std::vector<EncodedSequence> encodings;
  std::vector<double> distributedness;
  // slopes[skill][i]: OLS slope for record i, or unset when the learner
  // has fewer scored sessions than min_sessions_for_scores.
  std::array<std::vector<std::optional<double>>, 4> slopes;
};

LearnerDerived derive_learner_measures(
    const std::vector<LearnerRecord>& records, const AnalysisConfig& config,
    int threads = 1);

// --------------------------------------------------------------------
// Clustering layer
// --------------------------------------------------------------------

struct SweepPoint {
  int k = 0;
  double mean_silhouette = 0.0;
  double total_cost = 0.0;
};

struct ClusterRun {
  Interval bucket;
  std::vector<std::size_t> members;  // record indices
  int k = 0;
  std::vector<int> cluster_ids;  // parallel to members, 0..k-1
  std::vector<std::string> medoid_learner_ids;  // per cluster; "" when none
  std::optional<double> mean_silhouette;        // unset when k < 2
  std::vector<SweepPoint> sweep;                // full sweep when one ran
  std::optional<int> selected_k;                // sweep argmax, when one ran
  std::string note;
};

struct ClusterSummaryRow {
  Interval bucket;
  int cluster_id = 0;
  Archetype archetype = Archetype::mixed;  // majority label of members
  std::string medoid_learner_id;           // "" for k = 1 buckets
  std::size_t count = 0;
  double pct_of_bucket = 0.0;  // sums to 100 within a bucket
  double pct_of_all = 0.0;     // share of all clustered learners
  double mean_sessions = 0.0;
  double sd_sessions = 0.0;
  double mean_tutors = 0.0;
  double sd_tutors = 0.0;
};

// Aggregated encoded-value traces per cluster, one row per
// (session_index, encoded value) cell: the data behind cluster
// line-density plots.
struct LineDensityRow {
  Interval bucket;
  int cluster_id = 0;
  int session_index = 0;  // 1-based
  int value = 0;
  std::size_t count = 0;
};

// --------------------------------------------------------------------
// Statistics layer
// --------------------------------------------------------------------

struct GroupStats {
  std::string group;  // "<cluster bucket>#<cluster id>"
  std::size_t n = 0;
  double mean_slope = 0.0;
  std::optional<double> ci_lo;  // 95% t interval, unset when n < 2
  std::optional<double> ci_hi;
};

struct ComparisonRow {
  Interval bucket;
  Skill skill = Skill::fluency;
  std::vector<GroupStats> groups;
  std::optional<stats::AnovaResult> anova;  // pairwise filled via Tukey
  std::string note;  // why the ANOVA was skipped, when it was
};

struct CorrelationRow {
  Interval bucket;
  Skill skill = Skill::fluency;
  int n = 0;
  std::optional<double> rho;
  std::optional<double> p_value;
  std::string note;
};

// Identifies a learner's cluster across cluster buckets; unset when the
// learner fell outside every cluster bucket.
struct ClusterKey {
  int bucket_index = -1;
  int cluster_id = -1;
  bool valid() const { return bucket_index >= 0; }
  friend bool operator==(const ClusterKey&, const ClusterKey&) = default;
  friend auto operator<=>(const ClusterKey&, const ClusterKey&) = default;
};

// Cluster-vs-improvement comparison for one stat bucket and skill: group
// slopes by cluster, report means with 95% CIs, run ANOVA + Tukey when
// every group has >= 2 slopes and there are >= 2 groups.
ComparisonRow run_cluster_comparison(
    Interval bucket, std::span<const std::size_t> members, Skill skill,
    std::span<const ClusterKey> cluster_keys,
    std::span<const std::optional<double>> slopes,
    const std::vector<std::string>& group_names, std::uint64_t seed);

// Spearman correlation between distributedness and the skill's slope over
// the bucket's learners with a defined slope.
CorrelationRow run_correlation_analysis(
    Interval bucket, std::span<const std::size_t> members, Skill skill,
    std::span<const double> distributedness,
    std::span<const std::optional<double>> slopes);

// --------------------------------------------------------------------
// Whole-run report
// --------------------------------------------------------------------

struct AnalysisReport {
  std::vector<ClusterSummaryRow> cluster_summary;
  std::vector<ClusterRun> cluster_runs;
  std::vector<ComparisonRow> improvement_comparison;
  std::vector<CorrelationRow> correlation_table;
  std::vector<LineDensityRow> line_density;

  // provenance
  std::string config_hash;
  std::uint64_t seed = 0;
  std::string tool_version;
  double entropy_log_base = 2.0;
  std::size_t n_learners = 0;
  std::size_t n_flagged = 0;
  std::size_t n_clustered = 0;
};

AnalysisReport run_analysis(const std::vector<LearnerRecord>& records,
                            const AnalysisConfig& config, int threads = 1);

// Canonical JSON, byte-identical for identical inputs + config + seed.
std::string report_json_string(const AnalysisReport& report);

// Writes report.json plus the CSV tables (cluster_summary.csv,
// improvement_comparison.csv, tukey_pairwise.csv, correlation_table.csv)
// and the plot-data file line_density.csv into out_dir.
void emit_report(const AnalysisReport& report, const std::string& out_dir);

// Re-emits the CSV tables from a previously written report.json.
void emit_tables_from_json(const std::string& report_json_text,
                           const std::string& out_dir);

// Per-learner metrics table (the `metrics` subcommand payload).
struct LearnerMetricsRow {
  std::string learner_id;
  int n_sessions = 0;
  int n_tutors = 0;
  double session_tutor_ratio = 0.0;
  double distributedness = 0.0;
};

std::vector<LearnerMetricsRow> per_learner_metrics(
    const std::vector<LearnerRecord>& records, double entropy_log_base = 2.0,
    int threads = 1);

}  // namespace tutorkit
