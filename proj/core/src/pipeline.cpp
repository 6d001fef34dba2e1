#include "tutorkit/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "tutorkit/config.hpp"
#include "tutorkit/csv.hpp"
#include "tutorkit/distributedness.hpp"
#include "tutorkit/parallel.hpp"
#include "tutorkit/rng.hpp"
#include "tutorkit/version.hpp"

namespace tutorkit {

using nlohmann::json;

BucketedLearners bucket_learners(const std::vector<LearnerRecord>& records,
                                 const BucketSpec& spec) {
  validate_bucket_intervals(spec.intervals, "bucket");
  BucketedLearners out;
  out.members.resize(spec.intervals.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    bool placed = false;
    for (std::size_t b = 0; b < spec.intervals.size(); ++b) {
      if (spec.intervals[b].contains(records[i].n_sessions)) {
        out.members[b].push_back(i);
        placed = true;
        break;
      }
    }
    if (!placed) out.out_of_range.push_back(i);
  }
  return out;
}

LearnerDerived derive_learner_measures(
    const std::vector<LearnerRecord>& records, const AnalysisConfig& config,
    int threads) {
  LearnerDerived derived;
  const std::size_t n = records.size();
  derived.encodings.resize(n);
  derived.distributedness.resize(n);
  for (auto& skill_slopes : derived.slopes) {
    skill_slopes.assign(n, std::nullopt);
  }
  const std::size_t min_scored =
      static_cast<std::size_t>(config.min_sessions_for_scores);
  parallel_for(n, threads, [&](std::size_t i) {
    derived.encodings[i] = encode_sequence(records[i].sequence);
    derived.distributedness[i] =
        distributedness(records[i].sequence, config.entropy_log_base).value;
    for (Skill skill : kAllSkills) {
      const auto& series = records[i].series[static_cast<std::size_t>(skill)];
      if (series.points.size() >= min_scored) {
        derived.slopes[static_cast<std::size_t>(skill)][i] =
            stats::ols_slope(series).slope;
      }
    }
  });
  return derived;
}

namespace {

struct MeanSd {
  double mean = 0.0;
  double sd = 0.0;  // sample SD; 0 when n < 2
};

MeanSd mean_sd(std::span<const double> values) {
  MeanSd out;
  if (values.empty()) return out;
  for (double v : values) out.mean += v;
  out.mean /= static_cast<double>(values.size());
  if (values.size() < 2) return out;
  double ss = 0.0;
  for (double v : values) ss += (v - out.mean) * (v - out.mean);
  out.sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
  return out;
}

Archetype majority_archetype(const std::vector<EncodedSequence>& encodings,
                             std::span<const std::size_t> members) {
  std::array<std::size_t, 3> counts{};
  for (std::size_t idx : members) {
    ++counts[static_cast<std::size_t>(label_archetype(encodings[idx]))];
  }
  std::size_t best = 0;
  for (std::size_t a = 1; a < counts.size(); ++a) {
    if (counts[a] > counts[best]) best = a;
  }
  return static_cast<Archetype>(best);
}

std::string group_name(const AnalysisConfig& config, const ClusterKey& key) {
  return config.cluster_buckets[static_cast<std::size_t>(key.bucket_index)]
             .range.label() +
         "#" + std::to_string(key.cluster_id);
}

// Runs one cluster bucket: k-medoids (with a sweep when no k is pinned)
// or the trivial single cluster for k = 1 / tiny buckets.
ClusterRun run_cluster_bucket(const std::vector<LearnerRecord>& records,
                              const LearnerDerived& derived,
                              const AnalysisConfig& config,
                              const ClusterBucket& bucket,
                              std::vector<std::size_t> members, int threads) {
  ClusterRun run;
  run.bucket = bucket.range;
  run.members = std::move(members);
  if (run.members.empty()) {
    run.note = "empty bucket";
    return run;
  }

  std::optional<int> requested = bucket.k ? bucket.k : config.chosen_k;
  const std::size_t n = run.members.size();
  if (requested && static_cast<std::size_t>(*requested) > n) {
    run.note = "requested k = " + std::to_string(*requested) +
               " clamped to bucket size " + std::to_string(n);
    requested = static_cast<int>(n);
  }
  if ((requested && *requested == 1) || n == 1) {
    run.k = 1;
    run.cluster_ids.assign(n, 0);
    run.medoid_learner_ids.assign(1, "");
    if (run.note.empty() && !requested) {
      run.note = "bucket too small to cluster";
    }
    return run;
  }

  std::vector<EncodedSequence> encs;
  encs.reserve(n);
  for (std::size_t idx : run.members) encs.push_back(derived.encodings[idx]);
  DtwOptions options{config.dtw_window, config.dtw_length_normalize};
  const DistanceMatrix matrix =
      pairwise_distance_matrix(encs, options, threads);

  ClusterAssignment assignment;
  if (requested) {
    run.k = *requested;
    assignment = k_medoids(matrix, run.k, config.rng_seed);
  } else {
    const auto sweep = sweep_k(matrix, config.k_sweep, config.rng_seed, threads);
    run.selected_k = select_k(sweep);
    run.k = *run.selected_k;
    for (const KSweepEntry& entry : sweep) {
      run.sweep.push_back(
          {entry.k, entry.mean_silhouette, entry.assignment.total_cost});
      if (entry.k == run.k) assignment = entry.assignment;
    }
    if (config.k_sweep.lo < 2) {
      run.note = "k = 1 skipped in sweep (silhouette undefined)";
    }
  }
  if (run.k >= 2) {
    run.mean_silhouette = silhouette(matrix, assignment).mean;
  }

  run.cluster_ids.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    run.cluster_ids[i] = static_cast<int>(assignment.cluster_of(i));
  }
  run.medoid_learner_ids.reserve(assignment.medoid_indices.size());
  for (std::size_t medoid : assignment.medoid_indices) {
    run.medoid_learner_ids.push_back(
        records[run.members[medoid]].sequence.learner_id);
  }
  return run;
}

}  // namespace

ComparisonRow run_cluster_comparison(
    Interval bucket, std::span<const std::size_t> members, Skill skill,
    std::span<const ClusterKey> cluster_keys,
    std::span<const std::optional<double>> slopes,
    const std::vector<std::string>& group_names, std::uint64_t seed) {
  ComparisonRow row;
  row.bucket = bucket;
  row.skill = skill;

  std::map<ClusterKey, std::vector<double>> by_cluster;
  for (std::size_t idx : members) {
    if (!cluster_keys[idx].valid() || !slopes[idx]) continue;
    by_cluster[cluster_keys[idx]].push_back(*slopes[idx]);
  }
  if (by_cluster.empty()) {
    row.note = "no slopes available";
    return row;
  }

  std::vector<std::vector<double>> groups;
  bool insufficient = false;
  std::size_t name_idx = 0;
  for (const auto& [key, values] : by_cluster) {
    GroupStats gs;
    gs.group = group_names.empty() ? "cluster " + std::to_string(name_idx)
                                   : group_names[name_idx];
    ++name_idx;
    gs.n = values.size();
    const MeanSd ms = mean_sd(values);
    gs.mean_slope = ms.mean;
    if (values.size() >= 2) {
      const double half =
          stats::t_confidence_halfwidth(ms.sd, values.size(), 0.95);
      gs.ci_lo = ms.mean - half;
      gs.ci_hi = ms.mean + half;
    } else {
      insufficient = true;
    }
    row.groups.push_back(std::move(gs));
    groups.push_back(values);
  }

  if (groups.size() < 2) {
    row.note = "single cluster in bucket; ANOVA skipped";
    return row;
  }
  if (insufficient) {
    row.note = "cluster with < 2 slope values; bucket flagged insufficient";
    return row;
  }
  try {
    stats::AnovaResult anova = stats::one_way_anova(groups);
    anova.pairwise = stats::tukey_hsd(groups, anova, seed);
    row.anova = std::move(anova);
  } catch (const std::domain_error& e) {
    row.note = e.what();
  }
  return row;
}

CorrelationRow run_correlation_analysis(
    Interval bucket, std::span<const std::size_t> members, Skill skill,
    std::span<const double> distributedness,
    std::span<const std::optional<double>> slopes) {
  CorrelationRow row;
  row.bucket = bucket;
  row.skill = skill;

  std::vector<double> x, y;
  for (std::size_t idx : members) {
    if (!slopes[idx]) continue;
    x.push_back(distributedness[idx]);
    y.push_back(*slopes[idx]);
  }
  row.n = static_cast<int>(x.size());
  if (x.size() < 2) {
    row.note = "insufficient data";
    return row;
  }
  try {
    const stats::CorrelationResult corr = stats::spearman(x, y);
    row.rho = corr.rho;
    row.p_value = corr.p_value;
    if (!corr.p_value) row.note = "p undefined (n < 4)";
  } catch (const std::domain_error& e) {
    row.note = e.what();
  }
  return row;
}

AnalysisReport run_analysis(const std::vector<LearnerRecord>& records,
                            const AnalysisConfig& config, int threads) {
  config.validate();
  const LearnerDerived derived =
      derive_learner_measures(records, config, threads);

  AnalysisReport report;
  report.config_hash = config_hash(config);
  report.seed = config.rng_seed;
  report.tool_version = kToolVersion;
  report.entropy_log_base = config.entropy_log_base;
  report.n_learners = records.size();
  for (const LearnerRecord& r : records) {
    if (r.n_sessions < 2) ++report.n_flagged;
  }

  // Clustering layer.
  BucketSpec cluster_spec;
  for (const ClusterBucket& b : config.cluster_buckets) {
    cluster_spec.intervals.push_back(b.range);
  }
  const BucketedLearners cluster_buckets =
      bucket_learners(records, cluster_spec);

  std::vector<ClusterKey> cluster_keys(records.size());
  for (std::size_t b = 0; b < config.cluster_buckets.size(); ++b) {
    ClusterRun run =
        run_cluster_bucket(records, derived, config, config.cluster_buckets[b],
                           cluster_buckets.members[b], threads);
    for (std::size_t i = 0; i < run.members.size(); ++i) {
      cluster_keys[run.members[i]] = {static_cast<int>(b),
                                      run.cluster_ids[i]};
    }
    report.n_clustered += run.members.size();
    report.cluster_runs.push_back(std::move(run));
  }

  // Cluster summaries and line densities.
  for (const ClusterRun& run : report.cluster_runs) {
    if (run.members.empty()) continue;
    const int k = std::max(run.k, 1);
    std::vector<std::vector<std::size_t>> cluster_members(
        static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < run.members.size(); ++i) {
      cluster_members[static_cast<std::size_t>(run.cluster_ids[i])].push_back(
          run.members[i]);
    }
    for (int c = 0; c < k; ++c) {
      const auto& m = cluster_members[static_cast<std::size_t>(c)];
      if (m.empty()) continue;
      ClusterSummaryRow row;
      row.bucket = run.bucket;
      row.cluster_id = c;
      row.archetype = majority_archetype(derived.encodings, m);
      row.medoid_learner_id =
          static_cast<std::size_t>(c) < run.medoid_learner_ids.size()
              ? run.medoid_learner_ids[static_cast<std::size_t>(c)]
              : "";
      row.count = m.size();
      row.pct_of_bucket = 100.0 * static_cast<double>(m.size()) /
                          static_cast<double>(run.members.size());
      std::vector<double> sessions, tutors;
      sessions.reserve(m.size());
      tutors.reserve(m.size());
      for (std::size_t idx : m) {
        sessions.push_back(records[idx].n_sessions);
        tutors.push_back(records[idx].n_tutors);
      }
      const MeanSd s = mean_sd(sessions);
      const MeanSd t = mean_sd(tutors);
      row.mean_sessions = s.mean;
      row.sd_sessions = s.sd;
      row.mean_tutors = t.mean;
      row.sd_tutors = t.sd;
      report.cluster_summary.push_back(std::move(row));

      // Line density: counts of encoded values per session position.
      std::map<std::pair<int, int>, std::size_t> density;
      for (std::size_t idx : m) {
        const auto& values = derived.encodings[idx].values;
        for (std::size_t pos = 0; pos < values.size(); ++pos) {
          ++density[{static_cast<int>(pos) + 1, values[pos]}];
        }
      }
      for (const auto& [cell, count] : density) {
        report.line_density.push_back(
            {run.bucket, c, cell.first, cell.second, count});
      }
    }
  }
  if (report.n_clustered > 0) {
    for (ClusterSummaryRow& row : report.cluster_summary) {
      row.pct_of_all = 100.0 * static_cast<double>(row.count) /
                       static_cast<double>(report.n_clustered);
    }
  }

  // Statistics layer: per stat bucket and skill.
  std::vector<std::string> group_names_all;  // built per bucket below
  const BucketedLearners stat_buckets =
      bucket_learners(records, BucketSpec{config.session_range_buckets});
  for (std::size_t b = 0; b < config.session_range_buckets.size(); ++b) {
    const Interval bucket = config.session_range_buckets[b];
    const auto& members = stat_buckets.members[b];
    if (members.empty()) continue;
    for (Skill skill : kAllSkills) {
      const auto s = static_cast<std::size_t>(skill);
      report.correlation_table.push_back(run_correlation_analysis(
          bucket, members, skill, derived.distributedness, derived.slopes[s]));

      // Group display names in ClusterKey order (std::map iteration).
      std::map<ClusterKey, bool> present;
      for (std::size_t idx : members) {
        if (cluster_keys[idx].valid() && derived.slopes[s][idx]) {
          present[cluster_keys[idx]] = true;
        }
      }
      group_names_all.clear();
      for (const auto& [key, unused] : present) {
        group_names_all.push_back(group_name(config, key));
      }
      const std::uint64_t seed =
          derive_seed(config.rng_seed, 0x7000 + b * 8 + s);
      report.improvement_comparison.push_back(
          run_cluster_comparison(bucket, members, skill, cluster_keys,
                                 derived.slopes[s], group_names_all, seed));
    }
  }

  return report;
}

// --------------------------------------------------------------------
// Serialization
// --------------------------------------------------------------------

namespace {

json interval_json(const Interval& iv) { return iv.label(); }

json optional_json(const std::optional<double>& v) {
  if (!v) return nullptr;
  return *v;
}

json report_to_json(const AnalysisReport& report) {
  json j;

  j["cluster_summary"] = json::array();
  for (const ClusterSummaryRow& row : report.cluster_summary) {
    json item;
    item["bucket"] = interval_json(row.bucket);
    item["cluster"] = row.cluster_id;
    item["archetype"] = to_string(row.archetype);
    item["medoid_learner_id"] =
        row.medoid_learner_id.empty() ? json(nullptr)
                                      : json(row.medoid_learner_id);
    item["count"] = row.count;
    item["pct_of_bucket"] = row.pct_of_bucket;
    item["pct_of_all"] = row.pct_of_all;
    item["mean_sessions"] = row.mean_sessions;
    item["sd_sessions"] = row.sd_sessions;
    item["mean_tutors"] = row.mean_tutors;
    item["sd_tutors"] = row.sd_tutors;
    j["cluster_summary"].push_back(std::move(item));
  }

  j["cluster_runs"] = json::array();
  for (const ClusterRun& run : report.cluster_runs) {
    json item;
    item["bucket"] = interval_json(run.bucket);
    item["n_members"] = run.members.size();
    item["k"] = run.k;
    item["selected_k"] =
        run.selected_k ? json(*run.selected_k) : json(nullptr);
    item["mean_silhouette"] = optional_json(run.mean_silhouette);
    item["note"] = run.note;
    item["sweep"] = json::array();
    for (const SweepPoint& p : run.sweep) {
      item["sweep"].push_back({{"k", p.k},
                               {"mean_silhouette", p.mean_silhouette},
                               {"total_cost", p.total_cost}});
    }
    j["cluster_runs"].push_back(std::move(item));
  }

  j["improvement_comparison"] = json::array();
  for (const ComparisonRow& row : report.improvement_comparison) {
    json item;
    item["bucket"] = interval_json(row.bucket);
    item["skill"] = to_string(row.skill);
    item["note"] = row.note;
    item["groups"] = json::array();
    for (const GroupStats& g : row.groups) {
      item["groups"].push_back({{"group", g.group},
                                {"n", g.n},
                                {"mean_slope", g.mean_slope},
                                {"ci_lo", optional_json(g.ci_lo)},
                                {"ci_hi", optional_json(g.ci_hi)}});
    }
    if (row.anova) {
      item["anova"] = {{"f", row.anova->f_stat},
                       {"df_between", row.anova->df_between},
                       {"df_within", row.anova->df_within},
                       {"p", row.anova->p_value}};
      item["pairwise"] = json::array();
      for (const stats::PairwiseComparison& cmp : row.anova->pairwise) {
        item["pairwise"].push_back({{"group_i", cmp.group_i},
                                    {"group_j", cmp.group_j},
                                    {"mean_diff", cmp.mean_diff},
                                    {"q", cmp.q_stat},
                                    {"p_adj", cmp.p_adj},
                                    {"p_adj_se", cmp.p_adj_se}});
      }
    } else {
      item["anova"] = nullptr;
      item["pairwise"] = json::array();
    }
    j["improvement_comparison"].push_back(std::move(item));
  }

  j["correlation_table"] = json::array();
  for (const CorrelationRow& row : report.correlation_table) {
    j["correlation_table"].push_back({{"bucket", interval_json(row.bucket)},
                                      {"skill", to_string(row.skill)},
                                      {"n", row.n},
                                      {"rho", optional_json(row.rho)},
                                      {"p", optional_json(row.p_value)},
                                      {"note", row.note}});
  }

  j["line_density"] = json::array();
  for (const LineDensityRow& row : report.line_density) {
    j["line_density"].push_back({{"bucket", interval_json(row.bucket)},
                                 {"cluster", row.cluster_id},
                                 {"session_index", row.session_index},
                                 {"value", row.value},
                                 {"count", row.count}});
  }

  j["provenance"] = {{"config_hash", report.config_hash},
                     {"seed", report.seed},
                     {"tool_version", report.tool_version},
                     {"entropy_log_base", report.entropy_log_base},
                     {"n_learners", report.n_learners},
                     {"n_flagged", report.n_flagged},
                     {"n_clustered", report.n_clustered}};
  return j;
}

Interval interval_from_label(const std::string& label) {
  Interval iv;
  if (std::sscanf(label.c_str(), "[%d,%d]", &iv.lo, &iv.hi) != 2) {
    throw ValidationError("bad interval label: " + label);
  }
  return iv;
}

std::optional<double> optional_from_json(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

AnalysisReport report_from_json(const json& j) {
  AnalysisReport report;
  for (const auto& item : j.at("cluster_summary")) {
    ClusterSummaryRow row;
    row.bucket = interval_from_label(item.at("bucket").get<std::string>());
    row.cluster_id = item.at("cluster").get<int>();
    const std::string arch = item.at("archetype").get<std::string>();
    row.archetype = arch == "diverse" ? Archetype::diverse
                    : arch == "fixed" ? Archetype::fixed
                                      : Archetype::mixed;
    if (!item.at("medoid_learner_id").is_null()) {
      row.medoid_learner_id = item.at("medoid_learner_id").get<std::string>();
    }
    row.count = item.at("count").get<std::size_t>();
    row.pct_of_bucket = item.at("pct_of_bucket").get<double>();
    row.pct_of_all = item.at("pct_of_all").get<double>();
    row.mean_sessions = item.at("mean_sessions").get<double>();
    row.sd_sessions = item.at("sd_sessions").get<double>();
    row.mean_tutors = item.at("mean_tutors").get<double>();
    row.sd_tutors = item.at("sd_tutors").get<double>();
    report.cluster_summary.push_back(std::move(row));
  }
  for (const auto& item : j.at("cluster_runs")) {
    ClusterRun run;
    run.bucket = interval_from_label(item.at("bucket").get<std::string>());
    run.k = item.at("k").get<int>();
    if (!item.at("selected_k").is_null()) {
      run.selected_k = item.at("selected_k").get<int>();
    }
    run.mean_silhouette = optional_from_json(item.at("mean_silhouette"));
    run.note = item.at("note").get<std::string>();
    for (const auto& p : item.at("sweep")) {
      run.sweep.push_back({p.at("k").get<int>(),
                           p.at("mean_silhouette").get<double>(),
                           p.at("total_cost").get<double>()});
    }
    report.cluster_runs.push_back(std::move(run));
  }
  for (const auto& item : j.at("improvement_comparison")) {
    ComparisonRow row;
    row.bucket = interval_from_label(item.at("bucket").get<std::string>());
    row.skill = *skill_from_string(item.at("skill").get<std::string>());
    row.note = item.at("note").get<std::string>();
    for (const auto& g : item.at("groups")) {
      GroupStats gs;
      gs.group = g.at("group").get<std::string>();
      gs.n = g.at("n").get<std::size_t>();
      gs.mean_slope = g.at("mean_slope").get<double>();
      gs.ci_lo = optional_from_json(g.at("ci_lo"));
      gs.ci_hi = optional_from_json(g.at("ci_hi"));
      row.groups.push_back(std::move(gs));
    }
    if (!item.at("anova").is_null()) {
      stats::AnovaResult anova;
      anova.f_stat = item.at("anova").at("f").get<double>();
      anova.df_between = item.at("anova").at("df_between").get<int>();
      anova.df_within = item.at("anova").at("df_within").get<int>();
      anova.p_value = item.at("anova").at("p").get<double>();
      for (const auto& cmp : item.at("pairwise")) {
        stats::PairwiseComparison pc;
        pc.group_i = cmp.at("group_i").get<std::size_t>();
        pc.group_j = cmp.at("group_j").get<std::size_t>();
        pc.mean_diff = cmp.at("mean_diff").get<double>();
        pc.q_stat = cmp.at("q").get<double>();
        pc.p_adj = cmp.at("p_adj").get<double>();
        pc.p_adj_se = cmp.at("p_adj_se").get<double>();
        anova.pairwise.push_back(pc);
      }
      row.anova = std::move(anova);
    }
    report.improvement_comparison.push_back(std::move(row));
  }
  for (const auto& item : j.at("correlation_table")) {
    CorrelationRow row;
    row.bucket = interval_from_label(item.at("bucket").get<std::string>());
    row.skill = *skill_from_string(item.at("skill").get<std::string>());
    row.n = item.at("n").get<int>();
    row.rho = optional_from_json(item.at("rho"));
    row.p_value = optional_from_json(item.at("p"));
    row.note = item.at("note").get<std::string>();
    report.correlation_table.push_back(std::move(row));
  }
  for (const auto& item : j.at("line_density")) {
    LineDensityRow row;
    row.bucket = interval_from_label(item.at("bucket").get<std::string>());
    row.cluster_id = item.at("cluster").get<int>();
    row.session_index = item.at("session_index").get<int>();
    row.value = item.at("value").get<int>();
    row.count = item.at("count").get<std::size_t>();
    report.line_density.push_back(row);
  }
  const auto& prov = j.at("provenance");
  report.config_hash = prov.at("config_hash").get<std::string>();
  report.seed = prov.at("seed").get<std::uint64_t>();
  report.tool_version = prov.at("tool_version").get<std::string>();
  report.entropy_log_base = prov.at("entropy_log_base").get<double>();
  report.n_learners = prov.at("n_learners").get<std::size_t>();
  report.n_flagged = prov.at("n_flagged").get<std::size_t>();
  report.n_clustered = prov.at("n_clustered").get<std::size_t>();
  return report;
}

std::string opt_cell(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ValidationError("cannot write file: " + path.string());
  }
  out << text;
}

void write_tables(const AnalysisReport& report,
                  const std::filesystem::path& dir) {
  {
    std::ostringstream out;
    write_csv_row(out, std::vector<std::string>{
                           "bucket", "cluster", "archetype",
                           "medoid_learner_id", "count", "pct_of_bucket",
                           "pct_of_all", "mean_sessions", "sd_sessions",
                           "mean_tutors", "sd_tutors"});
    for (const ClusterSummaryRow& row : report.cluster_summary) {
      write_csv_row(
          out, std::vector<std::string>{
                   row.bucket.label(), std::to_string(row.cluster_id),
                   to_string(row.archetype), row.medoid_learner_id,
                   std::to_string(row.count), format_double(row.pct_of_bucket),
                   format_double(row.pct_of_all),
                   format_double(row.mean_sessions),
                   format_double(row.sd_sessions),
                   format_double(row.mean_tutors),
                   format_double(row.sd_tutors)});
    }
    write_file(dir / "cluster_summary.csv", out.str());
  }
  {
    std::ostringstream out;
    write_csv_row(out, std::vector<std::string>{
                           "bucket", "skill", "group", "n", "mean_slope",
                           "ci_lo", "ci_hi", "anova_f", "anova_p", "note"});
    for (const ComparisonRow& row : report.improvement_comparison) {
      for (const GroupStats& g : row.groups) {
        write_csv_row(
            out,
            std::vector<std::string>{
                row.bucket.label(), to_string(row.skill), g.group,
                std::to_string(g.n), format_double(g.mean_slope),
                opt_cell(g.ci_lo), opt_cell(g.ci_hi),
                row.anova ? format_double(row.anova->f_stat) : std::string(),
                row.anova ? format_double(row.anova->p_value) : std::string(),
                row.note});
      }
    }
    write_file(dir / "improvement_comparison.csv", out.str());
  }
  {
    std::ostringstream out;
    write_csv_row(out, std::vector<std::string>{"bucket", "skill", "group_i",
                                                "group_j", "mean_diff", "q",
                                                "p_adj", "p_adj_se"});
    for (const ComparisonRow& row : report.improvement_comparison) {
      if (!row.anova) continue;
      for (const stats::PairwiseComparison& cmp : row.anova->pairwise) {
        write_csv_row(
            out, std::vector<std::string>{
                     row.bucket.label(), to_string(row.skill),
                     row.groups[cmp.group_i].group,
                     row.groups[cmp.group_j].group,
                     format_double(cmp.mean_diff), format_double(cmp.q_stat),
                     format_double(cmp.p_adj), format_double(cmp.p_adj_se)});
      }
    }
    write_file(dir / "tukey_pairwise.csv", out.str());
  }
  {
    // Wide layout: one row per bucket, (n, rho, p) per skill.
    std::vector<std::string> header = {"bucket"};
    for (Skill skill : kAllSkills) {
      const std::string name = to_string(skill);
      header.push_back("n_" + name);
      header.push_back("rho_" + name);
      header.push_back("p_" + name);
    }
    std::ostringstream out;
    write_csv_row(out, header);
    std::vector<Interval> buckets;
    for (const CorrelationRow& row : report.correlation_table) {
      if (buckets.empty() || !(buckets.back() == row.bucket)) {
        buckets.push_back(row.bucket);
      }
    }
    for (const Interval& bucket : buckets) {
      std::vector<std::string> cells = {bucket.label()};
      for (Skill skill : kAllSkills) {
        const CorrelationRow* found = nullptr;
        for (const CorrelationRow& row : report.correlation_table) {
          if (row.bucket == bucket && row.skill == skill) {
            found = &row;
            break;
          }
        }
        if (found) {
          cells.push_back(std::to_string(found->n));
          cells.push_back(opt_cell(found->rho));
          cells.push_back(opt_cell(found->p_value));
        } else {
          cells.insert(cells.end(), 3, std::string());
        }
      }
      write_csv_row(out, cells);
    }
    write_file(dir / "correlation_table.csv", out.str());
  }
  {
    std::ostringstream out;
    write_csv_row(out,
                  std::vector<std::string>{"bucket", "cluster",
                                           "session_index", "encoded_value",
                                           "count"});
    for (const LineDensityRow& row : report.line_density) {
      write_csv_row(out, std::vector<std::string>{
                             row.bucket.label(), std::to_string(row.cluster_id),
                             std::to_string(row.session_index),
                             std::to_string(row.value),
                             std::to_string(row.count)});
    }
    write_file(dir / "line_density.csv", out.str());
  }
}

}  // namespace

std::string report_json_string(const AnalysisReport& report) {
  return report_to_json(report).dump(2) + "\n";
}

void emit_report(const AnalysisReport& report, const std::string& out_dir) {
  const std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);
  write_file(dir / "report.json", report_json_string(report));
  write_tables(report, dir);
}

void emit_tables_from_json(const std::string& report_json_text,
                           const std::string& out_dir) {
  json j;
  try {
    j = json::parse(report_json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("report json: ") + e.what());
  }
  const AnalysisReport report = report_from_json(j);
  const std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);
  write_tables(report, dir);
}

std::vector<LearnerMetricsRow> per_learner_metrics(
    const std::vector<LearnerRecord>& records, double entropy_log_base,
    int threads) {
  std::vector<LearnerMetricsRow> rows(records.size());
  parallel_for(records.size(), threads, [&](std::size_t i) {
    const LearnerRecord& rec = records[i];
    rows[i] = {rec.sequence.learner_id, rec.n_sessions, rec.n_tutors,
               session_tutor_ratio(rec),
               distributedness(rec.sequence, entropy_log_base).value};
  });
  return rows;
}

}  // namespace tutorkit
