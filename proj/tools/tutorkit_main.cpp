// tutorkit: tutorship-sequence analytics over session logs.
// Subcommands: synth, encode, metrics, distances, cluster, analyze, report.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tutorkit/config.hpp"
#include "tutorkit/csv.hpp"
#include "tutorkit/distributedness.hpp"
#include "tutorkit/dtw.hpp"
#include "tutorkit/encoding.hpp"
#include "tutorkit/hash.hpp"
#include "tutorkit/kmedoids.hpp"
#include "tutorkit/manifest.hpp"
#include "tutorkit/model.hpp"
#include "tutorkit/parallel.hpp"
#include "tutorkit/pipeline.hpp"
#include "tutorkit/synth.hpp"
#include "tutorkit/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int resolve_threads(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("TUTORKIT_THREADS")) {
    const int parsed = std::atoi(env);
    if (parsed > 0) return parsed;
  }
  return tutorkit::default_thread_count();
}

std::string resolve_out_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("TUTORKIT_OUT_DIR")) {
    if (*env != '\0') return env;
  }
  throw tutorkit::ValidationError(
      "no output directory: pass --out or set TUTORKIT_OUT_DIR");
}

tutorkit::Interval parse_interval(const std::string& text,
                                  const std::string& what) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw tutorkit::ValidationError(what + ": expected LO:HI, got '" + text +
                                    "'");
  }
  try {
    return {std::stoi(text.substr(0, colon)), std::stoi(text.substr(colon + 1))};
  } catch (const std::exception&) {
    throw tutorkit::ValidationError(what + ": expected LO:HI, got '" + text +
                                    "'");
  }
}

// Every file-producing run records its provenance: directory outputs get
// manifest.json inside, single-file outputs get <file>.manifest.json next
// to them. Stdout runs write no manifest.
void write_dir_manifest(const std::string& dir, tutorkit::RunManifest m) {
  m.timestamp = tutorkit::iso8601_utc_now();
  m.tool_version = tutorkit::kToolVersion;
  tutorkit::write_manifest(dir, m);
}

void write_file_manifest(const std::string& file, tutorkit::RunManifest m) {
  m.timestamp = tutorkit::iso8601_utc_now();
  m.tool_version = tutorkit::kToolVersion;
  std::ofstream out(file + ".manifest.json", std::ios::binary);
  if (!out) {
    throw tutorkit::ValidationError("cannot write manifest next to: " + file);
  }
  out << tutorkit::manifest_to_json(m);
}

// Output sink: file when a path is given, stdout otherwise.
class OutputTarget {
 public:
  explicit OutputTarget(const std::string& path) : path_(path) {
    if (!path_.empty() && path_ != "-") {
      file_.open(path_, std::ios::binary);
      if (!file_) {
        throw tutorkit::ValidationError("cannot write output file: " + path_);
      }
    }
  }
  std::ostream& stream() { return is_file() ? file_ : std::cout; }
  bool is_file() const { return file_.is_open(); }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::ofstream file_;
};

struct SessionInput {
  std::string path;
  std::string timestamp_column;  // empty: plain session_index column

  std::vector<tutorkit::SessionRecord> read() const {
    std::optional<std::string> ts;
    if (!timestamp_column.empty()) ts = timestamp_column;
    return tutorkit::read_sessions_csv(path, ts);
  }
  void add_flags(CLI::App* cmd) {
    cmd->add_option("--input", path, "Sessions CSV")->required();
    cmd->add_option("--timestamp-column", timestamp_column,
                    "Replace session_index with this timestamp column; "
                    "per-learner order is derived by sorting it");
  }
};

std::vector<tutorkit::LearnerRecord> filter_bucket(
    std::vector<tutorkit::LearnerRecord> records,
    const std::optional<tutorkit::Interval>& bucket) {
  if (!bucket) return records;
  std::vector<tutorkit::LearnerRecord> out;
  for (auto& rec : records) {
    if (bucket->contains(rec.n_sessions)) out.push_back(std::move(rec));
  }
  return out;
}

std::vector<tutorkit::EncodedSequence> encode_all(
    const std::vector<tutorkit::LearnerRecord>& records) {
  std::vector<tutorkit::EncodedSequence> encs;
  encs.reserve(records.size());
  for (const auto& rec : records) {
    encs.push_back(tutorkit::encode_sequence(rec.sequence));
  }
  return encs;
}

std::string matrix_cache_key(const std::vector<tutorkit::EncodedSequence>& encs,
                             const tutorkit::DtwOptions& options) {
  tutorkit::Fnv1a64 hash;
  hash.update("dtw-matrix-v1");
  hash.update_value(options.window.value_or(0));
  hash.update_value(options.length_normalize);
  for (const auto& e : encs) {
    hash.update(e.learner_id);
    hash.update("\x1f");
    for (int v : e.values) hash.update_value(v);
    hash.update("\x1e");
  }
  return hash.hex();
}

// Distance matrices are cached under <out>/cache keyed by a content hash
// of the encoded sequences plus the warping options, so clustering reruns
// skip the quadratic recomputation.
tutorkit::DistanceMatrix load_or_compute_matrix(
    const std::vector<tutorkit::EncodedSequence>& encs,
    const tutorkit::DtwOptions& options, const fs::path& cache_dir,
    int threads, bool* cache_hit) {
  const std::string key = matrix_cache_key(encs, options);
  const fs::path cache_file = cache_dir / ("dtw-" + key + ".bin");
  if (cache_hit) *cache_hit = false;

  if (fs::exists(cache_file)) {
    std::ifstream in(cache_file, std::ios::binary);
    std::uint64_t n = 0;
    in.read(reinterpret_cast<char*>(&n), sizeof(n));
    if (in && n == encs.size()) {
      std::vector<std::string> ids;
      ids.reserve(n);
      for (const auto& e : encs) ids.push_back(e.learner_id);
      tutorkit::DistanceMatrix matrix(std::move(ids));
      std::vector<double> row(n);
      bool ok = true;
      for (std::uint64_t i = 0; i < n && ok; ++i) {
        in.read(reinterpret_cast<char*>(row.data()),
                static_cast<std::streamsize>(n * sizeof(double)));
        ok = static_cast<bool>(in);
        for (std::uint64_t j = 0; ok && j < n; ++j) {
          matrix.set(i, j, row[j]);
        }
      }
      if (ok) {
        if (cache_hit) *cache_hit = true;
        return matrix;
      }
    }
  }

  tutorkit::DistanceMatrix matrix =
      tutorkit::pairwise_distance_matrix(encs, options, threads);
  fs::create_directories(cache_dir);
  std::ofstream out(cache_file, std::ios::binary);
  if (out) {
    const std::uint64_t n = matrix.size();
    out.write(reinterpret_cast<const char*>(&n), sizeof(n));
    out.write(reinterpret_cast<const char*>(matrix.values().data()),
              static_cast<std::streamsize>(n * n * sizeof(double)));
  }
  return matrix;
}

// ----------------------------------------------------------------------
// Subcommands
// ----------------------------------------------------------------------

struct SynthOptions {
  tutorkit::SynthSpec spec;
  int n_total = 0;
  std::string out;
};

int run_synth(const SynthOptions& opts) {
  tutorkit::SynthSpec spec = opts.spec;
  if (opts.n_total > 0) spec.n_total = opts.n_total;
  const auto sessions = tutorkit::generate(spec);
  OutputTarget target(opts.out);
  tutorkit::write_sessions_csv(target.stream(), sessions);
  if (target.is_file()) {
    json params;
    params["n_per_archetype"] = spec.n_per_archetype;
    if (spec.n_total) params["n_total"] = *spec.n_total;
    params["length_range"] = {spec.length_range.lo, spec.length_range.hi};
    params["mixed_revert_prob"] = spec.mixed_revert_prob;
    params["score_model"] = {
        {"base", spec.score_model.base},
        {"slope_intercept", spec.score_model.slope_intercept},
        {"slope_coeff_vs_distributedness",
         spec.score_model.slope_coeff_vs_distributedness},
        {"noise_sd", spec.score_model.noise_sd}};
    tutorkit::RunManifest manifest;
    manifest.subcommand = "synth";
    manifest.config_hash = tutorkit::to_hex(tutorkit::fnv1a64(params.dump()));
    manifest.seed = spec.seed;
    write_file_manifest(target.path(), std::move(manifest));
  }
  return 0;
}

struct EncodeOptions {
  SessionInput input;
  std::string out;
  int new_tutor_code = tutorkit::kNewTutorCode;
};

int run_encode(const EncodeOptions& opts) {
  const auto ingest = tutorkit::ingest(opts.input.read());
  OutputTarget target(opts.out);
  std::ostream& out = target.stream();
  tutorkit::write_csv_row(out, std::vector<std::string>{"learner_id", "encoded"});
  for (const auto& rec : ingest.records) {
    const auto enc =
        tutorkit::encode_sequence(rec.sequence, opts.new_tutor_code);
    std::string values;
    for (std::size_t i = 0; i < enc.values.size(); ++i) {
      if (i > 0) values += ' ';
      values += std::to_string(enc.values[i]);
    }
    tutorkit::write_csv_row(
        out, std::vector<std::string>{rec.sequence.learner_id, values});
  }
  if (target.is_file()) {
    tutorkit::RunManifest manifest;
    manifest.subcommand = "encode";
    manifest.input_digests.emplace_back(
        opts.input.path, tutorkit::file_digest(opts.input.path));
    write_file_manifest(target.path(), std::move(manifest));
  }
  return 0;
}

struct MetricsOptions {
  SessionInput input;
  std::string out;
  double log_base = 2.0;
  int threads = 0;
};

int run_metrics(const MetricsOptions& opts) {
  const auto ingest = tutorkit::ingest(opts.input.read());
  const auto rows = tutorkit::per_learner_metrics(
      ingest.records, opts.log_base, resolve_threads(opts.threads));
  OutputTarget target(opts.out);
  std::ostream& out = target.stream();
  tutorkit::write_csv_row(
      out, std::vector<std::string>{"learner_id", "n_sessions", "n_tutors",
                                    "session_tutor_ratio", "distributedness"});
  for (const auto& row : rows) {
    tutorkit::write_csv_row(
        out, std::vector<std::string>{
                 row.learner_id, std::to_string(row.n_sessions),
                 std::to_string(row.n_tutors),
                 tutorkit::format_double(row.session_tutor_ratio),
                 tutorkit::format_double(row.distributedness)});
  }
  if (target.is_file()) {
    tutorkit::RunManifest manifest;
    manifest.subcommand = "metrics";
    manifest.input_digests.emplace_back(
        opts.input.path, tutorkit::file_digest(opts.input.path));
    write_file_manifest(target.path(), std::move(manifest));
  }
  return 0;
}

struct DistanceOptions {
  SessionInput input;
  std::string out;
  std::string bucket;
  int window = 0;
  bool normalize = false;
  int threads = 0;
};

int run_distances(const DistanceOptions& opts) {
  const std::string out_dir = resolve_out_dir(opts.out);
  std::optional<tutorkit::Interval> bucket;
  if (!opts.bucket.empty()) bucket = parse_interval(opts.bucket, "--bucket");

  auto records = filter_bucket(tutorkit::ingest(opts.input.read()).records, bucket);
  if (records.size() < 2) {
    throw tutorkit::ValidationError(
        "distances: need at least two learners after filtering");
  }
  const auto encs = encode_all(records);
  tutorkit::DtwOptions options;
  if (opts.window > 0) options.window = opts.window;
  options.length_normalize = opts.normalize;
  const int threads = resolve_threads(opts.threads);

  fs::create_directories(out_dir);
  const fs::path csv_path = fs::path(out_dir) / "distances.csv";
  std::ofstream out(csv_path, std::ios::binary);
  if (!out) {
    throw tutorkit::ValidationError("cannot write: " + csv_path.string());
  }
  std::vector<std::string> header = {"id"};
  for (const auto& e : encs) header.push_back(e.learner_id);
  tutorkit::write_csv_row(out, header);

  // Desk scale gets the cached dense matrix; very large inputs stream row
  // blocks so memory stays O(N) (and skip the quadratic cache file).
  if (encs.size() <= 10000) {
    const auto matrix = load_or_compute_matrix(
        encs, options, fs::path(out_dir) / "cache", threads, nullptr);
    std::vector<std::string> row;
    for (std::size_t i = 0; i < matrix.size(); ++i) {
      row.clear();
      row.push_back(matrix.ids()[i]);
      for (std::size_t j = 0; j < matrix.size(); ++j) {
        row.push_back(tutorkit::format_double(matrix.at(i, j)));
      }
      tutorkit::write_csv_row(out, row);
    }
  } else {
    tutorkit::stream_distance_rows(
        encs, options, threads,
        [&](std::size_t i, std::span<const double> values) {
          std::vector<std::string> row;
          row.reserve(values.size() + 1);
          row.push_back(encs[i].learner_id);
          for (double v : values) row.push_back(tutorkit::format_double(v));
          tutorkit::write_csv_row(out, row);
        });
  }

  tutorkit::RunManifest manifest;
  manifest.subcommand = "distances";
  manifest.config_hash = matrix_cache_key(encs, options);
  manifest.input_digests.emplace_back(opts.input.path,
                                      tutorkit::file_digest(opts.input.path));
  write_dir_manifest(out_dir, std::move(manifest));
  return 0;
}

struct ClusterOptions {
  SessionInput input;
  std::string out;
  std::string bucket;
  int k = 0;
  std::string k_sweep;
  std::uint64_t seed = 0;
  int window = 0;
  bool normalize = false;
  int threads = 0;
};

int run_cluster(const ClusterOptions& opts) {
  const std::string out_dir = resolve_out_dir(opts.out);
  std::optional<tutorkit::Interval> bucket;
  if (!opts.bucket.empty()) bucket = parse_interval(opts.bucket, "--bucket");

  auto records = filter_bucket(tutorkit::ingest(opts.input.read()).records, bucket);
  if (records.size() < 2) {
    throw tutorkit::ValidationError(
        "cluster: need at least two learners after filtering");
  }
  const auto encs = encode_all(records);
  tutorkit::DtwOptions options;
  if (opts.window > 0) options.window = opts.window;
  options.length_normalize = opts.normalize;
  const int threads = resolve_threads(opts.threads);

  fs::create_directories(out_dir);
  bool cache_hit = false;
  const auto matrix = load_or_compute_matrix(
      encs, options, fs::path(out_dir) / "cache", threads, &cache_hit);
  if (cache_hit) {
    std::cerr << "cluster: reusing cached distance matrix\n";
  }

  json sweep_json;
  sweep_json["bucket"] = bucket ? json(bucket->label()) : json(nullptr);
  sweep_json["seed"] = opts.seed;
  sweep_json["entries"] = json::array();

  tutorkit::ClusterAssignment assignment;
  if (opts.k > 0) {
    assignment = tutorkit::k_medoids(matrix, opts.k, opts.seed);
    if (opts.k >= 2) {
      sweep_json["entries"].push_back(
          {{"k", opts.k},
           {"mean_silhouette",
            tutorkit::silhouette(matrix, assignment).mean},
           {"total_cost", assignment.total_cost}});
    }
    sweep_json["selected_k"] = opts.k;
  } else {
    tutorkit::Interval range{2, 20};
    if (!opts.k_sweep.empty()) range = parse_interval(opts.k_sweep, "--k-sweep");
    const auto sweep = tutorkit::sweep_k(matrix, range, opts.seed, threads);
    const int selected = tutorkit::select_k(sweep);
    for (const auto& entry : sweep) {
      sweep_json["entries"].push_back(
          {{"k", entry.k},
           {"mean_silhouette", entry.mean_silhouette},
           {"total_cost", entry.assignment.total_cost}});
      if (entry.k == selected) assignment = entry.assignment;
    }
    sweep_json["selected_k"] = selected;
  }

  const fs::path assignments_path = fs::path(out_dir) / "assignments.csv";
  std::ofstream out(assignments_path, std::ios::binary);
  if (!out) {
    throw tutorkit::ValidationError("cannot write: " +
                                    assignments_path.string());
  }
  tutorkit::write_csv_row(out, std::vector<std::string>{
                                   "learner_id", "cluster",
                                   "medoid_learner_id"});
  for (std::size_t i = 0; i < records.size(); ++i) {
    const std::size_t cluster = assignment.cluster_of(i);
    tutorkit::write_csv_row(
        out,
        std::vector<std::string>{
            records[i].sequence.learner_id, std::to_string(cluster),
            records[assignment.medoid_indices[cluster]].sequence.learner_id});
  }
  {
    std::ofstream sweep_out(fs::path(out_dir) / "sweep.json",
                            std::ios::binary);
    sweep_out << sweep_json.dump(2) << "\n";
  }

  tutorkit::RunManifest manifest;
  manifest.subcommand = "cluster";
  manifest.config_hash = matrix_cache_key(encs, options);
  manifest.seed = opts.seed;
  manifest.input_digests.emplace_back(opts.input.path,
                                      tutorkit::file_digest(opts.input.path));
  write_dir_manifest(out_dir, std::move(manifest));
  return 0;
}

struct AnalyzeOptions {
  SessionInput input;
  std::string config_path;
  std::string out;
  std::int64_t seed = -1;
  int threads = 0;
};

int run_analyze(const AnalyzeOptions& opts) {
  const std::string out_dir = resolve_out_dir(opts.out);
  tutorkit::AnalysisConfig config =
      opts.config_path.empty() ? tutorkit::AnalysisConfig::defaults()
                               : tutorkit::load_config(opts.config_path);
  if (opts.seed >= 0) {
    config.rng_seed = static_cast<std::uint64_t>(opts.seed);
  }

  const auto ingest = tutorkit::ingest(opts.input.read());
  const auto report = tutorkit::run_analysis(ingest.records, config,
                                             resolve_threads(opts.threads));
  tutorkit::emit_report(report, out_dir);

  tutorkit::RunManifest manifest;
  manifest.subcommand = "analyze";
  manifest.config_hash = tutorkit::config_hash(config);
  manifest.seed = config.rng_seed;
  manifest.input_digests.emplace_back(opts.input.path,
                                      tutorkit::file_digest(opts.input.path));
  if (!opts.config_path.empty()) {
    manifest.input_digests.emplace_back(
        opts.config_path, tutorkit::file_digest(opts.config_path));
  }
  write_dir_manifest(out_dir, std::move(manifest));

  std::cerr << "analyze: " << ingest.records.size() << " learners ("
            << ingest.flagged_learners.size()
            << " flagged with < 2 sessions); report written to " << out_dir
            << "\n";
  return 0;
}

struct ReportOptions {
  std::string analysis;
  std::string out;
};

int run_report(const ReportOptions& opts) {
  const std::string out_dir = resolve_out_dir(opts.out);
  std::ifstream in(opts.analysis, std::ios::binary);
  if (!in) {
    throw tutorkit::ValidationError("cannot open analysis file: " +
                                    opts.analysis);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  tutorkit::emit_tables_from_json(buffer.str(), out_dir);

  tutorkit::RunManifest manifest;
  manifest.subcommand = "report";
  manifest.input_digests.emplace_back(opts.analysis,
                                      tutorkit::file_digest(opts.analysis));
  write_dir_manifest(out_dir, std::move(manifest));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tutorkit: tutorship-sequence analytics toolkit"};
  app.require_subcommand(1);

  SynthOptions synth_opts;
  CLI::App* synth = app.add_subcommand(
      "synth", "Generate a synthetic sessions CSV with planted archetypes");
  synth->add_option("--out", synth_opts.out, "Output CSV (default: stdout)");
  synth->add_option("--n-per-archetype", synth_opts.spec.n_per_archetype,
                    "Learners per archetype");
  synth->add_option("--n-total", synth_opts.n_total,
                    "Total learners (overrides --n-per-archetype)");
  synth->add_option("--length-min", synth_opts.spec.length_range.lo,
                    "Minimum sessions per learner");
  synth->add_option("--length-max", synth_opts.spec.length_range.hi,
                    "Maximum sessions per learner");
  synth->add_option("--revert-prob", synth_opts.spec.mixed_revert_prob,
                    "Mixed-archetype revert probability");
  synth->add_option("--score-base", synth_opts.spec.score_model.base,
                    "Score model intercept");
  synth->add_option("--slope-intercept",
                    synth_opts.spec.score_model.slope_intercept,
                    "Per-learner slope intercept");
  synth->add_option(
      "--slope-coeff",
      synth_opts.spec.score_model.slope_coeff_vs_distributedness,
      "Slope change per unit of distributedness");
  synth->add_option("--noise-sd", synth_opts.spec.score_model.noise_sd,
                    "Score noise standard deviation");
  synth->add_option("--seed", synth_opts.spec.seed, "RNG seed");

  EncodeOptions encode_opts;
  CLI::App* encode = app.add_subcommand(
      "encode", "Offset-encode tutorship sequences to CSV");
  encode_opts.input.add_flags(encode);
  encode->add_option("--out", encode_opts.out, "Output CSV (default: stdout)");
  encode->add_option("--new-tutor-code", encode_opts.new_tutor_code,
                     "Code for first-time tutors (default -1)");

  MetricsOptions metrics_opts;
  CLI::App* metrics = app.add_subcommand(
      "metrics", "Per-learner session/tutor counts, ratio, distributedness");
  metrics_opts.input.add_flags(metrics);
  metrics->add_option("--out", metrics_opts.out,
                      "Output CSV (default: stdout)");
  metrics->add_option("--log-base", metrics_opts.log_base,
                      "Entropy log base (default 2: bits)");
  metrics->add_option("--threads", metrics_opts.threads, "Worker threads");

  DistanceOptions distance_opts;
  CLI::App* distances = app.add_subcommand(
      "distances", "All-pairs warping distances over encoded sequences");
  distance_opts.input.add_flags(distances);
  distances->add_option("--out", distance_opts.out, "Output directory");
  distances->add_option("--bucket", distance_opts.bucket,
                        "Only learners with LO:HI sessions");
  distances->add_option("--window", distance_opts.window,
                        "Warping window (|i-j| <= window)");
  distances->add_flag("--normalize", distance_opts.normalize,
                      "Divide by optimal path length");
  distances->add_option("--threads", distance_opts.threads, "Worker threads");

  ClusterOptions cluster_opts;
  CLI::App* cluster = app.add_subcommand(
      "cluster", "k-medoids over warping distances, with silhouette sweep");
  cluster_opts.input.add_flags(cluster);
  cluster->add_option("--out", cluster_opts.out, "Output directory");
  cluster->add_option("--bucket", cluster_opts.bucket,
                      "Only learners with LO:HI sessions");
  cluster->add_option("--k", cluster_opts.k, "Fixed cluster count");
  cluster->add_option("--k-sweep", cluster_opts.k_sweep,
                      "Sweep range LO:HI (default 2:20)");
  cluster->add_option("--seed", cluster_opts.seed, "RNG seed");
  cluster->add_option("--window", cluster_opts.window, "Warping window");
  cluster->add_flag("--normalize", cluster_opts.normalize,
                    "Divide by optimal path length");
  cluster->add_option("--threads", cluster_opts.threads, "Worker threads");

  AnalyzeOptions analyze_opts;
  CLI::App* analyze = app.add_subcommand(
      "analyze", "Full pipeline: clustering, comparisons, correlations");
  analyze_opts.input.add_flags(analyze);
  analyze->add_option("--config", analyze_opts.config_path,
                      "Analysis config JSON");
  analyze->add_option("--out", analyze_opts.out, "Output directory");
  analyze->add_option("--seed", analyze_opts.seed,
                      "RNG seed (overrides config)");
  analyze->add_option("--threads", analyze_opts.threads, "Worker threads");

  ReportOptions report_opts;
  CLI::App* report = app.add_subcommand(
      "report", "Re-emit CSV tables from an existing report.json");
  report->add_option("--analysis", report_opts.analysis, "report.json path")
      ->required();
  report->add_option("--out", report_opts.out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*synth) return run_synth(synth_opts);
    if (*encode) return run_encode(encode_opts);
    if (*metrics) return run_metrics(metrics_opts);
    if (*distances) return run_distances(distance_opts);
    if (*cluster) return run_cluster(cluster_opts);
    if (*analyze) return run_analyze(analyze_opts);
    if (*report) return run_report(report_opts);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
