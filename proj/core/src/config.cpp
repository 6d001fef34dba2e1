#include "tutorkit/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "tutorkit/hash.hpp"

namespace tutorkit {

using nlohmann::json;

namespace {

Interval interval_from_json(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() ||
      !j[1].is_number_integer()) {
    throw ValidationError(what + ": expected [lo, hi] integer pair");
  }
  return Interval{j[0].get<int>(), j[1].get<int>()};
}

json interval_to_json(const Interval& iv) {
  return json::array({iv.lo, iv.hi});
}

}  // namespace

AnalysisConfig parse_config(const std::string& json_text,
                            const std::string& source_name) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError(source_name + ": " + e.what());
  }
  if (!j.is_object()) {
    throw ValidationError(source_name + ": config must be a JSON object");
  }

  static const std::set<std::string> known = {
      "session_range_buckets", "cluster_buckets",        "k_sweep",
      "chosen_k",              "rng_seed",               "dtw_window",
      "dtw_length_normalize",  "entropy_log_base",       "min_sessions_for_scores"};
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) {
      throw ValidationError(source_name + ": unknown config key '" + key + "'");
    }
  }

  AnalysisConfig cfg = AnalysisConfig::defaults();
  if (j.contains("session_range_buckets")) {
    cfg.session_range_buckets.clear();
    for (const auto& item : j.at("session_range_buckets")) {
      cfg.session_range_buckets.push_back(
          interval_from_json(item, "session_range_buckets"));
    }
  }
  if (j.contains("cluster_buckets")) {
    cfg.cluster_buckets.clear();
    for (const auto& item : j.at("cluster_buckets")) {
      ClusterBucket bucket;
      if (item.is_array()) {
        bucket.range = interval_from_json(item, "cluster_buckets");
      } else if (item.is_object()) {
        bucket.range =
            interval_from_json(item.at("range"), "cluster_buckets.range");
        if (item.contains("k")) bucket.k = item.at("k").get<int>();
        for (const auto& [key, value] : item.items()) {
          if (key != "range" && key != "k") {
            throw ValidationError(source_name +
                                  ": unknown cluster bucket key '" + key + "'");
          }
        }
      } else {
        throw ValidationError(source_name +
                              ": cluster bucket must be [lo, hi] or "
                              "{\"range\": [lo, hi], \"k\": n}");
      }
      cfg.cluster_buckets.push_back(bucket);
    }
  }
  if (j.contains("k_sweep")) {
    cfg.k_sweep = interval_from_json(j.at("k_sweep"), "k_sweep");
  }
  if (j.contains("chosen_k") && !j.at("chosen_k").is_null()) {
    cfg.chosen_k = j.at("chosen_k").get<int>();
  }
  if (j.contains("rng_seed")) {
    cfg.rng_seed = j.at("rng_seed").get<std::uint64_t>();
  }
  if (j.contains("dtw_window") && !j.at("dtw_window").is_null()) {
    cfg.dtw_window = j.at("dtw_window").get<int>();
  }
  if (j.contains("dtw_length_normalize")) {
    cfg.dtw_length_normalize = j.at("dtw_length_normalize").get<bool>();
  }
  if (j.contains("entropy_log_base")) {
    cfg.entropy_log_base = j.at("entropy_log_base").get<double>();
  }
  if (j.contains("min_sessions_for_scores")) {
    cfg.min_sessions_for_scores = j.at("min_sessions_for_scores").get<int>();
  }
  cfg.validate();
  return cfg;
}

AnalysisConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ValidationError("cannot open config file: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), path);
}

std::string config_to_json(const AnalysisConfig& config) {
  json j;
  j["session_range_buckets"] = json::array();
  for (const Interval& iv : config.session_range_buckets) {
    j["session_range_buckets"].push_back(interval_to_json(iv));
  }
  j["cluster_buckets"] = json::array();
  for (const ClusterBucket& b : config.cluster_buckets) {
    json item;
    item["range"] = interval_to_json(b.range);
    if (b.k) item["k"] = *b.k;
    j["cluster_buckets"].push_back(item);
  }
  j["k_sweep"] = interval_to_json(config.k_sweep);
  if (config.chosen_k) j["chosen_k"] = *config.chosen_k;
  j["rng_seed"] = config.rng_seed;
  if (config.dtw_window) {
    j["dtw_window"] = *config.dtw_window;
  } else {
    j["dtw_window"] = nullptr;
  }
  j["dtw_length_normalize"] = config.dtw_length_normalize;
  j["entropy_log_base"] = config.entropy_log_base;
  j["min_sessions_for_scores"] = config.min_sessions_for_scores;
  return j.dump(2) + "\n";
}

std::string config_hash(const AnalysisConfig& config) {
  return to_hex(fnv1a64(config_to_json(config)));
}

}  // namespace tutorkit
