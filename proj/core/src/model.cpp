#include "tutorkit/model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <utility>

namespace tutorkit {

const char* to_string(Skill skill) {
  switch (skill) {
    case Skill::fluency: return "fluency";
    case Skill::grammar: return "grammar";
    case Skill::vocabulary: return "vocabulary";
    case Skill::pronunciation: return "pronunciation";
  }
  return "unknown";
}

std::optional<Skill> skill_from_string(std::string_view name) {
  for (Skill s : kAllSkills) {
    if (name == to_string(s)) return s;
  }
  return std::nullopt;
}

AnalysisConfig AnalysisConfig::defaults() {
  AnalysisConfig cfg;
  cfg.session_range_buckets.push_back({2, 5});
  for (int lo = 6; lo <= 96; lo += 5) {
    cfg.session_range_buckets.push_back({lo, lo + 4});
  }
  cfg.session_range_buckets.push_back({101, 499});
  cfg.cluster_buckets.push_back({{2, 20}, std::nullopt});
  cfg.cluster_buckets.push_back({{21, 499}, 1});
  return cfg;
}

void validate_bucket_intervals(std::span<const Interval> intervals,
                               const std::string& what) {
  int prev_hi = 1;  // lower bounds must be >= 2
  for (const Interval& iv : intervals) {
    if (iv.lo < 2) {
      throw ValidationError(what + " " + iv.label() +
                            ": lower bound must be >= 2");
    }
    if (iv.hi < iv.lo) {
      throw ValidationError(what + " " + iv.label() + ": empty interval");
    }
    if (iv.lo <= prev_hi) {
      throw ValidationError(what + " " + iv.label() +
                            ": buckets must be disjoint and ascending");
    }
    prev_hi = iv.hi;
  }
}

void AnalysisConfig::validate() const {
  validate_bucket_intervals(session_range_buckets, "session bucket");
  std::vector<Interval> cluster_ranges;
  cluster_ranges.reserve(cluster_buckets.size());
  for (const ClusterBucket& b : cluster_buckets) {
    cluster_ranges.push_back(b.range);
    if (b.k && *b.k < 1) {
      throw ValidationError("cluster bucket " + b.range.label() +
                            ": k must be >= 1");
    }
  }
  validate_bucket_intervals(cluster_ranges, "cluster bucket");
  if (k_sweep.lo > k_sweep.hi) {
    throw ValidationError("k_sweep: empty interval");
  }
  if (chosen_k && *chosen_k < 1) {
    throw ValidationError("chosen_k must be >= 1");
  }
  if (dtw_window && *dtw_window < 1) {
    throw ValidationError("dtw_window must be a positive integer");
  }
  if (!(entropy_log_base > 0.0) || entropy_log_base == 1.0) {
    throw ValidationError("entropy_log_base must be positive and != 1");
  }
  if (min_sessions_for_scores < 2) {
    throw ValidationError("min_sessions_for_scores must be >= 2");
  }
}

IngestResult ingest(const std::vector<SessionRecord>& rows) {
  struct Indexed {
    const SessionRecord* row;
    std::size_t position;  // 1-based position in the input
  };
  std::map<std::string, std::vector<Indexed>> by_learner;

  for (std::size_t i = 0; i < rows.size(); ++i) {
    const SessionRecord& row = rows[i];
    const std::string where = "row " + std::to_string(i + 1);
    if (row.learner_id.empty()) {
      throw ValidationError(where + ": empty learner_id");
    }
    if (row.tutor_id.empty()) {
      throw ValidationError(where + ": empty tutor_id for learner '" +
                            row.learner_id + "'");
    }
    if (row.session_index < 1) {
      throw ValidationError(where + ": session_index must be >= 1, got " +
                            std::to_string(row.session_index));
    }
    for (Skill s : kAllSkills) {
      const auto& score = row.scores[static_cast<std::size_t>(s)];
      if (score && !std::isfinite(*score)) {
        throw ValidationError(where + ": non-finite " +
                              std::string(to_string(s)) +
                              " score for learner '" + row.learner_id + "'");
      }
    }
    by_learner[row.learner_id].push_back({&row, i + 1});
  }

  IngestResult out;
  out.records.reserve(by_learner.size());
  for (auto& [learner_id, sessions] : by_learner) {
    std::stable_sort(sessions.begin(), sessions.end(),
                     [](const Indexed& a, const Indexed& b) {
                       return a.row->session_index < b.row->session_index;
                     });
    for (std::size_t i = 1; i < sessions.size(); ++i) {
      if (sessions[i].row->session_index ==
          sessions[i - 1].row->session_index) {
        throw ValidationError(
            "row " + std::to_string(sessions[i].position) +
            ": duplicate session_index " +
            std::to_string(sessions[i].row->session_index) +
            " for learner '" + learner_id + "' (first seen at row " +
            std::to_string(sessions[i - 1].position) + ")");
      }
    }

    LearnerRecord rec;
    rec.sequence.learner_id = learner_id;
    rec.sequence.tutors.reserve(sessions.size());
    for (Skill s : kAllSkills) {
      rec.series[static_cast<std::size_t>(s)].skill = s;
    }
    std::set<std::string> unique_tutors;
    for (const Indexed& item : sessions) {
      rec.sequence.tutors.push_back(item.row->tutor_id);
      unique_tutors.insert(item.row->tutor_id);
      for (Skill s : kAllSkills) {
        const auto& score = item.row->scores[static_cast<std::size_t>(s)];
        if (score) {
          rec.series[static_cast<std::size_t>(s)].points.push_back(
              {item.row->session_index, *score});
        }
      }
    }
    rec.n_sessions = static_cast<int>(rec.sequence.tutors.size());
    rec.n_tutors = static_cast<int>(unique_tutors.size());
    if (rec.n_sessions < 2) {
      out.flagged_learners.push_back(learner_id);
    }
    out.records.push_back(std::move(rec));
  }
  return out;
}

double session_tutor_ratio(const LearnerRecord& record) {
  if (record.n_tutors < 1) {
    throw std::invalid_argument("session_tutor_ratio: record has no tutors");
  }
  return static_cast<double>(record.n_sessions) /
         static_cast<double>(record.n_tutors);
}

}  // namespace tutorkit
