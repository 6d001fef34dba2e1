#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tutorkit {

// Raised for anything wrong with user-supplied data or configuration.
// Messages carry row numbers / field names so CLI users can fix inputs.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Skill : int { fluency = 0, grammar = 1, vocabulary = 2, pronunciation = 3 };

inline constexpr std::array<Skill, 4> kAllSkills = {
    Skill::fluency, Skill::grammar, Skill::vocabulary, Skill::pronunciation};

const char* to_string(Skill skill);
std::optional<Skill> skill_from_string(std::string_view name);

// One learner-tutor session. Scores are optional per skill; a session with
// no scores still counts toward the tutorship sequence.
struct SessionRecord {
  std::string learner_id;
  int session_index = 0;  // 1-based order within the learner
  std::string tutor_id;
  std::array<std::optional<double>, 4> scores{};  // indexed by Skill
};

// The ordered tutor identities of one learner, ascending session order.
struct TutorshipSequence {
  std::string learner_id;
  std::vector<std::string> tutors;

  std::size_t length() const { return tutors.size(); }
};

struct ScorePoint {
  int session_index = 0;
  double score = 0.0;
};

// Per-skill score trajectory; points sorted by strictly increasing
// session_index. Sessions without a score for the skill are absent.
struct ScoreSeries {
  Skill skill = Skill::fluency;
  std::vector<ScorePoint> points;
};

struct LearnerRecord {
  TutorshipSequence sequence;
  std::array<ScoreSeries, 4> series;  // indexed by Skill
  int n_sessions = 0;
  int n_tutors = 0;  // unique tutor_ids
};

// Inclusive session-count interval, e.g. [2,20].
struct Interval {
  int lo = 0;
  int hi = 0;

  bool contains(int v) const { return v >= lo && v <= hi; }
  std::string label() const {
    return "[" + std::to_string(lo) + "," + std::to_string(hi) + "]";
  }
  friend bool operator==(const Interval&, const Interval&) = default;
};

// Checks that bucket intervals are non-empty ranges, ascending, disjoint,
// with every lower bound >= 2. Throws ValidationError.
void validate_bucket_intervals(std::span<const Interval> intervals,
                               const std::string& what);

// A session-count range that gets its own clustering run. If k is set the
// run uses exactly k clusters (k == 1 means the whole bucket is one
// cluster and no distance matrix is built); otherwise the configured
// k-sweep runs and the best mean silhouette picks k.
struct ClusterBucket {
  Interval range;
  std::optional<int> k;
};

struct AnalysisConfig {
  // Statistics layer: buckets for slopes / correlations / comparisons.
  std::vector<Interval> session_range_buckets;
  // Clustering layer: coarser buckets, each clustered independently
  // because warping distance degrades across very different lengths.
  std::vector<ClusterBucket> cluster_buckets;
  Interval k_sweep{2, 20};
  std::optional<int> chosen_k;  // overrides the sweep where no per-bucket k
  std::uint64_t rng_seed = 0;
  std::optional<int> dtw_window;
  bool dtw_length_normalize = false;
  double entropy_log_base = 2.0;
  int min_sessions_for_scores = 2;

  static AnalysisConfig defaults();
  void validate() const;  // throws ValidationError
};

struct IngestResult {
  std::vector<LearnerRecord> records;  // sorted by learner_id
  // Learners with fewer than two sessions; retained in `records` but
  // callers normally exclude them from analysis.
  std::vector<std::string> flagged_learners;
};

// Groups raw session rows into per-learner records. Rows may arrive in any
// order; output is sorted by learner_id with sessions ascending. Throws
// ValidationError (with the 1-based position of the offending row) on
// duplicate (learner_id, session_index), empty tutor_id, session_index < 1
// or a non-finite score.
IngestResult ingest(const std::vector<SessionRecord>& rows);

// sessions / unique tutors; >= 1 for every valid record.
double session_tutor_ratio(const LearnerRecord& record);

}  // namespace tutorkit
