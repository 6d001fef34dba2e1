#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tutorkit/encoding.hpp"
#include "tutorkit/model.hpp"

namespace tutorkit {

// Per-session score model: score = base + slope * session_index + noise,
// with the learner's slope = slope_intercept +
// slope_coeff_vs_distributedness * distributedness(sequence). A negative
// coefficient plants slower improvement for learners with more
// distributed tutorship.
struct SynthScoreModel {
  double base = 70.0;
  double slope_intercept = 0.0;
  double slope_coeff_vs_distributedness = 0.0;
  double noise_sd = 0.0;
};

struct SynthSpec {
  int n_per_archetype = 100;
  // Overrides the total learner count when set (archetypes still cycle
  // diverse, mixed, fixed by learner index).
  std::optional<int> n_total;
  Interval length_range{2, 20};
  // Chance that a mixed learner reverts to a previous tutor instead of
  // picking a new one.
  double mixed_revert_prob = 0.35;
  SynthScoreModel score_model;
  std::uint64_t seed = 0;

  void validate() const;
};

struct SynthOutput {
  std::vector<SessionRecord> sessions;
  // Learner id -> archetype the generator planted, in generation order.
  std::vector<std::pair<std::string, Archetype>> planted;
};

// Deterministic generator for the three tutorship archetypes:
//   diverse: a new tutor every session.
//   mixed:   new tutors with occasional reverts to earlier (preferably
//            non-adjacent) tutors; at least one revert is guaranteed, so
//            a mixed learner is never all-new.
//   fixed:   1-4 exploratory tutors, then the last one for the rest;
//            lengths are clamped to >= 3 because no length-2 sequence can
//            end in a long enough offset-1 run for the fixed label.
// Each learner draws from its own splitmix-derived stream, so growing the
// dataset never perturbs existing learners.
SynthOutput generate_labeled(const SynthSpec& spec);

std::vector<SessionRecord> generate(const SynthSpec& spec);

}  // namespace tutorkit
