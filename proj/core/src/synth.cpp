#include "tutorkit/synth.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include "tutorkit/distributedness.hpp"
#include "tutorkit/rng.hpp"

namespace tutorkit {

namespace {

// Minimum trailing same-tutor run for the fixed label, mirroring
// label_archetype's threshold.
std::size_t fixed_run_min(std::size_t length) {
  const std::size_t ceil_two_fifths = (2 * length + 4) / 5;
  return std::max<std::size_t>(2, ceil_two_fifths);
}

std::vector<int> diverse_tutors(std::size_t length) {
  std::vector<int> tutors(length);
  for (std::size_t i = 0; i < length; ++i) tutors[i] = static_cast<int>(i);
  return tutors;
}

std::vector<int> fixed_tutors(std::size_t length, Rng& rng) {
  // Explore up to four tutors but always leave a long enough tail.
  const std::size_t explore_max =
      std::min<std::size_t>(4, length - fixed_run_min(length));
  const std::size_t explore =
      1 + static_cast<std::size_t>(rng.uniform_int(explore_max));
  std::vector<int> tutors(length);
  for (std::size_t i = 0; i < length; ++i) {
    tutors[i] = static_cast<int>(std::min(i, explore - 1));
  }
  return tutors;
}

std::vector<int> mixed_tutors(std::size_t length, double revert_prob,
                              Rng& rng) {
  std::vector<int> tutors(length);
  tutors[0] = 0;
  int next_new = 1;
  // One revert is forced so the sequence never looks all-new.
  const std::size_t forced_revert =
      1 + static_cast<std::size_t>(rng.uniform_int(length - 1));
  for (std::size_t i = 1; i < length; ++i) {
    const bool revert =
        i == forced_revert || rng.uniform() < revert_prob;
    if (!revert) {
      tutors[i] = next_new++;
      continue;
    }
    // Revert to a distinct earlier tutor, preferring one not taught in
    // the session immediately before (a revert "several sessions prior").
    std::vector<int> candidates;
    candidates.reserve(static_cast<std::size_t>(next_new));
    for (int t = 0; t < next_new; ++t) {
      if (t != tutors[i - 1]) candidates.push_back(t);
    }
    if (candidates.empty()) candidates.push_back(tutors[i - 1]);
    tutors[i] = candidates[rng.uniform_int(candidates.size())];
  }
  return tutors;
}

std::string learner_name(int index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "synth-%06d", index);
  return buf;
}

}  // namespace

void SynthSpec::validate() const {
  const int total = n_total.value_or(3 * n_per_archetype);
  if (total < 1) {
    throw ValidationError("synth: learner count must be positive");
  }
  if (length_range.lo < 2 || length_range.hi > 499 ||
      length_range.lo > length_range.hi) {
    throw ValidationError("synth: length_range must lie within [2, 499]");
  }
  if (!(mixed_revert_prob > 0.0) || !(mixed_revert_prob < 1.0)) {
    throw ValidationError("synth: mixed_revert_prob must be in (0, 1)");
  }
  if (score_model.noise_sd < 0.0) {
    throw ValidationError("synth: noise_sd must be non-negative");
  }
}

SynthOutput generate_labeled(const SynthSpec& spec) {
  spec.validate();
  const int total = spec.n_total.value_or(3 * spec.n_per_archetype);

  SynthOutput out;
  out.planted.reserve(static_cast<std::size_t>(total));
  for (int idx = 0; idx < total; ++idx) {
    const auto archetype = static_cast<Archetype>(idx % 3);
    Rng rng(derive_seed(spec.seed, static_cast<std::uint64_t>(idx)));

    const int span = spec.length_range.hi - spec.length_range.lo + 1;
    std::size_t length =
        static_cast<std::size_t>(spec.length_range.lo) +
        static_cast<std::size_t>(rng.uniform_int(static_cast<std::uint64_t>(span)));
    std::vector<int> tutors;
    switch (archetype) {
      case Archetype::diverse:
        tutors = diverse_tutors(length);
        break;
      case Archetype::mixed:
        tutors = mixed_tutors(length, spec.mixed_revert_prob, rng);
        break;
      case Archetype::fixed:
        length = std::max<std::size_t>(length, 3);
        tutors = fixed_tutors(length, rng);
        break;
    }

    TutorshipSequence seq;
    seq.learner_id = learner_name(idx);
    seq.tutors.reserve(tutors.size());
    for (int t : tutors) {
      seq.tutors.push_back("T" + std::to_string(idx) + "-" +
                           std::to_string(t));
    }

    const double dist = distributedness(seq, 2.0).value;
    const double slope = spec.score_model.slope_intercept +
                         spec.score_model.slope_coeff_vs_distributedness * dist;

    for (std::size_t s = 0; s < seq.tutors.size(); ++s) {
      SessionRecord rec;
      rec.learner_id = seq.learner_id;
      rec.session_index = static_cast<int>(s) + 1;
      rec.tutor_id = seq.tutors[s];
      const double trend =
          spec.score_model.base + slope * static_cast<double>(rec.session_index);
      for (Skill skill : kAllSkills) {
        rec.scores[static_cast<std::size_t>(skill)] =
            trend + spec.score_model.noise_sd * rng.normal();
      }
      out.sessions.push_back(std::move(rec));
    }
    out.planted.emplace_back(seq.learner_id, archetype);
  }
  return out;
}

std::vector<SessionRecord> generate(const SynthSpec& spec) {
  return generate_labeled(spec).sessions;
}

}  // namespace tutorkit
