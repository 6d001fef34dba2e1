#include "tutorkit/encoding.hpp"

#include <stdexcept>
#include <unordered_map>

namespace tutorkit {

EncodedSequence encode_sequence(const TutorshipSequence& seq,
                                int new_tutor_code) {
  if (seq.tutors.empty()) {
    throw std::invalid_argument("encode_sequence: empty sequence");
  }
  if (new_tutor_code >= 1) {
    throw std::invalid_argument(
        "encode_sequence: new-tutor code must not collide with offsets");
  }
  EncodedSequence enc;
  enc.learner_id = seq.learner_id;
  enc.values.reserve(seq.tutors.size());
  std::unordered_map<std::string, std::size_t> last_seen;
  for (std::size_t i = 0; i < seq.tutors.size(); ++i) {
    auto it = last_seen.find(seq.tutors[i]);
    if (it == last_seen.end()) {
      enc.values.push_back(new_tutor_code);
    } else {
      enc.values.push_back(static_cast<int>(i - it->second));
    }
    last_seen[seq.tutors[i]] = i;
  }
  return enc;
}

std::vector<std::vector<std::size_t>> recover_partition(
    const EncodedSequence& enc, int new_tutor_code) {
  std::vector<std::vector<std::size_t>> classes;
  std::vector<std::size_t> class_of(enc.values.size());
  // last position of each class, to check the most-recent-occurrence rule
  std::vector<std::size_t> last_pos;

  for (std::size_t i = 0; i < enc.values.size(); ++i) {
    const int v = enc.values[i];
    if (v == new_tutor_code) {
      class_of[i] = classes.size();
      classes.push_back({i});
      last_pos.push_back(i);
      continue;
    }
    if (v < 1) {
      throw ValidationError("position " + std::to_string(i) +
                            ": offset must be >= 1, got " + std::to_string(v));
    }
    if (static_cast<std::size_t>(v) > i) {
      throw ValidationError("position " + std::to_string(i) + ": offset " +
                            std::to_string(v) + " points before the start");
    }
    const std::size_t target = i - static_cast<std::size_t>(v);
    const std::size_t cls = class_of[target];
    if (last_pos[cls] != target) {
      throw ValidationError("position " + std::to_string(i) + ": offset " +
                            std::to_string(v) +
                            " skips a more recent occurrence at position " +
                            std::to_string(last_pos[cls]));
    }
    class_of[i] = cls;
    classes[cls].push_back(i);
    last_pos[cls] = i;
  }
  return classes;
}

const char* to_string(Archetype a) {
  switch (a) {
    case Archetype::diverse: return "diverse";
    case Archetype::mixed: return "mixed";
    case Archetype::fixed: return "fixed";
  }
  return "unknown";
}

// Minimum terminal run of offset-1 values for the fixed label:
// max(2, ceil(0.4 * L)), in exact integer arithmetic.
static std::size_t fixed_run_threshold(std::size_t length) {
  const std::size_t ceil_two_fifths = (2 * length + 4) / 5;
  return ceil_two_fifths < 2 ? 2 : ceil_two_fifths;
}

Archetype label_archetype(const EncodedSequence& enc, int new_tutor_code) {
  const std::size_t n = enc.values.size();
  if (n < 2) {
    throw std::invalid_argument("label_archetype: need length >= 2");
  }
  bool all_new = true;
  for (int v : enc.values) {
    if (v != new_tutor_code) {
      all_new = false;
      break;
    }
  }
  if (all_new) return Archetype::diverse;

  std::size_t run = 0;
  for (std::size_t i = n; i-- > 0 && enc.values[i] == 1;) ++run;
  if (run >= fixed_run_threshold(n)) return Archetype::fixed;
  return Archetype::mixed;
}

}  // namespace tutorkit
