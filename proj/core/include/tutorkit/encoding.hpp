#pragma once

#include <string>
#include <vector>

#include "tutorkit/model.hpp"

namespace tutorkit {

// Code for a tutor's first appearance. Negative so that first-time tutors
// sit far (in local distance) from small positive repeat offsets.
inline constexpr int kNewTutorCode = -1;

// Numeric view of a tutorship sequence: values[i] is the number of
// sessions back to the most recent earlier occurrence of the same tutor,
// or the new-tutor code on first appearance. Examples:
//   <aaaaaa> -> -1 1 1 1 1 1
//   <ababab> -> -1 -1 2 2 2 2
//   <abcdef> -> -1 -1 -1 -1 -1 -1
struct EncodedSequence {
  std::string learner_id;
  std::vector<int> values;

  std::size_t length() const { return values.size(); }
};

EncodedSequence encode_sequence(const TutorshipSequence& seq,
                                int new_tutor_code = kNewTutorCode);

// Inverts an encoding back to tutor-equality classes: positions i and j
// end up in the same class iff the source tutors were equal. Classes are
// ordered by first position, positions ascending. Throws ValidationError
// for offsets that point before the start, are zero/negative without
// being the new-tutor code, or skip a more recent occurrence of the same
// tutor.
std::vector<std::vector<std::size_t>> recover_partition(
    const EncodedSequence& enc, int new_tutor_code = kNewTutorCode);

// The three archetypes are interpretive names for the clustered patterns:
// diverse (always new tutors), mixed (new tutors with occasional reverts),
// fixed (exploration, then one tutor).
enum class Archetype { diverse = 0, mixed = 1, fixed = 2 };

const char* to_string(Archetype a);

// Deterministic rule-based proxy for the cluster interpretations, used to
// drive synthetic data generation and validation. diverse: every value is
// the new-tutor code. fixed: the terminal run of offset-1 values has
// length >= max(2, ceil(0.4 * L)). Everything else: mixed. Requires
// length >= 2.
Archetype label_archetype(const EncodedSequence& enc,
                          int new_tutor_code = kNewTutorCode);

}  // namespace tutorkit
