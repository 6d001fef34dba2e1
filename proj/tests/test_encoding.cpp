#include <doctest.h>

#include <algorithm>
#include <map>

#include "helpers.hpp"
#include "tutorkit/encoding.hpp"
#include "tutorkit/rng.hpp"

using namespace tutorkit;

namespace {

TutorshipSequence seq_of(const std::string& tutors) {
  TutorshipSequence seq;
  seq.learner_id = "t";
  for (char c : tutors) seq.tutors.push_back(std::string(1, c));
  return seq;
}

EncodedSequence enc_of(std::vector<int> values) {
  EncodedSequence enc;
  enc.learner_id = "t";
  enc.values = std::move(values);
  return enc;
}

// Ground-truth tutor-equality partition, straight from the tutors.
std::vector<std::vector<std::size_t>> equality_partition(
    const TutorshipSequence& seq) {
  std::vector<std::vector<std::size_t>> classes;
  std::map<std::string, std::size_t> class_of;
  for (std::size_t i = 0; i < seq.tutors.size(); ++i) {
    auto [it, inserted] = class_of.try_emplace(seq.tutors[i], classes.size());
    if (inserted) classes.emplace_back();
    classes[it->second].push_back(i);
  }
  return classes;
}

}  // namespace

TEST_CASE("worked offset-encoding examples") {
  CHECK(encode_sequence(seq_of("aaaaaa")).values ==
        std::vector<int>{-1, 1, 1, 1, 1, 1});
  CHECK(encode_sequence(seq_of("aaabbb")).values ==
        std::vector<int>{-1, 1, 1, -1, 1, 1});
  CHECK(encode_sequence(seq_of("ababab")).values ==
        std::vector<int>{-1, -1, 2, 2, 2, 2});
  CHECK(encode_sequence(seq_of("abcabc")).values ==
        std::vector<int>{-1, -1, -1, 3, 3, 3});
  CHECK(encode_sequence(seq_of("abcdef")).values ==
        std::vector<int>{-1, -1, -1, -1, -1, -1});
}

TEST_CASE("encoding basics") {
  CHECK_THROWS_AS(encode_sequence(TutorshipSequence{}), std::invalid_argument);
  CHECK_THROWS_AS(encode_sequence(seq_of("ab"), 1), std::invalid_argument);
  // configurable new-tutor code
  CHECK(encode_sequence(seq_of("aba"), -5).values ==
        std::vector<int>{-5, -5, 2});
}

TEST_CASE("count of new-tutor codes equals unique tutors") {
  Rng rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    TutorshipSequence seq;
    seq.learner_id = "r";
    seq.tutors = test_helpers::random_tutors(rng, 1 + rng.uniform_int(12),
                                             1 + rng.uniform_int(5));
    const auto enc = encode_sequence(seq);
    const auto uniques = equality_partition(seq).size();
    CHECK(static_cast<std::size_t>(
              std::count(enc.values.begin(), enc.values.end(), -1)) == uniques);
  }
}

TEST_CASE("encoding is invariant under tutor relabeling") {
  Rng rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    TutorshipSequence seq;
    seq.learner_id = "r";
    seq.tutors = test_helpers::random_tutors(rng, 2 + rng.uniform_int(10),
                                             1 + rng.uniform_int(5));
    // random injective relabeling a..e -> new names
    std::map<std::string, std::string> relabel;
    std::vector<std::string> names = {"v", "w", "x", "y", "z"};
    for (std::size_t i = names.size(); i > 1; --i) {
      std::swap(names[i - 1], names[rng.uniform_int(i)]);
    }
    TutorshipSequence renamed = seq;
    for (auto& t : renamed.tutors) {
      auto [it, inserted] =
          relabel.try_emplace(t, names[relabel.size() % names.size()]);
      t = it->second;
    }
    CHECK(encode_sequence(seq).values == encode_sequence(renamed).values);
  }
}

TEST_CASE("recover_partition inverts the encoding") {
  CHECK(recover_partition(enc_of({-1, 1, 1})) ==
        std::vector<std::vector<std::size_t>>{{0, 1, 2}});
  CHECK(recover_partition(enc_of({-1, -1, 2, 2})) ==
        std::vector<std::vector<std::size_t>>{{0, 2}, {1, 3}});
  CHECK(recover_partition(encode_sequence(seq_of("abab"))) ==
        equality_partition(seq_of("abab")));
}

TEST_CASE("recover_partition rejects malformed encodings") {
  CHECK_THROWS_WITH_AS(recover_partition(enc_of({-1, 3, 1})),
                       doctest::Contains("before the start"), ValidationError);
  CHECK_THROWS_AS(recover_partition(enc_of({-1, 0})), ValidationError);
  CHECK_THROWS_AS(recover_partition(enc_of({-1, -2})), ValidationError);
  // offset that skips the more recent occurrence of the same tutor
  CHECK_THROWS_WITH_AS(recover_partition(enc_of({-1, 1, 2})),
                       doctest::Contains("more recent"), ValidationError);
}

TEST_CASE("round-trip over every sequence, alphabet <= 3, length <= 6") {
  for (std::size_t length = 1; length <= 6; ++length) {
    for (const auto& digits : test_helpers::all_sequences(length, 3)) {
      const auto seq = test_helpers::to_sequence(digits);
      CHECK(recover_partition(encode_sequence(seq)) ==
            equality_partition(seq));
    }
  }
}

TEST_CASE("archetype labeling rule") {
  CHECK(label_archetype(enc_of({-1, -1, -1, -1})) == Archetype::diverse);
  // terminal run 4 >= max(2, ceil(0.4 * 7)) = 3
  CHECK(label_archetype(enc_of({-1, -1, -1, 1, 1, 1, 1})) == Archetype::fixed);
  CHECK(label_archetype(enc_of({-1, -1, 2, -1, 2})) == Archetype::mixed);
  // terminal run 2 < 3 = ceil(0.4 * 7): not fixed
  CHECK(label_archetype(enc_of({-1, -1, -1, -1, -1, 1, 1})) ==
        Archetype::mixed);
  // run exactly at the threshold
  CHECK(label_archetype(enc_of({-1, 1, 1})) == Archetype::fixed);
  CHECK(label_archetype(enc_of({-1, 1})) == Archetype::mixed);
  CHECK_THROWS_AS(label_archetype(enc_of({-1})), std::invalid_argument);
}
