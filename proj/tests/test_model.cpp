#include <doctest.h>

#include <algorithm>
#include <limits>
#include <set>

#include "tutorkit/model.hpp"
#include "tutorkit/rng.hpp"

using namespace tutorkit;

namespace {

SessionRecord row(const std::string& learner, int index,
                  const std::string& tutor) {
  SessionRecord r;
  r.learner_id = learner;
  r.session_index = index;
  r.tutor_id = tutor;
  return r;
}

}  // namespace

TEST_CASE("ingest groups sessions into ordered learner records") {
  const auto result =
      ingest({row("X", 2, "b"), row("X", 1, "a"), row("X", 3, "a")});
  REQUIRE(result.records.size() == 1);
  const LearnerRecord& rec = result.records[0];
  CHECK(rec.sequence.tutors == std::vector<std::string>{"a", "b", "a"});
  CHECK(rec.n_sessions == 3);
  CHECK(rec.n_tutors == 2);
  CHECK(result.flagged_learners.empty());
}

TEST_CASE("ingest of empty input is empty") {
  const auto result = ingest({});
  CHECK(result.records.empty());
  CHECK(result.flagged_learners.empty());
}

TEST_CASE("ingest rejects duplicate session indices naming the row") {
  std::vector<SessionRecord> rows = {row("X", 1, "a"), row("Y", 1, "c"),
                                     row("X", 1, "b")};
  CHECK_THROWS_WITH_AS(ingest(rows),
                       doctest::Contains("duplicate session_index 1"),
                       ValidationError);
  CHECK_THROWS_WITH_AS(ingest(rows), doctest::Contains("row 3"),
                       ValidationError);
}

TEST_CASE("ingest rejects bad rows") {
  CHECK_THROWS_AS(ingest({row("X", 0, "a")}), ValidationError);
  CHECK_THROWS_AS(ingest({row("X", 1, "")}), ValidationError);
  SessionRecord bad = row("X", 1, "a");
  bad.scores[0] = std::numeric_limits<double>::infinity();
  CHECK_THROWS_WITH_AS(ingest({bad}), doctest::Contains("non-finite"),
                       ValidationError);
}

TEST_CASE("ingest flags learners with fewer than two sessions") {
  const auto result = ingest({row("X", 1, "a"), row("Y", 1, "a"),
                              row("Y", 2, "b")});
  REQUIRE(result.records.size() == 2);
  CHECK(result.flagged_learners == std::vector<std::string>{"X"});
}

TEST_CASE("ingest is insensitive to input row order") {
  std::vector<SessionRecord> rows;
  Rng rng(11);
  for (int learner = 0; learner < 5; ++learner) {
    const int n = 2 + static_cast<int>(rng.uniform_int(6));
    for (int s = 1; s <= n; ++s) {
      SessionRecord r = row("L" + std::to_string(learner), s,
                            "t" + std::to_string(rng.uniform_int(3)));
      r.scores[1] = static_cast<double>(rng.uniform_int(100));
      rows.push_back(r);
    }
  }
  auto shuffled = rows;
  // Fisher-Yates with the deterministic rng
  for (std::size_t i = shuffled.size(); i > 1; --i) {
    std::swap(shuffled[i - 1], shuffled[rng.uniform_int(i)]);
  }
  const auto a = ingest(rows);
  const auto b = ingest(shuffled);
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].sequence.learner_id == b.records[i].sequence.learner_id);
    CHECK(a.records[i].sequence.tutors == b.records[i].sequence.tutors);
    for (Skill s : kAllSkills) {
      const auto& pa = a.records[i].series[static_cast<std::size_t>(s)].points;
      const auto& pb = b.records[i].series[static_cast<std::size_t>(s)].points;
      REQUIRE(pa.size() == pb.size());
      for (std::size_t p = 0; p < pa.size(); ++p) {
        CHECK(pa[p].session_index == pb[p].session_index);
        CHECK(pa[p].score == pb[p].score);
      }
    }
  }
}

TEST_CASE("session_tutor_ratio formula cases") {
  auto ratio_of = [](const std::vector<std::string>& tutors) {
    std::vector<SessionRecord> rows;
    for (std::size_t i = 0; i < tutors.size(); ++i) {
      rows.push_back(row("X", static_cast<int>(i) + 1, tutors[i]));
    }
    return session_tutor_ratio(ingest(rows).records.at(0));
  };
  CHECK(ratio_of({"a", "b", "c", "b", "c"}) == doctest::Approx(5.0 / 3.0));
  CHECK(ratio_of({"a", "a", "a", "a"}) == doctest::Approx(4.0));
  CHECK(ratio_of({"a", "b", "c", "d", "e", "f"}) == doctest::Approx(1.0));
}

TEST_CASE("session_tutor_ratio is >= 1, = 1 iff all tutors distinct") {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.uniform_int(12);
    std::vector<SessionRecord> rows;
    std::set<std::string> unique;
    for (std::size_t i = 0; i < n; ++i) {
      const std::string tutor = "t" + std::to_string(rng.uniform_int(6));
      unique.insert(tutor);
      rows.push_back(row("X", static_cast<int>(i) + 1, tutor));
    }
    const double ratio = session_tutor_ratio(ingest(rows).records.at(0));
    CHECK(ratio >= 1.0);
    CHECK((ratio == 1.0) == (unique.size() == n));
  }
}

TEST_CASE("scoreless sessions stay in the sequence but not the series") {
  SessionRecord with_score = row("X", 1, "a");
  with_score.scores[static_cast<std::size_t>(Skill::grammar)] = 55.0;
  const auto result = ingest({with_score, row("X", 2, "b")});
  const LearnerRecord& rec = result.records.at(0);
  CHECK(rec.n_sessions == 2);
  CHECK(rec.series[static_cast<std::size_t>(Skill::grammar)].points.size() == 1);
  CHECK(rec.series[static_cast<std::size_t>(Skill::fluency)].points.empty());
}

TEST_CASE("config validation") {
  AnalysisConfig cfg = AnalysisConfig::defaults();
  CHECK_NOTHROW(cfg.validate());

  SUBCASE("overlapping buckets rejected") {
    cfg.session_range_buckets = {{2, 10}, {10, 20}};
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
  }
  SUBCASE("lower bound below 2 rejected") {
    cfg.session_range_buckets = {{1, 10}};
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
  }
  SUBCASE("descending buckets rejected") {
    cfg.session_range_buckets = {{21, 40}, {2, 20}};
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
  }
  SUBCASE("default stat buckets follow the 5-wide layout") {
    REQUIRE(cfg.session_range_buckets.size() == 21);
    CHECK(cfg.session_range_buckets.front() == Interval{2, 5});
    CHECK(cfg.session_range_buckets[1] == Interval{6, 10});
    CHECK(cfg.session_range_buckets[19] == Interval{96, 100});
    CHECK(cfg.session_range_buckets.back() == Interval{101, 499});
  }
}
