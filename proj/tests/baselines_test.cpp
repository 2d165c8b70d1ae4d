#include <doctest.h>

#include "ahpeval/baselines.hpp"
#include "ahpeval/error.hpp"
#include "ahpeval/fixture.hpp"
#include "ahpeval/metrics.hpp"
#include "ahpeval/oracle.hpp"
#include "helpers.hpp"

using namespace ahpeval;

TEST_CASE("pairwise baseline matches the Table-2 call count and recovers order") {
  ResponseSet ds = helpers::synthetic_dataset(10);
  helpers::attach_ranking_truth(ds);
  OracleBackend oracle(helpers::ordered_profile(ds));
  CountingBackend counter(oracle);
  JudgmentCache cache;

  BaselineResult result = pairwise_baseline(ds, counter, cache);
  CHECK(counter.compare_calls() == 45);  // n(n-1)/2
  CHECK(result.backend_calls == 45);
  CHECK(result.method == "pairwise");
  CHECK(result.records.size() == 45);

  // Strictly ordered hidden quality: eigenvector scores follow it.
  for (std::size_t i = 1; i < ds.size(); ++i)
    CHECK(result.scores[i - 1] > result.scores[i]);

  std::map<std::string, double> scores;
  for (std::size_t i = 0; i < ds.size(); ++i) scores[ds.at(i).id] = result.scores[i];
  CHECK(concordance_index(scores, *ds.ground_truth) == 1.0);
}

TEST_CASE("pairwise baseline with an all-ties oracle is uniform") {
  ResponseSet ds = helpers::synthetic_dataset(6);
  OracleProfile profile;
  for (std::size_t i = 0; i < ds.size(); ++i) profile.quality[ds.at(i).id] = {0.5};
  OracleBackend oracle(profile);
  JudgmentCache cache;

  BaselineResult result = pairwise_baseline(ds, oracle, cache);
  for (double s : result.scores)
    CHECK(s == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("scoring baseline parses integers out of varied phrasings") {
  ResponseSet ds = helpers::synthetic_dataset(20);
  FixtureBackend backend;
  const char* phrasings[20] = {
      "85",
      "Score: 90/100",
      "I would give this 72 out of 100.",
      "73/100",
      "Rating: 41",
      "The answer deserves 55 points.",
      "award it 67",
      "Final score: 88.",
      "0",
      "100",
      "score=64",
      "My assessment: 77 of 100 possible points",
      "I rate it 58.",
      "Quality: 91 (well argued)",
      "This one earns a 49",
      "grade: 33/100",
      "Verdict - 29",
      "score 12",
      "a solid 95",
      "just 7 points",
  };
  const double expected[20] = {85, 90, 72, 73, 41, 55, 67, 88, 0,  100,
                               64, 77, 58, 91, 49, 33, 29, 12, 95, 7};
  for (const char* p : phrasings) backend.push("score", p);

  BaselineResult result = scoring_baseline(ds, backend);
  CHECK(result.backend_calls == 20);  // Table 2: n
  for (std::size_t i = 0; i < 20; ++i) CHECK(result.scores[i] == expected[i]);
}

TEST_CASE("scoring baseline re-prompts once, then fails naming the response") {
  ResponseSet ds = helpers::synthetic_dataset(2);

  SUBCASE("recovers after an out-of-range reply") {
    FixtureBackend backend;
    backend.push("score", "150");  // out of range
    backend.push("score", "75");   // re-prompt lands
    backend.push("score", "60");
    BaselineResult result = scoring_baseline(ds, backend);
    CHECK(result.scores[0] == 75);
    CHECK(result.backend_calls == 3);
  }
  SUBCASE("negative numbers are out of range, not clamped") {
    FixtureBackend backend;
    backend.push("score", "-5");
    backend.push("score", "still -45, sorry");
    CHECK_THROWS_AS(scoring_baseline(ds, backend), ParseError);
  }
  SUBCASE("fails with the id in the message") {
    FixtureBackend backend;
    backend.push("score", "no number");
    backend.push("score", "still none");
    CHECK_THROWS_WITH_AS(scoring_baseline(ds, backend), doctest::Contains("r0"),
                         ParseError);
  }
}

TEST_CASE("few-shot baseline in levels mode") {
  ResponseSet ds = helpers::synthetic_dataset(12);
  helpers::attach_levels_truth(ds, 4);  // levels 4..1, three responses each

  int lo = 0, hi = 0;
  std::vector<Exemplar> exemplars = build_exemplars(ds, lo, hi);
  CHECK(lo == 1);
  CHECK(hi == 4);
  REQUIRE(exemplars.size() == 8);  // two per level
  CHECK(exemplars.front().level == 1);
  CHECK(exemplars.back().level == 4);

  FixtureBackend backend;
  for (std::size_t i = 0; i < ds.size(); ++i) backend.push("level", "Level 3");
  BaselineResult result = few_shot_baseline(ds, backend);
  CHECK(result.backend_calls == 12);  // Table 2: n, exemplars scored too
  for (double s : result.scores) CHECK(s == 3);
}

TEST_CASE("few-shot baseline in ranking mode picks boundary exemplars") {
  ResponseSet ds = helpers::synthetic_dataset(80);
  helpers::attach_ranking_truth(ds);

  int lo = 0, hi = 0;
  std::vector<Exemplar> exemplars = build_exemplars(ds, lo, hi);
  REQUIRE(exemplars.size() == 8);
  CHECK(lo == 1);
  CHECK(hi == 4);
  // Best pair (ranks 1,2) -> level 4; boundaries floor(0.33*80)=26 and
  // floor(0.66*80)=52 -> levels 3 and 2; worst pair (79,80) -> level 1.
  // Ascending level order, rank order within each group.
  CHECK(exemplars[0].text == ds.at(78).text);  // rank 79
  CHECK(exemplars[1].text == ds.at(79).text);  // rank 80
  CHECK(exemplars[2].text == ds.at(50).text);  // rank 51
  CHECK(exemplars[3].text == ds.at(51).text);  // rank 52
  CHECK(exemplars[4].text == ds.at(24).text);  // rank 25
  CHECK(exemplars[5].text == ds.at(25).text);  // rank 26
  CHECK(exemplars[6].text == ds.at(0).text);   // rank 1
  CHECK(exemplars[7].text == ds.at(1).text);   // rank 2
  CHECK(exemplars[0].level == 1);
  CHECK(exemplars[7].level == 4);
}

TEST_CASE("few-shot baseline needs usable ground truth") {
  ResponseSet no_truth = helpers::synthetic_dataset(6);
  FixtureBackend backend;
  CHECK_THROWS_WITH_AS(few_shot_baseline(no_truth, backend),
                       doctest::Contains("ground truth"), ValidationError);

  // A level with fewer than two responses cannot provide exemplars.
  ResponseSet sparse = helpers::synthetic_dataset(5);
  GroundTruth truth;
  truth.mode = TruthMode::levels;
  truth.values = {{sparse.at(0).id, 4}, {sparse.at(1).id, 3}, {sparse.at(2).id, 3},
                  {sparse.at(3).id, 2}, {sparse.at(4).id, 2}};
  sparse.ground_truth = truth;
  CHECK_THROWS_WITH_AS(few_shot_baseline(sparse, backend),
                       doctest::Contains("level 4"), ValidationError);

  // Overlapping rank groups on a tiny ranking dataset.
  ResponseSet tiny = helpers::synthetic_dataset(6);
  helpers::attach_ranking_truth(tiny);
  CHECK_THROWS_AS(few_shot_baseline(tiny, backend), ValidationError);
}

TEST_CASE("cefr baseline maps bracket labels to ordinals") {
  ResponseSet ds = helpers::synthetic_dataset(4);
  helpers::attach_levels_truth(ds, 4);

  FixtureBackend backend;
  backend.push("cefr", "B2");
  backend.push("cefr", "The writing sits at level A2 overall.");
  backend.push("cefr", "C1");
  backend.push("cefr", "3");
  BaselineResult result = cefr_baseline(ds, backend);
  CHECK(result.backend_calls == 4);  // Table 2: n
  CHECK(result.scores == std::vector<double>{3, 1, 4, 3});
  CHECK(result.method == "cefr-level");
}

TEST_CASE("cefr baseline rejects non-essay datasets") {
  FixtureBackend backend;

  ResponseSet ranking = helpers::synthetic_dataset(4);
  helpers::attach_ranking_truth(ranking);
  CHECK_THROWS_AS(cefr_baseline(ranking, backend), ValidationError);

  ResponseSet untyped = helpers::synthetic_dataset(4);
  CHECK_THROWS_AS(cefr_baseline(untyped, backend), ValidationError);
}

TEST_CASE("cefr baseline re-prompts and errors without a recognizable level") {
  ResponseSet ds = helpers::synthetic_dataset(2);
  helpers::attach_levels_truth(ds, 2);
  FixtureBackend backend;
  backend.push("cefr", "no level at all");
  backend.push("cefr", "B9 is not in the bracket");
  CHECK_THROWS_AS(cefr_baseline(ds, backend), ParseError);
}

TEST_CASE("oracle serves every baseline deterministically") {
  ResponseSet ds = helpers::synthetic_dataset(8);
  helpers::attach_levels_truth(ds, 4);
  OracleBackend oracle(helpers::ordered_profile(ds));

  BaselineResult scoring = scoring_baseline(ds, oracle);
  CHECK(scoring.scores.front() == 100);
  CHECK(scoring.scores.back() == 0);
  for (std::size_t i = 1; i < ds.size(); ++i)
    CHECK(scoring.scores[i - 1] >= scoring.scores[i]);

  BaselineResult few_shot = few_shot_baseline(ds, oracle);
  for (double s : few_shot.scores) {
    CHECK(s >= 1);
    CHECK(s <= 4);
  }

  BaselineResult cefr = cefr_baseline(ds, oracle);
  BaselineResult cefr_again = cefr_baseline(ds, oracle);
  CHECK(cefr.scores == cefr_again.scores);
}
