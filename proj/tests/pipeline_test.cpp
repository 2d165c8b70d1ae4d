#include <filesystem>
#include <fstream>

#include <doctest.h>

#include "ahpeval/cache.hpp"
#include "ahpeval/error.hpp"
#include "ahpeval/oracle.hpp"
#include "ahpeval/pipeline.hpp"
#include "helpers.hpp"

using namespace ahpeval;

namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("ahpeval_test_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

CriterionSet plain_criteria(std::size_t k) {
  CriterionSet set;
  for (std::size_t i = 0; i < k; ++i)
    set.labels.push_back("criterion " + std::to_string(i + 1));
  return set;
}

std::string file_bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("pair enumeration is lexicographic with the exact count") {
  auto two = enumerate_pairs(2);
  REQUIRE(two.size() == 1);
  CHECK(two[0] == std::pair<std::size_t, std::size_t>{0, 1});

  auto many = enumerate_pairs(80);
  CHECK(many.size() == 3160);
  CHECK(many.front() == std::pair<std::size_t, std::size_t>{0, 1});
  CHECK(many.back() == std::pair<std::size_t, std::size_t>{78, 79});
  for (std::size_t p = 1; p < many.size(); ++p) CHECK(many[p - 1] < many[p]);

  CHECK_THROWS_AS(enumerate_pairs(1), ValidationError);
  CHECK(enumerate_pairs(80).size() * 10 == 31600);  // k = 10 evaluation cells
}

TEST_CASE("fresh run makes exactly k*n*(n-1)/2 backend calls") {
  ResponseSet ds = helpers::synthetic_dataset(10);
  helpers::attach_ranking_truth(ds);
  OracleBackend oracle(helpers::ordered_profile(ds));
  CountingBackend counter(oracle);
  JudgmentCache cache;  // memory-only

  EvaluationOutcome outcome =
      run_evaluation(ds, plain_criteria(3), counter, cache);
  CHECK(counter.compare_calls() == 135);
  CHECK(outcome.backend_calls == 135);
  CHECK(outcome.cache_hits == 0);
  CHECK(outcome.records.size() == 135);
  CHECK(outcome.run.status == "complete");
  CHECK(outcome.run.cells_total == 135);
}

TEST_CASE("noiseless ordered oracle recovers the hidden order") {
  ResponseSet ds = helpers::synthetic_dataset(12);
  helpers::attach_ranking_truth(ds);
  OracleBackend oracle(helpers::ordered_profile(ds));
  JudgmentCache cache;

  EvaluationOutcome outcome = run_evaluation(ds, plain_criteria(3), oracle, cache);
  for (std::size_t i = 0; i < ds.size(); ++i)
    CHECK(outcome.finals.ranking[i] == i);  // dataset order is the quality order
}

TEST_CASE("warm cache replays the run with zero backend calls") {
  TempDir tmp;
  ResponseSet ds = helpers::synthetic_dataset(8);
  OracleBackend oracle(helpers::ordered_profile(ds));
  CriterionSet criteria = plain_criteria(3);
  fs::path cache_path = tmp.path / "cache.jsonl";

  FinalScores first;
  {
    JudgmentCache cache(cache_path);
    CountingBackend counter(oracle);
    first = run_evaluation(ds, criteria, counter, cache).finals;
    CHECK(counter.compare_calls() == 84);
  }
  std::string bytes_after_first = file_bytes(cache_path);

  {
    JudgmentCache cache(cache_path);
    CountingBackend counter(oracle);
    EvaluationOutcome again = run_evaluation(ds, criteria, counter, cache);
    CHECK(counter.compare_calls() == 0);
    CHECK(again.backend_calls == 0);
    CHECK(again.cache_hits == 84);
    CHECK(again.finals.scores == first.scores);
    CHECK(again.finals.ranking == first.ranking);
  }
  // Cache idempotence: the warm re-run appends nothing.
  CHECK(file_bytes(cache_path) == bytes_after_first);
}

TEST_CASE("interrupted run resumes with exactly the missing calls") {
  TempDir tmp;
  ResponseSet ds = helpers::synthetic_dataset(10);
  OracleBackend oracle(helpers::ordered_profile(ds));
  CriterionSet criteria = plain_criteria(3);
  fs::path cache_path = tmp.path / "cache.jsonl";
  fs::path state_path = tmp.path / "run_state.json";

  PipelineConfig sequential;
  sequential.in_flight = 1;  // deterministic failure point

  {
    JudgmentCache cache(cache_path);
    helpers::FlakyBackend flaky(oracle, 50);
    CHECK_THROWS_AS(
        run_evaluation(ds, criteria, flaky, cache, sequential, state_path),
        BackendError);
    CHECK(cache.size() == 50);
    EvaluationRun state = load_run_state(state_path);
    CHECK(state.status == "partial");
    CHECK(state.cells_completed == 50);
  }

  FinalScores resumed;
  {
    JudgmentCache cache(cache_path);
    CountingBackend counter(oracle);
    EvaluationOutcome outcome =
        resume(state_path, ds, criteria, counter, cache, sequential);
    CHECK(counter.compare_calls() == 85);
    CHECK(outcome.cache_hits == 50);
    CHECK(outcome.run.status == "complete");
    resumed = outcome.finals;
  }

  // Identical to an uninterrupted run.
  JudgmentCache fresh_cache;
  FinalScores direct = run_evaluation(ds, criteria, oracle, fresh_cache).finals;
  CHECK(resumed.scores == direct.scores);
  CHECK(resumed.ranking == direct.ranking);
}

TEST_CASE("resume of a completed run makes no calls") {
  TempDir tmp;
  ResponseSet ds = helpers::synthetic_dataset(6);
  OracleBackend oracle(helpers::ordered_profile(ds));
  CriterionSet criteria = plain_criteria(2);
  fs::path cache_path = tmp.path / "cache.jsonl";
  fs::path state_path = tmp.path / "run_state.json";

  {
    JudgmentCache cache(cache_path);
    run_evaluation(ds, criteria, oracle, cache, {}, state_path);
  }
  JudgmentCache cache(cache_path);
  CountingBackend counter(oracle);
  EvaluationOutcome outcome = resume(state_path, ds, criteria, counter, cache);
  CHECK(counter.compare_calls() == 0);
  CHECK(outcome.backend_calls == 0);
}

TEST_CASE("resume refuses changed inputs with a digest diff") {
  TempDir tmp;
  ResponseSet ds = helpers::synthetic_dataset(6);
  OracleBackend oracle(helpers::ordered_profile(ds));
  CriterionSet criteria = plain_criteria(2);
  fs::path state_path = tmp.path / "run_state.json";

  {
    JudgmentCache cache;
    run_evaluation(ds, criteria, oracle, cache, {}, state_path);
  }

  CriterionSet edited = criteria;
  edited.labels[0] = "criterion 1 (edited)";
  JudgmentCache cache;
  CHECK_THROWS_WITH_AS(resume(state_path, ds, edited, oracle, cache),
                       doctest::Contains("criteria digest"), ConfigError);
  CHECK_THROWS_AS(resume(tmp.path / "absent.json", ds, criteria, oracle, cache),
                  ConfigError);
}

TEST_CASE("cache loading drops only a corrupt trailing line") {
  TempDir tmp;
  ResponseSet ds = helpers::synthetic_dataset(4);
  OracleBackend oracle(helpers::ordered_profile(ds));
  fs::path cache_path = tmp.path / "cache.jsonl";

  {
    JudgmentCache cache(cache_path);
    run_evaluation(ds, plain_criteria(1), oracle, cache);
    CHECK(cache.size() == 6);
  }

  SUBCASE("partial trailing write") {
    std::ofstream(cache_path, std::ios::app) << "{\"key\": \"tru";
    JudgmentCache cache(cache_path);
    CHECK(cache.size() == 6);
  }
  SUBCASE("corruption in the middle is an error") {
    std::string bytes = file_bytes(cache_path);
    std::ofstream out(cache_path, std::ios::trunc | std::ios::binary);
    out << "not json\n" << bytes;
    out.close();
    CHECK_THROWS_AS(JudgmentCache{cache_path}, CacheError);
  }
  SUBCASE("tampered parsed field is rejected") {
    std::string bytes = file_bytes(cache_path);
    std::size_t pos = bytes.find("\"parsed\":\"");
    REQUIRE(pos != std::string::npos);
    // Force a parsed value that cannot re-derive from the raw letter.
    std::string tampered = bytes;
    std::size_t value_at = pos + std::string("\"parsed\":\"").size();
    std::size_t value_end = tampered.find('"', value_at);
    tampered.replace(value_at, value_end - value_at,
                     bytes.substr(value_at, value_end - value_at) == "tie"
                         ? "first_much_better"
                         : "tie");
    std::ofstream(cache_path, std::ios::trunc | std::ios::binary) << tampered;
    CHECK_THROWS_AS(JudgmentCache{cache_path}, CacheError);
  }
}

TEST_CASE("cached cells survive a backend failure on a later criterion") {
  ResponseSet ds = helpers::synthetic_dataset(6);
  OracleBackend oracle(helpers::ordered_profile(ds));
  JudgmentCache cache;
  PipelineConfig sequential;
  sequential.in_flight = 1;

  helpers::FlakyBackend flaky(oracle, 20);  // criterion 1 complete (15), criterion 2 partial
  CHECK_THROWS_AS(
      run_evaluation(ds, plain_criteria(3), flaky, cache, sequential), BackendError);
  CHECK(cache.size() == 20);
}

TEST_CASE("concurrent scheduling matches the sequential result") {
  ResponseSet ds = helpers::synthetic_dataset(9);
  OracleBackend oracle(helpers::ordered_profile(ds));
  CriterionSet criteria = plain_criteria(4);

  JudgmentCache cache_seq, cache_par;
  PipelineConfig sequential;
  sequential.in_flight = 1;
  PipelineConfig parallel;
  parallel.in_flight = 4;

  FinalScores a = run_evaluation(ds, criteria, oracle, cache_seq, sequential).finals;
  FinalScores b = run_evaluation(ds, criteria, oracle, cache_par, parallel).finals;
  CHECK(a.scores == b.scores);
  CHECK(a.ranking == b.ranking);
}

TEST_CASE("literal scale convention changes the losing-side entries") {
  // Response 0 is the worst, so every canonical pair favors the second
  // answer: (0,1) is a strong loss for the first answer.
  ResponseSet ds = helpers::synthetic_dataset(4);
  OracleProfile profile;
  for (std::size_t i = 0; i < ds.size(); ++i)
    profile.quality[ds.at(i).id] = {static_cast<double>(i) / 3.0};
  OracleBackend oracle(profile);

  PipelineConfig reciprocal;
  JudgmentCache cache_r;
  EvaluationOutcome r = run_evaluation(ds, plain_criteria(1), oracle, cache_r, reciprocal);
  CHECK(r.tensor.slice(0).at(0, 1) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(r.tensor.slice(0).at(1, 0) == 5.0);

  PipelineConfig literal;
  literal.convention = ScaleConvention::literal;
  JudgmentCache cache_l;
  EvaluationOutcome l = run_evaluation(ds, plain_criteria(1), oracle, cache_l, literal);
  CHECK(l.tensor.slice(0).at(0, 1) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(l.tensor.slice(0).at(1, 0) == 3.0);
  l.tensor.slice(0).validate();  // still reciprocal as a matrix
}

TEST_CASE("run state round-trips") {
  EvaluationRun run;
  run.run_id = "abc";
  run.dataset_digest = "d1";
  run.criteria_digest = "c1";
  run.backend_id = "oracle";
  run.model_id = "scripted";
  run.template_version = "pv1";
  run.cells_total = 10;
  run.cells_completed = 4;
  run.status = "partial";
  EvaluationRun reloaded = run_from_json(run_to_json(run));
  CHECK(reloaded.run_id == "abc");
  CHECK(reloaded.cells_completed == 4);
  CHECK(reloaded.status == "partial");
}
