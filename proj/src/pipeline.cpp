#include "ahpeval/pipeline.hpp"

#include <atomic>
#include <chrono>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include "ahpeval/error.hpp"
#include "ahpeval/util.hpp"

namespace ahpeval {

using nlohmann::json;

std::vector<std::pair<std::size_t, std::size_t>> enumerate_pairs(std::size_t n) {
  if (n < 2)
    throw ValidationError("pair enumeration needs at least 2 responses, got " +
                          std::to_string(n));
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  return pairs;
}

json run_to_json(const EvaluationRun& run) {
  return json{{"run_id", run.run_id},
              {"dataset_digest", run.dataset_digest},
              {"criteria_digest", run.criteria_digest},
              {"backend", run.backend_id},
              {"model", run.model_id},
              {"template", run.template_version},
              {"config", run.config_snapshot},
              {"cells_total", run.cells_total},
              {"cells_completed", run.cells_completed},
              {"status", run.status},
              {"started", run.started},
              {"updated", run.updated}};
}

EvaluationRun run_from_json(const json& doc) {
  EvaluationRun run;
  try {
    run.run_id = doc.at("run_id").get<std::string>();
    run.dataset_digest = doc.at("dataset_digest").get<std::string>();
    run.criteria_digest = doc.at("criteria_digest").get<std::string>();
    run.backend_id = doc.at("backend").get<std::string>();
    run.model_id = doc.at("model").get<std::string>();
    run.template_version = doc.at("template").get<std::string>();
    run.config_snapshot = doc.value("config", json::object());
    run.cells_total = doc.at("cells_total").get<std::size_t>();
    run.cells_completed = doc.at("cells_completed").get<std::size_t>();
    run.status = doc.at("status").get<std::string>();
    run.started = doc.value("started", "");
    run.updated = doc.value("updated", "");
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed run-state document: ") + e.what());
  }
  return run;
}

void save_run_state(const EvaluationRun& run, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write run state to " + path.string());
  out << run_to_json(run).dump(2) << "\n";
}

EvaluationRun load_run_state(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("no run state at " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": invalid JSON: " + e.what());
  }
  return run_from_json(doc);
}

namespace {

// Minimum-interval pacing shared by all workers.
class RateGate {
 public:
  explicit RateGate(double requests_per_minute) {
    if (requests_per_minute > 0.0)
      interval_ = std::chrono::duration<double>(60.0 / requests_per_minute);
  }

  void wait() {
    if (interval_.count() == 0.0) return;
    std::unique_lock<std::mutex> lock(mu_);
    auto now = std::chrono::steady_clock::now();
    if (now < next_) {
      auto until = next_;
      lock.unlock();
      std::this_thread::sleep_until(until);
      lock.lock();
      now = std::chrono::steady_clock::now();
    }
    next_ = now + std::chrono::duration_cast<std::chrono::steady_clock::duration>(interval_);
  }

 private:
  std::chrono::duration<double> interval_{0.0};
  std::mutex mu_;
  std::chrono::steady_clock::time_point next_ = std::chrono::steady_clock::now();
};

}  // namespace

ComparisonSchedule schedule_comparisons(
    const ResponseSet& dataset, const std::vector<std::optional<std::string>>& criteria,
    Backend& backend, JudgmentCache& cache, const PipelineConfig& config) {
  dataset.validate();
  if (criteria.empty()) throw ValidationError("no criteria to schedule");
  if (config.in_flight < 1) throw ConfigError("in-flight limit must be at least 1");

  const auto pairs = enumerate_pairs(dataset.size());
  const std::size_t per_criterion = pairs.size();

  ComparisonSchedule schedule;
  schedule.records.reserve(criteria.size() * per_criterion);
  RateGate gate(config.requests_per_minute);

  for (std::size_t c = 0; c < criteria.size(); ++c) {
    // Resolve cache hits first, then dispatch the missing cells.
    struct Cell {
      std::size_t pair_index;
      JudgeRequest request;
      std::string key;
    };
    std::vector<std::optional<JudgeRecord>> resolved(per_criterion);
    std::vector<Cell> missing;
    for (std::size_t p = 0; p < per_criterion; ++p) {
      const auto& [i, j] = pairs[p];
      JudgeRequest request{criteria[c], dataset.question, dataset.at(i).id,
                           dataset.at(j).id, dataset.at(i).text, dataset.at(j).text};
      std::string key = judgment_cache_key(backend, request);
      if (auto hit = cache.find(key)) {
        resolved[p] = std::move(*hit);
        ++schedule.cache_hits;
      } else {
        missing.push_back({p, std::move(request), std::move(key)});
      }
    }

    std::vector<std::optional<JudgeRecord>> fresh(missing.size());
    std::vector<std::exception_ptr> failures(missing.size());
    if (!missing.empty()) {
      std::atomic<std::size_t> next{0};
      std::atomic<bool> failed{false};
      std::atomic<std::size_t> done{0};
      std::mutex progress_mu;

      auto worker = [&]() {
        while (!failed.load()) {
          std::size_t idx = next.fetch_add(1);
          if (idx >= missing.size()) return;
          try {
            gate.wait();
            fresh[idx] = compare(backend, missing[idx].request);
            std::size_t completed = done.fetch_add(1) + 1;
            if (config.progress) {
              std::lock_guard<std::mutex> lock(progress_mu);
              std::cerr << "criterion " << (c + 1) << "/" << criteria.size() << ", pair "
                        << completed << "/" << missing.size() << "\n";
            }
          } catch (...) {
            failures[idx] = std::current_exception();
            failed.store(true);
            return;
          }
        }
      };

      std::size_t workers = std::min(config.in_flight, missing.size());
      if (workers <= 1) {
        worker();
      } else {
        std::vector<std::thread> threads;
        threads.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
      }
    }

    // Persist every completed cell before surfacing a failure so an
    // aborted run resumes exactly where it stopped.
    std::exception_ptr first_failure;
    for (std::size_t m = 0; m < missing.size(); ++m) {
      if (fresh[m]) {
        cache.append(*fresh[m]);
        ++schedule.backend_calls;
        resolved[missing[m].pair_index] = std::move(fresh[m]);
      } else if (failures[m] && !first_failure) {
        first_failure = failures[m];
      }
    }
    if (first_failure) std::rethrow_exception(first_failure);

    for (auto& record : resolved) schedule.records.push_back(std::move(*record));
  }
  return schedule;
}

namespace {

EvaluationRun make_run(const ResponseSet& dataset, const CriterionSet& criteria,
                       Backend& backend, const PipelineConfig& config) {
  EvaluationRun run;
  run.dataset_digest = dataset_digest(dataset);
  run.criteria_digest = criteria_digest(criteria);
  run.backend_id = backend.backend_id();
  run.model_id = backend.model_id();
  run.template_version = backend.template_version();
  run.run_id = hex_digest(join_fields({run.dataset_digest, run.criteria_digest,
                                       run.backend_id, run.model_id,
                                       run.template_version}));
  run.config_snapshot = json{
      {"in_flight", config.in_flight},
      {"scale_convention",
       config.convention == ScaleConvention::reciprocal ? "reciprocal" : "literal"},
      {"requests_per_minute", config.requests_per_minute}};
  run.cells_total = criteria.size() * dataset.size() * (dataset.size() - 1) / 2;
  run.started = iso8601_utc_now();
  run.updated = run.started;
  run.status = "partial";
  return run;
}

std::size_t count_completed(const ResponseSet& dataset, const CriterionSet& criteria,
                            Backend& backend, JudgmentCache& cache) {
  std::size_t completed = 0;
  for (const auto& label : criteria.labels) {
    for (const auto& [i, j] : enumerate_pairs(dataset.size())) {
      std::string key =
          judgment_cache_key(backend.backend_id(), backend.model_id(),
                             backend.template_version(), label, dataset.question,
                             dataset.at(i).id, dataset.at(j).id);
      if (cache.find(key)) ++completed;
    }
  }
  return completed;
}

}  // namespace

EvaluationOutcome run_evaluation(const ResponseSet& dataset, const CriterionSet& criteria,
                                 Backend& backend, JudgmentCache& cache,
                                 const PipelineConfig& config,
                                 const std::filesystem::path& run_state_path) {
  dataset.validate();
  criteria.validate();

  EvaluationRun run = make_run(dataset, criteria, backend, config);
  if (!run_state_path.empty()) save_run_state(run, run_state_path);

  std::vector<std::optional<std::string>> labels;
  labels.reserve(criteria.size());
  for (const auto& label : criteria.labels) labels.emplace_back(label);

  ComparisonSchedule schedule;
  try {
    schedule = schedule_comparisons(dataset, labels, backend, cache, config);
  } catch (...) {
    if (!run_state_path.empty()) {
      run.cells_completed = count_completed(dataset, criteria, backend, cache);
      run.updated = iso8601_utc_now();
      save_run_state(run, run_state_path);
    }
    throw;
  }

  // Assemble tensor slices from the parsed judgments, criteria-major.
  const auto pairs = enumerate_pairs(dataset.size());
  std::vector<PairwiseMatrix> slices;
  slices.reserve(criteria.size());
  for (std::size_t c = 0; c < criteria.size(); ++c) {
    std::vector<PairJudgment> judgments;
    judgments.reserve(pairs.size());
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      judgments.push_back({pairs[p].first, pairs[p].second,
                           schedule.records[c * pairs.size() + p].parsed});
    }
    slices.push_back(build_comparison_matrix(judgments, dataset.size(), config.convention));
  }
  ComparisonTensor tensor = ComparisonTensor::from_slices(std::move(slices));

  FinalScores finals =
      aggregate_scores(criterion_scores(tensor), criteria_weights(criteria.size()));

  run.cells_completed = run.cells_total;
  run.status = "complete";
  run.updated = iso8601_utc_now();
  if (!run_state_path.empty()) save_run_state(run, run_state_path);

  return EvaluationOutcome{std::move(tensor), std::move(finals),    std::move(run),
                           std::move(schedule.records), schedule.backend_calls,
                           schedule.cache_hits};
}

EvaluationOutcome resume(const std::filesystem::path& run_state_path,
                         const ResponseSet& dataset, const CriterionSet& criteria,
                         Backend& backend, JudgmentCache& cache,
                         const PipelineConfig& config) {
  EvaluationRun previous = load_run_state(run_state_path);

  std::string diff;
  auto check = [&diff](const std::string& field, const std::string& expected,
                       const std::string& actual) {
    if (expected != actual)
      diff += "  " + field + ": run state has " + expected + ", current input is " +
              actual + "\n";
  };
  check("dataset digest", previous.dataset_digest, dataset_digest(dataset));
  check("criteria digest", previous.criteria_digest, criteria_digest(criteria));
  check("backend", previous.backend_id, backend.backend_id());
  check("model", previous.model_id, backend.model_id());
  check("template version", previous.template_version, backend.template_version());
  if (!diff.empty())
    throw ConfigError("cannot resume run " + previous.run_id +
                      ": configuration mismatch\n" + diff);

  return run_evaluation(dataset, criteria, backend, cache, config, run_state_path);
}

}  // namespace ahpeval
