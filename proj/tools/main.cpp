#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ahpeval/baselines.hpp"
#include "ahpeval/criteria.hpp"
#include "ahpeval/dataset.hpp"
#include "ahpeval/error.hpp"
#include "ahpeval/fixture.hpp"
#include "ahpeval/llm_client.hpp"
#include "ahpeval/metrics.hpp"
#include "ahpeval/oracle.hpp"
#include "ahpeval/pipeline.hpp"
#include "ahpeval/report.hpp"

namespace {

using namespace ahpeval;
using nlohmann::json;

struct CliConfig {
  std::string dataset;
  std::string criteria;
  std::string backend;  // llm | oracle | fixture
  std::string endpoint;
  std::string model;
  std::string oracle_profile;
  std::string fixture_dir;
  std::string cache;
  std::string run_state;
  std::string out = "out";
  std::size_t in_flight = 4;
  std::uint64_t seed = 0;
  std::size_t m = 10;
  std::size_t k = 10;
  int sci_gap = 0;  // 0 = ground-truth-mode default
  std::string scale_convention = "reciprocal";
  double requests_per_minute = 0.0;
  std::vector<std::string> cefr_bracket = {"A2", "B1", "B2", "C1"};
  bool quiet = false;
};

// JSON config file; any present key seeds the corresponding flag's
// default, and explicit flags override.
void apply_config_file(CliConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ConfigError(path + ": invalid JSON: " + e.what());
  }
  try {
    cfg.dataset = doc.value("dataset", cfg.dataset);
    cfg.criteria = doc.value("criteria", cfg.criteria);
    cfg.backend = doc.value("backend", cfg.backend);
    cfg.endpoint = doc.value("endpoint", cfg.endpoint);
    cfg.model = doc.value("model", cfg.model);
    cfg.oracle_profile = doc.value("oracle_profile", cfg.oracle_profile);
    cfg.fixture_dir = doc.value("fixture_dir", cfg.fixture_dir);
    cfg.cache = doc.value("cache", cfg.cache);
    cfg.run_state = doc.value("run_state", cfg.run_state);
    cfg.out = doc.value("out", cfg.out);
    cfg.in_flight = doc.value("in_flight", cfg.in_flight);
    cfg.seed = doc.value("seed", cfg.seed);
    cfg.m = doc.value("m", cfg.m);
    cfg.k = doc.value("k", cfg.k);
    cfg.sci_gap = doc.value("sci_gap", cfg.sci_gap);
    cfg.scale_convention = doc.value("scale_convention", cfg.scale_convention);
    cfg.requests_per_minute = doc.value("requests_per_minute", cfg.requests_per_minute);
    if (doc.contains("cefr_bracket"))
      cfg.cefr_bracket = doc.at("cefr_bracket").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw ConfigError(path + ": bad config value: " + e.what());
  }
}

json effective_config(const CliConfig& cfg) {
  return json{{"dataset", cfg.dataset},
              {"criteria", cfg.criteria},
              {"backend", cfg.backend},
              {"endpoint", cfg.endpoint},
              {"model", cfg.model},
              {"oracle_profile", cfg.oracle_profile},
              {"fixture_dir", cfg.fixture_dir},
              {"cache", cfg.cache},
              {"out", cfg.out},
              {"in_flight", cfg.in_flight},
              {"seed", cfg.seed},
              {"m", cfg.m},
              {"k", cfg.k},
              {"sci_gap", cfg.sci_gap},
              {"scale_convention", cfg.scale_convention},
              {"requests_per_minute", cfg.requests_per_minute},
              {"cefr_bracket", cfg.cefr_bracket}};
}

std::unique_ptr<Backend> build_backend(const CliConfig& cfg) {
  if (cfg.backend == "oracle") {
    if (cfg.oracle_profile.empty())
      throw ConfigError("--backend oracle requires --oracle-profile");
    return std::make_unique<OracleBackend>(OracleProfile::load(cfg.oracle_profile));
  }
  if (cfg.backend == "llm") {
    LlmConfig llm;
    llm.base_url = cfg.endpoint;
    llm.model = cfg.model;
    llm.validate();
    return std::make_unique<LlmBackend>(llm);
  }
  if (cfg.backend == "fixture") {
    if (cfg.fixture_dir.empty())
      throw ConfigError("--backend fixture requires --fixture-dir");
    return FixtureBackend::from_directory(cfg.fixture_dir);
  }
  if (cfg.backend.empty())
    throw ConfigError("select a backend with --backend llm|oracle|fixture");
  throw ConfigError("unknown backend \"" + cfg.backend + "\"");
}

ScaleConvention parse_convention(const std::string& name) {
  if (name == "reciprocal") return ScaleConvention::reciprocal;
  if (name == "literal") return ScaleConvention::literal;
  throw ConfigError("unknown scale convention \"" + name +
                    "\" (expected reciprocal or literal)");
}

PipelineConfig pipeline_config(const CliConfig& cfg) {
  PipelineConfig pc;
  pc.in_flight = cfg.in_flight;
  pc.convention = parse_convention(cfg.scale_convention);
  pc.requests_per_minute = cfg.requests_per_minute;
  pc.progress = !cfg.quiet;
  return pc;
}

std::optional<int> sci_gap_option(const CliConfig& cfg) {
  if (cfg.sci_gap == 0) return std::nullopt;  // truth-mode default
  return cfg.sci_gap;
}

std::filesystem::path cache_path(const CliConfig& cfg) {
  return cfg.cache.empty() ? std::filesystem::path(cfg.out) / "cache.jsonl"
                           : std::filesystem::path(cfg.cache);
}

std::filesystem::path run_state_path(const CliConfig& cfg) {
  return cfg.run_state.empty() ? std::filesystem::path(cfg.out) / "run_state.json"
                               : std::filesystem::path(cfg.run_state);
}

std::filesystem::path criteria_out_path(const CliConfig& cfg) {
  return std::filesystem::path(cfg.out) / "criteria.json";
}

void cmd_gen_criteria(const CliConfig& cfg) {
  if (!cfg.criteria.empty()) {
    CriterionSet supplied = load_criteria(cfg.criteria);
    std::cout << "criteria file supplied; generation skipped (" << supplied.size()
              << " criteria from " << cfg.criteria << ")\n";
    return;
  }
  if (cfg.dataset.empty()) throw ConfigError("gen-criteria requires --dataset");
  ResponseSet dataset = load_dataset(cfg.dataset);
  std::unique_ptr<Backend> backend = build_backend(cfg);
  CriteriaGenOptions options;
  options.m = cfg.m;
  options.k = cfg.k;
  options.seed = cfg.seed;
  CriterionSet criteria = generate_criteria(dataset, *backend, options);
  std::filesystem::create_directories(cfg.out);
  save_criteria(criteria, criteria_out_path(cfg));
  std::cout << "generated " << criteria.size() << " criteria (m=" << cfg.m
            << ", seed=" << cfg.seed << ") -> " << criteria_out_path(cfg).string()
            << "\n";
  for (std::size_t i = 0; i < criteria.size(); ++i)
    std::cout << "  " << (i + 1) << ". " << criteria.labels[i] << "\n";
}

void cmd_evaluate(const CliConfig& cfg, bool resume_run) {
  if (cfg.dataset.empty()) throw ConfigError("evaluate requires --dataset");
  ResponseSet dataset = load_dataset(cfg.dataset);
  std::unique_ptr<Backend> backend = build_backend(cfg);

  CriterionSet criteria;
  if (!cfg.criteria.empty()) {
    criteria = load_criteria(cfg.criteria);
  } else {
    CriteriaGenOptions options;
    options.m = cfg.m;
    options.k = cfg.k;
    options.seed = cfg.seed;
    criteria = generate_criteria(dataset, *backend, options);
    std::filesystem::create_directories(cfg.out);
    save_criteria(criteria, criteria_out_path(cfg));
    std::cout << "generated " << criteria.size() << " criteria -> "
              << criteria_out_path(cfg).string() << "\n";
  }

  JudgmentCache cache(cache_path(cfg));
  PipelineConfig pc = pipeline_config(cfg);
  EvaluationOutcome outcome =
      resume_run ? resume(run_state_path(cfg), dataset, criteria, *backend, cache, pc)
                 : run_evaluation(dataset, criteria, *backend, cache, pc,
                                  run_state_path(cfg));

  ReportInputs inputs;
  inputs.method = "ahp";
  inputs.question = dataset.question;
  for (std::size_t i = 0; i < dataset.size(); ++i)
    inputs.scores_by_id[dataset.at(i).id] = outcome.finals.scores[i];
  for (std::size_t idx : outcome.finals.ranking)
    inputs.ranking.push_back(dataset.at(idx).id);
  if (dataset.ground_truth)
    inputs.metrics =
        evaluate_metrics(inputs.scores_by_id, *dataset.ground_truth, sci_gap_option(cfg));
  inputs.judgment_distribution = judgment_distribution(outcome.records);
  inputs.backend_calls = outcome.backend_calls;
  inputs.cache_hits = outcome.cache_hits;
  inputs.config = effective_config(cfg);
  export_report(inputs, cfg.out);

  std::cout << "run " << outcome.run.run_id << ": " << outcome.backend_calls
            << " backend calls, " << outcome.cache_hits << " cache hits\n";
  if (inputs.metrics)
    std::cout << "CI = " << inputs.metrics->ci << ", sCI = " << inputs.metrics->sci
              << " (gap " << inputs.metrics->sci_gap << ")\n";
  std::cout << "report -> " << (std::filesystem::path(cfg.out) / "ahp_report.json").string()
            << "\n";
}

void cmd_baseline(const CliConfig& cfg, const std::string& method) {
  if (cfg.dataset.empty()) throw ConfigError("baseline requires --dataset");
  ResponseSet dataset = load_dataset(cfg.dataset);
  std::unique_ptr<Backend> backend = build_backend(cfg);

  ReportInputs inputs;
  inputs.question = dataset.question;
  inputs.config = effective_config(cfg);

  BaselineResult result;
  if (method == "pairwise") {
    JudgmentCache cache(cache_path(cfg));
    result = pairwise_baseline(dataset, *backend, cache, pipeline_config(cfg));
    inputs.judgment_distribution = judgment_distribution(result.records);
  } else if (method == "scoring") {
    result = scoring_baseline(dataset, *backend);
  } else if (method == "few-shot") {
    result = few_shot_baseline(dataset, *backend);
    if (dataset.ground_truth && dataset.ground_truth->mode == TruthMode::levels) {
      int lo = 0, hi = 0;
      build_exemplars(dataset, lo, hi);
      inputs.level_range = {lo, hi};
    } else {
      inputs.level_range = {1, 4};
    }
  } else if (method == "cefr-level") {
    result = cefr_baseline(dataset, *backend, cfg.cefr_bracket);
    inputs.level_range = {1, static_cast<int>(cfg.cefr_bracket.size())};
  } else {
    throw ConfigError("unknown baseline method \"" + method +
                      "\" (expected pairwise, scoring, few-shot, or cefr-level)");
  }

  inputs.method = result.method;
  for (std::size_t i = 0; i < dataset.size(); ++i)
    inputs.scores_by_id[dataset.at(i).id] = result.scores[i];
  for (std::size_t idx : rank_descending(result.scores))
    inputs.ranking.push_back(dataset.at(idx).id);
  if (dataset.ground_truth)
    inputs.metrics =
        evaluate_metrics(inputs.scores_by_id, *dataset.ground_truth, sci_gap_option(cfg));
  inputs.backend_calls = result.backend_calls;
  inputs.cache_hits = result.cache_hits;
  export_report(inputs, cfg.out);

  std::cout << result.method << ": " << result.backend_calls << " backend calls, "
            << result.cache_hits << " cache hits\n";
  if (inputs.metrics)
    std::cout << "CI = " << inputs.metrics->ci << ", sCI = " << inputs.metrics->sci
              << " (gap " << inputs.metrics->sci_gap << ")\n";
  std::cout << "report -> "
            << (std::filesystem::path(cfg.out) / (result.method + "_report.json")).string()
            << "\n";
}

void cmd_metrics(const CliConfig& cfg, const std::string& scores_path) {
  if (cfg.dataset.empty()) throw ConfigError("metrics requires --dataset");
  ResponseSet dataset = load_dataset(cfg.dataset);
  if (!dataset.ground_truth)
    throw ValidationError("metrics require a dataset with ground truth");

  std::ifstream in(scores_path);
  if (!in) throw ConfigError("cannot open scores file " + scores_path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ConfigError(scores_path + ": invalid JSON: " + e.what());
  }
  std::map<std::string, double> scores;
  try {
    const json& obj = doc.contains("scores") ? doc.at("scores") : doc;
    for (const auto& [id, value] : obj.items()) scores[id] = value.get<double>();
  } catch (const json::exception& e) {
    throw ConfigError(scores_path + ": bad scores object: " + e.what());
  }

  MetricReport report =
      evaluate_metrics(scores, *dataset.ground_truth, sci_gap_option(cfg));
  json out = {{"ci", report.ci},
              {"sci", report.sci},
              {"sci_gap", report.sci_gap},
              {"ci_concordant", report.ci_concordant},
              {"ci_total", report.ci_total},
              {"sci_concordant", report.sci_concordant},
              {"sci_total", report.sci_total}};
  std::cout << out.dump(2) << "\n";
}

void cmd_ablate(const CliConfig& cfg, std::vector<std::size_t> sizes) {
  if (cfg.dataset.empty()) throw ConfigError("ablate requires --dataset");
  if (cfg.criteria.empty()) throw ConfigError("ablate requires --criteria");
  ResponseSet dataset = load_dataset(cfg.dataset);
  CriterionSet criteria = load_criteria(cfg.criteria);
  std::unique_ptr<Backend> backend = build_backend(cfg);  // identity only, never called
  JudgmentCache cache(cache_path(cfg));

  // Rebuild the tensor strictly from cached judgments.
  const auto pairs = enumerate_pairs(dataset.size());
  std::vector<PairwiseMatrix> slices;
  for (std::size_t c = 0; c < criteria.size(); ++c) {
    std::vector<PairJudgment> judgments;
    for (const auto& [i, j] : pairs) {
      std::string key = judgment_cache_key(
          backend->backend_id(), backend->model_id(), backend->template_version(),
          criteria.labels[c], dataset.question, dataset.at(i).id, dataset.at(j).id);
      auto record = cache.find(key);
      if (!record)
        throw ValidationError("cached tensor incomplete: no judgment for criterion " +
                              std::to_string(c + 1) + ", pair (" + dataset.at(i).id +
                              "," + dataset.at(j).id + "); run evaluate first");
      judgments.push_back({i, j, record->parsed});
    }
    slices.push_back(build_comparison_matrix(judgments, dataset.size(),
                                             parse_convention(cfg.scale_convention)));
  }
  ComparisonTensor tensor = ComparisonTensor::from_slices(std::move(slices));

  if (sizes.empty())
    for (std::size_t j = 1; j <= criteria.size(); ++j) sizes.push_back(j);

  AblationConfig ablation_cfg;
  ablation_cfg.seed = cfg.seed;
  std::vector<AblationRow> rows;
  for (std::size_t j : sizes) {
    rows.push_back(criteria_ablation(tensor, dataset, j, ablation_cfg));
    const AblationRow& row = rows.back();
    std::cout << "size " << row.subset_size << ": " << row.subsets
              << " subsets, CI mean " << row.mean << " [" << row.min << ", " << row.max
              << "]\n";
  }

  std::filesystem::create_directories(cfg.out);
  std::filesystem::path csv_path = std::filesystem::path(cfg.out) / "ablation.csv";
  std::ofstream csv(csv_path);
  if (!csv) throw ValidationError("cannot write " + csv_path.string());
  csv << ablation_csv(rows);
  std::cout << "ablation -> " << csv_path.string() << "\n";
}

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::config: return 2;
    case ErrorKind::validation: return 3;
    case ErrorKind::backend: return 4;
    case ErrorKind::credential: return 4;
    case ErrorKind::parse: return 5;
    case ErrorKind::cache: return 6;
    case ErrorKind::convergence: return 7;
    case ErrorKind::metric: return 8;
    case ErrorKind::internal: return 1;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CliConfig cfg;

  // Config file first, flags override.
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    std::string path;
    if (arg == "--config" && i + 1 < argc) {
      path = argv[i + 1];
    } else if (arg.rfind("--config=", 0) == 0) {
      path = arg.substr(std::string("--config=").size());
    } else {
      continue;
    }
    try {
      apply_config_file(cfg, path);
    } catch (const Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return exit_code_for(e);
    }
  }

  CLI::App app{"AHP-powered ranking of answers to open-ended questions"};
  app.require_subcommand(1);

  std::string config_file;
  app.add_option("--config", config_file, "JSON config file; flags override its values");

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_file, "JSON config file; flags override");
    cmd->add_option("--dataset", cfg.dataset, "dataset JSON file");
    cmd->add_option("--backend", cfg.backend, "judge backend: llm | oracle | fixture");
    cmd->add_option("--endpoint", cfg.endpoint, "chat-completion base URL (llm backend)");
    cmd->add_option("--model", cfg.model, "model id (llm backend)");
    cmd->add_option("--oracle-profile", cfg.oracle_profile,
                    "oracle profile JSON (oracle backend)");
    cmd->add_option("--fixture-dir", cfg.fixture_dir,
                    "directory with replies.jsonl (fixture backend)");
    cmd->add_option("--cache", cfg.cache, "judgment cache file (JSON lines)");
    cmd->add_option("--run-state", cfg.run_state, "run-state JSON file");
    cmd->add_option("--out", cfg.out, "output directory");
    cmd->add_option("--in-flight", cfg.in_flight, "concurrent judge calls");
    cmd->add_option("--seed", cfg.seed, "random seed");
    cmd->add_option("--sci-gap", cfg.sci_gap,
                    "significance gap for sCI (0 = mode default: levels 2, ranking 20)");
    cmd->add_option("--scale-convention", cfg.scale_convention,
                    "judgment value mapping: reciprocal | literal");
    cmd->add_option("--rpm", cfg.requests_per_minute, "request budget per minute");
    cmd->add_flag("--quiet", cfg.quiet, "suppress progress output");
    cmd->add_option("--m", cfg.m, "criteria generation: sample size");
    cmd->add_option("--k", cfg.k, "criteria generation: number of criteria");
    cmd->add_option("--criteria", cfg.criteria, "criteria JSON file (skips generation)");
  };

  CLI::App* gen = app.add_subcommand("gen-criteria", "generate ranked evaluation criteria");
  add_common(gen);

  CLI::App* evaluate = app.add_subcommand("evaluate", "run the full AHP evaluation");
  add_common(evaluate);
  bool resume_run = false;
  evaluate->add_flag("--resume", resume_run,
                     "resume the persisted run after verifying its configuration");

  CLI::App* baseline = app.add_subcommand("baseline", "run a comparison baseline");
  add_common(baseline);
  std::string method;
  baseline->add_option("--method", method,
                       "pairwise | scoring | few-shot | cefr-level")
      ->required();
  baseline->add_option("--cefr-bracket", cfg.cefr_bracket,
                       "CEFR level names, worst to best");

  CLI::App* metrics = app.add_subcommand("metrics", "compute CI/sCI for stored scores");
  add_common(metrics);
  std::string scores_path;
  metrics->add_option("--scores", scores_path, "report JSON holding a scores object")
      ->required();

  CLI::App* ablate = app.add_subcommand("ablate", "criteria-subset ablation from cache");
  add_common(ablate);
  std::vector<std::size_t> sizes;
  ablate->add_option("--sizes", sizes, "subset sizes (default 1..k)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) {
      cmd_gen_criteria(cfg);
    } else if (evaluate->parsed()) {
      cmd_evaluate(cfg, resume_run);
    } else if (baseline->parsed()) {
      cmd_baseline(cfg, method);
    } else if (metrics->parsed()) {
      cmd_metrics(cfg, scores_path);
    } else if (ablate->parsed()) {
      cmd_ablate(cfg, sizes);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
