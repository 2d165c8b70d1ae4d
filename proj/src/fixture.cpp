#include "ahpeval/fixture.hpp"

#include <fstream>

#include <json.hpp>

#include "ahpeval/error.hpp"

namespace ahpeval {

using nlohmann::json;

std::unique_ptr<FixtureBackend> FixtureBackend::from_directory(
    const std::filesystem::path& dir) {
  std::filesystem::path file = dir / "replies.jsonl";
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open fixture file " + file.string());
  auto backend = std::make_unique<FixtureBackend>();
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      json record = json::parse(line);
      backend->push(record.at("kind").get<std::string>(),
                    record.at("text").get<std::string>());
    } catch (const json::exception& e) {
      throw ConfigError(file.string() + ":" + std::to_string(lineno) +
                        ": malformed fixture record: " + e.what());
    }
  }
  return backend;
}

void FixtureBackend::push(const std::string& kind, std::string text) {
  static const std::map<std::string, int> kKinds = {{"compare", 0},  {"reasons", 0},
                                                    {"summarize", 0}, {"score", 0},
                                                    {"level", 0},     {"cefr", 0}};
  if (!kKinds.count(kind)) throw ConfigError("unknown fixture kind \"" + kind + "\"");
  std::lock_guard<std::mutex> lock(mu_);
  queues_[kind].push_back(std::move(text));
}

CompletionResult FixtureBackend::pop(const std::string& kind) {
  std::lock_guard<std::mutex> lock(mu_);
  auto& queue = queues_[kind];
  if (queue.empty())
    throw ConfigError("fixture backend has no more \"" + kind + "\" replies");
  CompletionResult result{std::move(queue.front()), 1, 0};
  queue.pop_front();
  return result;
}

}  // namespace ahpeval
