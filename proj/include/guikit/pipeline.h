// Copyright 2026 The GuiKit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GUIKIT_PIPELINE_H_
#define GUIKIT_PIPELINE_H_

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "guikit/actions.h"
#include "guikit/diagnostics.h"
#include "guikit/metrics.h"
#include "guikit/navdata.h"
#include "guikit/prompts.h"
#include "guikit/samplegen.h"

namespace guikit {

// Settings shared by every stage. Command-line flags and config-file keys
// carry the same names.
struct PipelineConfig {
  std::filesystem::path input;
  std::filesystem::path output;
  int64_t grid_step = kDefaultGridStep;
  int64_t max_blocks = kDefaultMaxBlocks;
  int64_t w_block = kDefaultBlockExtent;
  int64_t h_block = kDefaultBlockExtent;
  int64_t token_budget = kDefaultTokenBudget;
  std::string language;  // empty keeps every snapshot
  std::vector<Task> tasks = {Task::kText2Bbox, Task::kBbox2Text, Task::kBbox2Dom};
  std::string endpoint;  // empty selects the built-in deterministic mocks
  int64_t concurrency = 4;
  int64_t retries = 3;
  int64_t workers = 1;
  uint64_t seed = 0;
  std::filesystem::path prompts_dir;
  std::filesystem::path cache_dir;
  std::filesystem::path images_dir;  // defaults to the input directory
  std::filesystem::path judge_fixture;
  std::filesystem::path spaces_file;
  std::string action_space = "mobile";
  std::filesystem::path gold;
  std::filesystem::path pred;

  // Throws PreconditionError naming the first non-positive numeric field.
  void Validate() const;
};

struct StageStats {
  std::map<std::string, int64_t> counts;

  void Add(const std::string& key, int64_t n = 1) { counts[key] += n; }
  void AddDiagnostics(const Diagnostics& diagnostics);
  // "name: value" lines in key order.
  std::string Format(const std::string& stage) const;
};

// Exit codes of every stage command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitHardError = 1;
inline constexpr int kExitSchemaError = 2;

// Stage commands. Results and reports go to `out`, stats and errors to `err`.
// Outputs appear only when the stage succeeds.
int RunValidate(const PipelineConfig& config, std::ostream& out, std::ostream& err);
int RunGenLevel1(const PipelineConfig& config, std::ostream& out, std::ostream& err);
int RunGenLevel2(const PipelineConfig& config, std::ostream& out, std::ostream& err);
int RunGenLevel3(const PipelineConfig& config, std::ostream& out, std::ostream& err);
int RunPack(const PipelineConfig& config, std::ostream& out, std::ostream& err);
int RunEval(const PipelineConfig& config, std::ostream& out, std::ostream& err);

// Output file staged under a temporary name and renamed into place by
// Commit(). Uncommitted files are removed on destruction.
class AtomicFile {
 public:
  explicit AtomicFile(std::filesystem::path path);
  ~AtomicFile();
  AtomicFile(const AtomicFile&) = delete;
  AtomicFile& operator=(const AtomicFile&) = delete;

  std::ostream& stream() { return out_; }
  void Commit();

 private:
  std::filesystem::path path_;
  std::filesystem::path tmp_;
  std::ofstream out_;
  bool committed_ = false;
};

// Applies `fn` to 0..n-1 on up to `workers` threads. Results keep index
// order; the exception of the lowest failing index is rethrown.
template <typename Fn>
auto ParallelMap(size_t n, int64_t workers, Fn fn)
    -> std::vector<decltype(fn(size_t{0}))> {
  using R = decltype(fn(size_t{0}));
  std::vector<std::optional<R>> slots(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<size_t> next{0};
  auto run = [&] {
    for (size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        slots[i].emplace(fn(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const size_t threads =
      std::min<size_t>(n, static_cast<size_t>(std::max<int64_t>(1, workers)));
  if (threads <= 1) {
    run();
  } else {
    std::vector<std::jthread> pool;
    for (size_t t = 0; t < threads; ++t) pool.emplace_back(run);
  }
  std::vector<R> results;
  results.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    results.push_back(std::move(*slots[i]));
  }
  return results;
}

// Per-item seed so results do not depend on scheduling.
uint64_t ItemSeed(uint64_t seed, const std::string& id);

// One JSON value per non-empty line. Throws SchemaError with "file:line".
std::vector<nlohmann::json> ReadJsonl(const std::filesystem::path& path);

std::vector<TrajectoryStep> LoadTrajectories(const std::filesystem::path& path,
                                             const ActionSpace& space);

// Gold: {"id", "action", "box": [cx, cy, w, h] | absent, "screen": [w, h]}.
// Pred: {"id", "action"}. Predictions that are missing or do not parse leave
// `pred` empty. Throws SchemaError for malformed gold records.
std::vector<StepRecord> LoadEvalRecords(const std::filesystem::path& gold,
                                        const std::filesystem::path& pred,
                                        const ActionSpace& space,
                                        Diagnostics* diagnostics = nullptr);

// Splits list-style samples (text2bbox, bbox2text, function2bbox) back into
// their pairs and packs runs of samples that share task, snapshot and grid
// again under `budget`. Other samples pass through when they fit.
std::vector<TrainingSample> RepackSamples(const std::vector<TrainingSample>& samples,
                                          int64_t budget,
                                          Diagnostics* diagnostics = nullptr);

}  // namespace guikit

#endif  // GUIKIT_PIPELINE_H_
