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

#include "guikit/pipeline.h"

#include <iomanip>
#include <memory>
#include <sstream>

#include "guikit/clients.h"
#include "guikit/errors.h"
#include "guikit/image.h"
#include "guikit/snapshot_io.h"
#include "guikit/text.h"

namespace guikit {
namespace {

namespace fs = std::filesystem;

std::string Subject(const std::string& scope, const std::string& subject) {
  return subject.empty() ? scope : scope + ": " + subject;
}

void PrefixDiagnostics(Diagnostics& diagnostics, const std::string& scope,
                       size_t from = 0) {
  for (size_t i = from; i < diagnostics.size(); ++i) {
    diagnostics[i].subject = Subject(scope, diagnostics[i].subject);
  }
}

nlohmann::ordered_json DiagnosticToJson(const Diagnostic& d) {
  nlohmann::ordered_json doc;
  doc["code"] = d.code;
  doc["subject"] = d.subject;
  doc["message"] = d.message;
  return doc;
}

void WriteJsonLine(std::ostream& out, const nlohmann::ordered_json& doc) {
  out << doc.dump() << "\n";
}

// Loads the configured prompt pools once per stage.
PromptPool LoadPool(const PipelineConfig& config) {
  return config.prompts_dir.empty() ? PromptPool::Default()
                                    : PromptPool::LoadDir(config.prompts_dir);
}

ActionSpace LoadSpace(const PipelineConfig& config) {
  std::vector<ActionSpace> spaces = DefaultSpaces();
  if (!config.spaces_file.empty()) {
    std::ifstream in(config.spaces_file);
    if (!in) throw PreconditionError("cannot read " + config.spaces_file.string());
    std::stringstream buf;
    buf << in.rdbuf();
    ActionSpace custom = ActionSpace::FromTable(buf.str(), config.spaces_file.string());
    std::erase_if(spaces, [&](const ActionSpace& s) { return s.name() == custom.name(); });
    spaces.push_back(std::move(custom));
  }
  const ActionSpace* space = FindSpace(spaces, config.action_space);
  if (space == nullptr) {
    throw PreconditionError("unknown action space '" + config.action_space + "'");
  }
  return *space;
}

std::vector<fs::path> SnapshotInputs(const PipelineConfig& config) {
  if (config.input.empty()) throw PreconditionError("--input is required");
  if (fs::is_regular_file(config.input)) return {config.input};
  if (!fs::is_directory(config.input)) {
    throw PreconditionError("input " + config.input.string() + " does not exist");
  }
  return ListSnapshotFiles(config.input);
}

fs::path ImagesDir(const PipelineConfig& config) {
  if (!config.images_dir.empty()) return config.images_dir;
  return fs::is_directory(config.input) ? config.input : config.input.parent_path();
}

void RequireOutputDir(const PipelineConfig& config) {
  if (config.output.empty()) throw PreconditionError("--output is required");
  fs::create_directories(config.output);
}

BlockGrid GridFor(const PipelineConfig& config, int64_t w, int64_t h) {
  return SelectGrid(w, h, config.max_blocks, config.w_block, config.h_block);
}

// Wraps a remote client with retries, an in-flight bound and the response
// cache; the cache is outermost so hits never wait for a slot.
std::shared_ptr<GenerationClient> RemoteClient(const PipelineConfig& config) {
  std::shared_ptr<GenerationClient> client =
      std::make_shared<HttpGenerationClient>(config.endpoint);
  client = std::make_shared<RetryingClient>(client, static_cast<int>(config.retries),
                                            std::chrono::milliseconds(500));
  client = std::make_shared<BoundedClient>(client, static_cast<int>(config.concurrency));
  if (!config.cache_dir.empty()) {
    client = std::make_shared<CachingClient>(client, config.cache_dir);
  }
  return client;
}

std::shared_ptr<GenerationClient> WithCache(std::shared_ptr<GenerationClient> client,
                                            const PipelineConfig& config) {
  if (config.cache_dir.empty()) return client;
  return std::make_shared<CachingClient>(std::move(client), config.cache_dir);
}

// Translates stage failures into exit codes; staged outputs are discarded by
// the AtomicFile destructors during unwinding.
template <typename Body>
int Guarded(const std::string& stage, std::ostream& err, Body body) {
  try {
    return body();
  } catch (const SchemaError& e) {
    err << stage << ": schema error: " << e.what() << "\n";
    return kExitSchemaError;
  } catch (const std::exception& e) {
    err << stage << ": error: " << e.what() << "\n";
    return kExitHardError;
  }
}

struct Level1Item {
  std::vector<TrainingSample> samples;
  Diagnostics diagnostics;
  bool skipped = false;
};

struct Level2Item {
  std::vector<TrainingSample> samples;
  std::vector<nlohmann::ordered_json> quarantine;
  Diagnostics diagnostics;
  int64_t elements = 0;
  int64_t functions = 0;
};

size_t LineOfByte(const std::string& text, size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<size_t>(std::count(text.begin(), text.begin() + byte, '\n'));
}

// Item lists of a packed list-style sample.
struct Unpacked {
  std::vector<std::string> prompt_items;
  std::vector<std::string> target_items;
  std::string instruction;
};

std::optional<Unpacked> Unpack(const TrainingSample& s) {
  const auto prompt = SplitLines(s.prompt);
  const auto target = SplitLines(s.target);
  if (prompt.empty() || prompt[0] != "<image>" || prompt.size() < target.size() + 2) {
    return std::nullopt;
  }
  Unpacked u;
  for (size_t i = 0; i < target.size(); ++i) {
    const std::string prefix = std::to_string(i + 1) + ".";
    if (prompt[i + 1].rfind(prefix, 0) != 0 || target[i].rfind(prefix, 0) != 0) {
      return std::nullopt;
    }
    u.prompt_items.push_back(prompt[i + 1].substr(prefix.size()));
    u.target_items.push_back(target[i].substr(prefix.size()));
  }
  u.instruction = Join({prompt.begin() + static_cast<std::ptrdiff_t>(target.size() + 1),
                        prompt.end()},
                       "\n");
  return u;
}

bool IsListTask(Task t) {
  return t == Task::kText2Bbox || t == Task::kBbox2Text || t == Task::kFunction2Bbox;
}

}  // namespace

void PipelineConfig::Validate() const {
  const std::pair<const char*, int64_t> fields[] = {
      {"grid_step", grid_step},       {"max_blocks", max_blocks},
      {"w_block", w_block},           {"h_block", h_block},
      {"token_budget", token_budget}, {"concurrency", concurrency},
      {"retries", retries},           {"workers", workers}};
  for (const auto& [name, value] : fields) {
    if (value < 1) {
      throw PreconditionError(std::string(name) + " must be positive, got " +
                              std::to_string(value));
    }
  }
}

void StageStats::AddDiagnostics(const Diagnostics& diagnostics) {
  for (const Diagnostic& d : diagnostics) Add("diagnostic." + d.code);
}

std::string StageStats::Format(const std::string& stage) const {
  std::ostringstream out;
  out << "[" << stage << "]\n";
  for (const auto& [key, value] : counts) out << "  " << key << ": " << value << "\n";
  return out.str();
}

AtomicFile::AtomicFile(fs::path path) : path_(std::move(path)) {
  tmp_ = path_;
  tmp_ += ".partial";
  if (path_.has_parent_path()) fs::create_directories(path_.parent_path());
  out_.open(tmp_, std::ios::binary | std::ios::trunc);
  if (!out_) throw std::runtime_error("cannot write " + tmp_.string());
}

AtomicFile::~AtomicFile() {
  if (committed_) return;
  out_.close();
  std::error_code ec;
  fs::remove(tmp_, ec);
}

void AtomicFile::Commit() {
  out_.close();
  if (!out_) throw std::runtime_error("failed writing " + tmp_.string());
  fs::rename(tmp_, path_);
  committed_ = true;
}

uint64_t ItemSeed(uint64_t seed, const std::string& id) {
  return seed ^ StableHash(id);
}

std::vector<nlohmann::json> ReadJsonl(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError(path.string(), "cannot open file");
  std::vector<nlohmann::json> docs;
  std::string line;
  for (size_t n = 1; std::getline(in, line); ++n) {
    if (Trim(line).empty()) continue;
    try {
      docs.push_back(nlohmann::json::parse(line));
    } catch (const nlohmann::json::parse_error& e) {
      throw SchemaError(path.string() + ":" + std::to_string(n),
                        std::string("invalid JSON: ") + e.what());
    }
  }
  return docs;
}

std::vector<TrajectoryStep> LoadTrajectories(const fs::path& path,
                                             const ActionSpace& space) {
  std::ifstream in(path);
  if (!in) throw SchemaError(path.string(), "cannot open file");
  std::vector<TrajectoryStep> steps;
  std::string line;
  for (size_t n = 1; std::getline(in, line); ++n) {
    if (Trim(line).empty()) continue;
    const std::string where = path.string() + ":" + std::to_string(n);
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw SchemaError(where, std::string("invalid JSON: ") + e.what());
    }
    steps.push_back(StepFromJson(doc, space, where));
  }
  return steps;
}

std::vector<StepRecord> LoadEvalRecords(const fs::path& gold, const fs::path& pred,
                                        const ActionSpace& space,
                                        Diagnostics* diagnostics) {
  std::map<std::string, std::string> predictions;
  {
    std::ifstream in(pred);
    if (!in) throw SchemaError(pred.string(), "cannot open file");
    std::string line;
    for (size_t n = 1; std::getline(in, line); ++n) {
      if (Trim(line).empty()) continue;
      const std::string where = pred.string() + ":" + std::to_string(n);
      try {
        const auto doc = nlohmann::json::parse(line);
        predictions[doc.at("id").get<std::string>()] =
            doc.at("action").get<std::string>();
      } catch (const nlohmann::json::exception& e) {
        throw SchemaError(where, std::string("prediction record: ") + e.what());
      }
    }
  }

  std::vector<StepRecord> records;
  std::ifstream in(gold);
  if (!in) throw SchemaError(gold.string(), "cannot open file");
  std::string line;
  for (size_t n = 1; std::getline(in, line); ++n) {
    if (Trim(line).empty()) continue;
    const std::string where = gold.string() + ":" + std::to_string(n);
    StepRecord rec;
    try {
      const auto doc = nlohmann::json::parse(line);
      rec.id = doc.at("id").get<std::string>();
      rec.gold = ParseAction(doc.at("action").get<std::string>(), space);
      if (doc.contains("box") && !doc.at("box").is_null()) {
        const auto box = doc.at("box").get<std::vector<int64_t>>();
        if (box.size() != 4 || box[2] < 1 || box[3] < 1) {
          throw SchemaError(where, "box must be [cx, cy, w, h] with w, h >= 1");
        }
        rec.gold_box = PixelBox{box[0], box[1], box[2], box[3]};
      }
      const auto screen = doc.at("screen").get<std::vector<int64_t>>();
      if (screen.size() != 2 || screen[0] < 1 || screen[1] < 1) {
        throw SchemaError(where, "screen must be [w, h] with positive extents");
      }
      rec.screen = {screen[0], screen[1]};
    } catch (const nlohmann::json::exception& e) {
      throw SchemaError(where, std::string("gold record: ") + e.what());
    } catch (const ActionParseError& e) {
      throw SchemaError(where, std::string("gold action: ") + e.what());
    }
    if (auto it = predictions.find(rec.id); it != predictions.end()) {
      try {
        rec.pred = ParseAction(it->second, space);
      } catch (const ActionParseError& e) {
        if (diagnostics) {
          diagnostics->push_back({"unparseable_prediction", rec.id, e.what()});
        }
      }
    } else if (diagnostics) {
      diagnostics->push_back({"missing_prediction", rec.id, "no prediction"});
    }
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<TrainingSample> RepackSamples(const std::vector<TrainingSample>& samples,
                                          int64_t budget, Diagnostics* diagnostics) {
  std::vector<TrainingSample> out;
  auto report = [&](std::string code, const TrainingSample& s, std::string message) {
    if (diagnostics) {
      diagnostics->push_back({std::move(code), s.snapshot_id, std::move(message)});
    }
  };
  auto pass_through = [&](const TrainingSample& s) {
    if (s.est_tokens <= budget) {
      out.push_back(s);
    } else {
      report("sample_exceeds_budget", s,
             TaskName(s.task) + " sample of " + std::to_string(s.est_tokens) +
                 " tokens dropped");
    }
  };

  size_t i = 0;
  while (i < samples.size()) {
    const TrainingSample& head = samples[i];
    std::optional<Unpacked> first = IsListTask(head.task) ? Unpack(head) : std::nullopt;
    if (!first) {
      if (IsListTask(head.task)) report("unpack_failed", head, "not a numbered list sample");
      pass_through(head);
      ++i;
      continue;
    }
    // Gather the run of samples sharing task, snapshot and grid.
    std::vector<std::string> prompt_items = first->prompt_items;
    std::vector<std::string> target_items = first->target_items;
    size_t j = i + 1;
    for (; j < samples.size(); ++j) {
      const TrainingSample& s = samples[j];
      if (s.task != head.task || s.snapshot_id != head.snapshot_id || s.grid != head.grid) {
        break;
      }
      auto u = Unpack(s);
      if (!u) break;
      prompt_items.insert(prompt_items.end(), u->prompt_items.begin(), u->prompt_items.end());
      target_items.insert(target_items.end(), u->target_items.begin(), u->target_items.end());
    }

    auto numbered = [](size_t position, const std::string& item) {
      return std::to_string(position + 1) + "." + item;
    };
    const int64_t overhead = EstimateTokens("<image>") + EstimateTokens(first->instruction);
    if (overhead > budget) {
      for (size_t k = i; k < j; ++k) {
        report("sample_exceeds_budget", samples[k], "instruction alone exceeds the budget");
      }
      i = j;
      continue;
    }
    const PackPlan plan = PackGreedy(
        prompt_items.size(),
        [&](size_t item, size_t position) {
          return EstimateTokens(numbered(position, prompt_items[item])) +
                 EstimateTokens(numbered(position, target_items[item]));
        },
        overhead, budget);
    for (size_t d : plan.dropped) {
      report("pair_exceeds_budget", head, "pair '" + prompt_items[d] + "' dropped");
    }
    for (const auto& group : plan.groups) {
      std::vector<std::string> prompt_lines{"<image>"};
      std::vector<std::string> target_lines;
      for (size_t position = 0; position < group.size(); ++position) {
        prompt_lines.push_back(numbered(position, prompt_items[group[position]]));
        target_lines.push_back(numbered(position, target_items[group[position]]));
      }
      prompt_lines.push_back(first->instruction);
      TrainingSample s = head;
      s.prompt = Join(prompt_lines, "\n");
      s.target = Join(target_lines, "\n");
      s.est_tokens = EstimateTokens(s.prompt) + EstimateTokens(s.target);
      out.push_back(std::move(s));
    }
    i = j;
  }
  return out;
}

int RunValidate(const PipelineConfig& config, std::ostream& out, std::ostream& err) {
  return Guarded("collect-validate", err, [&] {
    const auto files = SnapshotInputs(config);
    StageStats stats;
    std::vector<std::string> issues;
    for (const fs::path& file : files) {
      stats.Add("files");
      std::ifstream in(file);
      std::stringstream buf;
      buf << in.rdbuf();
      const std::string text = buf.str();
      nlohmann::json doc;
      try {
        doc = nlohmann::json::parse(text);
      } catch (const nlohmann::json::parse_error& e) {
        issues.push_back(file.string() + ":" + std::to_string(LineOfByte(text, e.byte)) +
                         ": invalid JSON: " + e.what());
        stats.Add("invalid_files");
        continue;
      }
      const auto found = ValidateSnapshotJson(doc);
      for (const std::string& issue : found) issues.push_back(file.string() + ": " + issue);
      stats.Add(found.empty() ? "valid_files" : "invalid_files");
    }
    for (const std::string& issue : issues) out << issue << "\n";
    stats.Add("issues", static_cast<int64_t>(issues.size()));
    err << stats.Format("collect-validate");
    return issues.empty() ? kExitOk : kExitSchemaError;
  });
}

int RunGenLevel1(const PipelineConfig& config, std::ostream& out, std::ostream& err) {
  return Guarded("gen-level1", err, [&] {
    config.Validate();
    const PromptPool pool = LoadPool(config);
    const auto files = SnapshotInputs(config);
    RequireOutputDir(config);
    AtomicFile samples_file(config.output / "level1.jsonl");
    AtomicFile diagnostics_file(config.output / "level1.diagnostics.jsonl");

    auto items = ParallelMap(files.size(), config.workers, [&](size_t i) {
      Level1Item item;
      const Snapshot snapshot = LoadSnapshotFile(files[i]);
      if (!config.language.empty() && snapshot.language != config.language) {
        item.skipped = true;
        return item;
      }
      std::mt19937_64 rng(ItemSeed(config.seed, snapshot.id));
      GenContext ctx{&pool, config.token_budget, &rng, &item.diagnostics};
      const MarkSet marks = MarkElements(snapshot, config.grid_step);
      const BlockGrid grid = GridFor(config, snapshot.viewport_w, snapshot.viewport_h);
      for (Task task : config.tasks) {
        switch (task) {
          case Task::kText2Bbox:
          case Task::kBbox2Text: {
            auto s = task == Task::kText2Bbox ? GenText2Bbox(snapshot, marks, grid, ctx)
                                              : GenBbox2Text(snapshot, marks, grid, ctx);
            item.samples.insert(item.samples.end(), s.begin(), s.end());
            break;
          }
          case Task::kBbox2Dom:
            try {
              item.samples.push_back(GenBbox2Dom(snapshot, marks, grid, ctx));
            } catch (const BudgetError& e) {
              item.diagnostics.push_back({"region_budget", "", e.what()});
            }
            break;
          default:
            throw PreconditionError("gen-level1 does not produce " + TaskName(task));
        }
      }
      PrefixDiagnostics(item.diagnostics, snapshot.id);
      return item;
    });

    StageStats stats;
    stats.Add("snapshots", static_cast<int64_t>(files.size()));
    for (const Level1Item& item : items) {
      if (item.skipped) stats.Add("snapshots_skipped_language");
      for (const TrainingSample& s : item.samples) {
        WriteJsonLine(samples_file.stream(), SampleToJson(s));
        stats.Add("samples." + TaskName(s.task));
      }
      for (const Diagnostic& d : item.diagnostics) {
        WriteJsonLine(diagnostics_file.stream(), DiagnosticToJson(d));
      }
      stats.AddDiagnostics(item.diagnostics);
    }
    samples_file.Commit();
    diagnostics_file.Commit();
    out << (config.output / "level1.jsonl").string() << "\n";
    err << stats.Format("gen-level1");
    return kExitOk;
  });
}

int RunGenLevel2(const PipelineConfig& config, std::ostream& out, std::ostream& err) {
  return Guarded("gen-level2", err, [&] {
    config.Validate();
    const PromptPool pool = LoadPool(config);
    const auto files = SnapshotInputs(config);
    RequireOutputDir(config);
    AtomicFile samples_file(config.output / "level2.jsonl");
    AtomicFile quarantine_file(config.output / "level2.quarantine.jsonl");

    std::shared_ptr<GenerationClient> client =
        config.endpoint.empty() ? WithCache(std::make_shared<MockFunctionClient>(), config)
                                : RemoteClient(config);
    const fs::path images = ImagesDir(config);

    auto items = ParallelMap(files.size(), config.workers, [&](size_t i) {
      Level2Item item;
      const Snapshot snapshot = LoadSnapshotFile(files[i]);
      if (!config.language.empty() && snapshot.language != config.language) return item;
      std::optional<RgbImage> screenshot;
      if (!snapshot.screenshot_ref.empty()) {
        screenshot = LoadPng(images / snapshot.screenshot_ref);
      }
      const MarkSet marks = MarkElements(snapshot, config.grid_step);
      std::vector<FunctionLabel> labels;
      for (NodeId id : marks.ids()) {
        if (!IsClickable(snapshot.dom[id].element)) continue;
        ++item.elements;
        const Level2Result r = RunLevel2Generation(
            snapshot, id, *client, *client, screenshot ? &*screenshot : nullptr, pool);
        if (r.status == Level2Status::kOk) {
          labels.push_back({id, r.function});
          ++item.functions;
          continue;
        }
        nlohmann::ordered_json q;
        q["snapshot_id"] = snapshot.id;
        q["node"] = id;
        q["status"] = Level2StatusName(r.status);
        q["detail"] = r.detail;
        item.quarantine.push_back(std::move(q));
      }
      std::mt19937_64 rng(ItemSeed(config.seed, snapshot.id));
      GenContext ctx{&pool, config.token_budget, &rng, &item.diagnostics};
      item.samples = GenFunction2Bbox(
          snapshot, labels, GridFor(config, snapshot.viewport_w, snapshot.viewport_h), ctx);
      PrefixDiagnostics(item.diagnostics, snapshot.id);
      return item;
    });

    StageStats stats;
    stats.Add("snapshots", static_cast<int64_t>(files.size()));
    for (const Level2Item& item : items) {
      stats.Add("elements", item.elements);
      stats.Add("functions", item.functions);
      for (const TrainingSample& s : item.samples) {
        WriteJsonLine(samples_file.stream(), SampleToJson(s));
        stats.Add("samples." + TaskName(s.task));
      }
      for (const auto& q : item.quarantine) {
        WriteJsonLine(quarantine_file.stream(), q);
        stats.Add("quarantined." + q["status"].get<std::string>());
      }
      stats.AddDiagnostics(item.diagnostics);
    }
    samples_file.Commit();
    quarantine_file.Commit();
    out << (config.output / "level2.jsonl").string() << "\n";
    err << stats.Format("gen-level2");
    return kExitOk;
  });
}

int RunGenLevel3(const PipelineConfig& config, std::ostream& out, std::ostream& err) {
  return Guarded("gen-level3", err, [&] {
    config.Validate();
    if (config.input.empty()) throw PreconditionError("--input is required");
    const PromptPool pool = LoadPool(config);
    const ActionSpace space = LoadSpace(config);
    auto steps = LoadTrajectories(config.input, space);
    std::stable_sort(steps.begin(), steps.end(), [](const auto& a, const auto& b) {
      return std::tie(a.trajectory_id, a.step_index) <
             std::tie(b.trajectory_id, b.step_index);
    });
    RequireOutputDir(config);
    AtomicFile cot_file(config.output / "level3.jsonl");
    AtomicFile functions_file(config.output / "level3.functions.jsonl");
    AtomicFile cleaned_file(config.output / "level3.cleaned.jsonl");
    AtomicFile rejected_file(config.output / "level3.rejected.jsonl");
    AtomicFile quarantine_file(config.output / "level3.quarantine.jsonl");

    std::shared_ptr<GenerationClient> judge;
    if (!config.endpoint.empty()) {
      judge = RemoteClient(config);
    } else if (!config.judge_fixture.empty()) {
      std::ifstream in(config.judge_fixture);
      if (!in) throw PreconditionError("cannot read " + config.judge_fixture.string());
      nlohmann::json doc;
      try {
        doc = nlohmann::json::parse(in);
      } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(config.judge_fixture.string(), e.what());
      }
      judge = WithCache(std::make_shared<RuleJudge>(RuleJudge::FromJson(doc)), config);
    } else {
      judge = WithCache(std::make_shared<RuleJudge>(), config);
    }

    const auto outcomes = ParallelMap(steps.size(), config.workers, [&](size_t i) {
      return JudgeStep(steps[i], *judge, space, pool);
    });
    const FilterResult filtered = FilterSteps(steps, outcomes);

    StageStats stats;
    stats.Add("steps", static_cast<int64_t>(steps.size()));
    stats.Add("kept", static_cast<int64_t>(filtered.kept.size()));
    for (const StepRejection& r : filtered.rejected) {
      WriteJsonLine(rejected_file.stream(), RejectionToJson(r));
      stats.Add("rejected." + r.reason);
    }
    for (const StepRejection& r : filtered.quarantined) {
      WriteJsonLine(quarantine_file.stream(), RejectionToJson(r));
      stats.Add("quarantined." + r.reason);
    }

    Diagnostics diagnostics;
    for (const TrajectoryStep& step : filtered.kept) {
      WriteJsonLine(cleaned_file.stream(), StepToJson(step, space));
      if (step.screen_w < 1 || step.screen_h < 1) {
        diagnostics.push_back({"no_screen_extents", step.Key(), "step skipped"});
        continue;
      }
      std::mt19937_64 rng(ItemSeed(config.seed, step.Key()));
      const TrainingSample s = AssembleCotSample(
          step, GridFor(config, step.screen_w, step.screen_h), space, pool, &rng);
      if (s.est_tokens > config.token_budget) {
        diagnostics.push_back({"sample_exceeds_budget", step.Key(), "navigation sample dropped"});
        continue;
      }
      WriteJsonLine(cot_file.stream(), SampleToJson(s));
      stats.Add("samples.navigation");
    }

    // Mobile function pairs grouped per screenshot, in first-seen order.
    const auto functions = DeriveMobileFunctions(filtered.kept, &diagnostics);
    std::vector<std::string> screens;
    std::map<std::string, std::vector<const MobileFunction*>> by_screen;
    for (const MobileFunction& f : functions) {
      auto& list = by_screen[f.screenshot_ref];
      if (list.empty()) screens.push_back(f.screenshot_ref);
      list.push_back(&f);
    }
    for (const std::string& screen : screens) {
      const auto& list = by_screen[screen];
      std::vector<std::pair<PixelBox, std::string>> pairs;
      for (const MobileFunction* f : list) pairs.emplace_back(f->box, f->function);
      const int64_t w = list.front()->screen_w;
      const int64_t h = list.front()->screen_h;
      if (w < 1 || h < 1) continue;
      std::mt19937_64 rng(ItemSeed(config.seed, screen));
      GenContext ctx{&pool, config.token_budget, &rng, &diagnostics};
      for (const TrainingSample& s :
           GenFunction2BboxFromBoxes(screen, w, h, pairs, GridFor(config, w, h), ctx)) {
        WriteJsonLine(functions_file.stream(), SampleToJson(s));
        stats.Add("samples.function2bbox");
      }
    }
    stats.AddDiagnostics(diagnostics);

    cot_file.Commit();
    functions_file.Commit();
    cleaned_file.Commit();
    rejected_file.Commit();
    quarantine_file.Commit();
    out << (config.output / "level3.jsonl").string() << "\n";
    err << stats.Format("gen-level3");
    return kExitOk;
  });
}

int RunPack(const PipelineConfig& config, std::ostream& out, std::ostream& err) {
  return Guarded("pack", err, [&] {
    config.Validate();
    if (config.input.empty()) throw PreconditionError("--input is required");
    if (config.output.empty()) throw PreconditionError("--output is required");
    std::vector<TrainingSample> samples;
    {
      std::ifstream in(config.input);
      if (!in) throw SchemaError(config.input.string(), "cannot open file");
      std::string line;
      for (size_t n = 1; std::getline(in, line); ++n) {
        if (Trim(line).empty()) continue;
        const std::string where = config.input.string() + ":" + std::to_string(n);
        try {
          samples.push_back(
              SampleFromJson(nlohmann::json::parse(line), config.w_block, config.h_block));
        } catch (const nlohmann::json::exception& e) {
          throw SchemaError(where, e.what());
        } catch (const SchemaError& e) {
          throw SchemaError(where, e.what());
        }
      }
    }
    Diagnostics diagnostics;
    const auto packed = RepackSamples(samples, config.token_budget, &diagnostics);
    AtomicFile file(config.output);
    for (const TrainingSample& s : packed) WriteJsonLine(file.stream(), SampleToJson(s));
    file.Commit();

    StageStats stats;
    stats.Add("samples_in", static_cast<int64_t>(samples.size()));
    stats.Add("samples_out", static_cast<int64_t>(packed.size()));
    stats.AddDiagnostics(diagnostics);
    out << config.output.string() << "\n";
    err << stats.Format("pack");
    return kExitOk;
  });
}

int RunEval(const PipelineConfig& config, std::ostream& out, std::ostream& err) {
  return Guarded("eval", err, [&] {
    if (config.gold.empty() || config.pred.empty()) {
      throw PreconditionError("--gold and --pred are required");
    }
    const ActionSpace space = LoadSpace(config);
    Diagnostics diagnostics;
    const auto records = LoadEvalRecords(config.gold, config.pred, space, &diagnostics);
    const EvalReport report = Evaluate(records);
    if (!config.output.empty()) {
      AtomicFile file(config.output);
      file.stream() << ReportToJson(report).dump(2) << "\n";
      file.Commit();
    }
    out << FormatReportTable(report);
    StageStats stats;
    stats.Add("steps", static_cast<int64_t>(records.size()));
    stats.AddDiagnostics(diagnostics);
    err << stats.Format("eval");
    return kExitOk;
  });
}

}  // namespace guikit
