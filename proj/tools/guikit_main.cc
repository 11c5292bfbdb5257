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

// Command-line front end for the data pipeline and evaluation harness.
//
//   guikit <command> [--config FILE] [--seed N] [--workers N] [options]
//
// Every option can also be given as a key in the TOML config file; flags
// given on the command line take precedence.

#include <iostream>

#include "CLI11.hpp"
#include "guikit/pipeline.h"

namespace {

using guikit::PipelineConfig;

struct RawOptions {
  std::string input, output, prompts_dir, cache_dir, images_dir, judge_fixture,
      spaces_file, gold, pred;
  std::vector<std::string> tasks;
};

int Dispatch(const std::string& command, const PipelineConfig& config) {
  if (command == "collect-validate") return guikit::RunValidate(config, std::cout, std::cerr);
  if (command == "gen-level1") return guikit::RunGenLevel1(config, std::cout, std::cerr);
  if (command == "gen-level2") return guikit::RunGenLevel2(config, std::cout, std::cerr);
  if (command == "gen-level3") return guikit::RunGenLevel3(config, std::cout, std::cerr);
  if (command == "pack") return guikit::RunPack(config, std::cout, std::cerr);
  return guikit::RunEval(config, std::cout, std::cerr);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GUI grounding data generation and agent evaluation"};
  app.set_config("--config", "", "TOML file with option values");
  app.require_subcommand(1);
  app.fallthrough();

  PipelineConfig config;
  RawOptions raw;
  app.add_option("--input", raw.input, "Snapshot directory, trajectory or sample JSONL");
  app.add_option("--output", raw.output, "Output directory (file for pack and eval)");
  app.add_option("--seed", config.seed, "Seed for every random choice");
  app.add_option("--workers", config.workers, "Parallel workers")->check(CLI::PositiveNumber);
  app.add_option("--grid_step", config.grid_step, "Marking grid step in pixels");
  app.add_option("--max_blocks", config.max_blocks, "Maximum number of image blocks");
  app.add_option("--w_block", config.w_block, "Block width in pixels");
  app.add_option("--h_block", config.h_block, "Block height in pixels");
  app.add_option("--token_budget", config.token_budget, "Token budget per sample");
  app.add_option("--language", config.language, "Keep only snapshots in this language");
  app.add_option("--tasks", raw.tasks, "Level-1 tasks")
      ->delimiter(',')
      ->check(CLI::IsMember({"text2bbox", "bbox2text", "bbox2dom"}));
  app.add_option("--endpoint", config.endpoint, "Generation service URL; empty uses mocks");
  app.add_option("--concurrency", config.concurrency, "Maximum in-flight requests");
  app.add_option("--retries", config.retries, "Attempts per request");
  app.add_option("--prompts_dir", raw.prompts_dir, "Directory of <key>.txt prompt pools");
  app.add_option("--cache_dir", raw.cache_dir, "Response cache directory");
  app.add_option("--images_dir", raw.images_dir, "Base directory of screenshot refs");
  app.add_option("--judge_fixture", raw.judge_fixture, "Verdicts for the rule-based judge");
  app.add_option("--spaces_file", raw.spaces_file, "Action-space table");
  app.add_option("--action_space", config.action_space, "Action space name");
  app.add_option("--gold", raw.gold, "Gold step JSONL (eval)");
  app.add_option("--pred", raw.pred, "Prediction JSONL (eval)");

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"collect-validate", "Check snapshot files against the interchange schema"},
      {"gen-level1", "Generate text2bbox, bbox2text and bbox2dom samples"},
      {"gen-level2", "Generate function2bbox samples from element functions"},
      {"gen-level3", "Clean trajectories and generate navigation samples"},
      {"pack", "Repack list-style samples under a token budget"},
      {"eval", "Score predictions against gold steps"},
  };
  for (const auto& [name, help] : commands) app.add_subcommand(name, help);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? guikit::kExitOk : guikit::kExitHardError;
  }

  config.input = raw.input;
  config.output = raw.output;
  config.prompts_dir = raw.prompts_dir;
  config.cache_dir = raw.cache_dir;
  config.images_dir = raw.images_dir;
  config.judge_fixture = raw.judge_fixture;
  config.spaces_file = raw.spaces_file;
  config.gold = raw.gold;
  config.pred = raw.pred;
  if (!raw.tasks.empty()) {
    config.tasks.clear();
    for (const std::string& t : raw.tasks) config.tasks.push_back(*guikit::ParseTask(t));
  }
  return Dispatch(app.get_subcommands().front()->get_name(), config);
}
