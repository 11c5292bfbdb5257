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

#ifndef GUIKIT_NAVDATA_H_
#define GUIKIT_NAVDATA_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "guikit/actions.h"
#include "guikit/clients.h"
#include "guikit/diagnostics.h"
#include "guikit/image.h"
#include "guikit/prompts.h"
#include "guikit/samplegen.h"
#include "guikit/snapshot.h"

namespace guikit {

inline constexpr size_t kMaxHistoryActions = 5;

// One step of a recorded trajectory. `history` holds the descriptions of the
// previous steps; it is stored in full and truncated when samples are built.
struct TrajectoryStep {
  std::string trajectory_id;
  std::string task;
  int64_t step_index = 0;
  std::string screenshot_ref;
  std::optional<std::string> next_screenshot_ref;
  Action gold_action;
  std::optional<PixelBox> gold_box;
  int64_t screen_w = 0;
  int64_t screen_h = 0;
  std::vector<std::string> history;
  std::optional<std::string> step_description;

  bool IsFinal() const { return !next_screenshot_ref.has_value(); }
  std::string Key() const;  // "<trajectory_id>/<step_index>"

  friend bool operator==(const TrajectoryStep&, const TrajectoryStep&) = default;
};

// Trajectory JSONL record:
//   {"trajectory_id", "task", "step_index", "screenshot_ref",
//    "next_screenshot_ref": str|null, "gold_action": "CLICK(10, 20)",
//    "gold_box": [cx, cy, w, h]|null, "screen": [w, h], "history": [...],
//    "step_description": str|null}
// Throws SchemaError (gold actions are parsed against `space`).
TrajectoryStep StepFromJson(const nlohmann::json& doc, const ActionSpace& space,
                            const std::string& where = "");
nlohmann::ordered_json StepToJson(const TrajectoryStep& step,
                                  const ActionSpace& space);

enum class StepKind { kMiddle, kFinal };

struct JudgeVerdict {
  std::string summary;
  std::optional<std::string> step_function;
  std::string rationality_reason;
  std::optional<bool> rational;
  std::optional<std::string> completion_reason;
  std::optional<bool> complete;

  friend bool operator==(const JudgeVerdict&, const JudgeVerdict&) = default;
};

class VerdictParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// "[]" for an empty history, else "1. a\n2. b".
std::string RenderHistory(const std::vector<std::string>& history);

// The most recent `limit` entries, oldest first.
std::vector<std::string> TruncateHistory(const std::vector<std::string>& history,
                                         size_t limit = kMaxHistoryActions);

// Throw PreconditionError when the step kind does not match.
std::string BuildMiddlePrompt(const TrajectoryStep& step,
                              const ActionSpace& space,
                              const PromptPool& pool = PromptPool::Default());
std::string BuildFinalPrompt(const TrajectoryStep& step,
                             const PromptPool& pool = PromptPool::Default());

// Throws VerdictParseError when a mandatory answer is missing or ambiguous.
JudgeVerdict ParseVerdict(const std::string& response, StepKind kind);

// Numbered response in the judge's answer format; ParseVerdict inverts it.
std::string RenderVerdict(const JudgeVerdict& verdict, StepKind kind);

// Either a parsed verdict or the reason parsing failed.
struct VerdictOutcome {
  std::optional<JudgeVerdict> verdict;
  std::string error;
};

struct StepRejection {
  TrajectoryStep step;
  std::string reason;  // irrational, incomplete, unparseable_verdict
  std::string detail;
};

struct FilterResult {
  std::vector<TrajectoryStep> kept;
  std::vector<StepRejection> rejected;
  std::vector<StepRejection> quarantined;
};

// Keeps rational middle steps and completed final steps, filling in
// step_description. Unparseable verdicts go to `quarantined`.
FilterResult FilterSteps(const std::vector<TrajectoryStep>& steps,
                         const std::vector<VerdictOutcome>& outcomes);

nlohmann::ordered_json RejectionToJson(const StepRejection& r);

// Point arguments become "b, x', y'" with the block-local offset normalized
// to 0-999; other actions serialize canonically.
std::string EncodeBlockAction(const Action& action,
                              const ResizedGeometry& geometry,
                              const ActionSpace& space);
// Inverse of EncodeBlockAction back to screen pixels (up to quantization).
// Accepts plain pixel codes too. Throws ActionParseError / DomainError.
Action DecodeBlockAction(std::string_view code, const ResizedGeometry& geometry,
                         const ActionSpace& space);

// Navigation sample: the evaluation prompt with the five most recent history
// entries; target is the step description followed by the block-encoded
// gold action.
TrainingSample AssembleCotSample(const TrajectoryStep& step,
                                 const BlockGrid& grid, const ActionSpace& space,
                                 const PromptPool& pool = PromptPool::Default(),
                                 std::mt19937_64* rng = nullptr);

struct MobileFunction {
  std::string screenshot_ref;
  int64_t screen_w = 0;
  int64_t screen_h = 0;
  PixelBox box;
  std::string function;
};

// One function pair per kept click step with a gold box.
std::vector<MobileFunction> DeriveMobileFunctions(
    const std::vector<TrajectoryStep>& steps, Diagnostics* diagnostics = nullptr);

// Judge request for a step: system prompt, step prompt and screenshots.
GenerationRequest BuildJudgeRequest(const TrajectoryStep& step,
                                    const ActionSpace& space,
                                    const PromptPool& pool = PromptPool::Default());

VerdictOutcome JudgeStep(const TrajectoryStep& step, GenerationClient& judge,
                         const ActionSpace& space,
                         const PromptPool& pool = PromptPool::Default());

// Deterministic judge: verdicts by step key, everything else rational and
// complete with a function derived from the gold action. Reads the step key
// from request metadata.
class RuleJudge : public GenerationClient {
 public:
  RuleJudge() = default;
  // Raw responses override verdicts; used to exercise parse failures.
  void SetVerdict(const std::string& step_key, JudgeVerdict verdict);
  void SetRawResponse(const std::string& step_key, std::string response);

  std::string Generate(const GenerationRequest& request) override;

  // Fixture format: {"<step key>": {"rational": bool, "complete": bool,
  // "step_function": str, "raw": str}, ...}; all fields optional.
  static RuleJudge FromJson(const nlohmann::json& doc);

 private:
  std::map<std::string, JudgeVerdict> verdicts_;
  std::map<std::string, std::string> raw_;
};

enum class Level2Status { kOk, kNoElementText, kExtractionFailed, kRefineRejected };

std::string Level2StatusName(Level2Status status);

struct Level2Result {
  Level2Status status = Level2Status::kOk;
  std::string function;  // set when status == kOk
  std::string describe_prompt;
  std::string refine_prompt;
  AnnotationColor color = AnnotationColor::kRed;
  std::string detail;
};

// Text shown for an element: own text, else aria-label/alt/placeholder, else
// an icon caption inside it, else the first descendant text.
std::string ElementLabel(const Snapshot& snapshot, NodeId node);

// Up to five distinct texts around the element (outside its own subtree),
// nearest enclosing scope first, joined by "; "; "none" when there are none.
std::string ElementContext(const Snapshot& snapshot, NodeId node);

std::string BuildDescribePrompt(const Snapshot& snapshot, NodeId node,
                                const PromptPool& pool = PromptPool::Default());
std::string BuildRefinePrompt(const std::string& purpose,
                              const PromptPool& pool = PromptPool::Default());

// Last `The purpose is "..."` in a response.
std::optional<std::string> ExtractPurpose(const std::string& response);

// Describe-then-refine for one clickable element. `screenshot` feeds the
// annotation color choice; without it red is used.
Level2Result RunLevel2Generation(const Snapshot& snapshot, NodeId node,
                                 GenerationClient& describer,
                                 GenerationClient& refiner,
                                 const RgbImage* screenshot = nullptr,
                                 const PromptPool& pool = PromptPool::Default());

// Deterministic describe/refine mocks built from the element label and its
// first context text.
class MockFunctionClient : public GenerationClient {
 public:
  std::string Generate(const GenerationRequest& request) override;
};

}  // namespace guikit

#endif  // GUIKIT_NAVDATA_H_
