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

#include "guikit/navdata.h"

#include <algorithm>
#include <regex>
#include <set>

#include "guikit/errors.h"
#include "guikit/text.h"

namespace guikit {
namespace {

constexpr std::string_view kFunctionMarker = "The function of the Current Action:";

std::string StepKindName(StepKind kind) {
  return kind == StepKind::kMiddle ? "middle" : "final";
}

const std::string& PickTemplate(const PromptPool& pool, const std::string& key,
                                std::mt19937_64* rng) {
  return rng != nullptr ? pool.Pick(key, *rng) : pool.First(key);
}

template <typename T>
T Field(const nlohmann::json& doc, const char* key, const std::string& where) {
  if (!doc.contains(key)) throw SchemaError(where, std::string("missing '") + key + "'");
  try {
    return doc.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw SchemaError(where, std::string("field '") + key + "' has the wrong type");
  }
}

template <typename T>
std::optional<T> OptionalField(const nlohmann::json& doc, const char* key,
                               const std::string& where) {
  if (!doc.contains(key) || doc.at(key).is_null()) return std::nullopt;
  return Field<T>(doc, key, where);
}

// Numbered answers of a judge response. Unnumbered lines continue the
// preceding item.
std::map<int, std::string> NumberedItems(const std::string& response) {
  static const std::regex kItem(R"(^\s*(\d+)\s*[.):]\s?(.*)$)");
  std::map<int, std::string> items;
  int current = -1;
  for (std::string line : SplitLines(response)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::smatch m;
    if (std::regex_match(line, m, kItem)) {
      current = std::stoi(m[1].str());
      items[current] = m[2].str();
    } else if (current >= 0 && !Trim(line).empty()) {
      items[current] += " " + Trim(line);
    }
  }
  for (auto& [n, text] : items) text = Trim(text);
  return items;
}

std::optional<bool> StandaloneBoolean(const std::string& text) {
  static const std::regex kWord(R"(\b(true|false)\b)", std::regex::icase);
  bool seen_true = false;
  bool seen_false = false;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), kWord);
       it != std::sregex_iterator(); ++it) {
    (ToLower((*it)[1].str()) == "true" ? seen_true : seen_false) = true;
  }
  if (seen_true == seen_false) return std::nullopt;
  return seen_true;
}

bool RequiredBoolean(const std::map<int, std::string>& items, int n) {
  auto it = items.find(n);
  if (it == items.end()) {
    throw VerdictParseError("item " + std::to_string(n) + " is missing");
  }
  std::optional<bool> value = StandaloneBoolean(it->second);
  if (!value) {
    throw VerdictParseError("item " + std::to_string(n) +
                            " has no unambiguous True/False answer");
  }
  return *value;
}

std::optional<std::string> ItemText(const std::map<int, std::string>& items, int n) {
  auto it = items.find(n);
  if (it == items.end()) return std::nullopt;
  return it->second;
}

std::string BoolWord(bool b) { return b ? "True" : "False"; }

std::string CanonicalKind(const Action& action, const ActionSpace& space) {
  const ActionKind* kind = space.Find(action.kind);
  if (kind == nullptr) {
    throw std::invalid_argument("action kind '" + action.kind +
                                "' is not in space '" + space.name() + "'");
  }
  return kind->name;
}

int64_t ScaleBack(int64_t v, int64_t from, int64_t to) {
  const int64_t r = (2 * v * to + from) / (2 * from);
  return std::clamp<int64_t>(r, 0, to - 1);
}

std::string StripRefinedPrefix(std::string text) {
  text = Trim(text);
  static const std::string kPrefix = "refined:";
  if (ToLower(text.substr(0, kPrefix.size())) == kPrefix) {
    text = Trim(text.substr(kPrefix.size()));
  }
  while (text.size() >= 2 && (text.front() == '"' || text.front() == '\'') &&
         text.back() == text.front()) {
    text = Trim(text.substr(1, text.size() - 2));
  }
  if (!text.empty() && text.back() == '.') text.pop_back();
  return CollapseWhitespace(text);
}

std::string ElementText(const DomElement& e) {
  return e.text ? CollapseWhitespace(*e.text) : std::string();
}

}  // namespace

std::string TrajectoryStep::Key() const {
  return trajectory_id + "/" + std::to_string(step_index);
}

TrajectoryStep StepFromJson(const nlohmann::json& doc, const ActionSpace& space,
                            const std::string& where) {
  if (!doc.is_object()) throw SchemaError(where, "step record must be an object");
  TrajectoryStep step;
  step.trajectory_id = Field<std::string>(doc, "trajectory_id", where);
  step.task = Field<std::string>(doc, "task", where);
  step.step_index = Field<int64_t>(doc, "step_index", where);
  if (step.step_index < 0) throw SchemaError(where, "step_index must be >= 0");
  step.screenshot_ref = Field<std::string>(doc, "screenshot_ref", where);
  step.next_screenshot_ref = OptionalField<std::string>(doc, "next_screenshot_ref", where);
  const auto code = Field<std::string>(doc, "gold_action", where);
  try {
    step.gold_action = ParseAction(code, space);
  } catch (const ActionParseError& e) {
    throw SchemaError(where, "gold_action: " + std::string(e.what()));
  }
  if (auto box = OptionalField<std::vector<int64_t>>(doc, "gold_box", where)) {
    if (box->size() != 4 || (*box)[2] < 1 || (*box)[3] < 1) {
      throw SchemaError(where, "gold_box must be [cx, cy, w, h] with w, h >= 1");
    }
    step.gold_box = PixelBox{(*box)[0], (*box)[1], (*box)[2], (*box)[3]};
  }
  if (auto screen = OptionalField<std::vector<int64_t>>(doc, "screen", where)) {
    if (screen->size() != 2 || (*screen)[0] < 1 || (*screen)[1] < 1) {
      throw SchemaError(where, "screen must be [w, h] with positive extents");
    }
    step.screen_w = (*screen)[0];
    step.screen_h = (*screen)[1];
  }
  step.history = OptionalField<std::vector<std::string>>(doc, "history", where)
                     .value_or(std::vector<std::string>{});
  step.step_description = OptionalField<std::string>(doc, "step_description", where);
  return step;
}

nlohmann::ordered_json StepToJson(const TrajectoryStep& step,
                                  const ActionSpace& space) {
  nlohmann::ordered_json doc;
  doc["trajectory_id"] = step.trajectory_id;
  doc["task"] = step.task;
  doc["step_index"] = step.step_index;
  doc["screenshot_ref"] = step.screenshot_ref;
  doc["next_screenshot_ref"] = step.next_screenshot_ref
                                   ? nlohmann::ordered_json(*step.next_screenshot_ref)
                                   : nlohmann::ordered_json(nullptr);
  doc["gold_action"] = SerializeAction(step.gold_action, space);
  if (step.gold_box) {
    const PixelBox& b = *step.gold_box;
    doc["gold_box"] = {b.cx, b.cy, b.w, b.h};
  } else {
    doc["gold_box"] = nullptr;
  }
  doc["screen"] = {step.screen_w, step.screen_h};
  doc["history"] = step.history;
  doc["step_description"] = step.step_description
                                ? nlohmann::ordered_json(*step.step_description)
                                : nlohmann::ordered_json(nullptr);
  return doc;
}

std::string RenderHistory(const std::vector<std::string>& history) {
  if (history.empty()) return "[]";
  std::string out;
  for (size_t i = 0; i < history.size(); ++i) {
    if (i > 0) out += "\n";
    out += std::to_string(i + 1) + ". " + history[i];
  }
  return out;
}

std::vector<std::string> TruncateHistory(const std::vector<std::string>& history,
                                         size_t limit) {
  const size_t skip = history.size() > limit ? history.size() - limit : 0;
  return {history.begin() + static_cast<std::ptrdiff_t>(skip), history.end()};
}

std::string BuildMiddlePrompt(const TrajectoryStep& step,
                              const ActionSpace& space, const PromptPool& pool) {
  if (step.IsFinal()) {
    throw PreconditionError("step " + step.Key() +
                            " has no next screenshot; use the final-step prompt");
  }
  return Substitute(pool.First("judge_middle"),
                    {{"task", step.task},
                     {"history", RenderHistory(step.history)},
                     {"action", SerializeAction(step.gold_action, space)},
                     {"step_idx", std::to_string(step.step_index)}});
}

std::string BuildFinalPrompt(const TrajectoryStep& step, const PromptPool& pool) {
  if (!step.IsFinal()) {
    throw PreconditionError("step " + step.Key() +
                            " is not final; use the middle-step prompt");
  }
  return Substitute(pool.First("judge_final"),
                    {{"task", step.task}, {"history", RenderHistory(step.history)}});
}

JudgeVerdict ParseVerdict(const std::string& response, StepKind kind) {
  const auto items = NumberedItems(response);
  JudgeVerdict v;
  v.summary = ItemText(items, 1).value_or("");
  if (kind == StepKind::kFinal) {
    v.completion_reason = ItemText(items, 2);
    v.complete = RequiredBoolean(items, 3);
    return v;
  }

  for (std::string line : SplitLines(response)) {
    const size_t at = line.find(kFunctionMarker);
    if (at == std::string::npos) continue;
    std::string fn = Trim(line.substr(at + kFunctionMarker.size()));
    if (fn.size() >= 2 && fn.front() == '"' && fn.back() == '"') {
      fn = Trim(fn.substr(1, fn.size() - 2));
    }
    if (!fn.empty()) v.step_function = fn;
  }
  if (!v.step_function) {
    throw VerdictParseError("no \"" + std::string(kFunctionMarker) + "\" line");
  }
  v.rationality_reason = ItemText(items, 3).value_or("");
  v.rational = RequiredBoolean(items, 4);
  v.completion_reason = ItemText(items, 5);
  if (auto six = ItemText(items, 6)) v.complete = StandaloneBoolean(*six);
  return v;
}

std::string RenderVerdict(const JudgeVerdict& v, StepKind kind) {
  std::vector<std::string> lines;
  lines.push_back("1. " + v.summary);
  if (kind == StepKind::kFinal) {
    lines.push_back("2. " + v.completion_reason.value_or(""));
    lines.push_back("3. " + BoolWord(v.complete.value_or(false)));
    return Join(lines, "\n");
  }
  lines.push_back("2. " + std::string(kFunctionMarker) + " " +
                  v.step_function.value_or(""));
  lines.push_back("3. " + v.rationality_reason);
  lines.push_back("4. " + BoolWord(v.rational.value_or(false)));
  if (v.completion_reason) lines.push_back("5. " + *v.completion_reason);
  if (v.complete) lines.push_back("6. " + BoolWord(*v.complete));
  return Join(lines, "\n");
}

FilterResult FilterSteps(const std::vector<TrajectoryStep>& steps,
                         const std::vector<VerdictOutcome>& outcomes) {
  if (steps.size() != outcomes.size()) {
    throw PreconditionError("filter_steps: " + std::to_string(steps.size()) +
                            " steps but " + std::to_string(outcomes.size()) +
                            " verdicts");
  }
  FilterResult result;
  for (size_t i = 0; i < steps.size(); ++i) {
    const TrajectoryStep& step = steps[i];
    const VerdictOutcome& outcome = outcomes[i];
    if (!outcome.verdict) {
      result.quarantined.push_back({step, "unparseable_verdict", outcome.error});
      continue;
    }
    const JudgeVerdict& v = *outcome.verdict;
    if (!step.IsFinal()) {
      if (!v.rational || !v.step_function) {
        result.quarantined.push_back(
            {step, "unparseable_verdict", "middle-step verdict lacks rationality"});
      } else if (*v.rational) {
        TrajectoryStep kept = step;
        kept.step_description = *v.step_function;
        result.kept.push_back(std::move(kept));
      } else {
        result.rejected.push_back({step, "irrational", v.rationality_reason});
      }
      continue;
    }
    if (!v.complete) {
      result.quarantined.push_back(
          {step, "unparseable_verdict", "final-step verdict lacks completion"});
    } else if (*v.complete) {
      TrajectoryStep kept = step;
      const std::string reason = v.completion_reason.value_or("");
      kept.step_description = reason.empty() ? v.summary : reason;
      result.kept.push_back(std::move(kept));
    } else {
      result.rejected.push_back({step, "incomplete", v.completion_reason.value_or("")});
    }
  }
  return result;
}

nlohmann::ordered_json RejectionToJson(const StepRejection& r) {
  nlohmann::ordered_json doc;
  doc["trajectory_id"] = r.step.trajectory_id;
  doc["step_index"] = r.step.step_index;
  doc["reason"] = r.reason;
  doc["detail"] = r.detail;
  return doc;
}

std::string EncodeBlockAction(const Action& action, const ResizedGeometry& geometry,
                              const ActionSpace& space) {
  const PixelPoint* p = action.point();
  if (p == nullptr) return SerializeAction(action, space);
  const BlockGrid& grid = geometry.grid();
  const BlockLocalPoint q = ToBlockLocal(geometry.MapPoint(*p), grid);
  return CanonicalKind(action, space) + "(" + std::to_string(q.block_index) + ", " +
         std::to_string(NormalizeCoord(q.x, grid.w_block)) + ", " +
         std::to_string(NormalizeCoord(q.y, grid.h_block)) + ")";
}

Action DecodeBlockAction(std::string_view code, const ResizedGeometry& geometry,
                         const ActionSpace& space) {
  const ActionCall call = ParseActionCall(code);
  const ActionKind* kind = space.Find(call.ident);
  const bool block_form = kind != nullptr && kind->schema == ArgSchema::kPoint &&
                          call.args.size() == 3 &&
                          std::all_of(call.args.begin(), call.args.end(), [](const auto& a) {
                            return std::holds_alternative<int64_t>(a);
                          });
  if (!block_form) return ParseAction(code, space);
  const BlockGrid& grid = geometry.grid();
  const BlockLocalPoint q{std::get<int64_t>(call.args[0]),
                          DenormalizeCoord(std::get<int64_t>(call.args[1]), grid.w_block),
                          DenormalizeCoord(std::get<int64_t>(call.args[2]), grid.h_block)};
  const PixelPoint img = FromBlockLocal(q, grid);
  return Action::Point(kind->name, ScaleBack(img.x, grid.Width(), geometry.viewport_w()),
                       ScaleBack(img.y, grid.Height(), geometry.viewport_h()));
}

TrainingSample AssembleCotSample(const TrajectoryStep& step, const BlockGrid& grid,
                                 const ActionSpace& space, const PromptPool& pool,
                                 std::mt19937_64* rng) {
  if (!step.step_description || step.step_description->empty()) {
    throw PreconditionError("step " + step.Key() + " has no step description");
  }
  if (step.screen_w < 1 || step.screen_h < 1) {
    throw PreconditionError("step " + step.Key() + " has no screen extents");
  }
  const ResizedGeometry geometry(step.screen_w, step.screen_h, grid);
  TrainingSample sample;
  sample.task = Task::kNavigation;
  sample.prompt = "<image>\n" +
                  Substitute(PickTemplate(pool, "navigation", rng),
                             {{"task", step.task},
                              {"history", RenderHistory(TruncateHistory(step.history))},
                              {"action_space", space.Describe()}});
  sample.target = *step.step_description + "\n" +
                  EncodeBlockAction(step.gold_action, geometry, space);
  sample.snapshot_id = step.Key();
  sample.grid = grid;
  sample.est_tokens = EstimateTokens(sample.prompt) + EstimateTokens(sample.target);
  return sample;
}

std::vector<MobileFunction> DeriveMobileFunctions(
    const std::vector<TrajectoryStep>& steps, Diagnostics* diagnostics) {
  std::vector<MobileFunction> out;
  for (const TrajectoryStep& step : steps) {
    if (step.gold_action.point() == nullptr) continue;
    if (!step.step_description || step.step_description->empty()) {
      if (diagnostics) {
        diagnostics->push_back({"missing_description", step.Key(),
                                "click step has no step description"});
      }
      continue;
    }
    if (!step.gold_box) {
      if (diagnostics) {
        diagnostics->push_back({"no_gold_box", step.Key(),
                                "click step has no target element box"});
      }
      continue;
    }
    out.push_back({step.screenshot_ref, step.screen_w, step.screen_h, *step.gold_box,
                   *step.step_description});
  }
  return out;
}

GenerationRequest BuildJudgeRequest(const TrajectoryStep& step,
                                    const ActionSpace& space, const PromptPool& pool) {
  GenerationRequest req;
  req.capability = Capability::kJudgeStep;
  req.system = pool.First("judge_system");
  const StepKind kind = step.IsFinal() ? StepKind::kFinal : StepKind::kMiddle;
  req.prompt = kind == StepKind::kFinal ? BuildFinalPrompt(step, pool)
                                        : BuildMiddlePrompt(step, space, pool);
  req.image_refs.push_back(step.screenshot_ref);
  if (step.next_screenshot_ref) req.image_refs.push_back(*step.next_screenshot_ref);
  req.metadata = {{"step_key", step.Key()},
                  {"kind", StepKindName(kind)},
                  {"gold_action", SerializeAction(step.gold_action, space)}};
  return req;
}

VerdictOutcome JudgeStep(const TrajectoryStep& step, GenerationClient& judge,
                         const ActionSpace& space, const PromptPool& pool) {
  const std::string response = judge.Generate(BuildJudgeRequest(step, space, pool));
  try {
    return {ParseVerdict(response,
                         step.IsFinal() ? StepKind::kFinal : StepKind::kMiddle),
            ""};
  } catch (const VerdictParseError& e) {
    return {std::nullopt, e.what()};
  }
}

void RuleJudge::SetVerdict(const std::string& step_key, JudgeVerdict verdict) {
  verdicts_[step_key] = std::move(verdict);
}

void RuleJudge::SetRawResponse(const std::string& step_key, std::string response) {
  raw_[step_key] = std::move(response);
}

std::string RuleJudge::Generate(const GenerationRequest& request) {
  const std::string key = request.metadata.value("step_key", "");
  const StepKind kind = request.metadata.value("kind", "middle") == "final"
                            ? StepKind::kFinal
                            : StepKind::kMiddle;
  if (auto it = raw_.find(key); it != raw_.end()) return it->second;
  if (auto it = verdicts_.find(key); it != verdicts_.end()) {
    return RenderVerdict(it->second, kind);
  }
  JudgeVerdict v;
  v.summary = "Screen of step " + key + ".";
  if (kind == StepKind::kFinal) {
    v.completion_reason = "The final screen shows the task is done.";
    v.complete = true;
  } else {
    const std::string action = request.metadata.value("gold_action", "the action");
    v.step_function = "to perform " + ToLower(action);
    v.rationality_reason = "The action moves the task forward.";
    v.rational = true;
  }
  return RenderVerdict(v, kind);
}

RuleJudge RuleJudge::FromJson(const nlohmann::json& doc) {
  RuleJudge judge;
  if (!doc.is_object()) throw SchemaError("", "judge fixture must be an object");
  for (const auto& [key, entry] : doc.items()) {
    if (entry.contains("raw")) {
      judge.SetRawResponse(key, entry.at("raw").get<std::string>());
      continue;
    }
    JudgeVerdict v;
    v.summary = "Screen of step " + key + ".";
    if (entry.contains("complete")) {
      v.complete = entry.at("complete").get<bool>();
      v.completion_reason = *v.complete ? "The task is complete."
                                        : "The task is not complete.";
    }
    if (entry.contains("rational") || entry.contains("step_function")) {
      v.rational = entry.value("rational", true);
      v.step_function = entry.value("step_function", "to perform the action");
      v.rationality_reason = *v.rational ? "The action fits the task."
                                         : "The action does not fit the task.";
    }
    judge.SetVerdict(key, std::move(v));
  }
  return judge;
}

std::string Level2StatusName(Level2Status status) {
  switch (status) {
    case Level2Status::kOk:
      return "ok";
    case Level2Status::kNoElementText:
      return "no_element_text";
    case Level2Status::kExtractionFailed:
      return "extraction_failed";
    case Level2Status::kRefineRejected:
      return "refine_rejected";
  }
  return "ok";
}

std::string ElementLabel(const Snapshot& snapshot, NodeId node) {
  const DomTree& dom = snapshot.dom;
  const DomElement& e = dom[node].element;
  if (std::string t = ElementText(e); !t.empty()) return t;
  for (const char* attr : {"aria-label", "alt", "placeholder"}) {
    if (auto it = e.attrs.find(attr); it != e.attrs.end()) {
      if (std::string t = CollapseWhitespace(it->second); !t.empty()) return t;
    }
  }
  for (const IconCaption& icon : snapshot.icons) {
    if (e.bbox.CoversPixel({icon.bbox.cx, icon.bbox.cy}) && !icon.caption.empty()) {
      return CollapseWhitespace(icon.caption);
    }
  }
  for (NodeId id = node + 1; id < dom[node].subtree_end; ++id) {
    if (std::string t = ElementText(dom[id].element); !t.empty()) return t;
  }
  return "";
}

std::string ElementContext(const Snapshot& snapshot, NodeId node) {
  const DomTree& dom = snapshot.dom;
  const std::string label = ElementLabel(snapshot, node);
  std::vector<std::string> found;
  std::set<std::string> seen{label};
  std::optional<NodeId> scope = dom[node].parent;
  while (scope && found.size() < 5) {
    for (NodeId id = *scope; id < dom[*scope].subtree_end && found.size() < 5; ++id) {
      if (id >= node && id < dom[node].subtree_end) continue;
      const DomElement& e = dom[id].element;
      if (!e.visible) continue;
      std::string t = ElementText(e);
      if (t.empty() || !seen.insert(t).second) continue;
      found.push_back(std::move(t));
    }
    scope = dom[*scope].parent;
  }
  return found.empty() ? "none" : Join(found, "; ");
}

std::string BuildDescribePrompt(const Snapshot& snapshot, NodeId node,
                                const PromptPool& pool) {
  if (node >= snapshot.dom.size()) {
    throw PreconditionError("node " + std::to_string(node) + " is out of range");
  }
  const DomElement& e = snapshot.dom[node].element;
  return Substitute(pool.First("describe_function"),
                    {{"text", ElementLabel(snapshot, node)},
                     {"region", RegionName(e.bbox, snapshot.viewport_w, snapshot.viewport_h)},
                     {"context_text", ElementContext(snapshot, node)}});
}

std::string BuildRefinePrompt(const std::string& purpose, const PromptPool& pool) {
  const auto& examples = pool.Templates("refine_example");
  auto example = [&](size_t i) { return examples[i % examples.size()]; };
  return Substitute(pool.First("refine_function"), {{"purpose", purpose},
                                                    {"example_1", example(0)},
                                                    {"example_2", example(1)},
                                                    {"example_3", example(2)}});
}

std::optional<std::string> ExtractPurpose(const std::string& response) {
  static const std::regex kPurpose(R"re(The purpose is\s*"([^"]*)")re");
  std::optional<std::string> last;
  for (auto it = std::sregex_iterator(response.begin(), response.end(), kPurpose);
       it != std::sregex_iterator(); ++it) {
    std::string p = CollapseWhitespace((*it)[1].str());
    if (!p.empty()) last = std::move(p);
  }
  return last;
}

Level2Result RunLevel2Generation(const Snapshot& snapshot, NodeId node,
                                 GenerationClient& describer,
                                 GenerationClient& refiner, const RgbImage* screenshot,
                                 const PromptPool& pool) {
  if (node >= snapshot.dom.size()) {
    throw PreconditionError("node " + std::to_string(node) + " is out of range");
  }
  const DomElement& e = snapshot.dom[node].element;
  if (!IsClickable(e)) {
    throw PreconditionError("node " + std::to_string(node) + " is not clickable");
  }
  Level2Result result;
  const std::string label = ElementLabel(snapshot, node);
  if (label.empty()) {
    result.status = Level2Status::kNoElementText;
    result.detail = "element has no text, label or caption";
    return result;
  }
  if (screenshot != nullptr) {
    const auto surround = SampleSurround(*screenshot, e.bbox);
    if (!surround.empty()) result.color = SelectAnnotationColor(surround);
  }

  result.describe_prompt = BuildDescribePrompt(snapshot, node, pool);
  GenerationRequest describe;
  describe.capability = Capability::kDescribeFunction;
  describe.prompt = result.describe_prompt;
  if (!snapshot.screenshot_ref.empty()) describe.image_refs.push_back(snapshot.screenshot_ref);
  describe.metadata = {{"snapshot_id", snapshot.id},
                       {"node", node},
                       {"text", label},
                       {"context", ElementContext(snapshot, node)},
                       {"color", AnnotationColorName(result.color)},
                       {"box", {e.bbox.cx, e.bbox.cy, e.bbox.w, e.bbox.h}}};
  const std::string response = describer.Generate(describe);
  const auto purpose = ExtractPurpose(response);
  if (!purpose) {
    result.status = Level2Status::kExtractionFailed;
    result.detail = "no 'The purpose is \"...\"' in response";
    return result;
  }

  result.refine_prompt = BuildRefinePrompt(*purpose, pool);
  std::string last;
  for (int attempt = 1; attempt <= 2; ++attempt) {
    GenerationRequest refine;
    refine.capability = Capability::kRefineFunction;
    refine.prompt = result.refine_prompt;
    refine.metadata = {{"snapshot_id", snapshot.id},
                       {"node", node},
                       {"purpose", *purpose},
                       {"attempt", attempt}};
    last = StripRefinedPrefix(refiner.Generate(refine));
    if (last.rfind("to ", 0) == 0 || last.rfind("To ", 0) == 0) {
      last[0] = 't';
      result.function = last;
      return result;
    }
  }
  result.status = Level2Status::kRefineRejected;
  result.detail = "refined text does not start with 'to': \"" + last + "\"";
  return result;
}

std::string MockFunctionClient::Generate(const GenerationRequest& request) {
  if (request.capability == Capability::kDescribeFunction) {
    const std::string text = request.metadata.value("text", "element");
    const std::string context = request.metadata.value("context", "none");
    std::string purpose = "to use the " + ToLower(text) + " control";
    if (context != "none") purpose += " next to " + context.substr(0, context.find(';'));
    return "The element is marked with a " +
           request.metadata.value("color", std::string("red")) + " box.\n" +
           "The purpose is \"" + purpose + "\".";
  }
  if (request.capability == Capability::kRefineFunction) {
    const std::string purpose = request.metadata.value("purpose", "");
    return purpose.rfind("to ", 0) == 0 ? purpose : "to " + purpose;
  }
  throw GenerationError("mock function client cannot judge steps");
}

}  // namespace guikit
