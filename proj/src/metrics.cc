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

#include "guikit/metrics.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "guikit/text.h"

namespace guikit {

bool ClickHit(const PixelPoint& pred, const PixelBox& gold_box) {
  return gold_box.ContainsClosed(pred);
}

double OpF1(const std::string& pred_op, const std::string& gold_op) {
  const auto pred = SplitWhitespace(ToLower(pred_op));
  const auto gold = SplitWhitespace(ToLower(gold_op));
  if (pred.empty() && gold.empty()) return 1.0;
  if (pred.empty() || gold.empty()) return 0.0;
  std::map<std::string, int> gold_counts;
  for (const auto& t : gold) ++gold_counts[t];
  int common = 0;
  for (const auto& t : pred) {
    auto it = gold_counts.find(t);
    if (it != gold_counts.end() && it->second > 0) {
      --it->second;
      ++common;
    }
  }
  if (common == 0) return 0.0;
  const double precision = static_cast<double>(common) / pred.size();
  const double recall = static_cast<double>(common) / gold.size();
  return 2.0 * precision * recall / (precision + recall);
}

std::string NormalizedPayload(const Action& action) {
  if (const ScrollDirection* d = action.direction()) {
    return std::string(DirectionName(*d));
  }
  return action.attr ? ToLower(Trim(*action.attr)) : std::string();
}

std::string OperationString(const Action& action) {
  std::string op = action.kind;
  if (const ScrollDirection* d = action.direction()) {
    op += " " + std::string(DirectionName(*d));
  } else if (action.attr) {
    op += " " + *action.attr;
  }
  return op;
}

bool ElementHit(const StepRecord& rec) {
  if (!rec.pred) return false;
  const PixelPoint* pred_point = rec.pred->point();
  if (rec.gold_box) return pred_point != nullptr && ClickHit(*pred_point, *rec.gold_box);
  // Without an annotated element only non-positional golds can be hit, or an
  // exact point match.
  const PixelPoint* gold_point = rec.gold.point();
  if (gold_point == nullptr) return pred_point == nullptr;
  return pred_point != nullptr && *pred_point == *gold_point;
}

bool OpMatch(const StepRecord& rec) {
  return rec.pred && rec.pred->kind == rec.gold.kind &&
         NormalizedPayload(*rec.pred) == NormalizedPayload(rec.gold);
}

bool StepSuccess(const StepRecord& rec) {
  return ElementHit(rec) && OpMatch(rec);
}

double TapDistance(const PixelPoint& a, const PixelPoint& b,
                   const ScreenExtents& screen) {
  const double dx = static_cast<double>(a.x - b.x) / static_cast<double>(screen.w);
  const double dy = static_cast<double>(a.y - b.y) / static_cast<double>(screen.h);
  return std::sqrt(dx * dx + dy * dy);
}

bool InAugmentedBox(const PixelPoint& p, const PixelBox& box,
                    double area_factor) {
  const double scale = std::sqrt(area_factor);
  const double half_w = 0.5 * static_cast<double>(box.w) * scale;
  const double half_h = 0.5 * static_cast<double>(box.h) * scale;
  return std::abs(static_cast<double>(p.x - box.cx)) <= half_w &&
         std::abs(static_cast<double>(p.y - box.cy)) <= half_h;
}

bool ActionMatch(const StepRecord& rec) {
  if (!rec.pred || rec.pred->kind != rec.gold.kind) return false;
  const PixelPoint* gold_point = rec.gold.point();
  const PixelPoint* pred_point = rec.pred->point();
  if (gold_point && pred_point) {
    if (TapDistance(*gold_point, *pred_point, rec.screen) <=
        kTapDistanceThreshold) {
      return true;
    }
    return rec.gold_box && InAugmentedBox(*gold_point, *rec.gold_box) &&
           InAugmentedBox(*pred_point, *rec.gold_box);
  }
  const ScrollDirection* gold_dir = rec.gold.direction();
  const ScrollDirection* pred_dir = rec.pred->direction();
  if (gold_dir && pred_dir) return IsVertical(*gold_dir) == IsVertical(*pred_dir);
  if (gold_point || pred_point || gold_dir || pred_dir) return false;
  return NormalizedPayload(*rec.pred) == NormalizedPayload(rec.gold);
}

namespace {

std::optional<double> Ratio(size_t num, size_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

EvalReport Evaluate(const std::vector<StepRecord>& records) {
  EvalReport report;
  report.step_count = records.size();
  size_t hits = 0, click_hits = 0, op_matches = 0, successes = 0, matches = 0;
  double f1_sum = 0.0;
  report.steps.reserve(records.size());
  for (const StepRecord& rec : records) {
    StepOutcome out;
    out.id = rec.id;
    out.element_hit = ElementHit(rec);
    out.op_match = OpMatch(rec);
    out.step_success = out.element_hit && out.op_match;
    out.action_match = ActionMatch(rec);
    out.op_f1 = rec.pred ? OpF1(OperationString(*rec.pred),
                                OperationString(rec.gold))
                         : 0.0;
    if (!rec.pred) ++report.missing_predictions;
    if (rec.gold_box) {
      ++report.click_step_count;
      if (out.element_hit) ++click_hits;
    }
    hits += out.element_hit;
    op_matches += out.op_match;
    successes += out.step_success;
    matches += out.action_match;
    f1_sum += out.op_f1;
    report.steps.push_back(std::move(out));
  }
  report.click_acc = Ratio(click_hits, report.click_step_count);
  report.ele_acc = Ratio(hits, report.step_count);
  report.op_match_rate = Ratio(op_matches, report.step_count);
  report.step_sr = Ratio(successes, report.step_count);
  report.ams = Ratio(matches, report.step_count);
  if (report.step_count > 0) {
    report.op_f1_mean = f1_sum / static_cast<double>(report.step_count);
  }
  return report;
}

nlohmann::json ReportToJson(const EvalReport& report) {
  using nlohmann::json;
  auto opt = [](const std::optional<double>& v) {
    return v ? json(*v) : json(nullptr);
  };
  json out = {{"counts",
               {{"steps", report.step_count},
                {"click_steps", report.click_step_count},
                {"missing_predictions", report.missing_predictions}}},
              {"metrics",
               {{"click_acc", opt(report.click_acc)},
                {"ele_acc", opt(report.ele_acc)},
                {"op_f1", opt(report.op_f1_mean)},
                {"op_match", opt(report.op_match_rate)},
                {"step_sr", opt(report.step_sr)},
                {"ams", opt(report.ams)}}},
              {"steps", json::array()}};
  for (const StepOutcome& s : report.steps) {
    out["steps"].push_back({{"id", s.id},
                            {"element_hit", s.element_hit},
                            {"op_match", s.op_match},
                            {"step_success", s.step_success},
                            {"action_match", s.action_match},
                            {"op_f1", s.op_f1}});
  }
  return out;
}

std::string FormatReportTable(const EvalReport& report) {
  auto cell = [](const std::optional<double>& v) {
    if (!v) return std::string("     n/a");
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%7.2f%%", 100.0 * *v);
    return std::string(buf);
  };
  std::string out;
  out += "metric     value\n";
  out += "---------  --------\n";
  out += "ClickAcc  " + cell(report.click_acc) + "\n";
  out += "Ele.Acc   " + cell(report.ele_acc) + "\n";
  out += "Op.F1     " + cell(report.op_f1_mean) + "\n";
  out += "Step SR   " + cell(report.step_sr) + "\n";
  out += "AMS       " + cell(report.ams) + "\n";
  out += "steps: " + std::to_string(report.step_count) +
         ", with gold box: " + std::to_string(report.click_step_count) +
         ", missing predictions: " + std::to_string(report.missing_predictions) +
         "\n";
  return out;
}

}  // namespace guikit
