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

#ifndef GUIKIT_METRICS_H_
#define GUIKIT_METRICS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "guikit/actions.h"
#include "guikit/geometry.h"

namespace guikit {

struct ScreenExtents {
  int64_t w = 1;
  int64_t h = 1;
};

// One evaluated step. `pred` is absent when the prediction was missing or
// could not be parsed; such steps fail every predicate.
struct StepRecord {
  std::string id;
  Action gold;
  std::optional<PixelBox> gold_box;
  std::optional<Action> pred;
  ScreenExtents screen;
};

// Tap tolerance as a fraction of the screen, in axis-normalized units.
inline constexpr double kTapDistanceThreshold = 0.14;
// Gold boxes are enlarged to this multiple of their area for tap matching.
inline constexpr double kAugmentedAreaFactor = 2.4;

// Closed-box hit test.
bool ClickHit(const PixelPoint& pred, const PixelBox& gold_box);

// Bag-of-tokens F1 over lower-cased whitespace tokens.
double OpF1(const std::string& pred_op, const std::string& gold_op);

// "KIND payload" string an operation is scored on; coordinates are excluded.
std::string OperationString(const Action& action);

// Attribute text or scroll direction, trimmed and lower-cased.
std::string NormalizedPayload(const Action& action);

bool ElementHit(const StepRecord& rec);
bool OpMatch(const StepRecord& rec);
bool StepSuccess(const StepRecord& rec);

// Axis-normalized Euclidean distance between two taps.
double TapDistance(const PixelPoint& a, const PixelPoint& b,
                   const ScreenExtents& screen);
// Closed containment in `box` scaled by sqrt(area_factor) per axis about its
// center.
bool InAugmentedBox(const PixelPoint& p, const PixelBox& box,
                    double area_factor = kAugmentedAreaFactor);

// Per-step action matching predicate behind the action matching score.
bool ActionMatch(const StepRecord& rec);

struct StepOutcome {
  std::string id;
  bool element_hit = false;
  bool op_match = false;
  bool step_success = false;
  bool action_match = false;
  double op_f1 = 0.0;
};

struct EvalReport {
  std::vector<StepOutcome> steps;
  size_t step_count = 0;
  size_t click_step_count = 0;    // steps with a gold box
  size_t missing_predictions = 0;
  // Absent when the denominator is zero.
  std::optional<double> click_acc;
  std::optional<double> ele_acc;
  std::optional<double> op_f1_mean;
  std::optional<double> op_match_rate;
  std::optional<double> step_sr;
  std::optional<double> ams;
};

EvalReport Evaluate(const std::vector<StepRecord>& records);

nlohmann::json ReportToJson(const EvalReport& report);
std::string FormatReportTable(const EvalReport& report);

}  // namespace guikit

#endif  // GUIKIT_METRICS_H_
