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

#include "guikit/actions.h"

#include <gtest/gtest.h>

#include <random>

#include "guikit/errors.h"

namespace guikit {
namespace {

const ActionSpace& Mobile() { return *FindSpace(DefaultSpaces(), "mobile"); }
const ActionSpace& Web() { return *FindSpace(DefaultSpaces(), "web"); }

ActionErrorCode CodeOf(std::string_view code, const ActionSpace& space) {
  try {
    ParseAction(code, space);
  } catch (const ActionParseError& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error for " << code;
  return ActionErrorCode::kSyntax;
}

TEST(ParseActionTest, Examples) {
  EXPECT_EQ(ParseAction("CLICK(120, 340)", Mobile()), Action::Point("CLICK", 120, 340));
  EXPECT_EQ(ParseAction("  click ( 1,2 ) ", Mobile()), Action::Point("CLICK", 1, 2));
  EXPECT_EQ(ParseAction("INPUT('it\\'s')", Mobile()), Action::Text("INPUT", "it's"));
  EXPECT_EQ(ParseAction("SCROLL(down)", Mobile()), Action::Scroll(ScrollDirection::kDown));
  EXPECT_EQ(ParseAction("SCROLL('UP')", Mobile()), Action::Scroll(ScrollDirection::kUp));
  EXPECT_EQ(ParseAction("PRESS_BACK", Mobile()), Action::Bare("PRESS_BACK"));
  EXPECT_EQ(ParseAction("PRESS_HOME()", Mobile()), Action::Bare("PRESS_HOME"));
  EXPECT_EQ(ParseAction("TYPE('abc')", Web()), Action::Text("INPUT", "abc"));
}

TEST(ParseActionTest, ErrorCodes) {
  EXPECT_EQ(CodeOf("", Mobile()), ActionErrorCode::kSyntax);
  EXPECT_EQ(CodeOf("CLICK(1, 2", Mobile()), ActionErrorCode::kSyntax);
  EXPECT_EQ(CodeOf("CLICK(1, 2) extra", Mobile()), ActionErrorCode::kSyntax);
  EXPECT_EQ(CodeOf("CLICK(12px, 3)", Mobile()), ActionErrorCode::kMalformedLiteral);
  EXPECT_EQ(CodeOf("CLICK(1.5, 3)", Mobile()), ActionErrorCode::kSyntax);
  EXPECT_EQ(CodeOf("INPUT('abc)", Mobile()), ActionErrorCode::kUnterminatedString);
  EXPECT_EQ(CodeOf("HOVER(1, 2)", Mobile()), ActionErrorCode::kUnknownKind);
  EXPECT_EQ(CodeOf("CLICK(1)", Mobile()), ActionErrorCode::kArityMismatch);
  EXPECT_EQ(CodeOf("PRESS_BACK(1)", Mobile()), ActionErrorCode::kArityMismatch);
  EXPECT_EQ(CodeOf("CLICK('a', 2)", Mobile()), ActionErrorCode::kArgumentType);
  EXPECT_EQ(CodeOf("CLICK(-1, 2)", Mobile()), ActionErrorCode::kArgumentType);
  EXPECT_EQ(CodeOf("SCROLL(sideways)", Mobile()), ActionErrorCode::kArgumentType);
  EXPECT_EQ(CodeOf("INPUT(42)", Mobile()), ActionErrorCode::kArgumentType);
}

TEST(ParseActionTest, ErrorOffsetPointsAtProblem) {
  try {
    ParseActionCall("CLICK(1; 2)");
    FAIL();
  } catch (const ActionParseError& e) {
    EXPECT_EQ(e.offset(), 7u);
    EXPECT_EQ(ActionErrorCodeName(e.code()), "syntax");
  }
}

TEST(SerializeActionTest, CanonicalForm) {
  EXPECT_EQ(SerializeAction(Action::Point("click", 5, 6), Mobile()), "CLICK(5, 6)");
  EXPECT_EQ(SerializeAction(Action::Text("INPUT", "a'b\\c"), Mobile()), "INPUT('a\\'b\\\\c')");
  EXPECT_EQ(SerializeAction(Action::Scroll(ScrollDirection::kLeft), Mobile()), "SCROLL(left)");
  EXPECT_EQ(SerializeAction(Action::Bare("TASK_COMPLETE"), Mobile()), "TASK_COMPLETE");
  EXPECT_THROW(SerializeAction(Action::Bare("HOVER"), Mobile()), std::invalid_argument);
  EXPECT_THROW(SerializeAction(Action::Bare("CLICK"), Mobile()), std::invalid_argument);
}

Action RandomAction(std::mt19937_64& rng, const ActionSpace& space) {
  const auto& kinds = space.kinds();
  const ActionKind& k = kinds[std::uniform_int_distribution<size_t>(0, kinds.size() - 1)(rng)];
  std::uniform_int_distribution<int64_t> coord(0, 5000);
  switch (k.schema) {
    case ArgSchema::kPoint:
      return Action::Point(k.name, coord(rng), coord(rng));
    case ArgSchema::kDirection:
      return Action::Scroll(static_cast<ScrollDirection>(rng() % 4));
    case ArgSchema::kText: {
      static const std::string alphabet = "ab '\\()\",xyz\u00e9";
      std::string s;
      const size_t len = rng() % 12;
      for (size_t i = 0; i < len; ++i) s.push_back(alphabet[rng() % alphabet.size()]);
      return Action::Text(k.name, s);
    }
    case ArgSchema::kNone:
      break;
  }
  return Action::Bare(k.name);
}

TEST(SerializeActionTest, RoundTripsRandomActions) {
  std::mt19937_64 rng(5);
  for (const ActionSpace& space : DefaultSpaces()) {
    for (int i = 0; i < 2000; ++i) {
      const Action a = RandomAction(rng, space);
      const std::string code = SerializeAction(a, space);
      ASSERT_EQ(ParseAction(code, space), a) << code;
      ASSERT_EQ(SerializeAction(ParseAction(code, space), space), code);
    }
  }
}

TEST(ActionSpaceTest, DefaultSpaces) {
  EXPECT_EQ(Mobile().kinds().size(), 8u);
  EXPECT_EQ(Web().kinds().size(), 5u);
  ASSERT_NE(Web().Find("type"), nullptr);
  EXPECT_EQ(Web().Find("type")->name, "INPUT");
  EXPECT_EQ(Mobile().Find("TYPE"), nullptr);
  EXPECT_NE(Mobile().Describe().find("CLICK(x, y)"), std::string::npos);
}

TEST(ActionSpaceTest, TableRoundTrip) {
  for (const ActionSpace& space : DefaultSpaces()) {
    const ActionSpace again = ActionSpace::FromTable(space.ToTable());
    EXPECT_EQ(again.name(), space.name());
    EXPECT_EQ(again.aliases(), space.aliases());
    EXPECT_EQ(again.ToTable(), space.ToTable());
  }
}

TEST(ActionSpaceTest, TableErrors) {
  EXPECT_THROW(ActionSpace::FromTable("CLICK point CLICK(x, y)\n"), SchemaError);
  EXPECT_THROW(ActionSpace::FromTable("!name a\nCLICK blob CLICK(x)\n"), SchemaError);
  EXPECT_THROW(ActionSpace::FromTable("!name a\nCLICK point TAP(x, y)\n"), SchemaError);
  EXPECT_THROW(ActionSpace::FromTable("!name a\nCLICK point CLICK(x)\n"), SchemaError);
  EXPECT_THROW(ActionSpace::FromTable("!name a\n!alias TAP PRESS\nCLICK point CLICK(x, y)\n"),
               SchemaError);
}

}  // namespace
}  // namespace guikit
