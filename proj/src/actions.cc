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

#include <cctype>
#include <charconv>

#include "guikit/errors.h"
#include "guikit/text.h"

namespace guikit {

std::string_view DirectionName(ScrollDirection d) {
  switch (d) {
    case ScrollDirection::kUp:
      return "up";
    case ScrollDirection::kDown:
      return "down";
    case ScrollDirection::kLeft:
      return "left";
    case ScrollDirection::kRight:
      return "right";
  }
  return "up";
}

std::optional<ScrollDirection> ParseDirection(std::string_view name) {
  const std::string lower = ToLower(name);
  if (lower == "up") return ScrollDirection::kUp;
  if (lower == "down") return ScrollDirection::kDown;
  if (lower == "left") return ScrollDirection::kLeft;
  if (lower == "right") return ScrollDirection::kRight;
  return std::nullopt;
}

bool IsVertical(ScrollDirection d) {
  return d == ScrollDirection::kUp || d == ScrollDirection::kDown;
}

Action Action::Point(std::string kind, int64_t x, int64_t y) {
  return Action{ToUpper(kind), PixelPoint{x, y}, std::nullopt};
}

Action Action::Text(std::string kind, std::string text) {
  return Action{ToUpper(kind), std::monostate{}, std::move(text)};
}

Action Action::Scroll(ScrollDirection d) {
  return Action{"SCROLL", d, std::nullopt};
}

Action Action::Bare(std::string kind) {
  return Action{ToUpper(kind), std::monostate{}, std::nullopt};
}

std::string_view ActionErrorCodeName(ActionErrorCode code) {
  switch (code) {
    case ActionErrorCode::kSyntax:
      return "syntax";
    case ActionErrorCode::kMalformedLiteral:
      return "malformed_literal";
    case ActionErrorCode::kUnterminatedString:
      return "unterminated_string";
    case ActionErrorCode::kUnknownKind:
      return "unknown_kind";
    case ActionErrorCode::kArityMismatch:
      return "arity_mismatch";
    case ActionErrorCode::kArgumentType:
      return "argument_type";
  }
  return "syntax";
}

namespace {

class CallParser {
 public:
  explicit CallParser(std::string_view src) : src_(src) {}

  ActionCall Parse() {
    ActionCall call;
    SkipSpace();
    if (!AtIdentStart()) Fail(ActionErrorCode::kSyntax, "expected action name");
    call.ident = Identifier();
    SkipSpace();
    if (pos_ == src_.size()) return call;
    if (src_[pos_] != '(') Fail(ActionErrorCode::kSyntax, "expected '('");
    ++pos_;
    SkipSpace();
    if (Peek() == ')') {
      ++pos_;
    } else {
      while (true) {
        call.args.push_back(Literal());
        SkipSpace();
        if (Peek() == ',') {
          ++pos_;
          continue;
        }
        if (Peek() == ')') {
          ++pos_;
          break;
        }
        Fail(ActionErrorCode::kSyntax, "expected ',' or ')'");
      }
    }
    SkipSpace();
    if (pos_ != src_.size()) Fail(ActionErrorCode::kSyntax, "trailing input");
    return call;
  }

 private:
  char Peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }

  void SkipSpace() {
    while (pos_ < src_.size() &&
           std::isspace(static_cast<unsigned char>(src_[pos_]))) {
      ++pos_;
    }
  }

  bool AtIdentStart() const {
    const char c = Peek();
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }

  std::string Identifier() {
    const size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
            src_[pos_] == '_')) {
      ++pos_;
    }
    return std::string(src_.substr(start, pos_ - start));
  }

  ActionCall::Arg Literal() {
    SkipSpace();
    const char c = Peek();
    if (c == '\'') return QuotedString();
    if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) return Integer();
    if (AtIdentStart()) return ActionCall::Identifier{Identifier()};
    Fail(ActionErrorCode::kMalformedLiteral, "expected a literal");
  }

  int64_t Integer() {
    const size_t start = pos_;
    if (Peek() == '-') ++pos_;
    while (std::isdigit(static_cast<unsigned char>(Peek()))) ++pos_;
    // Digits glued to letters ("12px") are not an integer literal.
    if (AtIdentStart()) {
      Fail(ActionErrorCode::kMalformedLiteral, "malformed integer literal");
    }
    int64_t value = 0;
    const auto [ptr, ec] =
        std::from_chars(src_.data() + start, src_.data() + pos_, value);
    if (ec != std::errc() || ptr != src_.data() + pos_) {
      pos_ = start;
      Fail(ActionErrorCode::kMalformedLiteral, "malformed integer literal");
    }
    return value;
  }

  std::string QuotedString() {
    const size_t start = pos_;
    ++pos_;  // opening quote
    std::string out;
    while (pos_ < src_.size()) {
      const char c = src_[pos_++];
      if (c == '\'') return out;
      if (c == '\\') {
        if (pos_ == src_.size()) break;
        out.push_back(src_[pos_++]);
        continue;
      }
      out.push_back(c);
    }
    pos_ = start;
    Fail(ActionErrorCode::kUnterminatedString, "unterminated string literal");
  }

  [[noreturn]] void Fail(ActionErrorCode code, const std::string& msg) {
    throw ActionParseError(code, pos_,
                           msg + " at offset " + std::to_string(pos_) +
                               " in \"" + std::string(src_) + "\"");
  }

  std::string_view src_;
  size_t pos_ = 0;
};

size_t Arity(ArgSchema schema) {
  switch (schema) {
    case ArgSchema::kNone:
      return 0;
    case ArgSchema::kPoint:
      return 2;
    case ArgSchema::kText:
    case ArgSchema::kDirection:
      return 1;
  }
  return 0;
}

std::string_view SchemaName(ArgSchema schema) {
  switch (schema) {
    case ArgSchema::kNone:
      return "none";
    case ArgSchema::kPoint:
      return "point";
    case ArgSchema::kText:
      return "text";
    case ArgSchema::kDirection:
      return "direction";
  }
  return "none";
}

std::optional<ArgSchema> SchemaFromName(std::string_view name) {
  for (ArgSchema s : {ArgSchema::kNone, ArgSchema::kPoint, ArgSchema::kText,
                      ArgSchema::kDirection}) {
    if (SchemaName(s) == name) return s;
  }
  return std::nullopt;
}

}  // namespace

ActionCall ParseActionCall(std::string_view code) {
  return CallParser(code).Parse();
}

ActionSpace::ActionSpace(std::string name, std::vector<ActionKind> kinds,
                         std::map<std::string, std::string> aliases)
    : name_(std::move(name)), kinds_(std::move(kinds)) {
  for (ActionKind& k : kinds_) k.name = ToUpper(k.name);
  for (const auto& [from, to] : aliases) aliases_[ToUpper(from)] = ToUpper(to);
}

const ActionKind* ActionSpace::Find(std::string_view kind) const {
  std::string upper = ToUpper(kind);
  if (auto it = aliases_.find(upper); it != aliases_.end()) upper = it->second;
  for (const ActionKind& k : kinds_) {
    if (k.name == upper) return &k;
  }
  return nullptr;
}

std::string ActionSpace::Describe() const {
  std::vector<std::string> lines;
  for (const ActionKind& k : kinds_) lines.push_back(k.pattern);
  return Join(lines, "\n");
}

ActionSpace ActionSpace::FromTable(std::string_view table,
                                   const std::string& where) {
  std::string name;
  std::vector<ActionKind> kinds;
  std::map<std::string, std::string> aliases;
  const auto lines = SplitLines(table);
  for (size_t i = 0; i < lines.size(); ++i) {
    const std::string loc =
        (where.empty() ? std::string("<table>") : where) + ":" +
        std::to_string(i + 1);
    const std::string line = Trim(lines[i]);
    if (line.empty() || line[0] == '#') continue;
    const auto fields = SplitWhitespace(line);
    if (fields[0] == "!name") {
      if (fields.size() != 2) throw SchemaError(loc, "expected '!name NAME'");
      name = fields[1];
      continue;
    }
    if (fields[0] == "!alias") {
      if (fields.size() != 3) throw SchemaError(loc, "expected '!alias FROM TO'");
      aliases[ToUpper(fields[1])] = ToUpper(fields[2]);
      continue;
    }
    if (fields.size() < 3) {
      throw SchemaError(loc, "expected 'KIND SCHEMA PATTERN'");
    }
    const auto schema = SchemaFromName(ToLower(fields[1]));
    if (!schema) throw SchemaError(loc, "unknown schema '" + fields[1] + "'");
    // The pattern is the remainder of the line after the schema column.
    const size_t schema_pos = line.find(fields[1], fields[0].size());
    const std::string pattern =
        Trim(std::string_view(line).substr(schema_pos + fields[1].size()));
    ActionCall call;
    try {
      call = ParseActionCall(pattern);
    } catch (const ActionParseError& e) {
      throw SchemaError(loc, std::string("unparseable pattern: ") + e.what());
    }
    if (ToUpper(call.ident) != ToUpper(fields[0])) {
      throw SchemaError(loc, "pattern name does not match kind");
    }
    if (call.args.size() != Arity(*schema)) {
      throw SchemaError(loc, "pattern arity does not match schema");
    }
    for (const ActionKind& k : kinds) {
      if (k.name == ToUpper(fields[0])) {
        throw SchemaError(loc, "duplicate kind " + k.name);
      }
    }
    kinds.push_back(ActionKind{ToUpper(fields[0]), *schema, pattern});
  }
  if (name.empty()) throw SchemaError(where, "missing '!name' line");
  if (kinds.empty()) throw SchemaError(where, "action space has no kinds");
  ActionSpace space(name, std::move(kinds), std::move(aliases));
  for (const auto& [from, to] : space.aliases_) {
    bool found = false;
    for (const ActionKind& k : space.kinds_) found = found || k.name == to;
    if (!found) throw SchemaError(where, "alias target " + to + " is not a kind");
  }
  return space;
}

std::string ActionSpace::ToTable() const {
  std::string out = "!name " + name_ + "\n";
  for (const auto& [from, to] : aliases_) {
    out += "!alias " + from + " " + to + "\n";
  }
  for (const ActionKind& k : kinds_) {
    out += k.name + " " + std::string(SchemaName(k.schema)) + " " + k.pattern +
           "\n";
  }
  return out;
}

const std::vector<ActionSpace>& DefaultSpaces() {
  static const std::vector<ActionSpace> kSpaces = [] {
    std::vector<ActionSpace> spaces;
    spaces.push_back(ActionSpace::FromTable(R"(!name web
!alias TYPE INPUT
CLICK   point  CLICK(x, y)
INPUT   text   INPUT('text')
SELECT  text   SELECT('option')
HOVER   point  HOVER(x, y)
ENTER   none   ENTER
)",
                                            "web"));
    spaces.push_back(ActionSpace::FromTable(R"(!name mobile
CLICK            point      CLICK(x, y)
INPUT            text       INPUT('text')
SCROLL           direction  SCROLL(direction)
PRESS_BACK       none       PRESS_BACK
PRESS_HOME       none       PRESS_HOME
PRESS_ENTER      none       PRESS_ENTER
TASK_COMPLETE    none       TASK_COMPLETE
TASK_IMPOSSIBLE  none       TASK_IMPOSSIBLE
)",
                                            "mobile"));
    return spaces;
  }();
  return kSpaces;
}

const ActionSpace* FindSpace(const std::vector<ActionSpace>& spaces,
                             std::string_view name) {
  for (const ActionSpace& s : spaces) {
    if (s.name() == name) return &s;
  }
  return nullptr;
}

Action ParseAction(std::string_view code, const ActionSpace& space) {
  const ActionCall call = ParseActionCall(code);
  const ActionKind* kind = space.Find(call.ident);
  if (kind == nullptr) {
    throw ActionParseError(ActionErrorCode::kUnknownKind, 0,
                           "unknown action kind '" + call.ident +
                               "' in space " + space.name());
  }
  if (call.args.size() != Arity(kind->schema)) {
    throw ActionParseError(
        ActionErrorCode::kArityMismatch, 0,
        kind->name + " expects " + std::to_string(Arity(kind->schema)) +
            " argument(s), got " + std::to_string(call.args.size()));
  }
  auto type_error = [&](const std::string& msg) {
    return ActionParseError(ActionErrorCode::kArgumentType, 0,
                            kind->name + ": " + msg);
  };
  Action action{kind->name, std::monostate{}, std::nullopt};
  switch (kind->schema) {
    case ArgSchema::kNone:
      break;
    case ArgSchema::kPoint: {
      const auto* x = std::get_if<int64_t>(&call.args[0]);
      const auto* y = std::get_if<int64_t>(&call.args[1]);
      if (!x || !y) throw type_error("coordinates must be integers");
      if (*x < 0 || *y < 0) throw type_error("coordinates must be >= 0");
      action.pos = PixelPoint{*x, *y};
      break;
    }
    case ArgSchema::kText: {
      const auto* s = std::get_if<std::string>(&call.args[0]);
      if (!s) throw type_error("argument must be a quoted string");
      action.attr = *s;
      break;
    }
    case ArgSchema::kDirection: {
      std::optional<ScrollDirection> d;
      if (const auto* id = std::get_if<ActionCall::Identifier>(&call.args[0])) {
        d = ParseDirection(id->name);
      } else if (const auto* s = std::get_if<std::string>(&call.args[0])) {
        d = ParseDirection(*s);
      }
      if (!d) throw type_error("direction must be up, down, left or right");
      action.pos = *d;
      break;
    }
  }
  return action;
}

std::string QuoteString(std::string_view s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('\'');
  return out;
}

std::string SerializeAction(const Action& action, const ActionSpace& space) {
  const ActionKind* kind = space.Find(action.kind);
  if (kind == nullptr) {
    throw std::invalid_argument("action kind " + action.kind +
                                " not in space " + space.name());
  }
  switch (kind->schema) {
    case ArgSchema::kNone:
      return kind->name;
    case ArgSchema::kPoint: {
      const PixelPoint* p = action.point();
      if (!p) throw std::invalid_argument(kind->name + " requires a point");
      return kind->name + "(" + std::to_string(p->x) + ", " +
             std::to_string(p->y) + ")";
    }
    case ArgSchema::kText:
      if (!action.attr) throw std::invalid_argument(kind->name + " requires text");
      return kind->name + "(" + QuoteString(*action.attr) + ")";
    case ArgSchema::kDirection: {
      const ScrollDirection* d = action.direction();
      if (!d) throw std::invalid_argument(kind->name + " requires a direction");
      return kind->name + "(" + std::string(DirectionName(*d)) + ")";
    }
  }
  return kind->name;
}

}  // namespace guikit
