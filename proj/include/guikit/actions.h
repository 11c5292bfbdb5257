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

#ifndef GUIKIT_ACTIONS_H_
#define GUIKIT_ACTIONS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "guikit/geometry.h"

namespace guikit {

// Argument shape of an action kind.
enum class ArgSchema { kNone, kPoint, kText, kDirection };

enum class ScrollDirection { kUp, kDown, kLeft, kRight };

std::string_view DirectionName(ScrollDirection d);
std::optional<ScrollDirection> ParseDirection(std::string_view name);
bool IsVertical(ScrollDirection d);

struct ActionKind {
  std::string name;  // canonical upper case
  ArgSchema schema = ArgSchema::kNone;
  std::string pattern;  // shown to agents, e.g. "CLICK(x, y)"
};

// An action factors into its kind, a positional part (point or scroll
// direction) and a non-positional attribute (typed text, option label).
struct Action {
  std::string kind;
  std::variant<std::monostate, PixelPoint, ScrollDirection> pos;
  std::optional<std::string> attr;

  const PixelPoint* point() const { return std::get_if<PixelPoint>(&pos); }
  const ScrollDirection* direction() const {
    return std::get_if<ScrollDirection>(&pos);
  }

  friend bool operator==(const Action&, const Action&) = default;

  static Action Point(std::string kind, int64_t x, int64_t y);
  static Action Text(std::string kind, std::string text);
  static Action Scroll(ScrollDirection d);
  static Action Bare(std::string kind);
};

class ActionSpace {
 public:
  ActionSpace() = default;
  ActionSpace(std::string name, std::vector<ActionKind> kinds,
              std::map<std::string, std::string> aliases = {});

  const std::string& name() const { return name_; }
  const std::vector<ActionKind>& kinds() const { return kinds_; }
  const std::map<std::string, std::string>& aliases() const { return aliases_; }

  // Case-insensitive lookup; aliases resolve to their target kind.
  const ActionKind* Find(std::string_view kind) const;

  // One pattern per line, for prompt rendering.
  std::string Describe() const;

  // Parses the action-space table format:
  //   # comment
  //   !name mobile
  //   !alias TYPE INPUT
  //   CLICK   point      CLICK(x, y)
  // Schemas: none, point, text, direction. Throws SchemaError.
  static ActionSpace FromTable(std::string_view table,
                               const std::string& where = "");
  std::string ToTable() const;

 private:
  std::string name_;
  std::vector<ActionKind> kinds_;
  std::map<std::string, std::string> aliases_;
};

// The built-in "web" and "mobile" spaces.
const std::vector<ActionSpace>& DefaultSpaces();
const ActionSpace* FindSpace(const std::vector<ActionSpace>& spaces,
                             std::string_view name);

enum class ActionErrorCode {
  kSyntax,
  kMalformedLiteral,
  kUnterminatedString,
  kUnknownKind,
  kArityMismatch,
  kArgumentType,
};

std::string_view ActionErrorCodeName(ActionErrorCode code);

class ActionParseError : public std::runtime_error {
 public:
  ActionParseError(ActionErrorCode code, size_t offset, const std::string& what)
      : std::runtime_error(what), code_(code), offset_(offset) {}

  ActionErrorCode code() const { return code_; }
  size_t offset() const { return offset_; }

 private:
  ActionErrorCode code_;
  size_t offset_;
};

// Schema-free parse of `IDENT` or `IDENT(arg, ...)`. Arguments are integers,
// single-quoted strings (backslash escapes) or bare identifiers.
struct ActionCall {
  struct Identifier {
    std::string name;
    friend bool operator==(const Identifier&, const Identifier&) = default;
  };
  using Arg = std::variant<int64_t, std::string, Identifier>;

  std::string ident;
  std::vector<Arg> args;
};

ActionCall ParseActionCall(std::string_view code);

// Parses and binds against `space`. Throws ActionParseError.
Action ParseAction(std::string_view code, const ActionSpace& space);

// Canonical form: upper-case kind, ", " between arguments, single-quoted
// strings. Throws std::invalid_argument when `action` does not fit `space`.
std::string SerializeAction(const Action& action, const ActionSpace& space);

std::string QuoteString(std::string_view s);

}  // namespace guikit

#endif  // GUIKIT_ACTIONS_H_
