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

#ifndef GUIKIT_ERRORS_H_
#define GUIKIT_ERRORS_H_

#include <stdexcept>
#include <string>

namespace guikit {

// Coordinate outside the domain of a geometric mapping.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Caller violated an operation's documented precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A size budget admits no valid output.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An interchange document does not conform to its schema. `where` is a
// "file:line" style location, possibly empty.
class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::string where, const std::string& what)
      : std::runtime_error(where.empty() ? what : where + ": " + what),
        where_(std::move(where)) {}

  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

}  // namespace guikit

#endif  // GUIKIT_ERRORS_H_
