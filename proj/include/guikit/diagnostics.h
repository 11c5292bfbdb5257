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

#ifndef GUIKIT_DIAGNOSTICS_H_
#define GUIKIT_DIAGNOSTICS_H_

#include <string>
#include <vector>

namespace guikit {

// Non-fatal event recorded while generating data (a dropped pair, a skipped
// record). `code` is a stable snake_case identifier for counting.
struct Diagnostic {
  std::string code;
  std::string subject;
  std::string message;
};

using Diagnostics = std::vector<Diagnostic>;

}  // namespace guikit

#endif  // GUIKIT_DIAGNOSTICS_H_
