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

#ifndef GUIKIT_PROMPTS_H_
#define GUIKIT_PROMPTS_H_

#include <filesystem>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace guikit {

// Template pools keyed by purpose ("text2bbox", "judge_middle", ...). Each
// template may only use the placeholders declared for its key.
//
// Keys and their placeholders:
//   text2bbox, bbox2text, function2bbox   (none)
//   bbox2dom                              {bbox}
//   navigation                            {task} {history} {action_space}
//   describe_function                     {text} {region} {context_text}
//   refine_function                       {purpose} {example_1} {example_2}
//                                         {example_3}
//   judge_system                          (none)
//   judge_middle                          {task} {history} {action} {step_idx}
//   judge_final                           {task} {history}
class PromptPool {
 public:
  PromptPool() = default;

  // Pools seeded with one template per key.
  static const PromptPool& Default();

  // Reads `<key>.txt` files from `dir`; templates are separated by blank
  // lines. Keys without a file keep their default pool. Throws SchemaError
  // on undeclared placeholders or empty pools.
  static PromptPool LoadDir(const std::filesystem::path& dir);

  static const std::vector<std::string>& DeclaredPlaceholders(
      const std::string& key);
  static const std::vector<std::string>& Keys();

  // Throws SchemaError when a template uses an undeclared placeholder.
  void Set(const std::string& key, std::vector<std::string> templates);

  const std::vector<std::string>& Templates(const std::string& key) const;
  const std::string& First(const std::string& key) const {
    return Templates(key).front();
  }
  const std::string& Pick(const std::string& key, std::mt19937_64& rng) const;

 private:
  std::map<std::string, std::vector<std::string>> pools_;
};

// Placeholder names ("{name}") used in `tmpl`, in order of appearance.
std::vector<std::string> PlaceholdersIn(const std::string& tmpl);

}  // namespace guikit

#endif  // GUIKIT_PROMPTS_H_
