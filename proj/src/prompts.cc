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

#include "guikit/prompts.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "guikit/errors.h"
#include "guikit/text.h"

namespace guikit {
namespace {

struct KeySpec {
  std::string key;
  std::vector<std::string> placeholders;
  std::vector<std::string> defaults;
};

const std::vector<KeySpec>& Specs() {
  static const std::vector<KeySpec> kSpecs = {
      {"text2bbox",
       {},
       {"Provide the bounding boxes of each given text in a list format."}},
      {"bbox2text",
       {},
       {"Provide the text content of each given bounding box in a list "
        "format."}},
      {"bbox2dom",
       {"bbox"},
       {"I'd like some information about the specific region {bbox} in the "
        "image."}},
      {"function2bbox",
       {},
       {"In this image from a webpage, find out where to click for a certain "
        "need and provide bbox coordinates in a list format."}},
      {"navigation",
       {"task", "history", "action_space"},
       {R"(## Task: {task}
## History Actions:
{history}
## Action Space
{action_space}
## Requirements: Please infer the next action according to the Task and History Actions.
Return with Action Code. The Action Code should follow the definition in the Action Space.)"}},
      {"describe_function",
       {"text", "region", "context_text"},
       {R"(Please infer the purpose of the operation "click on the '{text}' on the {region} of the webpage" based on the webpage.
Please deliver the purpose specifically and clearly, which points to the certain item.
Its direct context includes the following information: {context_text}.
Please make the answer only in English.
Let's think step by step.
Your final answer should be in a new line and included in double quotation like:
The purpose is "xxx".)"}},
      {"refine_function",
       {"purpose", "example_1", "example_2", "example_3"},
       {R"(Can you rewrite the original purpose "{purpose}" into a short phrase?
Here are some examples:
{example_1}
{example_2}
{example_3}
Output only the refined purpose, start with 'to', without any explanation.)"}},
      {"refine_example",
       {},
       {R"(Original: "Clicking this button submits the login form so the user can access their account." Refined: to log into the account)",
        R"(Original: "This link opens the page that lists all items currently in the shopping cart." Refined: to view the shopping cart)",
        R"(Original: "The icon expands the navigation menu with links to the main sections of the site." Refined: to open the navigation menu)"}},
      {"judge_system",
       {},
       {"You are a mobile operation assistant, the main goal is to help "
        "identify whether the mobile navigation operation is correct."}},
      {"judge_middle",
       {"task", "history", "action", "step_idx"},
       {R"(Task: {task}
Action History: {history}
The Current Action: {action}
You are completing a mobile task and now in step {step_idx}. Picture 1 shows the current screen with action demonstration and picture 2 shows the screen after performing The Current Action on picture 1. You are also given the Action History before the Current Action.
Return:
1. Summarize picture 1 about its main content and its functionality. Also describe the changes that have occurred in Figure 2 compared to Figure 1. Describe them with necessary details, but not too long.
2. Based on the changes between Figure 1 and Figure 2, estimate the function of the Current Action. Return with format of "The function of the Current Action: xxx"
3. Analyze the rationality of the Current Action based on the Task. Return only the reason.
4. Return the final answer of the rationality of the Current Action with just 'True' or 'False'.
5. Analyze if the Task is successfully completed. Return only the reason.
6. Return the final answer of the complementarity of the Task with just 'True' or 'False'.)"}},
      {"judge_final",
       {"task", "history"},
       {R"(Task: {task}
Action History: {history}
You have just completed a mobile task with a series of actions listed in Action History. The picture shows the final screen of the mobile.
Return:
1. Summarize the picture about its main content and its functionality. Describe it with necessary details, but not too long.
2. Analyze if the task is successfully completed from the perspectives of success and completion separately.
3. Return the final answer of the analysis with just 'True' or 'False'.)"}},
  };
  return kSpecs;
}

const KeySpec* FindSpec(const std::string& key) {
  for (const KeySpec& s : Specs()) {
    if (s.key == key) return &s;
  }
  return nullptr;
}

std::vector<std::string> SplitParagraphs(const std::string& text) {
  std::vector<std::string> out;
  std::vector<std::string> current;
  for (const std::string& raw : SplitLines(text)) {
    std::string line = raw;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty()) {
      if (!current.empty()) out.push_back(Join(current, "\n"));
      current.clear();
      continue;
    }
    current.push_back(line);
  }
  if (!current.empty()) out.push_back(Join(current, "\n"));
  return out;
}

}  // namespace

std::vector<std::string> PlaceholdersIn(const std::string& tmpl) {
  std::vector<std::string> names;
  size_t pos = 0;
  while ((pos = tmpl.find('{', pos)) != std::string::npos) {
    const size_t close = tmpl.find('}', pos);
    if (close == std::string::npos) break;
    const std::string name = tmpl.substr(pos + 1, close - pos - 1);
    const bool identifier =
        !name.empty() && std::all_of(name.begin(), name.end(), [](char c) {
          return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
        });
    if (identifier) names.push_back(name);
    pos = close + 1;
  }
  return names;
}

const std::vector<std::string>& PromptPool::Keys() {
  static const std::vector<std::string> kKeys = [] {
    std::vector<std::string> keys;
    for (const KeySpec& s : Specs()) keys.push_back(s.key);
    return keys;
  }();
  return kKeys;
}

const std::vector<std::string>& PromptPool::DeclaredPlaceholders(
    const std::string& key) {
  const KeySpec* spec = FindSpec(key);
  if (spec == nullptr) throw SchemaError("", "unknown prompt key '" + key + "'");
  return spec->placeholders;
}

const PromptPool& PromptPool::Default() {
  static const PromptPool kPool = [] {
    PromptPool pool;
    for (const KeySpec& s : Specs()) pool.Set(s.key, s.defaults);
    return pool;
  }();
  return kPool;
}

void PromptPool::Set(const std::string& key, std::vector<std::string> templates) {
  const auto& declared = DeclaredPlaceholders(key);
  if (templates.empty()) throw SchemaError(key, "prompt pool is empty");
  for (const std::string& t : templates) {
    for (const std::string& name : PlaceholdersIn(t)) {
      if (std::find(declared.begin(), declared.end(), name) == declared.end()) {
        throw SchemaError(key, "undeclared placeholder {" + name + "}");
      }
    }
  }
  pools_[key] = std::move(templates);
}

const std::vector<std::string>& PromptPool::Templates(
    const std::string& key) const {
  auto it = pools_.find(key);
  if (it == pools_.end()) {
    throw SchemaError("", "no prompt pool for '" + key + "'");
  }
  return it->second;
}

const std::string& PromptPool::Pick(const std::string& key,
                                    std::mt19937_64& rng) const {
  const auto& pool = Templates(key);
  if (pool.size() == 1) return pool.front();
  std::uniform_int_distribution<size_t> dist(0, pool.size() - 1);
  return pool[dist(rng)];
}

PromptPool PromptPool::LoadDir(const std::filesystem::path& dir) {
  PromptPool pool = Default();
  for (const std::string& key : Keys()) {
    const auto path = dir / (key + ".txt");
    if (!std::filesystem::exists(path)) continue;
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    auto templates = SplitParagraphs(buf.str());
    try {
      pool.Set(key, std::move(templates));
    } catch (const SchemaError& e) {
      throw SchemaError(path.string(), e.what());
    }
  }
  return pool;
}

}  // namespace guikit
