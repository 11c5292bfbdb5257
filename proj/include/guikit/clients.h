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

#ifndef GUIKIT_CLIENTS_H_
#define GUIKIT_CLIENTS_H_

#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <semaphore>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace guikit {

enum class Capability { kDescribeFunction, kRefineFunction, kJudgeStep };

std::string CapabilityName(Capability c);

// One call to an external vision-language or language model.
struct GenerationRequest {
  Capability capability = Capability::kJudgeStep;
  std::string system;
  std::string prompt;
  std::vector<std::string> image_refs;
  // Side information a client may use but the prompt does not carry (the
  // annotation box color, fixture keys for mocks).
  nlohmann::json metadata = nlohmann::json::object();

  // Stable identity used for caching.
  std::string CacheKey() const;
};

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rate limiting, timeouts and server errors; worth retrying.
class TransientGenerationError : public GenerationError {
 public:
  using GenerationError::GenerationError;
};

class GenerationClient {
 public:
  virtual ~GenerationClient() = default;
  virtual std::string Generate(const GenerationRequest& request) = 0;
};

// Delegates to a function; the building block for deterministic mocks.
class ScriptedClient : public GenerationClient {
 public:
  using Fn = std::function<std::string(const GenerationRequest&)>;
  explicit ScriptedClient(Fn fn) : fn_(std::move(fn)) {}
  std::string Generate(const GenerationRequest& request) override {
    return fn_(request);
  }

 private:
  Fn fn_;
};

// Content-addressed response cache: one file per request, named by the
// SHA-256 of the request. Safe for concurrent use.
class CachingClient : public GenerationClient {
 public:
  CachingClient(std::shared_ptr<GenerationClient> inner,
                std::filesystem::path dir);
  std::string Generate(const GenerationRequest& request) override;

  size_t hits() const;
  size_t misses() const;

 private:
  std::shared_ptr<GenerationClient> inner_;
  std::filesystem::path dir_;
  mutable std::shared_mutex mu_;
  std::map<std::string, std::string> memory_;
  size_t hits_ = 0;
  size_t misses_ = 0;
};

// Retries TransientGenerationError with exponential backoff.
class RetryingClient : public GenerationClient {
 public:
  using Sleeper = std::function<void(std::chrono::milliseconds)>;
  RetryingClient(std::shared_ptr<GenerationClient> inner, int max_attempts,
                 std::chrono::milliseconds base_delay, Sleeper sleeper = {});
  std::string Generate(const GenerationRequest& request) override;

 private:
  std::shared_ptr<GenerationClient> inner_;
  int max_attempts_;
  std::chrono::milliseconds base_delay_;
  Sleeper sleeper_;
};

// Admits at most `limit` concurrent calls to the inner client.
class BoundedClient : public GenerationClient {
 public:
  BoundedClient(std::shared_ptr<GenerationClient> inner, int limit);
  std::string Generate(const GenerationRequest& request) override;

 private:
  std::shared_ptr<GenerationClient> inner_;
  std::counting_semaphore<> slots_;
};

// POSTs {"capability", "system", "prompt", "images", "metadata"} as JSON to
// `url` and reads {"response": "..."}. 429 and 5xx are transient.
class HttpGenerationClient : public GenerationClient {
 public:
  explicit HttpGenerationClient(std::string url,
                                std::chrono::seconds timeout = std::chrono::seconds(120));
  std::string Generate(const GenerationRequest& request) override;

 private:
  std::string origin_;
  std::string path_;
  std::chrono::seconds timeout_;
};

}  // namespace guikit

#endif  // GUIKIT_CLIENTS_H_
