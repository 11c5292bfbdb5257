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

#include "guikit/clients.h"

#include <fstream>
#include <sstream>
#include <thread>

#include "httplib.h"
#include "guikit/text.h"

namespace guikit {

std::string CapabilityName(Capability c) {
  switch (c) {
    case Capability::kDescribeFunction:
      return "describe_function";
    case Capability::kRefineFunction:
      return "refine_function";
    case Capability::kJudgeStep:
      return "judge_step";
  }
  return "judge_step";
}

std::string GenerationRequest::CacheKey() const {
  nlohmann::ordered_json doc;
  doc["capability"] = CapabilityName(capability);
  doc["system"] = system;
  doc["prompt"] = prompt;
  doc["images"] = image_refs;
  doc["metadata"] = metadata;
  return Sha256Hex(doc.dump());
}

CachingClient::CachingClient(std::shared_ptr<GenerationClient> inner,
                             std::filesystem::path dir)
    : inner_(std::move(inner)), dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

std::string CachingClient::Generate(const GenerationRequest& request) {
  const std::string key = request.CacheKey();
  std::optional<std::string> cached;
  {
    std::shared_lock lock(mu_);
    if (auto it = memory_.find(key); it != memory_.end()) cached = it->second;
  }
  if (cached) {
    std::unique_lock lock(mu_);
    ++hits_;
    return *cached;
  }
  const auto path = dir_ / (key + ".txt");
  if (std::ifstream in(path); in) {
    std::stringstream buf;
    buf << in.rdbuf();
    std::unique_lock lock(mu_);
    ++hits_;
    return memory_.emplace(key, buf.str()).first->second;
  }

  std::string response = inner_->Generate(request);

  // Write-then-rename keeps readers from seeing partial files.
  std::ostringstream tmp_name;
  tmp_name << key << ".tmp." << std::this_thread::get_id();
  const auto tmp = dir_ / tmp_name.str();
  {
    std::ofstream out(tmp, std::ios::binary);
    out << response;
  }
  std::filesystem::rename(tmp, path);

  std::unique_lock lock(mu_);
  ++misses_;
  memory_.emplace(key, response);
  return response;
}

size_t CachingClient::hits() const {
  std::shared_lock lock(mu_);
  return hits_;
}

size_t CachingClient::misses() const {
  std::shared_lock lock(mu_);
  return misses_;
}

RetryingClient::RetryingClient(std::shared_ptr<GenerationClient> inner,
                               int max_attempts,
                               std::chrono::milliseconds base_delay,
                               Sleeper sleeper)
    : inner_(std::move(inner)),
      max_attempts_(std::max(1, max_attempts)),
      base_delay_(base_delay),
      sleeper_(sleeper ? std::move(sleeper) : [](std::chrono::milliseconds d) {
        std::this_thread::sleep_for(d);
      }) {}

std::string RetryingClient::Generate(const GenerationRequest& request) {
  for (int attempt = 1;; ++attempt) {
    try {
      return inner_->Generate(request);
    } catch (const TransientGenerationError&) {
      if (attempt >= max_attempts_) throw;
      sleeper_(base_delay_ * (1LL << (attempt - 1)));
    }
  }
}

BoundedClient::BoundedClient(std::shared_ptr<GenerationClient> inner, int limit)
    : inner_(std::move(inner)), slots_(std::max(1, limit)) {}

std::string BoundedClient::Generate(const GenerationRequest& request) {
  slots_.acquire();
  struct Release {
    std::counting_semaphore<>& s;
    ~Release() { s.release(); }
  } release{slots_};
  return inner_->Generate(request);
}

HttpGenerationClient::HttpGenerationClient(std::string url,
                                           std::chrono::seconds timeout)
    : timeout_(timeout) {
  const size_t scheme = url.find("://");
  const size_t path_start =
      url.find('/', scheme == std::string::npos ? 0 : scheme + 3);
  origin_ = url.substr(0, path_start);
  path_ = path_start == std::string::npos ? "/" : url.substr(path_start);
}

std::string HttpGenerationClient::Generate(const GenerationRequest& request) {
  httplib::Client client(origin_);
  client.set_read_timeout(timeout_);
  client.set_connection_timeout(std::chrono::seconds(10));
  nlohmann::json body = {{"capability", CapabilityName(request.capability)},
                         {"system", request.system},
                         {"prompt", request.prompt},
                         {"images", request.image_refs},
                         {"metadata", request.metadata}};
  auto res = client.Post(path_, body.dump(), "application/json");
  if (!res) {
    throw TransientGenerationError("request to " + origin_ + path_ + " failed: " +
                                   httplib::to_string(res.error()));
  }
  if (res->status == 429 || res->status >= 500) {
    throw TransientGenerationError("server returned " + std::to_string(res->status));
  }
  if (res->status != 200) {
    throw GenerationError("server returned " + std::to_string(res->status));
  }
  try {
    return nlohmann::json::parse(res->body).at("response").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw GenerationError(std::string("malformed response body: ") + e.what());
  }
}

}  // namespace guikit
