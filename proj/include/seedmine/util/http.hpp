// Copyright 2026 The Seedmine Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <chrono>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace seedmine::http {

struct RetryPolicy {
  int max_retries = 3;  // attempts = 1 + max_retries
  std::chrono::milliseconds initial_backoff{200};
  std::chrono::milliseconds max_backoff{5000};
  std::chrono::milliseconds timeout{30000};
};

struct Endpoint {
  std::string base;  // scheme://host[:port]
  std::string path;  // /...

  // Accepts "http://host:port/path"; throws ConfigError otherwise.
  static Endpoint parse(const std::string& url);
};

// POSTs a JSON body and returns the parsed JSON response. Transport errors,
// 5xx/429 responses and unparseable bodies are retried with exponential
// backoff; once attempts are exhausted, throws RemoteUnavailable.
nlohmann::json post_json(const Endpoint& endpoint, const nlohmann::json& body, const RetryPolicy& policy,
                         const std::vector<std::pair<std::string, std::string>>& headers = {});

}  // namespace seedmine::http
