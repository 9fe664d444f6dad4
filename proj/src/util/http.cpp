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


#include "seedmine/util/http.hpp"

#include <httplib.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <thread>

#include "seedmine/util/error.hpp"

namespace seedmine::http {

Endpoint Endpoint::parse(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw Error(ErrorCode::kConfigError, "endpoint needs a scheme: " + url);
  const auto path_start = url.find('/', scheme_end + 3);
  Endpoint e;
  e.base = url.substr(0, path_start);
  e.path = path_start == std::string::npos ? "/" : url.substr(path_start);
  if (!e.base.starts_with("http://")) {
    throw Error(ErrorCode::kConfigError, "only http:// endpoints are supported: " + url);
  }
  return e;
}

nlohmann::json post_json(const Endpoint& endpoint, const nlohmann::json& body, const RetryPolicy& policy,
                         const std::vector<std::pair<std::string, std::string>>& headers) {
  httplib::Client client(endpoint.base);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(policy.timeout);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(policy.timeout - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());

  httplib::Headers hdrs;
  for (const auto& [k, v] : headers) hdrs.emplace(k, v);
  const std::string payload = body.dump();

  std::string last_error;
  auto backoff = policy.initial_backoff;
  for (int attempt = 0; attempt <= policy.max_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(backoff);
      backoff = std::min(backoff * 2, policy.max_backoff);
    }
    auto res = client.Post(endpoint.path, hdrs, payload, "application/json");
    if (!res) {
      last_error = "transport: " + httplib::to_string(res.error());
    } else if (res->status >= 500 || res->status == 429) {
      last_error = "HTTP " + std::to_string(res->status);
    } else if (res->status != 200) {
      throw Error(ErrorCode::kRemoteUnavailable,
                  endpoint.base + endpoint.path + " rejected request: HTTP " + std::to_string(res->status));
    } else {
      auto j = nlohmann::json::parse(res->body, nullptr, false);
      if (!j.is_discarded()) return j;
      last_error = "unparseable response body";
    }
    spdlog::debug("POST {}{} attempt {} failed: {}", endpoint.base, endpoint.path, attempt + 1, last_error);
  }
  throw Error(ErrorCode::kRemoteUnavailable, endpoint.base + endpoint.path + ": " + last_error);
}

}  // namespace seedmine::http
