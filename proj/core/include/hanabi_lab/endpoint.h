// Copyright 2026 The Hanabi Lab Authors
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

// Generic single-turn chat-completion client (OpenAI-compatible wire format).

#ifndef HANABI_LAB_ENDPOINT_H_
#define HANABI_LAB_ENDPOINT_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "hanabi_lab/agents.h"

namespace hanabi_lab {

struct EndpointConfig {
  std::string name = "default";
  std::string base_url;  // scheme://host[:port][/prefix]; requests go to <prefix>/chat/completions
  std::string model;
  double temperature = 0.0;
  int max_tokens = 512;
  double timeout_s = 60.0;
  int retry_budget = 3;  // attempts after the first
  int backoff_ms = 500;  // doubled per retry
  double max_requests_per_second = 0.0;  // 0: unlimited
  std::optional<std::uint64_t> seed;
  // Name of the environment variable holding the bearer token.
  std::string api_key_env = "HANABI_LAB_API_KEY";
};

// Reads a JSON object with the field names above. Throws ConfigError.
EndpointConfig EndpointConfigFromJson(std::string_view text);
std::string EndpointConfigToJson(const EndpointConfig& config);

struct EndpointResult {
  std::string text;
  int retries = 0;
  bool transport_failed = false;
  std::string error;
  double latency_ms = 0.0;
  std::string request_json;
  std::string response_json;
};

// Timeouts, connection errors, 429 and 5xx are retried up to retry_budget
// times. A 200 reply without choices[0].message.content fails at once.
EndpointResult RemoteModelDecide(const EndpointConfig& config, const std::string& system_prompt,
                                 const std::string& prompt);

std::unique_ptr<Agent> MakeRemoteAgent(const EndpointConfig& config);

}  // namespace hanabi_lab

#endif  // HANABI_LAB_ENDPOINT_H_
