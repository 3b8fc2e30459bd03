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

#include "hanabi_lab/endpoint.h"

#include <chrono>
#include <cstdlib>
#include <map>
#include <mutex>
#include <regex>
#include <thread>

#include "hanabi_lab/error.h"
#include "httplib.h"
#include "json.hpp"

namespace hanabi_lab {
namespace {

using Json = nlohmann::json;
using Clock = std::chrono::steady_clock;

struct Url {
  std::string origin;  // scheme://host:port
  std::string prefix;
};

Url SplitUrl(const std::string& base) {
  static const std::regex kUrl(R"(^(https?://[^/]+)(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(base, m, kUrl)) throw ConfigError("bad endpoint base_url: " + base);
  std::string prefix = m[2].matched ? m[2].str() : "";
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  return Url{m[1].str(), prefix};
}

// One pacing slot per endpoint name, shared by all agents in the process.
void Pace(const EndpointConfig& config) {
  if (config.max_requests_per_second <= 0.0) return;
  static std::mutex mu;
  static std::map<std::string, Clock::time_point> next_slot;
  const auto gap = std::chrono::duration_cast<Clock::duration>(
      std::chrono::duration<double>(1.0 / config.max_requests_per_second));
  Clock::time_point wake;
  {
    std::lock_guard lock(mu);
    auto& slot = next_slot[config.name];
    wake = std::max(slot, Clock::now());
    slot = wake + gap;
  }
  std::this_thread::sleep_until(wake);
}

class RemoteAgent : public Agent {
 public:
  explicit RemoteAgent(EndpointConfig config) : config_(std::move(config)) {}
  std::string Name() const override { return "endpoint:" + config_.name; }
  bool Deterministic() const override { return false; }

  AgentReply Respond(const Observation&, const std::string& prompt) override {
    const EndpointResult e = RemoteModelDecide(config_, SystemPrompt(), prompt);
    AgentReply r;
    r.raw_text = e.text;
    r.hedging_markers = CountHedging(e.text);
    r.retries = e.retries;
    r.transport_failed = e.transport_failed;
    r.transport_error = e.error;
    r.latency_ms = e.latency_ms;
    r.request_json = e.request_json;
    r.response_json = e.response_json;
    return r;
  }

 private:
  EndpointConfig config_;
};

}  // namespace

EndpointConfig EndpointConfigFromJson(std::string_view text) {
  EndpointConfig c;
  try {
    const Json j = Json::parse(text);
    c.name = j.value("name", c.name);
    c.base_url = j.at("base_url").get<std::string>();
    c.model = j.at("model").get<std::string>();
    c.temperature = j.value("temperature", c.temperature);
    c.max_tokens = j.value("max_tokens", c.max_tokens);
    c.timeout_s = j.value("timeout_s", c.timeout_s);
    c.retry_budget = j.value("retry_budget", c.retry_budget);
    c.backoff_ms = j.value("backoff_ms", c.backoff_ms);
    c.max_requests_per_second = j.value("max_requests_per_second", c.max_requests_per_second);
    if (j.contains("seed") && !j["seed"].is_null()) c.seed = j["seed"].get<std::uint64_t>();
    c.api_key_env = j.value("api_key_env", c.api_key_env);
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("endpoint config: ") + e.what());
  }
  if (c.retry_budget < 0 || c.timeout_s <= 0.0) throw ConfigError("endpoint config: bad limits");
  SplitUrl(c.base_url);
  return c;
}

std::string EndpointConfigToJson(const EndpointConfig& c) {
  Json j = {{"name", c.name},
            {"base_url", c.base_url},
            {"model", c.model},
            {"temperature", c.temperature},
            {"max_tokens", c.max_tokens},
            {"timeout_s", c.timeout_s},
            {"retry_budget", c.retry_budget},
            {"backoff_ms", c.backoff_ms},
            {"max_requests_per_second", c.max_requests_per_second},
            {"seed", c.seed ? Json(*c.seed) : Json(nullptr)},
            {"api_key_env", c.api_key_env}};
  return j.dump();
}

EndpointResult RemoteModelDecide(const EndpointConfig& config, const std::string& system_prompt,
                                 const std::string& prompt) {
  const Url url = SplitUrl(config.base_url);
  Json body = {{"model", config.model},
               {"temperature", config.temperature},
               {"max_tokens", config.max_tokens},
               {"messages",
                {{{"role", "system"}, {"content", system_prompt}}, {{"role", "user"}, {"content", prompt}}}}};
  if (config.seed) body["seed"] = *config.seed;

  EndpointResult result;
  result.request_json = body.dump();

  httplib::Client client(url.origin);
  const auto timeout = std::chrono::duration_cast<std::chrono::microseconds>(
      std::chrono::duration<double>(config.timeout_s));
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);
  httplib::Headers headers;
  if (const char* key = std::getenv(config.api_key_env.c_str()); key != nullptr && *key != '\0') {
    headers.emplace("Authorization", std::string("Bearer ") + key);
  }

  const auto start = Clock::now();
  for (int attempt = 0;; ++attempt) {
    Pace(config);
    auto res = client.Post(url.prefix + "/chat/completions", headers, result.request_json,
                           "application/json");
    bool retryable = false;
    if (!res) {
      result.error = "transport: " + httplib::to_string(res.error());
      retryable = true;
    } else if (res->status == 429 || res->status >= 500) {
      result.error = "http " + std::to_string(res->status);
      result.response_json = res->body;
      retryable = true;
    } else if (res->status != 200) {
      result.error = "http " + std::to_string(res->status);
      result.response_json = res->body;
    } else {
      result.response_json = res->body;
      try {
        const Json reply = Json::parse(res->body);
        result.text = reply.at("choices").at(0).at("message").at("content").get<std::string>();
        result.error.clear();
        break;
      } catch (const Json::exception& e) {
        result.error = std::string("malformed reply: ") + e.what();
      }
    }
    if (!retryable || attempt >= config.retry_budget) {
      result.transport_failed = true;
      break;
    }
    ++result.retries;
    if (config.backoff_ms > 0) {
      std::this_thread::sleep_for(std::chrono::milliseconds(config.backoff_ms << attempt));
    }
  }
  result.latency_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return result;
}

std::unique_ptr<Agent> MakeRemoteAgent(const EndpointConfig& config) {
  return std::make_unique<RemoteAgent>(config);
}

}  // namespace hanabi_lab
