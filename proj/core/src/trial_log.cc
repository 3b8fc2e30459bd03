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

#include "hanabi_lab/trial_log.h"

#include <sstream>

#include "hanabi_lab/error.h"
#include "json_codec.h"

#ifndef HANABI_LAB_VERSION
#define HANABI_LAB_VERSION "0.0.0"
#endif

namespace hanabi_lab {
namespace {

template <typename T, typename Parse>
T ParseEnum(const Json& j, const char* key, Parse parse) {
  const std::string text = j.at(key).get<std::string>();
  auto v = parse(text);
  if (!v) throw SchemaError(std::string("bad ") + key + ": " + text);
  return *v;
}

Json TrialConfigJson(const TrialConfig& c) {
  Json j = {{"scenario", ToString(c.scenario)},
            {"players", c.players},
            {"architecture", ToString(c.architecture)},
            {"ablation", ToString(c.ablation)},
            {"variant", ToString(c.variant)},
            {"depth", ToString(c.depth)},
            {"random_shortlist", c.random_shortlist},
            {"agent", c.agent.ToString()},
            {"n", c.n},
            {"seed", c.seed}};
  if (c.agent.remote) j["endpoint"] = Json::parse(EndpointConfigToJson(c.agent.endpoint));
  return j;
}

TrialConfig TrialConfigFrom(const Json& j) {
  TrialConfig c;
  c.scenario = ParseEnum<ScenarioId>(j, "scenario", ParseScenarioId);
  c.players = j.at("players").get<int>();
  c.architecture = ParseEnum<Architecture>(j, "architecture", ParseArchitecture);
  c.ablation = ParseEnum<AblationCondition>(j, "ablation", ParseAblation);
  c.variant = ParseEnum<ShortlistVariant>(j, "variant", ParseShortlistVariant);
  c.depth = ParseEnum<BeliefDepth>(j, "depth", ParseBeliefDepth);
  c.random_shortlist = j.at("random_shortlist").get<bool>();
  c.n = j.at("n").get<int>();
  c.seed = j.at("seed").get<std::uint64_t>();
  const std::string agent = j.at("agent").get<std::string>();
  if (agent.starts_with("endpoint:")) {
    const EndpointConfig e = EndpointConfigFromJson(j.at("endpoint").dump());
    c.agent = ParseAgentSpec(agent, std::span<const EndpointConfig>(&e, 1));
  } else {
    c.agent = ParseAgentSpec(agent);
  }
  return c;
}

Json CheckSchema(std::string_view line, std::string_view schema) {
  Json j;
  try {
    j = Json::parse(line);
  } catch (const Json::exception& e) {
    throw SchemaError(std::string("unreadable log line: ") + e.what());
  }
  const std::string got = j.value("schema", "");
  if (got != schema) throw SchemaError("expected schema " + std::string(schema) + ", got '" + got + "'");
  return j;
}

template <typename T, typename F>
std::vector<T> ReadLines(const std::string& path, F parse) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<T> out;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) out.push_back(parse(line));
  }
  return out;
}

}  // namespace

std::string TrialConfigToJson(const TrialConfig& c) { return TrialConfigJson(c).dump(); }

TrialConfig TrialConfigFromJson(std::string_view text) {
  try {
    return TrialConfigFrom(Json::parse(text));
  } catch (const Json::exception& e) {
    throw SchemaError(std::string("trial config: ") + e.what());
  }
}

std::string FullGameConfigToJson(const FullGameConfig& c) {
  Json seats = Json::array();
  for (const AgentSpec& s : c.seats) seats.push_back(s.ToString());
  Json j = {{"label", c.Label()},
            {"players", c.players},
            {"transcript", ToString(c.transcript)},
            {"strategy", c.strategy},
            {"planner", c.planner},
            {"conventions", c.conventions},
            {"partner_knowledge", c.partner_knowledge},
            {"depth", ToString(c.depth)},
            {"ablation", ToString(c.ablation)},
            {"variant", ToString(c.variant)},
            {"seats", seats},
            {"n", c.n},
            {"seed", c.seed}};
  return j.dump();
}

std::string TrialToJsonLine(const TrialRecord& r) {
  Json j = {{"schema", kTrialSchema},
            {"label", r.label},
            {"config", TrialConfigJson(r.config)},
            {"index", r.index},
            {"seed", r.seed},
            {"prompt", r.prompt},
            {"reply", r.reply},
            {"retry_reply", r.retry_reply},
            {"reprompted", r.reprompted},
            {"parse_status", r.parse_status},
            {"parsed", OptionalToJson(r.parsed)},
            {"integrity_flag", r.integrity_flag},
            {"invalid", r.invalid},
            {"transport_failed", r.transport_failed},
            {"transport_error", r.transport_error},
            {"retries", r.retries},
            {"planner_top", OptionalToJson(r.planner_top)},
            {"correct", r.correct},
            {"overrode", r.overrode},
            {"grade", r.grade},
            {"hedging_markers", r.hedging_markers},
            {"latency_ms", r.latency_ms},
            {"started_at", r.started_at.empty() ? Json(nullptr) : Json(r.started_at)},
            {"finished_at", r.finished_at.empty() ? Json(nullptr) : Json(r.finished_at)},
            {"request", r.request_json},
            {"response", r.response_json}};
  if (r.config.agent.remote) {
    j["temperature"] = r.config.agent.endpoint.temperature;
    j["endpoint_seed"] = OptionalToJson(r.config.agent.endpoint.seed);
  }
  return j.dump();
}

TrialRecord TrialFromJsonLine(std::string_view line) {
  const Json j = CheckSchema(line, kTrialSchema);
  try {
    TrialRecord r;
    r.label = j.at("label").get<std::string>();
    r.config = TrialConfigFrom(j.at("config"));
    r.index = j.at("index").get<int>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.prompt = j.at("prompt").get<std::string>();
    r.reply = j.at("reply").get<std::string>();
    r.retry_reply = j.at("retry_reply").get<std::string>();
    r.reprompted = j.at("reprompted").get<bool>();
    r.parse_status = j.at("parse_status").get<std::string>();
    r.parsed = OptionalFromJson<Action>(j.at("parsed"));
    r.integrity_flag = j.at("integrity_flag").get<bool>();
    r.invalid = j.at("invalid").get<bool>();
    r.transport_failed = j.at("transport_failed").get<bool>();
    r.transport_error = j.at("transport_error").get<std::string>();
    r.retries = j.at("retries").get<int>();
    r.planner_top = OptionalFromJson<Action>(j.at("planner_top"));
    r.correct = j.at("correct").get<bool>();
    r.overrode = j.at("overrode").get<bool>();
    r.grade = j.at("grade").get<std::string>();
    r.hedging_markers = j.at("hedging_markers").get<int>();
    r.latency_ms = j.at("latency_ms").get<double>();
    r.started_at = j.at("started_at").is_null() ? "" : j.at("started_at").get<std::string>();
    r.finished_at = j.at("finished_at").is_null() ? "" : j.at("finished_at").get<std::string>();
    r.request_json = j.at("request").get<std::string>();
    r.response_json = j.at("response").get<std::string>();
    return r;
  } catch (const Json::exception& e) {
    throw SchemaError(std::string("trial record: ") + e.what());
  }
}

std::string GameToJsonLine(const GameRecord& g) {
  Json j = {{"schema", kGameSchema},
            {"label", g.label},
            {"game", g.game},
            {"seed", g.seed},
            {"players", g.players},
            {"score", g.score},
            {"survival_turns", g.survival_turns},
            {"total_actions", g.total_actions},
            {"termination", g.termination},
            {"aborted", g.aborted},
            {"abort_reason", g.abort_reason},
            {"fallback_turns", g.fallback_turns},
            {"overrides", g.overrides}};
  return j.dump();
}

GameRecord GameFromJsonLine(std::string_view line) {
  const Json j = CheckSchema(line, kGameSchema);
  try {
    GameRecord g;
    g.label = j.at("label").get<std::string>();
    g.game = j.at("game").get<int>();
    g.seed = j.at("seed").get<std::uint64_t>();
    g.players = j.at("players").get<int>();
    g.score = j.at("score").get<int>();
    g.survival_turns = j.at("survival_turns").get<int>();
    g.total_actions = j.at("total_actions").get<int>();
    g.termination = j.at("termination").get<std::string>();
    g.aborted = j.at("aborted").get<bool>();
    g.abort_reason = j.at("abort_reason").get<std::string>();
    g.fallback_turns = j.at("fallback_turns").get<int>();
    g.overrides = j.at("overrides").get<int>();
    return g;
  } catch (const Json::exception& e) {
    throw SchemaError(std::string("game record: ") + e.what());
  }
}

std::string TurnToJsonLine(const TurnRecord& t) {
  Json j = {{"schema", kTurnSchema},
            {"label", t.label},
            {"game", t.game},
            {"turn", t.turn},
            {"actor", t.actor},
            {"prompt", t.prompt},
            {"reply", t.reply},
            {"parse_status", t.parse_status},
            {"action", OptionalToJson(t.action)},
            {"fallback", t.fallback},
            {"planner_top", OptionalToJson(t.planner_top)},
            {"overrode", t.overrode},
            {"hedging_markers", t.hedging_markers},
            {"retries", t.retries}};
  return j.dump();
}

std::vector<TrialRecord> ReadTrialLog(const std::string& path) {
  return ReadLines<TrialRecord>(path, TrialFromJsonLine);
}

std::vector<GameRecord> ReadGameLog(const std::string& path) {
  return ReadLines<GameRecord>(path, GameFromJsonLine);
}

std::string DetectSchema(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  for (std::string line; std::getline(in, line);) {
    if (line.empty()) continue;
    try {
      return Json::parse(line).value("schema", "");
    } catch (const Json::exception& e) {
      throw SchemaError(std::string("unreadable log line: ") + e.what());
    }
  }
  return "";
}

JsonlAppender::JsonlAppender(const std::string& path) : out_(path, std::ios::trunc) {
  if (!out_) throw std::runtime_error("cannot write " + path);
}

void JsonlAppender::Append(const std::string& line) {
  std::lock_guard lock(mu_);
  out_ << line << '\n';
}

void JsonlAppender::Flush() {
  std::lock_guard lock(mu_);
  out_.flush();
}

std::string ManifestToJson(const RunManifest& m) {
  Json j = {{"schema", kManifestSchema},
            {"command_line", m.command_line},
            {"config", m.config_json.empty() ? Json(nullptr) : Json::parse(m.config_json)},
            {"seed", m.seed},
            {"code_version", m.code_version},
            {"started_at", m.started_at},
            {"finished_at", m.finished_at.empty() ? Json(nullptr) : Json(m.finished_at)},
            {"outputs", m.outputs},
            {"truncated", m.truncated}};
  return j.dump(2);
}

RunManifest ManifestFromJson(std::string_view text) {
  const Json j = CheckSchema(text, kManifestSchema);
  RunManifest m;
  m.command_line = j.at("command_line").get<std::string>();
  m.config_json = j.at("config").is_null() ? "" : j.at("config").dump();
  m.seed = j.at("seed").get<std::uint64_t>();
  m.code_version = j.at("code_version").get<std::string>();
  m.started_at = j.at("started_at").get<std::string>();
  m.finished_at = j.at("finished_at").is_null() ? "" : j.at("finished_at").get<std::string>();
  m.outputs = j.at("outputs").get<std::vector<std::string>>();
  m.truncated = j.at("truncated").get<bool>();
  return m;
}

std::string SummaryToJson(std::span<const ConditionSummary> conditions, std::span<const GameSummary> games) {
  Json c = Json::array();
  for (const ConditionSummary& s : conditions) {
    c.push_back(Json{{"label", s.label},
                     {"n", s.n},
                     {"valid", s.valid},
                     {"invalid", s.invalid},
                     {"correct", s.correct},
                     {"rate", s.rate},
                     {"overrides", s.overrides},
                     {"override_rate", s.override_rate},
                     {"integrity_flags", s.integrity_flags},
                     {"transport_failures", s.transport_failures},
                     {"mean_hedging", s.mean_hedging}});
  }
  Json g = Json::array();
  for (const GameSummary& s : games) {
    g.push_back(Json{{"label", s.label},
                     {"n", s.n},
                     {"aborted", s.aborted},
                     {"mean_score", s.mean_score},
                     {"mean_survival", s.mean_survival},
                     {"score_ci", {s.score_ci_lo, s.score_ci_hi}}});
  }
  Json j{{"schema", kSummarySchema}, {"conditions", c}, {"games", g}};
  return j.dump(2) + "\n";
}

std::string_view CodeVersion() { return HANABI_LAB_VERSION; }

}  // namespace hanabi_lab
