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

// Scenario trial grids and full-game runs.

#ifndef HANABI_LAB_EXPERIMENTS_H_
#define HANABI_LAB_EXPERIMENTS_H_

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hanabi_lab/agents.h"
#include "hanabi_lab/belief.h"
#include "hanabi_lab/endpoint.h"
#include "hanabi_lab/game.h"
#include "hanabi_lab/planner.h"
#include "hanabi_lab/scenarios.h"

namespace hanabi_lab {

struct AgentSpec {
  bool remote = false;
  OracleKind oracle = OracleKind::kCompliant;
  EndpointConfig endpoint;  // remote only

  // "oracle:<kind>" or "endpoint:<name>".
  std::string ToString() const;
  std::unique_ptr<Agent> Make() const;
  bool operator==(const AgentSpec& o) const { return ToString() == o.ToString(); }
};

// `endpoints` resolves "endpoint:<name>". Throws ConfigError.
AgentSpec ParseAgentSpec(std::string_view text, std::span<const EndpointConfig> endpoints = {});

struct TrialConfig {
  ScenarioId scenario = ScenarioId::kS5;
  int players = 2;
  Architecture architecture = Architecture::kPromptBased;
  AblationCondition ablation = AblationCondition::kFullGraph;
  ShortlistVariant variant = ShortlistVariant::kV0;
  BeliefDepth depth = BeliefDepth::kL0L1L2;
  bool random_shortlist = false;  // the no-graph shortlist control
  AgentSpec agent;
  int n = 20;
  std::uint64_t seed = 0;

  // "S5|gated|full_graph|V0|L0L1L2|oracle:compliant", with "@<k>P" after the
  // scenario for k != 2 players and a trailing "|random_shortlist" for the control.
  std::string Label() const;
  // Throws ConfigError on an invalid combination.
  void Validate() const;
};

struct TrialRecord {
  std::string label;
  TrialConfig config;
  int index = 0;
  std::uint64_t seed = 0;
  std::string prompt;
  std::string reply;
  std::string retry_reply;
  bool reprompted = false;
  std::string parse_status;
  std::optional<Action> parsed;
  bool integrity_flag = false;  // gated reply mapped onto the nearest option
  bool invalid = false;
  bool transport_failed = false;
  std::string transport_error;
  int retries = 0;
  std::optional<Action> planner_top;
  bool correct = false;
  bool overrode = false;
  std::string grade;  // "correct" / "incorrect" / "override" / "invalid"
  int hedging_markers = 0;
  double latency_ms = 0.0;
  // Wall-clock ISO-8601 stamps for remote agents; empty for oracle runs so
  // that their logs are byte-reproducible.
  std::string started_at;
  std::string finished_at;
  std::string request_json;
  std::string response_json;
};

struct RunOptions {
  int parallelism = 0;  // 0: hardware concurrency
  // Called in index order, from one thread at a time.
  std::function<void(const TrialRecord&)> on_trial;
  const std::atomic<bool>* cancel = nullptr;
};

struct TrialRun {
  std::vector<TrialRecord> records;  // index order; shorter than n if cancelled
  bool truncated = false;
  int transport_failures = 0;
};

TrialRun RunTrials(const TrialConfig& config, const RunOptions& options = {});

struct ConditionSummary {
  std::string label;
  int n = 0;
  int valid = 0;
  int invalid = 0;
  int correct = 0;
  double rate = 0.0;
  int overrides = 0;
  double override_rate = 0.0;
  int integrity_flags = 0;
  int transport_failures = 0;
  double mean_hedging = 0.0;

  bool operator==(const ConditionSummary&) const = default;
};

// Rates are over valid trials (0 when none remain). Throws
// std::invalid_argument on mixed labels or an empty span.
ConditionSummary Aggregate(std::span<const TrialRecord> records);
// One summary per label, in first-seen order.
std::vector<ConditionSummary> AggregateByLabel(std::span<const TrialRecord> records);

struct FullGameConfig {
  int players = 2;
  TranscriptMode transcript = TranscriptMode::kScattered;
  bool strategy = false;
  bool planner = false;  // shortlist shown; the seat may override (informed)
  bool conventions = false;
  bool partner_knowledge = false;
  BeliefDepth depth = BeliefDepth::kNone;
  AblationCondition ablation = AblationCondition::kFullGraph;
  ShortlistVariant variant = ShortlistVariant::kV0;
  std::vector<AgentSpec> seats;  // one spec for all seats, or one per seat
  int n = 10;
  std::uint64_t seed = 0;
  bool log_prompts = true;
  std::string conventions_text;
  std::string strategy_text;

  // Flag label, e.g. "baseline", "no_transcript+conventions+pk",
  // "no_transcript+planner+graph_L0L1@5P". Bijective with the flag set and
  // player count. The default scattered transcript has no token.
  std::string Label() const;
  void Validate() const;
};

// Sets the flag fields of `config` from a label; other fields are kept.
// Throws ConfigError on an unknown token.
void ApplyLabel(std::string_view label, FullGameConfig& config);

struct TurnRecord {
  std::string label;
  int game = 0;
  int turn = 0;
  int actor = 0;
  std::string prompt;
  std::string reply;
  std::string parse_status;
  std::optional<Action> action;
  bool fallback = false;  // unusable reply; a safe default was played
  std::optional<Action> planner_top;
  bool overrode = false;
  int hedging_markers = 0;
  int retries = 0;
};

struct GameRecord {
  std::string label;
  int game = 0;
  std::uint64_t seed = 0;
  int players = 2;
  int score = 0;
  int survival_turns = 0;
  int total_actions = 0;
  std::string termination;
  bool aborted = false;
  std::string abort_reason;
  int fallback_turns = 0;
  int overrides = 0;
};

struct FullGameRun {
  std::vector<GameRecord> games;
  std::vector<TurnRecord> turns;  // grouped by game, in game order
  bool truncated = false;
  int aborted = 0;
};

struct FullGameOptions {
  int parallelism = 0;
  const std::atomic<bool>* cancel = nullptr;
};

// Shipped texts from the data directory (HANABI_LAB_DATA_DIR overrides the
// install location). Throws ConfigError when missing.
std::string LoadDataText(std::string_view file_name);

FullGameRun RunFullGames(const FullGameConfig& config, const FullGameOptions& options = {});

struct GameSummary {
  std::string label;
  int n = 0;
  int aborted = 0;
  double mean_score = 0.0;
  double mean_survival = 0.0;
  // 95% t-free normal interval on the mean score.
  double score_ci_lo = 0.0;
  double score_ci_hi = 0.0;

  bool operator==(const GameSummary&) const = default;
};

// Aborted games are counted but excluded from the means.
std::vector<GameSummary> SummarizeGames(std::span<const GameRecord> games);

// Preset grids.
// full, removed, frozen and corrupted, PromptBased
std::vector<TrialConfig> AblationGrid(const TrialConfig& base);
std::vector<TrialConfig> FullScenarioGrid(const TrialConfig& base);   // 9 ids x 3 archs x 5 ablations
std::vector<FullGameConfig> FactorialGrid(const FullGameConfig& base);  // graph x planner
std::vector<FullGameConfig> DepthGrid(const FullGameConfig& base);      // depth x {3P, 5P}

}  // namespace hanabi_lab

#endif  // HANABI_LAB_EXPERIMENTS_H_
