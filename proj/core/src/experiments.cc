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

#include "hanabi_lab/experiments.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <ctime>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <fmt/format.h>

#include "hanabi_lab/error.h"
#include "hanabi_lab/rng.h"

#ifndef HANABI_LAB_DATA_DIR
#define HANABI_LAB_DATA_DIR "data"
#endif

namespace hanabi_lab {
namespace {

std::string NowIso() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Runs job(i) for i in [0, n) on a bounded pool. Results are handed to
// `deliver` in index order as soon as the prefix is complete. Returns the
// number of delivered results, which is < n only after cancellation.
template <typename R>
int OrderedParallel(int n, int parallelism, const std::atomic<bool>* cancel,
                    const std::function<R(int)>& job, const std::function<void(R&&)>& deliver) {
  if (parallelism <= 0) parallelism = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  parallelism = std::min(parallelism, std::max(n, 1));
  std::vector<std::optional<R>> slots(n);
  std::atomic<int> next{0};
  std::mutex mu;
  int delivered = 0;
  std::exception_ptr failure;

  auto worker = [&] {
    for (;;) {
      if (cancel != nullptr && cancel->load()) return;
      const int i = next.fetch_add(1);
      if (i >= n) return;
      std::optional<R> result;
      try {
        result = job(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
        next.store(n);
        return;
      }
      std::lock_guard lock(mu);
      slots[i] = std::move(result);
      while (delivered < n && slots[delivered]) {
        deliver(std::move(*slots[delivered]));
        slots[delivered].reset();
        ++delivered;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < parallelism; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return delivered;
}

Action SafeDefault(const GameState& state) {
  const auto legal = LegalActions(state, state.current_player);
  const int last = static_cast<int>(state.hands[state.current_player].size()) - 1;
  if (IsLegal(state, Action::Discard(last))) return Action::Discard(last);
  for (const Action& a : legal) {
    if (a.IsHint()) return a;
  }
  return legal.front();
}

std::string RetryNote(const Observation& obs, ParseStatus status) {
  if (status == ParseStatus::kOutsideShortlist || obs.architecture == Architecture::kGated) {
    return std::string(kGatedRetryNote);
  }
  return "Your previous answer did not name a legal action. End with one line that starts with "
         "\"I will\".";
}

struct Decision {
  AgentReply first;
  std::optional<AgentReply> second;
  ParseResult parse;
  std::optional<Action> action;
  bool integrity_flag = false;
  bool transport_failed = false;
  std::string transport_error;
  int retries = 0;
  double latency_ms = 0.0;
};

// One prompt, at most one re-prompt, then the gated nearest-option mapping.
Decision Decide(Agent& agent, const Observation& obs, const std::string& prompt) {
  Decision d;
  d.first = agent.Respond(obs, prompt);
  d.retries = d.first.retries;
  d.latency_ms = d.first.latency_ms;
  if (d.first.transport_failed) {
    d.transport_failed = true;
    d.transport_error = d.first.transport_error;
    return d;
  }
  d.parse = ParseAction(d.first.raw_text, obs);
  if (d.parse.status != ParseStatus::kOk) {
    const std::string retry_prompt = prompt + "\n" + RetryNote(obs, d.parse.status) + "\n";
    d.second = agent.Respond(obs, retry_prompt);
    d.retries += d.second->retries;
    d.latency_ms += d.second->latency_ms;
    if (d.second->transport_failed) {
      d.transport_failed = true;
      d.transport_error = d.second->transport_error;
      return d;
    }
    d.parse = ParseAction(d.second->raw_text, obs);
  }
  if (d.parse.status == ParseStatus::kOk) {
    d.action = d.parse.action;
  } else if (d.parse.status == ParseStatus::kOutsideShortlist) {
    d.action = NearestShortlistEntry(*obs.shortlist, *d.parse.action);
    d.integrity_flag = true;
  }
  return d;
}

}  // namespace

std::string AgentSpec::ToString() const {
  return remote ? "endpoint:" + endpoint.name : "oracle:" + std::string(hanabi_lab::ToString(oracle));
}

std::unique_ptr<Agent> AgentSpec::Make() const {
  return remote ? MakeRemoteAgent(endpoint) : MakeScriptedOracle(oracle);
}

AgentSpec ParseAgentSpec(std::string_view text, std::span<const EndpointConfig> endpoints) {
  AgentSpec spec;
  if (text.starts_with("oracle:")) {
    auto kind = ParseOracleKind(text.substr(7));
    if (!kind) throw ConfigError("unknown oracle kind: " + std::string(text));
    spec.oracle = *kind;
    return spec;
  }
  if (text.starts_with("endpoint:")) {
    const std::string_view name = text.substr(9);
    for (const EndpointConfig& e : endpoints) {
      if (e.name == name) {
        spec.remote = true;
        spec.endpoint = e;
        return spec;
      }
    }
    throw ConfigError("no endpoint named " + std::string(name));
  }
  throw ConfigError("agent must be oracle:<kind> or endpoint:<name>: " + std::string(text));
}

std::string TrialConfig::Label() const {
  std::string id(ToString(scenario));
  if (players != 2) id += fmt::format("@{}P", players);
  std::string out = fmt::format("{}|{}|{}|{}|{}|{}", id, ToString(architecture), ToString(ablation),
                                ToString(variant), ToString(depth), agent.ToString());
  if (random_shortlist) out += "|random_shortlist";
  return out;
}

void TrialConfig::Validate() const {
  if (n < 1) throw ConfigError("n must be at least 1");
  const bool depth_series =
      scenario == ScenarioId::kS5 || scenario == ScenarioId::kL2 || scenario == ScenarioId::kL3;
  if (players < kMinPlayers || players > kMaxPlayers || (players != 2 && !depth_series)) {
    throw ConfigError(fmt::format("{} cannot be played with {} players", ToString(scenario), players));
  }
  if (architecture == Architecture::kPromptBased && variant != ShortlistVariant::kV0) {
    throw ConfigError("shortlist variant given without a shortlist architecture");
  }
  if (architecture == Architecture::kPromptBased && random_shortlist) {
    throw ConfigError("random shortlist control needs a shortlist architecture");
  }
  const bool has_graph = depth != BeliefDepth::kNone && ablation != AblationCondition::kBeliefRemoved;
  if (random_shortlist && has_graph) {
    throw ConfigError("random shortlist control runs without a graph (depth none)");
  }
  if (depth == BeliefDepth::kNone && ablation != AblationCondition::kFullGraph &&
      ablation != AblationCondition::kBeliefRemoved) {
    throw ConfigError("ablation needs a graph; depth is none");
  }
}

TrialRun RunTrials(const TrialConfig& cfg, const RunOptions& options) {
  cfg.Validate();
  const ScenarioInstance inst = MakeScenario(cfg.scenario, cfg.players);
  const std::string label = cfg.Label();
  const bool remote = cfg.agent.remote;

  std::function<TrialRecord(int)> job = [&](int i) {
    TrialRecord r;
    r.label = label;
    r.config = cfg;
    r.index = i;
    r.seed = DeriveSeed(cfg.seed, static_cast<std::uint64_t>(i));
    if (remote) r.started_at = NowIso();

    ObservationOptions o;
    o.architecture = cfg.architecture;
    o.depth = cfg.depth;
    o.ablation = cfg.ablation;
    o.variant = cfg.variant;
    o.random_shortlist = cfg.random_shortlist;
    o.control_seed = r.seed;
    const Observation obs = BuildObservation(inst.state, inst.acting_player, o);
    r.prompt = BuildPrompt(obs);

    auto agent = cfg.agent.Make();
    const Decision d = Decide(*agent, obs, r.prompt);
    r.reply = d.first.raw_text;
    r.request_json = d.first.request_json;
    r.response_json = d.first.response_json;
    if (d.second) {
      r.reprompted = true;
      r.retry_reply = d.second->raw_text;
    }
    r.retries = d.retries;
    r.latency_ms = remote ? d.latency_ms : 0.0;
    r.hedging_markers = CountHedging(d.second ? d.second->raw_text : d.first.raw_text);
    if (obs.shortlist && !obs.shortlist->unscored) r.planner_top = obs.shortlist->entries.front().action;
    if (remote) r.finished_at = NowIso();

    if (d.transport_failed) {
      r.transport_failed = true;
      r.transport_error = d.transport_error;
      r.invalid = true;
      r.parse_status = "transport_failed";
      r.grade = "invalid";
      return r;
    }
    r.parse_status = std::string(ToString(d.parse.status));
    r.integrity_flag = d.integrity_flag;
    if (!d.action) {
      r.invalid = true;
      r.grade = "invalid";
      return r;
    }
    r.parsed = d.action;
    const GradeResult g =
        Grade(inst, *d.action, r.planner_top, cfg.architecture == Architecture::kInformed);
    r.correct = g.correct;
    r.overrode = g.overrode;
    r.grade = std::string(ToString(g.kind()));
    return r;
  };

  TrialRun run;
  std::function<void(TrialRecord&&)> deliver = [&](TrialRecord&& r) {
    if (r.transport_failed) ++run.transport_failures;
    if (options.on_trial) options.on_trial(r);
    run.records.push_back(std::move(r));
  };
  const int done = OrderedParallel<TrialRecord>(cfg.n, options.parallelism, options.cancel, job, deliver);
  run.truncated = done < cfg.n;
  return run;
}

ConditionSummary Aggregate(std::span<const TrialRecord> records) {
  if (records.empty()) throw std::invalid_argument("Aggregate: no records");
  ConditionSummary s;
  s.label = records.front().label;
  double hedging = 0.0;
  for (const TrialRecord& r : records) {
    if (r.label != s.label) throw std::invalid_argument("Aggregate: mixed conditions");
    ++s.n;
    if (r.transport_failed) ++s.transport_failures;
    if (r.invalid) {
      ++s.invalid;
      continue;
    }
    ++s.valid;
    s.correct += r.correct ? 1 : 0;
    s.overrides += r.overrode ? 1 : 0;
    s.integrity_flags += r.integrity_flag ? 1 : 0;
    hedging += r.hedging_markers;
  }
  if (s.valid == 0) return s;
  s.rate = static_cast<double>(s.correct) / s.valid;
  s.override_rate = static_cast<double>(s.overrides) / s.valid;
  s.mean_hedging = hedging / s.valid;
  return s;
}

std::vector<ConditionSummary> AggregateByLabel(std::span<const TrialRecord> records) {
  std::vector<std::string> order;
  std::map<std::string, std::vector<TrialRecord>> groups;
  for (const TrialRecord& r : records) {
    auto [it, fresh] = groups.try_emplace(r.label);
    if (fresh) order.push_back(r.label);
    it->second.push_back(r);
  }
  std::vector<ConditionSummary> out;
  for (const std::string& label : order) out.push_back(Aggregate(groups[label]));
  return out;
}

std::string FullGameConfig::Label() const {
  std::vector<std::string> parts;
  switch (transcript) {
    case TranscriptMode::kOff: parts.push_back("no_transcript"); break;
    case TranscriptMode::kScattered: break;
    case TranscriptMode::kSummarized: parts.push_back("summarized_transcript"); break;
  }
  if (strategy) parts.push_back("strategy");
  if (planner) parts.push_back("planner");
  if (conventions) parts.push_back("conventions");
  if (partner_knowledge) parts.push_back("pk");
  if (depth != BeliefDepth::kNone) parts.push_back("graph_" + std::string(ToString(depth)));
  if (ablation != AblationCondition::kFullGraph) parts.push_back(std::string(ToString(ablation)));
  if (variant != ShortlistVariant::kV0) parts.push_back(std::string(ToString(variant)));
  std::string out;
  if (parts.empty()) {
    out = "baseline";
  } else {
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "+" : "") + parts[i];
  }
  if (players != 2) out += fmt::format("@{}P", players);
  return out;
}

void ApplyLabel(std::string_view label, FullGameConfig& c) {
  std::string text(label);
  c.players = 2;
  if (auto at = text.find('@'); at != std::string::npos) {
    const std::string p = text.substr(at + 1);
    if (p.size() != 2 || p[1] != 'P' || p[0] < '2' || p[0] > '5') {
      throw ConfigError("bad player suffix in label: " + std::string(label));
    }
    c.players = p[0] - '0';
    text.resize(at);
  }
  c.transcript = TranscriptMode::kScattered;
  c.strategy = c.planner = c.conventions = c.partner_knowledge = false;
  c.depth = BeliefDepth::kNone;
  c.ablation = AblationCondition::kFullGraph;
  c.variant = ShortlistVariant::kV0;
  if (text == "baseline") return;
  std::istringstream in(text);
  std::string tok;
  while (std::getline(in, tok, '+')) {
    if (tok == "no_transcript") c.transcript = TranscriptMode::kOff;
    else if (tok == "transcript") c.transcript = TranscriptMode::kScattered;
    else if (tok == "summarized_transcript") c.transcript = TranscriptMode::kSummarized;
    else if (tok == "strategy") c.strategy = true;
    else if (tok == "planner") c.planner = true;
    else if (tok == "conventions") c.conventions = true;
    else if (tok == "pk") c.partner_knowledge = true;
    else if (tok.starts_with("graph_") && ParseBeliefDepth(tok.substr(6))) c.depth = *ParseBeliefDepth(tok.substr(6));
    else if (auto a = ParseAblation(tok)) c.ablation = *a;
    else if (auto v = ParseShortlistVariant(tok)) c.variant = *v;
    else throw ConfigError("unknown label token: " + tok);
  }
}

void FullGameConfig::Validate() const {
  if (players < kMinPlayers || players > kMaxPlayers) throw ConfigError("players must be 2..5");
  if (n < 1) throw ConfigError("n must be at least 1");
  if (seats.size() != 1 && static_cast<int>(seats.size()) != players) {
    throw ConfigError("give one agent for all seats or one per seat");
  }
  if (depth == BeliefDepth::kNone && ablation != AblationCondition::kFullGraph) {
    throw ConfigError("ablation needs a graph; depth is none");
  }
  if (!planner && variant != ShortlistVariant::kV0) {
    throw ConfigError("shortlist variant given without the planner");
  }
}

std::string LoadDataText(std::string_view file_name) {
  const char* env = std::getenv("HANABI_LAB_DATA_DIR");
  const std::string dir = env != nullptr && *env != '\0' ? env : HANABI_LAB_DATA_DIR;
  const std::string path = dir + "/" + std::string(file_name);
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

FullGameRun RunFullGames(const FullGameConfig& cfg_in, const FullGameOptions& options) {
  cfg_in.Validate();
  FullGameConfig cfg = cfg_in;
  if (cfg.conventions && cfg.conventions_text.empty()) cfg.conventions_text = LoadDataText("conventions_v1.txt");
  if (cfg.strategy && cfg.strategy_text.empty()) cfg.strategy_text = LoadDataText("strategy_v1.txt");
  const std::string label = cfg.Label();

  struct GameResult {
    GameRecord game;
    std::vector<TurnRecord> turns;
  };
  std::function<GameResult(int)> job = [&](int g) {
    GameResult out;
    GameRecord& rec = out.game;
    rec.label = label;
    rec.game = g;
    rec.seed = DeriveSeed(cfg.seed, static_cast<std::uint64_t>(g));
    rec.players = cfg.players;
    std::vector<std::unique_ptr<Agent>> agents;
    for (int p = 0; p < cfg.players; ++p) agents.push_back(cfg.seats[cfg.seats.size() == 1 ? 0 : p].Make());

    GameState state = NewGame(cfg.players, rec.seed);
    while (!state.IsTerminal()) {
      const int actor = state.current_player;
      ObservationOptions o;
      o.architecture = cfg.planner ? Architecture::kInformed : Architecture::kPromptBased;
      o.depth = cfg.depth;
      o.ablation = cfg.ablation;
      o.variant = cfg.variant;
      o.transcript = cfg.transcript;
      o.partner_knowledge = cfg.partner_knowledge;
      if (cfg.conventions) o.conventions_text = cfg.conventions_text;
      if (cfg.strategy) o.strategy_text = cfg.strategy_text;
      const Observation obs = BuildObservation(state, actor, o);
      const std::string prompt = BuildPrompt(obs);
      const Decision d = Decide(*agents[actor], obs, prompt);

      TurnRecord t;
      t.label = label;
      t.game = g;
      t.turn = state.turn;
      t.actor = actor;
      if (cfg.log_prompts) t.prompt = prompt;
      t.reply = d.second ? d.second->raw_text : d.first.raw_text;
      t.retries = d.retries;
      t.hedging_markers = CountHedging(t.reply);
      if (d.transport_failed) {
        t.parse_status = "transport_failed";
        out.turns.push_back(std::move(t));
        rec.aborted = true;
        rec.abort_reason = "transport: " + d.transport_error;
        return out;
      }
      t.parse_status = std::string(ToString(d.parse.status));
      Action action = d.action ? *d.action : SafeDefault(state);
      t.fallback = !d.action;
      rec.fallback_turns += t.fallback ? 1 : 0;
      t.action = action;
      if (obs.shortlist) {
        t.planner_top = obs.shortlist->entries.front().action;
        t.overrode = action != *t.planner_top;
        rec.overrides += t.overrode ? 1 : 0;
      }
      out.turns.push_back(std::move(t));
      state = ApplyAction(state, action).state;
    }
    const GameOutcome outcome = Outcome(state);
    rec.score = outcome.score;
    rec.survival_turns = outcome.survival_turns;
    rec.total_actions = outcome.total_actions;
    rec.termination = std::string(ToString(outcome.termination));
    return out;
  };

  FullGameRun run;
  std::function<void(GameResult&&)> deliver = [&](GameResult&& r) {
    if (r.game.aborted) ++run.aborted;
    run.games.push_back(std::move(r.game));
    for (TurnRecord& t : r.turns) run.turns.push_back(std::move(t));
  };
  const int done = OrderedParallel<GameResult>(cfg.n, options.parallelism, options.cancel, job, deliver);
  run.truncated = done < cfg.n;
  return run;
}

std::vector<GameSummary> SummarizeGames(std::span<const GameRecord> games) {
  std::vector<std::string> order;
  std::map<std::string, std::vector<const GameRecord*>> groups;
  for (const GameRecord& g : games) {
    auto [it, fresh] = groups.try_emplace(g.label);
    if (fresh) order.push_back(g.label);
    it->second.push_back(&g);
  }
  std::vector<GameSummary> out;
  for (const std::string& label : order) {
    GameSummary s;
    s.label = label;
    std::vector<double> scores;
    double survival = 0.0;
    for (const GameRecord* g : groups[label]) {
      ++s.n;
      if (g->aborted) {
        ++s.aborted;
        continue;
      }
      scores.push_back(g->score);
      survival += g->survival_turns;
    }
    const double k = static_cast<double>(scores.size());
    if (k > 0) {
      for (double x : scores) s.mean_score += x / k;
      s.mean_survival = survival / k;
      double var = 0.0;
      for (double x : scores) var += (x - s.mean_score) * (x - s.mean_score);
      const double se = k > 1 ? std::sqrt(var / (k - 1) / k) : 0.0;
      s.score_ci_lo = s.mean_score - 1.959963984540054 * se;
      s.score_ci_hi = s.mean_score + 1.959963984540054 * se;
    }
    out.push_back(s);
  }
  return out;
}

std::vector<TrialConfig> AblationGrid(const TrialConfig& base) {
  std::vector<TrialConfig> out;
  for (auto a : {AblationCondition::kFullGraph, AblationCondition::kBeliefRemoved,
                 AblationCondition::kGraphFrozen, AblationCondition::kBeliefCorrupted}) {
    TrialConfig c = base;
    c.architecture = Architecture::kPromptBased;
    c.variant = ShortlistVariant::kV0;
    c.ablation = a;
    if (c.depth == BeliefDepth::kNone) c.depth = BeliefDepth::kL0L1L2;
    out.push_back(c);
  }
  return out;
}

std::vector<TrialConfig> FullScenarioGrid(const TrialConfig& base) {
  std::vector<TrialConfig> out;
  for (ScenarioId id : kAllScenarios) {
    for (auto arch : {Architecture::kPromptBased, Architecture::kGated, Architecture::kInformed}) {
      for (auto a : {AblationCondition::kFullGraph, AblationCondition::kBeliefRemoved,
                     AblationCondition::kGraphFrozen, AblationCondition::kBeliefCorrupted,
                     AblationCondition::kMisleading}) {
        TrialConfig c = base;
        c.scenario = id;
        c.players = 2;
        c.architecture = arch;
        c.ablation = a;
        c.variant = ShortlistVariant::kV0;
        c.random_shortlist = false;
        if (c.depth == BeliefDepth::kNone) c.depth = BeliefDepth::kL0L1L2;
        out.push_back(c);
      }
    }
  }
  return out;
}

std::vector<FullGameConfig> FactorialGrid(const FullGameConfig& base) {
  std::vector<FullGameConfig> out;
  const BeliefDepth on = base.depth == BeliefDepth::kNone ? BeliefDepth::kL0L1L2 : base.depth;
  for (bool graph : {false, true}) {
    for (bool planner : {false, true}) {
      FullGameConfig c = base;
      c.depth = graph ? on : BeliefDepth::kNone;
      c.ablation = AblationCondition::kFullGraph;
      c.planner = planner;
      c.variant = ShortlistVariant::kV0;
      out.push_back(c);
    }
  }
  return out;
}

std::vector<FullGameConfig> DepthGrid(const FullGameConfig& base) {
  std::vector<FullGameConfig> out;
  for (int players : {3, 5}) {
    for (auto d : {BeliefDepth::kNone, BeliefDepth::kL0, BeliefDepth::kL0L1, BeliefDepth::kL0L1L2}) {
      FullGameConfig c = base;
      c.players = players;
      c.depth = d;
      c.ablation = AblationCondition::kFullGraph;
      if (c.seats.size() != 1) c.seats.resize(1);
      out.push_back(c);
    }
  }
  return out;
}

}  // namespace hanabi_lab
