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

#include "cli.h"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "hanabi_lab/error.h"
#include "hanabi_lab/experiments.h"
#include "hanabi_lab/report.h"
#include "hanabi_lab/stats.h"
#include "hanabi_lab/trial_log.h"

namespace hanabi_lab::cli {
namespace {

using Json = nlohmann::json;
namespace fs = std::filesystem;

std::string NowIso() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string ReadText(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
}

Json LoadJsonFile(const std::string& path) {
  try {
    return Json::parse(ReadText(path));
  } catch (const Json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

bool Cancelled(const std::atomic<bool>* cancel) { return cancel != nullptr && cancel->load(); }

// Settings come from the config file and are overridden by explicit flags.
// Flag values arrive as strings, config values as JSON scalars.
std::string GetString(const Json& s, const std::string& key, const std::string& fallback) {
  if (!s.contains(key) || s[key].is_null()) return fallback;
  if (!s[key].is_string()) throw ConfigError(key + " must be a string");
  return s[key].get<std::string>();
}

long long GetInteger(const Json& s, const std::string& key, long long fallback) {
  if (!s.contains(key) || s[key].is_null()) return fallback;
  const Json& v = s[key];
  if (v.is_number_integer()) return v.get<long long>();
  if (v.is_string()) {
    try {
      std::size_t used = 0;
      const long long x = std::stoll(v.get<std::string>(), &used);
      if (used == v.get<std::string>().size()) return x;
    } catch (const std::exception&) {
    }
  }
  throw ConfigError(key + " must be an integer");
}

std::uint64_t GetSeed(const Json& s, std::uint64_t fallback) {
  if (!s.contains("seed") || s["seed"].is_null()) return fallback;
  const Json& v = s["seed"];
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<long long>() >= 0) return static_cast<std::uint64_t>(v.get<long long>());
  if (v.is_string()) {
    try {
      std::size_t used = 0;
      const std::uint64_t x = std::stoull(v.get<std::string>(), &used);
      if (used == v.get<std::string>().size()) return x;
    } catch (const std::exception&) {
    }
  }
  throw ConfigError("seed must be a nonnegative integer");
}

bool GetBool(const Json& s, const std::string& key, bool fallback) {
  if (!s.contains(key) || s[key].is_null()) return fallback;
  if (!s[key].is_boolean()) throw ConfigError(key + " must be true or false");
  return s[key].get<bool>();
}

template <typename T, typename F>
T ParseOr(const Json& s, const std::string& key, T fallback, F parse) {
  const std::string text = GetString(s, key, "");
  if (text.empty()) return fallback;
  auto v = parse(text);
  if (!v) throw ConfigError(fmt::format("bad {}: {}", key, text));
  return *v;
}

std::vector<EndpointConfig> LoadEndpoints(const Json& s) {
  if (!s.contains("endpoints")) return {};
  Json e = s["endpoints"];
  if (e.is_string()) e = LoadJsonFile(e.get<std::string>());
  if (e.is_object() && e.contains("endpoints")) e = e["endpoints"];
  if (e.is_object()) e = Json::array({e});
  if (!e.is_array()) throw ConfigError("endpoints must be a list");
  std::vector<EndpointConfig> out;
  for (const Json& item : e) out.push_back(EndpointConfigFromJson(item.dump()));
  return out;
}

std::vector<AgentSpec> ResolveAgents(const Json& s) {
  const auto endpoints = LoadEndpoints(s);
  std::vector<std::string> texts;
  if (!s.contains("agent") || s["agent"].is_null()) {
    texts.push_back("oracle:compliant");
  } else if (s["agent"].is_string()) {
    texts.push_back(s["agent"].get<std::string>());
  } else if (s["agent"].is_array()) {
    for (const Json& a : s["agent"]) {
      if (!a.is_string()) throw ConfigError("agent entries must be strings");
      texts.push_back(a.get<std::string>());
    }
  } else {
    throw ConfigError("agent must be a string or a list");
  }
  std::vector<AgentSpec> out;
  for (const auto& t : texts) out.push_back(ParseAgentSpec(t, endpoints));
  return out;
}

std::vector<TrialConfig> ResolveTrials(const Json& s) {
  TrialConfig base;
  base.players = static_cast<int>(GetInteger(s, "players", 2));
  base.architecture = ParseOr(s, "arch", Architecture::kPromptBased, ParseArchitecture);
  base.ablation = ParseOr(s, "ablation", AblationCondition::kFullGraph, ParseAblation);
  base.variant = ParseOr(s, "variant", ShortlistVariant::kV0, ParseShortlistVariant);
  base.depth = ParseOr(s, "depth", BeliefDepth::kL0L1L2, ParseBeliefDepth);
  base.n = static_cast<int>(GetInteger(s, "n", 20));
  base.seed = GetSeed(s, 0);
  const auto agents = ResolveAgents(s);
  if (agents.size() != 1) throw ConfigError("scenario trials take exactly one agent");
  base.agent = agents.front();

  const std::string scenario = GetString(s, "scenario", "S5");
  const bool all = scenario == "all";
  if (!all) base.scenario = ParseOr(s, "scenario", ScenarioId::kS5, ParseScenarioId);

  const std::string grid = GetString(s, "grid", "none");
  const std::string control = GetString(s, "control", "none");
  std::vector<TrialConfig> configs;
  if (grid == "ablation") {
    if (all) throw ConfigError("the ablation grid runs one scenario");
    configs = AblationGrid(base);
  } else if (grid == "full") {
    configs = FullScenarioGrid(base);
  } else if (grid == "none") {
    if (all) {
      for (ScenarioId id : kAllScenarios) {
        TrialConfig c = base;
        c.scenario = id;
        configs.push_back(c);
      }
    } else {
      configs.push_back(base);
    }
  } else {
    throw ConfigError("unknown scenario grid: " + grid);
  }
  if (control == "no-graph") {
    if (grid != "none") throw ConfigError("--control no-graph cannot be combined with a grid");
    std::vector<TrialConfig> paired;
    for (const TrialConfig& c : configs) {
      TrialConfig ctl = c;
      ctl.ablation = AblationCondition::kBeliefRemoved;
      ctl.random_shortlist = true;
      paired.push_back(c);
      paired.push_back(ctl);
    }
    configs = std::move(paired);
  } else if (control != "none") {
    throw ConfigError("unknown control: " + control);
  }
  for (const TrialConfig& c : configs) c.Validate();
  return configs;
}

std::vector<FullGameConfig> ResolveGames(const Json& s) {
  FullGameConfig base;
  const std::string label = GetString(s, "label", "");
  if (!label.empty()) ApplyLabel(label, base);
  base.players = static_cast<int>(GetInteger(s, "players", base.players));
  base.transcript = ParseOr(s, "transcript", base.transcript, ParseTranscriptMode);
  base.strategy = GetBool(s, "strategy", base.strategy);
  base.planner = GetBool(s, "planner", base.planner);
  base.conventions = GetBool(s, "conventions", base.conventions);
  base.partner_knowledge = GetBool(s, "pk", base.partner_knowledge);
  base.depth = ParseOr(s, "depth", base.depth, ParseBeliefDepth);
  base.ablation = ParseOr(s, "ablation", base.ablation, ParseAblation);
  base.variant = ParseOr(s, "variant", base.variant, ParseShortlistVariant);
  base.n = static_cast<int>(GetInteger(s, "n", 10));
  base.seed = GetSeed(s, 0);
  base.log_prompts = GetBool(s, "prompts", true);
  base.seats = ResolveAgents(s);
  const std::string conventions_file = GetString(s, "conventions_file", "");
  if (!conventions_file.empty()) base.conventions_text = ReadText(conventions_file);
  const std::string strategy_file = GetString(s, "strategy_file", "");
  if (!strategy_file.empty()) base.strategy_text = ReadText(strategy_file);

  const std::string grid = GetString(s, "grid", "none");
  std::vector<FullGameConfig> configs;
  if (grid == "factorial") {
    configs = FactorialGrid(base);
  } else if (grid == "depth") {
    configs = DepthGrid(base);
  } else if (grid == "none") {
    configs.push_back(base);
  } else {
    throw ConfigError("unknown full-game grid: " + grid);
  }
  for (const FullGameConfig& c : configs) c.Validate();
  return configs;
}

void PrintTrialSummaries(std::ostream& out, std::span<const ConditionSummary> summaries) {
  for (const ConditionSummary& s : summaries) {
    std::string ci = "  n/a     ";
    if (s.valid > 0) {
      const auto w = stats::WilsonCi(s.correct, s.valid);
      ci = fmt::format("[{:>3.0f}%, {:>3.0f}%]", w.lo * 100.0, w.hi * 100.0);
    }
    out << fmt::format("{:>4} {}  {:>3}/{:<3} override {:>4}", report::FormatPercent(s.rate), ci, s.correct,
                       s.valid, report::FormatPercent(s.override_rate));
    if (s.invalid > 0) out << fmt::format("  invalid {}", s.invalid);
    if (s.integrity_flags > 0) out << fmt::format("  mapped {}", s.integrity_flags);
    out << "  " << s.label << "\n";
  }
}

void PrintGameSummaries(std::ostream& out, std::span<const GameSummary> summaries) {
  for (const GameSummary& s : summaries) {
    out << fmt::format("score {:>5.2f} [{:.2f}, {:.2f}]  survival {:>5.1f}  n={}", s.mean_score, s.score_ci_lo,
                       s.score_ci_hi, s.mean_survival, s.n);
    if (s.aborted > 0) out << fmt::format(" aborted={}", s.aborted);
    out << "  " << s.label << "\n";
  }
}

std::string JoinArgs(const std::vector<std::string>& args) {
  std::string out = "hanabi-lab";
  for (const auto& a : args) out += " " + a;
  return out;
}

struct RunContext {
  std::string command_line;
  Json settings;
  fs::path out_dir;
  int jobs = 0;
  const std::atomic<bool>* cancel = nullptr;
};

void WriteTruncatedMarker(const fs::path& dir, const std::string& what) {
  WriteText(dir / "TRUNCATED", "run interrupted: " + what + "\n");
}

int CmdScenarios(const RunContext& ctx, std::ostream& out, std::ostream& err) {
  const std::vector<TrialConfig> configs = ResolveTrials(ctx.settings);
  fs::create_directories(ctx.out_dir);
  fs::remove(ctx.out_dir / "TRUNCATED");

  Json resolved = ctx.settings;
  resolved["labels"] = Json::array();
  for (const auto& c : configs) resolved["labels"].push_back(c.Label());
  RunManifest manifest;
  manifest.command_line = ctx.command_line;
  manifest.config_json = resolved.dump();
  manifest.seed = configs.front().seed;
  manifest.code_version = std::string(CodeVersion());
  manifest.started_at = NowIso();
  manifest.outputs = {"trials.jsonl", "summary.json"};
  WriteText(ctx.out_dir / "manifest.json", ManifestToJson(manifest));

  JsonlAppender log((ctx.out_dir / "trials.jsonl").string());
  RunOptions options;
  options.parallelism = ctx.jobs;
  options.cancel = ctx.cancel;
  options.on_trial = [&](const TrialRecord& r) { log.Append(TrialToJsonLine(r)); };
  std::vector<TrialRecord> all;
  int transport_failures = 0;
  bool truncated = false;
  for (const TrialConfig& c : configs) {
    if (Cancelled(ctx.cancel)) {
      truncated = true;
      break;
    }
    TrialRun run = RunTrials(c, options);
    transport_failures += run.transport_failures;
    all.insert(all.end(), std::make_move_iterator(run.records.begin()), std::make_move_iterator(run.records.end()));
    if (run.truncated) {
      truncated = true;
      break;
    }
  }
  log.Flush();

  const auto summaries = all.empty() ? std::vector<ConditionSummary>{} : AggregateByLabel(all);
  WriteText(ctx.out_dir / "summary.json", SummaryToJson(summaries, {}));
  PrintTrialSummaries(out, summaries);

  manifest.finished_at = NowIso();
  manifest.truncated = truncated;
  WriteText(ctx.out_dir / "manifest.json", ManifestToJson(manifest));
  if (truncated) {
    WriteTruncatedMarker(ctx.out_dir, fmt::format("{} trials written", all.size()));
    err << "interrupted; partial logs in " << ctx.out_dir.string() << "\n";
    return kExitInterrupted;
  }
  if (transport_failures > 0) {
    err << transport_failures << " trial(s) failed after exhausting the endpoint retry budget\n";
    return kExitTransport;
  }
  return kExitOk;
}

int CmdFullGame(const RunContext& ctx, std::ostream& out, std::ostream& err) {
  const std::vector<FullGameConfig> configs = ResolveGames(ctx.settings);
  fs::create_directories(ctx.out_dir);
  fs::remove(ctx.out_dir / "TRUNCATED");

  Json resolved = ctx.settings;
  resolved["labels"] = Json::array();
  for (const auto& c : configs) resolved["labels"].push_back(c.Label());
  RunManifest manifest;
  manifest.command_line = ctx.command_line;
  manifest.config_json = resolved.dump();
  manifest.seed = configs.front().seed;
  manifest.code_version = std::string(CodeVersion());
  manifest.started_at = NowIso();
  manifest.outputs = {"games.jsonl", "turns.jsonl", "summary.json"};
  WriteText(ctx.out_dir / "manifest.json", ManifestToJson(manifest));

  JsonlAppender game_log((ctx.out_dir / "games.jsonl").string());
  JsonlAppender turn_log((ctx.out_dir / "turns.jsonl").string());
  FullGameOptions options;
  options.parallelism = ctx.jobs;
  options.cancel = ctx.cancel;
  std::vector<GameRecord> games;
  int aborted = 0;
  bool truncated = false;
  for (const FullGameConfig& c : configs) {
    if (Cancelled(ctx.cancel)) {
      truncated = true;
      break;
    }
    FullGameRun run = RunFullGames(c, options);
    for (const GameRecord& g : run.games) game_log.Append(GameToJsonLine(g));
    for (const TurnRecord& t : run.turns) turn_log.Append(TurnToJsonLine(t));
    aborted += run.aborted;
    games.insert(games.end(), run.games.begin(), run.games.end());
    if (run.truncated) {
      truncated = true;
      break;
    }
  }
  game_log.Flush();
  turn_log.Flush();

  const auto summaries = SummarizeGames(games);
  WriteText(ctx.out_dir / "summary.json", SummaryToJson({}, summaries));
  PrintGameSummaries(out, summaries);
  if (summaries.size() > 1) {
    const int iterations = static_cast<int>(GetInteger(ctx.settings, "iterations", 100000));
    out << "\n"
        << report::RenderTableText(report::CompareGames(games, {}, iterations, GetSeed(ctx.settings, 0)));
  }

  manifest.finished_at = NowIso();
  manifest.truncated = truncated;
  WriteText(ctx.out_dir / "manifest.json", ManifestToJson(manifest));
  if (truncated) {
    WriteTruncatedMarker(ctx.out_dir, fmt::format("{} games written", games.size()));
    err << "interrupted; partial logs in " << ctx.out_dir.string() << "\n";
    return kExitInterrupted;
  }
  if (aborted > 0) {
    err << aborted << " game(s) aborted after exhausting the endpoint retry budget\n";
    return kExitTransport;
  }
  return kExitOk;
}

int CmdAnalyze(const RunContext& ctx, const std::vector<std::string>& paths, std::ostream& out) {
  if (paths.empty()) throw ConfigError("analyze needs at least one log path");
  std::vector<std::string> files;
  for (const std::string& p : paths) {
    if (fs::is_directory(p)) {
      bool found = false;
      for (const char* name : {"trials.jsonl", "games.jsonl"}) {
        if (fs::exists(fs::path(p) / name)) {
          files.push_back((fs::path(p) / name).string());
          found = true;
        }
      }
      if (!found) throw ConfigError("no trials.jsonl or games.jsonl in " + p);
    } else if (fs::exists(p)) {
      files.push_back(p);
    } else {
      throw ConfigError("no such log: " + p);
    }
  }
  std::vector<TrialRecord> trials;
  std::vector<GameRecord> games;
  for (const std::string& f : files) {
    const std::string schema = DetectSchema(f);
    if (schema == kTrialSchema) {
      auto r = ReadTrialLog(f);
      trials.insert(trials.end(), r.begin(), r.end());
    } else if (schema == kGameSchema) {
      auto r = ReadGameLog(f);
      games.insert(games.end(), r.begin(), r.end());
    } else if (schema.empty() || schema == kTurnSchema) {
      continue;
    } else {
      throw SchemaError(f + ": unsupported schema " + schema);
    }
  }

  std::set<std::string> trial_labels, game_labels;
  for (const auto& r : trials) trial_labels.insert(r.label);
  for (const auto& g : games) game_labels.insert(g.label);
  std::string spec = GetString(ctx.settings, "compare", "");
  const std::string spec_file = GetString(ctx.settings, "compare_file", "");
  if (!spec_file.empty()) spec += "\n" + ReadText(spec_file);
  std::vector<std::pair<std::string, std::string>> trial_pairs, game_pairs;
  for (auto& pair : report::ParseComparisonSpec(spec)) {
    if (trial_labels.count(pair.first) && trial_labels.count(pair.second)) {
      trial_pairs.push_back(std::move(pair));
    } else if (game_labels.count(pair.first) && game_labels.count(pair.second)) {
      game_pairs.push_back(std::move(pair));
    } else {
      throw ConfigError("comparison labels not found in one log kind: " + pair.first + " vs " + pair.second);
    }
  }
  const bool explicit_pairs = !trial_pairs.empty() || !game_pairs.empty();
  const int iterations = static_cast<int>(GetInteger(ctx.settings, "iterations", 100000));

  const auto conditions = trials.empty() ? std::vector<ConditionSummary>{} : AggregateByLabel(trials);
  const auto game_summaries = SummarizeGames(games);
  report::ComparisonTable table;
  if (!trials.empty() && (!explicit_pairs || !trial_pairs.empty())) {
    table.proportions = report::CompareTrials(trials, trial_pairs).proportions;
  }
  if (!games.empty() && (!explicit_pairs || !game_pairs.empty())) {
    table.scores = report::CompareGames(games, game_pairs, iterations, GetSeed(ctx.settings, 0)).scores;
  }

  PrintTrialSummaries(out, conditions);
  PrintGameSummaries(out, game_summaries);
  const std::string text = report::RenderTableText(table);
  out << "\n" << text;

  fs::create_directories(ctx.out_dir);
  WriteText(ctx.out_dir / "summary.json", SummaryToJson(conditions, game_summaries));
  WriteText(ctx.out_dir / "comparisons.txt", text);
  WriteText(ctx.out_dir / "comparisons.tsv", report::RenderTableTsv(table));
  if (!conditions.empty()) {
    const auto grid = report::BuildAccuracyGrid(conditions);
    WriteText(ctx.out_dir / "heatmap.tsv", report::GridTsv(grid));
    WriteText(ctx.out_dir / "heatmap.svg", report::HeatmapSvg(grid, "Accuracy by scenario and condition (%)"));
    const auto bars = report::AccuracyBars(conditions);
    WriteText(ctx.out_dir / "accuracy_bars.tsv", report::BarsTsv(bars));
    WriteText(ctx.out_dir / "accuracy_bars.svg", report::BarChartSvg(bars, "Accuracy with Wilson 95% CI", 1.0));
  }
  if (!game_summaries.empty()) {
    const auto bars = report::ScoreBars(game_summaries);
    WriteText(ctx.out_dir / "score_bars.tsv", report::BarsTsv(bars));
    WriteText(ctx.out_dir / "score_bars.svg", report::BarChartSvg(bars, "Mean score (/25) with 95% CI", 25.0));
  }
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
           const std::atomic<bool>* cancel) {
  CLI::App app{"Hanabi belief-graph lab: scenario trials, full games and log analysis"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(CodeVersion()));

  std::map<std::string, std::string> text;
  std::map<std::string, bool> flags;
  std::vector<std::string> agents;
  std::vector<std::string> paths;
  std::string config_path, out_dir;
  int jobs = 0;

  auto common = [&](CLI::App* sub, const std::string& default_out) {
    sub->add_option("--config", config_path, "JSON config file; explicit flags override it");
    sub->add_option("--out", out_dir, "Output directory (default " + default_out + ")");
    sub->add_option("--jobs", jobs, "Worker threads (0: hardware concurrency)");
    sub->add_option("--seed", text["seed"], "Master seed");
  };
  auto opt = [&](CLI::App* sub, const std::string& flag, const std::string& key, const std::string& help) {
    return sub->add_option(flag, text[key], help);
  };

  CLI::App* scenarios = app.add_subcommand("scenarios", "Run scenario trial grids");
  common(scenarios, "hanabi-lab-out");
  opt(scenarios, "--grid", "grid", "ablation | full | none");
  opt(scenarios, "--scenario", "scenario", "S1..S6, L1..L3 or all");
  opt(scenarios, "--arch", "arch", "prompt | gated | informed");
  opt(scenarios, "--ablation", "ablation", "full | removed | frozen | corrupted | misleading");
  opt(scenarios, "--variant", "variant", "v0 | v1 | v2 | v3");
  opt(scenarios, "--depth", "depth", "none | l0 | l0l1 | l0l1l2");
  opt(scenarios, "--players", "players", "Player count (S5, L2 and L3 accept 2..5)");
  opt(scenarios, "--n", "n", "Trials per condition");
  opt(scenarios, "--control", "control", "no-graph: add the random-shortlist control");
  opt(scenarios, "--endpoints", "endpoints", "JSON file with endpoint definitions");
  scenarios->add_option("--agent", agents, "oracle:<kind> or endpoint:<name>");

  CLI::App* fullgame = app.add_subcommand("fullgame", "Play full games under a condition flag set");
  common(fullgame, "hanabi-lab-out");
  opt(fullgame, "--grid", "grid", "factorial | depth | none");
  opt(fullgame, "--label", "label", "Condition label, e.g. no_transcript+conventions");
  opt(fullgame, "--transcript", "transcript", "off | scattered | summarized");
  opt(fullgame, "--depth", "depth", "none | l0 | l0l1 | l0l1l2");
  opt(fullgame, "--ablation", "ablation", "full | removed | frozen | corrupted | misleading");
  opt(fullgame, "--variant", "variant", "v0 | v1 | v2 | v3");
  opt(fullgame, "--players", "players", "2..5");
  opt(fullgame, "--n", "n", "Games per condition");
  opt(fullgame, "--iterations", "iterations", "Permutation test iterations");
  opt(fullgame, "--endpoints", "endpoints", "JSON file with endpoint definitions");
  opt(fullgame, "--conventions-file", "conventions_file", "Replace the shipped conventions text");
  opt(fullgame, "--strategy-file", "strategy_file", "Replace the shipped strategy text");
  for (const char* f : {"strategy", "planner", "conventions", "pk"}) {
    fullgame->add_flag(std::string("--") + f, flags[f], std::string("Enable the ") + f + " component");
  }
  fullgame->add_flag("--no-prompts", flags["no_prompts"], "Do not store prompts in turns.jsonl");
  fullgame->add_option("--agent", agents, "One spec for all seats, or one per seat");

  CLI::App* analyze = app.add_subcommand("analyze", "Compare conditions from run logs");
  common(analyze, "hanabi-lab-report");
  analyze->add_option("logs", paths, "Log files or run directories")->required();
  opt(analyze, "--compare", "compare", "'A vs B' pairs separated by ';'");
  opt(analyze, "--compare-file", "compare_file", "File with one 'A vs B' pair per line");
  opt(analyze, "--iterations", "iterations", "Permutation test iterations");

  std::vector<std::string> argv_store{"hanabi-lab"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    RunContext ctx;
    ctx.command_line = JoinArgs(args);
    ctx.cancel = cancel;
    ctx.jobs = jobs;
    ctx.settings = config_path.empty() ? Json::object() : LoadJsonFile(config_path);
    if (!ctx.settings.is_object()) throw ConfigError("config must be a JSON object");
    for (const auto& [key, value] : text) {
      const std::string flag = "--" + (key == "conventions_file" ? std::string("conventions-file")
                                       : key == "strategy_file"  ? std::string("strategy-file")
                                       : key == "compare_file"   ? std::string("compare-file")
                                                                 : key);
      if (sub->get_option_no_throw(flag) == nullptr || sub->count(flag) == 0) continue;
      ctx.settings[key] = value;
      if (key == "n" || key == "players" || key == "iterations" || key == "seed") {
        try {
          std::size_t used = 0;
          const unsigned long long x = std::stoull(value, &used);
          if (used == value.size()) ctx.settings[key] = x;
        } catch (const std::exception&) {
        }
      }
    }
    for (const auto& [key, value] : flags) {
      if (key == "no_prompts") {
        if (value) ctx.settings["prompts"] = false;
      } else if (value) {
        ctx.settings[key] = true;
      }
    }
    if (!agents.empty()) ctx.settings["agent"] = agents.size() == 1 ? Json(agents.front()) : Json(agents);
    const std::string default_out = sub == analyze ? "hanabi-lab-report" : "hanabi-lab-out";
    ctx.out_dir = !out_dir.empty() ? fs::path(out_dir) : fs::path(GetString(ctx.settings, "out", default_out));

    if (sub == scenarios) return CmdScenarios(ctx, out, err);
    if (sub == fullgame) return CmdFullGame(ctx, out, err);
    return CmdAnalyze(ctx, paths, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const SchemaError& e) {
    err << "schema error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const TransportError& e) {
    err << "transport error: " << e.what() << "\n";
    return kExitTransport;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace hanabi_lab::cli
