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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "cli.h"
#include "hanabi_lab/agents.h"
#include "hanabi_lab/belief.h"
#include "hanabi_lab/experiments.h"
#include "hanabi_lab/game.h"
#include "hanabi_lab/planner.h"
#include "hanabi_lab/report.h"
#include "hanabi_lab/rng.h"
#include "hanabi_lab/scenarios.h"
#include "hanabi_lab/stats.h"
#include "hanabi_lab/trial_log.h"
#include "stat_oracles.h"
#include "test_util.h"

namespace hanabi_lab {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct CriterionResult {
  bool pass = true;
  std::string detail;
};

// Collects failure messages; only the first few are kept.
class Failures {
 public:
  void Add(const std::string& msg) {
    if (count_++ < 5) first_.push_back(msg);
  }
  bool Empty() const { return count_ == 0; }
  int Count() const { return count_; }
  std::string Summary() const {
    std::string out = fmt::format("{} violation(s)", count_);
    for (const auto& m : first_) out += "; " + m;
    return out;
  }

 private:
  int count_ = 0;
  std::vector<std::string> first_;
};

CriterionResult EngineSoundness() {
  Failures f;
  constexpr int kPlayouts = 10000;
  long steps = 0;
  for (int i = 0; i < kPlayouts; ++i) {
    const int players = 2 + i % 4;
    const std::uint64_t seed = static_cast<std::uint64_t>(i);
    const GameState start = NewGame(players, seed);
    std::mt19937_64 gen(DeriveSeed(seed, 0xACCE));
    GameState s = start;
    std::vector<Action> actions;
    while (!s.IsTerminal()) {
      const auto legal = LegalActions(s, s.current_player);
      if (legal.empty()) {
        f.Add(fmt::format("playout {}: no legal action", i));
        break;
      }
      const Action a = legal[UniformBelow(gen, legal.size())];
      StepResult r = ApplyAction(s, a);
      if (!(ApplyAction(s, a).state == r.state)) f.Add(fmt::format("playout {}: nondeterministic step", i));
      if (!CardsConserved(r.state)) f.Add(fmt::format("playout {}: cards not conserved", i));
      if (r.state.hints < 0 || r.state.hints > r.state.rules.max_hints) f.Add(fmt::format("playout {}: hints", i));
      if (r.state.bombs < 0 || r.state.bombs > r.state.rules.max_bombs) f.Add(fmt::format("playout {}: bombs", i));
      actions.push_back(a);
      s = std::move(r.state);
      ++steps;
    }
    GameState replay = start;
    for (const Action& a : actions) replay = ApplyAction(replay, a).state;
    if (!(replay == s)) f.Add(fmt::format("playout {}: replay differs", i));
  }
  return {f.Empty(), fmt::format("{} playouts, {} steps, {}", kPlayouts, steps, f.Summary())};
}

double Total(const CardBelief& b) {
  double t = 0.0;
  for (double x : b.p) t += x;
  return t;
}

bool Normalized(const BeliefGraph& g) {
  auto ok = [](const std::vector<CardBelief>& v) {
    for (const auto& b : v) {
      if (std::abs(Total(b) - 1.0) > 1e-9) return false;
    }
    return true;
  };
  if (!ok(g.own) || !ok(g.effective)) return false;
  for (const auto& e : g.edges) {
    if (!ok(e.slots)) return false;
  }
  for (const auto& m : g.meta_edges) {
    if (!ok(m.slots)) return false;
  }
  return true;
}

CriterionResult BeliefCorrectness() {
  Failures f;
  constexpr int kTraces = 1200;
  const Ruleset rules = Ruleset::Reduced(2);
  int checks = 0;
  for (int t = 0; t < kTraces; ++t) {
    const std::uint64_t seed = static_cast<std::uint64_t>(t);
    GameState s = NewGame(2 + t % 2, seed, rules);
    std::vector<BeliefGraph> graphs;
    for (int p = 0; p < s.num_players; ++p) graphs.push_back(BuildGraph(s, p, BeliefDepth::kL0L1L2));
    testing::RandomPlayout(s, DeriveSeed(seed, 0xBE11EF), 10, [&](const GameState&, const Action&, const StepResult& r) {
      for (int p = 0; p < r.state.num_players; ++p) {
        graphs[p] = UpdateOnEvent(graphs[p], r.event);
        ++checks;
        if (!(graphs[p] == BuildGraph(r.state, p, BeliefDepth::kL0L1L2))) {
          f.Add(fmt::format("trace {} player {}: update differs from rebuild", t, p));
        }
        if (!Normalized(graphs[p])) f.Add(fmt::format("trace {} player {}: not normalized", t, p));
      }
    });
  }
  return {f.Empty(), fmt::format("{} traces, {} graph comparisons, {}", kTraces, checks, f.Summary())};
}

CriterionResult PlannerContract() {
  Failures f;
  int matched = 0;
  for (ScenarioId id : kAllScenarios) {
    const ScenarioInstance inst = MakeScenario(id);
    const BeliefGraph g = BuildGraph(inst.state, inst.acting_player, BeliefDepth::kL0L1L2);
    const Shortlist sl = MakeShortlist(g);
    bool ok = inst.IsOptimal(sl.entries.front().action);
    if (inst.wait_class && sl.Label(0) != "WAIT") ok = false;
    const bool finesse = DetectFinesse(g).has_value();
    if (finesse != (id == ScenarioId::kS5 || id == ScenarioId::kL2)) {
      f.Add(fmt::format("{}: finesse detection {}", ToString(id), finesse));
      ok = false;
    }
    if (ok) {
      ++matched;
    } else {
      f.Add(fmt::format("{}: top {} ({})", ToString(id), ToString(sl.entries.front().action), sl.Label(0)));
    }
  }
  return {f.Empty(), fmt::format("{}/9 scenarios match, {}", matched, f.Summary())};
}

CriterionResult StatisticsOracle() {
  Failures f;
  const stats::Interval w = stats::WilsonCi(16, 20);
  if (std::round(w.lo * 100) != 58 || std::round(w.hi * 100) != 92) {
    f.Add(fmt::format("wilson(16,20) = ({:.3f}, {:.3f})", w.lo, w.hi));
  }
  if (stats::OddsRatio(16, 4, 2, 18) != 36.0) f.Add("odds ratio");
  if (std::abs(stats::CohensH(1.0, 0.667) - 1.23) > 0.005) f.Add("cohen's h");
  if (!(stats::FisherExactTwoSided(16, 4, 2, 18) < 1e-4)) f.Add("fisher(16,4,2,18)");
  if (stats::FisherExactTwoSided(18, 2, 18, 2) != 1.0) f.Add("fisher(18,2,18,2)");

  int tables = 0;
  for (int n = 1; n <= 12; ++n) {
    for (int a = 0; a <= n; ++a) {
      for (int b = 0; a + b <= n; ++b) {
        for (int c = 0; a + b + c <= n; ++c) {
          const int d = n - a - b - c;
          if (a + b == 0 || c + d == 0 || a + c == 0 || b + d == 0) continue;
          ++tables;
          const double p = stats::FisherExactTwoSided(a, b, c, d);
          if (std::abs(p - testing::BruteFisher(a, b, c, d)) > 1e-12) {
            f.Add(fmt::format("fisher({},{},{},{})", a, b, c, d));
          }
        }
      }
    }
  }
  int samples = 0;
  std::mt19937_64 gen(2026);
  std::uniform_int_distribution<int> value(0, 6);
  for (int n = 2; n <= 12; ++n) {
    for (int n1 = 1; n1 < n; ++n1) {
      for (int rep = 0; rep < 10; ++rep) {
        std::vector<double> xs, ys;
        for (int i = 0; i < n; ++i) (i < n1 ? xs : ys).push_back(value(gen));
        ++samples;
        const auto r = stats::MannWhitneyU(xs, ys);
        if (r.exact != (n1 <= 8 && n - n1 <= 8)) f.Add(fmt::format("mann-whitney n1={} n2={}: method", n1, n - n1));
        if (r.exact && std::abs(r.p - testing::BruteMannWhitney(xs, ys)) > 1e-9) {
          f.Add(fmt::format("mann-whitney n1={} n2={}", n1, n - n1));
        }
      }
    }
  }
  return {f.Empty(), fmt::format("{} Fisher tables, {} Mann-Whitney samples, {}", tables, samples, f.Summary())};
}

CriterionResult OracleBehaviour() {
  Failures f;
  auto run = [](ScenarioId id, Architecture arch, OracleKind kind, AblationCondition ab) {
    TrialConfig c;
    c.scenario = id;
    c.architecture = arch;
    c.agent.oracle = kind;
    c.ablation = ab;
    c.n = 20;
    c.seed = 7;
    return RunTrials(c).records;
  };
  auto expect = [&](const std::string& what, double got, double want) {
    if (got != want) f.Add(fmt::format("{}: {:.2f} (want {:.2f})", what, got, want));
  };
  for (ScenarioId id : kAllScenarios) {
    const auto recs = run(id, Architecture::kGated, OracleKind::kCompliant, AblationCondition::kFullGraph);
    expect(fmt::format("compliant gated {}", ToString(id)), Aggregate(recs).rate, 1.0);
  }
  const auto s5 = run(ScenarioId::kS5, Architecture::kInformed, OracleKind::kDefiantHeuristic,
                      AblationCondition::kFullGraph);
  expect("defiant informed S5 override", Aggregate(s5).override_rate, 1.0);
  expect("defiant informed S3 correct",
         Aggregate(run(ScenarioId::kS3, Architecture::kInformed, OracleKind::kDefiantHeuristic,
                       AblationCondition::kFullGraph))
             .rate,
         1.0);
  const auto full = run(ScenarioId::kS5, Architecture::kPromptBased, OracleKind::kGraphTruster,
                        AblationCondition::kFullGraph);
  const auto bad = run(ScenarioId::kS5, Architecture::kPromptBased, OracleKind::kGraphTruster,
                       AblationCondition::kBeliefCorrupted);
  expect("graph truster full S5", Aggregate(full).rate, 1.0);
  expect("graph truster corrupted S5", Aggregate(bad).rate, 0.0);

  const auto again = run(ScenarioId::kS5, Architecture::kInformed, OracleKind::kDefiantHeuristic,
                         AblationCondition::kFullGraph);
  for (std::size_t i = 0; i < s5.size(); ++i) {
    if (TrialToJsonLine(s5[i]) != TrialToJsonLine(again[i])) f.Add("rerun differs");
  }
  return {f.Empty(), f.Empty() ? "all patterns exact, reruns identical" : f.Summary()};
}

std::vector<std::string> Lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

CriterionResult AblationText() {
  Failures f;
  const ScenarioInstance inst = MakeScenario(ScenarioId::kS5);
  const BeliefGraph g = BuildGraph(inst.state, inst.acting_player, BeliefDepth::kL0L1L2);
  auto render = [&](AblationCondition c) { return RenderText(*ApplyAblation(g, c)); };
  const std::string dir = HANABI_LAB_GOLDEN_DIR;
  const std::pair<AblationCondition, const char*> goldens[] = {
      {AblationCondition::kFullGraph, "s5_full_graph.txt"},
      {AblationCondition::kBeliefCorrupted, "s5_belief_corrupted.txt"},
      {AblationCondition::kMisleading, "s5_misleading.txt"},
      {AblationCondition::kGraphFrozen, "s5_graph_frozen.txt"}};
  for (const auto& [c, name] : goldens) {
    const std::string expected = testing::ReadFileOrEmpty(dir + "/" + name);
    if (expected.empty() || render(c) != expected) f.Add(fmt::format("{} differs from golden", name));
  }
  const auto full = Lines(render(AblationCondition::kFullGraph));
  const auto bad = Lines(render(AblationCondition::kBeliefCorrupted));
  std::vector<std::size_t> diff;
  for (std::size_t i = 0; i < std::min(full.size(), bad.size()); ++i) {
    if (full[i] != bad[i]) diff.push_back(i);
  }
  const std::string focal = fmt::format("  Verdict card {}:", inst.focal_slot + 1);
  if (full.size() != bad.size() || diff.size() != 1 || full[diff[0]].rfind(focal, 0) != 0) {
    f.Add(fmt::format("corrupted render changes {} line(s), first \"{}\"", diff.size(),
                      diff.empty() ? std::string() : full[diff[0]]));
  } else if (bad[diff[0]].find("immediately playable") == std::string::npos) {
    f.Add("corrupted focal verdict is not inverted");
  }
  if (render(AblationCondition::kMisleading).find("Finesse: No finesse active.") == std::string::npos) {
    f.Add("misleading render keeps the finesse");
  }
  const std::string frozen = render(AblationCondition::kGraphFrozen);
  if (frozen.find("\"green\"") != std::string::npos || frozen.find("{green}") != std::string::npos) {
    f.Add("frozen render shows the last hint");
  }
  return {f.Empty(), f.Empty() ? "4 goldens exact, contracts hold" : f.Summary()};
}

int Cli(const std::vector<std::string>& args, std::string* out = nullptr) {
  std::ostringstream o, e;
  const int code = cli::RunCli(args, o, e);
  if (out != nullptr) *out = o.str() + e.str();
  return code;
}

CriterionResult DeskScaleRun(double* seconds) {
  Failures f;
  const fs::path root = fs::temp_directory_path() / "hanabi_lab_acceptance";
  fs::remove_all(root);
  const auto start = Clock::now();
  int trials = 0;
  for (const char* agent : {"oracle:compliant", "oracle:defiant-heuristic", "oracle:graph-truster"}) {
    const std::string run = (root / agent).string();
    std::string log;
    if (Cli({"scenarios", "--grid", "full", "--n", "20", "--agent", agent, "--out", run}, &log) != 0) {
      f.Add(fmt::format("{} run failed: {}", agent, log.substr(0, 200)));
      continue;
    }
    trials += static_cast<int>(ReadTrialLog(run + "/trials.jsonl").size());
    const std::string rep = run + "-report";
    if (Cli({"analyze", run, "--out", rep}, &log) != 0) {
      f.Add(fmt::format("{} analyze failed", agent));
      continue;
    }
    const std::string a = testing::ReadFileOrEmpty(run + "/summary.json");
    if (a.empty() || a != testing::ReadFileOrEmpty(rep + "/summary.json")) {
      f.Add(fmt::format("{} summaries differ", agent));
    }
  }
  *seconds = std::chrono::duration<double>(Clock::now() - start).count();
  if (trials != 3 * 9 * 3 * 5 * 20) f.Add(fmt::format("{} trials logged", trials));
  fs::remove_all(root);
  return {f.Empty(), fmt::format("{} trials over 3 oracle agents, {}", trials, f.Summary())};
}

CriterionResult FullGameHarness() {
  Failures f;
  int games = 0, rows = 0;
  auto check = [&](const std::vector<FullGameConfig>& grid) {
    std::vector<GameRecord> records;
    for (const FullGameConfig& cfg : grid) {
      const FullGameRun run = RunFullGames(cfg);
      std::size_t t = 0;
      for (const GameRecord& g : run.games) {
        ++games;
        if (g.aborted) f.Add(fmt::format("{} game {} aborted: {}", g.label, g.game, g.abort_reason));
        GameState s = NewGame(g.players, g.seed);
        for (; t < run.turns.size() && run.turns[t].game == g.game; ++t) {
          const TurnRecord& turn = run.turns[t];
          if (!turn.action || !IsLegal(s, *turn.action)) {
            f.Add(fmt::format("{} game {} turn {}: illegal action", g.label, g.game, turn.turn));
            break;
          }
          s = ApplyAction(s, *turn.action).state;
          if (!CardsConserved(s)) f.Add(fmt::format("{} game {}: cards not conserved", g.label, g.game));
        }
        const GameOutcome out = Outcome(s);
        if (out.score != g.score || out.survival_turns != g.survival_turns) {
          f.Add(fmt::format("{} game {}: replayed outcome differs", g.label, g.game));
        }
      }
      records.insert(records.end(), run.games.begin(), run.games.end());
    }
    const report::ComparisonTable table = report::CompareGames(records, {}, 20000, 1);
    for (const auto& row : table.scores) {
      ++rows;
      const double mw = row.result.mann_whitney.p;
      const double perm = row.result.permutation_p;
      if (!(mw > 0.0 && mw <= 1.0) || !(perm > 0.0 && perm <= 1.0)) {
        f.Add(fmt::format("{} {} vs {}: invalid p", row.metric, row.label_a, row.label_b));
      }
    }
  };
  FullGameConfig base;
  base.n = 5;
  base.seed = 11;
  base.log_prompts = false;
  base.seats = {AgentSpec{}};
  base.seats[0].oracle = OracleKind::kCompliant;
  base.conventions_text = LoadDataText("conventions_v1.txt");
  base.strategy_text = LoadDataText("strategy_v1.txt");
  check(FactorialGrid(base));
  base.n = 10;
  check(DepthGrid(base));
  return {f.Empty() && rows > 0, fmt::format("{} games replayed legally, {} score/survival comparisons, {}", games,
                                             rows, f.Summary())};
}

}  // namespace
}  // namespace hanabi_lab

int main() {
  using namespace hanabi_lab;
  struct Criterion {
    int id;
    const char* name;
    double limit_s;  // 0: none
    std::function<CriterionResult(double*)> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "engine soundness", 30.0, [](double*) { return EngineSoundness(); }},
      {2, "belief correctness", 60.0, [](double*) { return BeliefCorrectness(); }},
      {3, "planner scenario contract", 0.0, [](double*) { return PlannerContract(); }},
      {4, "statistics oracle", 0.0, [](double*) { return StatisticsOracle(); }},
      {5, "oracle behavioural replication", 0.0, [](double*) { return OracleBehaviour(); }},
      {6, "ablation text contracts", 0.0, [](double*) { return AblationText(); }},
      {7, "end-to-end desk-scale run", 120.0, [](double* s) { return DeskScaleRun(s); }},
      {8, "full-game harness", 0.0, [](double*) { return FullGameHarness(); }},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = Clock::now();
    double timed = -1.0;
    CriterionResult o;
    try {
      o = c.run(&timed);
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
    const double measured = timed >= 0.0 ? timed : elapsed;
    if (c.limit_s > 0.0 && measured >= c.limit_s) {
      o.pass = false;
      o.detail += fmt::format("; over the {:.0f} s limit", c.limit_s);
    }
    if (!o.pass) ++failed;
    std::cout << fmt::format("{} criterion {} ({}): {} [{:.1f} s]", o.pass ? "PASS" : "FAIL", c.id, c.name,
                             o.detail, measured)
              << std::endl;
  }
  std::cout << fmt::format("{}/{} criteria passed", criteria.size() - failed, criteria.size()) << std::endl;
  return failed == 0 ? 0 : 1;
}
