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

#include <algorithm>
#include <string>
#include <vector>

#include "doctest.h"
#include "hanabi_lab/agents.h"
#include "hanabi_lab/experiments.h"
#include "hanabi_lab/scenarios.h"
#include "test_util.h"

namespace hanabi_lab {
namespace {

using testing::C;

Observation S5Observation(Architecture arch) {
  const ScenarioInstance inst = MakeScenario(ScenarioId::kS5);
  ObservationOptions opt;
  opt.architecture = arch;
  return BuildObservation(inst.state, inst.acting_player, opt);
}

bool InShortlist(const Shortlist& sl, const Action& a) {
  return std::any_of(sl.entries.begin(), sl.entries.end(),
                     [&](const ScoredAction& e) { return e.action == a; });
}

}  // namespace

TEST_CASE("reply grammar") {
  const Observation obs = S5Observation(Architecture::kPromptBased);
  struct Case {
    const char* reply;
    ParseStatus status;
    std::optional<Action> action;
  };
  const std::vector<Case> corpus = {
      {"I will play card 3.", ParseStatus::kOk, Action::Play(2)},
      {"i WILL Discard Card 1", ParseStatus::kOk, Action::Discard(0)},
      {"Reasoning...\nI will discard slot 2!", ParseStatus::kOk, Action::Discard(1)},
      {"I will hint Alice 2.", ParseStatus::kOk, Action::HintRank(0, 2)},
      {"I will give Alice a green hint.", ParseStatus::kOk, Action::HintColor(0, Color::kGreen)},
      {"I will clue alice green", ParseStatus::kOk, Action::HintColor(0, Color::kGreen)},
      {"I will play card 1. On reflection, I will discard card 4.", ParseStatus::kOk, Action::Discard(3)},
      {"I will play green.", ParseStatus::kOk, Action::Play(2)},
      {"I will play card 9.", ParseStatus::kIllegal, std::nullopt},
      {"I will hint Alice blue.", ParseStatus::kIllegal, std::nullopt},
      {"Hmm, hard to say.", ParseStatus::kUnparseable, std::nullopt},
      {"I will do something clever.", ParseStatus::kUnparseable, std::nullopt},
      {"", ParseStatus::kUnparseable, std::nullopt},
  };
  for (const Case& c : corpus) {
    const std::string reply = c.reply;
    CAPTURE(reply);
    const ParseResult r = ParseAction(c.reply, obs);
    CHECK(r.status == c.status);
    CHECK(r.action == c.action);
  }
}

TEST_CASE("option replies need a shortlist") {
  const Observation prompt = S5Observation(Architecture::kPromptBased);
  CHECK(ParseAction("I will choose Option 1.", prompt).status == ParseStatus::kUnparseable);

  const Observation gated = S5Observation(Architecture::kGated);
  REQUIRE(gated.shortlist.has_value());
  const auto& e = gated.shortlist->entries;
  CHECK(ParseAction("I will choose Option 2.", gated).action == e[1].action);
  CHECK(ParseAction("After thinking it over: option 3", gated).action == e[2].action);
  CHECK(ParseAction("option 1 or option 3? Option 1", gated).action == e[0].action);
  CHECK(ParseAction("I will choose Option 4.", gated).status == ParseStatus::kUnparseable);
  CHECK(ParseAction("I will wait.", gated).action == e[0].action);
}

TEST_CASE("gated replies outside the shortlist are flagged") {
  const Observation gated = S5Observation(Architecture::kGated);
  const ParseResult r = ParseAction("I will discard card 5.", gated);
  CHECK(r.status == ParseStatus::kOutsideShortlist);
  REQUIRE(r.action.has_value());
  CHECK_FALSE(InShortlist(*gated.shortlist, *r.action));

  const Observation informed = S5Observation(Architecture::kInformed);
  CHECK(ParseAction("I will discard card 5.", informed).status == ParseStatus::kOk);
}

TEST_CASE("nearest shortlist entry") {
  const Observation gated = S5Observation(Architecture::kGated);
  const Shortlist& sl = *gated.shortlist;
  for (const ScoredAction& e : sl.entries) CHECK(NearestShortlistEntry(sl, e.action) == e.action);
  for (const Action& a : gated.legal) {
    const Action n = NearestShortlistEntry(sl, a);
    CHECK(InShortlist(sl, n));
    if (std::any_of(sl.entries.begin(), sl.entries.end(),
                    [&](const ScoredAction& e) { return e.action.kind == a.kind; })) {
      CHECK(n.kind == a.kind);
    }
  }
}

TEST_CASE("hedging markers") {
  CHECK(CountHedging("") == 0);
  CHECK(CountHedging("I might play. Perhaps not. I am NOT SURE.") == 3);
  CHECK(CountHedging("Maybe mighty dismay") == 0);
  CHECK(CountHedging("It may be uncertain, possibly.") == 3);
}

TEST_CASE("prompt never shows the actor's own cards") {
  // Two deals that differ only in Alice's hand and the cards at the bottom of
  // the deck that replace them.
  std::vector<Card> a = Ruleset::Standard().FullDeck();
  std::vector<Card> b = a;
  for (int i = 0; i < 5; ++i) std::swap(b[i], b[10 + i * 3]);
  REQUIRE(a != b);
  const GameState sa = NewGameFromDeck(2, a);
  const GameState sb = NewGameFromDeck(2, b);
  REQUIRE(sa.hands[1][0].card == sb.hands[1][0].card);
  REQUIRE_FALSE(sa.hands[0][0].card == sb.hands[0][0].card);

  for (Architecture arch : {Architecture::kPromptBased, Architecture::kGated, Architecture::kInformed}) {
    ObservationOptions opt;
    opt.architecture = arch;
    opt.transcript = TranscriptMode::kSummarized;
    opt.partner_knowledge = true;
    opt.conventions_text = "conventions";
    const std::string pa = BuildPrompt(BuildObservation(sa, 0, opt));
    const std::string pb = BuildPrompt(BuildObservation(sb, 0, opt));
    CHECK(pa == pb);
    CHECK(pa.find("== Board ==") < pa.find("== Belief graph =="));
  }
  const PlayerView v = ObserveState(sa, 0);
  for (const SlotView& s : v.hands[0]) CHECK_FALSE(s.card.has_value());
  for (const SlotView& s : v.hands[1]) CHECK(s.card.has_value());
}

TEST_CASE("prompt sections follow the options") {
  const ScenarioInstance inst = MakeScenario(ScenarioId::kS3);
  ObservationOptions opt;
  opt.depth = BeliefDepth::kNone;
  std::string p = BuildPrompt(BuildObservation(inst.state, inst.acting_player, opt));
  CHECK(p.find("== Belief graph ==") == std::string::npos);
  CHECK(p.find("== Planner shortlist ==") == std::string::npos);
  CHECK(p.find("Choose any legal action.") != std::string::npos);

  opt.architecture = Architecture::kGated;
  opt.depth = BeliefDepth::kL0L1L2;
  opt.strategy_text = "strategy";
  p = BuildPrompt(BuildObservation(inst.state, inst.acting_player, opt));
  CHECK(p.find("== Belief graph ==") < p.find("== Strategy =="));
  CHECK(p.find("== Strategy ==") < p.find("== Planner shortlist =="));
  CHECK(p.find("numbered options") != std::string::npos);

  opt.ablation = AblationCondition::kBeliefRemoved;
  const Observation removed = BuildObservation(inst.state, inst.acting_player, opt);
  CHECK_FALSE(removed.graph.has_value());
  CHECK(removed.graph_text.empty());
  CHECK(removed.shortlist.has_value());
}

TEST_CASE("gated choices always come from the shortlist") {
  for (ScenarioId id : kAllScenarios) {
    for (OracleKind kind : {OracleKind::kCompliant, OracleKind::kDefiantHeuristic, OracleKind::kGraphTruster}) {
      for (AblationCondition ab : {AblationCondition::kFullGraph, AblationCondition::kBeliefCorrupted,
                                   AblationCondition::kBeliefRemoved}) {
        TrialConfig cfg;
        cfg.scenario = id;
        cfg.architecture = Architecture::kGated;
        cfg.ablation = ab;
        cfg.agent.oracle = kind;
        cfg.n = 2;
        RunOptions ro;
        ro.parallelism = 1;
        const TrialRun run = RunTrials(cfg, ro);
        const ScenarioInstance inst = MakeScenario(id);
        ObservationOptions opt;
        opt.architecture = Architecture::kGated;
        opt.ablation = ab;
        const Observation obs = BuildObservation(inst.state, inst.acting_player, opt);
        for (const TrialRecord& r : run.records) {
          CAPTURE(r.label);
          REQUIRE(r.parsed.has_value());
          CHECK(InShortlist(*obs.shortlist, *r.parsed));
        }
      }
    }
  }
}

TEST_CASE("scripted oracles are deterministic") {
  for (OracleKind kind : {OracleKind::kCompliant, OracleKind::kDefiantHeuristic, OracleKind::kGraphTruster}) {
    auto agent = MakeScriptedOracle(kind);
    CHECK(agent->Deterministic());
    CHECK(agent->Name() == "oracle:" + std::string(ToString(kind)));
    const Observation obs = S5Observation(Architecture::kInformed);
    const std::string prompt = BuildPrompt(obs);
    CHECK(agent->Respond(obs, prompt).raw_text == agent->Respond(obs, prompt).raw_text);
  }
}

TEST_CASE("graph truster follows the verdicts") {
  const ScenarioInstance s5 = MakeScenario(ScenarioId::kS5);
  auto agent = MakeScriptedOracle(OracleKind::kGraphTruster);
  ObservationOptions opt;
  const Observation full = BuildObservation(s5.state, s5.acting_player, opt);
  const ParseResult ok = ParseAction(agent->Respond(full, BuildPrompt(full)).raw_text, full);
  REQUIRE(ok.action.has_value());
  CHECK(s5.IsOptimal(*ok.action));

  opt.ablation = AblationCondition::kBeliefCorrupted;
  const Observation bad = BuildObservation(s5.state, s5.acting_player, opt);
  const ParseResult wrong = ParseAction(agent->Respond(bad, BuildPrompt(bad)).raw_text, bad);
  REQUIRE(wrong.action.has_value());
  CHECK_FALSE(s5.IsOptimal(*wrong.action));
}

}  // namespace hanabi_lab
