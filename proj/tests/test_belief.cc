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

#include <cmath>
#include <numeric>

#include "doctest.h"
#include "hanabi_lab/belief.h"
#include "hanabi_lab/scenarios.h"
#include "hanabi_lab/view.h"
#include "test_util.h"

namespace hanabi_lab {
namespace {

double Total(const CardBelief& b) { return std::accumulate(b.p.begin(), b.p.end(), 0.0); }

void CheckNormalized(const BeliefGraph& g) {
  for (const auto& b : g.own) CHECK(std::abs(Total(b) - 1.0) < 1e-9);
  for (const auto& b : g.effective) CHECK(std::abs(Total(b) - 1.0) < 1e-9);
  for (const auto& e : g.edges) {
    for (const auto& b : e.slots) CHECK(std::abs(Total(b) - 1.0) < 1e-9);
  }
  for (const auto& m : g.meta_edges) {
    for (const auto& b : m.slots) CHECK(std::abs(Total(b) - 1.0) < 1e-9);
  }
}

TEST_CASE("hand beliefs are normalized and respect counts and knowledge") {
  IdentityCounts counts{};
  counts[testing::C("R1").Index()] = 2;
  counts[testing::C("G3").Index()] = 1;
  counts[testing::C("B5").Index()] = 1;
  SlotKnowledge green;
  green.colors = 1 << static_cast<int>(Color::kGreen);
  green.touched = true;
  const std::vector<SlotKnowledge> knowledge{SlotKnowledge{}, green};
  const auto beliefs = HandBeliefs(counts, knowledge);
  REQUIRE(beliefs.size() == 2u);
  // Slot 1 is pinned to G3, which leaves R1 R1 B5 for slot 0.
  CHECK(beliefs[1].Mass(testing::C("G3")) == doctest::Approx(1.0));
  CHECK(beliefs[0].Mass(testing::C("G3")) == doctest::Approx(0.0));
  CHECK(beliefs[0].Mass(testing::C("R1")) == doctest::Approx(2.0 / 3.0));
  CHECK(beliefs[0].Mass(testing::C("B5")) == doctest::Approx(1.0 / 3.0));
  for (const auto& b : beliefs) {
    CHECK(std::abs(Total(b) - 1.0) < 1e-12);
    for (int i = 0; i < kNumIdentities; ++i) {
      if (counts[i] == 0) CHECK(b.p[i] == 0.0);
    }
  }

  SlotKnowledge blue;
  blue.colors = 1 << static_cast<int>(Color::kBlue);
  blue.ranks = 1;  // B1 only; no copy left
  const std::vector<SlotKnowledge> impossible{blue};
  CHECK_THROWS_AS(HandBeliefs(counts, impossible), std::logic_error);
}

TEST_CASE("beliefs over random positions put no mass on impossible identities") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const int players = 2 + static_cast<int>(seed % 4);
    const GameState s = testing::RandomPlayout(NewGame(players, seed), seed + 100, 25);
    if (s.IsTerminal()) continue;
    for (int p = 0; p < players; ++p) {
      const PlayerView v = ObserveState(s, p);
      const BeliefGraph g = BuildGraph(v, BeliefDepth::kL0L1L2);
      CheckNormalized(g);
      const IdentityCounts unseen = UnseenCounts(v);
      const auto knowledge = HandKnowledge(v, p);
      for (std::size_t slot = 0; slot < g.own.size(); ++slot) {
        for (int i = 0; i < kNumIdentities; ++i) {
          if (unseen[i] == 0 || !knowledge[slot].Allows(Card::FromIndex(i))) CHECK(g.own[slot].p[i] == 0.0);
        }
        // The actual card is always possible.
        CHECK(g.own[slot].Mass(s.hands[p][slot].card) > 0.0);
      }
    }
  }
}

TEST_CASE("L1 edges never read the modeled seat's own cards") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    GameState s = testing::RandomPlayout(NewGame(3, seed), seed + 7, 12);
    if (s.IsTerminal() || s.deck.empty()) continue;
    const BeliefGraph before = BuildGraph(s, 0, BeliefDepth::kL0L1);
    // Swap one of seat 1's cards with a deck card that fits the same marks.
    bool swapped = false;
    for (std::size_t slot = 0; slot < s.hands[1].size() && !swapped; ++slot) {
      const SlotKnowledge k = FoldMarks(s.hands[1][slot].marks);
      for (Card& d : s.deck) {
        if (d != s.hands[1][slot].card && k.Allows(d)) {
          std::swap(d, s.hands[1][slot].card);
          swapped = true;
          break;
        }
      }
    }
    if (!swapped) continue;
    REQUIRE(CardsConserved(s));
    const BeliefGraph after = BuildGraph(s, 0, BeliefDepth::kL0L1);
    for (std::size_t e = 0; e < before.edges.size(); ++e) {
      if (before.edges[e].agent == 1) CHECK(before.edges[e] == after.edges[e]);
    }
  }
}

TEST_CASE("incremental update equals rebuild on a reduced deck") {
  const Ruleset rules = Ruleset::Reduced(2);
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    GameState s = NewGame(2 + static_cast<int>(seed % 2), seed, rules);
    std::vector<BeliefGraph> graphs;
    for (int p = 0; p < s.num_players; ++p) graphs.push_back(BuildGraph(s, p, BeliefDepth::kL0L1L2));
    testing::RandomPlayout(s, seed ^ 0xABCDEF, 10, [&](const GameState&, const Action&, const StepResult& r) {
      for (int p = 0; p < r.state.num_players; ++p) {
        graphs[p] = UpdateOnEvent(graphs[p], r.event);
        const BeliefGraph fresh = BuildGraph(r.state, p, BeliefDepth::kL0L1L2);
        CHECK(graphs[p] == fresh);
        CheckNormalized(graphs[p]);
      }
    });
  }
}

TEST_CASE("truncation keeps the requested layers") {
  const ScenarioInstance inst = MakeScenario(ScenarioId::kS5);
  const BeliefGraph l0 = BuildGraph(inst.state, inst.acting_player, BeliefDepth::kL0);
  CHECK(l0.edges.empty());
  CHECK(l0.meta_edges.empty());
  const BeliefGraph l1 = BuildGraph(inst.state, inst.acting_player, BeliefDepth::kL0L1);
  CHECK(l1.edges.size() == 1u);
  CHECK(l1.meta_edges.empty());
  const BeliefGraph l2 = BuildGraph(inst.state, inst.acting_player, BeliefDepth::kL0L1L2);
  CHECK(l2.meta_edges.size() == 1u);
  CHECK(l2.own == l1.own);
  CHECK_THROWS(BuildGraph(inst.state, inst.acting_player, BeliefDepth::kNone));
  CHECK(RenderText(l0).find("L1:") == std::string::npos);
  CHECK(RenderText(l2).find("L2:") != std::string::npos);
}

TEST_CASE("finesse reading on S5 and its ablations") {
  const ScenarioInstance inst = MakeScenario(ScenarioId::kS5);
  const BeliefGraph g = BuildGraph(inst.state, inst.acting_player, BeliefDepth::kL0L1L2);
  REQUIRE(g.focal_slot.has_value());
  CHECK(*g.focal_slot == inst.focal_slot);
  CHECK(g.finesse_flag);
  CHECK(g.verdicts[inst.focal_slot] == Verdict::kNotPlayable);
  const MetaEdge* meta = g.ActiveMetaEdge();
  REQUIRE(meta != nullptr);
  REQUIRE(meta->reading.has_value());
  CHECK(meta->reading->kind == ReadingKind::kDelayedPlay);

  const auto corrupted = ApplyAblation(g, AblationCondition::kBeliefCorrupted);
  REQUIRE(corrupted);
  CHECK(corrupted->verdicts[inst.focal_slot] == Verdict::kPlayable);
  CHECK(corrupted->focal_inverted);
  for (std::size_t i = 0; i < g.verdicts.size(); ++i) {
    if (static_cast<int>(i) != inst.focal_slot) CHECK(corrupted->verdicts[i] == g.verdicts[i]);
  }

  const auto misleading = ApplyAblation(g, AblationCondition::kMisleading);
  REQUIRE(misleading);
  CHECK_FALSE(misleading->finesse_flag);
  CHECK(misleading->verdicts[inst.focal_slot] == Verdict::kPlayable);

  const auto frozen = ApplyAblation(g, AblationCondition::kGraphFrozen);
  REQUIRE(frozen);
  CHECK(frozen->view.hint_log.size() + 1 == g.view.hint_log.size());
  CHECK_FALSE(frozen->finesse_flag);

  CHECK_FALSE(ApplyAblation(g, AblationCondition::kBeliefRemoved).has_value());
  CHECK(ApplyAblation(g, AblationCondition::kFullGraph) == g);
}

TEST_CASE("render is deterministic and sized for a prompt") {
  for (int players = 2; players <= 5; ++players) {
    const ScenarioInstance inst = MakeScenario(ScenarioId::kS5, players);
    const BeliefGraph g = BuildGraph(inst.state, inst.acting_player, BeliefDepth::kL0L1L2);
    const std::string text = RenderText(g);
    CHECK(text == RenderText(BuildGraph(inst.state, inst.acting_player, BeliefDepth::kL0L1L2)));
    CHECK(text.find(kRenderFormat) != std::string::npos);
    const int tokens = EstimateTokens(text);
    CHECK(tokens >= 500);
    CHECK(tokens <= 1100);
  }
  CHECK(EstimateTokens("abcde") == 2);
}

TEST_CASE("S6 belief update makes the blue card playable") {
  const ScenarioInstance inst = MakeScenario(ScenarioId::kS6);
  const BeliefGraph g = BuildGraph(inst.state, inst.acting_player, BeliefDepth::kL0L1L2);
  CHECK(g.verdicts[inst.focal_slot] == Verdict::kPlayable);
  CHECK(g.p_playable[inst.focal_slot] == doctest::Approx(1.0));
  const std::string text = RenderText(g);
  CHECK(text.find("Verdict card 2: Blue card is immediately playable.") != std::string::npos);
}

}  // namespace
}  // namespace hanabi_lab
