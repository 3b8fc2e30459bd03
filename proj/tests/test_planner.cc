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
#include <cmath>
#include <regex>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "doctest.h"
#include "hanabi_lab/belief.h"
#include "hanabi_lab/game_io.h"
#include "hanabi_lab/planner.h"
#include "hanabi_lab/scenarios.h"
#include "test_util.h"

namespace hanabi_lab {
namespace {

using testing::RandomPlayout;

// Fraction of ordered deals of the hidden cards (own hand plus deck, copies
// distinguished) into own slots, consistent with every slot's marks, in which
// each slot holds a playable card.
std::vector<double> BruteForcePlayable(const GameState& s, int p) {
  std::vector<Card> hidden = s.deck;
  for (const HandCard& hc : s.hands[p]) hidden.push_back(hc.card);
  std::vector<SlotKnowledge> know;
  for (const HandCard& hc : s.hands[p]) know.push_back(FoldMarks(hc.marks));
  const int h = static_cast<int>(know.size());
  std::vector<double> hits(h, 0.0);
  double total = 0.0;
  std::vector<bool> used(hidden.size(), false);
  std::vector<int> pick(h);
  auto rec = [&](auto&& self, int slot) -> void {
    if (slot == h) {
      total += 1.0;
      for (int j = 0; j < h; ++j) {
        const Card c = hidden[pick[j]];
        if (s.stacks[static_cast<int>(c.color)] + 1 == c.rank) hits[j] += 1.0;
      }
      return;
    }
    for (std::size_t i = 0; i < hidden.size(); ++i) {
      if (used[i] || !know[slot].Allows(hidden[i])) continue;
      used[i] = true;
      pick[slot] = static_cast<int>(i);
      self(self, slot + 1);
      used[i] = false;
    }
  };
  rec(rec, 0);
  REQUIRE(total > 0.0);
  for (double& x : hits) x /= total;
  return hits;
}

bool Touched(const GameState& s, int p) {
  for (const HandCard& hc : s.hands[p]) {
    if (!hc.marks.empty()) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("planner contract holds on every scenario") {
  for (ScenarioId id : kAllScenarios) {
    std::vector<int> counts = {2};
    if (id == ScenarioId::kS5 || id == ScenarioId::kL2 || id == ScenarioId::kL3) counts = {2, 3, 4, 5};
    for (int n : counts) {
      CAPTURE(ToString(id));
      CAPTURE(n);
      const ScenarioInstance inst = MakeScenario(id, n);
      const BeliefGraph g = BuildGraph(inst.state, inst.acting_player, BeliefDepth::kL0L1L2);
      const Shortlist sl = MakeShortlist(g);
      REQUIRE(sl.entries.size() == 3);
      CHECK(inst.IsOptimal(sl.entries[0].action));
      if (inst.wait_class) CHECK(sl.Label(0) == "WAIT");
      for (std::size_t i = 1; i < sl.entries.size(); ++i) {
        CHECK(sl.entries[i - 1].value >= sl.entries[i].value);
      }
      const bool finesse_expected = id == ScenarioId::kS5 || id == ScenarioId::kL2;
      CHECK(DetectFinesse(g).has_value() == finesse_expected);
      CHECK(sl.finesse_active == finesse_expected);
    }
  }
}

TEST_CASE("S5 shortlist ranks wait, discard, play") {
  const ScenarioInstance inst = MakeScenario(ScenarioId::kS5);
  const BeliefGraph g = BuildGraph(inst.state, inst.acting_player, BeliefDepth::kL0L1L2);
  const Shortlist sl = MakeShortlist(g);
  CHECK(sl.Label(0) == "WAIT");
  CHECK(sl.Label(1) == "DISCARD");
  CHECK(sl.Label(2) == "PLAY");
  CHECK(sl.entries[2].value < 0.0);
  // Playing the finessed card is asserted to bomb.
  const Action focal = Action::Play(inst.focal_slot);
  CHECK(ActionValue(g, focal) == doctest::Approx(-2.0));
}

TEST_CASE("play score matches deck-completion enumeration") {
  int checked = 0;
  for (std::uint64_t seed = 1; checked < 12 && seed < 400; ++seed) {
    GameState s = NewGame(2, seed, Ruleset::Reduced(2));
    s = RandomPlayout(std::move(s), seed * 7 + 3, 6 + static_cast<int>(seed % 7));
    if (s.IsTerminal()) continue;
    const int p = s.current_player;
    if (!Touched(s, p) || s.deck.size() > 14) continue;
    const BeliefGraph g = BuildGraph(s, p, BeliefDepth::kL0);
    const auto oracle = BruteForcePlayable(s, p);
    RewardConstants k;
    for (int j = 0; j < static_cast<int>(oracle.size()); ++j) {
      CAPTURE(seed);
      CAPTURE(j);
      CHECK(g.p_playable[j] == doctest::Approx(oracle[j]).epsilon(1e-9));
      double expect = oracle[j] * k.play_success + (1.0 - oracle[j]) * k.bomb;
      if (s.bombs == s.rules.max_bombs - 1) expect += (1.0 - oracle[j]) * k.third_bomb;
      CHECK(ActionValue(g, Action::Play(j)) == doctest::Approx(expect).epsilon(1e-9));
    }
    ++checked;
  }
  CHECK(checked >= 8);
}

TEST_CASE("ranking is invariant under positive affine rescaling") {
  for (ScenarioId id : kAllScenarios) {
    const ScenarioInstance inst = MakeScenario(id);
    const BeliefGraph g = BuildGraph(inst.state, inst.acting_player, BeliefDepth::kL0L1L2);
    const std::vector<ScoredAction> base = ScoreAll(g);
    for (auto [a, b] : {std::pair{3.0, 0.0}, std::pair{0.5, 7.0}, std::pair{2.0, -1.0}}) {
      std::vector<ScoredAction> scaled = base;
      for (auto& x : scaled) x.value = a * x.value + b;
      std::reverse(scaled.begin(), scaled.end());
      RankActions(scaled, inst.acting_player, inst.players);
      REQUIRE(scaled.size() == base.size());
      for (std::size_t i = 0; i < base.size(); ++i) CHECK(scaled[i].action == base[i].action);
    }
  }
}

TEST_CASE("view legal actions match engine legal actions") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int n = 2 + static_cast<int>(seed % 4);
    RandomPlayout(NewGame(n, seed), seed, 40, [&](const GameState& s, const Action&, const StepResult&) {
      const int p = s.current_player;
      CHECK(LegalActions(ObserveState(s, p)) == LegalActions(s, p));
    });
  }
}

TEST_CASE("shortlist entries are distinct and legal") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    RandomPlayout(NewGame(3, seed), seed + 100, 30, [&](const GameState& s, const Action&, const StepResult&) {
      const int p = s.current_player;
      const BeliefGraph g = BuildGraph(s, p, BeliefDepth::kL0L1L2);
      const Shortlist sl = MakeShortlist(g);
      const Shortlist rnd = RandomShortlist(g.view, seed);
      for (const Shortlist* x : {&sl, &rnd}) {
        std::set<std::string> seen;
        for (const auto& e : x->entries) {
          CHECK(IsLegal(s, e.action));
          seen.insert(ToString(e.action));
        }
        CHECK(seen.size() == x->entries.size());
      }
      CHECK(rnd.unscored);
      CHECK(RandomShortlist(g.view, seed) == rnd);
    });
  }
}

TEST_CASE("shortlist variants share header and footer") {
  const ScenarioInstance inst = MakeScenario(ScenarioId::kS5);
  const Shortlist sl = MakeShortlist(BuildGraph(inst.state, inst.acting_player, BeliefDepth::kL0L1L2));
  const std::string v0 = RenderShortlist(sl, ShortlistVariant::kV0);
  const std::string v1 = RenderShortlist(sl, ShortlistVariant::kV1);
  const std::string v2 = RenderShortlist(sl, ShortlistVariant::kV2);
  const std::string v3 = RenderShortlist(sl, ShortlistVariant::kV3);
  auto first = [](const std::string& t) { return t.substr(0, t.find('\n')); };
  auto last = [](const std::string& t) { return t.substr(t.rfind("Options:")); };
  for (const std::string* t : {&v1, &v2, &v3}) {
    CHECK(first(*t) == first(v0));
    CHECK(last(*t) == last(v0));
  }
  CHECK(std::regex_search(v0, std::regex(R"(\[1\. WAIT [+-]\d\.\d\d, 2\. DISCARD [+-]\d\.\d\d, 3\. PLAY [+-]\d\.\d\d\])")));

  std::smatch m0, m1;
  const std::regex nums(R"(WAIT ([+-]\d+\.\d\d), 2\. DISCARD ([+-]\d+\.\d\d))");
  REQUIRE(std::regex_search(v0, m0, nums));
  REQUIRE(std::regex_search(v1, m1, nums));
  const double margin0 = std::stod(m0[1]) - std::stod(m0[2]);
  const double margin1 = std::stod(m1[1]) - std::stod(m1[2]);
  CHECK(margin1 >= 3.0 * margin0 - 0.02);

  CHECK(v2.find("PLAY: not recommended (") != std::string::npos);
  CHECK(v0.find("not recommended") == std::string::npos);
  CHECK(v3.find("bomb") != std::string::npos);
  CHECK(v3.find("Recommended: option 1 (WAIT).") != std::string::npos);
  CHECK(v3.find('[') == std::string::npos);
}

TEST_CASE("unscored shortlist renders without values") {
  const ScenarioInstance inst = MakeScenario(ScenarioId::kS3);
  const Shortlist rnd = RandomShortlist(ObserveState(inst.state, inst.acting_player), 5);
  const std::string text = RenderShortlist(rnd, ShortlistVariant::kV0);
  CHECK(text.find("Options:") != std::string::npos);
  CHECK_FALSE(std::regex_search(text, std::regex(R"([+-]\d\.\d\d)")));
}

TEST_CASE("grading") {
  const ScenarioInstance s5 = MakeScenario(ScenarioId::kS5);
  const Action focal = Action::Play(s5.focal_slot);
  const Action top = s5.optimal.front();
  SUBCASE("playing the finessed card is wrong") {
    const GradeResult g = Grade(s5, focal, top, false);
    CHECK_FALSE(g.correct);
    CHECK(g.kind() == GradeKind::kIncorrect);
  }
  SUBCASE("informed override") {
    const GradeResult g = Grade(s5, focal, top, true);
    CHECK(g.overrode);
    CHECK(g.kind() == GradeKind::kOverride);
  }
  SUBCASE("a correct override reports correct") {
    std::optional<Action> other;
    for (const Action& a : s5.optimal) {
      if (a != top) other = a;
    }
    REQUIRE(other.has_value());
    const GradeResult g = Grade(s5, *other, top, true);
    CHECK(g.correct);
    CHECK(g.overrode);
    CHECK(g.kind() == GradeKind::kCorrect);
  }
  SUBCASE("illegal actions throw") {
    CHECK_THROWS_AS(Grade(s5, Action::Play(9), top, false), std::invalid_argument);
  }
}

TEST_CASE("depth-series scenarios") {
  const ScenarioInstance s5 = MakeScenario(ScenarioId::kS5);
  const ScenarioInstance l2 = MakeScenario(ScenarioId::kL2);
  const ScenarioInstance l3 = MakeScenario(ScenarioId::kL3);
  CHECK(StateToJson(s5.state) == StateToJson(l2.state));
  CHECK(l2.optimal == s5.optimal);
  CHECK(l2.tom_depth == 2);
  CHECK_FALSE(l3.wait_class);
  CHECK(l3.IsOptimal(Action::Play(l3.focal_slot)));
  CHECK_THROWS_AS(MakeScenario(ScenarioId::kS1, 3), std::invalid_argument);
  for (int n = 2; n <= 5; ++n) {
    const ScenarioInstance x = MakeScenario(ScenarioId::kS5, n);
    CHECK(x.players == n);
    CHECK(x.state.num_players == n);
  }
}

TEST_CASE("scenario record is self-contained") {
  for (ScenarioId id : kAllScenarios) {
    const ScenarioInstance inst = MakeScenario(id);
    const auto j = nlohmann::json::parse(ScenarioToJson(inst));
    CHECK(j["id"] == std::string(ToString(id)));
    CHECK(j["optimal"].size() == inst.optimal.size());
    const GameState back = StateFromJson(j["state"].dump());
    CHECK(StateToJson(back) == StateToJson(inst.state));
  }
}

}  // namespace hanabi_lab
