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

#include "hanabi_lab/scenarios.h"

#include <algorithm>
#include <stdexcept>

#include "hanabi_lab/game_io.h"
#include "json_codec.h"

namespace hanabi_lab {
namespace {

std::vector<Card> Cards(std::initializer_list<std::string_view> names) {
  std::vector<Card> out;
  for (std::string_view n : names) out.push_back(*ParseCard(n));
  return out;
}

// Hands are dealt as given; `draws` are the next cards off the deck in order;
// the rest of the deck follows in canonical order.
GameState Deal(const std::vector<std::vector<Card>>& hands, const std::vector<Card>& draws) {
  const Ruleset rules = Ruleset::Standard();
  std::vector<Card> order;
  for (const auto& h : hands) order.insert(order.end(), h.begin(), h.end());
  order.insert(order.end(), draws.begin(), draws.end());
  std::vector<Card> rest = rules.FullDeck();
  for (Card c : order) {
    auto it = std::find(rest.begin(), rest.end(), c);
    if (it == rest.end()) throw std::logic_error("scenario uses too many copies of " + ToString(c));
    rest.erase(it);
  }
  order.insert(order.end(), rest.begin(), rest.end());
  return NewGameFromDeck(static_cast<int>(hands.size()), order, rules);
}

GameState Run(GameState s, std::initializer_list<Action> actions) {
  for (const Action& a : actions) s = ApplyAction(s, a).state;
  return s;
}

void FillOptimal(ScenarioInstance& inst, auto&& in_class) {
  for (const Action& a : LegalActions(inst.state, inst.acting_player)) {
    if (in_class(a)) inst.optimal.push_back(a);
  }
  if (inst.optimal.empty()) throw std::logic_error("scenario has an empty optimal class");
}

void HintTouching(ScenarioInstance& inst) {
  const Card focal = inst.state.hands[inst.focal_player][inst.focal_slot].card;
  FillOptimal(inst, [&](const Action& a) {
    return a.IsHint() && a.target == inst.focal_player && a.Touches(focal);
  });
}

constexpr int kAlice = 0;
constexpr int kBob = 1;

// S5/L2 and L3 share one surface. The filler seats each re-hint Alice's 4s so
// that Bob acts right after Alice's green hint.
ScenarioInstance FinesseFamily(ScenarioId id, int players) {
  if (players < kMinPlayers || players > kMaxPlayers) {
    throw std::invalid_argument("players must be 2..5");
  }
  const bool anti = id == ScenarioId::kL3;
  std::vector<std::vector<Card>> hands = {
      anti ? Cards({"Y4", "W3", "G1", "W4", "R3"}) : Cards({"Y4", "G2", "G1", "W4", "R3"}),
      anti ? Cards({"R2", "Y3", "G2", "B4", "W2"}) : Cards({"R2", "Y3", "G3", "B4", "W2"}),
      Cards({"R4", "B3", "W3", "G4", "B5"}),
      Cards({"R3", "Y4", "W5", "G5", "B4"}),
      Cards({"W4", "R4", "Y5", "G4", "B3"}),
  };
  if (anti) hands[2][2] = *ParseCard("Y3");  // W3 already used twice
  hands.resize(players);
  const int hand_size = Ruleset::Standard().HandSize(players);
  for (auto& h : hands) h.resize(hand_size);

  GameState s = Deal(hands, Cards({"Y2"}));
  s = ApplyAction(s, Action::Play(2)).state;
  s = ApplyAction(s, Action::HintRank(kAlice, 4)).state;
  for (int p = 2; p < players; ++p) s = ApplyAction(s, Action::HintRank(kAlice, 4)).state;
  s = ApplyAction(s, Action::HintColor(kBob, Color::kGreen)).state;

  ScenarioInstance inst;
  inst.id = id;
  inst.state = std::move(s);
  inst.acting_player = kBob;
  inst.tom_depth = 2;
  inst.players = players;
  inst.focal_player = kBob;
  inst.focal_slot = 2;
  if (anti) {
    inst.name = "Anti-Finesse";
    inst.optimal_description = "play the green-hinted card 3: no bridge card exists";
    FillOptimal(inst, [](const Action& a) { return a == Action::Play(2); });
  } else {
    inst.name = id == ScenarioId::kL2 ? "Finesse (depth series)" : "Finesse";
    inst.wait_class = true;
    inst.optimal_description = "wait: any action other than playing card 3";
    FillOptimal(inst, [](const Action& a) { return a != Action::Play(2); });
  }
  return inst;
}

}  // namespace

std::string_view ToString(ScenarioId id) {
  static constexpr std::array<std::string_view, 9> kNames = {"S1", "S2", "S3", "S4", "S5",
                                                             "S6", "L1", "L2", "L3"};
  return kNames.at(static_cast<int>(id));
}

std::optional<ScenarioId> ParseScenarioId(std::string_view text) {
  for (ScenarioId id : kAllScenarios) {
    const std::string_view n = ToString(id);
    if (text.size() == 2 && std::toupper(static_cast<unsigned char>(text[0])) == n[0] &&
        text[1] == n[1]) {
      return id;
    }
  }
  return std::nullopt;
}

bool ScenarioInstance::IsOptimal(const Action& action) const {
  return std::find(optimal.begin(), optimal.end(), action) != optimal.end();
}

ScenarioInstance MakeScenario(ScenarioId id, int players) {
  if (id == ScenarioId::kS5 || id == ScenarioId::kL2 || id == ScenarioId::kL3) {
    return FinesseFamily(id, players);
  }
  if (players != 2) {
    throw std::invalid_argument(std::string(ToString(id)) + " is defined for 2 players only");
  }
  ScenarioInstance inst;
  inst.id = id;
  inst.players = 2;
  switch (id) {
    case ScenarioId::kS1: {
      inst.name = "Redundant Hint Avoidance";
      inst.state = Run(Deal({Cards({"R4", "Y3", "G5", "W3", "Y2"}), Cards({"R3", "B1", "Y4", "W2", "G4"})}, {}),
                       {Action::HintColor(kBob, Color::kBlue), Action::HintRank(kAlice, 5)});
      inst.acting_player = kAlice;
      inst.focal_player = kBob;
      inst.focal_slot = 1;
      inst.optimal_description = "hint Bob 1: Bob already knows the card is blue";
      FillOptimal(inst, [](const Action& a) { return a == Action::HintRank(kBob, 1); });
      break;
    }
    case ScenarioId::kS2: {
      inst.name = "Critical Save";
      inst.state = Run(Deal({Cards({"Y4", "R1", "B3", "G2", "W5"}), Cards({"Y3", "W4", "G3", "R2", "R2"})},
                            Cards({"G4", "B4"})),
                       {Action::HintRank(kBob, 4), Action::HintRank(kAlice, 1), Action::Play(1),
                        Action::Discard(4)});
      inst.acting_player = kAlice;
      inst.focal_player = kBob;
      inst.focal_slot = 4;
      inst.optimal_description = "hint Bob about card 5, the last R2";
      HintTouching(inst);
      break;
    }
    case ScenarioId::kS3: {
      inst.name = "Trust-Based Play";
      inst.state = Run(Deal({Cards({"R4", "Y3", "G5", "W2", "B3"}), Cards({"R3", "Y1", "G4", "W3", "B2"})}, {}),
                       {Action::HintRank(kBob, 1)});
      inst.acting_player = kBob;
      inst.focal_player = kBob;
      inst.focal_slot = 1;
      inst.optimal_description = "play the 1-hinted card 2";
      FillOptimal(inst, [](const Action& a) { return a == Action::Play(1); });
      break;
    }
    case ScenarioId::kS4: {
      inst.name = "Inference from Silence";
      inst.state = Run(Deal({Cards({"R4", "Y3", "G5", "W2", "B3"}), Cards({"R3", "Y4", "G3", "B2", "W5"})}, {}),
                       {Action::HintRank(kBob, 5)});
      inst.acting_player = kBob;
      inst.focal_player = kBob;
      inst.focal_slot = 4;
      inst.optimal_description = "discard any unhinted card";
      const auto& hand = inst.state.hands[kBob];
      FillOptimal(inst, [&](const Action& a) {
        return a.kind == ActionKind::kDiscard && !FoldMarks(hand[a.slot].marks).touched;
      });
      break;
    }
    case ScenarioId::kS6: {
      inst.name = "Belief Update After Action";
      inst.state = Run(Deal({Cards({"Y3", "R4", "B1", "G2", "W4"}), Cards({"R3", "B2", "Y4", "W3", "G4"})},
                            Cards({"R3"})),
                       {Action::HintColor(kBob, Color::kBlue), Action::HintRank(kAlice, 1),
                        Action::HintRank(kBob, 2), Action::HintRank(kAlice, 4), Action::Play(2)});
      inst.acting_player = kBob;
      inst.focal_player = kBob;
      inst.focal_slot = 1;
      inst.optimal_description = "play card 2, made playable by Alice's B1";
      FillOptimal(inst, [](const Action& a) { return a == Action::Play(1); });
      break;
    }
    case ScenarioId::kL1: {
      inst.name = "Partner Knowledge";
      inst.state = Deal({Cards({"R4", "Y3", "G5", "W3", "Y2"}), Cards({"Y3", "G4", "R1", "W3", "B2"})}, {});
      inst.acting_player = kAlice;
      inst.focal_player = kBob;
      inst.focal_slot = 2;
      inst.optimal_description = "hint Bob about the unknown R1";
      HintTouching(inst);
      break;
    }
    default:
      throw std::invalid_argument("unknown scenario id");
  }
  return inst;
}

std::string_view ToString(GradeKind kind) {
  switch (kind) {
    case GradeKind::kCorrect: return "correct";
    case GradeKind::kOverride: return "override";
    case GradeKind::kIncorrect: return "incorrect";
  }
  return "?";
}

GradeKind GradeResult::kind() const {
  if (correct) return GradeKind::kCorrect;
  return overrode ? GradeKind::kOverride : GradeKind::kIncorrect;
}

GradeResult Grade(const ScenarioInstance& inst, const Action& chosen,
                  const std::optional<Action>& planner_top, bool informed) {
  if (!IsLegal(inst.state, chosen)) {
    throw std::invalid_argument("graded action is illegal: " + ToString(chosen));
  }
  GradeResult g;
  g.correct = inst.IsOptimal(chosen);
  g.planner_top = planner_top;
  g.overrode = informed && planner_top && chosen != *planner_top;
  return g;
}

std::string ScenarioToJson(const ScenarioInstance& inst) {
  Json j;
  j["schema"] = "hanabi-lab/scenario/v1";
  j["id"] = ToString(inst.id);
  j["name"] = inst.name;
  j["acting_player"] = inst.acting_player;
  j["tom_depth"] = inst.tom_depth;
  j["players"] = inst.players;
  j["focal_player"] = inst.focal_player;
  j["focal_slot"] = inst.focal_slot;
  j["wait_class"] = inst.wait_class;
  j["optimal_description"] = inst.optimal_description;
  j["optimal"] = inst.optimal;
  j["state"] = Json::parse(StateToJson(inst.state));
  return j.dump(2);
}

}  // namespace hanabi_lab
