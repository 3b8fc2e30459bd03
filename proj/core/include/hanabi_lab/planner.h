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

// One-step action scoring over a belief graph, and the ranked shortlist that
// gated and informed agents see.

#ifndef HANABI_LAB_PLANNER_H_
#define HANABI_LAB_PLANNER_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hanabi_lab/belief.h"
#include "hanabi_lab/finesse.h"
#include "hanabi_lab/game.h"
#include "hanabi_lab/view.h"

namespace hanabi_lab {

struct RewardConstants {
  double play_success = 1.0;
  double bomb = -2.0;
  double third_bomb = -3.0;  // added on top of `bomb` when two fuses are already burnt
  double discard = 0.1;
  double critical_discard = -1.0;  // scaled by P(card is the last copy of a needed card)
  double clued_discard = -0.5;     // discarding a card a partner spent a hint on
  double finesse_deferral = 0.5;   // non-Play actions while a finesse is asserted
  // At depth L0L1L2: a hint whose focus card the target would read as
  // playable when it is not.
  double misread_hint = -2.0;
};

struct ScoredAction {
  Action action;
  double value = 0.0;
  std::string rationale;

  bool operator==(const ScoredAction&) const = default;
};

enum class ShortlistVariant : std::uint8_t { kV0 = 0, kV1, kV2, kV3 };
std::string_view ToString(ShortlistVariant v);  // "V0".."V3"
std::optional<ShortlistVariant> ParseShortlistVariant(std::string_view text);

struct Shortlist {
  int perspective = 0;
  std::vector<ScoredAction> entries;  // ranked, best first
  bool finesse_active = false;
  std::optional<FinessePattern> finesse;
  // Control condition: random legal actions, no scores or reasoning.
  bool unscored = false;

  std::string Label(int i) const;  // "PLAY" / "DISCARD" / "HINT" / "WAIT"
  bool operator==(const Shortlist&) const = default;
};

// Legal actions for the perspective computed from its view alone. Matches
// LegalActions(state, perspective) for the state the view was built from.
std::vector<Action> LegalActions(const PlayerView& view);

ScoredAction ScoreAction(const BeliefGraph& graph, const Action& action,
                         const RewardConstants& k = {});
double ActionValue(const BeliefGraph& graph, const Action& action, const RewardConstants& k = {});

// Sorts by value, best first. Exact ties go Hint > Discard > Play, then lower
// slot, then target seat order after the actor, colors before ranks.
void RankActions(std::vector<ScoredAction>& actions, int actor, int num_players);

// All legal actions, scored and ranked.
std::vector<ScoredAction> ScoreAll(const BeliefGraph& graph, const RewardConstants& k = {});

// Best action of each class (Play, Discard, Hint), ranked; padded with the
// next-best remaining actions up to `size`. Throws std::invalid_argument for a
// view with no legal actions.
Shortlist MakeShortlist(const BeliefGraph& graph, int size = 3, const RewardConstants& k = {});

// `size` distinct legal actions drawn uniformly, unscored.
Shortlist RandomShortlist(const PlayerView& view, std::uint64_t seed, int size = 3);

std::optional<FinessePattern> DetectFinesse(const BeliefGraph& graph);

// Layout: a header line, a variant-specific region, and an "Options:" footer.
std::string RenderShortlist(const Shortlist& shortlist, ShortlistVariant variant);

}  // namespace hanabi_lab

#endif  // HANABI_LAB_PLANNER_H_
