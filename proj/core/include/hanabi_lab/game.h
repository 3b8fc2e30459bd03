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

// Deterministic Hanabi rules engine.
//
// Slot convention: slot 0 is the newest card. A played or discarded card is
// removed and the replacement draw is inserted at slot 0, shifting older
// cards right. Text renderings number slots from 1 ("card 3" is slot 2).

#ifndef HANABI_LAB_GAME_H_
#define HANABI_LAB_GAME_H_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hanabi_lab/card.h"

namespace hanabi_lab {

enum class ActionKind : std::uint8_t { kPlay = 0, kDiscard, kHint };
enum class HintKind : std::uint8_t { kColor = 0, kRank };

struct Action {
  ActionKind kind = ActionKind::kPlay;
  int slot = -1;    // Play / Discard
  int target = -1;  // Hint: absolute player id
  HintKind hint_kind = HintKind::kColor;
  int hint_value = 0;  // Color index or rank 1..5

  static Action Play(int slot) { return Action{ActionKind::kPlay, slot}; }
  static Action Discard(int slot) { return Action{ActionKind::kDiscard, slot}; }
  static Action HintColor(int target, Color c) {
    return Action{ActionKind::kHint, -1, target, HintKind::kColor, static_cast<int>(c)};
  }
  static Action HintRank(int target, int rank) {
    return Action{ActionKind::kHint, -1, target, HintKind::kRank, rank};
  }

  bool IsHint() const { return kind == ActionKind::kHint; }
  // For hints: whether `card` would be touched.
  bool Touches(Card card) const;

  bool operator==(const Action&) const = default;
};

// "play card 3", "discard card 1", "hint Bob green", "hint Bob 4".
std::string ToString(const Action& action);
std::string_view KindLabel(ActionKind kind);  // "PLAY", "DISCARD", "HINT"

// One hint event as seen by a single hand slot. Untouched slots also get a
// mark so negative information is kept.
struct HintMark {
  int event_index = 0;
  HintKind kind = HintKind::kColor;
  int value = 0;
  bool touched = false;

  bool operator==(const HintMark&) const = default;
};

struct HandCard {
  Card card;
  std::vector<HintMark> marks;

  bool operator==(const HandCard&) const = default;
};

// Hint-derived constraints on one slot.
struct SlotKnowledge {
  std::uint8_t colors = 0x1F;  // bit c: color c still possible
  std::uint8_t ranks = 0x1F;   // bit r-1: rank r still possible
  bool touched = false;        // received at least one positive hint

  bool Allows(Card card) const {
    return (colors >> static_cast<int>(card.color) & 1) && (ranks >> (card.rank - 1) & 1);
  }
  std::optional<Color> KnownColor() const;
  std::optional<int> KnownRank() const;

  bool operator==(const SlotKnowledge&) const = default;
};

// Folds marks into knowledge, ignoring marks from `excluded_event` (-1: none).
SlotKnowledge FoldMarks(std::span<const HintMark> marks, int excluded_event = -1);

// Full public consequence of one action. `drawn` is the identity of the
// replacement card; it is visible to everyone except the actor.
struct Event {
  int index = 0;
  int actor = 0;
  Action action;
  std::optional<Card> revealed;  // Play / Discard
  bool success = false;          // Play
  std::vector<int> touched;      // Hint: target slots touched
  std::optional<Card> drawn;
  int hints_after = 0;
  int bombs_after = 0;
  int deck_after = 0;

  bool operator==(const Event&) const = default;
};

enum class Termination : std::uint8_t { kNone = 0, kThirdBomb, kDeckExhausted, kPerfect };
std::string_view ToString(Termination t);

struct GameState {
  Ruleset rules;
  int num_players = 2;
  std::uint64_t seed = 0;
  std::vector<Card> deck;  // draw pile; next card is deck.back()
  std::vector<std::vector<HandCard>> hands;
  std::array<int, kMaxColors> stacks{};
  std::vector<Card> discards;
  int hints = 8;
  int bombs = 0;
  int turn = 0;
  int current_player = 0;
  // -1 until the deck empties, then the number of turns left in the final round.
  int final_turns_left = -1;
  std::vector<Event> history;

  bool IsTerminal() const;
  Termination termination() const;
  bool operator==(const GameState&) const = default;
};

struct GameOutcome {
  int score = 0;
  int survival_turns = 0;
  Termination termination = Termination::kNone;
  bool final_round_played = false;  // deck ran out and the extra round started
  int total_actions = 0;
};

// Shuffles the ruleset deck with mt19937_64(seed) via Shuffle() and deals.
GameState NewGame(int players, std::uint64_t seed, const Ruleset& rules = Ruleset::Standard());

// Deals from an explicit draw order: player p slot i receives
// draw_order[p * hand_size + i]; the remainder is drawn front to back.
// draw_order must be a permutation of rules.FullDeck().
GameState NewGameFromDeck(int players, const std::vector<Card>& draw_order,
                          const Ruleset& rules = Ruleset::Standard());

// Play slots, then Discard slots (hints < max), then Hints grouped by target
// in seating order after `player`, colors before ranks, ascending.
std::vector<Action> LegalActions(const GameState& state, int player);
bool IsLegal(const GameState& state, const Action& action);

struct StepResult {
  GameState state;
  Event event;
};

// Applies `action` for state.current_player. Throws std::invalid_argument on
// an illegal action or a terminal state; the input is never modified.
StepResult ApplyAction(const GameState& state, const Action& action);

int Score(const GameState& state);

// Actions strictly before the first terminating trigger: the play that sets
// off the last fuse, or the draw that empties the deck. A game without a
// trigger (perfect score first) counts all actions.
int SurvivalTurns(std::span<const Event> history, int max_bombs = 3);

GameOutcome Outcome(const GameState& state);

// deck + hands + discards + stacked cards == the ruleset's full multiset.
bool CardsConserved(const GameState& state);

inline bool IsPlayable(const GameState& state, Card card) {
  return state.stacks[static_cast<int>(card.color)] + 1 == card.rank;
}

}  // namespace hanabi_lab

#endif  // HANABI_LAB_GAME_H_
