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

#include "hanabi_lab/game.h"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "hanabi_lab/rng.h"

namespace hanabi_lab {

bool Action::Touches(Card card) const {
  if (kind != ActionKind::kHint) return false;
  if (hint_kind == HintKind::kColor) return static_cast<int>(card.color) == hint_value;
  return card.rank == hint_value;
}

std::string ToString(const Action& action) {
  switch (action.kind) {
    case ActionKind::kPlay:
      return "play card " + std::to_string(action.slot + 1);
    case ActionKind::kDiscard:
      return "discard card " + std::to_string(action.slot + 1);
    case ActionKind::kHint: {
      std::string out = "hint " + std::string(PlayerName(action.target)) + " ";
      if (action.hint_kind == HintKind::kColor) {
        out += ColorName(static_cast<Color>(action.hint_value));
      } else {
        out += std::to_string(action.hint_value);
      }
      return out;
    }
  }
  return "?";
}

std::string_view KindLabel(ActionKind kind) {
  switch (kind) {
    case ActionKind::kPlay: return "PLAY";
    case ActionKind::kDiscard: return "DISCARD";
    case ActionKind::kHint: return "HINT";
  }
  return "?";
}

std::optional<Color> SlotKnowledge::KnownColor() const {
  for (int c = 0; c < kMaxColors; ++c) {
    if (colors == (1u << c)) return static_cast<Color>(c);
  }
  return std::nullopt;
}

std::optional<int> SlotKnowledge::KnownRank() const {
  for (int r = 1; r <= kNumRanks; ++r) {
    if (ranks == (1u << (r - 1))) return r;
  }
  return std::nullopt;
}

SlotKnowledge FoldMarks(std::span<const HintMark> marks, int excluded_event) {
  SlotKnowledge k;
  for (const HintMark& m : marks) {
    if (m.event_index == excluded_event) continue;
    const int bit = m.kind == HintKind::kColor ? m.value : m.value - 1;
    std::uint8_t& field = m.kind == HintKind::kColor ? k.colors : k.ranks;
    if (m.touched) {
      field &= static_cast<std::uint8_t>(1u << bit);
      k.touched = true;
    } else {
      field &= static_cast<std::uint8_t>(~(1u << bit));
    }
  }
  return k;
}

std::string_view ToString(Termination t) {
  switch (t) {
    case Termination::kNone: return "none";
    case Termination::kThirdBomb: return "third_bomb";
    case Termination::kDeckExhausted: return "deck_exhausted";
    case Termination::kPerfect: return "perfect";
  }
  return "?";
}

Termination GameState::termination() const {
  if (bombs >= rules.max_bombs) return Termination::kThirdBomb;
  if (Score(*this) == rules.MaxScore()) return Termination::kPerfect;
  if (final_turns_left == 0) return Termination::kDeckExhausted;
  return Termination::kNone;
}

bool GameState::IsTerminal() const { return termination() != Termination::kNone; }

namespace {

void CheckPlayers(int players) {
  if (players < kMinPlayers || players > kMaxPlayers) {
    throw std::invalid_argument("players must be in 2..5, got " + std::to_string(players));
  }
}

bool SameMultiset(std::vector<Card> a, std::vector<Card> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

}  // namespace

GameState NewGameFromDeck(int players, const std::vector<Card>& draw_order,
                          const Ruleset& rules) {
  CheckPlayers(players);
  if (!SameMultiset(draw_order, rules.FullDeck())) {
    throw std::invalid_argument("draw order is not a permutation of the ruleset deck");
  }
  const int hand_size = rules.HandSize(players);
  GameState s;
  s.rules = rules;
  s.num_players = players;
  s.hints = rules.max_hints;
  s.hands.resize(players);
  std::size_t next = 0;
  for (int p = 0; p < players; ++p) {
    for (int i = 0; i < hand_size; ++i) s.hands[p].push_back(HandCard{draw_order[next++], {}});
  }
  s.deck.assign(draw_order.rbegin(), draw_order.rend() - static_cast<long>(next));
  return s;
}

GameState NewGame(int players, std::uint64_t seed, const Ruleset& rules) {
  CheckPlayers(players);
  std::vector<Card> order = rules.FullDeck();
  std::mt19937_64 gen(seed);
  Shuffle(order, gen);
  GameState s = NewGameFromDeck(players, order, rules);
  s.seed = seed;
  return s;
}

std::vector<Action> LegalActions(const GameState& state, int player) {
  if (state.IsTerminal()) throw std::invalid_argument("no legal actions in a terminal state");
  if (player != state.current_player) throw std::invalid_argument("not this player's turn");
  std::vector<Action> out;
  const int n = static_cast<int>(state.hands[player].size());
  for (int i = 0; i < n; ++i) out.push_back(Action::Play(i));
  if (state.hints < state.rules.max_hints) {
    for (int i = 0; i < n; ++i) out.push_back(Action::Discard(i));
  }
  if (state.hints > 0) {
    for (int off = 1; off < state.num_players; ++off) {
      const int target = (player + off) % state.num_players;
      std::array<bool, kMaxColors> colors{};
      std::array<bool, kNumRanks + 1> ranks{};
      for (const HandCard& hc : state.hands[target]) {
        colors[static_cast<int>(hc.card.color)] = true;
        ranks[hc.card.rank] = true;
      }
      for (int c = 0; c < kMaxColors; ++c) {
        if (colors[c]) out.push_back(Action::HintColor(target, static_cast<Color>(c)));
      }
      for (int r = 1; r <= kNumRanks; ++r) {
        if (ranks[r]) out.push_back(Action::HintRank(target, r));
      }
    }
  }
  return out;
}

bool IsLegal(const GameState& state, const Action& action) {
  if (state.IsTerminal()) return false;
  const int actor = state.current_player;
  const int n = static_cast<int>(state.hands[actor].size());
  switch (action.kind) {
    case ActionKind::kPlay:
      return action.slot >= 0 && action.slot < n;
    case ActionKind::kDiscard:
      return action.slot >= 0 && action.slot < n && state.hints < state.rules.max_hints;
    case ActionKind::kHint: {
      if (state.hints <= 0 || action.target == actor || action.target < 0 ||
          action.target >= state.num_players) {
        return false;
      }
      if (action.hint_kind == HintKind::kColor &&
          (action.hint_value < 0 || action.hint_value >= kMaxColors)) {
        return false;
      }
      if (action.hint_kind == HintKind::kRank &&
          (action.hint_value < 1 || action.hint_value > kNumRanks)) {
        return false;
      }
      for (const HandCard& hc : state.hands[action.target]) {
        if (action.Touches(hc.card)) return true;
      }
      return false;
    }
  }
  return false;
}

StepResult ApplyAction(const GameState& state, const Action& action) {
  if (state.IsTerminal()) throw std::invalid_argument("game is over");
  if (!IsLegal(state, action)) throw std::invalid_argument("illegal action: " + ToString(action));

  GameState s = state;
  const int actor = s.current_player;
  Event ev;
  ev.index = s.turn;
  ev.actor = actor;
  ev.action = action;
  bool drew_last_card = false;

  if (action.kind == ActionKind::kHint) {
    --s.hints;
    auto& hand = s.hands[action.target];
    for (int i = 0; i < static_cast<int>(hand.size()); ++i) {
      const bool touched = action.Touches(hand[i].card);
      hand[i].marks.push_back(HintMark{ev.index, action.hint_kind, action.hint_value, touched});
      if (touched) ev.touched.push_back(i);
    }
  } else {
    auto& hand = s.hands[actor];
    const Card card = hand[action.slot].card;
    hand.erase(hand.begin() + action.slot);
    ev.revealed = card;
    if (action.kind == ActionKind::kPlay) {
      int& top = s.stacks[static_cast<int>(card.color)];
      if (top + 1 == card.rank) {
        top = card.rank;
        ev.success = true;
        if (card.rank == kNumRanks && s.hints < s.rules.max_hints) ++s.hints;
      } else {
        ++s.bombs;
        s.discards.push_back(card);
      }
    } else {
      ++s.hints;
      s.discards.push_back(card);
    }
    if (!s.deck.empty()) {
      const Card drawn = s.deck.back();
      s.deck.pop_back();
      hand.insert(hand.begin(), HandCard{drawn, {}});
      ev.drawn = drawn;
      drew_last_card = s.deck.empty();
    }
  }

  if (drew_last_card) {
    s.final_turns_left = s.num_players;
  } else if (s.final_turns_left > 0) {
    --s.final_turns_left;
  }
  ev.hints_after = s.hints;
  ev.bombs_after = s.bombs;
  ev.deck_after = static_cast<int>(s.deck.size());
  s.history.push_back(ev);
  ++s.turn;
  s.current_player = (actor + 1) % s.num_players;
  return StepResult{std::move(s), std::move(ev)};
}

int Score(const GameState& state) {
  int total = 0;
  for (int c = 0; c < state.rules.num_colors; ++c) total += state.stacks[c];
  return total;
}

int SurvivalTurns(std::span<const Event> history, int max_bombs) {
  for (const Event& e : history) {
    const bool third_bomb = e.action.kind == ActionKind::kPlay && !e.success &&
                            e.bombs_after >= max_bombs;
    const bool emptied_deck = e.drawn.has_value() && e.deck_after == 0;
    if (third_bomb || emptied_deck) return e.index;
  }
  return static_cast<int>(history.size());
}

GameOutcome Outcome(const GameState& state) {
  GameOutcome o;
  o.score = Score(state);
  o.survival_turns = SurvivalTurns(state.history, state.rules.max_bombs);
  o.termination = state.termination();
  o.final_round_played = state.final_turns_left >= 0;
  o.total_actions = static_cast<int>(state.history.size());
  return o;
}

bool CardsConserved(const GameState& state) {
  std::vector<Card> all = state.deck;
  for (const auto& hand : state.hands) {
    for (const HandCard& hc : hand) all.push_back(hc.card);
  }
  all.insert(all.end(), state.discards.begin(), state.discards.end());
  for (int c = 0; c < kMaxColors; ++c) {
    for (int r = 1; r <= state.stacks[c]; ++r) all.push_back(Card{static_cast<Color>(c), r});
  }
  return SameMultiset(std::move(all), state.rules.FullDeck());
}

}  // namespace hanabi_lab
