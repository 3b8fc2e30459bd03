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

#include "hanabi_lab/view.h"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace hanabi_lab {

PlayerView ObserveState(const GameState& state, int perspective) {
  if (perspective < 0 || perspective >= state.num_players) {
    throw std::invalid_argument("perspective out of range");
  }
  PlayerView v;
  v.rules = state.rules;
  v.num_players = state.num_players;
  v.perspective = perspective;
  v.hands.resize(state.num_players);
  for (int p = 0; p < state.num_players; ++p) {
    for (const HandCard& hc : state.hands[p]) {
      v.hands[p].push_back(SlotView{p == perspective ? std::nullopt : std::optional<Card>(hc.card),
                                    hc.marks});
    }
  }
  v.stacks = state.stacks;
  v.discards = state.discards;
  v.hints = state.hints;
  v.bombs = state.bombs;
  v.deck_size = static_cast<int>(state.deck.size());
  v.next_event = static_cast<int>(state.history.size());
  v.last_action.assign(state.num_players, -1);
  for (const Event& e : state.history) {
    v.last_action[e.actor] = e.index;
    if (e.action.IsHint()) {
      v.hint_log.push_back(HintRecord{e.index, e.actor, e.action.target, e.action.hint_kind,
                                      e.action.hint_value, e.touched});
    }
  }
  return v;
}

void ApplyEvent(PlayerView& v, const Event& e) {
  if (e.index != v.next_event) {
    throw std::invalid_argument("out-of-order event: expected " + std::to_string(v.next_event) +
                                ", got " + std::to_string(e.index));
  }
  if (e.action.IsHint()) {
    auto& hand = v.hands.at(e.action.target);
    for (int i = 0; i < static_cast<int>(hand.size()); ++i) {
      const bool touched = std::find(e.touched.begin(), e.touched.end(), i) != e.touched.end();
      hand[i].marks.push_back(HintMark{e.index, e.action.hint_kind, e.action.hint_value, touched});
    }
    v.hint_log.push_back(HintRecord{e.index, e.actor, e.action.target, e.action.hint_kind,
                                    e.action.hint_value, e.touched});
  } else {
    if (!e.revealed) throw std::invalid_argument("play/discard event without revealed card");
    auto& hand = v.hands.at(e.actor);
    hand.erase(hand.begin() + e.action.slot);
    const Card card = *e.revealed;
    if (e.action.kind == ActionKind::kPlay && e.success) {
      v.stacks[static_cast<int>(card.color)] = card.rank;
    } else {
      v.discards.push_back(card);
    }
    if (e.drawn) {
      hand.insert(hand.begin(),
                  SlotView{e.actor == v.perspective ? std::nullopt : e.drawn, {}});
    }
  }
  v.last_action.at(e.actor) = e.index;
  v.hints = e.hints_after;
  v.bombs = e.bombs_after;
  v.deck_size = e.deck_after;
  ++v.next_event;
}

PlayerView WithoutHintEvent(const PlayerView& view, int event_index) {
  PlayerView v = view;
  for (auto& hand : v.hands) {
    for (SlotView& slot : hand) {
      std::erase_if(slot.marks, [&](const HintMark& m) { return m.event_index == event_index; });
    }
  }
  std::erase_if(v.hint_log, [&](const HintRecord& h) { return h.event_index == event_index; });
  return v;
}

SlotKnowledge KnowledgeOf(const SlotView& slot) { return FoldMarks(slot.marks); }

namespace {

IdentityCounts PublicUnseen(const PlayerView& v) {
  IdentityCounts counts{};
  for (int i = 0; i < kNumIdentities; ++i) counts[i] = v.rules.Copies(Card::FromIndex(i));
  for (int c = 0; c < kMaxColors; ++c) {
    for (int r = 1; r <= v.stacks[c]; ++r) --counts[Card{static_cast<Color>(c), r}.Index()];
  }
  for (const Card& d : v.discards) --counts[d.Index()];
  return counts;
}

}  // namespace

IdentityCounts UnseenCounts(const PlayerView& v) {
  IdentityCounts counts = PublicUnseen(v);
  for (int p = 0; p < v.num_players; ++p) {
    if (p == v.perspective) continue;
    for (const SlotView& s : v.hands[p]) --counts[s.card->Index()];
  }
  return counts;
}

IdentityCounts SharedUnseenCounts(const PlayerView& v, int other) {
  IdentityCounts counts = PublicUnseen(v);
  for (int p = 0; p < v.num_players; ++p) {
    if (p == v.perspective || p == other) continue;
    for (const SlotView& s : v.hands[p]) --counts[s.card->Index()];
  }
  return counts;
}

const HintRecord* ActiveHintTo(const PlayerView& v, int target) {
  const int since = v.last_action.at(target);
  for (auto it = v.hint_log.rbegin(); it != v.hint_log.rend(); ++it) {
    if (it->event_index <= since) return nullptr;
    if (it->target == target) return &*it;
  }
  return nullptr;
}

}  // namespace hanabi_lab
