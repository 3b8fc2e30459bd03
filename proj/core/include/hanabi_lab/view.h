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

// What one seat can observe: every hand but its own, public piles, and the
// hint marks on every slot. A PlayerView can be built from a GameState or
// maintained incrementally from the public event stream; both routes yield
// equal views.

#ifndef HANABI_LAB_VIEW_H_
#define HANABI_LAB_VIEW_H_

#include <array>
#include <optional>
#include <vector>

#include "hanabi_lab/card.h"
#include "hanabi_lab/game.h"

namespace hanabi_lab {

using IdentityCounts = std::array<int, kNumIdentities>;

struct SlotView {
  std::optional<Card> card;  // nullopt for the perspective's own slots
  std::vector<HintMark> marks;

  bool operator==(const SlotView&) const = default;
};

struct HintRecord {
  int event_index = 0;
  int hinter = 0;
  int target = 0;
  HintKind kind = HintKind::kColor;
  int value = 0;
  std::vector<int> touched;  // target slots at the time of the hint

  bool operator==(const HintRecord&) const = default;
};

struct PlayerView {
  Ruleset rules;
  int num_players = 2;
  int perspective = 0;
  std::vector<std::vector<SlotView>> hands;
  std::array<int, kMaxColors> stacks{};
  std::vector<Card> discards;
  int hints = 8;
  int bombs = 0;
  int deck_size = 0;
  int next_event = 0;
  std::vector<int> last_action;  // per seat: event index of its latest action, or -1
  std::vector<HintRecord> hint_log;

  bool operator==(const PlayerView&) const = default;
};

PlayerView ObserveState(const GameState& state, int perspective);

// Applies the next public event. Throws std::invalid_argument when
// event.index != view.next_event.
void ApplyEvent(PlayerView& view, const Event& event);

// Copy of `view` with every trace of hint event `event_index` removed.
PlayerView WithoutHintEvent(const PlayerView& view, int event_index);

SlotKnowledge KnowledgeOf(const SlotView& slot);

// Copies not yet accounted for from the perspective: the full deck minus
// stacked, discarded and visible hand cards.
IdentityCounts UnseenCounts(const PlayerView& view);

// Copies unaccounted for by information shared between the perspective and
// `other`: stacked and discarded cards plus the hands of every third seat.
// Never reads the cards of `other`.
IdentityCounts SharedUnseenCounts(const PlayerView& view, int other);

// Latest hint received by `target` after that seat's own most recent action.
const HintRecord* ActiveHintTo(const PlayerView& view, int target);

}  // namespace hanabi_lab

#endif  // HANABI_LAB_VIEW_H_
