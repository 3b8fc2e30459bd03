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

#include "hanabi_lab/finesse.h"

#include <algorithm>

namespace hanabi_lab {

std::optional<FinessePattern> DetectFinesse(const PlayerView& view) {
  const int me = view.perspective;
  const HintRecord* hint = ActiveHintTo(view, me);
  if (hint == nullptr || hint->kind != HintKind::kColor || hint->touched.size() != 1 ||
      hint->hinter == me) {
    return std::nullopt;
  }
  const Color color = static_cast<Color>(hint->value);
  const int top = view.stacks[hint->value];
  if (top + 2 > kNumRanks) return std::nullopt;
  const Card bridge{color, top + 1};
  const Card deferred{color, top + 2};
  const int slot = hint->touched.front();

  if (!KnowledgeOf(view.hands[me][slot]).Allows(deferred)) return std::nullopt;
  if (UnseenCounts(view)[deferred.Index()] <= 0) return std::nullopt;

  const auto& hinter_hand = view.hands[hint->hinter];
  const bool holds_bridge = std::any_of(hinter_hand.begin(), hinter_hand.end(),
                                        [&](const SlotView& s) { return s.card == bridge; });
  if (!holds_bridge) return std::nullopt;

  return FinessePattern{hint->hinter, me, bridge, slot, deferred, hint->event_index};
}

}  // namespace hanabi_lab
