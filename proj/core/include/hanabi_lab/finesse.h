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

#ifndef HANABI_LAB_FINESSE_H_
#define HANABI_LAB_FINESSE_H_

#include <optional>

#include "hanabi_lab/card.h"
#include "hanabi_lab/view.h"

namespace hanabi_lab {

// A color hint on a card two ranks above its stack, given by a seat that
// visibly holds the one-rank-above "bridge" card. The hinted card waits until
// the bridge is played.
struct FinessePattern {
  int hinter = 0;
  int holder = 0;
  Card bridge;         // rank == stack top + 1
  int deferred_slot = 0;
  Card deferred;       // rank == stack top + 2
  int hint_event = 0;

  bool operator==(const FinessePattern&) const = default;
};

// Looks only at the hint the perspective received since its last action.
// Returns nullopt when that hint does not fit the pattern (including the
// anti-finesse case where the hinter lacks the bridge card).
std::optional<FinessePattern> DetectFinesse(const PlayerView& view);

}  // namespace hanabi_lab

#endif  // HANABI_LAB_FINESSE_H_
