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

// Serialization and canonical text rendering for engine types.

#ifndef HANABI_LAB_GAME_IO_H_
#define HANABI_LAB_GAME_IO_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hanabi_lab/game.h"

namespace hanabi_lab {

inline constexpr std::string_view kEventSchema = "hanabi-lab/event/v1";
inline constexpr std::string_view kStateSchema = "hanabi-lab/state/v1";

// One JSON object per line, no trailing newline.
std::string EventToJsonLine(const Event& event);
Event EventFromJsonLine(std::string_view line);
std::string EventsToJsonl(std::span<const Event> events);
std::vector<Event> EventsFromJsonl(std::string_view text);

std::string StateToJson(const GameState& state);
GameState StateFromJson(std::string_view text);

// "green", "3", "green 3", "not green, not 4", or "" when nothing is known.
std::string DescribeKnowledge(const SlotKnowledge& k, const Ruleset& rules);

// Canonical prompt rendering from `viewer`'s seat. The viewer's own cards are
// shown as "??" with their hint knowledge only. Field order is fixed.
std::string RenderState(const GameState& state, int viewer);

}  // namespace hanabi_lab

#endif  // HANABI_LAB_GAME_IO_H_
