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

// Fixed diagnostic positions. Each instance has one acting seat and a graded
// class of correct actions.

#ifndef HANABI_LAB_SCENARIOS_H_
#define HANABI_LAB_SCENARIOS_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hanabi_lab/game.h"

namespace hanabi_lab {

enum class ScenarioId : std::uint8_t { kS1 = 0, kS2, kS3, kS4, kS5, kS6, kL1, kL2, kL3 };

inline constexpr std::array<ScenarioId, 9> kAllScenarios = {
    ScenarioId::kS1, ScenarioId::kS2, ScenarioId::kS3, ScenarioId::kS4, ScenarioId::kS5,
    ScenarioId::kS6, ScenarioId::kL1, ScenarioId::kL2, ScenarioId::kL3};

std::string_view ToString(ScenarioId id);  // "S1" .. "L3"
std::optional<ScenarioId> ParseScenarioId(std::string_view text);

struct ScenarioInstance {
  ScenarioId id = ScenarioId::kS1;
  std::string name;
  GameState state;
  int acting_player = 0;
  int tom_depth = 1;  // 1st- or 2nd-order
  int players = 2;
  // The card the scenario is about; it may sit in a partner's hand.
  int focal_player = 0;
  int focal_slot = 0;
  // Correct means playing anything but the focal card.
  bool wait_class = false;
  std::string optimal_description;
  // Every legal action in the graded class, in engine order.
  std::vector<Action> optimal;

  bool IsOptimal(const Action& action) const;
};

// Throws std::invalid_argument for player counts other than 2 on ids outside
// the depth series (S5, L2, L3).
ScenarioInstance MakeScenario(ScenarioId id, int players = 2);

enum class GradeKind : std::uint8_t { kCorrect = 0, kOverride, kIncorrect };
std::string_view ToString(GradeKind kind);

struct GradeResult {
  bool correct = false;
  bool overrode = false;
  std::optional<Action> planner_top;

  // Correct takes precedence; an incorrect override reports kOverride.
  GradeKind kind() const;
};

// `informed` marks the override-capable architecture. Throws
// std::invalid_argument when `chosen` is illegal.
GradeResult Grade(const ScenarioInstance& instance, const Action& chosen,
                  const std::optional<Action>& planner_top, bool informed);

// Self-contained JSON record: metadata plus the full state record.
std::string ScenarioToJson(const ScenarioInstance& instance);

}  // namespace hanabi_lab

#endif  // HANABI_LAB_SCENARIOS_H_
