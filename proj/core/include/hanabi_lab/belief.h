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

// Layered belief graph for one seat.
//
//   L0      the seat's distribution over its own cards.
//   L1      the seat's model of what each other player believes about their
//           own cards, computed only from information both share.
//   L2      the seat's model of what the latest hinter believed the seat would
//           infer from that hint (a "hint reading").
//
// Effective own beliefs are L0 with the hinted slot conditioned on the L2
// reading. Verdicts are derived from effective beliefs and are what the text
// rendering asserts.

#ifndef HANABI_LAB_BELIEF_H_
#define HANABI_LAB_BELIEF_H_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hanabi_lab/card.h"
#include "hanabi_lab/finesse.h"
#include "hanabi_lab/game.h"
#include "hanabi_lab/view.h"

namespace hanabi_lab {

enum class BeliefDepth : std::uint8_t { kNone = 0, kL0, kL0L1, kL0L1L2 };
std::string_view ToString(BeliefDepth depth);  // "none", "L0", "L0L1", "L0L1L2"
std::optional<BeliefDepth> ParseBeliefDepth(std::string_view text);

enum class AblationCondition : std::uint8_t {
  kFullGraph = 0,
  kBeliefRemoved,
  kGraphFrozen,
  kBeliefCorrupted,
  kMisleading,
};
std::string_view ToString(AblationCondition c);  // "full_graph", "belief_removed", ...
std::optional<AblationCondition> ParseAblation(std::string_view text);

struct CardBelief {
  std::array<double, kNumIdentities> p{};

  double Mass(Card card) const { return p[card.Index()]; }
  double PlayableMass(const std::array<int, kMaxColors>& stacks) const;

  bool operator==(const CardBelief&) const = default;
};

// Exact per-slot marginals when the hand is a uniform deal from `counts`
// conditioned on every slot's knowledge. If no joint deal fits, each slot is
// conditioned on its own knowledge alone. Throws std::logic_error when a slot
// has no admissible identity.
std::vector<CardBelief> HandBeliefs(const IdentityCounts& counts,
                                    std::span<const SlotKnowledge> knowledge);

std::vector<SlotKnowledge> HandKnowledge(const PlayerView& view, int player);

struct BeliefEdge {
  int agent = 0;
  std::vector<CardBelief> slots;

  bool operator==(const BeliefEdge&) const = default;
};

enum class ReadingKind : std::uint8_t { kPlayNow = 0, kDelayedPlay };

struct HintReading {
  int hinter = 0;
  int hint_event = 0;
  int focus_slot = 0;
  ReadingKind kind = ReadingKind::kPlayNow;
  std::vector<Card> intended;
  std::optional<Card> bridge;

  bool operator==(const HintReading&) const = default;
};

struct MetaEdge {
  int agent = 0;  // the hinter whose model of the perspective this is
  std::vector<CardBelief> slots;
  std::optional<HintReading> reading;

  bool operator==(const MetaEdge&) const = default;
};

enum class Verdict : std::uint8_t { kPlayable = 0, kNotPlayable, kUncertain };
std::string_view ToString(Verdict v);

inline constexpr double kVerdictTolerance = 1e-9;

struct BeliefGraph {
  PlayerView view;
  BeliefDepth depth = BeliefDepth::kL0L1L2;
  AblationCondition ablation = AblationCondition::kFullGraph;

  std::vector<CardBelief> own;
  std::vector<BeliefEdge> edges;
  std::vector<MetaEdge> meta_edges;
  std::optional<FinessePattern> finesse;
  bool finesse_flag = false;

  std::vector<CardBelief> effective;
  std::vector<double> p_playable;  // per own slot, from effective
  std::vector<Verdict> verdicts;
  std::optional<int> focal_slot;
  bool focal_inverted = false;

  int perspective() const { return view.perspective; }
  const MetaEdge* ActiveMetaEdge() const;
  bool operator==(const BeliefGraph&) const = default;
};

// depth must not be kNone.
BeliefGraph BuildGraph(const PlayerView& view, BeliefDepth depth);
BeliefGraph BuildGraph(const GameState& state, int perspective, BeliefDepth depth);

// Incremental update; equal to rebuilding from the updated view.
BeliefGraph UpdateOnEvent(const BeliefGraph& graph, const Event& event);

// nullopt for kBeliefRemoved. kGraphFrozen drops the most recent hint event
// from the graph's history and re-derives.
std::optional<BeliefGraph> ApplyAblation(const BeliefGraph& graph, AblationCondition condition);

inline constexpr std::string_view kRenderFormat = "belief-graph/v1";

std::string RenderText(const BeliefGraph& graph);
// Rough token count used for prompt budgeting: characters / 4, rounded up.
int EstimateTokens(std::string_view text);

}  // namespace hanabi_lab

#endif  // HANABI_LAB_BELIEF_H_
