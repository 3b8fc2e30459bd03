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

// Agent contract: what an acting seat is shown, how the prompt is laid out,
// how a free-text reply becomes an action, and scripted stand-in agents.

#ifndef HANABI_LAB_AGENTS_H_
#define HANABI_LAB_AGENTS_H_

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hanabi_lab/belief.h"
#include "hanabi_lab/game.h"
#include "hanabi_lab/planner.h"
#include "hanabi_lab/view.h"

namespace hanabi_lab {

enum class Architecture : std::uint8_t { kPromptBased = 0, kGated, kInformed };
std::string_view ToString(Architecture a);  // "prompt", "gated", "informed"
std::optional<Architecture> ParseArchitecture(std::string_view text);

enum class TranscriptMode : std::uint8_t { kOff = 0, kScattered, kSummarized };
std::string_view ToString(TranscriptMode m);
std::optional<TranscriptMode> ParseTranscriptMode(std::string_view text);

inline constexpr int kTranscriptWindow = 15;

struct ObservationOptions {
  Architecture architecture = Architecture::kPromptBased;
  BeliefDepth depth = BeliefDepth::kL0L1L2;
  AblationCondition ablation = AblationCondition::kFullGraph;
  ShortlistVariant variant = ShortlistVariant::kV0;
  // Shortlist architectures normally rank with the planner (on the shown graph,
  // or on a hidden L0L1 graph when none is shown). The control replaces it
  // with random legal actions and no reasoning.
  bool random_shortlist = false;
  std::uint64_t control_seed = 0;
  TranscriptMode transcript = TranscriptMode::kOff;
  bool partner_knowledge = false;
  std::string conventions_text;  // empty: block omitted
  std::string strategy_text;
};

struct Observation {
  int actor = 0;
  Architecture architecture = Architecture::kPromptBased;
  PlayerView view;
  std::vector<Action> legal;
  std::optional<BeliefGraph> graph;  // after ablation
  std::optional<Shortlist> shortlist;

  std::string board_text;
  std::string graph_text;
  std::string shortlist_text;
  std::string transcript_text;
  std::string conventions_text;
  std::string strategy_text;
  std::string partner_knowledge_text;
};

Observation BuildObservation(const GameState& state, int actor, const ObservationOptions& options);

std::string RenderTranscript(const PlayerView& view, std::span<const Event> history, TranscriptMode mode);
std::string RenderPartnerKnowledge(const PlayerView& view);

// Deterministic template. Sections appear in a fixed order and are omitted
// when their text is empty.
std::string BuildPrompt(const Observation& obs);
std::string SystemPrompt();
// Appended to the prompt on the single gated re-prompt.
inline constexpr std::string_view kGatedRetryNote =
    "Your previous answer was not one of the numbered options. Select one of the numbered options.";

enum class ParseStatus : std::uint8_t { kOk = 0, kUnparseable, kIllegal, kOutsideShortlist };
std::string_view ToString(ParseStatus s);

struct ParseResult {
  ParseStatus status = ParseStatus::kUnparseable;
  std::optional<Action> action;  // set for kOk and kOutsideShortlist
  std::string matched;           // the phrase the grammar accepted
};

// Grammar (case-insensitive, last "I will ..." phrase wins):
//   option N | play card N | discard card N | hint <player> <color|rank>
//   | play <color> | wait
// Gated replies naming a legal action outside the shortlist return
// kOutsideShortlist.
ParseResult ParseAction(std::string_view reply, const Observation& obs);

// Shortlist entry closest to `action`: same kind and slot/target first, then
// same kind, then entry 1.
Action NearestShortlistEntry(const Shortlist& shortlist, const Action& action);

inline constexpr std::array<std::string_view, 6> kHedgingTerms = {
    "might", "may", "possibly", "perhaps", "not sure", "uncertain"};
int CountHedging(std::string_view text);

struct AgentReply {
  std::string raw_text;
  std::optional<Action> parsed_action;
  int hedging_markers = 0;
  int retries = 0;
  bool transport_failed = false;
  std::string transport_error;
  double latency_ms = 0.0;
  std::string request_json;   // remote agents only
  std::string response_json;
};

class Agent {
 public:
  virtual ~Agent() = default;
  virtual std::string Name() const = 0;
  virtual bool Deterministic() const = 0;
  // Produces raw text for `prompt`; parsing happens in the caller.
  virtual AgentReply Respond(const Observation& obs, const std::string& prompt) = 0;
};

enum class OracleKind : std::uint8_t { kCompliant = 0, kDefiantHeuristic, kGraphTruster };
std::string_view ToString(OracleKind k);  // "compliant", "defiant-heuristic", "graph-truster"
std::optional<OracleKind> ParseOracleKind(std::string_view text);

std::unique_ptr<Agent> MakeScriptedOracle(OracleKind kind);

}  // namespace hanabi_lab

#endif  // HANABI_LAB_AGENTS_H_
