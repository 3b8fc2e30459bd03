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

#include "hanabi_lab/agents.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <regex>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "hanabi_lab/game_io.h"

namespace hanabi_lab {
namespace {

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string HintValueText(HintKind kind, int value) {
  return kind == HintKind::kColor ? std::string(ColorName(static_cast<Color>(value)))
                                  : std::to_string(value);
}

std::string EventLine(const PlayerView& view, const Event& e) {
  const std::string who(PlayerName(e.actor));
  switch (e.action.kind) {
    case ActionKind::kPlay:
      return fmt::format("Turn {}: {} played {} from card {} ({})", e.index, who,
                         ToString(*e.revealed), e.action.slot + 1, e.success ? "success" : "bomb");
    case ActionKind::kDiscard:
      return fmt::format("Turn {}: {} discarded {} from card {}", e.index, who,
                         ToString(*e.revealed), e.action.slot + 1);
    case ActionKind::kHint: {
      std::string cards;
      for (int t : e.touched) cards += (cards.empty() ? "" : ", ") + std::to_string(t + 1);
      const std::string target =
          e.action.target == view.perspective ? "you" : std::string(PlayerName(e.action.target));
      return fmt::format("Turn {}: {} told {} \"{}\" (card {})", e.index, who, target,
                         HintValueText(e.action.hint_kind, e.action.hint_value), cards);
    }
  }
  return "";
}

// Own slots ordered by their latest positive hint, newest first.
std::vector<int> HintedSlotsNewestFirst(const PlayerView& view) {
  std::vector<std::pair<int, int>> order;
  const auto& hand = view.hands[view.perspective];
  for (int s = 0; s < static_cast<int>(hand.size()); ++s) {
    int latest = -1;
    for (const HintMark& m : hand[s].marks) {
      if (m.touched) latest = std::max(latest, m.event_index);
    }
    if (latest >= 0) order.emplace_back(-latest, s);
  }
  std::sort(order.begin(), order.end());
  std::vector<int> out;
  for (auto [neg, s] : order) out.push_back(s);
  return out;
}

const HintRecord* LatestHintTouching(const PlayerView& view, int slot) {
  const auto& marks = view.hands[view.perspective][slot].marks;
  int latest = -1;
  for (const HintMark& m : marks) {
    if (m.touched) latest = std::max(latest, m.event_index);
  }
  for (const HintRecord& h : view.hint_log) {
    if (h.event_index == latest) return &h;
  }
  return nullptr;
}

std::optional<int> HintedPlaySlot(const PlayerView& view) {
  const IdentityCounts unseen = UnseenCounts(view);
  for (int s : HintedSlotsNewestFirst(view)) {
    const SlotKnowledge k = KnowledgeOf(view.hands[view.perspective][s]);
    for (int id = 0; id < kNumIdentities; ++id) {
      const Card c = Card::FromIndex(id);
      if (unseen[id] > 0 && k.Allows(c) && view.stacks[static_cast<int>(c.color)] + 1 == c.rank) {
        return s;
      }
    }
  }
  return std::nullopt;
}

std::string PlanText(const Observation& obs) {
  const BeliefGraph g = obs.graph ? *obs.graph : BuildGraph(obs.view, BeliefDepth::kL0L1);
  const ScoredAction top = MakeShortlist(g).entries.front();
  return fmt::format("Best expected value: {}. I will {}.", top.rationale, ToString(top.action));
}

std::optional<Action> OptionEntry(const Observation& obs, int n) {
  if (!obs.shortlist || n < 1 || n > static_cast<int>(obs.shortlist->entries.size())) {
    return std::nullopt;
  }
  return obs.shortlist->entries[n - 1].action;
}

std::optional<Action> WaitAction(const Observation& obs) {
  if (obs.shortlist) {
    for (const ScoredAction& e : obs.shortlist->entries) {
      if (e.action.kind != ActionKind::kPlay) return e.action;
    }
  }
  for (ActionKind kind : {ActionKind::kHint, ActionKind::kDiscard}) {
    for (const Action& a : obs.legal) {
      if (a.kind == kind) return a;
    }
  }
  return std::nullopt;
}

std::optional<int> ParseNumber(const std::string& tok) {
  if (tok.empty() || tok.size() > 2 || !std::all_of(tok.begin(), tok.end(), ::isdigit)) {
    return std::nullopt;
  }
  return std::stoi(tok);
}

std::optional<int> ParsePlayer(const std::string& tok, int num_players) {
  for (int p = 0; p < num_players; ++p) {
    if (tok == Lower(PlayerName(p))) return p;
  }
  return std::nullopt;
}

std::optional<Action> ParsePhrase(const std::vector<std::string>& t, const Observation& obs) {
  if (t.empty()) return std::nullopt;
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    if (t[i] == "option") {
      if (auto n = ParseNumber(t[i + 1])) return OptionEntry(obs, *n);
      return std::nullopt;
    }
  }
  const std::string& verb = t[0];
  if (verb == "wait" || verb == "hold") return WaitAction(obs);
  if (verb == "play" || verb == "discard") {
    std::size_t i = 1;
    if (i < t.size() && (t[i] == "card" || t[i] == "slot")) ++i;
    if (i >= t.size()) return std::nullopt;
    if (auto n = ParseNumber(t[i])) {
      return verb == "play" ? Action::Play(*n - 1) : Action::Discard(*n - 1);
    }
    if (verb == "play") {
      if (auto color = ParseColor(t[i])) {
        for (int s : HintedSlotsNewestFirst(obs.view)) {
          if (KnowledgeOf(obs.view.hands[obs.actor][s]).KnownColor() == *color) return Action::Play(s);
        }
      }
    }
    return std::nullopt;
  }
  if (verb == "hint" || verb == "clue" || verb == "tell" ||
      std::find(t.begin(), t.end(), "hint") != t.end()) {
    std::optional<int> target;
    std::optional<Action> value;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (!target) {
        if (auto p = ParsePlayer(t[i], obs.view.num_players)) {
          target = p;
          continue;
        }
      }
      if (!value) {
        if (auto n = ParseNumber(t[i]); n && *n >= 1 && *n <= kNumRanks) {
          value = Action::HintRank(-1, *n);
        } else if (auto c = ParseColor(t[i]); c && t[i].size() > 1) {
          value = Action::HintColor(-1, *c);
        }
      }
    }
    if (!target || !value) return std::nullopt;
    value->target = *target;
    return value;
  }
  return std::nullopt;
}

class ScriptedOracle : public Agent {
 public:
  explicit ScriptedOracle(OracleKind kind) : kind_(kind) {}
  std::string Name() const override { return "oracle:" + std::string(ToString(kind_)); }
  bool Deterministic() const override { return true; }

  AgentReply Respond(const Observation& obs, const std::string&) override {
    AgentReply r;
    switch (kind_) {
      case OracleKind::kCompliant:
        r.raw_text = obs.shortlist ? "Following the planner. I will choose Option 1." : PlanText(obs);
        break;
      case OracleKind::kDefiantHeuristic:
        r.raw_text = HintedPlay(obs).value_or(obs.shortlist ? "I will choose Option 1." : PlanText(obs));
        break;
      case OracleKind::kGraphTruster:
        r.raw_text = TrustVerdicts(obs);
        break;
    }
    r.hedging_markers = CountHedging(r.raw_text);
    return r;
  }

 private:
  static std::optional<std::string> HintedPlay(const Observation& obs) {
    const auto slot = HintedPlaySlot(obs.view);
    if (!slot) return std::nullopt;
    const HintRecord* h = LatestHintTouching(obs.view, *slot);
    return fmt::format(
        "{} hinted \"{}\" on my card {}, which is a direct play signal. It might not be certain, "
        "but I will play card {}.",
        PlayerName(h->hinter), HintValueText(h->kind, h->value), *slot + 1, *slot + 1);
  }

  static std::string TrustVerdicts(const Observation& obs) {
    static const std::regex kPlayable(R"(Verdict card (\d+): (\w+) card is immediately playable)");
    std::smatch m;
    if (std::regex_search(obs.graph_text, m, kPlayable)) {
      if (ParseColor(Lower(m[2].str()))) {
        return fmt::format("The graph says the {} card is immediately playable. I will play {}.",
                           Lower(m[2].str()), Lower(m[2].str()));
      }
      return fmt::format("The graph says card {} is immediately playable. I will play card {}.",
                         m[1].str(), m[1].str());
    }
    if (obs.shortlist) return "I will choose Option 1.";
    if (obs.graph) return PlanText(obs);
    return HintedPlay(obs).value_or(PlanText(obs));
  }

  OracleKind kind_;
};

}  // namespace

std::string_view ToString(Architecture a) {
  switch (a) {
    case Architecture::kPromptBased: return "prompt";
    case Architecture::kGated: return "gated";
    case Architecture::kInformed: return "informed";
  }
  return "?";
}

std::optional<Architecture> ParseArchitecture(std::string_view text) {
  for (auto a : {Architecture::kPromptBased, Architecture::kGated, Architecture::kInformed}) {
    if (ToString(a) == text) return a;
  }
  if (text == "prompt_based" || text == "prompt-based") return Architecture::kPromptBased;
  if (text == "hybrid") return Architecture::kInformed;
  return std::nullopt;
}

std::string_view ToString(TranscriptMode m) {
  switch (m) {
    case TranscriptMode::kOff: return "off";
    case TranscriptMode::kScattered: return "scattered";
    case TranscriptMode::kSummarized: return "summarized";
  }
  return "?";
}

std::optional<TranscriptMode> ParseTranscriptMode(std::string_view text) {
  for (auto m : {TranscriptMode::kOff, TranscriptMode::kScattered, TranscriptMode::kSummarized}) {
    if (ToString(m) == text) return m;
  }
  return std::nullopt;
}

std::string_view ToString(ParseStatus s) {
  switch (s) {
    case ParseStatus::kOk: return "ok";
    case ParseStatus::kUnparseable: return "unparseable";
    case ParseStatus::kIllegal: return "illegal";
    case ParseStatus::kOutsideShortlist: return "outside_shortlist";
  }
  return "?";
}

std::string_view ToString(OracleKind k) {
  switch (k) {
    case OracleKind::kCompliant: return "compliant";
    case OracleKind::kDefiantHeuristic: return "defiant-heuristic";
    case OracleKind::kGraphTruster: return "graph-truster";
  }
  return "?";
}

std::optional<OracleKind> ParseOracleKind(std::string_view text) {
  for (auto k : {OracleKind::kCompliant, OracleKind::kDefiantHeuristic, OracleKind::kGraphTruster}) {
    if (ToString(k) == text) return k;
  }
  if (text == "defiant") return OracleKind::kDefiantHeuristic;
  return std::nullopt;
}

std::string RenderTranscript(const PlayerView& view, std::span<const Event> history,
                             TranscriptMode mode) {
  std::string out;
  if (mode == TranscriptMode::kScattered) {
    const std::size_t from = history.size() > kTranscriptWindow ? history.size() - kTranscriptWindow : 0;
    for (std::size_t i = from; i < history.size(); ++i) out += EventLine(view, history[i]) + "\n";
    if (out.empty()) out = "No actions yet.\n";
  } else if (mode == TranscriptMode::kSummarized) {
    std::map<Card, int> gone;
    for (Card c : view.discards) ++gone[c];
    out += "Discard pile by color:\n";
    for (int c = 0; c < view.rules.num_colors; ++c) {
      out += fmt::format("  {}:", ColorName(static_cast<Color>(c)));
      bool any = false;
      for (int r = 1; r <= kNumRanks; ++r) {
        const Card card{static_cast<Color>(c), r};
        if (auto it = gone.find(card); it != gone.end()) {
          out += fmt::format(" {}x{}", r, it->second);
          any = true;
        }
      }
      out += any ? "\n" : " none\n";
    }
    std::string last;
    std::string dead;
    for (int c = 0; c < view.rules.num_colors; ++c) {
      for (int r = view.stacks[c] + 1; r <= kNumRanks; ++r) {
        const Card card{static_cast<Color>(c), r};
        const int left = view.rules.Copies(card) - gone[card];
        if (left == 1) last += " " + ToString(card);
        if (left == 0) dead += " " + ToString(card);
      }
    }
    out += "Last remaining copy:" + (last.empty() ? std::string(" none") : last) + "\n";
    out += "All copies discarded:" + (dead.empty() ? std::string(" none") : dead) + "\n";
  }
  return out;
}

std::string RenderPartnerKnowledge(const PlayerView& view) {
  std::string out;
  for (int k = 1; k < view.num_players; ++k) {
    const int p = (view.perspective + k) % view.num_players;
    out += fmt::format("{} knows about own cards:", PlayerName(p));
    const auto& hand = view.hands[p];
    for (std::size_t s = 0; s < hand.size(); ++s) {
      const std::string d = DescribeKnowledge(KnowledgeOf(hand[s]), view.rules);
      out += fmt::format("{} card {} {{{}}}", s ? "," : "", s + 1, d.empty() ? "nothing" : d);
    }
    out += "\n";
  }
  return out;
}

Observation BuildObservation(const GameState& state, int actor, const ObservationOptions& o) {
  if (o.variant != ShortlistVariant::kV0 && o.architecture == Architecture::kPromptBased) {
    throw std::invalid_argument("shortlist variant requires a shortlist architecture");
  }
  Observation obs;
  obs.actor = actor;
  obs.architecture = o.architecture;
  obs.view = ObserveState(state, actor);
  obs.legal = LegalActions(state, actor);
  obs.board_text = RenderState(state, actor);
  if (o.depth != BeliefDepth::kNone) {
    obs.graph = ApplyAblation(BuildGraph(obs.view, o.depth), o.ablation);
  }
  if (obs.graph) obs.graph_text = RenderText(*obs.graph);
  if (o.architecture != Architecture::kPromptBased) {
    if (o.random_shortlist) {
      obs.shortlist = RandomShortlist(obs.view, o.control_seed);
    } else {
      obs.shortlist = MakeShortlist(obs.graph ? *obs.graph : BuildGraph(obs.view, BeliefDepth::kL0L1));
    }
    obs.shortlist_text = RenderShortlist(*obs.shortlist, o.variant);
  }
  obs.transcript_text = RenderTranscript(obs.view, state.history, o.transcript);
  obs.conventions_text = o.conventions_text;
  obs.strategy_text = o.strategy_text;
  if (o.partner_knowledge) obs.partner_knowledge_text = RenderPartnerKnowledge(obs.view);
  return obs;
}

std::string SystemPrompt() {
  return "You are an expert Hanabi player cooperating with your partners to reach the highest "
         "score. Answer with a short explanation and finish with one line that starts with "
         "\"I will\".";
}

std::string BuildPrompt(const Observation& obs) {
  std::ostringstream out;
  out << "You are " << PlayerName(obs.actor) << ". Rules: play cards in rank order 1 to 5 onto "
      << "their color stack; a wrong play costs a bomb and three bombs end the game. A hint "
      << "costs a hint token and names every card of one color or rank in a partner's hand. "
      << "Discarding regains a hint token. You cannot see your own cards.\n";
  auto block = [&](std::string_view title, const std::string& text) {
    if (text.empty()) return;
    out << "\n== " << title << " ==\n" << text;
    if (text.back() != '\n') out << '\n';
  };
  block("Board", obs.board_text);
  block("Recent history", obs.transcript_text);
  block("Belief graph", obs.graph_text);
  block("Conventions", obs.conventions_text);
  block("Strategy", obs.strategy_text);
  block("Partner knowledge", obs.partner_knowledge_text);
  block("Planner shortlist", obs.shortlist_text);
  out << "\n";
  switch (obs.architecture) {
    case Architecture::kGated:
      out << "You must select one of the numbered options. Answer \"I will choose Option N\".\n";
      break;
    case Architecture::kInformed:
      out << "The shortlist is advice; you may choose any legal action. Answer \"I will choose "
             "Option N\" or name the action.\n";
      break;
    case Architecture::kPromptBased:
      out << "Choose any legal action.\n";
      break;
  }
  out << "End with one line: \"I will play card N\", \"I will discard card N\", or \"I will hint "
         "<player> <color or rank>\".\n";
  return out.str();
}

int CountHedging(std::string_view text) {
  const std::string low = Lower(text);
  int n = 0;
  for (std::string_view term : kHedgingTerms) {
    std::size_t pos = 0;
    while ((pos = low.find(term, pos)) != std::string::npos) {
      const bool left = pos == 0 || !std::isalpha(static_cast<unsigned char>(low[pos - 1]));
      const std::size_t end = pos + term.size();
      const bool right = end >= low.size() || !std::isalpha(static_cast<unsigned char>(low[end]));
      if (left && right) ++n;
      pos = end;
    }
  }
  return n;
}

ParseResult ParseAction(std::string_view reply, const Observation& obs) {
  ParseResult result;
  const std::string low = Lower(reply);
  const std::size_t at = low.rfind("i will");
  std::string phrase;
  if (at != std::string::npos) {
    phrase = low.substr(at + 6);
    const std::size_t stop = phrase.find_first_of(".!\n;");
    if (stop != std::string::npos) phrase.resize(stop);
  } else {
    static const std::regex kOption(R"(option\s+(\d+))");
    std::smatch m;
    std::string last;
    for (auto it = std::sregex_iterator(low.begin(), low.end(), kOption); it != std::sregex_iterator();
         ++it) {
      last = it->str();
    }
    if (last.empty()) return result;
    phrase = last;
  }
  for (char& c : phrase) {
    if (!std::isalnum(static_cast<unsigned char>(c))) c = ' ';
  }
  std::istringstream tokens(phrase);
  std::vector<std::string> t;
  for (std::string w; tokens >> w;) {
    if (w == "choose" || w == "select" || w == "pick" || w == "go" || w == "with" || w == "the" ||
        w == "a" || w == "my" || w == "now" || w == "give") {
      continue;
    }
    t.push_back(w);
  }
  result.matched = phrase;
  auto action = ParsePhrase(t, obs);
  if (!action) return result;
  result.action = action;
  if (std::find(obs.legal.begin(), obs.legal.end(), *action) == obs.legal.end()) {
    result.status = ParseStatus::kIllegal;
    result.action.reset();
    return result;
  }
  result.status = ParseStatus::kOk;
  if (obs.architecture == Architecture::kGated && obs.shortlist) {
    const auto& e = obs.shortlist->entries;
    if (std::none_of(e.begin(), e.end(), [&](const ScoredAction& s) { return s.action == *action; })) {
      result.status = ParseStatus::kOutsideShortlist;
    }
  }
  return result;
}

Action NearestShortlistEntry(const Shortlist& sl, const Action& a) {
  for (const ScoredAction& e : sl.entries) {
    if (e.action.kind == a.kind && e.action.slot == a.slot && e.action.target == a.target) return e.action;
  }
  for (const ScoredAction& e : sl.entries) {
    if (e.action.kind == a.kind) return e.action;
  }
  return sl.entries.at(0).action;
}

std::unique_ptr<Agent> MakeScriptedOracle(OracleKind kind) {
  return std::make_unique<ScriptedOracle>(kind);
}

}  // namespace hanabi_lab
