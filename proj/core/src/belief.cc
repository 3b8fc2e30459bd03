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

#include "hanabi_lab/belief.h"

#include <algorithm>
#include <functional>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "hanabi_lab/game_io.h"

namespace hanabi_lab {
namespace {

bool PlayableId(const std::array<int, kMaxColors>& stacks, int id) {
  const Card c = Card::FromIndex(id);
  return stacks[static_cast<int>(c.color)] + 1 == c.rank;
}

bool Normalize(CardBelief& b) {
  const double total = std::accumulate(b.p.begin(), b.p.end(), 0.0);
  if (total <= 0.0) return false;
  for (double& x : b.p) x /= total;
  return true;
}

CardBelief Condition(const CardBelief& b, std::span<const Card> support) {
  CardBelief out;
  for (Card c : support) out.p[c.Index()] = b.p[c.Index()];
  if (!Normalize(out)) return b;
  return out;
}

std::string Pct(double x) { return fmt::format("{:.1f}%", 100.0 * x); }

std::string Capitalized(std::string_view s) {
  std::string out(s);
  if (!out.empty()) out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  return out;
}

std::string TopCandidates(const CardBelief& b, int limit) {
  std::vector<int> ids;
  for (int i = 0; i < kNumIdentities; ++i) {
    if (b.p[i] > 0.0) ids.push_back(i);
  }
  std::stable_sort(ids.begin(), ids.end(), [&](int a, int c) { return b.p[a] > b.p[c]; });
  std::string out;
  const int shown = std::min<int>(limit, static_cast<int>(ids.size()));
  for (int i = 0; i < shown; ++i) {
    if (i > 0) out += ", ";
    out += ToString(Card::FromIndex(ids[i])) + " " + Pct(b.p[ids[i]]);
  }
  if (static_cast<int>(ids.size()) > shown) {
    out += fmt::format(" (+{} more)", ids.size() - shown);
  }
  return out;
}

std::optional<HintReading> MakeReading(const PlayerView& view, const std::vector<CardBelief>& own,
                                       bool finesse_flag,
                                       const std::optional<FinessePattern>& finesse) {
  const HintRecord* hint = ActiveHintTo(view, view.perspective);
  if (hint == nullptr || hint->touched.empty()) return std::nullopt;
  HintReading r;
  r.hinter = hint->hinter;
  r.hint_event = hint->event_index;
  r.focus_slot = *std::min_element(hint->touched.begin(), hint->touched.end());
  if (finesse_flag) {
    r.kind = ReadingKind::kDelayedPlay;
    if (finesse && finesse->hint_event == hint->event_index) {
      r.focus_slot = finesse->deferred_slot;
      r.intended = {finesse->deferred};
      r.bridge = finesse->bridge;
      return r;
    }
    if (hint->kind != HintKind::kColor) return std::nullopt;
    const int top = view.stacks[hint->value];
    if (top + 2 > kNumRanks) return std::nullopt;
    r.intended = {Card{static_cast<Color>(hint->value), top + 2}};
    r.bridge = Card{static_cast<Color>(hint->value), top + 1};
    return r;
  }
  r.kind = ReadingKind::kPlayNow;
  const CardBelief& focus = own.at(r.focus_slot);
  for (int id = 0; id < kNumIdentities; ++id) {
    if (focus.p[id] > 0.0 && PlayableId(view.stacks, id)) r.intended.push_back(Card::FromIndex(id));
  }
  if (r.intended.empty()) return std::nullopt;
  return r;
}

std::optional<int> MostRecentlyTouched(const std::vector<SlotView>& hand) {
  std::optional<int> best;
  int best_event = -1;
  for (int i = 0; i < static_cast<int>(hand.size()); ++i) {
    for (const HintMark& m : hand[i].marks) {
      if (m.touched && m.event_index > best_event) {
        best_event = m.event_index;
        best = i;
      }
    }
  }
  return best;
}

// Everything downstream of L0/L1 and the finesse flag.
void DeriveFromFlag(BeliefGraph& g) {
  const PlayerView& v = g.view;
  const int me = v.perspective;
  g.meta_edges.clear();
  std::optional<HintReading> reading;
  if (g.depth == BeliefDepth::kL0L1L2) {
    reading = MakeReading(v, g.own, g.finesse_flag, g.finesse);
    const HintRecord* latest = nullptr;
    for (const HintRecord& h : v.hint_log) {
      if (h.target == me) latest = &h;
    }
    if (latest != nullptr) {
      MetaEdge m;
      m.agent = reading ? reading->hinter : latest->hinter;
      m.slots = HandBeliefs(SharedUnseenCounts(v, m.agent), HandKnowledge(v, me));
      if (reading) m.slots[reading->focus_slot] = Condition(m.slots[reading->focus_slot], reading->intended);
      m.reading = reading;
      g.meta_edges.push_back(std::move(m));
    }
  }

  g.effective = g.own;
  if (reading) {
    g.effective[reading->focus_slot] = Condition(g.effective[reading->focus_slot], reading->intended);
  }
  g.p_playable.clear();
  g.verdicts.clear();
  for (const CardBelief& b : g.effective) {
    const double p = b.PlayableMass(v.stacks);
    g.p_playable.push_back(p);
    if (p >= 1.0 - kVerdictTolerance) {
      g.verdicts.push_back(Verdict::kPlayable);
    } else if (p <= kVerdictTolerance) {
      g.verdicts.push_back(Verdict::kNotPlayable);
    } else {
      g.verdicts.push_back(Verdict::kUncertain);
    }
  }
  g.focal_slot = reading ? std::optional<int>(reading->focus_slot) : MostRecentlyTouched(v.hands[me]);
  g.focal_inverted = false;
}

std::string VerdictLine(const BeliefGraph& g, int slot) {
  const int n = slot + 1;
  const SlotKnowledge k = KnowledgeOf(g.view.hands[g.perspective()][slot]);
  switch (g.verdicts[slot]) {
    case Verdict::kPlayable: {
      auto color = k.KnownColor();
      const std::string what = color ? Capitalized(ColorName(*color)) + " card" : "This card";
      return fmt::format("Verdict card {}: {} is immediately playable.", n, what);
    }
    case Verdict::kNotPlayable: {
      const MetaEdge* m = g.ActiveMetaEdge();
      if (g.finesse_flag && g.focal_slot == slot && m && m->reading && m->reading->bridge) {
        return fmt::format("Verdict card {}: Do not play card {}: it waits for {} to play {}.", n, n,
                           PlayerName(m->reading->hinter), ToString(*m->reading->bridge));
      }
      return fmt::format("Verdict card {}: not playable now.", n);
    }
    case Verdict::kUncertain:
      break;
  }
  return fmt::format("Verdict card {}: uncertain, playable with probability {}.", n,
                     Pct(g.p_playable[slot]));
}

}  // namespace

std::string_view ToString(BeliefDepth depth) {
  switch (depth) {
    case BeliefDepth::kNone: return "none";
    case BeliefDepth::kL0: return "L0";
    case BeliefDepth::kL0L1: return "L0L1";
    case BeliefDepth::kL0L1L2: return "L0L1L2";
  }
  return "?";
}

std::optional<BeliefDepth> ParseBeliefDepth(std::string_view text) {
  for (auto d : {BeliefDepth::kNone, BeliefDepth::kL0, BeliefDepth::kL0L1, BeliefDepth::kL0L1L2}) {
    std::string a(ToString(d));
    std::string b(text);
    std::transform(a.begin(), a.end(), a.begin(), ::tolower);
    std::transform(b.begin(), b.end(), b.begin(), ::tolower);
    if (a == b) return d;
  }
  return std::nullopt;
}

std::string_view ToString(AblationCondition c) {
  switch (c) {
    case AblationCondition::kFullGraph: return "full_graph";
    case AblationCondition::kBeliefRemoved: return "belief_removed";
    case AblationCondition::kGraphFrozen: return "graph_frozen";
    case AblationCondition::kBeliefCorrupted: return "belief_corrupted";
    case AblationCondition::kMisleading: return "misleading";
  }
  return "?";
}

std::optional<AblationCondition> ParseAblation(std::string_view text) {
  for (auto c : {AblationCondition::kFullGraph, AblationCondition::kBeliefRemoved,
                 AblationCondition::kGraphFrozen, AblationCondition::kBeliefCorrupted,
                 AblationCondition::kMisleading}) {
    if (ToString(c) == text) return c;
  }
  if (text == "full") return AblationCondition::kFullGraph;
  if (text == "removed") return AblationCondition::kBeliefRemoved;
  if (text == "frozen") return AblationCondition::kGraphFrozen;
  if (text == "corrupted") return AblationCondition::kBeliefCorrupted;
  return std::nullopt;
}

std::string_view ToString(Verdict v) {
  switch (v) {
    case Verdict::kPlayable: return "playable";
    case Verdict::kNotPlayable: return "not_playable";
    case Verdict::kUncertain: return "uncertain";
  }
  return "?";
}

double CardBelief::PlayableMass(const std::array<int, kMaxColors>& stacks) const {
  double total = 0.0;
  for (int id = 0; id < kNumIdentities; ++id) {
    if (PlayableId(stacks, id)) total += p[id];
  }
  return total;
}

std::vector<CardBelief> HandBeliefs(const IdentityCounts& counts,
                                    std::span<const SlotKnowledge> knowledge) {
  const int h = static_cast<int>(knowledge.size());
  std::vector<CardBelief> out(knowledge.size());
  // Identities admitted by the same set of slots are interchangeable, so the
  // joint deal is enumerated over those groups rather than over identities.
  std::array<int, kNumIdentities> group_of;
  group_of.fill(-1);
  std::vector<unsigned> group_mask;
  std::vector<double> group_total;
  for (int id = 0; id < kNumIdentities; ++id) {
    if (counts[id] <= 0) continue;
    unsigned mask = 0;
    for (int s = 0; s < h; ++s) {
      if (knowledge[s].Allows(Card::FromIndex(id))) mask |= 1u << s;
    }
    if (mask == 0) continue;
    auto it = std::find(group_mask.begin(), group_mask.end(), mask);
    const int g = static_cast<int>(it - group_mask.begin());
    if (it == group_mask.end()) {
      group_mask.push_back(mask);
      group_total.push_back(0.0);
    }
    group_of[id] = g;
    group_total[g] += counts[id];
  }
  const int groups = static_cast<int>(group_mask.size());
  std::vector<double> left = group_total;
  // Ordered ways to fill slots i.. (skipping `skip`) from the remaining copies.
  std::function<double(int, int)> fill = [&](int i, int skip) -> double {
    if (i == h) return 1.0;
    if (i == skip) return fill(i + 1, skip);
    double ways = 0.0;
    for (int g = 0; g < groups; ++g) {
      if (!(group_mask[g] >> i & 1) || left[g] <= 0.0) continue;
      const double n = left[g];
      left[g] -= 1.0;
      ways += n * fill(i + 1, skip);
      left[g] += 1.0;
    }
    return ways;
  };

  for (int s = 0; s < h; ++s) {
    std::vector<double> rest(groups, 0.0);
    double total = 0.0;
    for (int g = 0; g < groups; ++g) {
      if (!(group_mask[g] >> s & 1)) continue;
      left[g] -= 1.0;
      rest[g] = fill(0, s);
      left[g] += 1.0;
      total += group_total[g] * rest[g];
    }
    if (total > 0.0) {
      for (int id = 0; id < kNumIdentities; ++id) {
        const int g = group_of[id];
        out[s].p[id] = g >= 0 && (group_mask[g] >> s & 1) ? counts[id] * rest[g] / total : 0.0;
      }
      continue;
    }
    // No joint deal is consistent with every slot: fall back to this slot alone.
    for (int id = 0; id < kNumIdentities; ++id) {
      out[s].p[id] = knowledge[s].Allows(Card::FromIndex(id)) ? std::max(0, counts[id]) : 0.0;
    }
    if (!Normalize(out[s])) {
      throw std::logic_error("slot " + std::to_string(s) + " has no admissible identity");
    }
  }
  return out;
}

std::vector<SlotKnowledge> HandKnowledge(const PlayerView& view, int player) {
  std::vector<SlotKnowledge> out;
  for (const SlotView& s : view.hands.at(player)) out.push_back(KnowledgeOf(s));
  return out;
}

const MetaEdge* BeliefGraph::ActiveMetaEdge() const {
  if (meta_edges.empty()) return nullptr;
  return &meta_edges.front();
}

BeliefGraph BuildGraph(const PlayerView& view, BeliefDepth depth) {
  if (depth == BeliefDepth::kNone) throw std::invalid_argument("BuildGraph: depth none");
  BeliefGraph g;
  g.view = view;
  g.depth = depth;
  const int me = view.perspective;
  g.own = HandBeliefs(UnseenCounts(view), HandKnowledge(view, me));
  if (depth >= BeliefDepth::kL0L1) {
    for (int k = 1; k < view.num_players; ++k) {
      const int other = (me + k) % view.num_players;
      g.edges.push_back(
          BeliefEdge{other, HandBeliefs(SharedUnseenCounts(view, other), HandKnowledge(view, other))});
    }
  }
  if (depth == BeliefDepth::kL0L1L2) {
    g.finesse = DetectFinesse(view);
    g.finesse_flag = g.finesse.has_value();
  }
  DeriveFromFlag(g);
  return g;
}

BeliefGraph BuildGraph(const GameState& state, int perspective, BeliefDepth depth) {
  return BuildGraph(ObserveState(state, perspective), depth);
}

BeliefGraph UpdateOnEvent(const BeliefGraph& graph, const Event& event) {
  PlayerView v = graph.view;
  ApplyEvent(v, event);
  BeliefGraph next = BuildGraph(v, graph.depth);
  if (graph.ablation == AblationCondition::kFullGraph) return next;
  if (auto ablated = ApplyAblation(next, graph.ablation)) return *ablated;
  throw std::invalid_argument("UpdateOnEvent: removed graph");
}

std::optional<BeliefGraph> ApplyAblation(const BeliefGraph& graph, AblationCondition condition) {
  switch (condition) {
    case AblationCondition::kFullGraph:
      return graph;
    case AblationCondition::kBeliefRemoved:
      return std::nullopt;
    case AblationCondition::kGraphFrozen: {
      if (graph.view.hint_log.empty()) {
        BeliefGraph g = graph;
        g.ablation = condition;
        return g;
      }
      BeliefGraph g =
          BuildGraph(WithoutHintEvent(graph.view, graph.view.hint_log.back().event_index), graph.depth);
      g.ablation = condition;
      return g;
    }
    case AblationCondition::kBeliefCorrupted: {
      BeliefGraph g = graph;
      g.ablation = condition;
      if (g.focal_slot) {
        Verdict& v = g.verdicts[*g.focal_slot];
        v = v == Verdict::kPlayable ? Verdict::kNotPlayable : Verdict::kPlayable;
        g.focal_inverted = true;
      }
      return g;
    }
    case AblationCondition::kMisleading: {
      BeliefGraph g = graph;
      g.ablation = condition;
      g.finesse_flag = !g.finesse_flag;
      DeriveFromFlag(g);
      return g;
    }
  }
  throw std::invalid_argument("unknown ablation");
}

std::string RenderText(const BeliefGraph& g) {
  const PlayerView& v = g.view;
  const int me = v.perspective;
  const std::string me_name(PlayerName(me));
  std::ostringstream out;
  out << "Belief graph (" << kRenderFormat << ") for " << me_name << ", depth "
      << ToString(g.depth) << ".\n";
  out << "Stacks:";
  for (int c = 0; c < v.rules.num_colors; ++c) {
    out << ' ' << ColorChar(static_cast<Color>(c)) << v.stacks[c];
  }
  out << ". Hints " << v.hints << ", bombs " << v.bombs << ", deck " << v.deck_size << ".\n";

  if (!v.hint_log.empty()) {
    out << "Hints so far:";
    for (const HintRecord& h : v.hint_log) {
      out << " turn " << h.event_index << " " << PlayerName(h.hinter) << " to "
          << PlayerName(h.target) << " \""
          << (h.kind == HintKind::kColor ? std::string(ColorName(static_cast<Color>(h.value)))
                                         : std::to_string(h.value))
          << "\" (" << h.touched.size() << (h.touched.size() == 1 ? " card" : " cards") << ")"
          << (&h == &v.hint_log.back() ? ".\n" : ";");
    }
  }
  out << "\nL0: " << me_name << "'s beliefs about own cards\n";
  const auto& hand = v.hands[me];
  for (int s = 0; s < static_cast<int>(hand.size()); ++s) {
    const std::string k = DescribeKnowledge(KnowledgeOf(hand[s]), v.rules);
    out << "  Card " << s + 1 << " {" << (k.empty() ? "no hints" : k) << "}: "
        << TopCandidates(g.effective[s], 6) << "; playable " << Pct(g.p_playable[s]) << ".\n";
  }
  out << "Verdicts:\n";
  for (int s = 0; s < static_cast<int>(hand.size()); ++s) out << "  " << VerdictLine(g, s) << "\n";

  for (const BeliefEdge& e : g.edges) {
    const std::string name(PlayerName(e.agent));
    out << "\nL1: " << me_name << "'s model of " << name << "'s beliefs\n";
    for (int s = 0; s < static_cast<int>(e.slots.size()); ++s) {
      const SlotView& sv = v.hands[e.agent][s];
      const std::string k = DescribeKnowledge(KnowledgeOf(sv), v.rules);
      out << "  " << name << " card " << s + 1 << " is " << ToString(*sv.card) << " {"
          << (k.empty() ? "no hints" : k) << "}; " << name << " thinks playable "
          << Pct(e.slots[s].PlayableMass(v.stacks)) << ", top " << TopCandidates(e.slots[s], 3)
          << ".\n";
    }
  }

  if (g.depth == BeliefDepth::kL0L1L2) {
    const MetaEdge* m = g.ActiveMetaEdge();
    if (m == nullptr) {
      out << "\nL2: no hint received yet.\n";
    } else {
      const std::string hinter(PlayerName(m->agent));
      out << "\nL2: " << me_name << "'s model of " << hinter << "'s model of " << me_name << "\n";
      if (m->reading) {
        const HintReading& r = *m->reading;
        const auto it = std::find_if(v.hint_log.begin(), v.hint_log.end(),
                                     [&](const HintRecord& h) { return h.event_index == r.hint_event; });
        std::string value = it->kind == HintKind::kColor
                                ? std::string(ColorName(static_cast<Color>(it->value)))
                                : std::to_string(it->value);
        std::string cards;
        for (int t : it->touched) cards += (cards.empty() ? "" : ", ") + std::to_string(t + 1);
        out << "  Latest hint: " << hinter << " told " << me_name << " \"" << value
            << "\" at turn " << r.hint_event << ", touching card " << cards << ".\n";
        std::string intended;
        for (Card c : r.intended) intended += (intended.empty() ? "" : " or ") + ToString(c);
        if (r.kind == ReadingKind::kDelayedPlay) {
          out << "  Intended reading: delayed play. Card " << r.focus_slot + 1 << " is " << intended
              << ", playable only after " << hinter << " plays " << ToString(*r.bridge) << ".\n";
        } else {
          out << "  Intended reading: play now. Card " << r.focus_slot + 1 << " is " << intended
              << ".\n";
        }
      } else {
        out << "  No active hint reading; " << hinter << " gave the latest hint before "
            << me_name << "'s last action.\n";
      }
      for (int s = 0; s < static_cast<int>(m->slots.size()); ++s) {
        out << "  " << hinter << " expects " << me_name << " to read card " << s + 1 << " as "
            << TopCandidates(m->slots[s], 3) << "; playable "
            << Pct(m->slots[s].PlayableMass(v.stacks)) << ".\n";
      }
    }
    out << "\nFinesse: ";
    const MetaEdge* am = g.ActiveMetaEdge();
    if (!g.finesse_flag) {
      out << "No finesse active.\n";
    } else if (am && am->reading && am->reading->bridge) {
      const HintReading& r = *am->reading;
      out << "active. " << PlayerName(r.hinter) << " holds the bridge card "
          << ToString(*r.bridge) << "; card " << r.focus_slot + 1 << " waits until "
          << ToString(*r.bridge) << " is played.\n";
    } else {
      out << "active, but no matching hint.\n";
    }
  }
  return out.str();
}

int EstimateTokens(std::string_view text) {
  return static_cast<int>((text.size() + 3) / 4);
}

}  // namespace hanabi_lab
