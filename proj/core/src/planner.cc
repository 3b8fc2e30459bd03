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

#include "hanabi_lab/planner.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <tuple>

#include <fmt/format.h>

#include "hanabi_lab/rng.h"

namespace hanabi_lab {
namespace {

double BinaryEntropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -(p * std::log2(p) + (1.0 - p) * std::log2(1.0 - p));
}

int ClassOrder(ActionKind k) {
  switch (k) {
    case ActionKind::kHint: return 0;
    case ActionKind::kDiscard: return 1;
    case ActionKind::kPlay: return 2;
  }
  return 3;
}

bool IsCritical(const PlayerView& v, int id) {
  const Card c = Card::FromIndex(id);
  if (!v.rules.HasColor(c.color) || v.stacks[static_cast<int>(c.color)] >= c.rank) return false;
  const int gone = static_cast<int>(std::count(v.discards.begin(), v.discards.end(), c));
  return v.rules.Copies(c) - gone == 1;
}

std::string Signed(double x) {
  if (std::abs(x) < 0.005) x = 0.0;
  return fmt::format("{:+.2f}", x);
}

ScoredAction ScorePlay(const BeliefGraph& g, const Action& a, const RewardConstants& k) {
  double p = g.p_playable.at(a.slot);
  std::string why;
  if (g.focal_inverted && g.focal_slot == a.slot) {
    p = g.verdicts[a.slot] == Verdict::kPlayable ? 1.0 : 0.0;
    why = "asserted ";
  }
  double value = p * k.play_success + (1.0 - p) * k.bomb;
  if (g.view.bombs == g.view.rules.max_bombs - 1) value += (1.0 - p) * k.third_bomb;
  why += fmt::format("success chance {:.0f}%, bomb risk {:.0f}%", 100.0 * p, 100.0 * (1.0 - p));
  return ScoredAction{a, value, why};
}

ScoredAction ScoreDiscard(const BeliefGraph& g, const Action& a, const RewardConstants& k) {
  const CardBelief& b = g.effective.at(a.slot);
  double crit = 0.0;
  for (int id = 0; id < kNumIdentities; ++id) {
    if (b.p[id] > 0.0 && IsCritical(g.view, id)) crit += b.p[id];
  }
  const bool clued = KnowledgeOf(g.view.hands[g.perspective()].at(a.slot)).touched;
  const double value = k.discard + crit * k.critical_discard + (clued ? k.clued_discard : 0.0);
  return ScoredAction{a, value,
                      fmt::format("regains a hint; chance it is a last copy {:.0f}%{}", 100.0 * crit,
                                  clued ? "; throws away a hinted card" : "")};
}

ScoredAction ScoreHint(const BeliefGraph& g, const Action& a, const RewardConstants& k) {
  const PlayerView& v = g.view;
  const auto& hand = v.hands.at(a.target);
  const IdentityCounts counts = SharedUnseenCounts(v, a.target);
  std::vector<SlotKnowledge> before = HandKnowledge(v, a.target);
  std::vector<SlotKnowledge> after;
  std::optional<int> focus;
  for (int s = 0; s < static_cast<int>(hand.size()); ++s) {
    const bool touched = a.Touches(*hand[s].card);
    if (touched && !focus) focus = s;
    std::vector<HintMark> marks = hand[s].marks;
    marks.push_back(HintMark{v.next_event, a.hint_kind, a.hint_value, touched});
    after.push_back(FoldMarks(marks));
  }
  const auto pb = HandBeliefs(counts, before);
  const auto pa = HandBeliefs(counts, after);
  double gain = 0.0;
  int playable = 0;
  for (std::size_t s = 0; s < hand.size(); ++s) {
    const Card c = *hand[s].card;
    if (v.stacks[static_cast<int>(c.color)] + 1 != c.rank) continue;
    ++playable;
    gain += BinaryEntropy(pb[s].PlayableMass(v.stacks)) - BinaryEntropy(pa[s].PlayableMass(v.stacks));
  }
  bool misread = false;
  if (g.depth == BeliefDepth::kL0L1L2 && focus) {
    const Card c = *hand[*focus].card;
    misread = v.stacks[static_cast<int>(c.color)] + 1 != c.rank &&
              pa[*focus].PlayableMass(v.stacks) > kVerdictTolerance;
  }
  std::string why = fmt::format("clarifies {}'s playable cards by {:.2f} bits ({} playable)",
                                PlayerName(a.target), gain, playable);
  if (misread) why += fmt::format("; card {} would be read as playable", *focus + 1);
  return ScoredAction{a, gain + (misread ? k.misread_hint : 0.0), why};
}

}  // namespace

std::string_view ToString(ShortlistVariant v) {
  switch (v) {
    case ShortlistVariant::kV0: return "V0";
    case ShortlistVariant::kV1: return "V1";
    case ShortlistVariant::kV2: return "V2";
    case ShortlistVariant::kV3: return "V3";
  }
  return "?";
}

std::optional<ShortlistVariant> ParseShortlistVariant(std::string_view text) {
  for (auto v : {ShortlistVariant::kV0, ShortlistVariant::kV1, ShortlistVariant::kV2,
                 ShortlistVariant::kV3}) {
    if (ToString(v) == text || (text.size() == 2 && text[0] == 'v' && text[1] == ToString(v)[1])) {
      return v;
    }
  }
  return std::nullopt;
}

std::string Shortlist::Label(int i) const {
  const Action& a = entries.at(i).action;
  if (finesse_active && a.kind != ActionKind::kPlay) {
    for (int j = 0; j < static_cast<int>(entries.size()); ++j) {
      if (entries[j].action.kind != ActionKind::kPlay) {
        if (j == i) return "WAIT";
        break;
      }
    }
  }
  return std::string(KindLabel(a.kind));
}

std::vector<Action> LegalActions(const PlayerView& v) {
  std::vector<Action> out;
  const int me = v.perspective;
  const int n = static_cast<int>(v.hands[me].size());
  for (int i = 0; i < n; ++i) out.push_back(Action::Play(i));
  if (v.hints < v.rules.max_hints) {
    for (int i = 0; i < n; ++i) out.push_back(Action::Discard(i));
  }
  if (v.hints > 0) {
    for (int off = 1; off < v.num_players; ++off) {
      const int target = (me + off) % v.num_players;
      std::array<bool, kMaxColors> colors{};
      std::array<bool, kNumRanks + 1> ranks{};
      for (const SlotView& s : v.hands[target]) {
        colors[static_cast<int>(s.card->color)] = true;
        ranks[s.card->rank] = true;
      }
      for (int c = 0; c < kMaxColors; ++c) {
        if (colors[c]) out.push_back(Action::HintColor(target, static_cast<Color>(c)));
      }
      for (int r = 1; r <= kNumRanks; ++r) {
        if (ranks[r]) out.push_back(Action::HintRank(target, r));
      }
    }
  }
  return out;
}

ScoredAction ScoreAction(const BeliefGraph& g, const Action& a, const RewardConstants& k) {
  ScoredAction s;
  switch (a.kind) {
    case ActionKind::kPlay: s = ScorePlay(g, a, k); break;
    case ActionKind::kDiscard: s = ScoreDiscard(g, a, k); break;
    case ActionKind::kHint: s = ScoreHint(g, a, k); break;
  }
  if (g.finesse_flag && a.kind != ActionKind::kPlay) {
    s.value += k.finesse_deferral;
    s.rationale += "; keeps the finesse intact";
  }
  return s;
}

double ActionValue(const BeliefGraph& g, const Action& a, const RewardConstants& k) {
  return ScoreAction(g, a, k).value;
}

void RankActions(std::vector<ScoredAction>& actions, int actor, int num_players) {
  auto key = [&](const Action& a) {
    return std::make_tuple(ClassOrder(a.kind), a.slot, (a.target - actor + num_players) % num_players,
                           static_cast<int>(a.hint_kind), a.hint_value);
  };
  std::stable_sort(actions.begin(), actions.end(), [&](const ScoredAction& x, const ScoredAction& y) {
    if (x.value != y.value) return x.value > y.value;
    return key(x.action) < key(y.action);
  });
}

std::vector<ScoredAction> ScoreAll(const BeliefGraph& g, const RewardConstants& k) {
  std::vector<ScoredAction> out;
  for (const Action& a : LegalActions(g.view)) out.push_back(ScoreAction(g, a, k));
  RankActions(out, g.perspective(), g.view.num_players);
  return out;
}

Shortlist MakeShortlist(const BeliefGraph& g, int size, const RewardConstants& k) {
  std::vector<ScoredAction> all = ScoreAll(g, k);
  if (all.empty()) throw std::invalid_argument("MakeShortlist: no legal actions");
  Shortlist sl;
  sl.perspective = g.perspective();
  sl.finesse_active = g.finesse_flag;
  if (g.finesse_flag) sl.finesse = g.finesse;

  std::vector<bool> taken(all.size(), false);
  std::array<bool, 3> seen{};
  for (std::size_t i = 0; i < all.size() && static_cast<int>(sl.entries.size()) < size; ++i) {
    const int cls = ClassOrder(all[i].action.kind);
    if (seen[cls]) continue;
    seen[cls] = true;
    taken[i] = true;
    sl.entries.push_back(all[i]);
  }
  for (std::size_t i = 0; i < all.size() && static_cast<int>(sl.entries.size()) < size; ++i) {
    if (!taken[i]) sl.entries.push_back(all[i]);
  }
  RankActions(sl.entries, g.perspective(), g.view.num_players);
  return sl;
}

Shortlist RandomShortlist(const PlayerView& view, std::uint64_t seed, int size) {
  std::vector<Action> legal = LegalActions(view);
  if (legal.empty()) throw std::invalid_argument("RandomShortlist: no legal actions");
  std::mt19937_64 gen(seed);
  Shortlist sl;
  sl.perspective = view.perspective;
  sl.unscored = true;
  const int n = std::min<int>(size, static_cast<int>(legal.size()));
  for (int i = 0; i < n; ++i) {
    const auto j = i + static_cast<int>(UniformBelow(gen, legal.size() - i));
    std::swap(legal[i], legal[j]);
    sl.entries.push_back(ScoredAction{legal[i], 0.0, ""});
  }
  return sl;
}

std::optional<FinessePattern> DetectFinesse(const BeliefGraph& g) {
  return DetectFinesse(g.view);
}

std::string RenderShortlist(const Shortlist& sl, ShortlistVariant variant) {
  const int n = static_cast<int>(sl.entries.size());
  std::string out;
  if (sl.unscored) {
    out += fmt::format("Candidate actions for {} (unranked):\n[", PlayerName(sl.perspective));
    for (int i = 0; i < n; ++i) {
      out += fmt::format("{}{}. {}", i ? ", " : "", i + 1, KindLabel(sl.entries[i].action.kind));
    }
    out += "]\n";
  } else {
    out += fmt::format("Planner shortlist for {} (best first):\n", PlayerName(sl.perspective));
    if (variant == ShortlistVariant::kV3) {
      const auto& top = sl.entries.front();
      const std::string top_label = sl.Label(0);
      if (sl.finesse && top.action.kind != ActionKind::kPlay) {
        const FinessePattern& f = *sl.finesse;
        const std::string hinter(PlayerName(f.hinter));
        const std::string color(ColorName(f.deferred.color));
        out += fmt::format("Recommended: option 1 ({}).", top_label);
        out += " Under the finesse convention, a color hint on a card two ranks above its stack,"
               " given by a player who holds the card in between, asks the receiver to hold it.";
        out += fmt::format(" {}'s {} hint marks card {} as {}, which becomes playable once {} plays {}.",
                           hinter, color, f.deferred_slot + 1, ToString(f.deferred), hinter,
                           ToString(f.bridge));
        out += fmt::format(" Playing card {} now would bomb, because the {} stack needs {} first"
                           " and each bomb burns one of the fuses.\n",
                           f.deferred_slot + 1, color, ToString(f.bridge));
      } else {
        for (int i = 0; i < n; ++i) {
          out += fmt::format("{}Option {} ({}, {}): {}.", i ? " " : "", i + 1, sl.Label(i),
                             Signed(sl.entries[i].value), sl.entries[i].rationale);
        }
        out += fmt::format(" Option 1 ({}) has the highest expected value.\n", top_label);
      }
    } else {
      const double scale = variant == ShortlistVariant::kV1 ? 3.0 : 1.0;
      out += "[";
      for (int i = 0; i < n; ++i) {
        out += fmt::format("{}{}. {} {}", i ? ", " : "", i + 1, sl.Label(i),
                           Signed(scale * sl.entries[i].value));
      }
      out += "]\n";
      if (variant == ShortlistVariant::kV2) {
        out += fmt::format("{}: not recommended ({})\n", sl.Label(n - 1),
                           Signed(sl.entries[n - 1].value));
      }
    }
  }
  out += "Options:";
  for (int i = 0; i < n; ++i) {
    out += fmt::format("{} {} = {}", i ? ";" : "", i + 1, ToString(sl.entries[i].action));
  }
  out += "\n";
  return out;
}

}  // namespace hanabi_lab
