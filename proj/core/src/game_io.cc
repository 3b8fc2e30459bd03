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

#include "hanabi_lab/game_io.h"

#include <sstream>
#include <stdexcept>

#include "json_codec.h"
#include "hanabi_lab/error.h"

namespace hanabi_lab {

void to_json(Json& j, const Card& c) { j = ToString(c); }

void from_json(const Json& j, Card& c) {
  auto parsed = ParseCard(j.get<std::string>());
  if (!parsed) throw SchemaError("bad card: " + j.dump());
  c = *parsed;
}

void to_json(Json& j, const Action& a) {
  switch (a.kind) {
    case ActionKind::kPlay:
      j = Json{{"type", "play"}, {"slot", a.slot}};
      break;
    case ActionKind::kDiscard:
      j = Json{{"type", "discard"}, {"slot", a.slot}};
      break;
    case ActionKind::kHint:
      j = Json{{"type", "hint"}, {"target", a.target}};
      if (a.hint_kind == HintKind::kColor) {
        j["color"] = std::string(ColorName(static_cast<Color>(a.hint_value)));
      } else {
        j["rank"] = a.hint_value;
      }
      break;
  }
}

void from_json(const Json& j, Action& a) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "play") {
    a = Action::Play(j.at("slot").get<int>());
  } else if (type == "discard") {
    a = Action::Discard(j.at("slot").get<int>());
  } else if (type == "hint") {
    const int target = j.at("target").get<int>();
    if (j.contains("color")) {
      auto c = ParseColor(j.at("color").get<std::string>());
      if (!c) throw SchemaError("bad hint color");
      a = Action::HintColor(target, *c);
    } else {
      a = Action::HintRank(target, j.at("rank").get<int>());
    }
  } else {
    throw SchemaError("bad action type: " + type);
  }
}

void to_json(Json& j, const HintMark& m) {
  j = Json{{"event", m.event_index},
           {"kind", m.kind == HintKind::kColor ? "color" : "rank"},
           {"value", m.value},
           {"touched", m.touched}};
}

void from_json(const Json& j, HintMark& m) {
  m.event_index = j.at("event").get<int>();
  m.kind = j.at("kind").get<std::string>() == "color" ? HintKind::kColor : HintKind::kRank;
  m.value = j.at("value").get<int>();
  m.touched = j.at("touched").get<bool>();
}

void to_json(Json& j, const Event& e) {
  j = Json{{"index", e.index},
           {"actor", e.actor},
           {"action", e.action},
           {"revealed", OptionalToJson(e.revealed)},
           {"success", e.success},
           {"touched", e.touched},
           {"drawn", OptionalToJson(e.drawn)},
           {"hints_after", e.hints_after},
           {"bombs_after", e.bombs_after},
           {"deck_after", e.deck_after}};
}

void from_json(const Json& j, Event& e) {
  e.index = j.at("index").get<int>();
  e.actor = j.at("actor").get<int>();
  e.action = j.at("action").get<Action>();
  e.revealed = OptionalFromJson<Card>(j.at("revealed"));
  e.success = j.at("success").get<bool>();
  e.touched = j.at("touched").get<std::vector<int>>();
  e.drawn = OptionalFromJson<Card>(j.at("drawn"));
  e.hints_after = j.at("hints_after").get<int>();
  e.bombs_after = j.at("bombs_after").get<int>();
  e.deck_after = j.at("deck_after").get<int>();
}

std::string EventToJsonLine(const Event& event) {
  Json j = event;
  j["schema"] = kEventSchema;
  return j.dump();
}

Event EventFromJsonLine(std::string_view line) {
  Json j = Json::parse(line);
  if (j.value("schema", "") != kEventSchema) throw SchemaError("unexpected event schema");
  return j.get<Event>();
}

std::string EventsToJsonl(std::span<const Event> events) {
  std::string out;
  for (const Event& e : events) {
    out += EventToJsonLine(e);
    out += '\n';
  }
  return out;
}

std::vector<Event> EventsFromJsonl(std::string_view text) {
  std::vector<Event> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(EventFromJsonLine(line));
  }
  return out;
}

std::string StateToJson(const GameState& s) {
  Json hands = Json::array();
  for (const auto& hand : s.hands) {
    Json h = Json::array();
    for (const HandCard& hc : hand) h.push_back(Json{{"card", hc.card}, {"marks", hc.marks}});
    hands.push_back(std::move(h));
  }
  Json j{{"schema", kStateSchema},
         {"num_colors", s.rules.num_colors},
         {"players", s.num_players},
         {"seed", s.seed},
         {"deck", s.deck},
         {"hands", hands},
         {"stacks", s.stacks},
         {"discards", s.discards},
         {"hints", s.hints},
         {"bombs", s.bombs},
         {"turn", s.turn},
         {"current_player", s.current_player},
         {"final_turns_left", s.final_turns_left},
         {"history", s.history}};
  return j.dump(2);
}

GameState StateFromJson(std::string_view text) {
  Json j = Json::parse(text);
  if (j.value("schema", "") != kStateSchema) throw SchemaError("unexpected state schema");
  GameState s;
  s.rules = Ruleset::Reduced(j.at("num_colors").get<int>());
  s.num_players = j.at("players").get<int>();
  s.seed = j.at("seed").get<std::uint64_t>();
  s.deck = j.at("deck").get<std::vector<Card>>();
  for (const Json& h : j.at("hands")) {
    std::vector<HandCard> hand;
    for (const Json& hc : h) {
      hand.push_back(HandCard{hc.at("card").get<Card>(), hc.at("marks").get<std::vector<HintMark>>()});
    }
    s.hands.push_back(std::move(hand));
  }
  s.stacks = j.at("stacks").get<std::array<int, kMaxColors>>();
  s.discards = j.at("discards").get<std::vector<Card>>();
  s.hints = j.at("hints").get<int>();
  s.bombs = j.at("bombs").get<int>();
  s.turn = j.at("turn").get<int>();
  s.current_player = j.at("current_player").get<int>();
  s.final_turns_left = j.at("final_turns_left").get<int>();
  s.history = j.at("history").get<std::vector<Event>>();
  return s;
}

std::string DescribeKnowledge(const SlotKnowledge& k, const Ruleset& rules) {
  auto color = k.KnownColor();
  auto rank = k.KnownRank();
  std::string out;
  if (color) out += ColorName(*color);
  if (rank) {
    if (!out.empty()) out += ' ';
    out += std::to_string(*rank);
  }
  if (!out.empty()) {
    if (!color) {
      for (int c = 0; c < rules.num_colors; ++c) {
        if (!(k.colors >> c & 1)) out += ", not " + std::string(ColorName(static_cast<Color>(c)));
      }
    }
    if (!rank) {
      for (int r = 1; r <= kNumRanks; ++r) {
        if (!(k.ranks >> (r - 1) & 1)) out += ", not " + std::to_string(r);
      }
    }
    return out;
  }
  std::string neg;
  for (int c = 0; c < rules.num_colors; ++c) {
    if (!(k.colors >> c & 1)) {
      neg += neg.empty() ? "not " : ", not ";
      neg += ColorName(static_cast<Color>(c));
    }
  }
  for (int r = 1; r <= kNumRanks; ++r) {
    if (!(k.ranks >> (r - 1) & 1)) {
      neg += neg.empty() ? "not " : ", not ";
      neg += std::to_string(r);
    }
  }
  return neg;
}

std::string RenderState(const GameState& s, int viewer) {
  std::ostringstream out;
  out << "Turn: " << s.turn << "\n";
  out << "Players: " << s.num_players << " (you are " << PlayerName(viewer) << ", player "
      << viewer << ")\n";
  out << "Current player: " << PlayerName(s.current_player) << "\n";
  out << "Hints: " << s.hints << "/" << s.rules.max_hints << "\n";
  out << "Bombs: " << s.bombs << "/" << s.rules.max_bombs << "\n";
  out << "Deck: " << s.deck.size() << " cards\n";
  out << "Stacks:";
  for (int c = 0; c < s.rules.num_colors; ++c) {
    out << ' ' << ColorChar(static_cast<Color>(c)) << s.stacks[c];
  }
  out << "\nDiscards:";
  if (s.discards.empty()) out << " none";
  for (const Card& d : s.discards) out << ' ' << ToString(d);
  out << "\nHands:\n";
  for (int p = 0; p < s.num_players; ++p) {
    out << "  " << PlayerName(p) << (p == viewer ? " (you)" : "") << ":";
    for (std::size_t i = 0; i < s.hands[p].size(); ++i) {
      const HandCard& hc = s.hands[p][i];
      out << "  [" << i + 1 << "] " << (p == viewer ? "??" : ToString(hc.card));
      const std::string k = DescribeKnowledge(FoldMarks(hc.marks), s.rules);
      if (!k.empty()) out << " {" << k << "}";
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace hanabi_lab
