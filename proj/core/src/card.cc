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

#include "hanabi_lab/card.h"

#include <cctype>
#include <stdexcept>

namespace hanabi_lab {

namespace {

constexpr std::array<char, kMaxColors> kColorChars = {'R', 'Y', 'G', 'W', 'B'};
constexpr std::array<std::string_view, kMaxColors> kColorNames = {
    "red", "yellow", "green", "white", "blue"};
constexpr std::array<std::string_view, kMaxPlayers> kPlayerNames = {
    "Alice", "Bob", "Cathy", "Donald", "Emily"};

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

char ColorChar(Color c) { return kColorChars[static_cast<int>(c)]; }

std::string_view ColorName(Color c) { return kColorNames[static_cast<int>(c)]; }

std::optional<Color> ParseColor(std::string_view text) {
  const std::string t = Lower(text);
  for (int i = 0; i < kMaxColors; ++i) {
    if (t == kColorNames[i] ||
        (t.size() == 1 && std::toupper(static_cast<unsigned char>(t[0])) == kColorChars[i])) {
      return static_cast<Color>(i);
    }
  }
  return std::nullopt;
}

std::string ToString(Card card) {
  return std::string{ColorChar(card.color), static_cast<char>('0' + card.rank)};
}

std::optional<Card> ParseCard(std::string_view text) {
  if (text.size() != 2) return std::nullopt;
  auto color = ParseColor(text.substr(0, 1));
  if (!color || text[1] < '1' || text[1] > '5') return std::nullopt;
  return Card{*color, text[1] - '0'};
}

std::string_view PlayerName(int player) {
  if (player < 0 || player >= kMaxPlayers) throw std::out_of_range("player id");
  return kPlayerNames[player];
}

Ruleset Ruleset::Reduced(int colors) {
  if (colors < 1 || colors > kMaxColors) throw std::invalid_argument("colors out of range");
  Ruleset r;
  r.num_colors = colors;
  return r;
}

int Ruleset::Copies(Card card) const {
  if (!HasColor(card.color) || card.rank < 1 || card.rank > kNumRanks) return 0;
  return copies_per_rank[card.rank - 1];
}

int Ruleset::DeckSize() const {
  int per_color = 0;
  for (int c : copies_per_rank) per_color += c;
  return per_color * num_colors;
}

std::vector<Card> Ruleset::FullDeck() const {
  std::vector<Card> deck;
  deck.reserve(DeckSize());
  for (int c = 0; c < num_colors; ++c) {
    for (int r = 1; r <= kNumRanks; ++r) {
      for (int k = 0; k < copies_per_rank[r - 1]; ++k) {
        deck.push_back(Card{static_cast<Color>(c), r});
      }
    }
  }
  return deck;
}

}  // namespace hanabi_lab
