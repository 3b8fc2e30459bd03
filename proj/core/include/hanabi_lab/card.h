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

#ifndef HANABI_LAB_CARD_H_
#define HANABI_LAB_CARD_H_

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hanabi_lab {

inline constexpr int kMaxColors = 5;
inline constexpr int kNumRanks = 5;
inline constexpr int kNumIdentities = kMaxColors * kNumRanks;
inline constexpr int kMinPlayers = 2;
inline constexpr int kMaxPlayers = 5;

enum class Color : std::uint8_t { kRed = 0, kYellow, kGreen, kWhite, kBlue };

struct Card {
  Color color = Color::kRed;
  int rank = 1;

  // Dense identity index in [0, 25): color-major, rank ascending.
  int Index() const { return static_cast<int>(color) * kNumRanks + rank - 1; }
  static Card FromIndex(int index) {
    return Card{static_cast<Color>(index / kNumRanks), index % kNumRanks + 1};
  }

  auto operator<=>(const Card&) const = default;
};

char ColorChar(Color c);
std::string_view ColorName(Color c);
std::optional<Color> ParseColor(std::string_view text);  // "g" or "green"

// Two-character form, e.g. "G3".
std::string ToString(Card card);
std::optional<Card> ParseCard(std::string_view text);

std::string_view PlayerName(int player);

// Fixed game constants. Standard() is the public 50-card ruleset; Reduced()
// keeps every constant but drops suits, which makes exhaustive enumeration
// over deals tractable in tests.
struct Ruleset {
  int num_colors = kMaxColors;
  std::array<int, kNumRanks> copies_per_rank = {3, 2, 2, 2, 1};
  int max_hints = 8;
  int max_bombs = 3;

  static Ruleset Standard() { return Ruleset{}; }
  static Ruleset Reduced(int colors);

  int HandSize(int players) const { return players <= 3 ? 5 : 4; }
  int Copies(Card card) const;
  int DeckSize() const;
  int MaxScore() const { return num_colors * kNumRanks; }
  bool HasColor(Color c) const { return static_cast<int>(c) < num_colors; }
  // Every card of the ruleset in canonical order (color, rank, copy).
  std::vector<Card> FullDeck() const;

  bool operator==(const Ruleset&) const = default;
};

}  // namespace hanabi_lab

#endif  // HANABI_LAB_CARD_H_
