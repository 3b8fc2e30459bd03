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

#ifndef HANABI_LAB_TESTS_TEST_UTIL_H_
#define HANABI_LAB_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hanabi_lab/card.h"
#include "hanabi_lab/game.h"
#include "hanabi_lab/rng.h"

namespace hanabi_lab::testing {

inline Card C(const char* text) {
  auto c = ParseCard(text);
  if (!c) throw std::invalid_argument(text);
  return *c;
}

// Deals `hands` (player order, slot order) and then the rest of the deck in
// canonical order.
inline GameState DealHands(const std::vector<std::vector<std::string>>& hands,
                           const Ruleset& rules = Ruleset::Standard()) {
  std::vector<Card> pool = rules.FullDeck();
  std::vector<Card> order;
  for (const auto& hand : hands) {
    for (const auto& text : hand) {
      const Card card = C(text.c_str());
      auto it = std::find(pool.begin(), pool.end(), card);
      if (it == pool.end()) throw std::invalid_argument("card not available: " + text);
      pool.erase(it);
      order.push_back(card);
    }
  }
  order.insert(order.end(), pool.begin(), pool.end());
  return NewGameFromDeck(static_cast<int>(hands.size()), order, rules);
}

// Uniformly random legal actions until the game ends or `max_actions` steps.
// `step` sees each (before, action, result).
inline GameState RandomPlayout(
    GameState state, std::uint64_t seed, int max_actions = 1000,
    const std::function<void(const GameState&, const Action&, const StepResult&)>& step = {}) {
  std::mt19937_64 gen(seed);
  for (int i = 0; i < max_actions && !state.IsTerminal(); ++i) {
    const auto legal = LegalActions(state, state.current_player);
    const Action a = legal[UniformBelow(gen, legal.size())];
    StepResult r = ApplyAction(state, a);
    if (step) step(state, a, r);
    state = std::move(r.state);
  }
  return state;
}

inline std::string ReadFileOrEmpty(const std::string& path) {
  std::ifstream in(path);
  if (!in) return "";
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Golden comparison; HANABI_LAB_UPDATE_GOLDEN=1 rewrites the file instead.
inline std::string Golden(const std::string& name, const std::string& actual) {
  const std::string path = std::string(HANABI_LAB_GOLDEN_DIR) + "/" + name;
  const char* update = std::getenv("HANABI_LAB_UPDATE_GOLDEN");
  if (update != nullptr && std::string(update) == "1") {
    std::ofstream(path) << actual;
    return actual;
  }
  return ReadFileOrEmpty(path);
}

}  // namespace hanabi_lab::testing

#endif  // HANABI_LAB_TESTS_TEST_UTIL_H_
