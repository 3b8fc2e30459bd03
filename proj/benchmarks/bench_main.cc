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

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "hanabi_lab/agents.h"
#include "hanabi_lab/belief.h"
#include "hanabi_lab/game.h"
#include "hanabi_lab/planner.h"
#include "hanabi_lab/rng.h"
#include "hanabi_lab/scenarios.h"

namespace hanabi_lab {
namespace {

// Mid-game states, reached by random legal play.
std::vector<GameState> MidGameStates(int players, int count) {
  std::vector<GameState> out;
  for (int i = 0; i < count; ++i) {
    GameState s = NewGame(players, static_cast<std::uint64_t>(i));
    std::mt19937_64 gen(static_cast<std::uint64_t>(i) + 1);
    for (int t = 0; t < 12 && !s.IsTerminal(); ++t) {
      const auto legal = LegalActions(s, s.current_player);
      s = ApplyAction(s, legal[UniformBelow(gen, legal.size())]).state;
    }
    if (!s.IsTerminal()) out.push_back(std::move(s));
  }
  return out;
}

void BM_EngineStep(benchmark::State& state) {
  const auto states = MidGameStates(static_cast<int>(state.range(0)), 64);
  std::vector<Action> actions;
  for (const auto& s : states) actions.push_back(LegalActions(s, s.current_player).front());
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ApplyAction(states[i], actions[i]));
    i = (i + 1) % states.size();
  }
}
BENCHMARK(BM_EngineStep)->DenseRange(2, 5);

void BM_RandomPlayout(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) {
    GameState s = NewGame(static_cast<int>(state.range(0)), seed);
    std::mt19937_64 gen(seed++);
    while (!s.IsTerminal()) {
      const auto legal = LegalActions(s, s.current_player);
      s = ApplyAction(s, legal[UniformBelow(gen, legal.size())]).state;
    }
    benchmark::DoNotOptimize(Score(s));
  }
}
BENCHMARK(BM_RandomPlayout)->Arg(2)->Arg(5);

void BM_BuildGraph(benchmark::State& state) {
  const auto states = MidGameStates(static_cast<int>(state.range(0)), 32);
  const auto depth = static_cast<BeliefDepth>(state.range(1));
  std::size_t i = 0;
  for (auto _ : state) {
    const GameState& s = states[i];
    benchmark::DoNotOptimize(BuildGraph(s, s.current_player, depth));
    i = (i + 1) % states.size();
  }
}
BENCHMARK(BM_BuildGraph)
    ->ArgsProduct({{2, 5},
                   {static_cast<int>(BeliefDepth::kL0), static_cast<int>(BeliefDepth::kL0L1),
                    static_cast<int>(BeliefDepth::kL0L1L2)}});

void BM_BuildGraphS5(benchmark::State& state) {
  const ScenarioInstance inst = MakeScenario(ScenarioId::kS5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(BuildGraph(inst.state, inst.acting_player, BeliefDepth::kL0L1L2));
  }
}
BENCHMARK(BM_BuildGraphS5);

void BM_MakeShortlist(benchmark::State& state) {
  const auto states = MidGameStates(static_cast<int>(state.range(0)), 32);
  std::vector<BeliefGraph> graphs;
  for (const auto& s : states) graphs.push_back(BuildGraph(s, s.current_player, BeliefDepth::kL0L1L2));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(MakeShortlist(graphs[i]));
    i = (i + 1) % graphs.size();
  }
}
BENCHMARK(BM_MakeShortlist)->Arg(2)->Arg(5);

void BM_GatedPrompt(benchmark::State& state) {
  const ScenarioInstance inst = MakeScenario(ScenarioId::kS5);
  ObservationOptions opt;
  opt.architecture = Architecture::kGated;
  for (auto _ : state) {
    benchmark::DoNotOptimize(BuildPrompt(BuildObservation(inst.state, inst.acting_player, opt)));
  }
}
BENCHMARK(BM_GatedPrompt);

}  // namespace
}  // namespace hanabi_lab

BENCHMARK_MAIN();
