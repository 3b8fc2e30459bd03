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

// Comparison tables and figure data for analyzed logs.

#ifndef HANABI_LAB_REPORT_H_
#define HANABI_LAB_REPORT_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hanabi_lab/experiments.h"
#include "hanabi_lab/stats.h"

namespace hanabi_lab::report {

std::string FormatPercent(double rate);     // "80%"
std::string FormatP(double p);              // "p<0.0001", "p=0.003", "p=1.0"
std::string FormatOddsRatio(double odds);   // "OR=36.0", "OR=inf", "OR=n/a"

// "80% vs 10%, p<0.0001, OR=36.0"
std::string ProportionLine(const stats::ComparisonResult& r);
// "4.5 vs 3.4, Mann-Whitney p=0.16, permutation p=0.003"
std::string ScoreLine(const stats::ScoreComparison& s);

struct ProportionRow {
  std::string label_a;
  std::string label_b;
  stats::ComparisonResult result;
};

struct ScoreRow {
  std::string metric;  // "score" or "survival"
  std::string label_a;
  std::string label_b;
  stats::ScoreComparison result;
};

struct ComparisonTable {
  std::vector<ProportionRow> proportions;
  std::vector<ScoreRow> scores;
};

std::string RenderTableText(const ComparisonTable& table);
std::string RenderTableTsv(const ComparisonTable& table);

// "A vs B" pairs, one per line or separated by ';'. Throws ConfigError.
std::vector<std::pair<std::string, std::string>> ParseComparisonSpec(std::string_view text);

// With no explicit pairs, each trial label is compared against the
// full_graph condition that differs from it only in ablation (and the
// random-shortlist control flag).
ComparisonTable CompareTrials(std::span<const TrialRecord> records,
                              std::span<const std::pair<std::string, std::string>> pairs = {});

// With no explicit pairs, every label is compared on score and survival
// against the reference with the same player count: "baseline" if present,
// else the first label seen.
ComparisonTable CompareGames(std::span<const GameRecord> games,
                             std::span<const std::pair<std::string, std::string>> pairs = {},
                             int iterations = 100000, std::uint64_t seed = 0);

// Scenario (first label field) by condition (remaining fields); NaN where a
// cell has no trials.
struct AccuracyGrid {
  std::vector<std::string> rows;
  std::vector<std::string> cols;
  std::vector<std::vector<double>> cells;
};

AccuracyGrid BuildAccuracyGrid(std::span<const ConditionSummary> summaries);
std::string GridTsv(const AccuracyGrid& grid);
std::string HeatmapSvg(const AccuracyGrid& grid, std::string_view title);

struct Bar {
  std::string label;
  double value = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

std::vector<Bar> AccuracyBars(std::span<const ConditionSummary> summaries);  // Wilson CIs
std::vector<Bar> ScoreBars(std::span<const GameSummary> summaries);
std::string BarsTsv(std::span<const Bar> bars);
std::string BarChartSvg(std::span<const Bar> bars, std::string_view title, double y_max);

}  // namespace hanabi_lab::report

#endif  // HANABI_LAB_REPORT_H_
