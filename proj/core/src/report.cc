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

#include "hanabi_lab/report.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include <fmt/format.h>

#include "hanabi_lab/error.h"
#include "hanabi_lab/rng.h"

namespace hanabi_lab::report {
namespace {

std::vector<std::string> SplitLabel(std::string_view label) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t bar = label.find('|', start);
    out.emplace_back(label.substr(start, bar == std::string_view::npos ? std::string_view::npos : bar - start));
    if (bar == std::string_view::npos) break;
    start = bar + 1;
  }
  return out;
}

std::string Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::string XmlEscape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string FormatCi(const stats::Interval& ci) {
  return fmt::format("[{:.0f}%, {:.0f}%]", ci.lo * 100.0, ci.hi * 100.0);
}

struct Tally {
  int valid = 0;
  int correct = 0;
};

}  // namespace

std::string FormatPercent(double rate) { return fmt::format("{:.0f}%", rate * 100.0); }

std::string FormatP(double p) {
  if (p < 1e-4) return "p<0.0001";
  if (p >= 0.995) return "p=1.0";
  return fmt::format("p={:.2g}", p);
}

std::string FormatOddsRatio(double odds) {
  if (std::isnan(odds)) return "OR=n/a";
  if (std::isinf(odds)) return "OR=inf";
  return fmt::format("OR={:.1f}", odds);
}

std::string ProportionLine(const stats::ComparisonResult& r) {
  return fmt::format("{} vs {}, {}, {}", FormatPercent(r.rate_a), FormatPercent(r.rate_b),
                     FormatP(r.p_value), FormatOddsRatio(r.odds_ratio));
}

std::string ScoreLine(const stats::ScoreComparison& s) {
  return fmt::format("{:.1f} vs {:.1f}, Mann-Whitney {}, permutation {}", s.mean_a, s.mean_b,
                     FormatP(s.mann_whitney.p), FormatP(s.permutation_p));
}

std::string RenderTableText(const ComparisonTable& table) {
  std::ostringstream out;
  if (!table.proportions.empty()) {
    out << "Proportion comparisons (Fisher exact, Wilson 95% CI, Cohen's h)\n";
    for (const ProportionRow& row : table.proportions) {
      const auto& r = row.result;
      out << "  " << row.label_a << "  vs  " << row.label_b << "\n";
      out << "    " << ProportionLine(r) << fmt::format(", h={:.2f}", r.cohens_h) << "  (n=" << r.n_a
          << "/" << r.n_b << ", CI " << FormatCi(r.ci_a) << " vs " << FormatCi(r.ci_b) << ")\n";
    }
  }
  if (!table.scores.empty()) {
    if (!table.proportions.empty()) out << "\n";
    out << "Score comparisons (Mann-Whitney U, permutation on means)\n";
    for (const ScoreRow& row : table.scores) {
      out << "  [" << row.metric << "] " << row.label_a << "  vs  " << row.label_b << "\n";
      out << "    " << ScoreLine(row.result) << "  (n=" << row.result.n_a << "/" << row.result.n_b << ")\n";
    }
  }
  if (table.proportions.empty() && table.scores.empty()) out << "No comparisons.\n";
  return out.str();
}

std::string RenderTableTsv(const ComparisonTable& table) {
  std::ostringstream out;
  out << "test\tmetric\tlabel_a\tlabel_b\tn_a\tn_b\tvalue_a\tvalue_b\tp\tp_permutation\todds_ratio\t"
         "cohens_h\tci_a_lo\tci_a_hi\tci_b_lo\tci_b_hi\n";
  for (const ProportionRow& row : table.proportions) {
    const auto& r = row.result;
    out << fmt::format("{}\taccuracy\t{}\t{}\t{}\t{}\t{:.6f}\t{:.6f}\t{:.6g}\t\t{}\t{:.6f}\t{:.6f}\t{:.6f}\t{:.6f}\t{:.6f}\n",
                       r.test_name, row.label_a, row.label_b, r.n_a, r.n_b, r.rate_a, r.rate_b, r.p_value,
                       r.odds_ratio, r.cohens_h, r.ci_a.lo, r.ci_a.hi, r.ci_b.lo, r.ci_b.hi);
  }
  for (const ScoreRow& row : table.scores) {
    const auto& s = row.result;
    out << fmt::format("mann_whitney\t{}\t{}\t{}\t{}\t{}\t{:.6f}\t{:.6f}\t{:.6g}\t{:.6g}\t\t\t\t\t\t\n", row.metric,
                       row.label_a, row.label_b, s.n_a, s.n_b, s.mean_a, s.mean_b, s.mann_whitney.p,
                       s.permutation_p);
  }
  return out.str();
}

std::vector<std::pair<std::string, std::string>> ParseComparisonSpec(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::string item;
  auto flush = [&] {
    const std::string t = Trim(item);
    item.clear();
    if (t.empty() || t[0] == '#') return;
    const auto vs = t.find(" vs ");
    if (vs == std::string::npos) throw ConfigError("comparison needs 'A vs B': " + t);
    std::string a = Trim(std::string_view(t).substr(0, vs));
    std::string b = Trim(std::string_view(t).substr(vs + 4));
    if (a.empty() || b.empty()) throw ConfigError("empty label in comparison: " + t);
    out.emplace_back(std::move(a), std::move(b));
  };
  for (char c : text) {
    if (c == '\n' || c == ';') {
      flush();
    } else {
      item += c;
    }
  }
  flush();
  return out;
}

ComparisonTable CompareTrials(std::span<const TrialRecord> records,
                              std::span<const std::pair<std::string, std::string>> pairs) {
  std::vector<std::string> order;
  std::map<std::string, Tally> tallies;
  for (const TrialRecord& r : records) {
    auto [it, inserted] = tallies.try_emplace(r.label);
    if (inserted) order.push_back(r.label);
    if (r.invalid) continue;
    ++it->second.valid;
    if (r.correct) ++it->second.correct;
  }
  std::vector<std::pair<std::string, std::string>> todo(pairs.begin(), pairs.end());
  if (todo.empty()) {
    std::map<std::string, std::string> reference;
    auto key_of = [](const std::string& label) {
      std::vector<std::string> f = SplitLabel(label);
      if (f.size() > 2) f[2] = "*";
      if (!f.empty() && f.back() == "random_shortlist") f.pop_back();
      std::string k;
      for (const auto& part : f) k += part + "|";
      return k;
    };
    for (const std::string& label : order) {
      const auto f = SplitLabel(label);
      if (f.size() > 2 && f[2] == "full_graph" && f.back() != "random_shortlist") {
        reference.try_emplace(key_of(label), label);
      }
    }
    for (const std::string& label : order) {
      auto it = reference.find(key_of(label));
      if (it != reference.end() && it->second != label) todo.emplace_back(it->second, label);
    }
  }
  ComparisonTable table;
  for (const auto& [a, b] : todo) {
    auto ia = tallies.find(a);
    auto ib = tallies.find(b);
    if (ia == tallies.end()) throw ConfigError("no trials labeled " + a);
    if (ib == tallies.end()) throw ConfigError("no trials labeled " + b);
    if (ia->second.valid == 0 || ib->second.valid == 0) continue;
    table.proportions.push_back(ProportionRow{
        a, b,
        stats::CompareProportions(ia->second.correct, ia->second.valid, ib->second.correct, ib->second.valid)});
  }
  return table;
}

ComparisonTable CompareGames(std::span<const GameRecord> games,
                             std::span<const std::pair<std::string, std::string>> pairs, int iterations,
                             std::uint64_t seed) {
  std::vector<std::string> order;
  std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> samples;
  for (const GameRecord& g : games) {
    auto [it, inserted] = samples.try_emplace(g.label);
    if (inserted) order.push_back(g.label);
    if (g.aborted) continue;
    it->second.first.push_back(g.score);
    it->second.second.push_back(g.survival_turns);
  }
  std::vector<std::pair<std::string, std::string>> todo(pairs.begin(), pairs.end());
  if (todo.empty()) {
    // One reference per player count: the baseline if present, else the first label.
    auto suffix = [](const std::string& label) {
      const auto at = label.find('@');
      return at == std::string::npos ? std::string() : label.substr(at);
    };
    std::map<std::string, std::string> reference;
    for (const std::string& label : order) {
      if (label.starts_with("baseline")) reference[suffix(label)] = label;
    }
    for (const std::string& label : order) reference.try_emplace(suffix(label), label);
    for (const std::string& label : order) {
      const std::string& ref = reference[suffix(label)];
      if (label != ref) todo.emplace_back(ref, label);
    }
  }
  ComparisonTable table;
  std::uint64_t stream = 0;
  for (const auto& [a, b] : todo) {
    auto ia = samples.find(a);
    auto ib = samples.find(b);
    if (ia == samples.end()) throw ConfigError("no games labeled " + a);
    if (ib == samples.end()) throw ConfigError("no games labeled " + b);
    if (ia->second.first.empty() || ib->second.first.empty()) continue;
    table.scores.push_back(ScoreRow{"score", a, b,
                                    stats::CompareScores(ia->second.first, ib->second.first, iterations,
                                                         DeriveSeed(seed, stream++))});
    table.scores.push_back(ScoreRow{"survival", a, b,
                                    stats::CompareScores(ia->second.second, ib->second.second, iterations,
                                                         DeriveSeed(seed, stream++))});
  }
  return table;
}

AccuracyGrid BuildAccuracyGrid(std::span<const ConditionSummary> summaries) {
  AccuracyGrid grid;
  std::map<std::pair<std::string, std::string>, double> values;
  for (const ConditionSummary& s : summaries) {
    const auto bar = s.label.find('|');
    std::string row = s.label.substr(0, bar);
    std::string col = bar == std::string::npos ? "" : s.label.substr(bar + 1);
    if (std::find(grid.rows.begin(), grid.rows.end(), row) == grid.rows.end()) grid.rows.push_back(row);
    if (std::find(grid.cols.begin(), grid.cols.end(), col) == grid.cols.end()) grid.cols.push_back(col);
    values[{row, col}] = s.valid > 0 ? s.rate : std::nan("");
  }
  for (const std::string& row : grid.rows) {
    std::vector<double> line;
    for (const std::string& col : grid.cols) {
      auto it = values.find({row, col});
      line.push_back(it == values.end() ? std::nan("") : it->second);
    }
    grid.cells.push_back(std::move(line));
  }
  return grid;
}

std::string GridTsv(const AccuracyGrid& grid) {
  std::ostringstream out;
  out << "scenario";
  for (const auto& c : grid.cols) out << '\t' << c;
  out << '\n';
  for (std::size_t i = 0; i < grid.rows.size(); ++i) {
    out << grid.rows[i];
    for (double v : grid.cells[i]) {
      out << '\t';
      if (!std::isnan(v)) out << fmt::format("{:.4f}", v);
    }
    out << '\n';
  }
  return out.str();
}

std::string HeatmapSvg(const AccuracyGrid& grid, std::string_view title) {
  constexpr int kCell = 36, kLeft = 90, kTop = 40;
  constexpr int kLabelSpace = 260;
  const int width = kLeft + kCell * static_cast<int>(grid.cols.size()) + 20;
  const int height = kTop + kCell * static_cast<int>(grid.rows.size()) + kLabelSpace;
  std::ostringstream out;
  out << fmt::format(R"(<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" font-family="sans-serif" font-size="11">)",
                     width, height)
      << "\n";
  out << fmt::format(R"(<text x="{}" y="20" font-size="14">{}</text>)", kLeft, XmlEscape(title)) << "\n";
  for (std::size_t i = 0; i < grid.rows.size(); ++i) {
    const int y = kTop + kCell * static_cast<int>(i);
    out << fmt::format(R"(<text x="{}" y="{}" text-anchor="end">{}</text>)", kLeft - 6, y + kCell / 2 + 4,
                       XmlEscape(grid.rows[i]))
        << "\n";
    for (std::size_t j = 0; j < grid.cols.size(); ++j) {
      const int x = kLeft + kCell * static_cast<int>(j);
      const double v = grid.cells[i][j];
      std::string fill = "#dddddd";
      std::string text = "";
      if (!std::isnan(v)) {
        // White (0) to dark blue (1).
        const int r = static_cast<int>(std::lround(255 - 222 * v));
        const int g = static_cast<int>(std::lround(255 - 153 * v));
        const int b = static_cast<int>(std::lround(255 - 74 * v));
        fill = fmt::format("#{:02x}{:02x}{:02x}", r, g, b);
        text = fmt::format("{:.0f}", v * 100.0);
      }
      out << fmt::format(R"(<rect x="{}" y="{}" width="{}" height="{}" fill="{}" stroke="#ffffff"/>)", x, y, kCell,
                         kCell, fill)
          << "\n";
      if (!text.empty()) {
        out << fmt::format(R"(<text x="{}" y="{}" text-anchor="middle" fill="{}">{}</text>)", x + kCell / 2,
                           y + kCell / 2 + 4, v > 0.55 ? "#ffffff" : "#000000", text)
            << "\n";
      }
    }
  }
  const int base = kTop + kCell * static_cast<int>(grid.rows.size()) + 8;
  for (std::size_t j = 0; j < grid.cols.size(); ++j) {
    const int x = kLeft + kCell * static_cast<int>(j) + kCell / 2;
    out << fmt::format(R"svg(<text x="{0}" y="{1}" transform="rotate(60 {0} {1})">{2}</text>)svg", x, base,
                       XmlEscape(grid.cols[j]))
        << "\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::vector<Bar> AccuracyBars(std::span<const ConditionSummary> summaries) {
  std::vector<Bar> bars;
  for (const ConditionSummary& s : summaries) {
    if (s.valid == 0) continue;
    const stats::Interval ci = stats::WilsonCi(s.correct, s.valid);
    bars.push_back(Bar{s.label, s.rate, ci.lo, ci.hi});
  }
  return bars;
}

std::vector<Bar> ScoreBars(std::span<const GameSummary> summaries) {
  std::vector<Bar> bars;
  for (const GameSummary& s : summaries) {
    if (s.n - s.aborted <= 0) continue;
    bars.push_back(Bar{s.label, s.mean_score, s.score_ci_lo, s.score_ci_hi});
  }
  return bars;
}

std::string BarsTsv(std::span<const Bar> bars) {
  std::ostringstream out;
  out << "label\tvalue\tlo\thi\n";
  for (const Bar& b : bars) out << fmt::format("{}\t{:.4f}\t{:.4f}\t{:.4f}\n", b.label, b.value, b.lo, b.hi);
  return out.str();
}

std::string BarChartSvg(std::span<const Bar> bars, std::string_view title, double y_max) {
  constexpr int kBar = 28, kGap = 12, kLeft = 50, kTop = 40, kPlot = 220, kLabelSpace = 260;
  if (y_max <= 0.0) y_max = 1.0;
  const int width = kLeft + (kBar + kGap) * static_cast<int>(bars.size()) + 20;
  const int height = kTop + kPlot + kLabelSpace;
  auto y_of = [&](double v) {
    return kTop + kPlot - static_cast<int>(std::lround(std::clamp(v / y_max, 0.0, 1.0) * kPlot));
  };
  std::ostringstream out;
  out << fmt::format(R"(<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" font-family="sans-serif" font-size="11">)",
                     width, height)
      << "\n";
  out << fmt::format(R"(<text x="{}" y="20" font-size="14">{}</text>)", kLeft, XmlEscape(title)) << "\n";
  out << fmt::format(R"(<line x1="{0}" y1="{1}" x2="{0}" y2="{2}" stroke="#000000"/>)", kLeft, kTop, kTop + kPlot)
      << "\n";
  out << fmt::format(R"(<line x1="{0}" y1="{1}" x2="{2}" y2="{1}" stroke="#000000"/>)", kLeft, kTop + kPlot,
                     width - 10)
      << "\n";
  for (int t = 0; t <= 4; ++t) {
    const double v = y_max * t / 4.0;
    out << fmt::format(R"(<text x="{}" y="{}" text-anchor="end">{:g}</text>)", kLeft - 4, y_of(v) + 4, v) << "\n";
  }
  for (std::size_t i = 0; i < bars.size(); ++i) {
    const Bar& b = bars[i];
    const int x = kLeft + kGap / 2 + (kBar + kGap) * static_cast<int>(i);
    const int y = y_of(b.value);
    out << fmt::format(R"(<rect x="{}" y="{}" width="{}" height="{}" fill="#2166ac"/>)", x, y, kBar,
                       kTop + kPlot - y)
        << "\n";
    const int cx = x + kBar / 2;
    out << fmt::format(R"(<line x1="{0}" y1="{1}" x2="{0}" y2="{2}" stroke="#000000"/>)", cx, y_of(b.lo),
                       y_of(b.hi))
        << "\n";
    out << fmt::format(R"svg(<text x="{0}" y="{1}" transform="rotate(60 {0} {1})">{2}</text>)svg", cx, kTop + kPlot + 10,
                       XmlEscape(b.label))
        << "\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace hanabi_lab::report
