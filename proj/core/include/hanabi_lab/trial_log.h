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

// Line-delimited, schema-versioned run logs and the run manifest.

#ifndef HANABI_LAB_TRIAL_LOG_H_
#define HANABI_LAB_TRIAL_LOG_H_

#include <cstdint>
#include <fstream>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hanabi_lab/experiments.h"

namespace hanabi_lab {

inline constexpr std::string_view kTrialSchema = "hanabi-lab/trial/v1";
inline constexpr std::string_view kGameSchema = "hanabi-lab/game/v1";
inline constexpr std::string_view kTurnSchema = "hanabi-lab/turn/v1";
inline constexpr std::string_view kManifestSchema = "hanabi-lab/manifest/v1";
inline constexpr std::string_view kSummarySchema = "hanabi-lab/summary/v1";

std::string TrialConfigToJson(const TrialConfig& config);
TrialConfig TrialConfigFromJson(std::string_view text);
std::string FullGameConfigToJson(const FullGameConfig& config);

// Records never contain credentials; endpoint configs carry only the name of
// the variable that holds the key.
std::string TrialToJsonLine(const TrialRecord& record);
TrialRecord TrialFromJsonLine(std::string_view line);  // SchemaError on mismatch
std::string GameToJsonLine(const GameRecord& record);
GameRecord GameFromJsonLine(std::string_view line);
std::string TurnToJsonLine(const TurnRecord& record);

std::vector<TrialRecord> ReadTrialLog(const std::string& path);
std::vector<GameRecord> ReadGameLog(const std::string& path);
// Schema of the first record in a JSONL file, or "" for an empty file.
std::string DetectSchema(const std::string& path);

// Serialized appends to one file.
class JsonlAppender {
 public:
  explicit JsonlAppender(const std::string& path);
  void Append(const std::string& line);
  void Flush();

 private:
  std::mutex mu_;
  std::ofstream out_;
};

struct RunManifest {
  std::string command_line;
  std::string config_json;  // resolved configuration
  std::uint64_t seed = 0;
  std::string code_version;
  std::string started_at;
  std::string finished_at;
  std::vector<std::string> outputs;
  bool truncated = false;
};

std::string ManifestToJson(const RunManifest& manifest);
RunManifest ManifestFromJson(std::string_view text);

// Stable, pretty-printed summary document shared by the run and analyze commands.
std::string SummaryToJson(std::span<const ConditionSummary> conditions, std::span<const GameSummary> games);

std::string_view CodeVersion();

}  // namespace hanabi_lab

#endif  // HANABI_LAB_TRIAL_LOG_H_
