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

// nlohmann/json adapters for core types. Internal to the library.

#ifndef HANABI_LAB_SRC_JSON_CODEC_H_
#define HANABI_LAB_SRC_JSON_CODEC_H_

#include <optional>

#include "hanabi_lab/card.h"
#include "hanabi_lab/game.h"
#include "json.hpp"

namespace hanabi_lab {

using Json = nlohmann::json;

void to_json(Json& j, const Card& c);
void from_json(const Json& j, Card& c);
void to_json(Json& j, const Action& a);
void from_json(const Json& j, Action& a);
void to_json(Json& j, const HintMark& m);
void from_json(const Json& j, HintMark& m);
void to_json(Json& j, const Event& e);
void from_json(const Json& j, Event& e);

template <typename T>
Json OptionalToJson(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

template <typename T>
std::optional<T> OptionalFromJson(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<T>();
}

}  // namespace hanabi_lab

#endif  // HANABI_LAB_SRC_JSON_CODEC_H_
