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

#ifndef HANABI_LAB_ERROR_H_
#define HANABI_LAB_ERROR_H_

#include <stdexcept>
#include <string>

namespace hanabi_lab {

// Invalid experiment or CLI configuration (maps to exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Remote endpoint failed after its retry budget (maps to exit code 3).
class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Log record with an unknown or mismatched schema version.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hanabi_lab

#endif  // HANABI_LAB_ERROR_H_
