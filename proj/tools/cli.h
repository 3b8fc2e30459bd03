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

// The hanabi-lab command line, callable in-process for tests.

#ifndef HANABI_LAB_TOOLS_CLI_H_
#define HANABI_LAB_TOOLS_CLI_H_

#include <atomic>
#include <iosfwd>
#include <string>
#include <vector>

namespace hanabi_lab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitTransport = 3;
inline constexpr int kExitInterrupted = 130;

// `args` excludes the program name. `cancel` may be null.
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
           const std::atomic<bool>* cancel = nullptr);

}  // namespace hanabi_lab::cli

#endif  // HANABI_LAB_TOOLS_CLI_H_
