// Copyright 2026 The rewardlab Authors
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

#ifndef REWARDLAB_TOOLS_COMMANDS_H_
#define REWARDLAB_TOOLS_COMMANDS_H_

#include <CLI11.hpp>

namespace rewardlab::cli {

// Exit statuses: 0 success, 1 invalid input or config, 2 runtime failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitRuntime = 2;

// Subcommand callbacks run during parsing and may lower `*status` to
// kExitRuntime for results that are not exceptions (a failed verification).
void AddTrainCommands(CLI::App& app, int* status);  // train, eval, verify
void AddDataCommands(CLI::App& app, int* status);   // xt, render, record, replay, radar, serve-stub

}  // namespace rewardlab::cli

#endif  // REWARDLAB_TOOLS_COMMANDS_H_
