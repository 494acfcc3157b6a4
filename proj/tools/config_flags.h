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

#ifndef REWARDLAB_TOOLS_CONFIG_FLAGS_H_
#define REWARDLAB_TOOLS_CONFIG_FLAGS_H_

#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

namespace rewardlab::cli {

// Adds one option per key of `defaults` (nested objects recurse with their
// key as a prefix). Given values land in `patch` under the same key path, so
// `patch` can be merged over a config file. Key "a_b" becomes --<prefix>a-b.
void AddConfigFlags(CLI::App* app, const nlohmann::json& defaults, const std::string& prefix,
                    nlohmann::json* patch, const std::string& group);

// base (or `defaults` when `path` is empty) with `patch` merged over it.
nlohmann::json MergeConfig(const nlohmann::json& defaults, const std::string& path,
                           const nlohmann::json& patch);

nlohmann::json ReadJsonFile(const std::string& path);  // throws kIo / kConfig
void WriteJsonFile(const std::string& path, const nlohmann::json& j);

}  // namespace rewardlab::cli

#endif  // REWARDLAB_TOOLS_CONFIG_FLAGS_H_
