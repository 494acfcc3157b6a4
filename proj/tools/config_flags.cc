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

#include "config_flags.h"

#include <algorithm>
#include <fstream>

#include "rewardlab/common/error.h"

namespace rewardlab::cli {
namespace {

std::string FlagName(std::string key) {
  std::replace(key.begin(), key.end(), '_', '-');
  return key;
}

std::string TypeName(const nlohmann::json& v) {
  if (v.is_boolean()) return "BOOL";
  if (v.is_number_integer()) return "INT";
  if (v.is_number()) return "FLOAT";
  if (v.is_array()) return "LIST";
  return "TEXT";
}

// Converts the command-line text for a key whose default is `like`.
nlohmann::json Convert(const nlohmann::json& like, const std::string& text) {
  if (like.is_string()) return text;
  if (like.is_boolean()) {
    if (text.empty() || text == "true" || text == "1") return true;
    if (text == "false" || text == "0") return false;
    throw CLI::ValidationError("expected true or false, got '" + text + "'");
  }
  nlohmann::json v;
  try {
    v = nlohmann::json::parse(like.is_array() ? "[" + text + "]" : text);
  } catch (const nlohmann::json::exception&) {
    throw CLI::ValidationError("cannot parse '" + text + "'");
  }
  const bool ok = like.is_array() ? v.is_array()
                  : like.is_number_integer() ? v.is_number_integer()
                                             : v.is_number();
  if (!ok) throw CLI::ValidationError("expected " + TypeName(like) + ", got '" + text + "'");
  return v;
}

}  // namespace

void AddConfigFlags(CLI::App* app, const nlohmann::json& defaults, const std::string& prefix,
                    nlohmann::json* patch, const std::string& group) {
  for (const auto& [key, value] : defaults.items()) {
    if (value.is_object()) {
      AddConfigFlags(app, value, prefix + FlagName(key) + "-", &(*patch)[key], group);
      continue;
    }
    const nlohmann::json like = value;
    const std::string k = key;
    auto* opt = app->add_option_function<std::string>(
        "--" + prefix + FlagName(key),
        [patch, k, like](const std::string& text) { (*patch)[k] = Convert(like, text); },
        "default: " + value.dump());
    opt->type_name(TypeName(value))->group(group);
    if (value.is_boolean()) opt->expected(0, 1);
  }
  if (patch->is_null()) *patch = nlohmann::json::object();
}

nlohmann::json MergeConfig(const nlohmann::json& defaults, const std::string& path,
                           const nlohmann::json& patch) {
  nlohmann::json base = path.empty() ? defaults : ReadJsonFile(path);
  base.merge_patch(patch);
  return base;
}

nlohmann::json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  Require(in.good(), ErrorCode::kIo, "cannot read " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kConfig, path + ": " + e.what());
  }
}

void WriteJsonFile(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  Require(out.good(), ErrorCode::kIo, "cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace rewardlab::cli
