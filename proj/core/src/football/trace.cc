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

#include "rewardlab/football/trace.h"

#include <fstream>

#include <nlohmann/json.hpp>

#include "rewardlab/common/error.h"

namespace rewardlab::football {

void WriteTrace(const EpisodeTrace& trace, std::ostream& out) {
  nlohmann::json header = {{"type", "header"},
                           {"version", 1},
                           {"config", trace.config},
                           {"seed", trace.seed},
                           {"state", trace.initial}};
  out << header.dump() << '\n';
  for (size_t t = 0; t < trace.steps.size(); ++t) {
    const TraceStep& s = trace.steps[t];
    nlohmann::json line = {{"type", "step"},     {"t", t},
                           {"actions", s.actions}, {"reward", s.reward},
                           {"events", s.events}, {"state", s.state}};
    out << line.dump() << '\n';
  }
}

EpisodeTrace ReadTrace(std::istream& in) {
  EpisodeTrace trace;
  std::string line;
  int line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const nlohmann::json j = nlohmann::json::parse(line);
      const std::string type = j.at("type").get<std::string>();
      if (type == "header") {
        Require(j.at("version").get<int>() == 1, ErrorCode::kInput, "unsupported trace version");
        trace.config = j.at("config").get<EnvConfig>();
        trace.seed = j.at("seed").get<uint64_t>();
        trace.initial = j.at("state").get<MatchState>();
        have_header = true;
      } else if (type == "step") {
        Require(have_header, ErrorCode::kInput, "step record before header");
        TraceStep step;
        step.actions = j.at("actions").get<std::vector<int>>();
        step.reward = j.at("reward").get<double>();
        step.events = j.at("events").get<std::vector<MatchEvent>>();
        step.state = j.at("state").get<MatchState>();
        trace.steps.push_back(std::move(step));
      } else {
        Fail(ErrorCode::kInput, "unknown record type '" + type + "'");
      }
    } catch (const nlohmann::json::exception& e) {
      Fail(ErrorCode::kInput, "trace line " + std::to_string(line_no) + ": " + e.what());
    } catch (const Error& e) {
      Fail(ErrorCode::kInput, "trace line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  Require(have_header, ErrorCode::kInput, "trace has no header record");
  return trace;
}

void SaveTrace(const EpisodeTrace& trace, const std::string& path) {
  std::ofstream out(path);
  Require(out.good(), ErrorCode::kIo, "cannot write trace " + path);
  WriteTrace(trace, out);
}

EpisodeTrace LoadTrace(const std::string& path) {
  std::ifstream in(path);
  Require(in.good(), ErrorCode::kIo, "cannot open trace " + path);
  return ReadTrace(in);
}

std::vector<MatchEvent> EventLog(const EpisodeTrace& trace) {
  std::vector<MatchEvent> events;
  for (const TraceStep& step : trace.steps) {
    events.insert(events.end(), step.events.begin(), step.events.end());
  }
  return events;
}

}  // namespace rewardlab::football
