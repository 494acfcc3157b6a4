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

#ifndef REWARDLAB_FOOTBALL_TRACE_H_
#define REWARDLAB_FOOTBALL_TRACE_H_

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "rewardlab/football/config.h"
#include "rewardlab/football/env.h"
#include "rewardlab/football/events.h"
#include "rewardlab/football/match_state.h"

namespace rewardlab::football {

struct TraceStep {
  std::vector<int> actions;  // every player's action, by id
  double reward = 0.0;
  std::vector<MatchEvent> events;
  MatchState state;          // state after the step
};

// One episode: the initial state plus every transition.
struct EpisodeTrace {
  EnvConfig config;
  uint64_t seed = 0;
  MatchState initial;
  std::vector<TraceStep> steps;

  int size() const { return static_cast<int>(steps.size()); }
  // State at the start of step t (t == size() gives the final state).
  const MatchState& StateAt(int t) const { return t == 0 ? initial : steps.at(t - 1).state; }
  bool complete() const { return !steps.empty() && steps.back().state.done; }
};

// Line-delimited record format: a header line
//   {"type":"header","version":1,"config":{...},"seed":N,"state":{...}}
// followed by one line per step
//   {"type":"step","t":k,"actions":[...],"reward":r,"events":[...],"state":{...}}
void WriteTrace(const EpisodeTrace& trace, std::ostream& out);
// Throws kInput with the offending line number on malformed records.
EpisodeTrace ReadTrace(std::istream& in);
void SaveTrace(const EpisodeTrace& trace, const std::string& path);
EpisodeTrace LoadTrace(const std::string& path);

// Ordered events of a complete episode.
std::vector<MatchEvent> EventLog(const EpisodeTrace& trace);

// Plays one episode with a caller-supplied home policy (called once per step
// with the env; returns one action per controlled agent).
template <typename Policy>
EpisodeTrace RunEpisode(const EnvConfig& config, uint64_t seed, Policy&& policy) {
  FootballEnv env(config);
  EpisodeTrace trace;
  trace.config = config;
  trace.seed = seed;
  trace.initial = env.Reset(seed).state;
  while (!env.state().done) {
    const std::vector<int> actions = policy(env);
    StepResult r = env.Step(actions);
    trace.steps.push_back({std::move(r.actions), r.reward, std::move(r.events), env.state()});
  }
  return trace;
}

}  // namespace rewardlab::football

#endif  // REWARDLAB_FOOTBALL_TRACE_H_
