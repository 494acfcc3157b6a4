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

#include <vector>

#include <benchmark/benchmark.h>

#include "rewardlab/common/rng.h"
#include "rewardlab/football/env.h"
#include "rewardlab/render/rasterizer.h"
#include "rewardlab/shaping/engine.h"
#include "rewardlab/shaping/skill.h"
#include "rewardlab/trainer/mlp.h"
#include "rewardlab/trainer/ppo.h"
#include "rewardlab/xt/xt.h"

namespace rewardlab {
namespace {

std::vector<football::MatchState> SampleStates(int n) {
  football::FootballEnv env(football::EnvConfig{});
  Rng rng(1);
  env.Reset(1);
  std::vector<football::MatchState> out;
  std::vector<int> acts(env.num_agents());
  while (static_cast<int>(out.size()) < n) {
    for (int& a : acts) a = static_cast<int>(rng.UniformInt(football::kNumActions));
    if (env.Step(acts).done) env.Reset(rng.NextU64());
    out.push_back(env.state());
  }
  return out;
}

void BM_EnvStep(benchmark::State& state) {
  football::EnvConfig config;
  config.home_players = config.away_players = static_cast<int>(state.range(0));
  football::FootballEnv env(config);
  Rng rng(2);
  env.Reset(2);
  std::vector<int> acts(env.num_agents());
  for (auto _ : state) {
    for (int& a : acts) a = static_cast<int>(rng.UniformInt(football::kNumActions));
    if (env.Step(acts).done) env.Reset(rng.NextU64());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_EnvStep)->Arg(3)->Arg(5);

void BM_Render(benchmark::State& state) {
  const auto states = SampleStates(64);
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(render::Render(states[i++ % states.size()]).bytes().data());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Render);

void BM_PhiBatch(benchmark::State& state) {
  const auto states = SampleStates(static_cast<int>(state.range(0)));
  shaping::PotentialEngine engine(shaping::DefaultSkillPool());
  for (auto _ : state) {
    benchmark::DoNotOptimize(engine.PhiBatch(states, "correct-formation").data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PhiBatch)->Arg(301)->Arg(2408);

void BM_XtSolve(benchmark::State& state) {
  const auto model = xt::EstimateProbs(xt::SyntheticEvents());
  for (auto _ : state) benchmark::DoNotOptimize(xt::SolveXt(model).xt.data());
}
BENCHMARK(BM_XtSolve)->Unit(benchmark::kMillisecond);

void BM_MlpForward(benchmark::State& state) {
  Rng rng(3);
  const int in = football::ObservationSize(football::EnvConfig{});
  const int rows = static_cast<int>(state.range(0));
  const trainer::Mlp net({in, 64, 32, football::kNumActions}, rng);
  std::vector<double> x(static_cast<size_t>(rows) * in);
  for (double& v : x) v = rng.Uniform(-1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(net.Forward(x, rows).data());
  state.SetItemsProcessed(state.iterations() * rows);
}
BENCHMARK(BM_MlpForward)->Arg(1)->Arg(256);

void BM_MlpBackward(benchmark::State& state) {
  Rng rng(4);
  const int in = football::ObservationSize(football::EnvConfig{});
  const int rows = 256;
  const trainer::Mlp net({in, 64, 32, football::kNumActions}, rng);
  std::vector<double> x(static_cast<size_t>(rows) * in), w(static_cast<size_t>(rows) * football::kNumActions);
  for (double& v : x) v = rng.Uniform(-1, 1);
  for (double& v : w) v = rng.Uniform(-1, 1);
  trainer::Mlp::Cache cache;
  for (auto _ : state) {
    net.Forward(x, rows, &cache);
    benchmark::DoNotOptimize(net.Backward(cache, w).data());
  }
  state.SetItemsProcessed(state.iterations() * rows);
}
BENCHMARK(BM_MlpBackward);

}  // namespace
}  // namespace rewardlab

BENCHMARK_MAIN();
