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

#include "rewardlab/tabular/verify.h"

#include <algorithm>
#include <chrono>
#include <cmath>

#include <nlohmann/json.hpp>

#include "rewardlab/common/rng.h"
#include "rewardlab/tabular/mdp.h"
#include "rewardlab/tabular/solvers.h"

namespace rewardlab::tabular {
namespace {

using Clock = std::chrono::steady_clock;

double Since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

RandomMdpOptions DrawMdpShape(const VerifyOptions& options, Rng& rng, bool episodic) {
  RandomMdpOptions shape;
  shape.num_states = 2 + static_cast<int>(rng.UniformInt(std::max(1, options.max_states - 1)));
  shape.num_actions = 1 + static_cast<int>(rng.UniformInt(std::max(1, options.max_actions)));
  shape.num_terminals = episodic ? 1 + static_cast<int>(rng.UniformInt(shape.num_states - 1))
                                 : static_cast<int>(rng.UniformInt(shape.num_states));
  shape.discount = rng.Uniform(0.5, 0.99);
  return shape;
}

}  // namespace

bool VerifyReport::passed() const {
  return std::all_of(records.begin(), records.end(),
                     [](const TheoremRecord& r) { return r.passed(); });
}

std::string VerifyReport::ToJson() const {
  nlohmann::json out;
  out["theorems"] = nlohmann::json::array();
  for (const auto& r : records) {
    out["theorems"].push_back({{"name", r.name},
                               {"instances", r.instances},
                               {"max_residual", r.max_residual},
                               {"failures", r.failures},
                               {"seconds", r.seconds},
                               {"pass", r.passed()}});
  }
  out["pass"] = passed();
  return out.dump(2);
}

TheoremRecord VerifyReturnIdentity(const VerifyOptions& options) {
  const auto start = Clock::now();
  TheoremRecord rec{"return_identity"};
  Rng rng(DeriveSeed(options.seed, 1));
  while (rec.instances < options.return_instances) {
    const TabularMDP mdp = RandomMdp(DrawMdpShape(options, rng, true), rng);
    const PotentialTable phi = RandomPotential(mdp.terminal, rng);
    const Trajectory traj = SampleEpisode(mdp, 10000, rng);
    if (traj.steps.empty() || !mdp.terminal[traj.steps.back().next_state]) continue;
    const ReturnIdentity id = ShapedReturnIdentityCheck(traj, phi, mdp.discount);
    rec.max_residual = std::max(rec.max_residual, id.residual);
    if (!(id.residual < options.tolerance)) ++rec.failures;
    ++rec.instances;
  }
  rec.seconds = Since(start);
  return rec;
}

TheoremRecord VerifyPolicyInvariance(const VerifyOptions& options) {
  const auto start = Clock::now();
  TheoremRecord rec{"optimal_policy_invariance"};
  Rng rng(DeriveSeed(options.seed, 2));
  for (; rec.instances < options.policy_instances; ++rec.instances) {
    RandomMdpOptions shape = DrawMdpShape(options, rng, false);
    shape.discount = std::min(shape.discount, 0.95);
    const TabularMDP mdp = RandomMdp(shape, rng);
    const PotentialTable phi = RandomPotential(mdp.terminal, rng);
    const auto base = ValueIteration(mdp, 1e-13);
    const auto shaped = ValueIteration(ShapeMdp(mdp, phi), 1e-13);
    bool ok = base.greedy == shaped.greedy;
    for (int s = 0; s < mdp.num_states; ++s) {
      for (int a = 0; a < mdp.num_actions; ++a) {
        const size_t k = static_cast<size_t>(s) * mdp.num_actions + a;
        const double residual = std::abs((shaped.q[k] - base.q[k]) + phi[s]);
        rec.max_residual = std::max(rec.max_residual, residual);
        if (!(residual < options.q_tolerance)) ok = false;
      }
    }
    if (!ok) ++rec.failures;
  }
  rec.seconds = Since(start);
  return rec;
}

TheoremRecord VerifyTdEquivalence(const VerifyOptions& options) {
  const auto start = Clock::now();
  TheoremRecord rec{"td_increment_equality"};
  Rng rng(DeriveSeed(options.seed, 3));
  for (; rec.instances < options.td_instances; ++rec.instances) {
    RandomMdpOptions shape = DrawMdpShape(options, rng, true);
    const TabularMDP mdp = RandomMdp(shape, rng);
    const PotentialTable phi = RandomPotential(mdp.terminal, rng);
    const double dev = TdUpdateEquivalenceCheck(mdp, phi, options.td_steps,
                                                {0.1, rng.NextU64()});
    rec.max_residual = std::max(rec.max_residual, dev);
    if (!(dev < options.tolerance)) ++rec.failures;
  }
  rec.seconds = Since(start);
  return rec;
}

TheoremRecord VerifyNashInvariance(const VerifyOptions& options) {
  const auto start = Clock::now();
  TheoremRecord rec{"nash_set_invariance"};
  Rng rng(DeriveSeed(options.seed, 4));
  for (; rec.instances < options.nash_instances; ++rec.instances) {
    RandomGameOptions shape;
    shape.num_states = 2 + static_cast<int>(rng.UniformInt(std::max(1, options.nash_max_states - 1)));
    shape.num_terminals = static_cast<int>(rng.UniformInt(shape.num_states));
    shape.num_actions = options.nash_actions;
    shape.discount = rng.Uniform(0.5, 0.95);
    const MarkovGame game = RandomGame(shape, rng);
    const PotentialTable phi = RandomPotential(game.terminal, rng);
    // Non-empty player subset, encoded as a bitmask.
    const int mask = 1 + static_cast<int>(rng.UniformInt(3));
    std::vector<int> players;
    for (int i = 0; i < 2; ++i) {
      if (mask & (1 << i)) players.push_back(i);
    }
    const NashOptions nash{options.tolerance};
    const auto before = EnumerateDeterministicNash(game, nash);
    const auto after = EnumerateDeterministicNash(ShapeGame(game, players, phi), nash);
    if (before != after) ++rec.failures;
  }
  rec.seconds = Since(start);
  return rec;
}

VerifyReport RunVerification(const VerifyOptions& options) {
  VerifyReport report;
  report.records.push_back(VerifyReturnIdentity(options));
  report.records.push_back(VerifyPolicyInvariance(options));
  report.records.push_back(VerifyTdEquivalence(options));
  report.records.push_back(VerifyNashInvariance(options));
  return report;
}

}  // namespace rewardlab::tabular
