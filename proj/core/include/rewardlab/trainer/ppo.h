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

#ifndef REWARDLAB_TRAINER_PPO_H_
#define REWARDLAB_TRAINER_PPO_H_

#include <span>
#include <vector>

#include "rewardlab/trainer/mlp.h"

namespace rewardlab::trainer {

// Advantages by reverse recursion over one agent's step sequence.
//   delta_t = r_t + gamma * (1 - done_t) * values[t+1] - values[t]
//   A_t     = delta_t + gamma * lambda * (1 - done_t) * A_{t+1}
// `values` has one more entry than `rewards`: the bootstrap value of the
// observation after the last step (ignored if that step is terminal).
// Throws kDimension on length mismatch.
std::vector<double> Gae(std::span<const double> rewards, std::span<const double> values,
                        std::span<const uint8_t> dones, double gamma, double lambda);

// y_t = r_t + gamma * next_values[t], with next_values[t] taken as 0 at
// terminal steps.
std::vector<double> TdTargets(std::span<const double> rewards,
                              std::span<const double> next_values,
                              std::span<const uint8_t> dones, double gamma);

// In place: mean 0, std 1 (population), left unscaled when std < 1e-8.
void NormalizeAdvantages(std::vector<double>& adv);

// Row-wise log-softmax of rows x n logits.
std::vector<double> LogSoftmax(std::span<const double> logits, int n);

// mean((y - V(o))^2). When grad is non-null it receives d loss / d params.
double CriticLoss(const Mlp& critic, std::span<const double> obs, int rows,
                  std::span<const double> targets, std::vector<double>* grad = nullptr);

struct ActorBatch {
  std::span<const double> obs;
  int rows = 0;
  std::span<const int> actions;
  std::span<const double> old_logp;
  std::span<const double> advantages;
};

struct ActorStats {
  double clip_fraction = 0.0;
  double approx_kl = 0.0;  // mean(old_logp - new_logp)
  double entropy = 0.0;
};

// mean(-min(r A, clip(r, 1 - eps, 1 + eps) A)), r = exp(logp - old_logp).
double ActorLoss(const Mlp& actor, const ActorBatch& batch, double clip_eps,
                 std::vector<double>* grad = nullptr, ActorStats* stats = nullptr);

// Mean policy entropy over the batch observations.
double Entropy(const Mlp& actor, std::span<const double> obs, int rows,
               std::vector<double>* grad = nullptr);

}  // namespace rewardlab::trainer

#endif  // REWARDLAB_TRAINER_PPO_H_
