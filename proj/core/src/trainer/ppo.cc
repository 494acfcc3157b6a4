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

#include "rewardlab/trainer/ppo.h"

#include <algorithm>
#include <cmath>

#include "rewardlab/common/error.h"

namespace rewardlab::trainer {

std::vector<double> Gae(std::span<const double> rewards, std::span<const double> values,
                        std::span<const uint8_t> dones, double gamma, double lambda) {
  const size_t n = rewards.size();
  Require(values.size() == n + 1 && dones.size() == n, ErrorCode::kDimension,
          "GAE inputs need n rewards, n dones and n + 1 values");
  std::vector<double> adv(n, 0.0);
  double next = 0.0;
  for (size_t t = n; t-- > 0;) {
    const double live = dones[t] ? 0.0 : 1.0;
    const double delta = rewards[t] + gamma * live * values[t + 1] - values[t];
    next = delta + gamma * lambda * live * next;
    adv[t] = next;
  }
  return adv;
}

std::vector<double> TdTargets(std::span<const double> rewards,
                              std::span<const double> next_values,
                              std::span<const uint8_t> dones, double gamma) {
  Require(next_values.size() == rewards.size() && dones.size() == rewards.size(),
          ErrorCode::kDimension, "TD target inputs differ in length");
  std::vector<double> y(rewards.size());
  for (size_t t = 0; t < rewards.size(); ++t) {
    y[t] = rewards[t] + (dones[t] ? 0.0 : gamma * next_values[t]);
  }
  return y;
}

void NormalizeAdvantages(std::vector<double>& adv) {
  if (adv.empty()) return;
  double mean = 0.0;
  for (double a : adv) mean += a;
  mean /= adv.size();
  double var = 0.0;
  for (double a : adv) var += (a - mean) * (a - mean);
  const double sd = std::sqrt(var / adv.size());
  for (double& a : adv) a = sd < 1e-8 ? a - mean : (a - mean) / sd;
}

std::vector<double> LogSoftmax(std::span<const double> logits, int n) {
  std::vector<double> out(logits.size());
  for (size_t r = 0; r < logits.size() / n; ++r) {
    const double* z = logits.data() + r * n;
    const double top = *std::max_element(z, z + n);
    double sum = 0.0;
    for (int k = 0; k < n; ++k) sum += std::exp(z[k] - top);
    const double lse = top + std::log(sum);
    for (int k = 0; k < n; ++k) out[r * n + k] = z[k] - lse;
  }
  return out;
}

double CriticLoss(const Mlp& critic, std::span<const double> obs, int rows,
                  std::span<const double> targets, std::vector<double>* grad) {
  Require(critic.output_size() == 1 && targets.size() == static_cast<size_t>(rows),
          ErrorCode::kDimension, "critic batch mismatch");
  Mlp::Cache cache;
  const std::vector<double> v = critic.Forward(obs, rows, grad ? &cache : nullptr);
  double loss = 0.0;
  std::vector<double> dv(rows);
  for (int i = 0; i < rows; ++i) {
    const double e = v[i] - targets[i];
    loss += e * e;
    dv[i] = 2.0 * e / rows;
  }
  if (grad) *grad = critic.Backward(cache, dv);
  return loss / rows;
}

double ActorLoss(const Mlp& actor, const ActorBatch& b, double clip_eps,
                 std::vector<double>* grad, ActorStats* stats) {
  const int n = actor.output_size();
  Require(b.actions.size() == static_cast<size_t>(b.rows) &&
              b.old_logp.size() == static_cast<size_t>(b.rows) &&
              b.advantages.size() == static_cast<size_t>(b.rows),
          ErrorCode::kDimension, "actor batch mismatch");
  Mlp::Cache cache;
  const std::vector<double> logits = actor.Forward(b.obs, b.rows, grad ? &cache : nullptr);
  const std::vector<double> logp = LogSoftmax(logits, n);
  std::vector<double> dz(logits.size(), 0.0);
  double loss = 0.0, clipped = 0.0, kl = 0.0, entropy = 0.0;
  for (int i = 0; i < b.rows; ++i) {
    const int a = b.actions[i];
    const double lp = logp[static_cast<size_t>(i) * n + a];
    const double ratio = std::exp(lp - b.old_logp[i]);
    const double adv = b.advantages[i];
    const double plain = ratio * adv;
    const double bounded = std::clamp(ratio, 1.0 - clip_eps, 1.0 + clip_eps) * adv;
    loss -= std::min(plain, bounded);
    if (ratio < 1.0 - clip_eps || ratio > 1.0 + clip_eps) clipped += 1.0;
    kl += b.old_logp[i] - lp;
    for (int k = 0; k < n; ++k) {
      const double l = logp[static_cast<size_t>(i) * n + k];
      entropy -= std::exp(l) * l;
    }
    // The unclipped branch carries the gradient; the clipped one is flat.
    if (grad && plain <= bounded) {
      const double dlp = -adv * ratio / b.rows;
      for (int k = 0; k < n; ++k) {
        const double p = std::exp(logp[static_cast<size_t>(i) * n + k]);
        dz[static_cast<size_t>(i) * n + k] = dlp * ((k == a ? 1.0 : 0.0) - p);
      }
    }
  }
  if (grad) *grad = actor.Backward(cache, dz);
  if (stats) {
    stats->clip_fraction = clipped / b.rows;
    stats->approx_kl = kl / b.rows;
    stats->entropy = entropy / b.rows;
  }
  return loss / b.rows;
}

double Entropy(const Mlp& actor, std::span<const double> obs, int rows,
               std::vector<double>* grad) {
  const int n = actor.output_size();
  Mlp::Cache cache;
  const std::vector<double> logits = actor.Forward(obs, rows, grad ? &cache : nullptr);
  const std::vector<double> logp = LogSoftmax(logits, n);
  std::vector<double> dz(logits.size(), 0.0);
  double total = 0.0;
  for (int i = 0; i < rows; ++i) {
    const double* l = logp.data() + static_cast<size_t>(i) * n;
    double h = 0.0;
    for (int k = 0; k < n; ++k) h -= std::exp(l[k]) * l[k];
    total += h;
    // dH/dz_j = -p_j (log p_j + H)
    for (int k = 0; k < n; ++k) {
      dz[static_cast<size_t>(i) * n + k] = -std::exp(l[k]) * (l[k] + h) / rows;
    }
  }
  if (grad) *grad = actor.Backward(cache, dz);
  return total / rows;
}

}  // namespace rewardlab::trainer
