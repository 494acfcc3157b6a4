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

#ifndef REWARDLAB_TRAINER_TRAINER_H_
#define REWARDLAB_TRAINER_TRAINER_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "rewardlab/football/config.h"
#include "rewardlab/metrics/metrics.h"
#include "rewardlab/selector/selector.h"
#include "rewardlab/shaping/engine.h"
#include "rewardlab/shaping/reward.h"
#include "rewardlab/trainer/mlp.h"

namespace rewardlab::trainer {

struct TrainerConfig {
  double gamma = 0.995;
  double gae_lambda = 0.95;
  double clip_eps = 0.2;
  int ppo_epochs = 10;
  int minibatches = 4;
  int workers = 8;
  int rollout_length = 301;
  double learning_rate = 5e-4;
  int epochs = 300;
  std::vector<int> hidden = {64, 32};
  double entropy_coef = 0.01;
  double max_grad_norm = 10.0;  // 0 disables clipping
  bool normalize_advantages = true;
  bool centralized_critic = false;  // critic sees global state + agent one-hot
  std::string critic_target = "td";  // "td": r + gamma V(o'); "gae": A + V(o)
  uint64_t seed = 1;
  int threads = 0;  // rollout threads; 0 = min(workers, hardware)

  // Shaping. An empty skill trains without potentials.
  std::string skill;
  double rho = 0.5;
  bool normalize_potential = true;
  bool adaptive = false;  // reselect the skill every selector.cycle epochs
  selector::SelectorConfig selector;

  std::string output_dir;  // metrics.csv, checkpoints, dialogue log, replays
  int checkpoint_every = 0;  // epochs; 0 = final checkpoint only
  int replay_stride = 5;

  void Validate() const;  // throws kConfig
};

void to_json(nlohmann::json& j, const TrainerConfig& c);
// Rejects unknown keys.
void from_json(const nlohmann::json& j, TrainerConfig& c);
// SHA-256 of the canonical JSON of both configs, ignoring output_dir and threads.
std::string ConfigHash(const TrainerConfig& config, const football::EnvConfig& env);

struct UpdateStats {
  double actor_loss = 0.0;
  double critic_loss = 0.0;
  double entropy = 0.0;
  double clip_fraction = 0.0;
  double approx_kl = 0.0;
  int samples = 0;
};

struct Checkpoint {
  TrainerConfig config;
  football::EnvConfig env;
  std::string config_hash;
  int epoch = 0;
  std::string active_skill;
  Mlp actor;
  Mlp critic;
};

// Layout (JSON): {"format": "rewardlab-checkpoint", "version": 1,
// "config_hash", "config", "env", "epoch", "active_skill", "actor", "critic"}
// with networks as {"sizes", "params"}.
void SaveCheckpoint(const Checkpoint& ckpt, const std::string& path);
// Throws kLoad on a malformed file or a hash that does not match the
// embedded configs.
Checkpoint LoadCheckpoint(const std::string& path);

// MAPPO-lite: home outfield agents share one actor and one critic.
//
// Each epoch: every worker collects rollout_length steps with the current
// parameters (episodes continue across epochs), potentials of all visited
// states are computed in one batch per worker, rewards are shaped as
// r + rho * (gamma phi' - phi), advantages come from GAE, then ppo_epochs
// passes of minibatch updates run on actor and critic. After the first epoch
// of each skill phase the potential normalizer freezes; shaping is zero
// during that calibration epoch.
class Trainer {
 public:
  Trainer(TrainerConfig config, football::EnvConfig env,
          std::shared_ptr<shaping::PotentialEngine> engine = nullptr,
          std::shared_ptr<selector::SelectionBackend> backend = nullptr);
  ~Trainer();

  // Runs one epoch and returns its record. Throws kNumeric (after writing a
  // snapshot when output_dir is set) if a loss becomes non-finite.
  metrics::EpochRecord RunEpoch();
  // Runs the remaining epochs, writing outputs if output_dir is set.
  std::vector<metrics::EpochRecord> Train(
      const std::function<void(const metrics::EpochRecord&, const UpdateStats&)>& on_epoch = {});

  int epoch() const { return epoch_; }
  const Mlp& actor() const { return actor_; }
  const Mlp& critic() const { return critic_; }
  const UpdateStats& last_update() const { return last_update_; }
  std::string active_skill() const;
  const shaping::PotentialNormalizer& normalizer() const { return normalizer_; }
  const selector::SkillSelector* skill_selector() const { return selector_.get(); }
  Checkpoint MakeCheckpoint() const;

 private:
  struct Worker;
  struct Rollout;

  void CollectRollout(Worker& w, Rollout& out) const;
  std::vector<double> CriticInput(const football::MatchState& s, int agent_index) const;
  UpdateStats Update(const std::vector<Rollout>& rollouts);

  TrainerConfig config_;
  football::EnvConfig env_;
  std::shared_ptr<shaping::PotentialEngine> engine_;
  std::unique_ptr<selector::SkillSelector> selector_;
  selector::DialogueLog dialogue_;
  shaping::PotentialNormalizer normalizer_;
  std::vector<std::unique_ptr<Worker>> workers_;
  Mlp actor_;
  Mlp critic_;
  Adam actor_opt_;
  Adam critic_opt_;
  Rng shuffle_rng_;
  int epoch_ = 0;
  int obs_size_ = 0;
  int critic_size_ = 0;
  int num_agents_ = 0;
  UpdateStats last_update_;
  std::vector<football::MatchState> replay_states_;
};

struct EvalResult {
  metrics::EpochRecord summary;
  std::vector<metrics::EpisodeLog> episodes;
};

// Plays `episodes` episodes with the checkpoint's actor (sampling, or argmax
// when greedy) against the scripted side of `env`. Throws kLoad if the env
// does not match the network's input size.
EvalResult Evaluate(const Checkpoint& ckpt, const football::EnvConfig& env, int episodes,
                    uint64_t seed, bool greedy = false);

}  // namespace rewardlab::trainer

#endif  // REWARDLAB_TRAINER_TRAINER_H_
