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

#include "rewardlab/trainer/trainer.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "rewardlab/common/digest.h"
#include "rewardlab/common/error.h"
#include "rewardlab/football/env.h"
#include "rewardlab/render/rasterizer.h"
#include "rewardlab/shaping/rules.h"
#include "rewardlab/trainer/ppo.h"

namespace rewardlab::trainer {

using football::MatchState;
namespace fs = std::filesystem;

namespace {

constexpr char kCheckpointFormat[] = "rewardlab-checkpoint";
constexpr int kCheckpointVersion = 1;

// Tags for DeriveSeed.
constexpr uint64_t kActorTag = 1;
constexpr uint64_t kCriticTag = 2;
constexpr uint64_t kShuffleTag = 3;
constexpr uint64_t kWorkerTag = 100;

void CheckFinite(double x, const char* what) {
  Require(std::isfinite(x), ErrorCode::kNumeric, std::string("non-finite ") + what);
}

}  // namespace

void TrainerConfig::Validate() const {
  auto check = [](bool ok, const std::string& msg) { Require(ok, ErrorCode::kConfig, msg); };
  check(gamma >= 0.0 && gamma < 1.0, "gamma must be in [0, 1)");
  check(gae_lambda >= 0.0 && gae_lambda <= 1.0, "gae_lambda must be in [0, 1]");
  check(clip_eps > 0.0 && clip_eps < 1.0, "clip_eps must be in (0, 1)");
  check(ppo_epochs >= 1, "ppo_epochs must be >= 1");
  check(minibatches >= 1, "minibatches must be >= 1");
  check(workers >= 1, "workers must be >= 1");
  check(rollout_length >= 1, "rollout_length must be >= 1");
  check(learning_rate > 0.0, "learning_rate must be > 0");
  check(epochs >= 0, "epochs must be >= 0");
  check(!hidden.empty() && std::all_of(hidden.begin(), hidden.end(), [](int h) { return h > 0; }),
        "hidden sizes must be positive");
  check(entropy_coef >= 0.0, "entropy_coef must be >= 0");
  check(max_grad_norm >= 0.0, "max_grad_norm must be >= 0");
  check(critic_target == "td" || critic_target == "gae", "critic_target must be td or gae");
  check(threads >= 0, "threads must be >= 0");
  check(rho >= 0.0 && std::isfinite(rho), "rho must be >= 0");
  check(!adaptive || !skill.empty(), "adaptive selection needs an initial skill");
  check(checkpoint_every >= 0, "checkpoint_every must be >= 0");
  check(replay_stride >= 1, "replay_stride must be >= 1");
}

void to_json(nlohmann::json& j, const TrainerConfig& c) {
  j = {{"gamma", c.gamma},
       {"gae_lambda", c.gae_lambda},
       {"clip_eps", c.clip_eps},
       {"ppo_epochs", c.ppo_epochs},
       {"minibatches", c.minibatches},
       {"workers", c.workers},
       {"rollout_length", c.rollout_length},
       {"learning_rate", c.learning_rate},
       {"epochs", c.epochs},
       {"hidden", c.hidden},
       {"entropy_coef", c.entropy_coef},
       {"max_grad_norm", c.max_grad_norm},
       {"normalize_advantages", c.normalize_advantages},
       {"centralized_critic", c.centralized_critic},
       {"critic_target", c.critic_target},
       {"seed", c.seed},
       {"threads", c.threads},
       {"skill", c.skill},
       {"rho", c.rho},
       {"normalize_potential", c.normalize_potential},
       {"adaptive", c.adaptive},
       {"selector", c.selector},
       {"output_dir", c.output_dir},
       {"checkpoint_every", c.checkpoint_every},
       {"replay_stride", c.replay_stride}};
}

void from_json(const nlohmann::json& j, TrainerConfig& c) {
  const nlohmann::json defaults = TrainerConfig{};
  for (const auto& [key, value] : j.items()) {
    Require(defaults.contains(key), ErrorCode::kConfig, "unknown trainer key '" + key + "'");
  }
  try {
    auto get = [&](const char* key, auto& field) {
      if (j.contains(key)) j.at(key).get_to(field);
    };
    get("gamma", c.gamma);
    get("gae_lambda", c.gae_lambda);
    get("clip_eps", c.clip_eps);
    get("ppo_epochs", c.ppo_epochs);
    get("minibatches", c.minibatches);
    get("workers", c.workers);
    get("rollout_length", c.rollout_length);
    get("learning_rate", c.learning_rate);
    get("epochs", c.epochs);
    get("hidden", c.hidden);
    get("entropy_coef", c.entropy_coef);
    get("max_grad_norm", c.max_grad_norm);
    get("normalize_advantages", c.normalize_advantages);
    get("centralized_critic", c.centralized_critic);
    get("critic_target", c.critic_target);
    get("seed", c.seed);
    get("threads", c.threads);
    get("skill", c.skill);
    get("rho", c.rho);
    get("normalize_potential", c.normalize_potential);
    get("adaptive", c.adaptive);
    get("selector", c.selector);
    get("output_dir", c.output_dir);
    get("checkpoint_every", c.checkpoint_every);
    get("replay_stride", c.replay_stride);
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kConfig, std::string("bad trainer config: ") + e.what());
  }
}

std::string ConfigHash(const TrainerConfig& config, const football::EnvConfig& env) {
  nlohmann::json c = config;
  // Where outputs go and how many threads collect them do not change results.
  c.erase("output_dir");
  c.erase("threads");
  return Sha256Hex(nlohmann::json{{"trainer", c}, {"env", env}}.dump());
}

void SaveCheckpoint(const Checkpoint& ckpt, const std::string& path) {
  const nlohmann::json j = {{"format", kCheckpointFormat},
                            {"version", kCheckpointVersion},
                            {"config_hash", ckpt.config_hash},
                            {"config", ckpt.config},
                            {"env", ckpt.env},
                            {"epoch", ckpt.epoch},
                            {"active_skill", ckpt.active_skill},
                            {"actor", ckpt.actor.ToJson()},
                            {"critic", ckpt.critic.ToJson()}};
  std::ofstream out(path);
  Require(out.good(), ErrorCode::kIo, "cannot write checkpoint " + path);
  out << j.dump() << '\n';
}

Checkpoint LoadCheckpoint(const std::string& path) {
  std::ifstream in(path);
  Require(in.good(), ErrorCode::kLoad, "cannot read checkpoint " + path);
  Checkpoint c;
  try {
    nlohmann::json j;
    in >> j;
    Require(j.at("format") == kCheckpointFormat && j.at("version") == kCheckpointVersion,
            ErrorCode::kLoad, path + ": not a version 1 checkpoint");
    c.config = j.at("config").get<TrainerConfig>();
    c.env = j.at("env").get<football::EnvConfig>();
    c.config_hash = j.at("config_hash").get<std::string>();
    c.epoch = j.at("epoch").get<int>();
    c.active_skill = j.at("active_skill").get<std::string>();
    c.actor = Mlp::FromJson(j.at("actor"));
    c.critic = Mlp::FromJson(j.at("critic"));
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kLoad, path + ": " + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kLoad) throw;
    Fail(ErrorCode::kLoad, path + ": " + e.what());
  }
  Require(ConfigHash(c.config, c.env) == c.config_hash, ErrorCode::kLoad,
          path + ": config hash mismatch");
  Require(c.actor.input_size() == football::ObservationSize(c.env) &&
              c.actor.output_size() == football::kNumActions,
          ErrorCode::kLoad, path + ": actor shape does not match the env config");
  return c;
}

struct Trainer::Worker {
  explicit Worker(const football::EnvConfig& env) : env(env) {}
  football::FootballEnv env;
  Rng rng;
  metrics::EpisodeLog log;
  bool track_replay = false;
  std::vector<MatchState> episode_states;
  std::vector<MatchState> last_episode;
};

struct Trainer::Rollout {
  std::vector<MatchState> states;  // state before each step
  MatchState final_state;          // state after the last step (reset if it ended)
  std::vector<double> obs;         // [t][agent][obs]
  std::vector<double> critic_in;   // [t][agent][critic input]
  std::vector<int> actions;        // [t][agent]
  std::vector<double> logp;        // [t][agent]
  std::vector<double> values;      // [t][agent], t = 0..L (last row bootstraps)
  std::vector<double> env_reward;  // [t]
  std::vector<uint8_t> done;       // [t]
  std::vector<metrics::EpisodeLog> finished;

  std::vector<double> reward;     // [t] shaped
  std::vector<double> advantage;  // [t][agent]
  std::vector<double> target;     // [t][agent]
};

Trainer::Trainer(TrainerConfig config, football::EnvConfig env,
                 std::shared_ptr<shaping::PotentialEngine> engine,
                 std::shared_ptr<selector::SelectionBackend> backend)
    : config_(std::move(config)), env_(env), engine_(std::move(engine)) {
  config_.Validate();
  env_.Validate();
  if (!config_.skill.empty()) {
    Require(engine_ != nullptr, ErrorCode::kConfig, "shaping skill set without a potential engine");
    engine_->pool().Find(config_.skill);
  }
  if (config_.adaptive) {
    selector::SelectorConfig sc = config_.selector;
    sc.initial_skill = config_.skill;
    selector_ = std::make_unique<selector::SkillSelector>(engine_->pool(), sc, std::move(backend));
    if (!config_.output_dir.empty()) {
      fs::create_directories(config_.output_dir);
      dialogue_ = selector::DialogueLog((fs::path(config_.output_dir) / "dialogue.jsonl").string());
      selector_->set_log(&dialogue_);
    }
  }
  football::FootballEnv probe(env_);
  num_agents_ = probe.num_agents();
  obs_size_ = football::ObservationSize(env_);
  critic_size_ = config_.centralized_critic ? football::GlobalStateSize(env_) + num_agents_
                                            : obs_size_;

  std::vector<int> actor_sizes = {obs_size_};
  actor_sizes.insert(actor_sizes.end(), config_.hidden.begin(), config_.hidden.end());
  actor_sizes.push_back(football::kNumActions);
  std::vector<int> critic_sizes = {critic_size_};
  critic_sizes.insert(critic_sizes.end(), config_.hidden.begin(), config_.hidden.end());
  critic_sizes.push_back(1);
  Rng actor_rng(DeriveSeed(config_.seed, kActorTag));
  Rng critic_rng(DeriveSeed(config_.seed, kCriticTag));
  actor_ = Mlp(actor_sizes, actor_rng, 0.01);
  critic_ = Mlp(critic_sizes, critic_rng, 1.0);
  const AdamConfig adam{config_.learning_rate, 0.9, 0.999, 1e-8};
  actor_opt_ = Adam(actor_.num_params(), adam);
  critic_opt_ = Adam(critic_.num_params(), adam);
  shuffle_rng_ = Rng(DeriveSeed(config_.seed, kShuffleTag));

  for (int w = 0; w < config_.workers; ++w) {
    auto worker = std::make_unique<Worker>(env_);
    const uint64_t seed = DeriveSeed(config_.seed, kWorkerTag + w);
    worker->rng = Rng(seed);
    worker->env.Reset(worker->rng.NextU64());
    worker->track_replay = w == 0 && config_.adaptive && !config_.output_dir.empty();
    if (worker->track_replay) worker->episode_states.push_back(worker->env.state());
    workers_.push_back(std::move(worker));
  }
}

Trainer::~Trainer() = default;

std::string Trainer::active_skill() const {
  return selector_ ? selector_->active_skill() : config_.skill;
}

std::vector<double> Trainer::CriticInput(const MatchState& s, int agent_index) const {
  std::vector<double> x = football::GlobalState(s);
  for (int a = 0; a < num_agents_; ++a) x.push_back(a == agent_index ? 1.0 : 0.0);
  return x;
}

void Trainer::CollectRollout(Worker& w, Rollout& out) const {
  const int L = config_.rollout_length, A = num_agents_, nA = football::kNumActions;
  out = Rollout{};
  out.states.reserve(L);
  out.obs.reserve(static_cast<size_t>(L) * A * obs_size_);
  std::vector<double> x, cx;
  auto gather = [&](const MatchState& s) {
    const auto observations = w.env.Observations();
    x.clear();
    for (const auto& o : observations) x.insert(x.end(), o.begin(), o.end());
    if (config_.centralized_critic) {
      cx.clear();
      for (int a = 0; a < A; ++a) {
        const auto c = CriticInput(s, a);
        cx.insert(cx.end(), c.begin(), c.end());
      }
    }
  };
  std::vector<int> actions(A);
  for (int t = 0; t < L; ++t) {
    const MatchState& s = w.env.state();
    out.states.push_back(s);
    gather(s);
    const std::vector<double>& cin = config_.centralized_critic ? cx : x;
    const std::vector<double> logp = LogSoftmax(actor_.Forward(x, A), nA);
    const std::vector<double> v = critic_.Forward(cin, A);
    for (int a = 0; a < A; ++a) {
      std::vector<double> p(nA);
      for (int k = 0; k < nA; ++k) p[k] = std::exp(logp[static_cast<size_t>(a) * nA + k]);
      actions[a] = w.rng.Categorical(p);
      out.actions.push_back(actions[a]);
      out.logp.push_back(logp[static_cast<size_t>(a) * nA + actions[a]]);
      out.values.push_back(v[a]);
    }
    out.obs.insert(out.obs.end(), x.begin(), x.end());
    if (config_.centralized_critic) out.critic_in.insert(out.critic_in.end(), cx.begin(), cx.end());
    w.log.formation.push_back(shaping::rules::CorrectFormation(s, {}));

    football::StepResult r = w.env.Step(actions);
    const MatchState& next = w.env.state();
    out.env_reward.push_back(r.reward);
    out.done.push_back(r.done ? 1 : 0);
    w.log.steps++;
    w.log.env_return += r.reward;
    if (next.possession == football::Team::kHome) w.log.home_possession_steps++;
    w.log.events.insert(w.log.events.end(), r.events.begin(), r.events.end());
    if (w.track_replay) w.episode_states.push_back(next);
    if (r.done) {
      w.log.home_score = next.home_score;
      w.log.away_score = next.away_score;
      out.finished.push_back(std::move(w.log));
      w.log = metrics::EpisodeLog{};
      w.env.Reset(w.rng.NextU64());
      if (w.track_replay) {
        w.last_episode = std::move(w.episode_states);
        w.episode_states = {w.env.state()};
      }
    }
  }
  out.final_state = w.env.state();
  gather(out.final_state);
  const std::vector<double> v = critic_.Forward(config_.centralized_critic ? cx : x, A);
  out.values.insert(out.values.end(), v.begin(), v.end());
}

metrics::EpochRecord Trainer::RunEpoch() {
  const int L = config_.rollout_length, A = num_agents_, W = config_.workers;
  std::vector<Rollout> rollouts(W);
  int threads = config_.threads > 0
                    ? config_.threads
                    : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = std::min(threads, W);
  if (threads <= 1) {
    for (int w = 0; w < W; ++w) CollectRollout(*workers_[w], rollouts[w]);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (int k = 0; k < threads; ++k) {
      pool.emplace_back([&, k] {
        try {
          for (int w = k; w < W; w += threads) CollectRollout(*workers_[w], rollouts[w]);
        } catch (...) {
          errors[k] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  // Potentials and shaped rewards.
  const std::string skill = active_skill();
  const bool shaping_on = !skill.empty();
  metrics::ShapingStream stream;
  std::vector<std::vector<double>> phi(W);
  if (shaping_on) {
    for (int w = 0; w < W; ++w) {
      std::vector<MatchState> seq = rollouts[w].states;
      seq.push_back(rollouts[w].final_state);
      phi[w] = engine_->PhiBatch(seq, skill);
    }
  }
  bool calibrating = false;
  if (shaping_on && config_.normalize_potential &&
      normalizer_.phase() == shaping::PotentialNormalizer::Phase::kCalibrating) {
    calibrating = true;
    for (int w = 0; w < W; ++w) {
      for (int t = 0; t < L; ++t) normalizer_.Observe(phi[w][t]);
    }
    normalizer_.Finish();
  }
  auto norm = [&](double raw) {
    return config_.normalize_potential ? normalizer_.Apply(raw) : raw;
  };
  for (int w = 0; w < W; ++w) {
    Rollout& r = rollouts[w];
    r.reward.resize(L);
    for (int t = 0; t < L; ++t) {
      double shaping = 0.0;
      if (shaping_on) {
        const double before = norm(phi[w][t]);
        const double after = r.done[t] ? 0.0 : norm(phi[w][t + 1]);
        if (!calibrating) shaping = shaping::ShapingReward(before, after, config_.gamma);
        stream.raw_potential.push_back(phi[w][t]);
        stream.norm_potential.push_back(before);
      } else {
        stream.raw_potential.push_back(0.0);
        stream.norm_potential.push_back(0.0);
      }
      stream.shaping.push_back(shaping);
      r.reward[t] = shaping::TotalReward(r.env_reward[t], shaping, config_.rho);
    }
    // Advantages and critic targets per agent.
    r.advantage.assign(static_cast<size_t>(L) * A, 0.0);
    r.target.assign(static_cast<size_t>(L) * A, 0.0);
    std::vector<double> values(L + 1), next(L);
    for (int a = 0; a < A; ++a) {
      for (int t = 0; t <= L; ++t) values[t] = r.values[static_cast<size_t>(t) * A + a];
      for (int t = 0; t < L; ++t) next[t] = values[t + 1];
      const std::vector<double> adv =
          Gae(r.reward, values, r.done, config_.gamma, config_.gae_lambda);
      const std::vector<double> y = TdTargets(r.reward, next, r.done, config_.gamma);
      for (int t = 0; t < L; ++t) {
        r.advantage[static_cast<size_t>(t) * A + a] = adv[t];
        r.target[static_cast<size_t>(t) * A + a] =
            config_.critic_target == "td" ? y[t] : adv[t] + values[t];
      }
    }
  }

  last_update_ = Update(rollouts);
  ++epoch_;

  std::vector<metrics::EpisodeLog> finished;
  for (auto& r : rollouts) {
    for (auto& e : r.finished) finished.push_back(std::move(e));
  }
  metrics::EpochRecord record =
      metrics::Aggregate(epoch_, finished, stream, shaping_on ? skill : "none");

  if (selector_) {
    if (!workers_[0]->last_episode.empty()) replay_states_ = workers_[0]->last_episode;
    selector_->RecordEpoch({{"win_rate", record.win_rate}, {"total_shot", record.total_shots}},
                           record.mean_norm_potential);
    std::string manifest;
    if (selector::IsSelectionEpoch(epoch_, config_.selector.cycle) &&
        !config_.output_dir.empty() && !replay_states_.empty()) {
      const fs::path dir = fs::path(config_.output_dir) / "replays" /
                           ("epoch_" + std::to_string(epoch_));
      render::ExportStateFrames(replay_states_, dir.string(), config_.replay_stride);
      manifest = (dir / "manifest.txt").string();
    }
    if (selector_->MaybeSelect(epoch_, manifest)) normalizer_.Reset();
  }
  return record;
}

UpdateStats Trainer::Update(const std::vector<Rollout>& rollouts) {
  const int A = num_agents_;
  std::vector<double> obs, cin, old_logp, adv, target;
  std::vector<int> actions;
  for (const auto& r : rollouts) {
    obs.insert(obs.end(), r.obs.begin(), r.obs.end());
    if (config_.centralized_critic) cin.insert(cin.end(), r.critic_in.begin(), r.critic_in.end());
    actions.insert(actions.end(), r.actions.begin(), r.actions.end());
    old_logp.insert(old_logp.end(), r.logp.begin(), r.logp.end());
    adv.insert(adv.end(), r.advantage.begin(), r.advantage.end());
    target.insert(target.end(), r.target.begin(), r.target.end());
  }
  (void)A;
  const std::vector<double>& critic_src = config_.centralized_critic ? cin : obs;
  const int n = static_cast<int>(actions.size());
  if (config_.normalize_advantages) NormalizeAdvantages(adv);

  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  const int mb = (n + config_.minibatches - 1) / config_.minibatches;
  UpdateStats stats;
  int batches = 0;
  std::vector<double> bx, bc, bl, ba, by;
  std::vector<int> bact;
  for (int e = 0; e < config_.ppo_epochs; ++e) {
    for (int i = n - 1; i > 0; --i) {
      std::swap(order[i], order[static_cast<int>(shuffle_rng_.UniformInt(i + 1))]);
    }
    for (int start = 0; start < n; start += mb) {
      const int rows = std::min(mb, n - start);
      bx.clear(), bc.clear(), bl.clear(), ba.clear(), by.clear(), bact.clear();
      for (int k = start; k < start + rows; ++k) {
        const int i = order[k];
        bx.insert(bx.end(), obs.begin() + static_cast<size_t>(i) * obs_size_,
                  obs.begin() + static_cast<size_t>(i + 1) * obs_size_);
        bc.insert(bc.end(), critic_src.begin() + static_cast<size_t>(i) * critic_size_,
                  critic_src.begin() + static_cast<size_t>(i + 1) * critic_size_);
        bact.push_back(actions[i]);
        bl.push_back(old_logp[i]);
        ba.push_back(adv[i]);
        by.push_back(target[i]);
      }
      ActorStats as;
      std::vector<double> g_actor, g_entropy, g_critic;
      const double actor_loss =
          ActorLoss(actor_, {bx, rows, bact, bl, ba}, config_.clip_eps, &g_actor, &as);
      const double entropy =
          config_.entropy_coef > 0.0 ? Entropy(actor_, bx, rows, &g_entropy) : as.entropy;
      const double critic_loss = CriticLoss(critic_, bc, rows, by, &g_critic);
      if (!std::isfinite(actor_loss) || !std::isfinite(critic_loss) || !std::isfinite(entropy)) {
        if (!config_.output_dir.empty()) {
          fs::create_directories(config_.output_dir);
          const nlohmann::json snap = {{"epoch", epoch_ + 1},
                                       {"ppo_epoch", e},
                                       {"actor_loss", std::to_string(actor_loss)},
                                       {"critic_loss", std::to_string(critic_loss)},
                                       {"entropy", std::to_string(entropy)},
                                       {"actor", actor_.ToJson()},
                                       {"critic", critic_.ToJson()}};
          std::ofstream((fs::path(config_.output_dir) / "nan_snapshot.json").string())
              << snap.dump() << '\n';
        }
        CheckFinite(actor_loss, "actor loss");
        CheckFinite(critic_loss, "critic loss");
        CheckFinite(entropy, "entropy");
      }
      if (config_.entropy_coef > 0.0) {
        for (size_t k = 0; k < g_actor.size(); ++k) g_actor[k] -= config_.entropy_coef * g_entropy[k];
      }
      ClipGradNorm(g_actor, config_.max_grad_norm);
      ClipGradNorm(g_critic, config_.max_grad_norm);
      actor_opt_.Step(actor_.params(), g_actor);
      critic_opt_.Step(critic_.params(), g_critic);
      stats.actor_loss += actor_loss;
      stats.critic_loss += critic_loss;
      stats.entropy += entropy;
      stats.clip_fraction += as.clip_fraction;
      stats.approx_kl += as.approx_kl;
      ++batches;
    }
  }
  if (batches > 0) {
    stats.actor_loss /= batches;
    stats.critic_loss /= batches;
    stats.entropy /= batches;
    stats.clip_fraction /= batches;
    stats.approx_kl /= batches;
  }
  stats.samples = n;
  return stats;
}

Checkpoint Trainer::MakeCheckpoint() const {
  Checkpoint c;
  c.config = config_;
  c.env = env_;
  c.config_hash = ConfigHash(config_, env_);
  c.epoch = epoch_;
  c.active_skill = active_skill();
  c.actor = actor_;
  c.critic = critic_;
  return c;
}

std::vector<metrics::EpochRecord> Trainer::Train(
    const std::function<void(const metrics::EpochRecord&, const UpdateStats&)>& on_epoch) {
  std::unique_ptr<metrics::MetricsWriter> writer;
  const fs::path out = config_.output_dir;
  if (!out.empty()) {
    std::error_code ec;
    fs::create_directories(out, ec);
    Require(!ec, ErrorCode::kIo, "cannot create " + out.string());
    writer = std::make_unique<metrics::MetricsWriter>((out / "metrics.csv").string());
    std::ofstream((out / "config.json").string())
        << nlohmann::json{{"trainer", config_}, {"env", env_}}.dump(2) << '\n';
  }
  std::vector<metrics::EpochRecord> records;
  while (epoch_ < config_.epochs) {
    records.push_back(RunEpoch());
    if (writer) writer->Write(records.back());
    if (on_epoch) on_epoch(records.back(), last_update_);
    if (!out.empty() && config_.checkpoint_every > 0 && epoch_ % config_.checkpoint_every == 0) {
      SaveCheckpoint(MakeCheckpoint(),
                     (out / ("checkpoint_epoch_" + std::to_string(epoch_) + ".json")).string());
    }
  }
  if (!out.empty()) SaveCheckpoint(MakeCheckpoint(), (out / "checkpoint.json").string());
  return records;
}

EvalResult Evaluate(const Checkpoint& ckpt, const football::EnvConfig& env, int episodes,
                    uint64_t seed, bool greedy) {
  Require(episodes >= 1, ErrorCode::kConfig, "episodes must be >= 1");
  Require(ckpt.actor.input_size() == football::ObservationSize(env) &&
              ckpt.actor.output_size() == football::kNumActions,
          ErrorCode::kLoad, "checkpoint actor does not fit this env config");
  football::FootballEnv fenv(env);
  Rng rng(DeriveSeed(seed, kActorTag));
  EvalResult result;
  const int nA = football::kNumActions;
  for (int k = 0; k < episodes; ++k) {
    fenv.Reset(DeriveSeed(seed, kWorkerTag + k));
    metrics::EpisodeLog log;
    std::vector<int> actions(fenv.num_agents());
    for (;;) {
      const MatchState& s = fenv.state();
      std::vector<double> x;
      for (const auto& o : fenv.Observations()) x.insert(x.end(), o.begin(), o.end());
      const std::vector<double> logp = LogSoftmax(ckpt.actor.Forward(x, fenv.num_agents()), nA);
      for (int a = 0; a < fenv.num_agents(); ++a) {
        const double* row = logp.data() + static_cast<size_t>(a) * nA;
        if (greedy) {
          actions[a] = static_cast<int>(std::max_element(row, row + nA) - row);
        } else {
          std::vector<double> p(nA);
          for (int j = 0; j < nA; ++j) p[j] = std::exp(row[j]);
          actions[a] = rng.Categorical(p);
        }
      }
      log.formation.push_back(shaping::rules::CorrectFormation(s, {}));
      const football::StepResult r = fenv.Step(actions);
      const MatchState& next = fenv.state();
      log.steps++;
      log.env_return += r.reward;
      if (next.possession == football::Team::kHome) log.home_possession_steps++;
      log.events.insert(log.events.end(), r.events.begin(), r.events.end());
      if (r.done) {
        log.home_score = next.home_score;
        log.away_score = next.away_score;
        break;
      }
    }
    result.episodes.push_back(std::move(log));
  }
  result.summary = metrics::Aggregate(0, result.episodes, {}, ckpt.active_skill);
  return result;
}

}  // namespace rewardlab::trainer
