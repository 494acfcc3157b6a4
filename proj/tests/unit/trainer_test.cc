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

#include <cmath>
#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "oracles.h"
#include "rewardlab/common/error.h"
#include "rewardlab/common/rng.h"
#include "rewardlab/football/env.h"
#include "rewardlab/shaping/engine.h"
#include "rewardlab/shaping/skill.h"
#include "rewardlab/trainer/mlp.h"
#include "rewardlab/trainer/ppo.h"
#include "rewardlab/trainer/trainer.h"

namespace rewardlab::trainer {
namespace {

namespace fs = std::filesystem;

std::vector<double> RandomVec(Rng& rng, size_t n, double lo = -1, double hi = 1) {
  std::vector<double> v(n);
  for (double& x : v) x = rng.Uniform(lo, hi);
  return v;
}

Mlp RandomNet(Rng& rng, int in, int out) {
  std::vector<int> sizes = {in};
  for (int k = static_cast<int>(rng.UniformInt(3)); k >= 0; --k) {
    sizes.push_back(2 + static_cast<int>(rng.UniformInt(6)));
  }
  sizes.push_back(out);
  Mlp net(sizes, rng, 1.0);
  // Non-zero biases so ReLU kinks are not all at the origin.
  for (double& p : net.params()) p += rng.Uniform(-0.1, 0.1);
  return net;
}

// Evaluates f with net parameters replaced by p.
template <typename F>
auto WithParams(const Mlp& net, F f) {
  return [net = Mlp(net), f](const std::vector<double>& p) mutable {
    net.params() = p;
    return f(net);
  };
}

TEST(GaeTest, RecursionMatchesDoubleSum) {
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    const size_t n = 1 + rng.UniformInt(40);
    const auto r = RandomVec(rng, n);
    const auto v = RandomVec(rng, n + 1);
    std::vector<uint8_t> d(n);
    for (auto& x : d) x = rng.Uniform() < 0.15;
    const double gamma = rng.Uniform(0.8, 1.0), lambda = rng.Uniform(0.0, 1.0);
    const auto a = Gae(r, v, d, gamma, lambda);
    const auto b = oracle::GaeDoubleSum(r, v, d, gamma, lambda);
    for (size_t t = 0; t < n; ++t) ASSERT_NEAR(a[t], b[t], 1e-10);
  }
}

TEST(GaeTest, LambdaOneIsMonteCarloMinusValue) {
  const std::vector<double> r = {1, 0, 2}, v = {0.5, 0.2, 0.1, 9.0};
  const std::vector<uint8_t> d = {0, 0, 1};
  const auto a = Gae(r, v, d, 0.9, 1.0);
  EXPECT_NEAR(a[0], 1 + 0.81 * 2 - 0.5, 1e-12);
  EXPECT_THROW(Gae(r, std::vector<double>{1, 2}, d, 0.9, 1.0), Error);
}

TEST(TdTest, TerminalDropsBootstrap) {
  const auto y = TdTargets(std::vector<double>{1, 2}, std::vector<double>{10, 10},
                           std::vector<uint8_t>{0, 1}, 0.5);
  EXPECT_EQ(y, (std::vector<double>{6, 2}));
}

TEST(PpoMathTest, LogSoftmaxRowsNormalize) {
  Rng rng(2);
  const auto z = RandomVec(rng, 5 * 7, -30, 30);
  const auto l = LogSoftmax(z, 7);
  for (int r = 0; r < 5; ++r) {
    double s = 0.0;
    for (int k = 0; k < 7; ++k) s += std::exp(l[r * 7 + k]);
    EXPECT_NEAR(s, 1.0, 1e-12);
  }
}

TEST(PpoMathTest, NormalizeAdvantages) {
  std::vector<double> a = {1, 2, 3, 4};
  NormalizeAdvantages(a);
  double m = 0, v = 0;
  for (double x : a) m += x / 4;
  for (double x : a) v += (x - m) * (x - m) / 4;
  EXPECT_NEAR(m, 0.0, 1e-12);
  EXPECT_NEAR(v, 1.0, 1e-12);
  std::vector<double> c = {2, 2, 2};
  NormalizeAdvantages(c);
  EXPECT_EQ(c, (std::vector<double>{0, 0, 0}));
}

TEST(GradientTest, MlpBackwardMatchesFiniteDifferences) {
  Rng rng(3);
  for (int i = 0; i < 20; ++i) {
    const int in = 1 + static_cast<int>(rng.UniformInt(4)), out = 1 + static_cast<int>(rng.UniformInt(3));
    const int rows = 1 + static_cast<int>(rng.UniformInt(5));
    const Mlp net = RandomNet(rng, in, out);
    const auto x = RandomVec(rng, static_cast<size_t>(rows) * in);
    const auto w = RandomVec(rng, static_cast<size_t>(rows) * out);
    Mlp::Cache cache;
    net.Forward(x, rows, &cache);
    const auto analytic = net.Backward(cache, w);
    const auto numeric = oracle::NumericGradient(WithParams(net, [&](const Mlp& n) {
      const auto y = n.Forward(x, rows);
      double s = 0;
      for (size_t k = 0; k < y.size(); ++k) s += w[k] * y[k];
      return s;
    }), net.params());
    EXPECT_LT(oracle::MaxRelativeError(analytic, numeric, 1e-4), 1e-4);
  }
}

TEST(GradientTest, CriticLossMatchesFiniteDifferences) {
  Rng rng(4);
  for (int i = 0; i < 20; ++i) {
    const int in = 1 + static_cast<int>(rng.UniformInt(4));
    const int rows = 1 + static_cast<int>(rng.UniformInt(6));
    const Mlp net = RandomNet(rng, in, 1);
    const auto x = RandomVec(rng, static_cast<size_t>(rows) * in);
    const auto y = RandomVec(rng, rows, -2, 2);
    std::vector<double> g;
    CriticLoss(net, x, rows, y, &g);
    const auto numeric = oracle::NumericGradient(
        WithParams(net, [&](const Mlp& n) { return CriticLoss(n, x, rows, y); }), net.params());
    EXPECT_LT(oracle::MaxRelativeError(g, numeric, 1e-4), 1e-4);
  }
}

TEST(GradientTest, ActorLossAndEntropyMatchFiniteDifferences) {
  Rng rng(5);
  for (int i = 0; i < 20; ++i) {
    const int in = 1 + static_cast<int>(rng.UniformInt(4)), acts = 2 + static_cast<int>(rng.UniformInt(4));
    const int rows = 1 + static_cast<int>(rng.UniformInt(6));
    const Mlp net = RandomNet(rng, in, acts);
    const auto x = RandomVec(rng, static_cast<size_t>(rows) * in);
    std::vector<int> a(rows);
    for (int& k : a) k = static_cast<int>(rng.UniformInt(acts));
    // Old log-probs near the current ones so some ratios sit inside the clip range.
    const auto logp = LogSoftmax(net.Forward(x, rows), acts);
    std::vector<double> old(rows);
    for (int r = 0; r < rows; ++r) old[r] = logp[r * acts + a[r]] + rng.Uniform(-0.3, 0.3);
    const auto adv = RandomVec(rng, rows, -2, 2);
    const ActorBatch batch{x, rows, a, old, adv};
    std::vector<double> g;
    ActorLoss(net, batch, 0.2, &g);
    const auto numeric = oracle::NumericGradient(
        WithParams(net, [&](const Mlp& n) { return ActorLoss(n, batch, 0.2); }), net.params());
    EXPECT_LT(oracle::MaxRelativeError(g, numeric, 1e-4), 1e-4);

    std::vector<double> ge;
    Entropy(net, x, rows, &ge);
    const auto numeric_e = oracle::NumericGradient(
        WithParams(net, [&](const Mlp& n) { return Entropy(n, x, rows); }), net.params());
    EXPECT_LT(oracle::MaxRelativeError(ge, numeric_e, 1e-4), 1e-4);
  }
}

TEST(ActorLossTest, StatsAndClipping) {
  Rng rng(6);
  const Mlp net({2, 3}, rng, 1.0);
  const std::vector<double> x = {0.1, 0.2};
  const auto logp = LogSoftmax(net.Forward(x, 1), 3);
  const std::vector<int> a = {1};
  const std::vector<double> old = {logp[1] - 1.0};  // ratio e > 1 + eps
  const std::vector<double> adv = {1.0};
  ActorStats st;
  std::vector<double> g;
  const double loss = ActorLoss(net, {x, 1, a, old, adv}, 0.2, &g, &st);
  EXPECT_NEAR(loss, -1.2, 1e-12);
  EXPECT_EQ(st.clip_fraction, 1.0);
  for (double v : g) EXPECT_EQ(v, 0.0);
}

TEST(AdamTest, FirstStepIsSignTimesRate) {
  Adam opt(3, {0.1, 0.9, 0.999, 1e-8});
  std::vector<double> p = {0, 0, 0};
  opt.Step(p, std::vector<double>{2.0, -0.5, 0.0});
  EXPECT_NEAR(p[0], -0.1, 1e-6);
  EXPECT_NEAR(p[1], 0.1, 1e-6);
  EXPECT_EQ(p[2], 0.0);
  EXPECT_EQ(opt.steps(), 1);
  const Adam back = Adam::FromJson(opt.ToJson(), {0.1, 0.9, 0.999, 1e-8});
  EXPECT_EQ(back.steps(), 1);
}

TEST(AdamTest, ClipGradNorm) {
  std::vector<double> g = {3, 4};
  EXPECT_DOUBLE_EQ(ClipGradNorm(g, 1.0), 5.0);
  EXPECT_NEAR(g[0], 0.6, 1e-15);
  EXPECT_NEAR(g[1], 0.8, 1e-15);
  std::vector<double> h = {3, 4};
  ClipGradNorm(h, 0.0);
  EXPECT_EQ(h, (std::vector<double>{3, 4}));
}

TEST(MlpTest, JsonRoundTripAndHash) {
  Rng rng(7);
  const Mlp net({4, 8, 3}, rng);
  const Mlp back = Mlp::FromJson(net.ToJson());
  EXPECT_EQ(back.params(), net.params());
  EXPECT_EQ(back.ParamHash(), net.ParamHash());
  EXPECT_EQ(net.num_params(), 4u * 8 + 8 + 8 * 3 + 3);
  try {
    Mlp::FromJson(nlohmann::json{{"sizes", {4, 3}}, {"params", {1.0}}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kLoad);
  }
}

TrainerConfig Tiny() {
  TrainerConfig c;
  c.workers = 2;
  c.rollout_length = 64;
  c.ppo_epochs = 2;
  c.minibatches = 2;
  c.hidden = {16};
  c.epochs = 3;
  c.threads = 1;
  return c;
}

std::shared_ptr<shaping::PotentialEngine> Engine() {
  return std::make_shared<shaping::PotentialEngine>(shaping::DefaultSkillPool());
}

std::vector<std::string> HashTrajectory(TrainerConfig c, int epochs) {
  Trainer t(c, football::EnvConfig{}, Engine(), nullptr);
  std::vector<std::string> out;
  for (int e = 0; e < epochs; ++e) {
    t.RunEpoch();
    out.push_back(t.actor().ParamHash() + t.critic().ParamHash());
  }
  return out;
}

TEST(TrainerTest, SameSeedSameParameters) {
  EXPECT_EQ(HashTrajectory(Tiny(), 2), HashTrajectory(Tiny(), 2));
  TrainerConfig other = Tiny();
  other.seed = 2;
  EXPECT_NE(HashTrajectory(Tiny(), 1), HashTrajectory(other, 1));
}

TEST(TrainerTest, ThreadCountDoesNotChangeResults) {
  TrainerConfig many = Tiny();
  many.threads = 2;
  EXPECT_EQ(HashTrajectory(Tiny(), 2), HashTrajectory(many, 2));
}

TEST(TrainerTest, ZeroRhoMatchesUnshaped) {
  TrainerConfig shaped = Tiny();
  shaped.skill = "ball-location";
  shaped.rho = 0.0;
  EXPECT_EQ(HashTrajectory(Tiny(), 3), HashTrajectory(shaped, 3));
  shaped.rho = 0.5;
  EXPECT_NE(HashTrajectory(Tiny(), 3), HashTrajectory(shaped, 3));
}

TEST(TrainerTest, CalibrationEpochHasNoShaping) {
  TrainerConfig c = Tiny();
  c.skill = "ball-location";
  Trainer t(c, football::EnvConfig{}, Engine(), nullptr);
  const auto first = t.RunEpoch();
  EXPECT_EQ(first.mean_shaping, 0.0);
  EXPECT_NEAR(first.mean_norm_potential, 0.0, 1e-9);
  EXPECT_EQ(t.normalizer().phase(), shaping::PotentialNormalizer::Phase::kActive);
  const auto second = t.RunEpoch();
  EXPECT_NE(second.mean_shaping, 0.0);
  EXPECT_EQ(second.skill, "ball-location");
}

TEST(TrainerTest, AdaptiveSelectionEveryCycle) {
  TrainerConfig c = Tiny();
  c.skill = "encourage-attack";
  c.adaptive = true;
  c.selector.cycle = 2;
  c.epochs = 5;
  c.output_dir = (fs::temp_directory_path() / "rewardlab_adaptive_test").string();
  fs::remove_all(c.output_dir);
  Trainer t(c, football::EnvConfig{}, Engine(), nullptr);
  std::vector<std::string> skills;
  t.Train([&](const metrics::EpochRecord& r, const UpdateStats&) { skills.push_back(r.skill); });
  ASSERT_EQ(skills.size(), 5u);
  EXPECT_EQ(t.skill_selector()->history().size(), 3u);  // initial + epochs 2 and 4
  EXPECT_EQ(skills[0], "encourage-attack");
  EXPECT_EQ(skills[1], "encourage-attack");
  EXPECT_NE(skills[2], "encourage-attack");
  EXPECT_TRUE(fs::exists(fs::path(c.output_dir) / "metrics.csv"));
  EXPECT_TRUE(fs::exists(fs::path(c.output_dir) / "checkpoint.json"));
  std::ifstream log(fs::path(c.output_dir) / "dialogue.jsonl");
  int lines = 0;
  for (std::string l; std::getline(log, l);) ++lines;
  EXPECT_EQ(lines, 2);
  fs::remove_all(c.output_dir);
}

TEST(TrainerTest, CheckpointRoundTripAndEvaluate) {
  TrainerConfig c = Tiny();
  c.epochs = 1;
  c.output_dir = (fs::temp_directory_path() / "rewardlab_ckpt_test").string();
  fs::remove_all(c.output_dir);
  Trainer t(c, football::EnvConfig{}, Engine(), nullptr);
  t.Train();
  const Checkpoint ck = LoadCheckpoint((fs::path(c.output_dir) / "checkpoint.json").string());
  EXPECT_EQ(ck.epoch, 1);
  EXPECT_EQ(ck.actor.ParamHash(), t.actor().ParamHash());
  EXPECT_EQ(ck.config_hash, ConfigHash(c, football::EnvConfig{}));
  const EvalResult a = Evaluate(ck, football::EnvConfig{}, 3, 9, false);
  const EvalResult b = Evaluate(ck, football::EnvConfig{}, 3, 9, false);
  EXPECT_EQ(a.summary.episodes, 3);
  EXPECT_EQ(a.summary, b.summary);
  football::EnvConfig bigger;
  bigger.home_players = 4;
  EXPECT_THROW(Evaluate(ck, bigger, 1, 1, true), Error);

  // Tampered config no longer matches its hash.
  nlohmann::json j;
  std::ifstream((fs::path(c.output_dir) / "checkpoint.json").string()) >> j;
  j["config"]["gamma"] = 0.5;
  std::ofstream((fs::path(c.output_dir) / "bad.json").string()) << j.dump();
  try {
    LoadCheckpoint((fs::path(c.output_dir) / "bad.json").string());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kLoad);
  }
  fs::remove_all(c.output_dir);
}

TEST(TrainerConfigTest, ValidationAndJson) {
  TrainerConfig c;
  c.gamma = 1.0;
  EXPECT_THROW(c.Validate(), Error);
  c = {};
  c.critic_target = "mc";
  EXPECT_THROW(c.Validate(), Error);
  c = {};
  c.adaptive = true;
  EXPECT_THROW(c.Validate(), Error);
  nlohmann::json j = TrainerConfig{};
  EXPECT_EQ(j.get<TrainerConfig>().rollout_length, 301);
  j["typo"] = 1;
  EXPECT_THROW(j.get<TrainerConfig>(), Error);
  TrainerConfig a, b;
  b.output_dir = "/elsewhere";
  EXPECT_EQ(ConfigHash(a, {}), ConfigHash(b, {}));
  b.rho = 0.25;
  EXPECT_NE(ConfigHash(a, {}), ConfigHash(b, {}));
}

TEST(TrainerConfigTest, DefaultsFollowPublishedSettings) {
  const TrainerConfig c;
  EXPECT_EQ(c.gamma, 0.995);
  EXPECT_EQ(c.rho, 0.5);
  EXPECT_EQ(c.learning_rate, 5e-4);
  EXPECT_EQ(c.ppo_epochs, 10);
  EXPECT_EQ(c.clip_eps, 0.2);
  EXPECT_EQ(c.rollout_length, 301);
  EXPECT_EQ(c.workers, 8);
  EXPECT_EQ(c.selector.cycle, 50);
}

TEST(TrainerTest, CentralizedCriticAndGaeTargetsRun) {
  TrainerConfig c = Tiny();
  c.centralized_critic = true;
  c.critic_target = "gae";
  c.epochs = 1;
  Trainer t(c, football::EnvConfig{}, Engine(), nullptr);
  const auto r = t.RunEpoch();
  EXPECT_EQ(r.epoch, 1);
  EXPECT_TRUE(std::isfinite(t.last_update().critic_loss));
  EXPECT_EQ(t.critic().input_size(),
            football::GlobalStateSize(football::EnvConfig{}) + 3);
}

}  // namespace
}  // namespace rewardlab::trainer
