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

// Acceptance runner: one PASS/FAIL line per criterion, exit 1 on any failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <future>
#include <set>
#include <string>
#include <vector>

#include "oracles.h"
#include "plateau_record.h"
#include "random_states.h"
#include "rewardlab/common/rng.h"
#include "rewardlab/football/env.h"
#include "rewardlab/render/geometry.h"
#include "rewardlab/render/rasterizer.h"
#include "rewardlab/selector/selector.h"
#include "rewardlab/shaping/engine.h"
#include "rewardlab/shaping/reward.h"
#include "rewardlab/shaping/skill.h"
#include "rewardlab/tabular/mdp.h"
#include "rewardlab/tabular/solvers.h"
#include "rewardlab/trainer/mlp.h"
#include "rewardlab/trainer/ppo.h"
#include "rewardlab/trainer/trainer.h"
#include "rewardlab/xt/xt.h"

namespace rewardlab {
namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

double Seconds(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string Fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

tabular::TabularMDP SmallMdp(Rng& rng, int max_states, int max_actions) {
  tabular::RandomMdpOptions o;
  o.num_states = 2 + static_cast<int>(rng.UniformInt(max_states - 1));
  o.num_actions = 1 + static_cast<int>(rng.UniformInt(max_actions));
  o.num_terminals = 1;
  o.discount = rng.Uniform(0.5, 0.99);
  return tabular::RandomMdp(o, rng);
}

Outcome ReturnIdentity() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(11);
  double worst = 0.0;
  int episodes = 0;
  while (episodes < 1000) {
    const auto m = SmallMdp(rng, 6, 3);
    const auto phi = tabular::RandomPotential(m.terminal, rng);
    const auto traj = tabular::SampleEpisode(m, 10000, rng);
    if (!m.terminal[traj.steps.back().next_state]) continue;
    // Independent recomputation of both returns.
    double u = 0, us = 0, f = 1;
    for (const auto& st : traj.steps) {
      u += f * st.reward;
      us += f * (st.reward + m.discount * phi[st.next_state] - phi[st.state]);
      f *= m.discount;
    }
    const auto lib = tabular::ShapedReturnIdentityCheck(traj, phi, m.discount);
    worst = std::max({worst, std::abs(us - (u - phi[traj.steps[0].state])), lib.residual,
                      std::abs(lib.shaped - us)});
    ++episodes;
  }
  const double secs = Seconds(t0);
  return {worst < 1e-9 && secs < 10.0,
          Fmt("%.0f episodes, max residual %.3g, %.2fs", static_cast<double>(episodes), worst, secs)};
}

Outcome PolicyInvariance() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(12);
  int mismatched = 0;
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const auto m = SmallMdp(rng, 6, 3);
    const auto phi = tabular::RandomPotential(m.terminal, rng);
    const auto shaped = tabular::ShapeMdp(m, phi);
    const auto vi = tabular::ValueIteration(m, 1e-13);
    const auto vs = tabular::ValueIteration(shaped, 1e-13);
    const auto q = oracle::OptimalQ(m);
    const auto qs = oracle::OptimalQ(shaped);
    const int A = m.num_actions;
    for (int s = 0; s < m.num_states; ++s) {
      if (m.terminal[s]) continue;
      if (vi.greedy[s] != vs.greedy[s] || vi.greedy[s] != oracle::ArgmaxSet(q, s, A, 1e-9) ||
          vs.greedy[s] != oracle::ArgmaxSet(qs, s, A, 1e-9)) {
        ++mismatched;
      }
      for (int a = 0; a < A; ++a) {
        const size_t k = static_cast<size_t>(s) * A + a;
        worst = std::max({worst, std::abs(vs.q[k] - vi.q[k] + phi[s]),
                          std::abs(qs[k] - q[k] + phi[s])});
      }
    }
  }
  const double secs = Seconds(t0);
  return {mismatched == 0 && worst < 1e-8 && secs < 60.0,
          Fmt("500 MDPs, %.0f argmax mismatches, max |dQ+phi| %.3g, %.2fs", mismatched, worst,
              secs)};
}

Outcome TdEquality() {
  Rng rng(13);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto m = SmallMdp(rng, 6, 3);
    const auto phi = tabular::RandomPotential(m.terminal, rng);
    worst = std::max(worst, tabular::TdUpdateEquivalenceCheck(m, phi, 10000, {0.1, rng.NextU64()}));
  }
  return {worst < 1e-9, Fmt("50 MDPs x 10000 steps, max increment gap %.3g", worst)};
}

Outcome NashInvariance() {
  Rng rng(14);
  int differing = 0, equilibria = 0;
  for (int i = 0; i < 200; ++i) {
    tabular::RandomGameOptions o;
    o.num_states = 2 + static_cast<int>(rng.UniformInt(2));
    o.num_actions = 2;
    const auto g = tabular::RandomGame(o, rng);
    const auto phi = tabular::RandomPotential(g.terminal, rng);
    const auto shaped = tabular::ShapeGame(g, {0, 1}, phi);
    const auto base = tabular::EnumerateDeterministicNash(g);
    equilibria += static_cast<int>(base.size());
    if (base != tabular::EnumerateDeterministicNash(shaped) ||
        base != oracle::NashProfiles(shaped, 1e-9)) {
      ++differing;
    }
  }
  return {differing == 0,
          Fmt("200 games, %.0f differing sets, %.0f equilibria total", differing, equilibria)};
}

Outcome GaeOracle() {
  Rng rng(15);
  double worst = 0.0;
  int with_terminal = 0;
  for (int i = 0; i < 1000; ++i) {
    const size_t n = 2 + rng.UniformInt(60);
    std::vector<double> r(n), v(n + 1);
    for (double& x : r) x = rng.Uniform(-1, 1);
    for (double& x : v) x = rng.Uniform(-1, 1);
    std::vector<uint8_t> d(n, 0);
    d[rng.UniformInt(n - 1)] = 1;  // at least one mid-sequence terminal
    for (auto& x : d) x = x || rng.Uniform() < 0.05;
    with_terminal += 1;
    const double gamma = rng.Uniform(0.8, 0.999), lambda = rng.Uniform(0.0, 1.0);
    const auto a = trainer::Gae(r, v, d, gamma, lambda);
    const auto b = oracle::GaeDoubleSum(r, v, d, gamma, lambda);
    for (size_t t = 0; t < n; ++t) worst = std::max(worst, std::abs(a[t] - b[t]));
  }
  return {worst < 1e-10, Fmt("%.0f sequences, max gap %.3g", with_terminal, worst)};
}

Outcome GradientCheck() {
  Rng rng(16);
  double worst_actor = 0.0, worst_critic = 0.0;
  auto random_net = [&](int in, int out) {
    std::vector<int> sizes = {in, 2 + static_cast<int>(rng.UniformInt(6))};
    if (rng.Uniform() < 0.5) sizes.push_back(2 + static_cast<int>(rng.UniformInt(6)));
    sizes.push_back(out);
    trainer::Mlp net(sizes, rng, 1.0);
    for (double& p : net.params()) p += rng.Uniform(-0.1, 0.1);
    return net;
  };
  for (int i = 0; i < 20; ++i) {
    const int in = 1 + static_cast<int>(rng.UniformInt(4));
    const int acts = 2 + static_cast<int>(rng.UniformInt(4));
    const int rows = 1 + static_cast<int>(rng.UniformInt(6));
    std::vector<double> x(static_cast<size_t>(rows) * in);
    for (double& v : x) v = rng.Uniform(-1, 1);

    trainer::Mlp actor = random_net(in, acts);
    std::vector<int> a(rows);
    for (int& k : a) k = static_cast<int>(rng.UniformInt(acts));
    const auto logp = trainer::LogSoftmax(actor.Forward(x, rows), acts);
    std::vector<double> old(rows), adv(rows);
    for (int r = 0; r < rows; ++r) {
      old[r] = logp[r * acts + a[r]] + rng.Uniform(-0.3, 0.3);
      adv[r] = rng.Uniform(-2, 2);
    }
    const trainer::ActorBatch batch{x, rows, a, old, adv};
    std::vector<double> g;
    trainer::ActorLoss(actor, batch, 0.2, &g);
    const auto ng = oracle::NumericGradient(
        [&](const std::vector<double>& p) {
          trainer::Mlp n = actor;
          n.params() = p;
          return trainer::ActorLoss(n, batch, 0.2);
        },
        actor.params());
    worst_actor = std::max(worst_actor, oracle::MaxRelativeError(g, ng, 1e-4));

    trainer::Mlp critic = random_net(in, 1);
    std::vector<double> y(rows);
    for (double& v : y) v = rng.Uniform(-2, 2);
    std::vector<double> gc;
    trainer::CriticLoss(critic, x, rows, y, &gc);
    const auto ngc = oracle::NumericGradient(
        [&](const std::vector<double>& p) {
          trainer::Mlp n = critic;
          n.params() = p;
          return trainer::CriticLoss(n, x, rows, y);
        },
        critic.params());
    worst_critic = std::max(worst_critic, oracle::MaxRelativeError(gc, ngc, 1e-4));
  }
  return {worst_actor < 1e-4 && worst_critic < 1e-4,
          Fmt("20 nets, max relative error actor %.3g critic %.3g", worst_actor, worst_critic)};
}

Outcome XtOracle() {
  Rng rng(17);
  double worst = 0.0;
  int decreasing = 0, isolated_bad = 0;
  for (int i = 0; i < 50; ++i) {
    xt::XtModel m;
    for (int z = 0; z < xt::kNumZones; ++z) {
      m.s[z] = rng.Uniform(0.05, 0.6);
      m.m[z] = (1.0 - m.s[z]) * rng.Uniform(0.5, 1.0);
      m.g[z] = rng.Uniform();
      double row = 0.0;
      for (int k = 0; k < xt::kNumZones; ++k) row += (m.Transition(z, k) = rng.Uniform());
      for (int k = 0; k < xt::kNumZones; ++k) m.Transition(z, k) /= row;
    }
    const int iso = static_cast<int>(rng.UniformInt(xt::kNumZones));
    m.m[iso] = 0.0;
    const auto r = xt::SolveXt(m, 10000, 1e-15);
    const auto direct = oracle::XtLinearSolve(m);
    for (int z = 0; z < xt::kNumZones; ++z) worst = std::max(worst, std::abs(r.xt[z] - direct[z]));
    if (r.xt[iso] != m.s[iso] * m.g[iso]) ++isolated_bad;
    std::vector<double> cur(xt::kNumZones, 0.0);
    for (int it = 0; it < 100; ++it) {
      const auto next = xt::XtStep(m, cur);
      for (int z = 0; z < xt::kNumZones; ++z) decreasing += next[z] < cur[z];
      cur = next;
    }
  }
  return {worst < 1e-8 && decreasing == 0 && isolated_bad == 0,
          Fmt("50 models, max gap %.3g, %.0f decreasing iterates, %.0f isolated-zone mismatches",
              worst, decreasing, isolated_bad)};
}

trainer::TrainerConfig SmallTrainer() {
  trainer::TrainerConfig c;
  c.workers = 2;
  c.rollout_length = 64;
  c.ppo_epochs = 2;
  c.hidden = {16};
  c.threads = 1;
  return c;
}

std::vector<std::string> ParamTrajectory(const trainer::TrainerConfig& c, int epochs) {
  trainer::Trainer t(c, football::EnvConfig{},
                     std::make_shared<shaping::PotentialEngine>(shaping::DefaultSkillPool()),
                     nullptr);
  std::vector<std::string> out;
  for (int e = 0; e < epochs; ++e) {
    t.RunEpoch();
    out.push_back(t.actor().ParamHash() + t.critic().ParamHash());
  }
  return out;
}

Outcome ShapingArithmetic() {
  Rng rng(18);
  // Terminal states get phi = 0 from the engine for every skill.
  shaping::PotentialEngine engine(shaping::DefaultSkillPool());
  football::FootballEnv env(football::EnvConfig{});
  int terminal_nonzero = 0;
  for (int ep = 0; ep < 20; ++ep) {
    env.Reset(rng.NextU64());
    std::vector<int> acts(env.num_agents());
    football::StepResult res;
    do {
      for (int& a : acts) a = static_cast<int>(rng.UniformInt(football::kNumActions));
      res = env.Step(acts);
    } while (!res.done);
    for (const auto& skill : engine.pool().skills()) {
      terminal_nonzero += engine.Phi(env.state(), skill.id) != 0.0;
    }
  }
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + static_cast<int>(rng.UniformInt(100));
    const double gamma = rng.Uniform(0.5, 0.999);
    std::vector<double> phi(n + 1);
    for (double& p : phi) p = rng.Uniform(-5, 5);
    phi[n] = 0.0;
    double sum = 0.0, f = 1.0;
    for (int t = 0; t < n; ++t) {
      sum += f * shaping::ShapingReward(phi[t], phi[t + 1], gamma);
      f *= gamma;
    }
    worst = std::max(worst, std::abs(sum + phi[0]));
  }
  trainer::TrainerConfig shaped = SmallTrainer();
  shaped.skill = "ball-location";
  shaped.rho = 0.0;
  const bool same = ParamTrajectory(SmallTrainer(), 4) == ParamTrajectory(shaped, 4);
  return {terminal_nonzero == 0 && worst < 1e-9 && same,
          Fmt("terminal nonzero %.0f, telescoping gap %.3g, rho=0 trajectories ", terminal_nonzero,
              worst) +
              (same ? "identical" : "differ")};
}

Outcome Normalizer() {
  Rng rng(19);
  double worst = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    shaping::PotentialNormalizer n;
    std::vector<double> xs(1 + rng.UniformInt(1000));
    const double loc = rng.Uniform(-10, 10), scale = rng.Uniform(0.01, 5);
    for (double& x : xs) n.Observe(x = loc + scale * rng.Normal());
    n.Finish();
    double sum = 0.0;
    for (double x : xs) sum += n.Apply(x);
    worst = std::max(worst, std::abs(sum / xs.size()));
  }
  shaping::PotentialNormalizer c;
  for (int i = 0; i < 300; ++i) c.Observe(0.42);
  c.Finish();
  const double constant = c.Apply(0.42);
  return {worst < 1e-9 && constant == 0.0,
          Fmt("max post-calibration mean %.3g, constant stream -> %.3g", worst, constant)};
}

Outcome Rasterizer() {
  Rng rng(20);
  const football::EnvConfig cfg;
  const render::RenderOptions o;
  int differing = 0, outside = 0, hull_bad = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto s = testing::RandomState(cfg, rng);
    if (i < 100 && render::Render(s, o).bytes() != render::Render(s, o).bytes()) ++differing;
    for (auto team : {football::Team::kHome, football::Team::kAway}) {
      const auto hull = render::TeamHull(s, team, o);
      for (int id : s.Outfield(team)) {
        outside += !oracle::InsideByHalfPlanes(hull, render::CellCenter(s, s.players[id].pos, o));
      }
    }
  }
  for (int i = 0; i < 100; ++i) {
    std::vector<render::Point> pts(1 + rng.UniformInt(15));
    for (auto& p : pts) {
      p.x = static_cast<int64_t>(rng.UniformInt(30));
      p.y = static_cast<int64_t>(rng.UniformInt(30));
    }
    const auto hull = render::ConvexHull(pts);
    hull_bad += std::set<render::Point>(hull.begin(), hull.end()) != oracle::BruteForceHull(pts);
  }
  return {differing == 0 && outside == 0 && hull_bad == 0,
          Fmt("re-render diffs %.0f, centres outside hull %.0f, hull mismatches %.0f/100", differing,
              outside, hull_bad)};
}

Outcome Selector() {
  const auto resp = selector::HeuristicSelect(testing::PlateauRequest());
  selector::SelectorConfig c;
  selector::SkillSelector sel(shaping::DefaultSkillPool(), c);
  std::vector<int> at;
  for (int epoch = 1; epoch <= 300; ++epoch) {
    sel.RecordEpoch({{"win_rate", 0.2}, {"total_shot", 1.0}}, 0.1);
    if (sel.MaybeSelect(epoch)) at.push_back(epoch);
  }
  const bool cadence = at == std::vector<int>{50, 100, 150, 200, 250, 300};
  return {resp.skill != "encourage-attack" && cadence,
          "plateau pick " + resp.skill + ", selections at " +
              [&] {
                std::string s;
                for (int e : at) s += (s.empty() ? "" : ",") + std::to_string(e);
                return s;
              }()};
}

double FinalWinRate(const std::vector<metrics::EpochRecord>& recs, int last) {
  double sum = 0.0;
  for (size_t i = recs.size() - last; i < recs.size(); ++i) sum += recs[i].win_rate;
  return sum / last;
}

Outcome DeskTraining() {
  const auto t0 = std::chrono::steady_clock::now();
  auto run = [](uint64_t seed, bool shaped) {
    trainer::TrainerConfig c;
    c.seed = seed;
    c.epochs = 100;
    c.workers = 4;
    c.rollout_length = 301;
    c.ppo_epochs = 4;
    c.threads = 1;
    if (shaped) {
      c.skill = "ball-location";
      c.rho = 0.5;
    }
    football::EnvConfig env;  // 3v3, difficulty 0.3
    trainer::Trainer t(c, env,
                       std::make_shared<shaping::PotentialEngine>(shaping::DefaultSkillPool()),
                       nullptr);
    std::vector<metrics::EpochRecord> recs;
    for (int e = 0; e < c.epochs; ++e) recs.push_back(t.RunEpoch());
    return FinalWinRate(recs, 20);
  };
  std::vector<std::future<double>> plain, shaped;
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    plain.push_back(std::async(std::launch::async, run, seed, false));
    shaped.push_back(std::async(std::launch::async, run, seed, true));
  }
  auto median = [](std::vector<std::future<double>>& fs) {
    std::vector<double> v;
    for (auto& f : fs) v.push_back(f.get());
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
  };
  const double mu = median(plain), ms = median(shaped);
  const double secs = Seconds(t0);
  return {ms >= mu && secs < 1800.0,
          Fmt("median final-20 win rate shaped %.3f vs unshaped %.3f, %.0fs", ms, mu, secs)};
}

struct Criterion {
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace rewardlab

int main(int argc, char** argv) {
  using namespace rewardlab;
  const std::vector<Criterion> all = {
      {"return-identity", ReturnIdentity},   {"policy-invariance", PolicyInvariance},
      {"td-equality", TdEquality},           {"nash-invariance", NashInvariance},
      {"gae-oracle", GaeOracle},             {"gradient-check", GradientCheck},
      {"xt-oracle", XtOracle},               {"shaping-arithmetic", ShapingArithmetic},
      {"normalizer", Normalizer},            {"rasterizer", Rasterizer},
      {"selector", Selector},                {"desk-training", DeskTraining},
  };
  std::string only;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--only" && i + 1 < argc) {
      only = argv[++i];
    } else if (arg == "--list") {
      for (const auto& c : all) std::printf("%s\n", c.name);
      return 0;
    } else {
      std::fprintf(stderr, "usage: %s [--only NAME] [--list]\n", argv[0]);
      return 2;
    }
  }
  int failed = 0, ran = 0;
  for (const auto& c : all) {
    if (!only.empty() && only != c.name) continue;
    ++ran;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  if (ran == 0) {
    std::fprintf(stderr, "unknown criterion '%s'\n", only.c_str());
    return 2;
  }
  return failed == 0 ? 0 : 1;
}
