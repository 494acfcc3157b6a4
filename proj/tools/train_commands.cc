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

#include <cstdio>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "commands.h"
#include "config_flags.h"
#include "rewardlab/bridge/channel.h"
#include "rewardlab/bridge/client.h"
#include "rewardlab/common/error.h"
#include "rewardlab/football/config.h"
#include "rewardlab/shaping/engine.h"
#include "rewardlab/shaping/skill.h"
#include "rewardlab/tabular/verify.h"
#include "rewardlab/trainer/trainer.h"
#include "rewardlab/xt/xt.h"

namespace rewardlab::cli {
namespace {

using nlohmann::json;

struct ScorerArgs {
  std::string pool_path;
  std::vector<std::string> xt_grids;  // TARGET=grid.csv
  std::string scorer_tcp;             // HOST:PORT
  std::string scorer_cmd;
  int scorer_timeout_ms = 5000;
  int select_timeout_ms = 60000;
};

void AddScorerFlags(CLI::App* cmd, ScorerArgs* a) {
  const std::string g = "Potential sources";
  cmd->add_option("--pool", a->pool_path, "skill pool JSON (default: the seven built-in skills)")
      ->check(CLI::ExistingFile)
      ->group(g);
  cmd->add_option("--xt-grid", a->xt_grids, "TARGET=grid.csv for skills bound to an xT grid")
      ->group(g);
  auto* tcp = cmd->add_option("--scorer-tcp", a->scorer_tcp,
                              "HOST:PORT of a scoring service for external skills")
                  ->group(g);
  cmd->add_option("--scorer-cmd", a->scorer_cmd, "scoring service to spawn, speaking on stdio")
      ->excludes(tcp)
      ->group(g);
  cmd->add_option("--scorer-timeout-ms", a->scorer_timeout_ms, "per potential request")
      ->check(CLI::PositiveNumber)
      ->group(g);
  cmd->add_option("--select-timeout-ms", a->select_timeout_ms, "per selection request")
      ->check(CLI::PositiveNumber)
      ->group(g);
}

struct Sources {
  std::shared_ptr<shaping::PotentialEngine> engine;
  std::shared_ptr<selector::SelectionBackend> backend;
};

Sources BuildSources(const ScorerArgs& a) {
  const shaping::SkillPool pool =
      a.pool_path.empty() ? shaping::DefaultSkillPool() : shaping::LoadSkillPool(a.pool_path);
  Sources out;
  out.engine = std::make_shared<shaping::PotentialEngine>(pool);
  for (const std::string& spec : a.xt_grids) {
    const auto eq = spec.find('=');
    Require(eq != std::string::npos && eq > 0, ErrorCode::kConfig,
            "--xt-grid expects TARGET=FILE, got '" + spec + "'");
    out.engine->RegisterScorer(shaping::ScorerBinding::Kind::kXt, spec.substr(0, eq),
                               std::make_shared<xt::XtScorer>(xt::ReadGridCsv(spec.substr(eq + 1))));
  }
  if (a.scorer_tcp.empty() && a.scorer_cmd.empty()) return out;

  std::unique_ptr<bridge::FdChannel> channel;
  if (!a.scorer_tcp.empty()) {
    const auto colon = a.scorer_tcp.rfind(':');
    Require(colon != std::string::npos, ErrorCode::kConfig, "--scorer-tcp expects HOST:PORT");
    int port = 0;
    try {
      port = std::stoi(a.scorer_tcp.substr(colon + 1));
    } catch (const std::exception&) {
      Fail(ErrorCode::kConfig, "bad port in '" + a.scorer_tcp + "'");
    }
    channel = bridge::ConnectTcp(a.scorer_tcp.substr(0, colon), port);
  } else {
    std::istringstream words(a.scorer_cmd);
    std::vector<std::string> argv;
    for (std::string w; words >> w;) argv.push_back(w);
    Require(!argv.empty(), ErrorCode::kConfig, "--scorer-cmd is empty");
    channel = bridge::SpawnProcess(argv);
  }
  bridge::ClientOptions options;
  options.potential_timeout = std::chrono::milliseconds(a.scorer_timeout_ms);
  options.select_timeout = std::chrono::milliseconds(a.select_timeout_ms);
  auto client = std::make_shared<bridge::BridgeClient>(std::move(channel), options);
  client->Ping();
  auto scorer = std::make_shared<bridge::BridgeScorer>(client);
  for (const shaping::Skill& s : pool.skills()) {
    if (s.binding.kind == shaping::ScorerBinding::Kind::kExternal) {
      out.engine->RegisterScorer(s.binding.kind, s.binding.target, scorer);
    }
  }
  out.backend = std::make_shared<bridge::BridgeSelector>(client);
  return out;
}

struct TrainArgs {
  std::string config_path;
  std::string env_path;
  json patch = json::object();
  json env_patch = json::object();
  ScorerArgs scorers;
  bool quiet = false;
};

void RunTrain(const TrainArgs& a) {
  const auto config =
      MergeConfig(json(trainer::TrainerConfig{}), a.config_path, a.patch).get<trainer::TrainerConfig>();
  const auto env = MergeConfig(json(football::EnvConfig{}), a.env_path, a.env_patch)
                       .get<football::EnvConfig>();
  const Sources sources = BuildSources(a.scorers);
  trainer::Trainer t(config, env, sources.engine, sources.backend);
  const auto records = t.Train([&](const metrics::EpochRecord& r, const trainer::UpdateStats& u) {
    if (a.quiet) return;
    std::printf("epoch %4d  win %.3f  shots %.2f  passes %.2f  skill %-20s  actor %+.4f  "
                "critic %.4f  entropy %.3f\n",
                r.epoch, r.win_rate, r.total_shots, r.passes, r.skill.c_str(), u.actor_loss,
                u.critic_loss, u.entropy);
    std::fflush(stdout);
  });
  if (!config.output_dir.empty()) std::printf("outputs in %s\n", config.output_dir.c_str());
  std::printf("trained %zu epochs, config hash %s\n", records.size(),
              trainer::ConfigHash(config, env).c_str());
}

struct EvalArgs {
  std::string checkpoint;
  int episodes = 100;
  uint64_t seed = 1;
  bool greedy = false;
  std::string out;
  json env_patch = json::object();
};

void RunEval(const EvalArgs& a) {
  const trainer::Checkpoint ck = trainer::LoadCheckpoint(a.checkpoint);
  json env_json = ck.env;
  env_json.merge_patch(a.env_patch);
  const auto env = env_json.get<football::EnvConfig>();
  const trainer::EvalResult r = trainer::Evaluate(ck, env, a.episodes, a.seed, a.greedy);
  const auto& s = r.summary;
  const json report = {{"checkpoint", a.checkpoint},
                       {"episodes", s.episodes},
                       {"greedy", a.greedy},
                       {"win_rate", s.win_rate},
                       {"total_shots", s.total_shots},
                       {"shot_success", s.shot_success},
                       {"passes", s.passes},
                       {"pass_success", s.pass_success},
                       {"possession_share", s.possession_share},
                       {"formation_score", s.formation_score},
                       {"mean_env_return", s.mean_env_return}};
  std::printf("%s\n", report.dump(2).c_str());
  if (!a.out.empty()) WriteJsonFile(a.out, report);
}

void RunVerify(const tabular::VerifyOptions& o, const std::string& out, int* status) {
  const tabular::VerifyReport r = tabular::RunVerification(o);
  for (const auto& rec : r.records) {
    std::printf("%-22s %s  instances %d  max residual %.3g  failures %d  %.2fs\n",
                rec.name.c_str(), rec.passed() ? "pass" : "FAIL", rec.instances,
                rec.max_residual, rec.failures, rec.seconds);
  }
  if (!out.empty()) WriteJsonFile(out, json::parse(r.ToJson()));
  if (!r.passed()) *status = kExitRuntime;
}

}  // namespace

void AddTrainCommands(CLI::App& app, int* status) {
  {
    auto a = std::make_shared<TrainArgs>();
    auto* cmd = app.add_subcommand("train", "train the home side with MAPPO and optional shaping");
    cmd->add_option("--config", a->config_path, "trainer config JSON; flags override its values")
        ->check(CLI::ExistingFile);
    cmd->add_option("--env-config", a->env_path, "environment config JSON")
        ->check(CLI::ExistingFile);
    cmd->add_flag("-q,--quiet", a->quiet, "no per-epoch lines");
    AddConfigFlags(cmd, json(trainer::TrainerConfig{}), "", &a->patch, "Trainer");
    AddConfigFlags(cmd, json(football::EnvConfig{}), "env-", &a->env_patch, "Environment");
    AddScorerFlags(cmd, &a->scorers);
    cmd->callback([a] { RunTrain(*a); });
  }
  {
    auto a = std::make_shared<EvalArgs>();
    auto* cmd = app.add_subcommand("eval", "play episodes with a trained checkpoint");
    cmd->add_option("checkpoint", a->checkpoint)->required()->check(CLI::ExistingFile);
    cmd->add_option("-n,--episodes", a->episodes)->check(CLI::PositiveNumber);
    cmd->add_option("--seed", a->seed);
    cmd->add_flag("--greedy", a->greedy, "argmax actions instead of sampling");
    cmd->add_option("-o,--out", a->out, "write the summary JSON here");
    AddConfigFlags(cmd, json(football::EnvConfig{}), "env-", &a->env_patch,
                   "Environment overrides (defaults come from the checkpoint)");
    cmd->callback([a] { RunEval(*a); });
  }
  {
    auto o = std::make_shared<tabular::VerifyOptions>();
    auto out = std::make_shared<std::string>();
    auto* cmd = app.add_subcommand("verify", "randomized checks of shaping invariance on small MDPs");
    cmd->add_option("--seed", o->seed);
    cmd->add_option("--tolerance", o->tolerance)->check(CLI::PositiveNumber);
    cmd->add_option("--q-tolerance", o->q_tolerance)->check(CLI::PositiveNumber);
    cmd->add_option("--return-instances", o->return_instances)->check(CLI::NonNegativeNumber);
    cmd->add_option("--policy-instances", o->policy_instances)->check(CLI::NonNegativeNumber);
    cmd->add_option("--td-instances", o->td_instances)->check(CLI::NonNegativeNumber);
    cmd->add_option("--td-steps", o->td_steps)->check(CLI::PositiveNumber);
    cmd->add_option("--nash-instances", o->nash_instances)->check(CLI::NonNegativeNumber);
    cmd->add_option("--max-states", o->max_states)->check(CLI::Range(2, 64));
    cmd->add_option("--max-actions", o->max_actions)->check(CLI::Range(1, 16));
    cmd->add_option("--nash-max-states", o->nash_max_states)->check(CLI::Range(2, 6));
    cmd->add_option("--nash-actions", o->nash_actions)->check(CLI::Range(1, 4));
    cmd->add_option("-o,--out", *out, "write the JSON report here");
    cmd->callback([o, out, status] { RunVerify(*o, *out, status); });
  }
}

}  // namespace rewardlab::cli
