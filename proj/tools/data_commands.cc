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

#include <signal.h>
#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "commands.h"
#include "config_flags.h"
#include "rewardlab/bridge/channel.h"
#include "rewardlab/bridge/stub.h"
#include "rewardlab/common/error.h"
#include "rewardlab/common/rng.h"
#include "rewardlab/football/env.h"
#include "rewardlab/football/trace.h"
#include "rewardlab/metrics/metrics.h"
#include "rewardlab/render/rasterizer.h"
#include "rewardlab/trainer/ppo.h"
#include "rewardlab/trainer/trainer.h"
#include "rewardlab/xt/xt.h"

namespace rewardlab::cli {
namespace {

using nlohmann::json;

void AddXtCommands(CLI::App& app, int* status) {
  auto* xt_cmd = app.add_subcommand("xt", "expected-threat grids from event logs");
  xt_cmd->require_subcommand(1);
  {
    auto o = std::make_shared<xt::SynthOptions>();
    auto out = std::make_shared<std::string>();
    auto* cmd = xt_cmd->add_subcommand("synth", "write a synthetic event log CSV");
    cmd->add_option("-o,--out", *out)->required();
    cmd->add_option("--matches", o->matches)->check(CLI::PositiveNumber);
    cmd->add_option("--events-per-match", o->events_per_match)->check(CLI::PositiveNumber);
    cmd->add_option("--seed", o->seed);
    cmd->callback([o, out] {
      const auto events = xt::SyntheticEvents(*o);
      xt::WriteEventsCsv(*out, events);
      std::printf("wrote %zu events to %s\n", events.size(), out->c_str());
    });
  }
  {
    auto o = std::make_shared<xt::EstimateOptions>();
    auto in = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    auto* cmd = xt_cmd->add_subcommand("fit", "estimate s, g, m and T from an event log");
    cmd->add_option("events", *in)->required()->check(CLI::ExistingFile);
    cmd->add_option("-o,--out", *out, "model JSON")->required();
    cmd->add_option("--alpha", o->alpha, "Laplace count per destination")
        ->check(CLI::NonNegativeNumber);
    cmd->add_flag("--success-weighted", o->success_weighted);
    cmd->callback([o, in, out] {
      const auto events = xt::ReadEventsCsv(*in);
      WriteJsonFile(*out, xt::ModelToJson(xt::EstimateProbs(events, *o)));
      std::printf("fitted %zu events, model in %s\n", events.size(), out->c_str());
    });
  }
  {
    struct Args {
      std::string model, out, model_out;
      int max_iters = 1000;
      double tol = 1e-12;
    };
    auto a = std::make_shared<Args>();
    auto* cmd = xt_cmd->add_subcommand("solve", "iterate xT to its fixed point");
    cmd->add_option("model", a->model, "model JSON from 'xt fit'")->required()->check(CLI::ExistingFile);
    cmd->add_option("-o,--out", a->out, "grid CSV")->required();
    cmd->add_option("--model-out", a->model_out, "model JSON with the solved grid attached");
    cmd->add_option("--max-iters", a->max_iters)->check(CLI::PositiveNumber);
    cmd->add_option("--tol", a->tol)->check(CLI::PositiveNumber);
    cmd->callback([a, status] {
      xt::XtModel m = xt::ModelFromJson(ReadJsonFile(a->model));
      const xt::SolveResult r = xt::SolveXt(m, a->max_iters, a->tol);
      xt::WriteGridCsv(a->out, r.xt);
      m.xt = r.xt;
      if (!a->model_out.empty()) WriteJsonFile(a->model_out, xt::ModelToJson(m));
      const double top = *std::max_element(r.xt.begin(), r.xt.end());
      std::printf("%s after %d iterations, max xT %.4f\n",
                  r.converged ? "converged" : "NOT converged", r.iterations, top);
      if (!r.converged) *status = kExitRuntime;
    });
  }
  {
    struct Args {
      std::string grid, csv, heatmap, json_out;
      int cell_px = 10;
    };
    auto a = std::make_shared<Args>();
    auto* cmd = xt_cmd->add_subcommand("export", "convert a grid to CSV, JSON or a heatmap image");
    cmd->add_option("grid", a->grid, "grid CSV")->required()->check(CLI::ExistingFile);
    cmd->add_option("--csv", a->csv);
    cmd->add_option("--json", a->json_out, "{\"zones_x\", \"zones_y\", \"xt\": [[...]]}, x outer");
    cmd->add_option("--heatmap", a->heatmap, "PPM image");
    cmd->add_option("--cell-px", a->cell_px)->check(CLI::Range(1, 100));
    cmd->callback([a] {
      Require(!a->csv.empty() || !a->heatmap.empty() || !a->json_out.empty(), ErrorCode::kConfig,
              "nothing to export: give --csv, --json or --heatmap");
      const auto grid = xt::ReadGridCsv(a->grid);
      if (!a->csv.empty()) xt::WriteGridCsv(a->csv, grid);
      if (!a->heatmap.empty()) xt::RenderHeatmap(grid, a->cell_px).WritePpm(a->heatmap);
      if (!a->json_out.empty()) {
        json rows = json::array();
        for (int zx = 0; zx < xt::kZonesX; ++zx) {
          json col = json::array();
          for (int zy = 0; zy < xt::kZonesY; ++zy) col.push_back(grid[xt::ZoneIndex(zx, zy)]);
          rows.push_back(col);
        }
        WriteJsonFile(a->json_out, {{"zones_x", xt::kZonesX}, {"zones_y", xt::kZonesY}, {"xt", rows}});
      }
    });
  }
  {
    auto trace = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    auto* cmd = xt_cmd->add_subcommand("from-trace", "event log CSV from a recorded episode");
    cmd->add_option("trace", *trace)->required()->check(CLI::ExistingFile);
    cmd->add_option("-o,--out", *out)->required();
    cmd->callback([trace, out] {
      const auto t = football::LoadTrace(*trace);
      const auto events = xt::FromMatchEvents(t.initial, football::EventLog(t),
                                              std::filesystem::path(*trace).stem().string());
      xt::WriteEventsCsv(*out, events);
      std::printf("wrote %zu events to %s\n", events.size(), out->c_str());
    });
  }
}

struct RecordArgs {
  std::string policy = "scripted";
  std::string checkpoint;
  std::string out;
  std::string env_path;
  uint64_t seed = 1;
  json env_patch = json::object();
};

void RunRecord(const RecordArgs& a) {
  football::EnvConfig env;
  std::unique_ptr<trainer::Checkpoint> ck;
  if (!a.checkpoint.empty()) {
    ck = std::make_unique<trainer::Checkpoint>(trainer::LoadCheckpoint(a.checkpoint));
    json e = ck->env;
    e.merge_patch(a.env_patch);
    env = e.get<football::EnvConfig>();
  } else {
    env = MergeConfig(json(football::EnvConfig{}), a.env_path, a.env_patch).get<football::EnvConfig>();
  }
  Rng rng(DeriveSeed(a.seed, 7));
  const auto trace = football::RunEpisode(env, a.seed, [&](const football::FootballEnv& e) {
    std::vector<int> actions;
    if (ck) {
      std::vector<double> obs;
      for (const auto& o : e.Observations()) obs.insert(obs.end(), o.begin(), o.end());
      const auto logits = ck->actor.Forward(obs, e.num_agents());
      for (int i = 0; i < e.num_agents(); ++i) {
        const auto row = logits.begin() + static_cast<ptrdiff_t>(i) * football::kNumActions;
        actions.push_back(static_cast<int>(
            std::max_element(row, row + football::kNumActions) - row));
      }
    } else if (a.policy == "random") {
      for (int i = 0; i < e.num_agents(); ++i) {
        actions.push_back(static_cast<int>(rng.UniformInt(football::kNumActions)));
      }
    } else {
      for (int id : e.ControlledIds()) actions.push_back(football::ScriptedAction(e.state(), id));
    }
    return actions;
  });
  football::SaveTrace(trace, a.out);
  const auto& last = trace.StateAt(trace.size());
  std::printf("%d steps, score %d-%d, trace in %s\n", trace.size(), last.home_score,
              last.away_score, a.out.c_str());
}

void AddRenderCommands(CLI::App& app) {
  {
    struct Args {
      std::string trace, out, env_path;
      int step = 0;
      uint64_t seed = 1;
      json render_patch = json::object();
      json env_patch = json::object();
    };
    auto a = std::make_shared<Args>();
    auto* cmd = app.add_subcommand("render", "render one state (a trace step or a kickoff) to PPM");
    cmd->add_option("-o,--out", a->out)->required();
    auto* trace = cmd->add_option("--trace", a->trace)->check(CLI::ExistingFile);
    cmd->add_option("--step", a->step, "trace step; the state at its start")->needs(trace);
    cmd->add_option("--seed", a->seed, "kickoff seed when no trace is given")->excludes(trace);
    cmd->add_option("--env-config", a->env_path)->check(CLI::ExistingFile)->excludes(trace);
    AddConfigFlags(cmd, json(render::RenderOptions{}), "", &a->render_patch, "Rendering");
    AddConfigFlags(cmd, json(football::EnvConfig{}), "env-", &a->env_patch, "Environment");
    cmd->callback([a] {
      const auto options = MergeConfig(json(render::RenderOptions{}), "", a->render_patch)
                               .get<render::RenderOptions>();
      football::MatchState state;
      if (!a->trace.empty()) {
        const auto t = football::LoadTrace(a->trace);
        Require(a->step >= 0 && a->step <= t.size(), ErrorCode::kInput,
                "step " + std::to_string(a->step) + " outside the trace (0.." +
                    std::to_string(t.size()) + ")");
        state = t.StateAt(a->step);
      } else {
        const auto env =
            MergeConfig(json(football::EnvConfig{}), a->env_path, a->env_patch).get<football::EnvConfig>();
        state = football::KickoffState(env, a->seed);
      }
      render::Render(state, options).image.WritePpm(a->out);
      std::printf("wrote %s\n", a->out.c_str());
    });
  }
  {
    auto a = std::make_shared<RecordArgs>();
    auto* cmd = app.add_subcommand("record", "play one episode and save its trace");
    cmd->add_option("-o,--out", a->out)->required();
    auto* ck = cmd->add_option("--checkpoint", a->checkpoint, "greedy actor from a checkpoint")
                   ->check(CLI::ExistingFile);
    cmd->add_option("--policy", a->policy, "home policy without a checkpoint")
        ->check(CLI::IsMember({"scripted", "random"}))
        ->excludes(ck);
    cmd->add_option("--seed", a->seed);
    cmd->add_option("--env-config", a->env_path)->check(CLI::ExistingFile)->excludes(ck);
    AddConfigFlags(cmd, json(football::EnvConfig{}), "env-", &a->env_patch, "Environment");
    cmd->callback([a] { RunRecord(*a); });
  }
  {
    struct Args {
      std::string trace, dir;
      int stride = 1;
      json render_patch = json::object();
    };
    auto a = std::make_shared<Args>();
    auto* cmd = app.add_subcommand("replay", "export a recorded episode as PPM frames");
    cmd->add_option("trace", a->trace)->required()->check(CLI::ExistingFile);
    cmd->add_option("-o,--out", a->dir, "frame directory")->required();
    cmd->add_option("--stride", a->stride)->check(CLI::PositiveNumber);
    AddConfigFlags(cmd, json(render::RenderOptions{}), "", &a->render_patch, "Rendering");
    cmd->callback([a] {
      const auto options = MergeConfig(json(render::RenderOptions{}), "", a->render_patch)
                               .get<render::RenderOptions>();
      const auto files =
          render::ExportFrames(football::LoadTrace(a->trace), a->dir, a->stride, options);
      std::printf("wrote %zu frames to %s\n", files.size(), a->dir.c_str());
    });
  }
}

void AddRadarCommand(CLI::App& app) {
  struct Args {
    std::string eval, reference, name = "reference", csv, image;
    int last = 20;
    int size = 200;
  };
  auto a = std::make_shared<Args>();
  auto* cmd = app.add_subcommand("radar", "style radar of one run against a reference run");
  cmd->add_option("metrics", a->eval, "metrics.csv of the evaluated run")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("reference", a->reference, "metrics.csv of the reference run")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--name", a->name, "reference label");
  cmd->add_option("--last", a->last, "epochs averaged from the end of each run")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--csv", a->csv);
  cmd->add_option("--image", a->image, "PPM chart");
  cmd->add_option("--size", a->size)->check(CLI::Range(50, 2000));
  cmd->callback([a] {
    auto tail = [&](const std::string& path) {
      auto recs = metrics::ReadMetricsCsv(path);
      Require(!recs.empty(), ErrorCode::kInput, path + " has no epochs");
      if (static_cast<int>(recs.size()) > a->last) recs.erase(recs.begin(), recs.end() - a->last);
      return metrics::StyleSummary::FromRecords(recs);
    };
    const auto radar = metrics::Radar(tail(a->eval), tail(a->reference), a->name);
    for (size_t k = 0; k < metrics::kRadarDimensions.size(); ++k) {
      std::printf("%-13s %.3f  (%.4g / %.4g)\n", std::string(metrics::kRadarDimensions[k]).c_str(),
                  radar.value[k], radar.evaluated[k], radar.reference[k]);
    }
    for (const auto& w : radar.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
    if (!a->csv.empty()) metrics::WriteRadarCsv(a->csv, radar);
    if (!a->image.empty()) metrics::RenderRadarChart(radar, a->size).WritePpm(a->image);
  });
}

void AddServeStubCommand(CLI::App& app) {
  struct Args {
    std::string config_path;
    int port = 0;
    bool stdio = false;
    json patch = json::object();
  };
  auto a = std::make_shared<Args>();
  auto* cmd = app.add_subcommand("serve-stub", "run the test scoring service (TCP or stdio)");
  cmd->add_option("--config", a->config_path, "stub config JSON")->check(CLI::ExistingFile);
  auto* stdio = cmd->add_flag("--stdio", a->stdio, "serve requests on stdin/stdout");
  cmd->add_option("--port", a->port, "TCP port on 127.0.0.1; 0 picks one")
      ->check(CLI::Range(0, 65535))
      ->excludes(stdio);
  AddConfigFlags(cmd, json(bridge::StubConfig{}), "", &a->patch, "Stub behaviour");
  cmd->callback([a] {
    const auto config =
        MergeConfig(json(bridge::StubConfig{}), a->config_path, a->patch).get<bridge::StubConfig>();
    if (a->stdio) {
      const bridge::StubHandler handler(config);
      bridge::FdChannel channel(STDIN_FILENO, STDOUT_FILENO);
      bridge::ServeChannel(channel, handler);
      return;
    }
    // Block the stop signals before any server thread starts, then wait for one.
    sigset_t stop;
    sigemptyset(&stop);
    sigaddset(&stop, SIGINT);
    sigaddset(&stop, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &stop, nullptr);
    bridge::StubServer server(config, a->port);
    std::printf("listening on 127.0.0.1:%d\n", server.port());
    std::fflush(stdout);
    int sig = 0;
    sigwait(&stop, &sig);
    server.Stop();
  });
}

}  // namespace

void AddDataCommands(CLI::App& app, int* status) {
  AddXtCommands(app, status);
  AddRenderCommands(app);
  AddRadarCommand(app);
  AddServeStubCommand(app);
}

}  // namespace rewardlab::cli
