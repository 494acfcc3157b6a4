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

#ifndef REWARDLAB_BRIDGE_STUB_H_
#define REWARDLAB_BRIDGE_STUB_H_

#include <atomic>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "rewardlab/bridge/channel.h"
#include "rewardlab/football/config.h"
#include "rewardlab/render/rasterizer.h"
#include "rewardlab/shaping/skill.h"

namespace rewardlab::bridge {

// Behaviour of the built-in stand-in service.
//   potential_mode "fixed": every image scores fixed_value.
//   potential_mode "rule":  the ball is located in the image (bounding box
//                           of ball-coloured pixels), mapped back to a pitch
//                           cell and scored with the ball-location rule.
//   select_mode "fixed":    always select_skill.
//   select_mode "echo":     the first pool id of the request.
//   silent:                 read requests, never answer.
//   jitter_ms > 0:          answer each request after a random delay, so
//                           replies come back out of order.
struct StubConfig {
  std::string potential_mode = "fixed";
  double fixed_value = 0.42;
  std::string select_mode = "echo";
  std::string select_skill;
  bool silent = false;
  int jitter_ms = 0;
  football::EnvConfig env;  // pitch geometry for rule mode
  render::RenderOptions render;
  shaping::RuleConstants constants;

  void Validate() const;  // throws kConfig
};

void to_json(nlohmann::json& j, const StubConfig& c);
void from_json(const nlohmann::json& j, StubConfig& c);

// Pure request handler: one line in, one reply line out (nullopt if silent).
class StubHandler {
 public:
  explicit StubHandler(StubConfig config);
  std::optional<std::string> Handle(const std::string& line) const;
  const StubConfig& config() const { return config_; }

 private:
  double ScoreImage(const std::string& base64) const;

  StubConfig config_;
  football::MatchState geometry_;
};

// Serves one channel until the peer closes it.
void ServeChannel(FdChannel& channel, const StubHandler& handler);

// The stub behind an in-memory socket pair.
class LocalStub {
 public:
  explicit LocalStub(StubConfig config = {});
  ~LocalStub();
  // The client end; may be taken once.
  std::unique_ptr<FdChannel> TakeClientChannel();

 private:
  StubHandler handler_;
  std::unique_ptr<FdChannel> server_;
  std::unique_ptr<FdChannel> client_;
  std::thread thread_;
};

// TCP listener on 127.0.0.1. Each connection is served on its own thread.
class StubServer {
 public:
  // port 0 picks a free port. Throws kStartup if the port is taken.
  explicit StubServer(StubConfig config, int port = 0);
  ~StubServer();
  int port() const { return port_; }
  void Stop();

 private:
  void AcceptLoop();

  StubHandler handler_;
  int listen_fd_ = -1;
  int port_ = 0;
  std::atomic<bool> stop_{false};
  std::thread acceptor_;
  std::mutex mu_;
  std::vector<std::shared_ptr<FdChannel>> connections_;
  std::vector<std::thread> workers_;
};

}  // namespace rewardlab::bridge

#endif  // REWARDLAB_BRIDGE_STUB_H_
