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

#ifndef REWARDLAB_BRIDGE_CLIENT_H_
#define REWARDLAB_BRIDGE_CLIENT_H_

#include <atomic>
#include <chrono>
#include <cstdint>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "rewardlab/bridge/channel.h"
#include "rewardlab/bridge/protocol.h"
#include "rewardlab/common/error.h"
#include "rewardlab/render/rasterizer.h"
#include "rewardlab/selector/selector.h"
#include "rewardlab/shaping/engine.h"

namespace rewardlab::bridge {

struct ClientOptions {
  std::chrono::milliseconds potential_timeout{5000};
  int potential_retries = 1;  // extra attempts after a potential timeout
  std::chrono::milliseconds select_timeout{60000};
  std::chrono::milliseconds ping_timeout{5000};
};

// Pipelined client: any number of threads may call concurrently; a reader
// thread matches replies to callers by id.
//
// Errors: kTimeout when the budget (and retries) run out, kMalformedReply
// for a reply that breaks the schema, kConnectionLost once the peer is gone,
// kProtocol when the service answers with an error reply.
class BridgeClient {
 public:
  explicit BridgeClient(std::unique_ptr<FdChannel> channel, ClientOptions options = {});
  ~BridgeClient();
  BridgeClient(const BridgeClient&) = delete;
  BridgeClient& operator=(const BridgeClient&) = delete;

  void Ping();
  // Values outside [-1, 1] are clamped and counted.
  double RequestPotential(std::span<const uint8_t> ppm, const std::string& instruction,
                          const std::string& skill = "");
  std::vector<double> RequestPotentialBatch(const std::vector<std::vector<uint8_t>>& ppms,
                                            const std::string& instruction,
                                            const std::string& skill = "");
  selector::SelectionResponse Select(const selector::SelectionRequest& request);

  int64_t clamped_count() const { return clamped_; }
  void Close();

 private:
  nlohmann::json Call(Kind kind, const nlohmann::json& payload,
                      std::chrono::milliseconds timeout, int retries);
  void ReaderLoop();
  void FailAll(ErrorCode code, const std::string& message);
  double Clamp(double value);

  std::unique_ptr<FdChannel> channel_;
  ClientOptions options_;
  std::mutex mu_;
  std::map<uint64_t, std::promise<Reply>> pending_;
  uint64_t next_id_ = 1;
  bool lost_ = false;
  std::atomic<int64_t> clamped_{0};
  std::thread reader_;
};

// Potential source that renders each state and asks the service.
class BridgeScorer : public shaping::StateScorer {
 public:
  BridgeScorer(std::shared_ptr<BridgeClient> client, render::RenderOptions options = {});
  double Score(const football::MatchState& state, const shaping::Skill& skill) override;
  std::vector<double> ScoreBatch(std::span<const football::MatchState> states,
                                 const shaping::Skill& skill) override;

 private:
  std::shared_ptr<BridgeClient> client_;
  render::RenderOptions options_;
};

class BridgeSelector : public selector::SelectionBackend {
 public:
  explicit BridgeSelector(std::shared_ptr<BridgeClient> client) : client_(std::move(client)) {}
  selector::SelectionResponse Select(const selector::SelectionRequest& request) override {
    return client_->Select(request);
  }

 private:
  std::shared_ptr<BridgeClient> client_;
};

}  // namespace rewardlab::bridge

#endif  // REWARDLAB_BRIDGE_CLIENT_H_
