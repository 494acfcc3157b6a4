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

#include "rewardlab/bridge/client.h"

#include <algorithm>
#include <iostream>

#include "rewardlab/common/error.h"

namespace rewardlab::bridge {

BridgeClient::BridgeClient(std::unique_ptr<FdChannel> channel, ClientOptions options)
    : channel_(std::move(channel)), options_(options) {
  Require(channel_ != nullptr, ErrorCode::kConnectionLost, "no channel");
  reader_ = std::thread([this] { ReaderLoop(); });
}

BridgeClient::~BridgeClient() {
  Close();
  if (reader_.joinable()) reader_.join();
}

void BridgeClient::Close() { channel_->Close(); }

void BridgeClient::FailAll(ErrorCode code, const std::string& message) {
  std::lock_guard<std::mutex> lock(mu_);
  for (auto& [id, promise] : pending_) {
    promise.set_exception(std::make_exception_ptr(Error(code, message)));
  }
  pending_.clear();
}

void BridgeClient::ReaderLoop() {
  while (auto line = channel_->ReadLine()) {
    Reply reply;
    try {
      reply = DecodeReply(*line);
    } catch (const Error& e) {
      // Blame the request named in the line if there is one, else everyone.
      const auto j = nlohmann::json::parse(*line, nullptr, false);
      if (j.is_object() && j.contains("id") && j["id"].is_number_unsigned()) {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = pending_.find(j["id"].get<uint64_t>());
        if (it != pending_.end()) {
          it->second.set_exception(std::make_exception_ptr(e));
          pending_.erase(it);
          continue;
        }
      }
      FailAll(ErrorCode::kMalformedReply, e.what());
      continue;
    }
    std::lock_guard<std::mutex> lock(mu_);
    auto it = pending_.find(reply.id);
    if (it == pending_.end()) continue;  // late reply to a timed-out request
    it->second.set_value(std::move(reply));
    pending_.erase(it);
  }
  {
    std::lock_guard<std::mutex> lock(mu_);
    lost_ = true;
  }
  FailAll(ErrorCode::kConnectionLost, "scorer connection closed");
}

nlohmann::json BridgeClient::Call(Kind kind, const nlohmann::json& payload,
                                  std::chrono::milliseconds timeout, int retries) {
  for (int attempt = 0;; ++attempt) {
    std::future<Reply> future;
    uint64_t id;
    {
      std::lock_guard<std::mutex> lock(mu_);
      Require(!lost_, ErrorCode::kConnectionLost, "scorer connection closed");
      id = next_id_++;
      future = pending_[id].get_future();
    }
    try {
      channel_->WriteLine(EncodeRequest({id, kind, payload}));
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu_);
      pending_.erase(id);
      throw;
    }
    if (future.wait_for(timeout) == std::future_status::ready) {
      Reply reply = future.get();
      if (!reply.ok) {
        Fail(ErrorCode::kProtocol,
             "service error " + reply.error_code + ": " + reply.error_message);
      }
      return reply.result;
    }
    {
      std::lock_guard<std::mutex> lock(mu_);
      pending_.erase(id);
    }
    if (attempt >= retries) {
      Fail(ErrorCode::kTimeout, std::string(KindName(kind)) + " request timed out after " +
                                    std::to_string(timeout.count()) + " ms");
    }
  }
}

double BridgeClient::Clamp(double value) {
  if (value >= -1.0 && value <= 1.0) return value;
  ++clamped_;
  std::cerr << "warning: scorer returned " << value << ", clamped to [-1, 1]\n";
  return std::clamp(value, -1.0, 1.0);
}

void BridgeClient::Ping() {
  const auto result = Call(Kind::kPing, nlohmann::json::object(), options_.ping_timeout, 0);
  Require(result.value("pong", false), ErrorCode::kMalformedReply, "ping without pong");
}

double BridgeClient::RequestPotential(std::span<const uint8_t> ppm,
                                      const std::string& instruction, const std::string& skill) {
  const auto result = Call(Kind::kPotential, PotentialPayload(ppm, instruction, skill),
                           options_.potential_timeout, options_.potential_retries);
  Require(result.contains("value") && result["value"].is_number(), ErrorCode::kMalformedReply,
          "potential reply without numeric value");
  return Clamp(result["value"].get<double>());
}

std::vector<double> BridgeClient::RequestPotentialBatch(
    const std::vector<std::vector<uint8_t>>& ppms, const std::string& instruction,
    const std::string& skill) {
  if (ppms.empty()) return {};
  const auto result = Call(Kind::kPotentialBatch, BatchPayload(ppms, instruction, skill),
                           options_.potential_timeout, options_.potential_retries);
  Require(result.contains("values") && result["values"].is_array() &&
              result["values"].size() == ppms.size(),
          ErrorCode::kMalformedReply, "batch reply with wrong number of values");
  std::vector<double> out;
  for (const auto& v : result["values"]) {
    Require(v.is_number(), ErrorCode::kMalformedReply, "non-numeric batch value");
    out.push_back(Clamp(v.get<double>()));
  }
  return out;
}

selector::SelectionResponse BridgeClient::Select(const selector::SelectionRequest& request) {
  const auto result = Call(Kind::kSelect, request, options_.select_timeout, 0);
  try {
    return result.get<selector::SelectionResponse>();
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kMalformedReply, std::string("bad select reply: ") + e.what());
  }
}

BridgeScorer::BridgeScorer(std::shared_ptr<BridgeClient> client, render::RenderOptions options)
    : client_(std::move(client)), options_(options) {}

double BridgeScorer::Score(const football::MatchState& state, const shaping::Skill& skill) {
  const auto rendered = render::Render(state, options_);
  return client_->RequestPotential(rendered.image.EncodePpm(), skill.instruction, skill.id);
}

std::vector<double> BridgeScorer::ScoreBatch(std::span<const football::MatchState> states,
                                             const shaping::Skill& skill) {
  std::vector<std::vector<uint8_t>> images;
  images.reserve(states.size());
  for (const auto& s : states) images.push_back(render::Render(s, options_).image.EncodePpm());
  return client_->RequestPotentialBatch(images, skill.instruction, skill.id);
}

}  // namespace rewardlab::bridge
