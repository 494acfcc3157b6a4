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

#include "rewardlab/bridge/stub.h"

#include <algorithm>
#include <chrono>
#include <cstring>
#include <netinet/in.h>
#include <poll.h>
#include <random>
#include <sys/socket.h>
#include <unistd.h>

#include <nlohmann/json.hpp>

#include "rewardlab/bridge/protocol.h"
#include "rewardlab/common/digest.h"
#include "rewardlab/common/error.h"
#include "rewardlab/football/env.h"
#include "rewardlab/shaping/rules.h"

namespace rewardlab::bridge {

void StubConfig::Validate() const {
  Require(potential_mode == "fixed" || potential_mode == "rule", ErrorCode::kConfig,
          "potential_mode must be fixed or rule");
  Require(select_mode == "fixed" || select_mode == "echo", ErrorCode::kConfig,
          "select_mode must be fixed or echo");
  Require(select_mode != "fixed" || !select_skill.empty(), ErrorCode::kConfig,
          "fixed select mode needs select_skill");
  Require(jitter_ms >= 0, ErrorCode::kConfig, "jitter_ms must be >= 0");
  env.Validate();
}

void to_json(nlohmann::json& j, const StubConfig& c) {
  j = {{"potential_mode", c.potential_mode}, {"fixed_value", c.fixed_value},
       {"select_mode", c.select_mode},       {"select_skill", c.select_skill},
       {"silent", c.silent},                 {"jitter_ms", c.jitter_ms},
       {"env", c.env},                       {"render", c.render},
       {"constants", c.constants}};
}

void from_json(const nlohmann::json& j, StubConfig& c) {
  c.potential_mode = j.value("potential_mode", c.potential_mode);
  c.fixed_value = j.value("fixed_value", c.fixed_value);
  c.select_mode = j.value("select_mode", c.select_mode);
  c.select_skill = j.value("select_skill", c.select_skill);
  c.silent = j.value("silent", c.silent);
  c.jitter_ms = j.value("jitter_ms", c.jitter_ms);
  if (j.contains("env")) c.env = j.at("env").get<football::EnvConfig>();
  if (j.contains("render")) c.render = j.at("render").get<render::RenderOptions>();
  if (j.contains("constants")) c.constants = j.at("constants").get<shaping::RuleConstants>();
}

StubHandler::StubHandler(StubConfig config) : config_(std::move(config)) {
  config_.Validate();
  geometry_ = football::KickoffState(config_.env, 0);
}

double StubHandler::ScoreImage(const std::string& base64) const {
  const render::Image img = render::Image::DecodePpm(Base64Decode(base64));
  if (config_.potential_mode == "fixed") return config_.fixed_value;
  int x0 = img.width(), y0 = img.height(), x1 = -1, y1 = -1;
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      if (img.Get(x, y) != render::palette::kBall) continue;
      x0 = std::min(x0, x);
      y0 = std::min(y0, y);
      x1 = std::max(x1, x);
      y1 = std::max(y1, y);
    }
  }
  Require(x1 >= 0, ErrorCode::kInput, "no ball in image");
  football::MatchState s = geometry_;
  s.ball.holder = -1;
  s.ball.pos = render::NearestCell(s, (x0 + x1) / 2, (y0 + y1) / 2, config_.render);
  return shaping::rules::BallLocation(s, config_.constants);
}

std::optional<std::string> StubHandler::Handle(const std::string& line) const {
  if (config_.silent) return std::nullopt;
  Reply reply;
  Request req;
  try {
    req = DecodeRequest(line);
  } catch (const Error& e) {
    const auto j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_object() && j.contains("id") && j["id"].is_number_unsigned()) {
      reply.id = j["id"].get<uint64_t>();
    }
    reply.ok = false;
    const std::string msg = e.what();
    reply.error_code = msg.find("version") != std::string::npos ? "unsupported_version"
                       : msg.find("kind") != std::string::npos  ? "unknown_kind"
                                                                : "bad_request";
    reply.error_message = msg;
    return EncodeReply(reply);
  }
  reply.id = req.id;
  try {
    switch (req.kind) {
      case Kind::kPing:
        reply.result = {{"pong", true}};
        break;
      case Kind::kPotential:
        reply.result = {{"value", ScoreImage(req.payload.at("image").get<std::string>())}};
        break;
      case Kind::kPotentialBatch: {
        nlohmann::json values = nlohmann::json::array();
        for (const auto& image : req.payload.at("images")) {
          values.push_back(ScoreImage(image.get<std::string>()));
        }
        reply.result = {{"values", std::move(values)}};
        break;
      }
      case Kind::kSelect: {
        const auto& pool = req.payload.at("pool");
        Require(pool.is_array() && !pool.empty(), ErrorCode::kInput, "empty pool");
        const std::string skill = config_.select_mode == "fixed"
                                      ? config_.select_skill
                                      : pool.at(0).at("id").get<std::string>();
        reply.result = {{"skill", skill}, {"analysis", "stub selection"}};
        break;
      }
    }
  } catch (const std::exception& e) {
    reply.ok = false;
    reply.error_code = "bad_request";
    reply.error_message = e.what();
  }
  return EncodeReply(reply);
}

void ServeChannel(FdChannel& channel, const StubHandler& handler) {
  const int jitter = handler.config().jitter_ms;
  std::vector<std::thread> inflight;
  auto answer = [&channel, &handler](const std::string& line) {
    if (auto reply = handler.Handle(line)) {
      try {
        channel.WriteLine(*reply);
      } catch (const Error&) {
        // Peer went away; nothing to report to.
      }
    }
  };
  while (auto line = channel.ReadLine()) {
    if (line->empty()) continue;
    if (jitter == 0) {
      answer(*line);
      continue;
    }
    const uint64_t seed = std::hash<std::string>{}(*line);
    inflight.emplace_back([answer, line = *line, seed, jitter] {
      std::mt19937_64 rng(seed);
      std::this_thread::sleep_for(std::chrono::milliseconds(rng() % (jitter + 1)));
      answer(line);
    });
  }
  for (auto& t : inflight) t.join();
}

LocalStub::LocalStub(StubConfig config) : handler_(std::move(config)) {
  auto [a, b] = ChannelPair();
  server_ = std::move(a);
  client_ = std::move(b);
  thread_ = std::thread([this] { ServeChannel(*server_, handler_); });
}

LocalStub::~LocalStub() {
  server_->Close();
  thread_.join();
}

std::unique_ptr<FdChannel> LocalStub::TakeClientChannel() {
  Require(client_ != nullptr, ErrorCode::kStartup, "client channel already taken");
  return std::move(client_);
}

StubServer::StubServer(StubConfig config, int port) : handler_(std::move(config)) {
  listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  Require(listen_fd_ >= 0, ErrorCode::kStartup, "socket failed");
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  addr.sin_port = htons(static_cast<uint16_t>(port));
  if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0 ||
      ::listen(listen_fd_, 16) != 0) {
    const std::string why = std::strerror(errno);
    ::close(listen_fd_);
    Fail(ErrorCode::kStartup, "cannot listen on port " + std::to_string(port) + ": " + why);
  }
  socklen_t len = sizeof(addr);
  ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);
  acceptor_ = std::thread([this] { AcceptLoop(); });
}

StubServer::~StubServer() { Stop(); }

void StubServer::AcceptLoop() {
  while (!stop_) {
    pollfd p{listen_fd_, POLLIN, 0};
    if (::poll(&p, 1, 50) <= 0) continue;
    const int fd = ::accept(listen_fd_, nullptr, nullptr);
    if (fd < 0) continue;
    auto channel = std::make_shared<FdChannel>(fd, fd);
    std::lock_guard<std::mutex> lock(mu_);
    connections_.push_back(channel);
    workers_.emplace_back([this, channel] { ServeChannel(*channel, handler_); });
  }
}

void StubServer::Stop() {
  if (stop_.exchange(true)) return;
  acceptor_.join();
  ::close(listen_fd_);
  std::lock_guard<std::mutex> lock(mu_);
  for (auto& c : connections_) c->Close();
  for (auto& w : workers_) w.join();
  connections_.clear();
  workers_.clear();
}

}  // namespace rewardlab::bridge
