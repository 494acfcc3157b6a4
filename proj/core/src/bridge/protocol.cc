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

#include "rewardlab/bridge/protocol.h"

#include <algorithm>
#include <cmath>

#include "rewardlab/common/digest.h"
#include "rewardlab/common/error.h"

namespace rewardlab::bridge {

namespace {

constexpr std::string_view kKindNames[] = {"ping", "potential", "potential_batch", "select"};

nlohmann::json ParseObject(std::string_view line, ErrorCode code) {
  nlohmann::json j = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
  Require(!j.is_discarded() && j.is_object(), code, "not a JSON object: " + std::string(line));
  Require(j.contains("v") && j["v"].is_number_integer(), code, "missing version field");
  Require(j["v"].get<int>() == kProtocolVersion, code,
          "unsupported protocol version " + j["v"].dump());
  Require(j.contains("id") && j["id"].is_number_unsigned(), code, "missing or invalid id");
  return j;
}

}  // namespace

std::string_view KindName(Kind k) { return kKindNames[static_cast<int>(k)]; }

Kind ParseKind(std::string_view name) {
  for (int i = 0; i < 4; ++i) {
    if (kKindNames[i] == name) return static_cast<Kind>(i);
  }
  Fail(ErrorCode::kProtocol, "unknown message kind '" + std::string(name) + "'");
}

std::string EncodeRequest(const Request& r) {
  return nlohmann::json{{"v", kProtocolVersion},
                        {"id", r.id},
                        {"kind", KindName(r.kind)},
                        {"payload", r.payload}}
      .dump();
}

Request DecodeRequest(std::string_view line) {
  const nlohmann::json j = ParseObject(line, ErrorCode::kProtocol);
  Require(j.contains("kind") && j["kind"].is_string(), ErrorCode::kProtocol, "missing kind");
  Request r;
  r.id = j["id"].get<uint64_t>();
  r.kind = ParseKind(j["kind"].get<std::string>());
  Require(j.contains("payload") && j["payload"].is_object(), ErrorCode::kProtocol,
          "payload must be an object");
  r.payload = j["payload"];
  return r;
}

std::string EncodeReply(const Reply& r) {
  nlohmann::json j = {{"v", kProtocolVersion}, {"id", r.id}, {"ok", r.ok}};
  if (r.ok) {
    j["result"] = r.result;
  } else {
    j["error"] = {{"code", r.error_code}, {"message", r.error_message}};
  }
  return j.dump();
}

Reply DecodeReply(std::string_view line) {
  const nlohmann::json j = ParseObject(line, ErrorCode::kMalformedReply);
  Require(j.contains("ok") && j["ok"].is_boolean(), ErrorCode::kMalformedReply,
          "reply without ok flag");
  Reply r;
  r.id = j["id"].get<uint64_t>();
  r.ok = j["ok"].get<bool>();
  if (r.ok) {
    Require(j.contains("result") && j["result"].is_object(), ErrorCode::kMalformedReply,
            "successful reply without result object");
    r.result = j["result"];
  } else {
    const auto& e = j.value("error", nlohmann::json::object());
    Require(e.is_object() && e.contains("code") && e["code"].is_string(),
            ErrorCode::kMalformedReply, "error reply without code");
    r.error_code = e["code"].get<std::string>();
    r.error_message = e.value("message", "");
  }
  return r;
}

nlohmann::json PotentialPayload(std::span<const uint8_t> ppm, const std::string& instruction,
                                const std::string& skill) {
  return {{"image", Base64Encode(ppm)}, {"instruction", instruction}, {"skill", skill}};
}

nlohmann::json BatchPayload(const std::vector<std::vector<uint8_t>>& ppms,
                            const std::string& instruction, const std::string& skill) {
  nlohmann::json images = nlohmann::json::array();
  for (const auto& p : ppms) images.push_back(Base64Encode(p));
  return {{"images", std::move(images)}, {"instruction", instruction}, {"skill", skill}};
}

double Cosine(std::span<const double> u, std::span<const double> v) {
  Require(u.size() == v.size(), ErrorCode::kDimension, "embedding dimensions differ");
  double dot = 0.0, uu = 0.0, vv = 0.0;
  for (size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    uu += u[i] * u[i];
    vv += v[i] * v[i];
  }
  Require(uu > 0.0 && vv > 0.0, ErrorCode::kDomain, "zero-norm embedding");
  return std::clamp(dot / (std::sqrt(uu) * std::sqrt(vv)), -1.0, 1.0);
}

}  // namespace rewardlab::bridge
