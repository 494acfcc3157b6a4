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

#ifndef REWARDLAB_BRIDGE_PROTOCOL_H_
#define REWARDLAB_BRIDGE_PROTOCOL_H_

// Wire format: one JSON object per line (UTF-8, '\n' terminated).
//
// Request
//   {"v": 1, "id": <uint64>, "kind": <kind>, "payload": <object>}
//   kind "ping"             payload {}
//   kind "potential"        payload {"image": <base64 P6 PPM>, "instruction": <string>,
//                                    "skill": <string>}
//   kind "potential_batch"  payload {"images": [<base64 P6 PPM>...], "instruction": ...,
//                                    "skill": ...}
//   kind "select"           payload <SelectionRequest object>
//
// Reply
//   {"v": 1, "id": <request id>, "ok": true, "result": <object>}
//   ping            {"pong": true}
//   potential       {"value": <number in [-1, 1]>}
//   potential_batch {"values": [<number>...]}  same length and order as images
//   select          {"skill": <string>, "analysis": <string>}
//   {"v": 1, "id": <request id or 0>, "ok": false,
//    "error": {"code": <code>, "message": <string>}}
//   codes: bad_request, unsupported_version, unknown_kind, internal
//
// Ids are chosen by the client, unique per connection; replies may arrive in
// any order.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace rewardlab::bridge {

inline constexpr int kProtocolVersion = 1;

enum class Kind { kPing, kPotential, kPotentialBatch, kSelect };
std::string_view KindName(Kind k);
// Throws kProtocol for an unknown kind.
Kind ParseKind(std::string_view name);

struct Request {
  uint64_t id = 0;
  Kind kind = Kind::kPing;
  nlohmann::json payload = nlohmann::json::object();
};

struct Reply {
  uint64_t id = 0;
  bool ok = true;
  nlohmann::json result = nlohmann::json::object();
  std::string error_code;
  std::string error_message;
};

std::string EncodeRequest(const Request& r);
// Throws kProtocol on any schema violation.
Request DecodeRequest(std::string_view line);
std::string EncodeReply(const Reply& r);
// Throws kMalformedReply on any schema violation.
Reply DecodeReply(std::string_view line);

nlohmann::json PotentialPayload(std::span<const uint8_t> ppm, const std::string& instruction,
                                const std::string& skill);
nlohmann::json BatchPayload(const std::vector<std::vector<uint8_t>>& ppms,
                            const std::string& instruction, const std::string& skill);

// <u, v> / (|u| |v|) clamped to [-1, 1]. Throws kDimension on a size mismatch
// and kDomain for a zero vector.
double Cosine(std::span<const double> u, std::span<const double> v);

}  // namespace rewardlab::bridge

#endif  // REWARDLAB_BRIDGE_PROTOCOL_H_
