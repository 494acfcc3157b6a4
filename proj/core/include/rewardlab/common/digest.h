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

#ifndef REWARDLAB_COMMON_DIGEST_H_
#define REWARDLAB_COMMON_DIGEST_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rewardlab {

// Lowercase hex SHA-256 of the given bytes.
std::string Sha256Hex(std::span<const uint8_t> bytes);
std::string Sha256Hex(std::string_view text);

// Standard (RFC 4648) base64 with padding.
std::string Base64Encode(std::span<const uint8_t> bytes);
// Throws Error(kInput) on malformed input.
std::vector<uint8_t> Base64Decode(std::string_view text);

}  // namespace rewardlab

#endif  // REWARDLAB_COMMON_DIGEST_H_
