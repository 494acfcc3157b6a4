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

#ifndef REWARDLAB_COMMON_ERROR_H_
#define REWARDLAB_COMMON_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace rewardlab {

// Failure categories. Each module documents which of these it raises.
enum class ErrorCode {
  kValidation,
  kDomain,
  kDimension,
  kPrecondition,
  kSize,
  kConfig,
  kInput,
  kLookup,
  kContract,
  kPhase,
  kSelection,
  kIo,
  kTimeout,
  kMalformedReply,
  kConnectionLost,
  kProtocol,
  kStartup,
  kMapping,
  kIngestion,
  kLoad,
  kNumeric,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }

  // True for errors caused by bad user input rather than a runtime fault.
  bool IsUsageError() const;

 private:
  ErrorCode code_;
};

[[noreturn]] void Fail(ErrorCode code, const std::string& message);

inline void Require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) Fail(code, message);
}

}  // namespace rewardlab

#endif  // REWARDLAB_COMMON_ERROR_H_
