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

#include "rewardlab/common/error.h"

namespace rewardlab {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kValidation: return "validation";
    case ErrorCode::kDomain: return "domain";
    case ErrorCode::kDimension: return "dimension";
    case ErrorCode::kPrecondition: return "precondition";
    case ErrorCode::kSize: return "size";
    case ErrorCode::kConfig: return "config";
    case ErrorCode::kInput: return "input";
    case ErrorCode::kLookup: return "lookup";
    case ErrorCode::kContract: return "contract";
    case ErrorCode::kPhase: return "phase";
    case ErrorCode::kSelection: return "selection";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kTimeout: return "timeout";
    case ErrorCode::kMalformedReply: return "malformed_reply";
    case ErrorCode::kConnectionLost: return "connection_lost";
    case ErrorCode::kProtocol: return "protocol";
    case ErrorCode::kStartup: return "startup";
    case ErrorCode::kMapping: return "mapping";
    case ErrorCode::kIngestion: return "ingestion";
    case ErrorCode::kLoad: return "load";
    case ErrorCode::kNumeric: return "numeric";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + " error: " + message),
      code_(code) {}

bool Error::IsUsageError() const {
  switch (code_) {
    case ErrorCode::kValidation:
    case ErrorCode::kConfig:
    case ErrorCode::kInput:
    case ErrorCode::kDomain:
    case ErrorCode::kDimension:
    case ErrorCode::kLookup:
    case ErrorCode::kIngestion:
    case ErrorCode::kLoad:
      return true;
    default:
      return false;
  }
}

void Fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace rewardlab
