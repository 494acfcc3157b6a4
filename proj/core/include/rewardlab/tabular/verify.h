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

#ifndef REWARDLAB_TABULAR_VERIFY_H_
#define REWARDLAB_TABULAR_VERIFY_H_

#include <cstdint>
#include <string>
#include <vector>

namespace rewardlab::tabular {

// Settings for the randomized shaping-invariance checks.
struct VerifyOptions {
  uint64_t seed = 7;
  double tolerance = 1e-9;      // return identity, TD equality, NE comparison
  double q_tolerance = 1e-8;    // Q-shift identity

  int return_instances = 1000;  // random episodic trajectories
  int policy_instances = 500;   // random MDPs for argmax/Q-shift checks
  int td_instances = 50;        // random MDPs for paired TD learners
  int td_steps = 10000;
  int nash_instances = 200;     // random 2-player games

  int max_states = 6;
  int max_actions = 3;
  int nash_max_states = 3;
  int nash_actions = 2;
};

struct TheoremRecord {
  std::string name;
  int instances = 0;
  double max_residual = 0.0;
  int failures = 0;
  double seconds = 0.0;
  bool passed() const { return failures == 0; }
};

struct VerifyReport {
  std::vector<TheoremRecord> records;
  bool passed() const;
  // One JSON object per theorem, wrapped in {"theorems": [...]}.
  std::string ToJson() const;
};

TheoremRecord VerifyReturnIdentity(const VerifyOptions& options);
TheoremRecord VerifyPolicyInvariance(const VerifyOptions& options);
TheoremRecord VerifyTdEquivalence(const VerifyOptions& options);
TheoremRecord VerifyNashInvariance(const VerifyOptions& options);

VerifyReport RunVerification(const VerifyOptions& options);

}  // namespace rewardlab::tabular

#endif  // REWARDLAB_TABULAR_VERIFY_H_
