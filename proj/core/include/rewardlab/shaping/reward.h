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

#ifndef REWARDLAB_SHAPING_REWARD_H_
#define REWARDLAB_SHAPING_REWARD_H_

#include <cstdint>

#include <nlohmann/json_fwd.hpp>

namespace rewardlab::shaping {

struct ShapingConfig {
  double gamma = 0.995;
  double rho = 0.5;
  bool normalize = true;

  void Validate() const;  // gamma in [0, 1), rho >= 0; throws kConfig
};

void to_json(nlohmann::json& j, const ShapingConfig& c);
void from_json(const nlohmann::json& j, ShapingConfig& c);

// gamma * phi_next - phi. Pass 0 for phi_next at a terminal transition.
inline double ShapingReward(double phi, double phi_next, double gamma) {
  return gamma * phi_next - phi;
}

// r_env + rho * F.
inline double TotalReward(double r_env, double shaping, double rho) {
  return r_env + rho * shaping;
}

// Z-scores potentials against statistics frozen after a calibration phase.
// One instance per active skill phase; Reset() starts a new calibration.
class PotentialNormalizer {
 public:
  enum class Phase { kCalibrating, kActive };
  static constexpr double kSigmaFloor = 1e-6;

  Phase phase() const { return phase_; }
  double mean() const { return mean_; }
  // Population standard deviation; 0 before any sample.
  double stddev() const;
  int64_t count() const { return count_; }

  // Calibration only; throws kPhase once active.
  void Observe(double raw);
  // Freezes mean and stddev. Throws kPhase if not calibrating or no samples.
  void Finish();
  // (raw - mean) / max(stddev, kSigmaFloor). Throws kPhase while calibrating.
  double Apply(double raw) const;
  void Reset();

  nlohmann::json ToJson() const;
  static PotentialNormalizer FromJson(const nlohmann::json& j);

 private:
  Phase phase_ = Phase::kCalibrating;
  int64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

}  // namespace rewardlab::shaping

#endif  // REWARDLAB_SHAPING_REWARD_H_
