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

#include "rewardlab/shaping/reward.h"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "rewardlab/common/error.h"

namespace rewardlab::shaping {

void ShapingConfig::Validate() const {
  Require(gamma >= 0.0 && gamma < 1.0, ErrorCode::kConfig, "gamma must be in [0, 1)");
  Require(rho >= 0.0 && std::isfinite(rho), ErrorCode::kConfig, "rho must be >= 0");
}

void to_json(nlohmann::json& j, const ShapingConfig& c) {
  j = {{"gamma", c.gamma}, {"rho", c.rho}, {"normalize", c.normalize}};
}

void from_json(const nlohmann::json& j, ShapingConfig& c) {
  for (const auto& [key, value] : j.items()) {
    Require(key == "gamma" || key == "rho" || key == "normalize", ErrorCode::kConfig,
            "unknown shaping key '" + key + "'");
  }
  c.gamma = j.value("gamma", c.gamma);
  c.rho = j.value("rho", c.rho);
  c.normalize = j.value("normalize", c.normalize);
}

double PotentialNormalizer::stddev() const {
  return count_ > 0 ? std::sqrt(m2_ / static_cast<double>(count_)) : 0.0;
}

void PotentialNormalizer::Observe(double raw) {
  Require(phase_ == Phase::kCalibrating, ErrorCode::kPhase,
          "normalizer is active; call Reset() to recalibrate");
  ++count_;
  const double delta = raw - mean_;
  mean_ += delta / static_cast<double>(count_);
  m2_ += delta * (raw - mean_);
}

void PotentialNormalizer::Finish() {
  Require(phase_ == Phase::kCalibrating, ErrorCode::kPhase, "normalizer already active");
  Require(count_ > 0, ErrorCode::kPhase, "no calibration samples");
  phase_ = Phase::kActive;
}

double PotentialNormalizer::Apply(double raw) const {
  Require(phase_ == Phase::kActive, ErrorCode::kPhase, "normalizer still calibrating");
  return (raw - mean_) / std::max(stddev(), kSigmaFloor);
}

void PotentialNormalizer::Reset() { *this = PotentialNormalizer{}; }

nlohmann::json PotentialNormalizer::ToJson() const {
  return {{"phase", phase_ == Phase::kActive ? "active" : "calibrating"},
          {"count", count_},
          {"mean", mean_},
          {"m2", m2_}};
}

PotentialNormalizer PotentialNormalizer::FromJson(const nlohmann::json& j) {
  PotentialNormalizer n;
  n.phase_ = j.at("phase").get<std::string>() == "active" ? Phase::kActive : Phase::kCalibrating;
  n.count_ = j.at("count").get<int64_t>();
  n.mean_ = j.at("mean").get<double>();
  n.m2_ = j.at("m2").get<double>();
  return n;
}

}  // namespace rewardlab::shaping
