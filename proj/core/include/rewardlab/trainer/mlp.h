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

#ifndef REWARDLAB_TRAINER_MLP_H_
#define REWARDLAB_TRAINER_MLP_H_

#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "rewardlab/common/rng.h"

namespace rewardlab::trainer {

// Dense ReLU network with a linear output layer. Parameters live in one flat
// vector: for each layer, W (out x in, row-major) then b (out).
class Mlp {
 public:
  struct Cache {
    int rows = 0;
    std::vector<std::vector<double>> activations;  // input, hidden outputs (post-ReLU)
  };

  Mlp() = default;
  // Weights ~ U(-1/sqrt(in), 1/sqrt(in)); the output layer is scaled by
  // out_scale. Biases start at 0.
  Mlp(std::vector<int> sizes, Rng& rng, double out_scale = 1.0);

  int input_size() const { return sizes_.front(); }
  int output_size() const { return sizes_.back(); }
  const std::vector<int>& sizes() const { return sizes_; }
  std::vector<double>& params() { return params_; }
  const std::vector<double>& params() const { return params_; }
  size_t num_params() const { return params_.size(); }

  // x holds `rows` inputs back to back; returns rows * output_size values.
  std::vector<double> Forward(std::span<const double> x, int rows, Cache* cache = nullptr) const;
  // Gradient of sum(grad_out . output) with respect to the parameters.
  std::vector<double> Backward(const Cache& cache, std::span<const double> grad_out) const;

  std::string ParamHash() const;  // SHA-256 of the raw parameter bytes

  nlohmann::json ToJson() const;
  static Mlp FromJson(const nlohmann::json& j);  // throws kLoad

 private:
  std::vector<int> sizes_;
  std::vector<double> params_;
};

// Adaptive-moment optimizer with bias correction.
struct AdamConfig {
  double learning_rate = 5e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

class Adam {
 public:
  Adam() = default;
  Adam(size_t n, AdamConfig config) : config_(config), m_(n, 0.0), v_(n, 0.0) {}
  void Step(std::vector<double>& params, std::span<const double> grad);
  int64_t steps() const { return t_; }
  nlohmann::json ToJson() const;
  static Adam FromJson(const nlohmann::json& j, AdamConfig config);

 private:
  AdamConfig config_;
  std::vector<double> m_, v_;
  int64_t t_ = 0;
};

// Scales grad so its L2 norm is at most max_norm (no-op for max_norm <= 0).
// Returns the norm before clipping.
double ClipGradNorm(std::vector<double>& grad, double max_norm);

}  // namespace rewardlab::trainer

#endif  // REWARDLAB_TRAINER_MLP_H_
