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

#include "rewardlab/trainer/mlp.h"

#include <cmath>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "rewardlab/common/digest.h"
#include "rewardlab/common/error.h"

namespace rewardlab::trainer {

namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MapMatrix = Eigen::Map<RowMatrix>;
using ConstMapMatrix = Eigen::Map<const RowMatrix>;
using ConstMapVector = Eigen::Map<const Eigen::VectorXd>;

}  // namespace

Mlp::Mlp(std::vector<int> sizes, Rng& rng, double out_scale) : sizes_(std::move(sizes)) {
  Require(sizes_.size() >= 2, ErrorCode::kConfig, "network needs input and output sizes");
  for (int s : sizes_) Require(s >= 1, ErrorCode::kConfig, "layer sizes must be positive");
  for (size_t l = 0; l + 1 < sizes_.size(); ++l) {
    const int in = sizes_[l], out = sizes_[l + 1];
    const double bound = 1.0 / std::sqrt(static_cast<double>(in));
    const double scale = l + 2 == sizes_.size() ? out_scale : 1.0;
    for (int k = 0; k < in * out; ++k) params_.push_back(scale * rng.Uniform(-bound, bound));
    params_.insert(params_.end(), out, 0.0);
  }
}

std::vector<double> Mlp::Forward(std::span<const double> x, int rows, Cache* cache) const {
  Require(rows >= 1 && x.size() == static_cast<size_t>(rows) * input_size(),
          ErrorCode::kDimension, "network input has the wrong size");
  RowMatrix a = ConstMapMatrix(x.data(), rows, input_size());
  if (cache) {
    cache->rows = rows;
    cache->activations.assign(1, std::vector<double>(x.begin(), x.end()));
  }
  size_t off = 0;
  const size_t layers = sizes_.size() - 1;
  for (size_t l = 0; l < layers; ++l) {
    const int in = sizes_[l], out = sizes_[l + 1];
    ConstMapMatrix w(params_.data() + off, out, in);
    ConstMapVector b(params_.data() + off + static_cast<size_t>(in) * out, out);
    off += static_cast<size_t>(in) * out + out;
    RowMatrix z = a * w.transpose();
    z.rowwise() += b.transpose();
    if (l + 1 < layers) {
      z = z.cwiseMax(0.0);
      if (cache) cache->activations.emplace_back(z.data(), z.data() + z.size());
    }
    a = std::move(z);
  }
  return {a.data(), a.data() + a.size()};
}

std::vector<double> Mlp::Backward(const Cache& cache, std::span<const double> grad_out) const {
  const int rows = cache.rows;
  Require(grad_out.size() == static_cast<size_t>(rows) * output_size(), ErrorCode::kDimension,
          "output gradient has the wrong size");
  std::vector<double> grad(params_.size(), 0.0);
  std::vector<size_t> offsets;
  size_t off = 0;
  for (size_t l = 0; l + 1 < sizes_.size(); ++l) {
    offsets.push_back(off);
    off += static_cast<size_t>(sizes_[l]) * sizes_[l + 1] + sizes_[l + 1];
  }
  RowMatrix delta = ConstMapMatrix(grad_out.data(), rows, output_size());
  for (size_t l = sizes_.size() - 1; l-- > 0;) {
    const int in = sizes_[l], out = sizes_[l + 1];
    ConstMapMatrix a(cache.activations[l].data(), rows, in);
    MapMatrix gw(grad.data() + offsets[l], out, in);
    Eigen::Map<Eigen::VectorXd> gb(grad.data() + offsets[l] + static_cast<size_t>(in) * out, out);
    gw.noalias() = delta.transpose() * a;
    gb = delta.colwise().sum().transpose();
    if (l == 0) break;
    ConstMapMatrix w(params_.data() + offsets[l], out, in);
    RowMatrix prev = delta * w;
    // ReLU derivative: the cached activation is positive exactly where the
    // pre-activation was.
    delta = prev.cwiseProduct((a.array() > 0.0).cast<double>().matrix());
  }
  return grad;
}

std::string Mlp::ParamHash() const {
  return Sha256Hex(std::span<const uint8_t>(reinterpret_cast<const uint8_t*>(params_.data()),
                                            params_.size() * sizeof(double)));
}

nlohmann::json Mlp::ToJson() const { return {{"sizes", sizes_}, {"params", params_}}; }

Mlp Mlp::FromJson(const nlohmann::json& j) {
  Mlp m;
  try {
    m.sizes_ = j.at("sizes").get<std::vector<int>>();
    m.params_ = j.at("params").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kLoad, std::string("malformed network: ") + e.what());
  }
  size_t expected = 0;
  for (size_t l = 0; l + 1 < m.sizes_.size(); ++l) {
    expected += static_cast<size_t>(m.sizes_[l]) * m.sizes_[l + 1] + m.sizes_[l + 1];
  }
  Require(m.sizes_.size() >= 2 && expected == m.params_.size(), ErrorCode::kLoad,
          "network parameter count does not match its layer sizes");
  return m;
}

void Adam::Step(std::vector<double>& params, std::span<const double> grad) {
  Require(params.size() == m_.size() && grad.size() == m_.size(), ErrorCode::kDimension,
          "optimizer state size mismatch");
  ++t_;
  const double c1 = 1.0 - std::pow(config_.beta1, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(config_.beta2, static_cast<double>(t_));
  for (size_t i = 0; i < params.size(); ++i) {
    m_[i] = config_.beta1 * m_[i] + (1.0 - config_.beta1) * grad[i];
    v_[i] = config_.beta2 * v_[i] + (1.0 - config_.beta2) * grad[i] * grad[i];
    params[i] -= config_.learning_rate * (m_[i] / c1) / (std::sqrt(v_[i] / c2) + config_.epsilon);
  }
}

nlohmann::json Adam::ToJson() const { return {{"t", t_}, {"m", m_}, {"v", v_}}; }

Adam Adam::FromJson(const nlohmann::json& j, AdamConfig config) {
  Adam a;
  a.config_ = config;
  a.t_ = j.at("t").get<int64_t>();
  a.m_ = j.at("m").get<std::vector<double>>();
  a.v_ = j.at("v").get<std::vector<double>>();
  return a;
}

double ClipGradNorm(std::vector<double>& grad, double max_norm) {
  double sq = 0.0;
  for (double g : grad) sq += g * g;
  const double norm = std::sqrt(sq);
  if (max_norm > 0.0 && norm > max_norm) {
    const double k = max_norm / norm;
    for (double& g : grad) g *= k;
  }
  return norm;
}

}  // namespace rewardlab::trainer
