#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "attrikit/dataset.hpp"
#include "attrikit/matrix.hpp"
#include "attrikit/scaler.hpp"

namespace attrikit {

struct MlpConfig {
  std::size_t hidden_size = 100;
  double learning_rate = 0.01;
  double momentum = 0.9;
  std::size_t batch_size = 200;
  std::size_t epochs = 200;
  std::uint64_t seed = 42;
};

// One ReLU hidden layer, logistic output. Features are min-max scaled
// internally; the scaler is part of the model.
struct MlpModel {
  Matrix w1;               // hidden_size x d
  std::vector<double> b1;  // hidden_size
  std::vector<double> w2;  // hidden_size
  double b2 = 0.0;
  MinMaxScaler scaler;
  std::uint64_t train_seed = 0;

  std::size_t hidden_size() const { return b1.size(); }

  // sigmoid(w2 . relu(w1 . scale(x) + b1) + b2), clamped to (0, 1).
  double forward(std::span<const double> x) const;
  int predict(std::span<const double> x) const;  // 1 when forward > 1/2
};

struct MlpGradients {
  Matrix w1;
  std::vector<double> b1;
  std::vector<double> w2;
  double b2 = 0.0;
};

// Mean binary cross-entropy over the rows of `features` (raw features; the
// model's scaler is applied internally). Log arguments are clamped 1e-15
// away from the boundary.
double mlp_loss(const MlpModel& model, const Matrix& features,
                const std::vector<int>& labels);

// Exact gradients of the mean cross-entropy via backpropagation. The ReLU
// subgradient at 0 is taken as 0.
MlpGradients mlp_gradients(const MlpModel& model, const Matrix& features,
                           const std::vector<int>& labels);

struct MlpTrainLog {
  double initial_loss = 0.0;             // full-data loss before any update
  std::vector<double> epoch_mean_loss;   // per-sample mean of batch losses
};

// Mini-batch gradient descent with classical momentum. Weights start from
// the uniform fan-based scheme U(+-sqrt(6 / (fan_in + fan_out))), biases at
// zero; the one seeded stream drives initialization and the per-epoch
// shuffles, so results are a deterministic function of (data, config, seed).
MlpModel mlp_fit(const EncodedDataset& train, const MlpConfig& config = {},
                 MlpTrainLog* log = nullptr,
                 const std::function<void(std::size_t, double)>& on_epoch = {});

}  // namespace attrikit
