#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "attrikit/dataset.hpp"
#include "attrikit/scaler.hpp"

namespace attrikit {

// Numerically stable logistic sigmoid.
double sigmoid(double z);

struct LogisticConfig {
  double lambda = 1.0;  // L2 strength; the intercept is never penalized
  double learning_rate = 0.1;
  std::size_t max_iters = 5000;
  double tol = 1e-7;  // stop when |loss_t - loss_{t-1}| < tol
};

// L2-regularized logistic regression. Features are min-max scaled
// internally; the scaler is part of the model so the public interface takes
// raw features.
struct LogisticModel {
  double intercept = 0.0;
  std::vector<double> weights;
  double lambda = 1.0;
  MinMaxScaler scaler;
  std::size_t iterations = 0;  // gradient-descent steps taken by lr_fit

  // sigmoid(intercept + w . scale(x)), clamped to the open interval (0, 1).
  double predict_proba(std::span<const double> x) const;
  int predict(std::span<const double> x) const;  // 1 when proba > 1/2
};

struct LrGradient {
  double intercept = 0.0;
  std::vector<double> weights;
};

// Mean negative log-likelihood plus (lambda / 2n) * |w|^2; log arguments are
// clamped 1e-15 away from the boundary.
double lr_loss(const LogisticModel& model, const EncodedDataset& data);

// Analytic gradient of lr_loss.
LrGradient lr_gradient(const LogisticModel& model, const EncodedDataset& data);

// Full-batch gradient descent from zero initialization; deterministic.
LogisticModel lr_fit(const EncodedDataset& train, const LogisticConfig& config = {});

}  // namespace attrikit
