#include "attrikit/logistic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "attrikit/errors.hpp"

namespace attrikit {
namespace {

constexpr double kProbFloor = 1e-15;  // log-argument clamp

double clamp_open_unit(double p) {
  return std::clamp(p, std::numeric_limits<double>::min(),
                    std::nextafter(1.0, 0.0));
}

double cross_entropy(double p, int y) {
  const double q = std::clamp(p, kProbFloor, 1.0 - kProbFloor);
  return y == 1 ? -std::log(q) : -std::log(1.0 - q);
}

// One pass over the scaled design matrix: data-term loss and, when
// requested, the gradient. Regularization terms are added by the callers.
double data_pass(const Matrix& x, const std::vector<int>& y, double intercept,
                 const std::vector<double>& weights, double* grad_intercept,
                 std::vector<double>* grad_weights) {
  const std::size_t n = x.rows();
  const std::size_t d = x.cols();
  double loss = 0.0;
  if (grad_intercept) *grad_intercept = 0.0;
  if (grad_weights) grad_weights->assign(d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double z = intercept;
    for (std::size_t j = 0; j < d; ++j) z += weights[j] * x(i, j);
    const double p = sigmoid(z);
    loss += cross_entropy(p, y[i]);
    if (grad_intercept) {
      const double residual = p - static_cast<double>(y[i]);
      *grad_intercept += residual;
      for (std::size_t j = 0; j < d; ++j) (*grad_weights)[j] += residual * x(i, j);
    }
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  loss *= inv_n;
  if (grad_intercept) {
    *grad_intercept *= inv_n;
    for (double& g : *grad_weights) g *= inv_n;
  }
  return loss;
}

void check_nonempty(const EncodedDataset& data) {
  if (data.size() == 0) {
    throw std::invalid_argument("logistic: empty data");
  }
}

}  // namespace

double sigmoid(double z) {
  if (z >= 0.0) {
    return 1.0 / (1.0 + std::exp(-z));
  }
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double LogisticModel::predict_proba(std::span<const double> x) const {
  const std::vector<double> s = scaler.transform(x);
  double z = intercept;
  for (std::size_t j = 0; j < s.size(); ++j) z += weights[j] * s[j];
  return clamp_open_unit(sigmoid(z));
}

int LogisticModel::predict(std::span<const double> x) const {
  return predict_proba(x) > 0.5 ? 1 : 0;
}

double lr_loss(const LogisticModel& model, const EncodedDataset& data) {
  check_nonempty(data);
  const Matrix scaled = model.scaler.transform(data.features);
  double loss = data_pass(scaled, data.labels, model.intercept, model.weights,
                          nullptr, nullptr);
  double penalty = 0.0;
  for (double w : model.weights) penalty += w * w;
  loss += model.lambda * penalty / (2.0 * static_cast<double>(data.size()));
  return loss;
}

LrGradient lr_gradient(const LogisticModel& model, const EncodedDataset& data) {
  check_nonempty(data);
  const Matrix scaled = model.scaler.transform(data.features);
  LrGradient grad;
  data_pass(scaled, data.labels, model.intercept, model.weights, &grad.intercept,
            &grad.weights);
  const double reg = model.lambda / static_cast<double>(data.size());
  for (std::size_t j = 0; j < model.weights.size(); ++j) {
    grad.weights[j] += reg * model.weights[j];  // intercept unpenalized
  }
  return grad;
}

LogisticModel lr_fit(const EncodedDataset& train, const LogisticConfig& config) {
  check_nonempty(train);
  if (config.lambda < 0.0 || config.learning_rate <= 0.0) {
    throw std::invalid_argument("logistic: lambda must be >= 0 and learning_rate > 0");
  }
  bool has_positive = false;
  bool has_negative = false;
  for (int y : train.labels) (y == 1 ? has_positive : has_negative) = true;
  if (!has_positive || !has_negative) {
    throw TrainError("logistic: both classes must appear in the training data");
  }

  LogisticModel model;
  model.lambda = config.lambda;
  model.scaler = MinMaxScaler::fit(train.features);
  model.weights.assign(train.dim(), 0.0);

  const Matrix scaled = model.scaler.transform(train.features);
  const std::size_t n = train.size();
  const double reg = config.lambda / static_cast<double>(n);

  auto loss_and_grad = [&](double* gb, std::vector<double>* gw) {
    double loss = data_pass(scaled, train.labels, model.intercept, model.weights, gb, gw);
    double penalty = 0.0;
    for (double w : model.weights) penalty += w * w;
    loss += config.lambda * penalty / (2.0 * static_cast<double>(n));
    if (gw) {
      for (std::size_t j = 0; j < model.weights.size(); ++j) {
        (*gw)[j] += reg * model.weights[j];
      }
    }
    return loss;
  };

  double grad_intercept = 0.0;
  std::vector<double> grad_weights;
  double loss = loss_and_grad(&grad_intercept, &grad_weights);
  for (std::size_t iter = 0; iter < config.max_iters; ++iter) {
    model.intercept -= config.learning_rate * grad_intercept;
    for (std::size_t j = 0; j < model.weights.size(); ++j) {
      model.weights[j] -= config.learning_rate * grad_weights[j];
    }
    const double next_loss = loss_and_grad(&grad_intercept, &grad_weights);
    if (!std::isfinite(next_loss)) {
      throw TrainError("logistic: loss diverged; lower the learning rate");
    }
    model.iterations = iter + 1;
    if (std::abs(next_loss - loss) < config.tol) {
      loss = next_loss;
      break;
    }
    loss = next_loss;
  }
  return model;
}

}  // namespace attrikit
