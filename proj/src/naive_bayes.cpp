#include "attrikit/naive_bayes.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "attrikit/errors.hpp"

namespace attrikit {

double posterior_from_log_joints(double log_joint0, double log_joint1) {
  const double m = std::max(log_joint0, log_joint1);
  const double e0 = std::exp(log_joint0 - m);
  const double e1 = std::exp(log_joint1 - m);
  return e1 / (e0 + e1);
}

std::array<double, 2> GaussianNbModel::log_joint(std::span<const double> x) const {
  std::vector<double> scaled;
  if (scaler) {
    scaled = scaler->transform(x);
    x = scaled;
  }
  if (x.size() != means.cols()) {
    throw std::invalid_argument("gnb: dimension mismatch");
  }
  std::array<double, 2> lj{std::log(priors[0]), std::log(priors[1])};
  constexpr double kLog2Pi = 1.8378770664093453;  // log(2*pi)
  for (std::size_t c = 0; c < 2; ++c) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double var = variances(c, j);
      const double diff = x[j] - means(c, j);
      lj[c] += -0.5 * (kLog2Pi + std::log(var)) - diff * diff / (2.0 * var);
    }
  }
  return lj;
}

double GaussianNbModel::predict_proba(std::span<const double> x) const {
  const auto lj = log_joint(x);
  return posterior_from_log_joints(lj[0], lj[1]);
}

int GaussianNbModel::predict(std::span<const double> x) const {
  const auto lj = log_joint(x);
  return lj[1] > lj[0] ? 1 : 0;  // tie -> 0
}

GaussianNbModel nb_fit(const EncodedDataset& train, const GaussianNbConfig& config) {
  if (config.var_smoothing < 0.0) {
    throw std::invalid_argument("gnb: var_smoothing must be >= 0");
  }
  const std::size_t n = train.size();
  const std::size_t d = train.dim();
  std::array<std::size_t, 2> counts{0, 0};
  for (int y : train.labels) counts[static_cast<std::size_t>(y)]++;
  if (counts[0] == 0 || counts[1] == 0) {
    throw TrainError("gnb: both classes must appear in the training data");
  }

  GaussianNbModel model;
  model.var_smoothing = config.var_smoothing;

  const Matrix* features = &train.features;
  Matrix scaled;
  if (config.scale_features) {
    model.scaler = MinMaxScaler::fit(train.features);
    scaled = model.scaler->transform(train.features);
    features = &scaled;
  }

  model.priors = {static_cast<double>(counts[0]) / static_cast<double>(n),
                  static_cast<double>(counts[1]) / static_cast<double>(n)};
  model.means = Matrix(2, d);
  model.variances = Matrix(2, d);

  for (std::size_t i = 0; i < n; ++i) {
    const auto c = static_cast<std::size_t>(train.labels[i]);
    for (std::size_t j = 0; j < d; ++j) {
      model.means(c, j) += (*features)(i, j);
    }
  }
  for (std::size_t c = 0; c < 2; ++c) {
    for (std::size_t j = 0; j < d; ++j) {
      model.means(c, j) /= static_cast<double>(counts[c]);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto c = static_cast<std::size_t>(train.labels[i]);
    for (std::size_t j = 0; j < d; ++j) {
      const double diff = (*features)(i, j) - model.means(c, j);
      model.variances(c, j) += diff * diff;
    }
  }
  for (std::size_t c = 0; c < 2; ++c) {
    for (std::size_t j = 0; j < d; ++j) {
      model.variances(c, j) /= static_cast<double>(counts[c]);  // population variance
    }
  }

  // Smoothing floor: var_smoothing times the largest overall feature
  // variance; when the whole matrix is constant that variance is zero, so
  // fall back to the raw smoothing value.
  double max_overall_var = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += (*features)(i, j);
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double diff = (*features)(i, j) - mean;
      var += diff * diff;
    }
    var /= static_cast<double>(n);
    max_overall_var = std::max(max_overall_var, var);
  }
  const double epsilon =
      config.var_smoothing * (max_overall_var > 0.0 ? max_overall_var : 1.0);
  for (std::size_t c = 0; c < 2; ++c) {
    for (std::size_t j = 0; j < d; ++j) {
      model.variances(c, j) += epsilon;
      if (!(model.variances(c, j) > 0.0)) {
        throw TrainError("gnb: zero variance in class " + std::to_string(c) +
                         ", feature " + std::to_string(j) +
                         "; increase var_smoothing");
      }
    }
  }
  return model;
}

}  // namespace attrikit
