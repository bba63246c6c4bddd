#pragma once

#include <array>
#include <optional>
#include <span>

#include "attrikit/dataset.hpp"
#include "attrikit/matrix.hpp"
#include "attrikit/scaler.hpp"

namespace attrikit {

struct GaussianNbConfig {
  // Added to every variance, scaled by the largest overall feature variance.
  double var_smoothing = 1e-9;
  bool scale_features = false;
};

// Two-class Gaussian naive Bayes: class priors plus one Gaussian per class
// and feature, combined in log space.
struct GaussianNbModel {
  std::array<double, 2> priors{};  // P(Y=0), P(Y=1); positive, sum to 1
  Matrix means;                    // 2 x d
  Matrix variances;                // 2 x d, strictly positive
  double var_smoothing = 1e-9;
  std::optional<MinMaxScaler> scaler;

  // log P(Y=c) + sum_j log N(x_j; mean_{c,j}, var_{c,j}) for c in {0, 1}.
  std::array<double, 2> log_joint(std::span<const double> x) const;
  // Posterior of class 1 via a stabilized softmax over the two log-joints.
  double predict_proba(std::span<const double> x) const;
  // Argmax of the log-joints; an exact tie goes to class 0.
  int predict(std::span<const double> x) const;
};

GaussianNbModel nb_fit(const EncodedDataset& train, const GaussianNbConfig& config = {});

// softmax over two log-densities; returns the probability of the second.
double posterior_from_log_joints(double log_joint0, double log_joint1);

}  // namespace attrikit
