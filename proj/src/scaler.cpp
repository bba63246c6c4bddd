#include "attrikit/scaler.hpp"

#include <algorithm>
#include <stdexcept>

namespace attrikit {

MinMaxScaler::MinMaxScaler(std::vector<double> mins, std::vector<double> maxs)
    : min_(std::move(mins)), max_(std::move(maxs)) {
  if (min_.size() != max_.size()) {
    throw std::invalid_argument("MinMaxScaler: min/max size mismatch");
  }
  for (std::size_t j = 0; j < min_.size(); ++j) {
    if (!(max_[j] >= min_[j])) {
      throw std::invalid_argument("MinMaxScaler: max < min");
    }
  }
}

MinMaxScaler MinMaxScaler::fit(const Matrix& features) {
  if (features.rows() == 0) {
    throw std::invalid_argument("MinMaxScaler::fit: empty feature matrix");
  }
  std::vector<double> lo(features.cols()), hi(features.cols());
  for (std::size_t j = 0; j < features.cols(); ++j) {
    lo[j] = hi[j] = features(0, j);
  }
  for (std::size_t i = 1; i < features.rows(); ++i) {
    for (std::size_t j = 0; j < features.cols(); ++j) {
      lo[j] = std::min(lo[j], features(i, j));
      hi[j] = std::max(hi[j], features(i, j));
    }
  }
  return MinMaxScaler(std::move(lo), std::move(hi));
}

MinMaxScaler MinMaxScaler::identity(std::size_t dim) {
  return MinMaxScaler(std::vector<double>(dim, 0.0), std::vector<double>(dim, 1.0));
}

std::vector<double> MinMaxScaler::transform(std::span<const double> x) const {
  if (x.size() != min_.size()) {
    throw std::invalid_argument("MinMaxScaler: dimension mismatch");
  }
  std::vector<double> out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double range = max_[j] - min_[j];
    out[j] = range > 0.0 ? (x[j] - min_[j]) / range : 0.0;
  }
  return out;
}

Matrix MinMaxScaler::transform(const Matrix& features) const {
  if (features.cols() != min_.size()) {
    throw std::invalid_argument("MinMaxScaler: dimension mismatch");
  }
  Matrix out(features.rows(), features.cols());
  for (std::size_t i = 0; i < features.rows(); ++i) {
    for (std::size_t j = 0; j < features.cols(); ++j) {
      const double range = max_[j] - min_[j];
      out(i, j) = range > 0.0 ? (features(i, j) - min_[j]) / range : 0.0;
    }
  }
  return out;
}

}  // namespace attrikit
