#pragma once

#include <span>
#include <vector>

#include "attrikit/matrix.hpp"

namespace attrikit {

// Per-feature min-max scaler mapping the fitted range onto [0, 1].
// Constant features map to 0. Inputs outside the fitted range extrapolate
// linearly.
class MinMaxScaler {
 public:
  MinMaxScaler() = default;
  MinMaxScaler(std::vector<double> mins, std::vector<double> maxs);

  static MinMaxScaler fit(const Matrix& features);
  // Pass-through scaler ([0, 1] bounds on every feature).
  static MinMaxScaler identity(std::size_t dim);

  std::vector<double> transform(std::span<const double> x) const;
  Matrix transform(const Matrix& features) const;

  const std::vector<double>& mins() const { return min_; }
  const std::vector<double>& maxs() const { return max_; }
  std::size_t dim() const { return min_.size(); }

  bool operator==(const MinMaxScaler&) const = default;

 private:
  std::vector<double> min_;
  std::vector<double> max_;
};

}  // namespace attrikit
