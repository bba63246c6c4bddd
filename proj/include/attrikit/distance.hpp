#pragma once

#include <span>
#include <string>

namespace attrikit {

// sum_i |x_i - y_i|
double manhattan_distance(std::span<const double> x, std::span<const double> y);
// (sum_i (x_i - y_i)^2)^(1/2)
double euclidean_distance(std::span<const double> x, std::span<const double> y);
// (sum_i |x_i - y_i|^p)^(1/p), p >= 1
double minkowski_distance(std::span<const double> x, std::span<const double> y,
                          double p);

enum class MetricKind { kManhattan, kEuclidean, kMinkowski };

// Minkowski-family metric; p only matters for kMinkowski.
struct Metric {
  MetricKind kind = MetricKind::kManhattan;
  double p = 1.0;

  static Metric manhattan() { return {MetricKind::kManhattan, 1.0}; }
  static Metric euclidean() { return {MetricKind::kEuclidean, 2.0}; }
  static Metric minkowski(double p);

  double operator()(std::span<const double> x, std::span<const double> y) const;

  // Order exponent: 1 for manhattan, 2 for euclidean, p otherwise.
  double order() const;
  std::string name() const;

  bool operator==(const Metric&) const = default;
};

}  // namespace attrikit
