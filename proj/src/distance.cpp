#include "attrikit/distance.hpp"

#include <cmath>
#include <stdexcept>

#include "attrikit/format.hpp"

namespace attrikit {
namespace {

void check_dims(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.empty()) {
    throw std::invalid_argument("distance: dimension mismatch (" +
                                std::to_string(x.size()) + " vs " +
                                std::to_string(y.size()) + ")");
  }
}

}  // namespace

double manhattan_distance(std::span<const double> x, std::span<const double> y) {
  check_dims(x, y);
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sum += std::abs(x[i] - y[i]);
  }
  return sum;
}

double euclidean_distance(std::span<const double> x, std::span<const double> y) {
  check_dims(x, y);
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

double minkowski_distance(std::span<const double> x, std::span<const double> y,
                          double p) {
  if (!(p >= 1.0)) {
    throw std::invalid_argument("minkowski: p must be >= 1, got " + repr(p));
  }
  check_dims(x, y);
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sum += std::pow(std::abs(x[i] - y[i]), p);
  }
  return std::pow(sum, 1.0 / p);
}

Metric Metric::minkowski(double p) {
  if (!(p >= 1.0)) {
    throw std::invalid_argument("minkowski: p must be >= 1, got " + repr(p));
  }
  return {MetricKind::kMinkowski, p};
}

double Metric::operator()(std::span<const double> x, std::span<const double> y) const {
  switch (kind) {
    case MetricKind::kManhattan:
      return manhattan_distance(x, y);
    case MetricKind::kEuclidean:
      return euclidean_distance(x, y);
    case MetricKind::kMinkowski:
      return minkowski_distance(x, y, p);
  }
  throw std::logic_error("unreachable metric kind");
}

double Metric::order() const {
  switch (kind) {
    case MetricKind::kManhattan:
      return 1.0;
    case MetricKind::kEuclidean:
      return 2.0;
    case MetricKind::kMinkowski:
      return p;
  }
  throw std::logic_error("unreachable metric kind");
}

std::string Metric::name() const {
  switch (kind) {
    case MetricKind::kManhattan:
      return "manhattan";
    case MetricKind::kEuclidean:
      return "euclidean";
    case MetricKind::kMinkowski:
      return "minkowski(p=" + repr(p) + ")";
  }
  throw std::logic_error("unreachable metric kind");
}

}  // namespace attrikit
