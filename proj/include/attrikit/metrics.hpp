#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace attrikit {

// Binary confusion counts; the positive class is label 1.
struct ConfusionMatrix {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;

  std::size_t total() const { return tp + fp + fn + tn; }

  bool operator==(const ConfusionMatrix&) const = default;
};

ConfusionMatrix confusion(const std::vector<int>& labels,
                          const std::vector<int>& predictions);

double accuracy(const ConfusionMatrix& cm);
// Positive-class F1; any 0/0 inside precision, recall, or the harmonic mean
// yields 0.
double f1_score(const ConfusionMatrix& cm);

struct RocPoint {
  double threshold = 0.0;
  double fpr = 0.0;
  double tpr = 0.0;

  bool operator==(const RocPoint&) const = default;
};

// Thresholds strictly decreasing, fpr/tpr non-decreasing, first point
// (0, 0) at threshold +infinity, last point (1, 1).
struct RocCurve {
  std::vector<RocPoint> points;
};

// One sweep over the scores in descending order; tied scores collapse into a
// single curve point. Needs at least one positive and one negative label.
RocCurve roc_curve(const std::vector<int>& labels, const std::vector<double>& scores);

// Trapezoidal area under the curve.
double auc_trapezoid(const RocCurve& curve);

// Probability that a random positive outranks a random negative, ties
// counted 1/2; direct pair enumeration, used as the oracle for the curve
// integral.
double auc_pair_count(const std::vector<int>& labels, const std::vector<double>& scores);

struct EvaluationReport {
  std::string model;  // descriptor, e.g. "knn (k=6, metric=manhattan, weights=uniform)"
  std::uint64_t seed = 0;
  double split_fraction = 0.0;
  std::size_t train_rows = 0;
  std::size_t test_rows = 0;
  double auc = 0.0;
  double accuracy = 0.0;
  double f1 = 0.0;
  ConfusionMatrix counts;
};

}  // namespace attrikit
