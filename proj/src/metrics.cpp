#include "attrikit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "attrikit/errors.hpp"

namespace attrikit {
namespace {

void check_binary(const std::vector<int>& values, const char* what) {
  for (int v : values) {
    if (v != 0 && v != 1) {
      throw std::invalid_argument(std::string(what) + " must be 0 or 1, got " +
                                  std::to_string(v));
    }
  }
}

std::pair<std::size_t, std::size_t> class_counts(const std::vector<int>& labels) {
  const auto positives =
      static_cast<std::size_t>(std::count(labels.begin(), labels.end(), 1));
  return {positives, labels.size() - positives};
}

}  // namespace

ConfusionMatrix confusion(const std::vector<int>& labels,
                          const std::vector<int>& predictions) {
  if (labels.empty() || labels.size() != predictions.size()) {
    throw std::invalid_argument("confusion: empty input or length mismatch");
  }
  check_binary(labels, "labels");
  check_binary(predictions, "predictions");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == 1) {
      predictions[i] == 1 ? ++cm.tp : ++cm.fn;
    } else {
      predictions[i] == 1 ? ++cm.fp : ++cm.tn;
    }
  }
  return cm;
}

double accuracy(const ConfusionMatrix& cm) {
  if (cm.total() == 0) {
    throw std::invalid_argument("accuracy: empty confusion matrix");
  }
  return static_cast<double>(cm.tp + cm.tn) / static_cast<double>(cm.total());
}

double f1_score(const ConfusionMatrix& cm) {
  if (cm.total() == 0) {
    throw std::invalid_argument("f1: empty confusion matrix");
  }
  const double precision =
      cm.tp + cm.fp == 0 ? 0.0
                         : static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fp);
  const double recall =
      cm.tp + cm.fn == 0 ? 0.0
                         : static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fn);
  if (precision + recall == 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

RocCurve roc_curve(const std::vector<int>& labels, const std::vector<double>& scores) {
  if (labels.empty() || labels.size() != scores.size()) {
    throw std::invalid_argument("roc_curve: empty input or length mismatch");
  }
  check_binary(labels, "labels");
  for (double s : scores) {
    if (!std::isfinite(s)) {
      throw std::invalid_argument("roc_curve: scores must be finite");
    }
  }
  const auto [positives, negatives] = class_counts(labels);
  if (positives == 0 || negatives == 0) {
    throw DataError("roc_curve: needs at least one positive and one negative label");
  }

  std::vector<std::size_t> order(labels.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] > scores[b] || (scores[a] == scores[b] && a < b);
  });

  RocCurve curve;
  curve.points.push_back({std::numeric_limits<double>::infinity(), 0.0, 0.0});
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t i = 0;
  while (i < order.size()) {
    const double threshold = scores[order[i]];
    // Tied scores fall in one sweep step and yield one curve point.
    while (i < order.size() && scores[order[i]] == threshold) {
      labels[order[i]] == 1 ? ++tp : ++fp;
      ++i;
    }
    curve.points.push_back({threshold,
                            static_cast<double>(fp) / static_cast<double>(negatives),
                            static_cast<double>(tp) / static_cast<double>(positives)});
  }
  return curve;
}

double auc_trapezoid(const RocCurve& curve) {
  double area = 0.0;
  for (std::size_t i = 1; i < curve.points.size(); ++i) {
    const RocPoint& a = curve.points[i - 1];
    const RocPoint& b = curve.points[i];
    area += (b.fpr - a.fpr) * (a.tpr + b.tpr) / 2.0;
  }
  return area;
}

double auc_pair_count(const std::vector<int>& labels, const std::vector<double>& scores) {
  if (labels.empty() || labels.size() != scores.size()) {
    throw std::invalid_argument("auc_pair_count: empty input or length mismatch");
  }
  check_binary(labels, "labels");
  const auto [positives, negatives] = class_counts(labels);
  if (positives == 0 || negatives == 0) {
    throw DataError("auc_pair_count: needs at least one positive and one negative label");
  }
  double favorable = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != 1) continue;
    for (std::size_t j = 0; j < labels.size(); ++j) {
      if (labels[j] != 0) continue;
      if (scores[i] > scores[j]) {
        favorable += 1.0;
      } else if (scores[i] == scores[j]) {
        favorable += 0.5;
      }
    }
  }
  return favorable / (static_cast<double>(positives) * static_cast<double>(negatives));
}

}  // namespace attrikit
