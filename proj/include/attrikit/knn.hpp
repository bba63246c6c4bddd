#pragma once

#include <optional>
#include <span>
#include <vector>

#include "attrikit/dataset.hpp"
#include "attrikit/distance.hpp"
#include "attrikit/kdtree.hpp"
#include "attrikit/scaler.hpp"

namespace attrikit {

enum class VoteWeighting { kUniform, kInverseDistance };

struct KnnConfig {
  std::size_t k = 6;
  Metric metric = Metric::manhattan();
  VoteWeighting weighting = VoteWeighting::kUniform;
  std::size_t leaf_capacity = 16;
  bool scale_features = false;
};

// Nearest-neighbor classifier: keeps the (optionally scaled) training set in
// memory behind an exact KD-tree index. Immutable once fitted.
struct KnnModel {
  KnnConfig config;
  std::optional<MinMaxScaler> scaler;  // engaged when config.scale_features
  Matrix train_features;               // already scaled when scaler is engaged
  std::vector<int> train_labels;
  KdTree index;

  // The k nearest training rows, ascending by (distance, row index).
  std::vector<Neighbor> neighbors(std::span<const double> x) const;

  // Positive-class vote share in [0, 1]. Uniform weighting counts neighbors;
  // inverse-distance weights each neighbor by 1/distance, except that when
  // any neighbor sits at distance zero only the zero-distance neighbors vote.
  double score(std::span<const double> x) const;

  // 1 when score > 1/2, 0 when score < 1/2. An exact tie goes to the class
  // with the smaller summed neighbor distance, and to 0 when those are equal
  // too.
  int predict(std::span<const double> x) const;
};

KnnModel knn_fit(const EncodedDataset& train, const KnnConfig& config = {});

}  // namespace attrikit
