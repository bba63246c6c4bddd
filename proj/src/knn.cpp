#include "attrikit/knn.hpp"

#include <string>

#include "attrikit/errors.hpp"

namespace attrikit {
namespace {

double vote_share(const KnnModel& model, const std::vector<Neighbor>& neighbors) {
  if (model.config.weighting == VoteWeighting::kUniform) {
    std::size_t positive = 0;
    for (const Neighbor& nb : neighbors) {
      positive += static_cast<std::size_t>(model.train_labels[nb.index]);
    }
    return static_cast<double>(positive) / static_cast<double>(neighbors.size());
  }

  bool any_zero = false;
  for (const Neighbor& nb : neighbors) {
    if (nb.distance == 0.0) {
      any_zero = true;
      break;
    }
  }
  if (any_zero) {
    // Coincident neighbors dominate: only they vote.
    std::size_t zero_count = 0;
    std::size_t zero_positive = 0;
    for (const Neighbor& nb : neighbors) {
      if (nb.distance == 0.0) {
        ++zero_count;
        zero_positive += static_cast<std::size_t>(model.train_labels[nb.index]);
      }
    }
    return static_cast<double>(zero_positive) / static_cast<double>(zero_count);
  }

  double weight_sum = 0.0;
  double weight_positive = 0.0;
  for (const Neighbor& nb : neighbors) {
    const double w = 1.0 / nb.distance;
    weight_sum += w;
    if (model.train_labels[nb.index] == 1) weight_positive += w;
  }
  return weight_positive / weight_sum;
}

}  // namespace

std::vector<Neighbor> KnnModel::neighbors(std::span<const double> x) const {
  if (scaler) {
    const std::vector<double> scaled = scaler->transform(x);
    return index.query(train_features, scaled, config.k, config.metric);
  }
  return index.query(train_features, x, config.k, config.metric);
}

double KnnModel::score(std::span<const double> x) const {
  return vote_share(*this, neighbors(x));
}

int KnnModel::predict(std::span<const double> x) const {
  const std::vector<Neighbor> nb = neighbors(x);
  const double share = vote_share(*this, nb);
  if (share > 0.5) return 1;
  if (share < 0.5) return 0;
  // Exact tie: the class with the smaller summed neighbor distance wins.
  double sum_positive = 0.0;
  double sum_negative = 0.0;
  for (const Neighbor& n : nb) {
    if (train_labels[n.index] == 1) {
      sum_positive += n.distance;
    } else {
      sum_negative += n.distance;
    }
  }
  return sum_positive < sum_negative ? 1 : 0;
}

KnnModel knn_fit(const EncodedDataset& train, const KnnConfig& config) {
  if (train.size() == 0) {
    throw TrainError("knn: empty training set");
  }
  if (config.k == 0 || config.k > train.size()) {
    throw TrainError("knn: k=" + std::to_string(config.k) +
                     " out of range for " + std::to_string(train.size()) +
                     " training rows");
  }
  KnnModel model;
  model.config = config;
  if (config.scale_features) {
    model.scaler = MinMaxScaler::fit(train.features);
    model.train_features = model.scaler->transform(train.features);
  } else {
    model.train_features = train.features;
  }
  model.train_labels = train.labels;
  model.index = KdTree(model.train_features, config.leaf_capacity);
  return model;
}

}  // namespace attrikit
