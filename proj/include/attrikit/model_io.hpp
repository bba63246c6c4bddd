#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>

#include "attrikit/dataset.hpp"
#include "attrikit/knn.hpp"
#include "attrikit/logistic.hpp"
#include "attrikit/mlp.hpp"
#include "attrikit/naive_bayes.hpp"

namespace attrikit {

using AnyModel = std::variant<KnnModel, GaussianNbModel, LogisticModel, MlpModel>;

// "knn", "gnb", "logreg", or "mlp".
std::string model_kind(const AnyModel& model);
// Descriptor with the hyperparameters, e.g. "knn (k=6, metric=manhattan,
// weights=uniform)".
std::string model_descriptor(const AnyModel& model);
double model_score(const AnyModel& model, std::span<const double> x);
int model_predict(const AnyModel& model, std::span<const double> x);

inline constexpr int kModelFormatVersion = 1;

// Self-describing model file: everything needed to encode raw feature rows
// and score them, plus the split provenance used to re-derive the held-out
// partition.
struct ModelFile {
  int format_version = kModelFormatVersion;
  std::uint64_t seed = 0;
  double split_fraction = 0.7;
  std::uint64_t partition_checksum = 0;
  Schema schema;
  std::vector<CategoricalEncoder> encoders;
  AnyModel model;
};

// Canonical JSON text: sorted keys, shortest round-trip numbers, so
// save -> load -> save is byte identical.
std::string save_model(const ModelFile& file);
ModelFile load_model(std::string_view text);  // throws DataError

// FNV-1a over the training partition (row indices, labels, and feature bit
// patterns). Detects both a different shuffle and different data content.
std::uint64_t partition_checksum(const SplitResult& split);

}  // namespace attrikit
