#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "attrikit/dataset.hpp"
#include "attrikit/metrics.hpp"
#include "attrikit/model_io.hpp"

namespace attrikit {

// Hyperparameter bundle for one model kind, as selected by CLI flags.
struct ModelSpec {
  std::string kind;  // "knn" | "gnb" | "logreg" | "mlp"
  KnnConfig knn;
  GaussianNbConfig gnb;
  LogisticConfig logreg;
  MlpConfig mlp;
};

// The MLP training stream is seeded with the command seed plus this model
// offset (its position in the fixed model order), keeping per-model streams
// independent of the split stream.
inline constexpr std::uint64_t kMlpSeedOffset = 3;

struct FitInfo {
  std::size_t logreg_iterations = 0;
  double mlp_initial_loss = 0.0;
  double mlp_final_loss = 0.0;
};

AnyModel fit_model(const ModelSpec& spec, const EncodedDataset& train,
                   FitInfo* info = nullptr);

std::vector<double> score_rows(const AnyModel& model, const Matrix& features);
std::vector<int> predict_rows(const AnyModel& model, const Matrix& features);

EvaluationReport evaluate_model(const AnyModel& model, const EncodedDataset& test,
                                std::uint64_t seed, double fraction,
                                std::size_t train_rows);

struct CompareRow {
  std::string model;  // kind
  double auc = 0.0;
  double accuracy = 0.0;
  double f1 = 0.0;
};

struct CompareResult {
  std::uint64_t seed = 0;
  std::vector<CompareRow> rows;  // fixed order: knn, gnb, logreg, mlp
};

// Train all four models with their default configurations on the identical
// split and evaluate them on the identical test partition. The four fits run
// concurrently; every model is seed-deterministic, so the result does not
// depend on scheduling.
CompareResult compare_on_seed(const EncodedDataset& ds, double fraction,
                              std::uint64_t seed, bool scale_knn_gnb);

}  // namespace attrikit
