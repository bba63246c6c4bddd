#include "attrikit/pipeline.hpp"

#include <future>
#include <stdexcept>

namespace attrikit {

AnyModel fit_model(const ModelSpec& spec, const EncodedDataset& train, FitInfo* info) {
  if (spec.kind == "knn") {
    return knn_fit(train, spec.knn);
  }
  if (spec.kind == "gnb") {
    return nb_fit(train, spec.gnb);
  }
  if (spec.kind == "logreg") {
    LogisticModel model = lr_fit(train, spec.logreg);
    if (info) info->logreg_iterations = model.iterations;
    return model;
  }
  if (spec.kind == "mlp") {
    MlpTrainLog log;
    MlpModel model = mlp_fit(train, spec.mlp, &log);
    if (info) {
      info->mlp_initial_loss = log.initial_loss;
      info->mlp_final_loss =
          log.epoch_mean_loss.empty() ? log.initial_loss : log.epoch_mean_loss.back();
    }
    return model;
  }
  throw std::invalid_argument("unknown model kind '" + spec.kind + "'");
}

std::vector<double> score_rows(const AnyModel& model, const Matrix& features) {
  std::vector<double> scores(features.rows());
  for (std::size_t i = 0; i < features.rows(); ++i) {
    scores[i] = model_score(model, features.row(i));
  }
  return scores;
}

std::vector<int> predict_rows(const AnyModel& model, const Matrix& features) {
  std::vector<int> predictions(features.rows());
  for (std::size_t i = 0; i < features.rows(); ++i) {
    predictions[i] = model_predict(model, features.row(i));
  }
  return predictions;
}

EvaluationReport evaluate_model(const AnyModel& model, const EncodedDataset& test,
                                std::uint64_t seed, double fraction,
                                std::size_t train_rows) {
  EvaluationReport report;
  report.model = model_descriptor(model);
  report.seed = seed;
  report.split_fraction = fraction;
  report.train_rows = train_rows;
  report.test_rows = test.size();

  const std::vector<double> scores = score_rows(model, test.features);
  const std::vector<int> predictions = predict_rows(model, test.features);
  report.counts = confusion(test.labels, predictions);
  report.accuracy = accuracy(report.counts);
  report.f1 = f1_score(report.counts);
  report.auc = auc_trapezoid(roc_curve(test.labels, scores));
  return report;
}

CompareResult compare_on_seed(const EncodedDataset& ds, double fraction,
                              std::uint64_t seed, bool scale_knn_gnb) {
  const SplitResult parts = split(ds, fraction, seed);

  const std::vector<std::string> kinds = {"knn", "gnb", "logreg", "mlp"};
  auto run_one = [&](const std::string& kind) {
    ModelSpec spec;
    spec.kind = kind;
    spec.knn.scale_features = scale_knn_gnb;
    spec.gnb.scale_features = scale_knn_gnb;
    spec.mlp.seed = seed + kMlpSeedOffset;
    const AnyModel model = fit_model(spec, parts.train);
    const EvaluationReport report =
        evaluate_model(model, parts.test, seed, fraction, parts.train.size());
    return CompareRow{kind, report.auc, report.accuracy, report.f1};
  };

  std::vector<std::future<CompareRow>> futures;
  futures.reserve(kinds.size());
  for (const std::string& kind : kinds) {
    futures.push_back(std::async(std::launch::async, run_one, kind));
  }

  CompareResult result;
  result.seed = seed;
  for (auto& f : futures) result.rows.push_back(f.get());
  return result;
}

}  // namespace attrikit
