#include "attrikit/model_io.hpp"

#include <bit>
#include <cstdio>
#include <string>

#include <json.hpp>

#include "attrikit/errors.hpp"
#include "attrikit/format.hpp"

namespace attrikit {
namespace {

using nlohmann::json;  // std::map backed, so keys serialize sorted

json to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j) {
  std::vector<std::vector<double>> rows;
  for (const auto& row : j) {
    rows.push_back(row.get<std::vector<double>>());
  }
  return Matrix::from_rows(rows);
}

json to_json(const MinMaxScaler& scaler) {
  return json{{"min", scaler.mins()}, {"max", scaler.maxs()}};
}

MinMaxScaler scaler_from_json(const json& j) {
  return MinMaxScaler(j.at("min").get<std::vector<double>>(),
                      j.at("max").get<std::vector<double>>());
}

json scaler_or_null(const std::optional<MinMaxScaler>& scaler) {
  return scaler ? to_json(*scaler) : json(nullptr);
}

const char* kind_name(ColumnKind kind) {
  switch (kind) {
    case ColumnKind::kNumeric:
      return "numeric";
    case ColumnKind::kCategorical:
      return "categorical";
    case ColumnKind::kLabel:
      return "label";
  }
  return "numeric";
}

ColumnKind kind_from_name(const std::string& name) {
  if (name == "numeric") return ColumnKind::kNumeric;
  if (name == "categorical") return ColumnKind::kCategorical;
  if (name == "label") return ColumnKind::kLabel;
  throw DataError("model file: unknown column kind '" + name + "'");
}

json to_json(const Metric& metric) {
  switch (metric.kind) {
    case MetricKind::kManhattan:
      return json{{"kind", "manhattan"}, {"p", 1.0}};
    case MetricKind::kEuclidean:
      return json{{"kind", "euclidean"}, {"p", 2.0}};
    case MetricKind::kMinkowski:
      return json{{"kind", "minkowski"}, {"p", metric.p}};
  }
  return json{{"kind", "manhattan"}, {"p", 1.0}};
}

Metric metric_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "manhattan") return Metric::manhattan();
  if (kind == "euclidean") return Metric::euclidean();
  if (kind == "minkowski") return Metric::minkowski(j.at("p").get<double>());
  throw DataError("model file: unknown metric '" + kind + "'");
}

std::string checksum_hex(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

std::uint64_t checksum_from_hex(const std::string& text) {
  if (text.size() != 16) throw DataError("model file: malformed checksum");
  std::uint64_t value = 0;
  for (char c : text) {
    value <<= 4;
    if (c >= '0' && c <= '9') {
      value |= static_cast<std::uint64_t>(c - '0');
    } else if (c >= 'a' && c <= 'f') {
      value |= static_cast<std::uint64_t>(c - 'a' + 10);
    } else {
      throw DataError("model file: malformed checksum");
    }
  }
  return value;
}

json knn_to_json(const KnnModel& model) {
  json j;
  j["hyperparameters"] = {{"k", model.config.k},
                          {"leaf_capacity", model.config.leaf_capacity},
                          {"metric", to_json(model.config.metric)},
                          {"weighting", model.config.weighting == VoteWeighting::kUniform
                                            ? "uniform"
                                            : "inverse_distance"}};
  j["parameters"] = {{"train_features", to_json(model.train_features)},
                     {"train_labels", model.train_labels}};
  j["scaler"] = scaler_or_null(model.scaler);
  return j;
}

KnnModel knn_from_json(const json& j) {
  KnnModel model;
  const json& hp = j.at("hyperparameters");
  model.config.k = hp.at("k").get<std::size_t>();
  model.config.leaf_capacity = hp.at("leaf_capacity").get<std::size_t>();
  model.config.metric = metric_from_json(hp.at("metric"));
  const std::string weighting = hp.at("weighting").get<std::string>();
  if (weighting == "uniform") {
    model.config.weighting = VoteWeighting::kUniform;
  } else if (weighting == "inverse_distance") {
    model.config.weighting = VoteWeighting::kInverseDistance;
  } else {
    throw DataError("model file: unknown weighting '" + weighting + "'");
  }
  const json& params = j.at("parameters");
  model.train_features = matrix_from_json(params.at("train_features"));
  model.train_labels = params.at("train_labels").get<std::vector<int>>();
  if (!j.at("scaler").is_null()) {
    model.scaler = scaler_from_json(j.at("scaler"));
    model.config.scale_features = true;
  }
  if (model.train_labels.size() != model.train_features.rows() ||
      model.train_labels.empty()) {
    throw DataError("model file: knn training data is inconsistent");
  }
  if (model.config.k == 0 || model.config.k > model.train_labels.size()) {
    throw DataError("model file: knn k out of range");
  }
  model.index = KdTree(model.train_features, model.config.leaf_capacity);
  return model;
}

json gnb_to_json(const GaussianNbModel& model) {
  json j;
  j["hyperparameters"] = {{"var_smoothing", model.var_smoothing}};
  j["parameters"] = {{"priors", std::vector<double>{model.priors[0], model.priors[1]}},
                     {"means", to_json(model.means)},
                     {"variances", to_json(model.variances)}};
  j["scaler"] = scaler_or_null(model.scaler);
  return j;
}

GaussianNbModel gnb_from_json(const json& j) {
  GaussianNbModel model;
  model.var_smoothing = j.at("hyperparameters").at("var_smoothing").get<double>();
  const json& params = j.at("parameters");
  const auto priors = params.at("priors").get<std::vector<double>>();
  if (priors.size() != 2 || !(priors[0] > 0.0) || !(priors[1] > 0.0)) {
    throw DataError("model file: gnb priors must be two positive numbers");
  }
  model.priors = {priors[0], priors[1]};
  model.means = matrix_from_json(params.at("means"));
  model.variances = matrix_from_json(params.at("variances"));
  if (model.means.rows() != 2 || model.variances.rows() != 2 ||
      model.means.cols() != model.variances.cols()) {
    throw DataError("model file: gnb parameter shapes are inconsistent");
  }
  for (std::size_t c = 0; c < 2; ++c) {
    for (std::size_t f = 0; f < model.variances.cols(); ++f) {
      if (!(model.variances(c, f) > 0.0)) {
        throw DataError("model file: gnb variances must be positive");
      }
    }
  }
  if (!j.at("scaler").is_null()) {
    model.scaler = scaler_from_json(j.at("scaler"));
  }
  return model;
}

json logreg_to_json(const LogisticModel& model) {
  json j;
  j["hyperparameters"] = {{"lambda", model.lambda}};
  j["parameters"] = {{"intercept", model.intercept},
                     {"weights", model.weights},
                     {"iterations", model.iterations}};
  j["scaler"] = to_json(model.scaler);
  return j;
}

LogisticModel logreg_from_json(const json& j) {
  LogisticModel model;
  model.lambda = j.at("hyperparameters").at("lambda").get<double>();
  const json& params = j.at("parameters");
  model.intercept = params.at("intercept").get<double>();
  model.weights = params.at("weights").get<std::vector<double>>();
  model.iterations = params.at("iterations").get<std::size_t>();
  model.scaler = scaler_from_json(j.at("scaler"));
  if (model.scaler.dim() != model.weights.size()) {
    throw DataError("model file: logreg scaler/weight sizes are inconsistent");
  }
  return model;
}

json mlp_to_json(const MlpModel& model) {
  json j;
  j["hyperparameters"] = {{"hidden_size", model.hidden_size()},
                          {"train_seed", model.train_seed}};
  j["parameters"] = {{"w1", to_json(model.w1)},
                     {"b1", model.b1},
                     {"w2", model.w2},
                     {"b2", model.b2}};
  j["scaler"] = to_json(model.scaler);
  return j;
}

MlpModel mlp_from_json(const json& j) {
  MlpModel model;
  model.train_seed = j.at("hyperparameters").at("train_seed").get<std::uint64_t>();
  const json& params = j.at("parameters");
  model.w1 = matrix_from_json(params.at("w1"));
  model.b1 = params.at("b1").get<std::vector<double>>();
  model.w2 = params.at("w2").get<std::vector<double>>();
  model.b2 = params.at("b2").get<double>();
  model.scaler = scaler_from_json(j.at("scaler"));
  if (model.b1.size() != model.w1.rows() || model.w2.size() != model.w1.rows() ||
      model.scaler.dim() != model.w1.cols() || model.b1.empty()) {
    throw DataError("model file: mlp parameter shapes are inconsistent");
  }
  return model;
}

}  // namespace

std::string model_kind(const AnyModel& model) {
  switch (model.index()) {
    case 0:
      return "knn";
    case 1:
      return "gnb";
    case 2:
      return "logreg";
    default:
      return "mlp";
  }
}

std::string model_descriptor(const AnyModel& model) {
  if (const auto* knn = std::get_if<KnnModel>(&model)) {
    return "knn (k=" + std::to_string(knn->config.k) +
           ", metric=" + knn->config.metric.name() + ", weights=" +
           (knn->config.weighting == VoteWeighting::kUniform ? "uniform" : "distance") +
           (knn->scaler ? ", scaled" : "") + ")";
  }
  if (const auto* gnb = std::get_if<GaussianNbModel>(&model)) {
    return "gnb (var_smoothing=" + repr(gnb->var_smoothing) +
           (gnb->scaler ? ", scaled" : "") + ")";
  }
  if (const auto* lr = std::get_if<LogisticModel>(&model)) {
    return "logreg (lambda=" + repr(lr->lambda) + ")";
  }
  const auto& mlp = std::get<MlpModel>(model);
  return "mlp (hidden=" + std::to_string(mlp.hidden_size()) +
         ", seed=" + std::to_string(mlp.train_seed) + ")";
}

double model_score(const AnyModel& model, std::span<const double> x) {
  return std::visit(
      [&](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, KnnModel>) {
          return m.score(x);
        } else if constexpr (std::is_same_v<T, GaussianNbModel>) {
          return m.predict_proba(x);
        } else if constexpr (std::is_same_v<T, LogisticModel>) {
          return m.predict_proba(x);
        } else {
          return m.forward(x);
        }
      },
      model);
}

int model_predict(const AnyModel& model, std::span<const double> x) {
  return std::visit([&](const auto& m) { return m.predict(x); }, model);
}

std::string save_model(const ModelFile& file) {
  json j;
  j["format_version"] = file.format_version;
  j["model_kind"] = model_kind(file.model);
  j["seed"] = file.seed;
  j["split_fraction"] = file.split_fraction;
  j["partition_checksum"] = checksum_hex(file.partition_checksum);

  json columns = json::array();
  for (const Column& col : file.schema.columns) {
    columns.push_back({{"name", col.name}, {"kind", kind_name(col.kind)}});
  }
  j["schema"] = {{"columns", std::move(columns)}};

  json encoders = json::array();
  for (const CategoricalEncoder& enc : file.encoders) {
    encoders.push_back({{"column", enc.column}, {"categories", enc.categories}});
  }
  j["encoders"] = std::move(encoders);

  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, KnnModel>) {
          j["model"] = knn_to_json(m);
        } else if constexpr (std::is_same_v<T, GaussianNbModel>) {
          j["model"] = gnb_to_json(m);
        } else if constexpr (std::is_same_v<T, LogisticModel>) {
          j["model"] = logreg_to_json(m);
        } else {
          j["model"] = mlp_to_json(m);
        }
      },
      file.model);

  return j.dump(2) + "\n";
}

ModelFile load_model(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw DataError(std::string("model file: parse error: ") + e.what());
  }
  try {
    ModelFile file;
    file.format_version = j.at("format_version").get<int>();
    if (file.format_version != kModelFormatVersion) {
      throw DataError("model file: unsupported format_version " +
                      std::to_string(file.format_version) + " (expected " +
                      std::to_string(kModelFormatVersion) + ")");
    }
    file.seed = j.at("seed").get<std::uint64_t>();
    file.split_fraction = j.at("split_fraction").get<double>();
    file.partition_checksum =
        checksum_from_hex(j.at("partition_checksum").get<std::string>());

    for (const auto& col : j.at("schema").at("columns")) {
      file.schema.columns.push_back({col.at("name").get<std::string>(),
                                     kind_from_name(col.at("kind").get<std::string>())});
    }
    file.schema.validate();

    for (const auto& enc : j.at("encoders")) {
      CategoricalEncoder encoder;
      encoder.column = enc.at("column").get<std::string>();
      encoder.categories = enc.at("categories").get<std::vector<std::string>>();
      file.encoders.push_back(std::move(encoder));
    }

    const std::string kind = j.at("model_kind").get<std::string>();
    const json& body = j.at("model");
    if (kind == "knn") {
      file.model = knn_from_json(body);
    } else if (kind == "gnb") {
      file.model = gnb_from_json(body);
    } else if (kind == "logreg") {
      file.model = logreg_from_json(body);
    } else if (kind == "mlp") {
      file.model = mlp_from_json(body);
    } else {
      throw DataError("model file: unknown model_kind '" + kind + "'");
    }
    return file;
  } catch (const json::exception& e) {
    throw DataError(std::string("model file: missing or mistyped field: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw DataError(std::string("model file: invalid contents: ") + e.what());
  }
}

std::uint64_t partition_checksum(const SplitResult& split) {
  // FNV-1a 64.
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  auto absorb = [&hash](std::uint64_t value) {
    for (int byte = 0; byte < 8; ++byte) {
      hash ^= (value >> (byte * 8)) & 0xffULL;
      hash *= 0x100000001b3ULL;
    }
  };
  absorb(split.train_indices.size() + split.test_indices.size());
  absorb(split.train_indices.size());
  for (std::size_t i = 0; i < split.train_indices.size(); ++i) {
    absorb(split.train_indices[i]);
    absorb(static_cast<std::uint64_t>(split.train.labels[i]));
    const auto row = split.train.features.row(i);
    for (double v : row) absorb(std::bit_cast<std::uint64_t>(v));
  }
  return hash;
}

}  // namespace attrikit
