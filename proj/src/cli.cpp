#include "attrikit/cli.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "attrikit/dataset.hpp"
#include "attrikit/errors.hpp"
#include "attrikit/format.hpp"
#include "attrikit/model_io.hpp"
#include "attrikit/pipeline.hpp"

namespace attrikit {
namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw DataError("cannot read file '" + path + "'");
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write file '" + path + "'");
  out << content;
  out.flush();
  if (!out) throw DataError("cannot write file '" + path + "'");
}

struct CommonArgs {
  std::string data_path;
  std::uint64_t seed = 42;
  double fraction = 0.7;
  std::string label = "left";
  bool scale = false;
};

struct ModelArgs {
  std::string model;
  std::size_t k = 6;
  std::string metric = "manhattan";
  double p = 2.0;
  std::string weights = "uniform";
  double lambda = 1.0;
  double lr = 0.0;  // 0 = per-model default (0.1 logreg, 0.01 mlp)
  std::size_t iters = 5000;
  std::size_t hidden = 100;
  std::size_t epochs = 200;
  std::size_t batch = 200;
  double momentum = 0.9;
};

void add_data_options(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--data", args.data_path, "input CSV path")->required();
  cmd->add_option("--seed", args.seed, "split seed (default 42)");
  cmd->add_option("--split", args.fraction, "train fraction in (0, 1) (default 0.7)");
  cmd->add_option("--label", args.label, "label column name (default left)");
}

void add_model_options(CLI::App* cmd, ModelArgs& args) {
  cmd->add_option("--k", args.k, "neighbor count for knn (default 6)");
  cmd->add_option("--metric", args.metric, "knn distance metric (default manhattan)")
      ->check(CLI::IsMember({"manhattan", "euclidean", "minkowski"}));
  cmd->add_option("--p", args.p, "minkowski exponent (default 2)");
  cmd->add_option("--weights", args.weights, "knn vote weighting (default uniform)")
      ->check(CLI::IsMember({"uniform", "distance"}));
  cmd->add_option("--lambda", args.lambda, "logreg L2 strength (default 1)");
  cmd->add_option("--lr", args.lr, "learning rate (default 0.1 logreg, 0.01 mlp)");
  cmd->add_option("--iters", args.iters, "logreg max gradient-descent steps (default 5000)");
  cmd->add_option("--hidden", args.hidden, "mlp hidden units (default 100)");
  cmd->add_option("--epochs", args.epochs, "mlp training epochs (default 200)");
  cmd->add_option("--batch", args.batch, "mlp mini-batch size (default 200)");
  cmd->add_option("--momentum", args.momentum, "mlp momentum (default 0.9)");
}

void check_fraction(double fraction) {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw UsageError("--split must be in (0, 1)");
  }
}

void check_model_args(const ModelArgs& args) {
  if (args.model.empty()) return;
  if (args.k == 0) throw UsageError("--k must be >= 1");
  if (!(args.p >= 1.0)) throw UsageError("--p must be >= 1");
  if (args.lambda < 0.0) throw UsageError("--lambda must be >= 0");
  if (args.lr < 0.0) throw UsageError("--lr must be > 0");
  if (args.iters == 0) throw UsageError("--iters must be >= 1");
  if (args.hidden == 0) throw UsageError("--hidden must be >= 1");
  if (args.epochs == 0) throw UsageError("--epochs must be >= 1");
  if (args.batch == 0) throw UsageError("--batch must be >= 1");
  if (!(args.momentum >= 0.0 && args.momentum < 1.0)) {
    throw UsageError("--momentum must be in [0, 1)");
  }
}

ModelSpec build_spec(const ModelArgs& args, bool scale, std::uint64_t seed) {
  ModelSpec spec;
  spec.kind = args.model;
  spec.knn.k = args.k;
  if (args.metric == "euclidean") {
    spec.knn.metric = Metric::euclidean();
  } else if (args.metric == "minkowski") {
    spec.knn.metric = Metric::minkowski(args.p);
  } else {
    spec.knn.metric = Metric::manhattan();
  }
  spec.knn.weighting = args.weights == "distance" ? VoteWeighting::kInverseDistance
                                                  : VoteWeighting::kUniform;
  spec.knn.scale_features = scale;
  spec.gnb.scale_features = scale;
  spec.logreg.lambda = args.lambda;
  spec.logreg.learning_rate = args.lr > 0.0 ? args.lr : 0.1;
  spec.logreg.max_iters = args.iters;
  spec.mlp.hidden_size = args.hidden;
  spec.mlp.learning_rate = args.lr > 0.0 ? args.lr : 0.01;
  spec.mlp.momentum = args.momentum;
  spec.mlp.batch_size = args.batch;
  spec.mlp.epochs = args.epochs;
  spec.mlp.seed = seed + kMlpSeedOffset;
  return spec;
}

EncodedDataset load_encoded(const std::string& path, const std::string& label) {
  const RawTable table = parse_csv(read_file(path));
  const Schema schema = infer_schema(table, label);
  return encode(table, schema);
}

void check_kind(const ModelFile& file, const std::string& expected) {
  if (!expected.empty() && expected != model_kind(file.model)) {
    throw DataError("model kind mismatch: file holds '" + model_kind(file.model) +
                    "', expected '" + expected + "'");
  }
}

// Re-derive the training-time split for an existing model and verify the
// partition checksum against the model file.
SplitResult rederive_split(const ModelFile& file, const std::string& data_path,
                           std::uint64_t seed, double fraction) {
  const RawTable table = parse_csv(read_file(data_path));
  const Schema inferred = infer_schema(table, file.schema.label_column().name);
  if (!(inferred == file.schema)) {
    throw DataError("schema mismatch between model file and '" + data_path + "'");
  }
  EncodedFeatures enc = encode_features(table, file.schema, file.encoders);
  EncodedDataset ds;
  ds.features = std::move(enc.features);
  ds.labels = std::move(enc.labels);
  ds.schema = file.schema;
  ds.encoders = file.encoders;
  SplitResult parts = split(ds, fraction, seed);
  if (partition_checksum(parts) != file.partition_checksum) {
    throw DataError(
        "partition checksum mismatch: the data, seed, or split fraction differ "
        "from the ones used at training time");
  }
  return parts;
}

nlohmann::json report_to_json(const EvaluationReport& report) {
  return nlohmann::json{
      {"model", report.model},
      {"seed", report.seed},
      {"split", report.split_fraction},
      {"train_rows", report.train_rows},
      {"test_rows", report.test_rows},
      {"accuracy", report.accuracy},
      {"f1", report.f1},
      {"auc", report.auc},
      {"confusion",
       {{"tp", report.counts.tp},
        {"fp", report.counts.fp},
        {"fn", report.counts.fn},
        {"tn", report.counts.tn}}}};
}

void print_report(std::ostream& out, const EvaluationReport& report) {
  out << "model: " << report.model << "\n";
  out << "seed: " << report.seed << "\n";
  out << "split: " << repr(report.split_fraction) << "\n";
  out << "train rows: " << report.train_rows << "\n";
  out << "test rows: " << report.test_rows << "\n";
  out << "accuracy: " << fixed4(report.accuracy) << "\n";
  out << "f1: " << fixed4(report.f1) << "\n";
  out << "auc: " << fixed4(report.auc) << "\n";
  out << "confusion: tp=" << report.counts.tp << " fp=" << report.counts.fp
      << " fn=" << report.counts.fn << " tn=" << report.counts.tn << "\n";
}

void print_compare_rows(std::ostream& out, const std::vector<CompareRow>& rows) {
  char line[96];
  std::snprintf(line, sizeof(line), "%-7s %-7s %-9s %s\n", "model", "auc", "accuracy", "f1");
  out << line;
  for (const CompareRow& row : rows) {
    std::snprintf(line, sizeof(line), "%-7s %-7s %-9s %s\n", row.model.c_str(),
                  fixed4(row.auc).c_str(), fixed4(row.accuracy).c_str(),
                  fixed4(row.f1).c_str());
    out << line;
  }
}

int cmd_train(const CommonArgs& common, const ModelArgs& margs,
              const std::string& out_path, std::ostream& out) {
  check_fraction(common.fraction);
  check_model_args(margs);
  const EncodedDataset ds = load_encoded(common.data_path, common.label);
  const SplitResult parts = split(ds, common.fraction, common.seed);
  out << "loaded " << common.data_path << ": " << ds.size() << " rows, " << ds.dim()
      << " features\n";
  out << "split: seed=" << common.seed << " fraction=" << repr(common.fraction)
      << " train=" << parts.train.size() << " test=" << parts.test.size() << "\n";

  const ModelSpec spec = build_spec(margs, common.scale, common.seed);
  AnyModel model;
  if (spec.kind == "mlp") {
    MlpTrainLog log;
    model = mlp_fit(parts.train, spec.mlp, &log, [&](std::size_t epoch, double loss) {
      out << "epoch " << (epoch + 1) << "/" << spec.mlp.epochs << " loss=" << repr(loss)
          << "\n";
    });
  } else {
    FitInfo info;
    model = fit_model(spec, parts.train, &info);
    if (spec.kind == "logreg") {
      out << "gradient descent stopped after " << info.logreg_iterations
          << " iterations\n";
    }
  }

  ModelFile file;
  file.seed = common.seed;
  file.split_fraction = common.fraction;
  file.partition_checksum = partition_checksum(parts);
  file.schema = ds.schema;
  file.encoders = ds.encoders;
  file.model = std::move(model);
  write_file(out_path, save_model(file));
  out << "model: " << model_descriptor(file.model) << "\n";
  out << "wrote " << out_path << "\n";
  return 0;
}

int cmd_evaluate(const CommonArgs& common, const std::string& model_path,
                 const std::string& expected_kind, const std::string& json_out,
                 bool seed_given, bool split_given, std::ostream& out) {
  const ModelFile file = load_model(read_file(model_path));
  check_kind(file, expected_kind);
  const std::uint64_t seed = seed_given ? common.seed : file.seed;
  const double fraction = split_given ? common.fraction : file.split_fraction;
  check_fraction(fraction);
  const SplitResult parts = rederive_split(file, common.data_path, seed, fraction);
  const EvaluationReport report =
      evaluate_model(file.model, parts.test, seed, fraction, parts.train.size());
  print_report(out, report);
  if (!json_out.empty()) {
    write_file(json_out, report_to_json(report).dump(2) + "\n");
  }
  return 0;
}

int cmd_predict(const std::string& model_path, const std::string& data_path,
                const std::string& expected_kind, const std::string& out_path,
                std::ostream& out) {
  const ModelFile file = load_model(read_file(model_path));
  check_kind(file, expected_kind);
  const RawTable table = parse_csv(read_file(data_path));
  const EncodedFeatures enc = encode_features(table, file.schema, file.encoders);
  std::string text = "score,label\n";
  for (std::size_t i = 0; i < enc.features.rows(); ++i) {
    const auto row = enc.features.row(i);
    text += repr(model_score(file.model, row));
    text += ',';
    text += std::to_string(model_predict(file.model, row));
    text += '\n';
  }
  if (out_path.empty()) {
    out << text;
  } else {
    write_file(out_path, text);
    out << "wrote " << out_path << " (" << enc.features.rows() << " rows)\n";
  }
  return 0;
}

int cmd_roc(const CommonArgs& common, const std::string& model_path,
            const std::string& expected_kind, const std::string& out_path,
            bool seed_given, bool split_given, std::ostream& out) {
  const ModelFile file = load_model(read_file(model_path));
  check_kind(file, expected_kind);
  const std::uint64_t seed = seed_given ? common.seed : file.seed;
  const double fraction = split_given ? common.fraction : file.split_fraction;
  check_fraction(fraction);
  const SplitResult parts = rederive_split(file, common.data_path, seed, fraction);
  const std::vector<double> scores = score_rows(file.model, parts.test.features);
  const RocCurve curve = roc_curve(parts.test.labels, scores);
  std::string text = "threshold,fpr,tpr\n";
  for (const RocPoint& point : curve.points) {
    text += repr(point.threshold);
    text += ',';
    text += repr(point.fpr);
    text += ',';
    text += repr(point.tpr);
    text += '\n';
  }
  if (out_path.empty()) {
    out << text;
  } else {
    write_file(out_path, text);
    out << "wrote " << out_path << " (" << curve.points.size() << " points)\n";
  }
  return 0;
}

int cmd_compare(const CommonArgs& common, std::vector<std::uint64_t> seeds,
                const std::string& json_out, std::ostream& out) {
  check_fraction(common.fraction);
  if (seeds.empty()) seeds.push_back(common.seed);
  const EncodedDataset ds = load_encoded(common.data_path, common.label);

  std::vector<CompareResult> results;
  results.reserve(seeds.size());
  for (std::uint64_t seed : seeds) {
    results.push_back(compare_on_seed(ds, common.fraction, seed, common.scale));
  }

  for (std::size_t i = 0; i < results.size(); ++i) {
    if (i > 0) out << "\n";
    out << "seed " << results[i].seed << "\n";
    print_compare_rows(out, results[i].rows);
  }

  std::vector<CompareRow> mean_rows;
  if (results.size() > 1) {
    mean_rows = results.front().rows;
    for (CompareRow& row : mean_rows) {
      row.auc = 0.0;
      row.accuracy = 0.0;
      row.f1 = 0.0;
    }
    for (const CompareResult& result : results) {
      for (std::size_t m = 0; m < mean_rows.size(); ++m) {
        mean_rows[m].auc += result.rows[m].auc;
        mean_rows[m].accuracy += result.rows[m].accuracy;
        mean_rows[m].f1 += result.rows[m].f1;
      }
    }
    const auto n = static_cast<double>(results.size());
    for (CompareRow& row : mean_rows) {
      row.auc /= n;
      row.accuracy /= n;
      row.f1 /= n;
    }
    out << "\nmean of " << results.size() << " seeds\n";
    print_compare_rows(out, mean_rows);
  }

  if (!json_out.empty()) {
    nlohmann::json j;
    j["seeds"] = nlohmann::json::array();
    for (const CompareResult& result : results) {
      nlohmann::json rows = nlohmann::json::array();
      for (const CompareRow& row : result.rows) {
        rows.push_back({{"model", row.model},
                        {"auc", row.auc},
                        {"accuracy", row.accuracy},
                        {"f1", row.f1}});
      }
      j["seeds"].push_back({{"seed", result.seed}, {"rows", std::move(rows)}});
    }
    if (!mean_rows.empty()) {
      nlohmann::json rows = nlohmann::json::array();
      for (const CompareRow& row : mean_rows) {
        rows.push_back({{"model", row.model},
                        {"auc", row.auc},
                        {"accuracy", row.accuracy},
                        {"f1", row.f1}});
      }
      j["mean"] = std::move(rows);
    }
    write_file(json_out, j.dump(2) + "\n");
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"binary classifiers (knn, gaussian nb, logistic regression, mlp) "
               "over CSV data"};
  app.require_subcommand(1);

  CommonArgs common;
  ModelArgs margs;
  std::string out_path;
  std::string model_path;
  std::string expected_kind;
  std::string json_out;
  std::vector<std::uint64_t> seeds;

  CLI::App* train = app.add_subcommand("train", "train a model and write a model file");
  add_data_options(train, common);
  train->add_option("--model", margs.model, "model kind")
      ->required()
      ->check(CLI::IsMember({"knn", "gnb", "logreg", "mlp"}));
  add_model_options(train, margs);
  train->add_flag("--scale", common.scale, "min-max scale features for knn/gnb");
  train->add_option("--out", out_path, "model file path")->required();

  CLI::App* evaluate =
      app.add_subcommand("evaluate", "score a model on the held-out test partition");
  add_data_options(evaluate, common);
  evaluate->add_option("--model-file", model_path, "model file path")->required();
  evaluate->add_option("--model", expected_kind, "expected model kind")
      ->check(CLI::IsMember({"knn", "gnb", "logreg", "mlp"}));
  evaluate->add_option("--json-out", json_out, "also write the report as JSON");

  CLI::App* predict = app.add_subcommand("predict", "score rows of a CSV file");
  predict->add_option("--data", common.data_path, "input CSV path")->required();
  predict->add_option("--model-file", model_path, "model file path")->required();
  predict->add_option("--model", expected_kind, "expected model kind")
      ->check(CLI::IsMember({"knn", "gnb", "logreg", "mlp"}));
  predict->add_option("--out", out_path, "output CSV path (default stdout)");

  CLI::App* roc =
      app.add_subcommand("roc", "emit test-partition ROC curve points as CSV");
  add_data_options(roc, common);
  roc->add_option("--model-file", model_path, "model file path")->required();
  roc->add_option("--model", expected_kind, "expected model kind")
      ->check(CLI::IsMember({"knn", "gnb", "logreg", "mlp"}));
  roc->add_option("--out", out_path, "output CSV path (default stdout)");

  CLI::App* compare = app.add_subcommand(
      "compare", "train and evaluate all four models with default settings");
  add_data_options(compare, common);
  compare->add_option("--seeds", seeds, "comma-separated seed list")->delimiter(',');
  compare->add_flag("--scale", common.scale, "min-max scale features for knn/gnb");
  compare->add_option("--json-out", json_out, "also write the table as JSON");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (train->parsed()) {
      return cmd_train(common, margs, out_path, out);
    }
    if (evaluate->parsed()) {
      return cmd_evaluate(common, model_path, expected_kind, json_out,
                          evaluate->count("--seed") > 0, evaluate->count("--split") > 0,
                          out);
    }
    if (predict->parsed()) {
      return cmd_predict(model_path, common.data_path, expected_kind, out_path, out);
    }
    if (roc->parsed()) {
      return cmd_roc(common, model_path, expected_kind, out_path,
                     roc->count("--seed") > 0, roc->count("--split") > 0, out);
    }
    if (compare->parsed()) {
      return cmd_compare(common, seeds, json_out, out);
    }
    err << "error: no command given\n";
    return 1;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << "\n";
    return 2;
  } catch (const TrainError& e) {
    err << "training error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace attrikit
