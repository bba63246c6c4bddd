#include "attrikit/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "attrikit/errors.hpp"
#include "attrikit/logistic.hpp"  // sigmoid
#include "attrikit/rng.hpp"

namespace attrikit {
namespace {

constexpr double kProbFloor = 1e-15;

double cross_entropy(double p, int y) {
  const double q = std::clamp(p, kProbFloor, 1.0 - kProbFloor);
  return y == 1 ? -std::log(q) : -std::log(1.0 - q);
}

// Forward over one already-scaled row; fills the hidden activations.
double forward_scaled(const MlpModel& model, std::span<const double> s,
                      std::vector<double>& hidden) {
  const std::size_t h = model.hidden_size();
  const std::size_t d = s.size();
  for (std::size_t i = 0; i < h; ++i) {
    double a = model.b1[i];
    const auto w = model.w1.row(i);
    for (std::size_t j = 0; j < d; ++j) a += w[j] * s[j];
    hidden[i] = a > 0.0 ? a : 0.0;
  }
  double z = model.b2;
  for (std::size_t i = 0; i < h; ++i) z += model.w2[i] * hidden[i];
  return sigmoid(z);
}

// Mean cross-entropy and its gradients over the given rows of a scaled
// matrix. Gradients must be pre-sized; they are overwritten.
double batch_pass(const MlpModel& model, const Matrix& scaled,
                  std::span<const std::size_t> rows, const std::vector<int>& labels,
                  MlpGradients* grads, std::vector<double>& hidden) {
  const std::size_t h = model.hidden_size();
  const std::size_t d = scaled.cols();
  const double inv_n = 1.0 / static_cast<double>(rows.size());
  if (grads) {
    grads->w1.data().assign(h * d, 0.0);
    grads->b1.assign(h, 0.0);
    grads->w2.assign(h, 0.0);
    grads->b2 = 0.0;
  }
  double loss = 0.0;
  for (const std::size_t r : rows) {
    const auto s = scaled.row(r);
    const double p = forward_scaled(model, s, hidden);
    loss += cross_entropy(p, labels[r]);
    if (!grads) continue;
    const double dz = (p - static_cast<double>(labels[r])) * inv_n;
    grads->b2 += dz;
    for (std::size_t i = 0; i < h; ++i) {
      grads->w2[i] += dz * hidden[i];
      if (hidden[i] > 0.0) {  // ReLU subgradient at 0 is 0
        const double da = dz * model.w2[i];
        grads->b1[i] += da;
        auto gw = grads->w1.row(i);
        for (std::size_t j = 0; j < d; ++j) gw[j] += da * s[j];
      }
    }
  }
  return loss * inv_n;
}

std::vector<std::size_t> all_rows(std::size_t n) {
  std::vector<std::size_t> rows(n);
  std::iota(rows.begin(), rows.end(), 0);
  return rows;
}

}  // namespace

double MlpModel::forward(std::span<const double> x) const {
  const std::vector<double> s = scaler.transform(x);
  std::vector<double> hidden(hidden_size());
  const double p = forward_scaled(*this, s, hidden);
  return std::clamp(p, std::numeric_limits<double>::min(), std::nextafter(1.0, 0.0));
}

int MlpModel::predict(std::span<const double> x) const {
  return forward(x) > 0.5 ? 1 : 0;
}

double mlp_loss(const MlpModel& model, const Matrix& features,
                const std::vector<int>& labels) {
  if (features.rows() == 0 || features.rows() != labels.size()) {
    throw std::invalid_argument("mlp_loss: empty batch or label size mismatch");
  }
  const Matrix scaled = model.scaler.transform(features);
  std::vector<double> hidden(model.hidden_size());
  return batch_pass(model, scaled, all_rows(features.rows()), labels, nullptr, hidden);
}

MlpGradients mlp_gradients(const MlpModel& model, const Matrix& features,
                           const std::vector<int>& labels) {
  if (features.rows() == 0 || features.rows() != labels.size()) {
    throw std::invalid_argument("mlp_gradients: empty batch or label size mismatch");
  }
  const Matrix scaled = model.scaler.transform(features);
  MlpGradients grads;
  grads.w1 = Matrix(model.hidden_size(), features.cols());
  std::vector<double> hidden(model.hidden_size());
  batch_pass(model, scaled, all_rows(features.rows()), labels, &grads, hidden);
  return grads;
}

MlpModel mlp_fit(const EncodedDataset& train, const MlpConfig& config,
                 MlpTrainLog* log, const std::function<void(std::size_t, double)>& on_epoch) {
  if (config.hidden_size == 0 || config.batch_size == 0) {
    throw std::invalid_argument("mlp: hidden_size and batch_size must be >= 1");
  }
  if (config.learning_rate <= 0.0 || config.momentum < 0.0 || config.momentum >= 1.0) {
    throw std::invalid_argument("mlp: learning_rate must be > 0 and momentum in [0, 1)");
  }
  bool has_positive = false;
  bool has_negative = false;
  for (int y : train.labels) (y == 1 ? has_positive : has_negative) = true;
  if (!has_positive || !has_negative) {
    throw TrainError("mlp: both classes must appear in the training data");
  }

  const std::size_t n = train.size();
  const std::size_t d = train.dim();
  const std::size_t h = config.hidden_size;

  MlpModel model;
  model.train_seed = config.seed;
  model.scaler = MinMaxScaler::fit(train.features);
  model.w1 = Matrix(h, d);
  model.b1.assign(h, 0.0);
  model.w2.assign(h, 0.0);

  SplitMix64 rng(config.seed);
  const double limit1 = std::sqrt(6.0 / static_cast<double>(d + h));
  for (std::size_t i = 0; i < h; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      model.w1(i, j) = rng.next_in(-limit1, limit1);
    }
  }
  const double limit2 = std::sqrt(6.0 / static_cast<double>(h + 1));
  for (std::size_t i = 0; i < h; ++i) {
    model.w2[i] = rng.next_in(-limit2, limit2);
  }

  const Matrix scaled = model.scaler.transform(train.features);
  std::vector<double> hidden(h);
  if (log) {
    log->initial_loss =
        batch_pass(model, scaled, all_rows(n), train.labels, nullptr, hidden);
    log->epoch_mean_loss.clear();
  }

  MlpGradients grads;
  grads.w1 = Matrix(h, d);
  MlpGradients velocity;
  velocity.w1 = Matrix(h, d);
  velocity.b1.assign(h, 0.0);
  velocity.w2.assign(h, 0.0);

  std::vector<std::size_t> order = all_rows(n);
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    rng.shuffle(order);
    double epoch_loss = 0.0;
    for (std::size_t start = 0; start < n; start += config.batch_size) {
      const std::size_t count = std::min(config.batch_size, n - start);
      const std::span<const std::size_t> rows(order.data() + start, count);
      const double batch_loss =
          batch_pass(model, scaled, rows, train.labels, &grads, hidden);
      if (!std::isfinite(batch_loss)) {
        throw TrainError("mlp: loss diverged; lower the learning rate");
      }
      epoch_loss += batch_loss * static_cast<double>(count);

      // Classical momentum: v <- mu v - lr g; theta <- theta + v.
      for (std::size_t idx = 0; idx < velocity.w1.data().size(); ++idx) {
        velocity.w1.data()[idx] = config.momentum * velocity.w1.data()[idx] -
                                  config.learning_rate * grads.w1.data()[idx];
        model.w1.data()[idx] += velocity.w1.data()[idx];
      }
      for (std::size_t i = 0; i < h; ++i) {
        velocity.b1[i] =
            config.momentum * velocity.b1[i] - config.learning_rate * grads.b1[i];
        model.b1[i] += velocity.b1[i];
        velocity.w2[i] =
            config.momentum * velocity.w2[i] - config.learning_rate * grads.w2[i];
        model.w2[i] += velocity.w2[i];
      }
      velocity.b2 = config.momentum * velocity.b2 - config.learning_rate * grads.b2;
      model.b2 += velocity.b2;
    }
    epoch_loss /= static_cast<double>(n);
    if (log) log->epoch_mean_loss.push_back(epoch_loss);
    if (on_epoch) on_epoch(epoch, epoch_loss);
  }
  return model;
}

}  // namespace attrikit
