#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "attrikit/dataset.hpp"
#include "attrikit/distance.hpp"
#include "attrikit/kdtree.hpp"
#include "attrikit/matrix.hpp"
#include "attrikit/rng.hpp"

namespace attrikit::testing {

// Dataset with anonymous numeric feature columns, for model-level tests.
inline EncodedDataset make_dataset(const std::vector<std::vector<double>>& rows,
                                   const std::vector<int>& labels) {
  EncodedDataset ds;
  ds.features = Matrix::from_rows(rows);
  ds.labels = labels;
  for (std::size_t j = 0; j < ds.features.cols(); ++j) {
    ds.schema.columns.push_back({"f" + std::to_string(j), ColumnKind::kNumeric});
  }
  ds.schema.columns.push_back({"y", ColumnKind::kLabel});
  return ds;
}

// Brute-force k-nearest oracle: full linear scan, sorted ascending by
// (distance, row index). Shares the tie rule with KdTree::query but none of
// its search machinery.
inline std::vector<Neighbor> brute_force_knn(const Matrix& points,
                                             std::span<const double> x, std::size_t k,
                                             const Metric& metric) {
  std::vector<Neighbor> all(points.rows());
  for (std::size_t i = 0; i < points.rows(); ++i) {
    all[i] = {i, metric(x, points.row(i))};
  }
  std::sort(all.begin(), all.end(), [](const Neighbor& a, const Neighbor& b) {
    return a.distance < b.distance || (a.distance == b.distance && a.index < b.index);
  });
  all.resize(k);
  return all;
}

// Central finite difference of a scalar function, step 1e-6 * (1 + |theta|).
inline double central_difference(const std::function<double(double)>& f, double theta) {
  const double step = 1e-6 * (1.0 + std::abs(theta));
  return (f(theta + step) - f(theta - step)) / (2.0 * step);
}

inline double relative_error(double got, double want) {
  const double scale = std::max({std::abs(got), std::abs(want), 1e-8});
  return std::abs(got - want) / scale;
}

// Temporary working directory, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<unsigned> counter{0};
    const auto base = std::filesystem::temp_directory_path();
    path_ = base / ("attrikit_test_" + std::to_string(::getpid()) + "_" +
                    std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string file(const std::string& name) const { return (path_ / name).string(); }

  void write(const std::string& name, const std::string& content) const {
    std::ofstream out(file(name), std::ios::binary);
    out << content;
  }

  std::string read(const std::string& name) const {
    std::ifstream in(file(name), std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

 private:
  std::filesystem::path path_;
};

// Linearly separable two-blob CSV with a salary column, for CLI tests.
inline std::string toy_csv(std::size_t rows_per_class = 40, std::uint64_t seed = 7) {
  SplitMix64 rng(seed);
  std::string text = "f1,f2,salary,left\n";
  const char* salaries[3] = {"low", "medium", "high"};
  for (std::size_t i = 0; i < 2 * rows_per_class; ++i) {
    const int y = static_cast<int>(i % 2);
    const double f1 = (y == 0 ? 0.2 : 0.8) + rng.next_in(-0.15, 0.15);
    const double f2 = (y == 0 ? 1.0 : 3.0) + rng.next_in(-0.8, 0.8);
    text += std::to_string(f1) + "," + std::to_string(f2) + "," + salaries[i % 3] + "," +
            std::to_string(y) + "\n";
  }
  return text;
}

}  // namespace attrikit::testing
