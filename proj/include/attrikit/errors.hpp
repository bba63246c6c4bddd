#pragma once

#include <stdexcept>

namespace attrikit {

// Malformed or inconsistent input: CSV contents, schema mismatches, unseen
// categories, corrupt or foreign model files.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Failures while fitting or evaluating a model: a missing class, divergence,
// hyperparameters out of range relative to the data.
struct TrainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad command-line usage.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace attrikit
