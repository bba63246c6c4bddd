#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "attrikit/matrix.hpp"

namespace attrikit {

enum class ColumnKind { kNumeric, kCategorical, kLabel };

struct Column {
  std::string name;
  ColumnKind kind = ColumnKind::kNumeric;

  bool operator==(const Column&) const = default;
};

// Ordered column layout. Exactly one label column; names unique and
// non-empty.
struct Schema {
  std::vector<Column> columns;

  void validate() const;  // throws DataError when the invariants fail
  std::size_t feature_count() const;
  const Column& label_column() const;
  std::vector<Column> feature_columns() const;

  bool operator==(const Schema&) const = default;
};

struct RawTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// First line is the header; every data line must have the same cell count.
// Comma separated, no quoting (none is needed for the supported datasets).
RawTable parse_csv(std::string_view csv_text);

// parse_csv plus a check that every schema column appears in the header.
RawTable load_table(std::string_view csv_text, const Schema& schema);

// Derive a schema from the data: the named column is the label, columns
// where every cell parses as a finite real are numeric, the rest are
// categorical. Column order follows the header.
Schema infer_schema(const RawTable& table, const std::string& label_name);

// category text -> integer code for one categorical column; the code of
// categories[i] is i.
struct CategoricalEncoder {
  std::string column;
  std::vector<std::string> categories;

  int code_of(const std::string& category) const;  // throws DataError on unseen
  const std::string& category_of(int code) const;

  bool operator==(const CategoricalEncoder&) const = default;
};

struct EncodedDataset {
  Matrix features;          // n x d in schema feature order
  std::vector<int> labels;  // values in {0, 1}
  Schema schema;
  std::vector<CategoricalEncoder> encoders;

  std::size_t size() const { return labels.size(); }
  std::size_t dim() const { return features.cols(); }
};

// Fit encoders on the table and encode it. The salary column uses the fixed
// map low=0, medium=1, high=2; every other categorical column is coded in
// byte-wise lexicographic order of its distinct values.
EncodedDataset encode(const RawTable& raw, const Schema& schema);

struct EncodedFeatures {
  Matrix features;
  std::vector<int> labels;  // empty when the label column is absent
};

// Encode with previously fitted encoders (the prediction path). The label
// column may be absent from the table.
EncodedFeatures encode_features(const RawTable& raw, const Schema& schema,
                                const std::vector<CategoricalEncoder>& encoders);

struct SplitResult {
  EncodedDataset train;
  EncodedDataset test;
  std::uint64_t seed = 0;
  double fraction = 0.0;
  std::vector<std::size_t> train_indices;  // original row positions, shuffle order
  std::vector<std::size_t> test_indices;
};

// Seeded Fisher-Yates shuffle of the row indices; the first
// floor(fraction * n) rows become the training partition. Not stratified.
SplitResult split(const EncodedDataset& ds, double fraction, std::uint64_t seed);

}  // namespace attrikit
