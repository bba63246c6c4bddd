#include "attrikit/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>

#include "attrikit/errors.hpp"
#include "attrikit/rng.hpp"

namespace attrikit {
namespace {

std::optional<double> parse_finite(const std::string& cell) {
  double value = 0.0;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      cells.push_back(line.substr(start));
      break;
    }
    cells.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return cells;
}

std::size_t header_index(const RawTable& raw, const std::string& name) {
  auto it = std::find(raw.header.begin(), raw.header.end(), name);
  if (it == raw.header.end()) {
    throw DataError("missing column '" + name + "' in CSV header");
  }
  return static_cast<std::size_t>(it - raw.header.begin());
}

// Fixed salary order from the dataset's documented coding.
const std::vector<std::string> kSalaryCategories = {"low", "medium", "high"};

int parse_label(const std::string& cell, std::size_t row) {
  auto value = parse_finite(cell);
  if (!value || (*value != 0.0 && *value != 1.0)) {
    throw DataError("label '" + cell + "' in data row " + std::to_string(row + 1) +
                    " is not 0 or 1");
  }
  return static_cast<int>(*value);
}

}  // namespace

void Schema::validate() const {
  std::set<std::string> names;
  std::size_t label_count = 0;
  for (const Column& col : columns) {
    if (col.name.empty()) {
      throw DataError("schema column with an empty name");
    }
    if (!names.insert(col.name).second) {
      throw DataError("duplicate schema column '" + col.name + "'");
    }
    if (col.kind == ColumnKind::kLabel) ++label_count;
  }
  if (label_count != 1) {
    throw DataError("schema must have exactly one label column, got " +
                    std::to_string(label_count));
  }
}

std::size_t Schema::feature_count() const {
  return columns.size() -
         static_cast<std::size_t>(std::count_if(columns.begin(), columns.end(),
                                                [](const Column& c) {
                                                  return c.kind == ColumnKind::kLabel;
                                                }));
}

const Column& Schema::label_column() const {
  for (const Column& col : columns) {
    if (col.kind == ColumnKind::kLabel) return col;
  }
  throw DataError("schema has no label column");
}

std::vector<Column> Schema::feature_columns() const {
  std::vector<Column> out;
  for (const Column& col : columns) {
    if (col.kind != ColumnKind::kLabel) out.push_back(col);
  }
  return out;
}

RawTable parse_csv(std::string_view csv_text) {
  RawTable table;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos <= csv_text.size()) {
    std::size_t nl = csv_text.find('\n', pos);
    std::string_view raw_line =
        nl == std::string_view::npos ? csv_text.substr(pos) : csv_text.substr(pos, nl - pos);
    pos = nl == std::string_view::npos ? csv_text.size() + 1 : nl + 1;
    std::string line(raw_line);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() && pos > csv_text.size()) break;  // trailing newline
    if (line_no == 0) {
      if (line.empty()) throw DataError("empty CSV: no header row");
      table.header = split_line(line);
    } else {
      std::vector<std::string> cells = split_line(line);
      if (cells.size() != table.header.size()) {
        throw DataError("data row " + std::to_string(line_no) + " has " +
                        std::to_string(cells.size()) + " cells, expected " +
                        std::to_string(table.header.size()));
      }
      table.rows.push_back(std::move(cells));
    }
    ++line_no;
  }
  if (line_no == 0) throw DataError("empty CSV: no header row");
  return table;
}

RawTable load_table(std::string_view csv_text, const Schema& schema) {
  schema.validate();
  RawTable table = parse_csv(csv_text);
  for (const Column& col : schema.columns) {
    header_index(table, col.name);
  }
  return table;
}

Schema infer_schema(const RawTable& table, const std::string& label_name) {
  Schema schema;
  bool saw_label = false;
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    Column col;
    col.name = table.header[c];
    if (col.name == label_name) {
      col.kind = ColumnKind::kLabel;
      saw_label = true;
    } else {
      col.kind = ColumnKind::kNumeric;
      for (const auto& row : table.rows) {
        if (!parse_finite(row[c])) {
          col.kind = ColumnKind::kCategorical;
          break;
        }
      }
    }
    schema.columns.push_back(std::move(col));
  }
  if (!saw_label) {
    throw DataError("label column '" + label_name + "' not found in CSV header");
  }
  schema.validate();
  return schema;
}

int CategoricalEncoder::code_of(const std::string& category) const {
  auto it = std::find(categories.begin(), categories.end(), category);
  if (it == categories.end()) {
    throw DataError("unseen category '" + category + "' in column '" + column + "'");
  }
  return static_cast<int>(it - categories.begin());
}

const std::string& CategoricalEncoder::category_of(int code) const {
  if (code < 0 || static_cast<std::size_t>(code) >= categories.size()) {
    throw DataError("category code " + std::to_string(code) + " out of range for column '" +
                    column + "'");
  }
  return categories[static_cast<std::size_t>(code)];
}

EncodedDataset encode(const RawTable& raw, const Schema& schema) {
  schema.validate();
  std::vector<CategoricalEncoder> encoders;
  for (const Column& col : schema.columns) {
    if (col.kind != ColumnKind::kCategorical) continue;
    CategoricalEncoder enc;
    enc.column = col.name;
    if (col.name == "salary") {
      enc.categories = kSalaryCategories;
    } else {
      const std::size_t c = header_index(raw, col.name);
      std::set<std::string> distinct;
      for (const auto& row : raw.rows) distinct.insert(row[c]);
      enc.categories.assign(distinct.begin(), distinct.end());
    }
    encoders.push_back(std::move(enc));
  }
  EncodedFeatures encoded = encode_features(raw, schema, encoders);
  if (encoded.labels.size() != raw.rows.size()) {
    throw DataError("missing column '" + schema.label_column().name + "' in CSV header");
  }
  EncodedDataset ds;
  ds.features = std::move(encoded.features);
  ds.labels = std::move(encoded.labels);
  ds.schema = schema;
  ds.encoders = std::move(encoders);
  return ds;
}

EncodedFeatures encode_features(const RawTable& raw, const Schema& schema,
                                const std::vector<CategoricalEncoder>& encoders) {
  schema.validate();
  const std::vector<Column> feature_cols = schema.feature_columns();
  std::vector<std::size_t> col_index(feature_cols.size());
  std::vector<const CategoricalEncoder*> col_encoder(feature_cols.size(), nullptr);
  for (std::size_t f = 0; f < feature_cols.size(); ++f) {
    col_index[f] = header_index(raw, feature_cols[f].name);
    if (feature_cols[f].kind == ColumnKind::kCategorical) {
      auto it = std::find_if(encoders.begin(), encoders.end(),
                             [&](const CategoricalEncoder& e) {
                               return e.column == feature_cols[f].name;
                             });
      if (it == encoders.end()) {
        throw DataError("no encoder for categorical column '" + feature_cols[f].name + "'");
      }
      col_encoder[f] = &*it;
    }
  }
  const std::string& label_name = schema.label_column().name;
  auto label_it = std::find(raw.header.begin(), raw.header.end(), label_name);
  const bool has_label = label_it != raw.header.end();
  const std::size_t label_idx =
      has_label ? static_cast<std::size_t>(label_it - raw.header.begin()) : 0;

  EncodedFeatures out;
  out.features = Matrix(raw.rows.size(), feature_cols.size());
  for (std::size_t i = 0; i < raw.rows.size(); ++i) {
    const auto& row = raw.rows[i];
    for (std::size_t f = 0; f < feature_cols.size(); ++f) {
      const std::string& cell = row[col_index[f]];
      if (col_encoder[f] != nullptr) {
        out.features(i, f) = static_cast<double>(col_encoder[f]->code_of(cell));
      } else {
        auto value = parse_finite(cell);
        if (!value) {
          throw DataError("cell '" + cell + "' in column '" + feature_cols[f].name +
                          "', data row " + std::to_string(i + 1) +
                          " is not a finite number");
        }
        out.features(i, f) = *value;
      }
    }
    if (has_label) {
      out.labels.push_back(parse_label(row[label_idx], i));
    }
  }
  return out;
}

SplitResult split(const EncodedDataset& ds, double fraction, std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw std::invalid_argument("split fraction must be in (0, 1)");
  }
  const std::size_t n = ds.size();
  if (n < 2) {
    throw DataError("split needs at least 2 rows, got " + std::to_string(n));
  }
  std::vector<std::size_t> indices(n);
  std::iota(indices.begin(), indices.end(), 0);
  SplitMix64 rng(seed);
  rng.shuffle(indices);
  const auto train_size =
      static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n)));

  SplitResult result;
  result.seed = seed;
  result.fraction = fraction;
  result.train_indices.assign(indices.begin(), indices.begin() + train_size);
  result.test_indices.assign(indices.begin() + train_size, indices.end());

  auto take = [&](const std::vector<std::size_t>& rows) {
    EncodedDataset part;
    part.schema = ds.schema;
    part.encoders = ds.encoders;
    part.features = Matrix(rows.size(), ds.dim());
    part.labels.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      auto src = ds.features.row(rows[i]);
      std::copy(src.begin(), src.end(), part.features.row(i).begin());
      part.labels.push_back(ds.labels[rows[i]]);
    }
    return part;
  };
  result.train = take(result.train_indices);
  result.test = take(result.test_indices);
  return result;
}

}  // namespace attrikit
