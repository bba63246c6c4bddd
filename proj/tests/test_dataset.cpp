#include <doctest.h>

#include <algorithm>
#include <set>

#include "attrikit/dataset.hpp"
#include "attrikit/errors.hpp"
#include "attrikit/rng.hpp"
#include "helpers.hpp"

using namespace attrikit;

namespace {

Schema toy_schema() {
  return Schema{{{"f1", ColumnKind::kNumeric},
                 {"salary", ColumnKind::kCategorical},
                 {"left", ColumnKind::kLabel}}};
}

}  // namespace

TEST_CASE("load_table counts data rows") {
  const std::string csv = "f1,salary,left\n0.5,low,0\n0.7,high,1\n";
  const RawTable table = load_table(csv, toy_schema());
  CHECK(table.rows.size() == 2);
  CHECK(table.header.size() == 3);
}

TEST_CASE("load_table rejects a header missing a schema column") {
  const std::string csv = "f1,left\n0.5,0\n";
  CHECK_THROWS_AS(load_table(csv, toy_schema()), DataError);
}

TEST_CASE("load_table rejects ragged rows and empty files") {
  CHECK_THROWS_AS(parse_csv("f1,salary,left\n0.5,low\n"), DataError);
  CHECK_THROWS_AS(parse_csv(""), DataError);
  CHECK_THROWS_AS(parse_csv("\n"), DataError);
}

TEST_CASE("schema validation") {
  Schema no_label{{{"a", ColumnKind::kNumeric}}};
  CHECK_THROWS_AS(no_label.validate(), DataError);
  Schema two_labels{{{"a", ColumnKind::kLabel}, {"b", ColumnKind::kLabel}}};
  CHECK_THROWS_AS(two_labels.validate(), DataError);
  Schema dup{{{"a", ColumnKind::kNumeric}, {"a", ColumnKind::kLabel}}};
  CHECK_THROWS_AS(dup.validate(), DataError);
  Schema empty_name{{{"", ColumnKind::kLabel}}};
  CHECK_THROWS_AS(empty_name.validate(), DataError);
}

TEST_CASE("salary uses the fixed low/medium/high coding") {
  const std::string csv = "f1,salary,left\n1,low,0\n2,high,1\n3,medium,0\n";
  const EncodedDataset ds = encode(parse_csv(csv), toy_schema());
  CHECK(ds.features(0, 1) == 0.0);
  CHECK(ds.features(1, 1) == 2.0);
  CHECK(ds.features(2, 1) == 1.0);
}

TEST_CASE("numeric columns pass through unchanged") {
  const std::string csv = "f1,salary,left\n0.38,low,0\n0.8,low,1\n";
  const EncodedDataset ds = encode(parse_csv(csv), toy_schema());
  CHECK(ds.features(0, 0) == 0.38);
  CHECK(ds.features(1, 0) == 0.8);
}

TEST_CASE("other categorical columns are coded in byte-wise lexicographic order") {
  const Schema schema{{{"department", ColumnKind::kCategorical},
                       {"left", ColumnKind::kLabel}}};
  const std::string csv = "department,left\nsales,0\nIT,1\nhr,0\n";
  const EncodedDataset ds = encode(parse_csv(csv), schema);
  // Uppercase precedes lowercase byte-wise: IT=0, hr=1, sales=2.
  CHECK(ds.features(0, 0) == 2.0);
  CHECK(ds.features(1, 0) == 0.0);
  CHECK(ds.features(2, 0) == 1.0);
}

TEST_CASE("encode rejects bad cells") {
  CHECK_THROWS_AS(encode(parse_csv("f1,salary,left\nabc,low,0\n1,low,1\n"), toy_schema()),
                  DataError);
  CHECK_THROWS_AS(encode(parse_csv("f1,salary,left\nnan,low,0\n1,low,1\n"), toy_schema()),
                  DataError);
  CHECK_THROWS_AS(encode(parse_csv("f1,salary,left\ninf,low,0\n1,low,1\n"), toy_schema()),
                  DataError);
  CHECK_THROWS_AS(encode(parse_csv("f1,salary,left\n1e999,low,0\n1,low,1\n"), toy_schema()),
                  DataError);
  // Label outside {0, 1}.
  CHECK_THROWS_AS(encode(parse_csv("f1,salary,left\n1,low,2\n1,low,1\n"), toy_schema()),
                  DataError);
  // Unknown salary level (the salary coding is fixed).
  CHECK_THROWS_AS(encode(parse_csv("f1,salary,left\n1,gigantic,0\n1,low,1\n"), toy_schema()),
                  DataError);
}

TEST_CASE("encoders round-trip every seen category") {
  const Schema schema{{{"department", ColumnKind::kCategorical},
                       {"salary", ColumnKind::kCategorical},
                       {"left", ColumnKind::kLabel}}};
  const std::string csv =
      "department,salary,left\nsales,low,0\nIT,high,1\nhr,medium,0\nsupport,low,1\n";
  const EncodedDataset ds = encode(parse_csv(csv), schema);
  REQUIRE(ds.encoders.size() == 2);
  for (const CategoricalEncoder& enc : ds.encoders) {
    for (std::size_t code = 0; code < enc.categories.size(); ++code) {
      const int i = static_cast<int>(code);
      CHECK(enc.code_of(enc.category_of(i)) == i);
    }
  }
  CHECK_THROWS_AS(ds.encoders[0].code_of("never-seen"), DataError);
}

TEST_CASE("encode_features works without the label column") {
  const Schema schema = toy_schema();
  const EncodedDataset ds =
      encode(parse_csv("f1,salary,left\n1,low,0\n2,high,1\n"), schema);
  const EncodedFeatures enc =
      encode_features(parse_csv("f1,salary\n3,medium\n"), schema, ds.encoders);
  CHECK(enc.labels.empty());
  CHECK(enc.features(0, 0) == 3.0);
  CHECK(enc.features(0, 1) == 1.0);
  // Missing feature column is an error.
  CHECK_THROWS_AS(encode_features(parse_csv("f1\n3\n"), schema, ds.encoders), DataError);
}

TEST_CASE("infer_schema classifies columns from the data") {
  const RawTable table =
      parse_csv("age,dept,left\n31,sales,0\n45,hr,1\n27,hr,0\n");
  const Schema schema = infer_schema(table, "left");
  CHECK(schema.columns[0].kind == ColumnKind::kNumeric);
  CHECK(schema.columns[1].kind == ColumnKind::kCategorical);
  CHECK(schema.columns[2].kind == ColumnKind::kLabel);
  CHECK_THROWS_AS(infer_schema(table, "missing"), DataError);
}

TEST_CASE("split produces the documented sizes") {
  SplitMix64 rng(3);
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  for (int i = 0; i < 10; ++i) {
    rows.push_back({rng.next_unit()});
    labels.push_back(i % 2);
  }
  const EncodedDataset ds = testing::make_dataset(rows, labels);
  const SplitResult parts = split(ds, 0.7, 42);
  CHECK(parts.train.size() == 7);
  CHECK(parts.test.size() == 3);

  std::set<std::size_t> seen(parts.train_indices.begin(), parts.train_indices.end());
  seen.insert(parts.test_indices.begin(), parts.test_indices.end());
  CHECK(seen.size() == 10);
}

TEST_CASE("split of 14999 rows at 0.7 gives 10499/4500") {
  std::vector<std::vector<double>> rows(14999, std::vector<double>{0.0});
  std::vector<int> labels(14999);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    rows[i][0] = static_cast<double>(i);
    labels[i] = static_cast<int>(i % 2);
  }
  const EncodedDataset ds = testing::make_dataset(rows, labels);
  const SplitResult parts = split(ds, 0.7, 42);
  CHECK(parts.train.size() == 10499);
  CHECK(parts.test.size() == 4500);
}

TEST_CASE("split is a deterministic partition for any seed and fraction") {
  SplitMix64 rng(11);
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  const std::size_t n = 100;
  for (std::size_t i = 0; i < n; ++i) {
    rows.push_back({rng.next_unit(), rng.next_unit()});
    labels.push_back(static_cast<int>(rng.next_below(2)));
  }
  const EncodedDataset ds = testing::make_dataset(rows, labels);

  for (int trial = 0; trial < 25; ++trial) {
    const std::uint64_t seed = rng.next();
    const double fraction = 0.05 + 0.9 * rng.next_unit();
    const SplitResult a = split(ds, fraction, seed);
    const SplitResult b = split(ds, fraction, seed);
    CHECK(a.train_indices == b.train_indices);
    CHECK(a.test_indices == b.test_indices);
    CHECK(a.train.size() ==
          static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n))));

    std::set<std::size_t> train_set(a.train_indices.begin(), a.train_indices.end());
    std::set<std::size_t> test_set(a.test_indices.begin(), a.test_indices.end());
    CHECK(train_set.size() == a.train_indices.size());
    CHECK(test_set.size() == a.test_indices.size());
    CHECK(train_set.size() + test_set.size() == n);
    for (std::size_t idx : test_set) CHECK(train_set.count(idx) == 0);
  }

  // Different seeds give different permutations.
  const SplitResult a = split(ds, 0.7, 1);
  const SplitResult b = split(ds, 0.7, 2);
  CHECK(a.train_indices != b.train_indices);
}

TEST_CASE("split rejects bad input") {
  const EncodedDataset one = testing::make_dataset({{1.0}}, {0});
  CHECK_THROWS_AS(split(one, 0.7, 42), DataError);
  const EncodedDataset two = testing::make_dataset({{1.0}, {2.0}}, {0, 1});
  CHECK_THROWS_AS(split(two, 0.0, 42), std::invalid_argument);
  CHECK_THROWS_AS(split(two, 1.0, 42), std::invalid_argument);
}
