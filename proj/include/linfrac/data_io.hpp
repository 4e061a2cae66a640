#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "linfrac/errors.hpp"

namespace linfrac {

// One sparse feature row: (index, value) pairs with 1-based, strictly
// increasing indices.
struct SparseRow {
  std::vector<std::pair<int, double>> features;
};

enum class LabelMode { kBinary, kMultilabel };

// LibSVM-format dataset. Binary mode fills binary_labels with -1/+1 (a 0 in
// the file maps to -1); multilabel mode fills label_sets with the sorted
// non-negative label ids of each row (possibly empty).
struct SparseDataset {
  LabelMode mode = LabelMode::kBinary;
  std::vector<SparseRow> rows;
  std::vector<int> binary_labels;
  std::vector<std::vector<int>> label_sets;
  int dimension = 0;  // largest feature index seen

  std::size_t size() const { return rows.size(); }
};

SparseDataset parse_libsvm(std::istream& in, LabelMode mode);
SparseDataset parse_libsvm_file(const std::string& path, LabelMode mode);

// Inverse of parse_libsvm up to whitespace normalization; feature values are
// printed with 17 significant digits so a round trip is exact.
std::string write_libsvm(const SparseDataset& dataset);

// Deterministic shuffled split into train / validation / test. Fractions are
// of the total; the remainder goes to test. Any partition whose fraction is
// positive must come out non-empty, else EmptyPartition.
struct SplitSpec {
  double train_fraction = 2.0 / 3.0;
  double validation_fraction = 1.0 / 3.0;
  std::uint64_t seed = 0;
};

struct SplitDataset {
  SparseDataset train;
  SparseDataset validation;
  SparseDataset test;
};

SplitDataset split(const SparseDataset& dataset, const SplitSpec& spec);

// Minimal CSV writer. Doubles print with 17 significant digits, strings are
// quoted only when they need it. Rows are joined with '\n' and the result has
// no trailing newline.
using CsvValue = std::variant<std::int64_t, double, std::string>;

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<CsvValue>> rows;
};

std::string write_results(const CsvTable& table);

// Whitespace-separated numeric matrix, one row per line; every row must have
// the same number of columns.
struct ScoreMatrix {
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<double> values;

  double at(std::size_t i, std::size_t j) const { return values[i * m + j]; }
};

ScoreMatrix read_score_matrix(std::istream& in);
ScoreMatrix read_score_matrix_file(const std::string& path);

// Label matrix in {-1, +1}. "plain" is a whitespace-separated matrix of
// -1/0/+1 (0 maps to -1); "libsvm" takes the labels of a LibSVM file, one
// column for binary files and max-id+1 columns for multilabel ones; "auto"
// sniffs for ':' tokens.
struct LabelMatrix {
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<int> values;

  int at(std::size_t i, std::size_t j) const { return values[i * m + j]; }
};

LabelMatrix read_label_matrix_file(const std::string& path, const std::string& format);

}  // namespace linfrac
