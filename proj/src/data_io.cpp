#include "linfrac/data_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "linfrac/random.hpp"

namespace linfrac {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string token;
  while (in >> token) out.push_back(token);
  return out;
}

bool parse_double(const std::string& text, double& out) {
  try {
    std::size_t used = 0;
    out = std::stod(text, &used);
    return used == text.size();
  } catch (const std::exception&) {
    return false;
  }
}

bool parse_int(const std::string& text, int& out) {
  try {
    std::size_t used = 0;
    out = std::stoi(text, &used);
    return used == text.size();
  } catch (const std::exception&) {
    return false;
  }
}

void parse_features(const std::vector<std::string>& tokens, std::size_t first,
                    std::size_t line_no, SparseRow& row, int& dimension) {
  int last_index = 0;
  for (std::size_t t = first; t < tokens.size(); ++t) {
    const auto colon = tokens[t].find(':');
    if (colon == std::string::npos) {
      throw MalformedLine("expected index:value, got '" + tokens[t] + "'", line_no);
    }
    int index;
    double value;
    if (!parse_int(tokens[t].substr(0, colon), index) || index < 1) {
      throw MalformedLine("bad feature index in '" + tokens[t] + "'", line_no);
    }
    if (!parse_double(tokens[t].substr(colon + 1), value)) {
      throw MalformedLine("bad feature value in '" + tokens[t] + "'", line_no);
    }
    if (!std::isfinite(value)) {
      throw NonFiniteValue("non-finite feature value in '" + tokens[t] + "'", line_no);
    }
    if (index <= last_index) {
      throw NonMonotoneIndex("feature indices must be strictly increasing", line_no);
    }
    last_index = index;
    dimension = std::max(dimension, index);
    row.features.emplace_back(index, value);
  }
}

}  // namespace

SparseDataset parse_libsvm(std::istream& in, LabelMode mode) {
  SparseDataset dataset;
  dataset.mode = mode;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    // Strip a trailing CR and a '#' comment tail.
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const auto tokens = split_ws(line);
    if (tokens.empty()) continue;

    SparseRow row;
    // A first token containing ':' is a feature, meaning the label field is
    // empty; only multilabel rows may do that.
    const bool label_missing = tokens[0].find(':') != std::string::npos;
    if (mode == LabelMode::kBinary) {
      if (label_missing) throw MalformedLine("binary row without a label", line_no);
      int label;
      if (!parse_int(tokens[0], label) || (label != -1 && label != 0 && label != 1)) {
        throw MalformedLine("binary label must be -1, 0, or +1, got '" + tokens[0] + "'",
                            line_no);
      }
      dataset.binary_labels.push_back(label > 0 ? 1 : -1);
    } else {
      std::vector<int> ids;
      if (!label_missing) {
        std::istringstream ls(tokens[0]);
        std::string id_text;
        while (std::getline(ls, id_text, ',')) {
          int id;
          if (!parse_int(id_text, id) || id < 0) {
            throw MalformedLine("label ids must be non-negative integers, got '" +
                                    id_text + "'",
                                line_no);
          }
          ids.push_back(id);
        }
      }
      std::sort(ids.begin(), ids.end());
      ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
      dataset.label_sets.push_back(std::move(ids));
    }
    parse_features(tokens, label_missing ? 0 : 1, line_no, row, dataset.dimension);
    dataset.rows.push_back(std::move(row));
  }
  return dataset;
}

SparseDataset parse_libsvm_file(const std::string& path, LabelMode mode) {
  std::ifstream in(path);
  if (!in) throw InvalidParam("cannot open '" + path + "'");
  return parse_libsvm(in, mode);
}

std::string write_libsvm(const SparseDataset& dataset) {
  std::ostringstream out;
  char buf[64];
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    if (i) out << '\n';
    if (dataset.mode == LabelMode::kBinary) {
      out << (dataset.binary_labels[i] > 0 ? "+1" : "-1");
    } else {
      const auto& ids = dataset.label_sets[i];
      for (std::size_t k = 0; k < ids.size(); ++k) {
        if (k) out << ',';
        out << ids[k];
      }
    }
    for (const auto& [index, value] : dataset.rows[i].features) {
      std::snprintf(buf, sizeof buf, " %d:%.17g", index, value);
      out << buf;
    }
  }
  return out.str();
}

namespace {

SparseDataset take_rows(const SparseDataset& dataset, const std::vector<std::size_t>& order,
                        std::size_t begin, std::size_t end) {
  SparseDataset out;
  out.mode = dataset.mode;
  out.dimension = dataset.dimension;
  for (std::size_t k = begin; k < end; ++k) {
    const std::size_t i = order[k];
    out.rows.push_back(dataset.rows[i]);
    if (dataset.mode == LabelMode::kBinary) {
      out.binary_labels.push_back(dataset.binary_labels[i]);
    } else {
      out.label_sets.push_back(dataset.label_sets[i]);
    }
  }
  return out;
}

}  // namespace

SplitDataset split(const SparseDataset& dataset, const SplitSpec& spec) {
  if (dataset.size() == 0) throw EmptySample("cannot split an empty dataset");
  if (spec.train_fraction < 0.0 || spec.validation_fraction < 0.0 ||
      spec.train_fraction + spec.validation_fraction > 1.0 + 1e-12) {
    throw InvalidParam("split fractions must be non-negative and sum to at most 1");
  }
  const std::size_t n = dataset.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(mix_seed(spec.seed, 0x73706c6974ULL));
  for (std::size_t i = n; i > 1; --i) {
    std::swap(order[i - 1], order[rng.below(i)]);
  }

  std::size_t n_train = static_cast<std::size_t>(
      std::llround(static_cast<double>(n) * spec.train_fraction));
  std::size_t n_val = static_cast<std::size_t>(
      std::llround(static_cast<double>(n) * spec.validation_fraction));
  n_train = std::min(n_train, n);
  n_val = std::min(n_val, n - n_train);
  const std::size_t n_test = n - n_train - n_val;

  const double test_fraction = 1.0 - spec.train_fraction - spec.validation_fraction;
  if ((spec.train_fraction > 1e-12 && n_train == 0) ||
      (spec.validation_fraction > 1e-12 && n_val == 0) ||
      (test_fraction > 1e-12 && n_test == 0)) {
    throw EmptyPartition("a requested partition rounds to zero rows at n = " +
                         std::to_string(n));
  }

  SplitDataset out;
  out.train = take_rows(dataset, order, 0, n_train);
  out.validation = take_rows(dataset, order, n_train, n_train + n_val);
  out.test = take_rows(dataset, order, n_train + n_val, n);
  return out;
}

std::string write_results(const CsvTable& table) {
  std::ostringstream out;
  auto write_string = [&](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
      out << s;
      return;
    }
    out << '"';
    for (char c : s) {
      if (c == '"') out << '"';
      out << c;
    }
    out << '"';
  };
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out << ',';
    write_string(table.columns[c]);
  }
  char buf[64];
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) {
      throw SchemaMismatch("row with " + std::to_string(row.size()) +
                           " cells under " + std::to_string(table.columns.size()) +
                           " columns");
    }
    out << '\n';
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      if (const auto* i = std::get_if<std::int64_t>(&row[c])) {
        out << *i;
      } else if (const auto* d = std::get_if<double>(&row[c])) {
        const double v = *d == 0.0 ? 0.0 : *d;  // normalize -0
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out << buf;
      } else {
        write_string(std::get<std::string>(row[c]));
      }
    }
  }
  return out.str();
}

ScoreMatrix read_score_matrix(std::istream& in) {
  ScoreMatrix out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    if (out.n == 0) {
      out.m = tokens.size();
    } else if (tokens.size() != out.m) {
      throw MalformedLine("expected " + std::to_string(out.m) + " columns, got " +
                              std::to_string(tokens.size()),
                          line_no);
    }
    for (const auto& token : tokens) {
      double value;
      if (!parse_double(token, value)) {
        throw MalformedLine("bad number '" + token + "'", line_no);
      }
      if (!std::isfinite(value)) throw NonFiniteValue("non-finite score", line_no);
      out.values.push_back(value);
    }
    ++out.n;
  }
  if (out.n == 0) throw EmptySample("score file has no rows");
  return out;
}

ScoreMatrix read_score_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParam("cannot open '" + path + "'");
  return read_score_matrix(in);
}

namespace {

bool looks_like_libsvm(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParam("cannot open '" + path + "'");
  std::string line;
  while (std::getline(in, line)) {
    const auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    for (const auto& token : tokens) {
      if (token.find(':') != std::string::npos) return true;
    }
    return false;
  }
  return false;
}

LabelMatrix labels_from_plain(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParam("cannot open '" + path + "'");
  LabelMatrix out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    if (out.n == 0) {
      out.m = tokens.size();
    } else if (tokens.size() != out.m) {
      throw MalformedLine("expected " + std::to_string(out.m) + " columns, got " +
                              std::to_string(tokens.size()),
                          line_no);
    }
    for (const auto& token : tokens) {
      int value;
      if (!parse_int(token, value) || (value != -1 && value != 0 && value != 1)) {
        throw MalformedLine("labels must be -1, 0, or +1, got '" + token + "'", line_no);
      }
      out.values.push_back(value > 0 ? 1 : -1);
    }
    ++out.n;
  }
  if (out.n == 0) throw EmptySample("label file has no rows");
  return out;
}

LabelMatrix labels_from_libsvm(const std::string& path) {
  const SparseDataset multi = parse_libsvm_file(path, LabelMode::kMultilabel);
  LabelMatrix out;
  out.n = multi.size();
  if (out.n == 0) throw EmptySample("label file has no rows");
  int max_id = -1;
  for (const auto& ids : multi.label_sets) {
    for (int id : ids) max_id = std::max(max_id, id);
  }
  if (max_id < 0) throw EmptySample("no label ids present in '" + path + "'");
  out.m = static_cast<std::size_t>(max_id + 1);
  out.values.assign(out.n * out.m, -1);
  for (std::size_t i = 0; i < out.n; ++i) {
    for (int id : multi.label_sets[i]) out.values[i * out.m + id] = 1;
  }
  return out;
}

}  // namespace

LabelMatrix read_label_matrix_file(const std::string& path, const std::string& format) {
  std::string resolved = format;
  if (resolved == "auto") resolved = looks_like_libsvm(path) ? "libsvm" : "plain";
  if (resolved == "plain") return labels_from_plain(path);
  if (resolved == "libsvm") {
    // A binary LibSVM file (-1/0/+1 labels) is one column; anything else is
    // treated as multilabel ids.
    try {
      const SparseDataset binary = parse_libsvm_file(path, LabelMode::kBinary);
      LabelMatrix out;
      out.n = binary.size();
      if (out.n == 0) throw EmptySample("label file has no rows");
      out.m = 1;
      out.values.assign(binary.binary_labels.begin(), binary.binary_labels.end());
      return out;
    } catch (const MalformedLine&) {
      return labels_from_libsvm(path);
    }
  }
  throw InvalidParam("unknown label format '" + format + "'");
}

}  // namespace linfrac
