#pragma once

// Labeled feature vectors with +1/-1 labels, plus the CSV representation
// (header `label,f1,...,fp`; labels may be given as {-1,1} or {0,1}, with 0
// mapped to -1 on read).

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "e2d2/errors.hpp"
#include "e2d2/io.hpp"
#include "e2d2/matrix.hpp"

namespace e2d2 {

struct LabeledDataset {
  int p = 0;
  std::vector<Vector> samples;
  std::vector<int> labels;  // +1 or -1

  int size() const { return static_cast<int>(samples.size()); }

  int count_label(int label) const {
    int n = 0;
    for (int l : labels) n += (l == label);
    return n;
  }

  void validate() const {
    if (samples.size() != labels.size()) {
      throw DimensionMismatch("dataset: samples/labels size mismatch");
    }
    if (samples.empty()) throw EmptyInput("dataset: no samples");
    for (const auto& x : samples) {
      if (static_cast<int>(x.size()) != p) {
        throw DimensionMismatch("dataset: sample length != p");
      }
    }
    for (int l : labels) {
      if (l != 1 && l != -1) throw ValidationError("BadLabel", "dataset: label must be +1/-1");
    }
  }

  std::vector<Vector> samples_with_label(int label) const {
    std::vector<Vector> out;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      if (labels[i] == label) out.push_back(samples[i]);
    }
    return out;
  }
};

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

inline void write_dataset_csv(std::ostream& os, const LabeledDataset& data) {
  os << "label";
  for (int j = 1; j <= data.p; ++j) os << ",f" << j;
  os << "\n";
  for (int i = 0; i < data.size(); ++i) {
    os << data.labels[std::size_t(i)];
    for (double v : data.samples[std::size_t(i)]) os << ',' << format_double(v);
    os << "\n";
  }
}

inline void write_dataset_csv_file(const std::string& path, const LabeledDataset& data) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open for writing: " + path);
  write_dataset_csv(os, data);
  if (!os) throw IoError("write failed: " + path);
}

inline LabeledDataset read_dataset_csv(std::istream& is, const std::string& what = "dataset") {
  std::string line;
  if (!std::getline(is, line)) throw IoError("empty dataset file: " + what);
  const auto header = split_csv_line(line);
  if (header.empty() || header[0] != "label") {
    throw IoError("dataset header must start with 'label': " + what);
  }
  LabeledDataset data;
  data.p = static_cast<int>(header.size()) - 1;
  if (data.p < 1) throw IoError("dataset has no feature columns: " + what);

  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto fields = split_csv_line(line);
    if (static_cast<int>(fields.size()) != data.p + 1) {
      throw IoError(what + ": line " + std::to_string(lineno) + " has " +
                    std::to_string(fields.size()) + " fields, expected " +
                    std::to_string(data.p + 1));
    }
    int label;
    if (fields[0] == "1" || fields[0] == "+1") {
      label = 1;
    } else if (fields[0] == "-1" || fields[0] == "0") {
      label = -1;
    } else {
      throw ValidationError("BadLabel", what + ": line " + std::to_string(lineno) +
                                            " label '" + fields[0] + "' not in {-1,0,1}");
    }
    Vector x(std::size_t(data.p));
    for (int j = 0; j < data.p; ++j) {
      try {
        std::size_t pos = 0;
        x[std::size_t(j)] = std::stod(fields[std::size_t(j) + 1], &pos);
        if (pos != fields[std::size_t(j) + 1].size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw IoError(what + ": line " + std::to_string(lineno) + " bad numeric field '" +
                      fields[std::size_t(j) + 1] + "'");
      }
    }
    data.samples.push_back(std::move(x));
    data.labels.push_back(label);
  }
  data.validate();
  return data;
}

inline LabeledDataset read_dataset_csv_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open: " + path);
  return read_dataset_csv(is, path);
}

}  // namespace e2d2
