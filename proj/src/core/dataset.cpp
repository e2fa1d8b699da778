#include "dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "error.hpp"
#include "rng.hpp"

namespace shapval {

void Dataset::validate() const {
  require(rows >= 1, ErrorCode::Data, "dataset has no rows");
  require(cols >= 1, ErrorCode::Data, "dataset has no feature columns");
  require(classes >= 1, ErrorCode::Data, "dataset has no classes");
  require(static_cast<int64_t>(y.size()) == rows, ErrorCode::Data,
          "label count does not match row count");
  require(static_cast<int64_t>(x.size()) == rows * cols, ErrorCode::Data,
          "feature buffer does not match row count");
  for (int32_t label : y) {
    require(label >= 0 && label < classes, ErrorCode::Data, "label outside 0..classes-1");
  }
}

Dataset Dataset::take(std::span<const int32_t> indices) const {
  Dataset out;
  out.rows = static_cast<int64_t>(indices.size());
  out.cols = cols;
  out.classes = classes;
  out.x.reserve(indices.size() * static_cast<size_t>(cols));
  out.y.reserve(indices.size());
  for (int32_t r : indices) {
    require(r >= 0 && r < rows, ErrorCode::InvalidArgument, "row index outside the dataset");
    auto row_span = row(r);
    out.x.insert(out.x.end(), row_span.begin(), row_span.end());
    out.y.push_back(y[static_cast<size_t>(r)]);
  }
  return out;
}

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_cells(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

std::string cell_name(size_t data_row, size_t col) {
  return "row " + std::to_string(data_row + 1) + ", column " + std::to_string(col + 1);
}

double parse_value(const std::string& cell, size_t data_row, size_t col) {
  double value = 0.0;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  require(ec == std::errc() && ptr == end, ErrorCode::Data,
          "cannot parse '" + cell + "' at " + cell_name(data_row, col));
  require(std::isfinite(value), ErrorCode::Data,
          "non-finite value at " + cell_name(data_row, col));
  return value;
}

}  // namespace

LoadedCsv load_csv(const std::string& path, const ColumnRef& label_column, bool header) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::Data, "cannot open " + path);

  std::vector<std::vector<std::string>> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    lines.push_back(split_cells(line));
  }

  std::vector<std::string> names;
  size_t first_data = 0;
  if (header) {
    require(!lines.empty(), ErrorCode::Data, path + " has no header line");
    names = lines[0];
    first_data = 1;
  }
  require(lines.size() > first_data, ErrorCode::Data, path + " has no data rows");

  size_t width = lines[first_data].size();
  require(width >= 2, ErrorCode::Data, path + " needs a label column and at least one feature");

  size_t label_idx;
  if (const auto* name = std::get_if<std::string>(&label_column)) {
    require(header, ErrorCode::InvalidArgument,
            "label column by name requires a header");
    auto it = std::find(names.begin(), names.end(), *name);
    require(it != names.end(), ErrorCode::Data, "label column '" + *name + "' not found");
    label_idx = static_cast<size_t>(it - names.begin());
  } else {
    int32_t idx = std::get<int32_t>(label_column);
    require(idx >= 0 && static_cast<size_t>(idx) < width, ErrorCode::Data,
            "label column index outside the table");
    label_idx = static_cast<size_t>(idx);
  }
  if (header) {
    require(names.size() == width, ErrorCode::Data, "header width does not match data rows");
  }

  size_t data_rows = lines.size() - first_data;
  std::vector<double> features;
  features.reserve(data_rows * (width - 1));
  std::vector<long long> raw_labels(data_rows);

  for (size_t r = 0; r < data_rows; ++r) {
    const auto& cells = lines[first_data + r];
    require(cells.size() == width, ErrorCode::Data,
            "row " + std::to_string(r + 1) + " has " + std::to_string(cells.size()) +
                " cells, expected " + std::to_string(width));
    for (size_t c = 0; c < width; ++c) {
      double value = parse_value(cells[c], r, c);
      if (c == label_idx) {
        require(value == std::floor(value) && std::abs(value) < 9.0e15, ErrorCode::Data,
                "label at " + cell_name(r, c) + " is not an integer");
        raw_labels[r] = static_cast<long long>(value);
      } else {
        features.push_back(value);
      }
    }
  }

  std::vector<long long> class_labels = raw_labels;
  std::sort(class_labels.begin(), class_labels.end());
  class_labels.erase(std::unique(class_labels.begin(), class_labels.end()), class_labels.end());

  LoadedCsv out;
  out.class_labels = class_labels;
  out.data.rows = static_cast<int64_t>(data_rows);
  out.data.cols = static_cast<int32_t>(width - 1);
  out.data.classes = static_cast<int32_t>(class_labels.size());
  out.data.x = std::move(features);
  out.data.y.resize(data_rows);
  for (size_t r = 0; r < data_rows; ++r) {
    auto it = std::lower_bound(class_labels.begin(), class_labels.end(), raw_labels[r]);
    out.data.y[r] = static_cast<int32_t>(it - class_labels.begin());
  }
  out.data.validate();
  return out;
}

Dataset generate_blobs(int32_t per_class, int32_t classes, int32_t dims, double separation,
                       double noise, uint64_t seed) {
  require(per_class >= 1, ErrorCode::InvalidArgument, "need at least one point per class");
  require(classes >= 1, ErrorCode::InvalidArgument, "need at least one class");
  require(dims >= 1, ErrorCode::InvalidArgument, "need at least one dimension");
  require(std::isfinite(separation) && separation >= 0.0, ErrorCode::InvalidArgument,
          "separation must be non-negative");
  require(std::isfinite(noise) && noise >= 0.0, ErrorCode::InvalidArgument,
          "noise must be non-negative");

  Dataset d;
  d.rows = static_cast<int64_t>(per_class) * classes;
  d.cols = dims;
  d.classes = classes;
  d.x.reserve(static_cast<size_t>(d.rows) * static_cast<size_t>(dims));
  d.y.reserve(static_cast<size_t>(d.rows));

  Rng rng(derive_seed(seed, {stream::kBlobs}));
  for (int32_t c = 0; c < classes; ++c) {
    // Centers sit on the axes; classes beyond the dimension count move to
    // outer rings on the same axes.
    int32_t axis = c % dims;
    double radius = separation * static_cast<double>(1 + c / dims);
    for (int32_t p = 0; p < per_class; ++p) {
      for (int32_t j = 0; j < dims; ++j) {
        double center = j == axis ? radius : 0.0;
        d.x.push_back(center + noise * rng.normal());
      }
      d.y.push_back(c);
    }
  }
  d.validate();
  return d;
}

TrainTestSplit split_dataset(const Dataset& data, double train_fraction, uint64_t seed) {
  data.validate();
  require(data.rows >= 2, ErrorCode::InvalidArgument, "need at least two rows to split");
  require(std::isfinite(train_fraction) && train_fraction > 0.0 && train_fraction < 1.0,
          ErrorCode::InvalidArgument, "train fraction must be inside (0, 1)");

  std::vector<int32_t> order(static_cast<size_t>(data.rows));
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int32_t>(i);
  Rng rng(derive_seed(seed, {stream::kSplit}));
  rng.shuffle(order);

  int64_t train_n = static_cast<int64_t>(
      std::floor(static_cast<double>(data.rows) * train_fraction));
  train_n = std::clamp<int64_t>(train_n, 1, data.rows - 1);

  TrainTestSplit split;
  split.train = data.take({order.data(), static_cast<size_t>(train_n)});
  split.test = data.take(
      {order.data() + train_n, static_cast<size_t>(data.rows - train_n)});
  return split;
}

void GroupAssignment::validate(int64_t rows) const {
  require(groups >= 1, ErrorCode::InvalidArgument, "need at least one group");
  require(static_cast<int64_t>(group_of.size()) == rows, ErrorCode::InvalidArgument,
          "group assignment length does not match row count");
  std::vector<int64_t> sizes(static_cast<size_t>(groups), 0);
  for (int32_t g : group_of) {
    require(g >= 0 && g < groups, ErrorCode::InvalidArgument, "group index outside 0..G-1");
    sizes[static_cast<size_t>(g)] += 1;
  }
  for (int64_t s : sizes) {
    require(s > 0, ErrorCode::InvalidArgument, "every group needs at least one row");
  }
}

std::vector<std::vector<int32_t>> GroupAssignment::members() const {
  std::vector<std::vector<int32_t>> out(static_cast<size_t>(groups));
  for (size_t r = 0; r < group_of.size(); ++r) {
    out[static_cast<size_t>(group_of[r])].push_back(static_cast<int32_t>(r));
  }
  return out;
}

GroupAssignment round_robin_groups(int64_t rows, int32_t groups) {
  require(groups >= 1, ErrorCode::InvalidArgument, "need at least one group");
  require(rows >= groups, ErrorCode::InvalidArgument, "fewer rows than groups");
  GroupAssignment a;
  a.groups = groups;
  a.group_of.resize(static_cast<size_t>(rows));
  for (int64_t r = 0; r < rows; ++r) {
    a.group_of[static_cast<size_t>(r)] = static_cast<int32_t>(r % groups);
  }
  return a;
}

}  // namespace shapval
