#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace shapval {

// Dense numeric classification dataset; labels are contiguous 0..classes-1.
struct Dataset {
  int64_t rows = 0;
  int32_t cols = 0;
  int32_t classes = 0;
  std::vector<double> x;  // row-major, rows * cols
  std::vector<int32_t> y;

  std::span<const double> row(int64_t r) const {
    return {x.data() + r * cols, static_cast<size_t>(cols)};
  }
  void validate() const;

  // New dataset from the given row indices, in the given order.
  Dataset take(std::span<const int32_t> indices) const;
};

struct TrainTestSplit {
  Dataset train;
  Dataset test;
};

struct LoadedCsv {
  Dataset data;
  std::vector<long long> class_labels;  // original label per class index
};

// Either a header name or a zero-based column index.
using ColumnRef = std::variant<std::string, int32_t>;

// Strict numeric CSV: every cell must parse fully, no NaN or infinity; the
// label column must hold integers, which are remapped to 0..C-1 in sorted
// order. Errors name the offending cell.
LoadedCsv load_csv(const std::string& path, const ColumnRef& label_column, bool header);

// Isotropic Gaussian blobs, one center per class, rows grouped by class.
Dataset generate_blobs(int32_t per_class, int32_t classes, int32_t dims, double separation,
                       double noise, uint64_t seed);

// Seeded shuffle, then the first floor(rows * fraction) rows (at least one
// on each side) become the training set.
TrainTestSplit split_dataset(const Dataset& data, double train_fraction, uint64_t seed);

struct GroupAssignment {
  std::vector<int32_t> group_of;  // per row
  int32_t groups = 0;

  void validate(int64_t rows) const;  // every group 0..G-1 non-empty
  std::vector<std::vector<int32_t>> members() const;
};

GroupAssignment round_robin_groups(int64_t rows, int32_t groups);

}  // namespace shapval
