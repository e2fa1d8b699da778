#include <doctest.h>

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>

#include "core/dataset.hpp"
#include "core/error.hpp"

using namespace shapval;

namespace {

struct TempCsv {
  std::filesystem::path path;
  explicit TempCsv(const std::string& content) {
    static int counter = 0;
    path = std::filesystem::temp_directory_path() /
           ("shapval_csv_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) +
            ".csv");
    std::ofstream out(path);
    out << content;
  }
  ~TempCsv() { std::filesystem::remove(path); }
};

}  // namespace

TEST_CASE("csv with a header and named label column") {
  TempCsv file("a,b,label\n1.5,2,0\n3,4.25,1\n0,1,0\n");
  LoadedCsv csv = load_csv(file.path.string(), std::string("label"), true);
  CHECK(csv.data.rows == 3);
  CHECK(csv.data.cols == 2);
  CHECK(csv.data.classes == 2);
  CHECK(csv.data.x == std::vector<double>{1.5, 2, 3, 4.25, 0, 1});
  CHECK(csv.data.y == std::vector<int32_t>{0, 1, 0});
  CHECK(csv.class_labels == std::vector<long long>{0, 1});
}

TEST_CASE("csv without a header uses column indexes") {
  TempCsv file("7,0,1\n8,1,2\n");
  LoadedCsv csv = load_csv(file.path.string(), int32_t{1}, false);
  CHECK(csv.data.cols == 2);
  CHECK(csv.data.x == std::vector<double>{7, 1, 8, 2});
  CHECK(csv.data.y == std::vector<int32_t>{0, 1});
}

TEST_CASE("labels are remapped to contiguous classes in sorted order") {
  TempCsv file("x,label\n1,9\n2,5\n3,9\n4,-3\n");
  LoadedCsv csv = load_csv(file.path.string(), std::string("label"), true);
  CHECK(csv.class_labels == std::vector<long long>{-3, 5, 9});
  CHECK(csv.data.y == std::vector<int32_t>{2, 1, 2, 0});
  CHECK(csv.data.classes == 3);
}

TEST_CASE("windows line endings and blank lines are tolerated") {
  TempCsv file("a,label\r\n1,0\r\n\r\n2,1\r\n\n");
  LoadedCsv csv = load_csv(file.path.string(), std::string("label"), true);
  CHECK(csv.data.rows == 2);
}

TEST_CASE("csv loader rejects malformed input") {
  CHECK_THROWS_AS(load_csv("/nonexistent/file.csv", int32_t{0}, false), Error);

  TempCsv bad_cell("a,label\nfoo,0\n");
  CHECK_THROWS_WITH_AS(load_csv(bad_cell.path.string(), std::string("label"), true),
                       doctest::Contains("row 1, column 1"), Error);

  TempCsv nan_cell("a,label\nnan,0\n");
  CHECK_THROWS_AS(load_csv(nan_cell.path.string(), std::string("label"), true), Error);

  TempCsv ragged("a,b,label\n1,2,0\n1,2\n");
  CHECK_THROWS_WITH_AS(load_csv(ragged.path.string(), std::string("label"), true),
                       doctest::Contains("row 2"), Error);

  TempCsv fractional_label("a,label\n1,0.5\n");
  CHECK_THROWS_AS(load_csv(fractional_label.path.string(), std::string("label"), true), Error);

  TempCsv fine("a,label\n1,0\n");
  CHECK_THROWS_AS(load_csv(fine.path.string(), std::string("missing"), true), Error);
  CHECK_THROWS_AS(load_csv(fine.path.string(), std::string("label"), false), Error);
  CHECK_THROWS_AS(load_csv(fine.path.string(), int32_t{5}, true), Error);

  TempCsv narrow("label\n0\n");
  CHECK_THROWS_AS(load_csv(narrow.path.string(), std::string("label"), true), Error);
}

TEST_CASE("blobs have the advertised shape and are seed stable") {
  Dataset a = generate_blobs(10, 3, 2, 4.0, 1.0, 5);
  a.validate();
  CHECK(a.rows == 30);
  CHECK(a.cols == 2);
  CHECK(a.classes == 3);
  for (int64_t r = 0; r < a.rows; ++r) CHECK(a.y[static_cast<size_t>(r)] == r / 10);

  Dataset b = generate_blobs(10, 3, 2, 4.0, 1.0, 5);
  CHECK(a.x == b.x);
  Dataset c = generate_blobs(10, 3, 2, 4.0, 1.0, 6);
  CHECK(a.x != c.x);
}

TEST_CASE("larger separation spreads the class centers") {
  Dataset tight = generate_blobs(50, 2, 2, 0.5, 0.1, 7);
  Dataset wide = generate_blobs(50, 2, 2, 10.0, 0.1, 7);
  auto center_gap = [](const Dataset& d) {
    double m0 = 0, m1 = 0;
    for (int64_t r = 0; r < d.rows; ++r) {
      (d.y[static_cast<size_t>(r)] == 0 ? m0 : m1) += d.row(r)[0];
    }
    return std::abs(m1 - m0) / 50.0;
  };
  CHECK(center_gap(wide) > center_gap(tight) + 1.0);
}

TEST_CASE("split keeps every row exactly once") {
  Dataset data = generate_blobs(20, 2, 3, 4.0, 1.0, 11);
  TrainTestSplit split = split_dataset(data, 0.75, 3);
  CHECK(split.train.rows == 30);
  CHECK(split.test.rows == 10);
  CHECK(split.train.classes == 2);
  CHECK(split.test.classes == 2);

  std::multiset<double> before(data.x.begin(), data.x.end());
  std::multiset<double> after(split.train.x.begin(), split.train.x.end());
  after.insert(split.test.x.begin(), split.test.x.end());
  CHECK(before == after);

  TrainTestSplit again = split_dataset(data, 0.75, 3);
  CHECK(again.train.x == split.train.x);
  TrainTestSplit other = split_dataset(data, 0.75, 4);
  CHECK(other.train.x != split.train.x);
}

TEST_CASE("split always leaves at least one row on each side") {
  Dataset data = generate_blobs(1, 2, 1, 4.0, 1.0, 1);
  TrainTestSplit tiny = split_dataset(data, 0.01, 1);
  CHECK(tiny.train.rows == 1);
  CHECK(tiny.test.rows == 1);
  CHECK_THROWS_AS(split_dataset(data, 0.0, 1), Error);
  CHECK_THROWS_AS(split_dataset(data, 1.0, 1), Error);
}

TEST_CASE("take copies rows in the requested order") {
  Dataset data = generate_blobs(2, 2, 2, 4.0, 1.0, 9);
  std::vector<int32_t> picks = {3, 0};
  Dataset sub = data.take(picks);
  CHECK(sub.rows == 2);
  CHECK(sub.y[0] == data.y[3]);
  CHECK(std::vector<double>(sub.row(0).begin(), sub.row(0).end()) ==
        std::vector<double>(data.row(3).begin(), data.row(3).end()));
  std::vector<int32_t> bad = {4};
  CHECK_THROWS_AS(data.take(bad), Error);
}

TEST_CASE("round robin groups cover every group") {
  GroupAssignment ga = round_robin_groups(10, 3);
  CHECK(ga.groups == 3);
  ga.validate(10);
  auto members = ga.members();
  CHECK(members[0] == std::vector<int32_t>{0, 3, 6, 9});
  CHECK(members[1] == std::vector<int32_t>{1, 4, 7});
  CHECK(members[2] == std::vector<int32_t>{2, 5, 8});
  CHECK_THROWS_AS(round_robin_groups(2, 3), Error);

  GroupAssignment empty_group{{0, 0, 2}, 3};
  CHECK_THROWS_AS(empty_group.validate(3), Error);
}
