#include <doctest.h>

#include <cmath>
#include <vector>

#include "core/dataset.hpp"
#include "core/error.hpp"
#include "core/learners.hpp"

using namespace shapval;

namespace {

Dataset make_1d(std::vector<double> xs, std::vector<int32_t> ys, int32_t classes) {
  Dataset d;
  d.rows = static_cast<int64_t>(xs.size());
  d.cols = 1;
  d.classes = classes;
  d.x = std::move(xs);
  d.y = std::move(ys);
  d.validate();
  return d;
}

}  // namespace

TEST_CASE("learner specs validate and label") {
  CHECK(LearnerSpec::knn(5).label() == "knn(k=5)");
  CHECK(LearnerSpec::naive_bayes().label() == "naive-bayes");
  CHECK(LearnerSpec::logreg().label() == "logreg");
  LearnerSpec bad = LearnerSpec::knn(0);
  CHECK_THROWS_AS(bad.validate(), Error);
  LearnerSpec neg = LearnerSpec::logreg(-1, 0.1);
  CHECK_THROWS_AS(neg.validate(), Error);
}

TEST_CASE("feature stats are population moments") {
  Dataset d = make_1d({1, 2, 3, 6}, {0, 0, 1, 1}, 2);
  FeatureStats stats = feature_stats(d);
  CHECK(stats.mean[0] == doctest::Approx(3.0));
  CHECK(stats.variance[0] == doctest::Approx(3.5));
}

TEST_CASE("knn votes among the nearest rows") {
  Dataset train = make_1d({0, 1, 10, 11}, {0, 0, 1, 1}, 2);
  Dataset test = make_1d({0.5, 10.5, 4.9}, {0, 0, 0}, 2);
  std::vector<int32_t> pred = train_predict(LearnerSpec::knn(3), train, test);
  CHECK(pred == std::vector<int32_t>{0, 1, 0});
  pred = train_predict(LearnerSpec::knn(1), train, test);
  CHECK(pred == std::vector<int32_t>{0, 1, 0});
}

TEST_CASE("knn ties break toward earlier rows and lower classes") {
  // equidistant neighbours: the earlier row wins the k=1 vote
  Dataset train = make_1d({0, 2}, {1, 0}, 2);
  Dataset test = make_1d({1}, {0}, 2);
  CHECK(train_predict(LearnerSpec::knn(1), train, test) == std::vector<int32_t>{1});
  // split vote: the lower class index wins
  CHECK(train_predict(LearnerSpec::knn(2), train, test) == std::vector<int32_t>{0});
}

TEST_CASE("knn clamps k to the subset size") {
  Dataset train = make_1d({0, 10}, {0, 1}, 2);
  Dataset test = make_1d({9}, {0}, 2);
  CHECK(train_predict(LearnerSpec::knn(25), train, test) == std::vector<int32_t>{0});
}

TEST_CASE("naive bayes matches a hand-built gaussian model") {
  Dataset train = make_1d({0, 2, 10, 12}, {0, 0, 1, 1}, 2);
  Dataset test = make_1d({2.5, 9.5, 6.1, 5.9}, {0, 0, 0, 0}, 2);
  std::vector<int32_t> pred = train_predict(LearnerSpec::naive_bayes(), train, test);
  // equal priors and variances put the boundary at 6
  CHECK(pred == std::vector<int32_t>{0, 1, 1, 0});
}

TEST_CASE("naive bayes survives zero-variance features") {
  Dataset train = make_1d({5, 5, 8, 8}, {0, 0, 1, 1}, 2);
  Dataset test = make_1d({5.1, 7.9}, {0, 0}, 2);
  std::vector<int32_t> pred = train_predict(LearnerSpec::naive_bayes(), train, test);
  CHECK(pred == std::vector<int32_t>{0, 1});
}

TEST_CASE("naive bayes only votes among classes present in the subset") {
  Dataset train = make_1d({5, 6}, {1, 1}, 3);
  Dataset test = make_1d({-100, 100}, {0, 0}, 3);
  std::vector<int32_t> pred = train_predict(LearnerSpec::naive_bayes(), train, test);
  CHECK(pred == std::vector<int32_t>{1, 1});
}

TEST_CASE("logistic regression separates a linear problem") {
  Dataset train = make_1d({-2, -1, 1, 2}, {0, 0, 1, 1}, 2);
  std::vector<int32_t> pred = train_predict(LearnerSpec::logreg(), train, train);
  CHECK(pred == std::vector<int32_t>{0, 0, 1, 1});
}

TEST_CASE("single-class training subsets predict that class") {
  Dataset train = make_1d({1, 2}, {1, 1}, 2);
  Dataset test = make_1d({-50, 50}, {0, 0}, 2);
  for (LearnerSpec spec : {LearnerSpec::knn(3), LearnerSpec::naive_bayes(),
                           LearnerSpec::logreg()}) {
    CHECK(train_predict(spec, train, test) == std::vector<int32_t>{1, 1});
  }
}

TEST_CASE("train_predict rejects mismatched shapes") {
  Dataset train = make_1d({1, 2}, {0, 1}, 2);
  Dataset wide;
  wide.rows = 1;
  wide.cols = 2;
  wide.classes = 2;
  wide.x = {1, 2};
  wide.y = {0};
  CHECK_THROWS_AS(train_predict(LearnerSpec::knn(1), train, wide), Error);
}

TEST_CASE("accuracy utility scores coalitions of training rows") {
  TrainTestSplit split;
  split.train = make_1d({0, 1, 10, 11}, {0, 0, 1, 1}, 2);
  split.test = make_1d({0.5, 10.5}, {0, 1}, 2);
  Game game = accuracy_utility(split, LearnerSpec::knn(1));
  CHECK(game.players() == 4);
  CHECK(game.utility(Coalition{}) == doctest::Approx(0.5));
  CHECK(game.utility(Coalition::full(4)) == doctest::Approx(1.0));
  // only far-side rows: every test point lands on the wrong class half the time
  CHECK(game.utility(Coalition({0})) == doctest::Approx(0.5));
  CHECK(game.utility(Coalition({0, 1})) == doctest::Approx(0.5));
  CHECK(game.range().lo == doctest::Approx(0.0));
  CHECK(game.range().hi == doctest::Approx(1.0));
  CHECK(game.label() == "knn(k=1)-accuracy(n=4)");

  // same coalition twice gives the same answer
  CHECK(game.utility(Coalition({1, 2})) == game.utility(Coalition({1, 2})));
}

TEST_CASE("accuracy utility validates the split") {
  TrainTestSplit split;
  split.train = make_1d({0, 1}, {0, 1}, 2);
  split.test.rows = 1;
  split.test.cols = 2;
  split.test.classes = 2;
  split.test.x = {1, 2};
  split.test.y = {0};
  CHECK_THROWS_AS(accuracy_utility(split, LearnerSpec::knn(1)), Error);
}
