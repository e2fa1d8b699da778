#include "learners.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "error.hpp"
#include "stats.hpp"

namespace shapval {

void LearnerSpec::validate() const {
  switch (kind) {
    case Kind::Knn:
      require(k >= 1, ErrorCode::InvalidArgument, "knn needs k >= 1");
      return;
    case Kind::NaiveBayes:
      require(std::isfinite(var_smoothing) && var_smoothing > 0.0, ErrorCode::InvalidArgument,
              "variance smoothing must be positive");
      return;
    case Kind::Logreg:
      require(iterations >= 1, ErrorCode::InvalidArgument, "logreg needs iterations >= 1");
      require(std::isfinite(step) && step > 0.0, ErrorCode::InvalidArgument,
              "logreg step must be positive");
      return;
  }
  fail(ErrorCode::InvalidArgument, "unknown learner kind");
}

std::string LearnerSpec::label() const {
  switch (kind) {
    case Kind::Knn:
      return "knn(k=" + std::to_string(k) + ")";
    case Kind::NaiveBayes:
      return "naive-bayes";
    case Kind::Logreg:
      return "logreg";
  }
  return "unknown";
}

LearnerSpec LearnerSpec::knn(int32_t k) {
  LearnerSpec s;
  s.kind = Kind::Knn;
  s.k = k;
  return s;
}

LearnerSpec LearnerSpec::naive_bayes(double var_smoothing) {
  LearnerSpec s;
  s.kind = Kind::NaiveBayes;
  s.var_smoothing = var_smoothing;
  return s;
}

LearnerSpec LearnerSpec::logreg(int32_t iterations, double step) {
  LearnerSpec s;
  s.kind = Kind::Logreg;
  s.iterations = iterations;
  s.step = step;
  return s;
}

FeatureStats feature_stats(const Dataset& data) {
  data.validate();
  size_t cols = static_cast<size_t>(data.cols);
  FeatureStats stats;
  stats.mean.assign(cols, 0.0);
  stats.variance.assign(cols, 0.0);
  std::vector<double> column(static_cast<size_t>(data.rows));
  for (size_t f = 0; f < cols; ++f) {
    for (int64_t r = 0; r < data.rows; ++r) {
      column[static_cast<size_t>(r)] = data.x[static_cast<size_t>(r) * cols + f];
    }
    stats.mean[f] = mean_of(column);
    stats.variance[f] = population_variance(column);
  }
  return stats;
}

namespace {

std::vector<int32_t> present_classes(const Dataset& train) {
  std::vector<int32_t> classes;
  for (int32_t c = 0; c < train.classes; ++c) {
    for (int32_t label : train.y) {
      if (label == c) {
        classes.push_back(c);
        break;
      }
    }
  }
  return classes;
}

std::vector<int32_t> knn_predict(const LearnerSpec& spec, const Dataset& train,
                                 const Dataset& test) {
  int64_t k = std::min<int64_t>(spec.k, train.rows);
  size_t cols = static_cast<size_t>(train.cols);
  std::vector<int32_t> preds(static_cast<size_t>(test.rows));
  std::vector<std::pair<double, int64_t>> dist(static_cast<size_t>(train.rows));
  std::vector<int64_t> votes(static_cast<size_t>(train.classes));

  for (int64_t t = 0; t < test.rows; ++t) {
    auto q = test.row(t);
    for (int64_t r = 0; r < train.rows; ++r) {
      const double* p = train.x.data() + static_cast<size_t>(r) * cols;
      double d2 = 0.0;
      for (size_t f = 0; f < cols; ++f) {
        double diff = q[f] - p[f];
        d2 += diff * diff;
      }
      dist[static_cast<size_t>(r)] = {d2, r};
    }
    // Full sort on (distance, row index): equidistant neighbours resolve to
    // the earlier row.
    std::sort(dist.begin(), dist.end());

    std::fill(votes.begin(), votes.end(), 0);
    for (int64_t j = 0; j < k; ++j) {
      votes[static_cast<size_t>(train.y[static_cast<size_t>(dist[static_cast<size_t>(j)].second)])] += 1;
    }
    int32_t best = 0;
    int64_t best_votes = -1;
    for (int32_t c = 0; c < train.classes; ++c) {
      if (votes[static_cast<size_t>(c)] > best_votes) {
        best_votes = votes[static_cast<size_t>(c)];
        best = c;
      }
    }
    preds[static_cast<size_t>(t)] = best;
  }
  return preds;
}

std::vector<int32_t> naive_bayes_predict(const LearnerSpec& spec, const Dataset& train,
                                         const Dataset& test, const FeatureStats& global) {
  size_t cols = static_cast<size_t>(train.cols);
  std::vector<int32_t> classes = present_classes(train);

  struct ClassModel {
    int32_t label;
    double log_prior;
    std::vector<double> mean, variance;
  };
  std::vector<ClassModel> models;
  std::vector<double> column;
  for (int32_t c : classes) {
    ClassModel m;
    m.label = c;
    int64_t count = 0;
    for (int32_t label : train.y) count += label == c ? 1 : 0;
    m.log_prior = std::log(static_cast<double>(count) / static_cast<double>(train.rows));
    m.mean.resize(cols);
    m.variance.resize(cols);
    for (size_t f = 0; f < cols; ++f) {
      column.clear();
      for (int64_t r = 0; r < train.rows; ++r) {
        if (train.y[static_cast<size_t>(r)] == c) {
          column.push_back(train.x[static_cast<size_t>(r) * cols + f]);
        }
      }
      m.mean[f] = mean_of(column);
      double v = population_variance(column);
      if (v <= 0.0) v = spec.var_smoothing * (global.variance[f] + 1.0);
      m.variance[f] = v;
    }
    models.push_back(std::move(m));
  }

  constexpr double kLog2Pi = 1.8378770664093454835606594728112;
  std::vector<int32_t> preds(static_cast<size_t>(test.rows));
  for (int64_t t = 0; t < test.rows; ++t) {
    auto q = test.row(t);
    int32_t best = models[0].label;
    double best_score = -1.0 / 0.0;
    for (const ClassModel& m : models) {
      double score = m.log_prior;
      for (size_t f = 0; f < cols; ++f) {
        double d = q[f] - m.mean[f];
        score -= 0.5 * (kLog2Pi + std::log(m.variance[f]) + d * d / m.variance[f]);
      }
      if (score > best_score) {
        best_score = score;
        best = m.label;
      }
    }
    preds[static_cast<size_t>(t)] = best;
  }
  return preds;
}

double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  double e = std::exp(t);
  return e / (1.0 + e);
}

std::vector<int32_t> logreg_predict(const LearnerSpec& spec, const Dataset& train,
                                    const Dataset& test, const FeatureStats& global) {
  size_t cols = static_cast<size_t>(train.cols);
  size_t rows = static_cast<size_t>(train.rows);
  FeatureStats own = feature_stats(train);

  // Standardize with subset moments, falling back to the reference moments
  // for constant features (one-point subsets hit this for every feature).
  std::vector<double> shift(cols), scale(cols);
  for (size_t f = 0; f < cols; ++f) {
    double sd = std::sqrt(own.variance[f]);
    if (sd > 0.0) {
      shift[f] = own.mean[f];
      scale[f] = sd;
    } else {
      double gsd = std::sqrt(global.variance[f]);
      shift[f] = global.mean[f];
      scale[f] = gsd > 0.0 ? gsd : 1.0;
    }
  }
  auto standardized = [&](const Dataset& d) {
    std::vector<double> z(d.x.size());
    for (int64_t r = 0; r < d.rows; ++r) {
      for (size_t f = 0; f < cols; ++f) {
        size_t at = static_cast<size_t>(r) * cols + f;
        z[at] = (d.x[at] - shift[f]) / scale[f];
      }
    }
    return z;
  };
  std::vector<double> ztrain = standardized(train);
  std::vector<double> ztest = standardized(test);

  std::vector<int32_t> classes = present_classes(train);
  if (classes.size() == 1) {
    return std::vector<int32_t>(static_cast<size_t>(test.rows), classes[0]);
  }

  // One-vs-rest, full-batch gradient descent from zero weights.
  std::vector<std::vector<double>> weights(classes.size(), std::vector<double>(cols + 1, 0.0));
  for (size_t ci = 0; ci < classes.size(); ++ci) {
    std::vector<double>& w = weights[ci];
    std::vector<double> grad(cols + 1);
    for (int32_t it = 0; it < spec.iterations; ++it) {
      std::fill(grad.begin(), grad.end(), 0.0);
      for (size_t r = 0; r < rows; ++r) {
        const double* z = ztrain.data() + r * cols;
        double t = w[cols];
        for (size_t f = 0; f < cols; ++f) t += w[f] * z[f];
        double target = train.y[r] == classes[ci] ? 1.0 : 0.0;
        double resid = sigmoid(t) - target;
        for (size_t f = 0; f < cols; ++f) grad[f] += resid * z[f];
        grad[cols] += resid;
      }
      double inv = 1.0 / static_cast<double>(rows);
      for (size_t f = 0; f <= cols; ++f) w[f] -= spec.step * grad[f] * inv;
    }
  }

  std::vector<int32_t> preds(static_cast<size_t>(test.rows));
  for (int64_t t = 0; t < test.rows; ++t) {
    const double* z = ztest.data() + static_cast<size_t>(t) * cols;
    int32_t best = classes[0];
    double best_score = -1.0 / 0.0;
    for (size_t ci = 0; ci < classes.size(); ++ci) {
      const std::vector<double>& w = weights[ci];
      double score = w[cols];
      for (size_t f = 0; f < cols; ++f) score += w[f] * z[f];
      if (score > best_score) {
        best_score = score;
        best = classes[ci];
      }
    }
    preds[static_cast<size_t>(t)] = best;
  }
  return preds;
}

}  // namespace

std::vector<int32_t> train_predict(const LearnerSpec& spec, const Dataset& train,
                                   const Dataset& test, const FeatureStats* global) {
  spec.validate();
  train.validate();
  test.validate();
  require(train.cols == test.cols, ErrorCode::InvalidArgument,
          "train and test feature widths differ");
  FeatureStats fallback;
  if (global == nullptr) {
    fallback = feature_stats(train);
    global = &fallback;
  }
  switch (spec.kind) {
    case LearnerSpec::Kind::Knn:
      return knn_predict(spec, train, test);
    case LearnerSpec::Kind::NaiveBayes:
      return naive_bayes_predict(spec, train, test, *global);
    case LearnerSpec::Kind::Logreg:
      return logreg_predict(spec, train, test, *global);
  }
  fail(ErrorCode::InvalidArgument, "unknown learner kind");
}

Game accuracy_utility(const TrainTestSplit& split, const LearnerSpec& spec) {
  spec.validate();
  split.train.validate();
  split.test.validate();
  require(split.train.cols == split.test.cols, ErrorCode::InvalidArgument,
          "train and test feature widths differ");
  require(split.train.classes == split.test.classes, ErrorCode::InvalidArgument,
          "train and test class counts differ");

  struct Payload {
    Dataset train, test;
    LearnerSpec spec;
    FeatureStats global;
  };
  auto payload = std::make_shared<const Payload>(
      Payload{split.train, split.test, spec, feature_stats(split.train)});

  double empty_utility = 1.0 / static_cast<double>(split.train.classes);
  int32_t n = static_cast<int32_t>(split.train.rows);
  return Game(
      n, UtilityRange{0.0, 1.0},
      [payload, empty_utility](const Coalition& s) {
        if (s.empty()) return empty_utility;
        Dataset subset = payload->train.take(s.members());
        std::vector<int32_t> preds =
            train_predict(payload->spec, subset, payload->test, &payload->global);
        int64_t hits = 0;
        for (size_t t = 0; t < preds.size(); ++t) {
          hits += preds[t] == payload->test.y[t] ? 1 : 0;
        }
        return static_cast<double>(hits) / static_cast<double>(payload->test.rows);
      },
      payload->spec.label() + "-accuracy(n=" + std::to_string(n) + ")");
}

}  // namespace shapval
