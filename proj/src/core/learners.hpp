#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dataset.hpp"
#include "game.hpp"

namespace shapval {

struct LearnerSpec {
  enum class Kind { Knn, NaiveBayes, Logreg };

  Kind kind = Kind::Knn;
  int32_t k = 5;                 // knn neighbours, clamped to the subset size
  double var_smoothing = 1e-9;   // naive-bayes floor factor for zero variances
  int32_t iterations = 200;      // logreg gradient steps
  double step = 0.1;             // logreg learning rate

  void validate() const;
  std::string label() const;

  static LearnerSpec knn(int32_t k = 5);
  static LearnerSpec naive_bayes(double var_smoothing = 1e-9);
  static LearnerSpec logreg(int32_t iterations = 200, double step = 0.1);
};

// Per-feature moments of a reference dataset; the learners fall back to
// these when a training subset is too small or degenerate to supply its own.
struct FeatureStats {
  std::vector<double> mean;
  std::vector<double> variance;  // population
};

FeatureStats feature_stats(const Dataset& data);

// Fits on the training subset and labels every test row. Deterministic: all
// ties break toward the lower class index. `global` supplies fallback
// moments; the subset's own are used when omitted.
std::vector<int32_t> train_predict(const LearnerSpec& spec, const Dataset& train,
                                   const Dataset& test, const FeatureStats* global = nullptr);

// Cooperative game over training points: U(S) is the test accuracy of the
// learner fitted on subset S, and U(empty) = 1/classes.
Game accuracy_utility(const TrainTestSplit& split, const LearnerSpec& spec);

}  // namespace shapval
