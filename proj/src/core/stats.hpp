#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace shapval {

// Compensated (Kahan) accumulator. Sums inside the exact solver and the
// estimators run over up to millions of terms, so plain accumulation would
// let the order-sensitive error grow past the equality tolerances used in
// the invariant checks.
struct KahanSum {
  double sum = 0.0;
  double c = 0.0;

  void add(double x) {
    double y = x - c;
    double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
};

inline double mean_of(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  KahanSum s;
  for (double x : xs) s.add(x);
  return s.value() / static_cast<double>(xs.size());
}

// Two-pass sample variance with the R-1 divisor; 0 when fewer than 2 values.
inline double sample_variance(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  double m = mean_of(xs);
  KahanSum s;
  for (double x : xs) s.add((x - m) * (x - m));
  return s.value() / static_cast<double>(xs.size() - 1);
}

// Two-pass population variance (divisor N).
inline double population_variance(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  double m = mean_of(xs);
  KahanSum s;
  for (double x : xs) s.add((x - m) * (x - m));
  return s.value() / static_cast<double>(xs.size());
}

}  // namespace shapval
