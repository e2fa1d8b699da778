#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace shapval {

// Stratum-size weighting family f(k) used to split a sample budget across
// coalition sizes k = 0..n-1. Non-increasing families put more samples on
// small coalitions, where marginal contributions vary most.
struct FFamily {
  enum class Kind { Constant, Harmonic, Power };

  Kind kind = Kind::Harmonic;
  double a = -1.0;  // exponent, power kind only

  double operator()(int32_t k) const;
  bool non_increasing() const;
  std::string label() const;

  static FFamily constant() { return {Kind::Constant, 0.0}; }
  static FFamily harmonic() { return {Kind::Harmonic, 0.0}; }
  static FFamily power(double a) { return {Kind::Power, a}; }
};

// Integer per-stratum sample counts for one player.
struct AllocationPlan {
  std::vector<int64_t> counts;  // one per stratum, each >= 1
  int64_t budget = 0;           // requested total
  int64_t actual_total = 0;     // sum of counts; above budget when the
                                // one-per-stratum floor forces an overrun
  bool overrun = false;
};

// Fractional targets proportional to the supplied per-stratum deviations;
// uniform when every deviation is zero.
std::vector<double> allocate_neyman(std::span<const double> sigma, int64_t budget);

// Fractional targets proportional to f(k) over k = 0..n-1.
std::vector<double> allocate_f(int32_t n, int64_t budget, const FFamily& f);

// Rounds fractional targets to integer counts: floor with a minimum of one
// per stratum, then leftover budget to the largest fractional remainders
// (ties to the smaller stratum). The minimum can push the total past the
// budget; the plan reports that as an overrun.
AllocationPlan integerize_allocation(std::span<const double> targets, int64_t budget);

}  // namespace shapval
