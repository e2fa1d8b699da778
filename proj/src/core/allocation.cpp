#include "allocation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "error.hpp"
#include "stats.hpp"

namespace shapval {

double FFamily::operator()(int32_t k) const {
  require(k >= 0, ErrorCode::InvalidArgument, "stratum index is negative");
  switch (kind) {
    case Kind::Constant:
      return 1.0;
    case Kind::Harmonic:
      return 1.0 / static_cast<double>(k + 1);
    case Kind::Power:
      require(std::isfinite(a), ErrorCode::InvalidArgument, "power exponent must be finite");
      return std::pow(static_cast<double>(k + 1), a);
  }
  fail(ErrorCode::InvalidArgument, "unknown weighting family");
}

bool FFamily::non_increasing() const {
  switch (kind) {
    case Kind::Constant:
    case Kind::Harmonic:
      return true;
    case Kind::Power:
      return a <= 0.0;
  }
  return false;
}

std::string FFamily::label() const {
  switch (kind) {
    case Kind::Constant:
      return "constant";
    case Kind::Harmonic:
      return "harmonic";
    case Kind::Power: {
      char buf[48];
      std::snprintf(buf, sizeof(buf), "power(%g)", a);
      return buf;
    }
  }
  return "unknown";
}

std::vector<double> allocate_neyman(std::span<const double> sigma, int64_t budget) {
  require(!sigma.empty(), ErrorCode::InvalidArgument, "deviation vector is empty");
  require(budget >= 1, ErrorCode::InvalidArgument, "budget must be at least 1");
  KahanSum total;
  for (double s : sigma) {
    require(std::isfinite(s) && s >= 0.0, ErrorCode::InvalidArgument,
            "deviations must be finite and non-negative");
    total.add(s);
  }
  std::vector<double> targets(sigma.size());
  double m = static_cast<double>(budget);
  if (total.value() <= 0.0) {
    // Nothing to weight by; spread the budget evenly.
    double even = m / static_cast<double>(sigma.size());
    std::fill(targets.begin(), targets.end(), even);
    return targets;
  }
  for (size_t k = 0; k < sigma.size(); ++k) targets[k] = m * sigma[k] / total.value();
  return targets;
}

std::vector<double> allocate_f(int32_t n, int64_t budget, const FFamily& f) {
  require(n >= 1, ErrorCode::InvalidArgument, "player count must be at least 1");
  require(budget >= 1, ErrorCode::InvalidArgument, "budget must be at least 1");
  std::vector<double> weights(static_cast<size_t>(n));
  KahanSum total;
  for (int32_t k = 0; k < n; ++k) {
    double w = f(k);
    require(std::isfinite(w) && w > 0.0, ErrorCode::InvalidArgument,
            "weighting family must be positive on every stratum");
    weights[static_cast<size_t>(k)] = w;
    total.add(w);
  }
  double m = static_cast<double>(budget);
  for (double& w : weights) w = m * w / total.value();
  return weights;
}

AllocationPlan integerize_allocation(std::span<const double> targets, int64_t budget) {
  require(!targets.empty(), ErrorCode::InvalidArgument, "target vector is empty");
  require(budget >= 1, ErrorCode::InvalidArgument, "budget must be at least 1");

  AllocationPlan plan;
  plan.budget = budget;
  plan.counts.resize(targets.size());

  int64_t total = 0;
  std::vector<double> remainders(targets.size());
  for (size_t k = 0; k < targets.size(); ++k) {
    double t = targets[k];
    require(std::isfinite(t) && t >= 0.0, ErrorCode::InvalidArgument,
            "targets must be finite and non-negative");
    double fl = std::floor(t);
    remainders[k] = t - fl;
    plan.counts[k] = std::max<int64_t>(1, static_cast<int64_t>(fl));
    total += plan.counts[k];
  }

  if (total < budget) {
    // Largest remainder first, ties to the smaller stratum. One round covers
    // the usual case; repeat in the same order if budget still remains.
    std::vector<size_t> order(targets.size());
    for (size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      if (remainders[a] != remainders[b]) return remainders[a] > remainders[b];
      return a < b;
    });
    size_t cursor = 0;
    while (total < budget) {
      plan.counts[order[cursor]] += 1;
      total += 1;
      cursor = (cursor + 1) % order.size();
    }
  }

  plan.actual_total = total;
  plan.overrun = total > budget;
  return plan;
}

}  // namespace shapval
