#include "exact.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "combinatorics.hpp"
#include "error.hpp"
#include "parallel.hpp"
#include "stats.hpp"

namespace shapval {

namespace {

// Above this the utility table alone passes a gigabyte; independent of the
// user-facing cap, which defaults lower.
constexpr int32_t kHardCap = 24;

std::vector<double> utility_table(const Game& g, int workers) {
  int32_t n = g.players();
  size_t size = size_t{1} << n;
  std::vector<double> u(size);
  constexpr size_t kBlock = 8192;
  size_t blocks = (size + kBlock - 1) / kBlock;
  parallel_for(blocks, workers, [&](size_t b) {
    size_t end = std::min(size, (b + 1) * kBlock);
    for (size_t mask = b * kBlock; mask < end; ++mask) {
      u[mask] = g.utility(Coalition::from_mask(mask));
    }
  });
  return u;
}

struct PlayerStats {
  std::vector<double> means;
  std::vector<double> variances;
  std::vector<double> ranges;
  double phi = 0.0;
};

// Two passes over the 2^(n-1) coalitions that exclude the player: the first
// collects stratum means and ranges, the second the centered second moments.
// Compensated sums keep both passes stable over millions of terms.
PlayerStats player_stats(const std::vector<double>& u, int32_t n, int32_t player) {
  uint64_t bit = 1ull << player;
  uint64_t full = ((1ull << n) - 1) & ~bit;

  std::vector<KahanSum> sums(static_cast<size_t>(n));
  std::vector<double> lows(static_cast<size_t>(n), 0.0);
  std::vector<double> highs(static_cast<size_t>(n), 0.0);
  std::vector<bool> seen(static_cast<size_t>(n), false);

  uint64_t sub = full;
  for (;;) {
    size_t k = static_cast<size_t>(std::popcount(sub));
    double marginal = u[sub | bit] - u[sub];
    sums[k].add(marginal);
    if (!seen[k]) {
      lows[k] = highs[k] = marginal;
      seen[k] = true;
    } else {
      if (marginal < lows[k]) lows[k] = marginal;
      if (marginal > highs[k]) highs[k] = marginal;
    }
    if (sub == 0) break;
    sub = (sub - 1) & full;
  }

  PlayerStats out;
  out.means.resize(static_cast<size_t>(n));
  out.variances.resize(static_cast<size_t>(n));
  out.ranges.resize(static_cast<size_t>(n));
  for (int32_t k = 0; k < n; ++k) {
    uint64_t count = binomial_capped(n - 1, k, UINT64_MAX);
    out.means[static_cast<size_t>(k)] = sums[static_cast<size_t>(k)].value() / static_cast<double>(count);
    out.ranges[static_cast<size_t>(k)] = highs[static_cast<size_t>(k)] - lows[static_cast<size_t>(k)];
  }

  std::vector<KahanSum> sq(static_cast<size_t>(n));
  sub = full;
  for (;;) {
    size_t k = static_cast<size_t>(std::popcount(sub));
    double d = (u[sub | bit] - u[sub]) - out.means[k];
    sq[k].add(d * d);
    if (sub == 0) break;
    sub = (sub - 1) & full;
  }
  for (int32_t k = 0; k < n; ++k) {
    uint64_t count = binomial_capped(n - 1, k, UINT64_MAX);
    out.variances[static_cast<size_t>(k)] = sq[static_cast<size_t>(k)].value() / static_cast<double>(count);
  }

  KahanSum phi;
  for (int32_t k = 0; k < n; ++k) phi.add(out.means[static_cast<size_t>(k)]);
  out.phi = phi.value() / static_cast<double>(n);
  return out;
}

void check_cap(const Game& g, int32_t cap) {
  int32_t limit = std::min(cap, kHardCap);
  require(g.players() <= limit, ErrorCode::SizeCap,
          "exact solver limited to " + std::to_string(limit) + " players, game has " +
              std::to_string(g.players()));
}

}  // namespace

ExactShapleyResult exact_shapley(const Game& g, const ExactOptions& opts) {
  check_cap(g, opts.cap);
  int32_t n = g.players();
  std::vector<double> u = utility_table(g, opts.workers);

  ExactShapleyResult result;
  result.phi.resize(static_cast<size_t>(n));
  result.stratum_means.resize(static_cast<size_t>(n));
  result.stratum_variances.resize(static_cast<size_t>(n));
  result.stratum_ranges.resize(static_cast<size_t>(n));

  parallel_for(static_cast<size_t>(n), opts.workers, [&](size_t i) {
    PlayerStats stats = player_stats(u, n, static_cast<int32_t>(i));
    result.phi[i] = stats.phi;
    result.stratum_means[i] = std::move(stats.means);
    result.stratum_variances[i] = std::move(stats.variances);
    result.stratum_ranges[i] = std::move(stats.ranges);
  });
  return result;
}

std::pair<std::vector<double>, std::vector<double>> exact_stratum_stats(
    const Game& g, int32_t player, const ExactOptions& opts) {
  check_cap(g, opts.cap);
  require(player >= 0 && player < g.players(), ErrorCode::InvalidArgument,
          "player index outside the game");
  std::vector<double> u = utility_table(g, opts.workers);
  PlayerStats stats = player_stats(u, g.players(), player);
  return {std::move(stats.means), std::move(stats.variances)};
}

AxiomReport check_axioms(const Game& g, std::span<const double> phi,
                         const AxiomOptions& opts, const Game* additivity_partner) {
  check_cap(g, opts.cap);
  int32_t n = g.players();
  require(static_cast<int32_t>(phi.size()) == n, ErrorCode::InvalidArgument,
          "value vector length does not match player count");

  std::vector<double> u = utility_table(g, opts.workers);
  uint64_t full = (1ull << n) - 1;
  AxiomReport report;

  KahanSum total;
  for (double p : phi) total.add(p);
  report.efficiency.residual = std::abs(total.value() - (u[full] - u[0]));
  report.efficiency.pass = report.efficiency.residual <= opts.tolerance;

  // Players i and j are treated as symmetric when swapping them never moves
  // any utility by more than the match tolerance.
  for (int32_t i = 0; i < n; ++i) {
    for (int32_t j = i + 1; j < n; ++j) {
      uint64_t bi = 1ull << i, bj = 1ull << j;
      uint64_t rest = full & ~bi & ~bj;
      bool symmetric = true;
      uint64_t sub = rest;
      for (;;) {
        if (std::abs(u[sub | bi] - u[sub | bj]) > opts.match_tolerance) {
          symmetric = false;
          break;
        }
        if (sub == 0) break;
        sub = (sub - 1) & rest;
      }
      if (symmetric) {
        report.symmetric_pairs.emplace_back(i, j);
        double d = std::abs(phi[static_cast<size_t>(i)] - phi[static_cast<size_t>(j)]);
        if (d > report.symmetry.residual) report.symmetry.residual = d;
      }
    }
  }
  report.symmetry.pass = report.symmetry.residual <= opts.tolerance;

  for (int32_t i = 0; i < n; ++i) {
    uint64_t bi = 1ull << i;
    uint64_t rest = full & ~bi;
    bool dummy = true;
    uint64_t sub = rest;
    for (;;) {
      if (std::abs(u[sub | bi] - u[sub]) > opts.match_tolerance) {
        dummy = false;
        break;
      }
      if (sub == 0) break;
      sub = (sub - 1) & rest;
    }
    if (dummy) {
      report.dummy_players.push_back(i);
      double d = std::abs(phi[static_cast<size_t>(i)]);
      if (d > report.dummy.residual) report.dummy.residual = d;
    }
  }
  report.dummy.pass = report.dummy.residual <= opts.tolerance;

  if (additivity_partner != nullptr) {
    require(additivity_partner->players() == n, ErrorCode::InvalidArgument,
            "additivity partner has a different player count");
    const Game& a = g;
    const Game& b = *additivity_partner;
    Game sum(
        n,
        UtilityRange{a.range().lo + b.range().lo, a.range().hi + b.range().hi},
        [&a, &b](const Coalition& s) { return a.utility(s) + b.utility(s); },
        "sum");
    ExactOptions exact_opts{opts.cap, opts.workers};
    ExactShapleyResult va = exact_shapley(a, exact_opts);
    ExactShapleyResult vb = exact_shapley(b, exact_opts);
    ExactShapleyResult vs = exact_shapley(sum, exact_opts);
    AxiomCheck add;
    for (int32_t i = 0; i < n; ++i) {
      size_t idx = static_cast<size_t>(i);
      double d = std::abs(vs.phi[idx] - va.phi[idx] - vb.phi[idx]);
      if (d > add.residual) add.residual = d;
    }
    add.pass = add.residual <= opts.tolerance;
    report.additivity = add;
  }

  return report;
}

}  // namespace shapval
