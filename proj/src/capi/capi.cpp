#include "shapval/shapval.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include <nlohmann/json.hpp>

#include "core/allocation.hpp"
#include "core/bounds.hpp"
#include "core/error.hpp"
#include "core/estimators.hpp"
#include "core/exact.hpp"
#include "core/game.hpp"
#include "core/runner.hpp"

struct shapval_game {
  shapval::Game game;
};

namespace {

thread_local std::string t_last_error;

shapval_status to_status(shapval::ErrorCode code) {
  switch (code) {
    case shapval::ErrorCode::InvalidArgument:
      return SHAPVAL_ERROR_INVALID_ARGUMENT;
    case shapval::ErrorCode::Data:
      return SHAPVAL_ERROR_DATA;
    case shapval::ErrorCode::SizeCap:
      return SHAPVAL_ERROR_SIZE_CAP;
    case shapval::ErrorCode::Internal:
      return SHAPVAL_ERROR_INTERNAL;
  }
  return SHAPVAL_ERROR_INTERNAL;
}

template <typename F>
shapval_status guarded(F&& f) {
  try {
    f();
    t_last_error.clear();
    return SHAPVAL_OK;
  } catch (const shapval::Error& e) {
    t_last_error = e.what();
    return to_status(e.code());
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return SHAPVAL_ERROR_INTERNAL;
  } catch (...) {
    t_last_error = "unknown failure";
    return SHAPVAL_ERROR_INTERNAL;
  }
}

void check_arg(bool ok, const char* what) {
  shapval::require(ok, shapval::ErrorCode::InvalidArgument, what);
}

shapval::FFamily parse_family(const char* family, double a) {
  check_arg(family != nullptr, "family is null");
  std::string name = family;
  if (name == "constant") return shapval::FFamily::constant();
  if (name == "harmonic") return shapval::FFamily::harmonic();
  if (name == "power") return shapval::FFamily::power(a);
  shapval::fail(shapval::ErrorCode::InvalidArgument,
                "unknown weighting family '" + name + "'");
}

char* copy_out(const std::string& text) {
  char* buffer = static_cast<char*>(std::malloc(text.size() + 1));
  shapval::require(buffer != nullptr, shapval::ErrorCode::Internal, "out of memory");
  std::memcpy(buffer, text.c_str(), text.size() + 1);
  return buffer;
}

}  // namespace

extern "C" {

const char* shapval_version(void) { return "0.1.0"; }

const char* shapval_status_name(shapval_status status) {
  switch (status) {
    case SHAPVAL_OK:
      return "ok";
    case SHAPVAL_ERROR_INVALID_ARGUMENT:
      return "invalid-argument";
    case SHAPVAL_ERROR_DATA:
      return "data";
    case SHAPVAL_ERROR_SIZE_CAP:
      return "size-cap";
    case SHAPVAL_ERROR_INTERNAL:
      return "internal";
  }
  return "unknown";
}

const char* shapval_last_error(void) { return t_last_error.c_str(); }

void shapval_free(void* ptr) { std::free(ptr); }

shapval_status shapval_game_create(const char* spec_json, shapval_game** out_game) {
  return guarded([&] {
    check_arg(spec_json != nullptr, "spec_json is null");
    check_arg(out_game != nullptr, "out_game is null");
    nlohmann::json spec = nlohmann::json::parse(spec_json, nullptr, false);
    check_arg(!spec.is_discarded(), "spec_json is not valid JSON");
    *out_game = new shapval_game{shapval::game_from_json(spec)};
  });
}

void shapval_game_destroy(shapval_game* game) { delete game; }

shapval_status shapval_game_players(const shapval_game* game, int32_t* out_players) {
  return guarded([&] {
    check_arg(game != nullptr, "game is null");
    check_arg(out_players != nullptr, "out_players is null");
    *out_players = game->game.players();
  });
}

shapval_status shapval_game_utility(const shapval_game* game, const int32_t* members,
                                    size_t count, double* out_utility) {
  return guarded([&] {
    check_arg(game != nullptr, "game is null");
    check_arg(members != nullptr || count == 0, "members is null");
    check_arg(out_utility != nullptr, "out_utility is null");
    std::vector<int32_t> list(members, members + count);
    *out_utility = game->game.utility(shapval::Coalition(std::move(list)));
  });
}

shapval_status shapval_exact_shapley(const shapval_game* game, int32_t cap, int workers,
                                     double* out_phi) {
  return guarded([&] {
    check_arg(game != nullptr, "game is null");
    check_arg(out_phi != nullptr, "out_phi is null");
    shapval::ExactShapleyResult result =
        shapval::exact_shapley(game->game, shapval::ExactOptions{cap, workers});
    std::memcpy(out_phi, result.phi.data(), result.phi.size() * sizeof(double));
  });
}

shapval_status shapval_permutation_shapley(const shapval_game* game, int64_t permutations,
                                           uint64_t seed, int workers, double* out_phi) {
  return guarded([&] {
    check_arg(game != nullptr, "game is null");
    check_arg(out_phi != nullptr, "out_phi is null");
    shapval::EstimatorOptions opts;
    opts.workers = workers;
    shapval::ShapleyEstimate est =
        shapval::permutation_shapley(game->game, permutations, seed, opts);
    std::memcpy(out_phi, est.phi_hat.data(), est.phi_hat.size() * sizeof(double));
  });
}

shapval_status shapval_stratified_shapley(const shapval_game* game, const char* family,
                                          double a, int64_t budget, uint64_t seed,
                                          int workers, double* out_phi) {
  return guarded([&] {
    check_arg(game != nullptr, "game is null");
    check_arg(out_phi != nullptr, "out_phi is null");
    shapval::EstimatorOptions opts;
    opts.workers = workers;
    shapval::FSource source{parse_family(family, a), budget};
    shapval::ShapleyEstimate est =
        shapval::stratified_shapley(game->game, source, seed, opts);
    std::memcpy(out_phi, est.phi_hat.data(), est.phi_hat.size() * sizeof(double));
  });
}

shapval_status shapval_permutation_bound(double epsilon, double delta, double range,
                                         int64_t* out_m) {
  return guarded([&] {
    check_arg(out_m != nullptr, "out_m is null");
    shapval::ApproximationSpec spec;
    spec.epsilon = epsilon;
    spec.delta = delta;
    spec.range = range;
    *out_m = shapval::permutation_sample_bound(spec);
  });
}

shapval_status shapval_stratified_bound(double epsilon, double delta, int32_t players,
                                        const char* family, double a, int64_t* out_m) {
  return guarded([&] {
    check_arg(out_m != nullptr, "out_m is null");
    shapval::ApproximationSpec spec;
    spec.epsilon = epsilon;
    spec.delta = delta;
    spec.players = players;
    *out_m = shapval::stratified_sample_bound(spec, parse_family(family, a));
  });
}

shapval_status shapval_stratified_bound_harmonic(double epsilon, double delta,
                                                 int32_t players, int64_t* out_m) {
  return guarded([&] {
    check_arg(out_m != nullptr, "out_m is null");
    shapval::ApproximationSpec spec;
    spec.epsilon = epsilon;
    spec.delta = delta;
    spec.players = players;
    *out_m = shapval::stratified_sample_bound_harmonic(spec);
  });
}

shapval_status shapval_run(const char* config_json, char** out_report_json) {
  return guarded([&] {
    check_arg(config_json != nullptr, "config_json is null");
    check_arg(out_report_json != nullptr, "out_report_json is null");
    nlohmann::json config = nlohmann::json::parse(config_json, nullptr, false);
    check_arg(!config.is_discarded(), "config_json is not valid JSON");
    nlohmann::json report = shapval::run_command(config);
    *out_report_json = copy_out(report.dump(2));
  });
}

}  // extern "C"
