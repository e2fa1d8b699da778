#pragma once

#include <nlohmann/json.hpp>

#include "game.hpp"

namespace shapval {

// Executes one command described by a config document and returns the result
// document. Commands: value, exact, sweep, removal, bound, check. When
// write_files is true, also writes the configured report and plot outputs.
// The returned document echoes a fully resolved config; re-running that echo
// reproduces the result bit for bit (timing aside) at any worker count.
nlohmann::json run_command(const nlohmann::json& config, bool write_files = true);

// Synthetic game from a JSON spec such as {"kind":"glove","left":1,"right":2}.
Game game_from_json(const nlohmann::json& spec);

}  // namespace shapval
