#pragma once

// The five subcommands.  Each takes the fully resolved parameter object
// (defaults -> preset -> config file -> flags, keys named after the long
// flags), writes its output file plus the accompanying run manifest, and
// throws ConfigError / IoError / std::invalid_argument on failure.

#include "support.hpp"

namespace tiemzi_cli {

void run_fringes(const json& params);
void run_ellipse(const json& params);
void run_experiment(const json& params);
void run_game(const json& params);
void run_audit(const json& params);

}  // namespace tiemzi_cli
