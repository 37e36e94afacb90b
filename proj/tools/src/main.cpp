// Command-line front end: CSV fringe/ellipse curves, seeded shot-noise
// experiment and guessing-game summaries, and inequality audit reports.
//
// Parameter precedence, lowest to highest: built-in defaults, --preset,
// --config file (plain JSON object or a previously written run manifest),
// command-line flags.  Every output file is accompanied by
// <out>.manifest.json carrying the fully resolved parameters; passing that
// manifest back through --config reproduces the output byte for byte.
// No environment variables are consumed.

#include <cmath>
#include <cstdio>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"
#include "support.hpp"

#ifndef TIEMZI_VERSION
#define TIEMZI_VERSION "0.0.0"
#endif

namespace {

constexpr double kPi = 3.14159265358979323846;

using tiemzi_cli::json;

// Ties a CLI11 subcommand to the parameter-resolution scheme: records the
// default for every long flag and remembers which flags were actually given
// so they can be overlaid last.
class Binder {
 public:
  explicit Binder(CLI::App* cmd) : cmd_(cmd) {
    cmd_->add_option("--config", config_path_,
                     "JSON config file: {flag-name: value, ...} or a run "
                     "manifest written by a previous invocation");
  }

  template <typename T>
  CLI::Option* bind(const std::string& flag, T& var, const char* help) {
    const std::string key = flag.substr(2);
    defaults_[key] = var;
    CLI::Option* opt = cmd_->add_option(flag, var, help);
    appliers_.push_back([opt, key, &var](json& params) {
      if (opt->count() > 0) params[key] = var;
    });
    return opt;
  }

  // Resolved parameter set for this invocation.  `preset` (possibly empty)
  // is an extra overlay applied between the defaults and the config file.
  json resolve(const std::string& command, const json& preset) const {
    json params = defaults_;
    if (!preset.empty()) {
      tiemzi_cli::overlay_parameters(params, preset, "preset");
    }
    if (!config_path_.empty()) {
      const json file = tiemzi_cli::load_json_file(config_path_);
      tiemzi_cli::overlay_parameters(
          params,
          tiemzi_cli::config_parameters(file, command, config_path_),
          "parameters");
    }
    for (const auto& apply : appliers_) apply(params);
    return params;
  }

  const std::string& config_path() const { return config_path_; }

 private:
  CLI::App* cmd_;
  json defaults_ = json::object();
  std::vector<std::function<void(json&)>> appliers_;
  std::string config_path_;
};

// Option storage must outlive parsing; one struct per subcommand.
struct FringesVars {
  double kappa = 3.0;
  double p1 = 0.5;
  double grid_min = 0.0;
  double grid_max = 2.0 * kPi;
  long long points = 1001;
  std::string out = "fringes.csv";
};

struct EllipseVars {
  std::vector<std::string> kappa_list{"1", "3", "inf"};
  long long points = 201;
  std::string out = "ellipse.csv";
};

struct ExperimentVars {
  std::string preset;
  std::string mode = "tie";
  double kappa = 3.0;
  double p1 = 0.5;
  double alpha = 0.0;
  double kmax_delta_l = 0.01;
  long long true_sign = 1;
  double k_l0 = kPi / 2.0;
  long long n_in = 90000;
  long long repetitions = 500;
  std::uint64_t seed = 1;
  long long threads = 0;
  std::string out = "experiment.json";
};

struct GameVars {
  double kappa = 3.0;
  double p1 = 0.5;
  double kmax_delta_l = 0.01;
  double k_l0 = kPi / 2.0;
  long long n_in = 90000;
  long long trials = 100;
  std::vector<double> mix{0.25, 0.25, 0.25, 0.25};
  std::uint64_t seed = 1;
  long long threads = 0;
  std::string out = "game.json";
};

struct AuditVars {
  long long trials = 10000;
  std::uint64_t seed = 1;
  double kappa = 3.0;
  double kdl_max = 0.1;
  std::string out = "audit.json";
};

json experiment_preset(const std::string& name) {
  if (name.empty()) return json::object();
  json preset;
  preset["preset"] = name;
  if (name == "tie") {
    preset["mode"] = "tie";
    preset["kappa"] = 3.0;
    preset["p1"] = 0.5;
    preset["kmax-delta-l"] = 0.01;
    preset["k-l0"] = kPi / 2.0;
    preset["n-in"] = 90000LL;
    preset["repetitions"] = 500LL;
    return preset;
  }
  if (name == "standard") {
    preset["mode"] = "standard";
    preset["alpha"] = std::acos(0.9);
    preset["kmax-delta-l"] = 0.01;
    preset["k-l0"] = kPi / 2.0;
    preset["n-in"] = 52632LL;
    preset["repetitions"] = 200LL;
    return preset;
  }
  throw tiemzi_cli::ConfigError("config error at parameters.preset: expected "
                                "'tie' or 'standard', got '" + name + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Mach-Zehnder interferometer simulator for bichromatic inputs whose "
      "translational motion is entangled with an internal two-level degree "
      "of freedom: fringe and sensitivity-bound curves, seeded shot-noise "
      "experiments, and complementarity-inequality audits."};
  app.set_version_flag("--version", TIEMZI_VERSION);
  app.require_subcommand(1);

  FringesVars fr;
  CLI::App* fringes = app.add_subcommand(
      "fringes",
      "Port probabilities, distinguishability, sensitivity and purity over a "
      "path-difference grid (CSV)");
  Binder fringes_binder(fringes);
  fringes_binder.bind("--kappa", fr.kappa, "wavenumber ratio k2/k1, >= 1");
  fringes_binder.bind("--p1", fr.p1, "population of the slow component");
  fringes_binder.bind("--grid-min", fr.grid_min,
                      "first grid point, in units of k1 L_AB");
  fringes_binder.bind("--grid-max", fr.grid_max,
                      "last grid point, in units of k1 L_AB");
  fringes_binder.bind("--points", fr.points, "number of grid points, >= 2");
  fringes_binder.bind("--out", fr.out, "output CSV path");
  fringes->callback([&] {
    tiemzi_cli::run_fringes(fringes_binder.resolve("fringes", json::object()));
  });

  EllipseVars el;
  CLI::App* ellipse = app.add_subcommand(
      "ellipse",
      "Sensitivity-distinguishability family and its bound over the input "
      "populations at the maximum-distinguishability operating point (CSV)");
  Binder ellipse_binder(ellipse);
  ellipse_binder
      .bind("--kappa-list", el.kappa_list,
            "wavenumber ratios to sweep; numbers >= 1 or 'inf'")
      ->delimiter(',');
  ellipse_binder.bind("--points", el.points,
                      "population grid points per ratio, >= 2");
  ellipse_binder.bind("--out", el.out, "output CSV path");
  ellipse->callback([&] {
    tiemzi_cli::run_ellipse(ellipse_binder.resolve("ellipse", json::object()));
  });

  ExperimentVars ex;
  CLI::App* experiment = app.add_subcommand(
      "experiment",
      "Seeded repetitions of the phase-shift experiment with per-atom "
      "which-way records (JSON)");
  Binder experiment_binder(experiment);
  CLI::Option* preset_opt =
      experiment_binder
          .bind("--preset", ex.preset,
                "parameter preset applied before config/flags: 'tie' "
                "(entangled headline run) or 'standard' (detector run, "
                "D = 0.9)")
          ->check(CLI::IsMember({"tie", "standard"}));
  experiment_binder.bind("--mode", ex.mode, "'tie' or 'standard'");
  experiment_binder.bind("--kappa", ex.kappa,
                         "wavenumber ratio k2/k1 (tie mode)");
  experiment_binder.bind("--p1", ex.p1,
                         "population of the slow component (tie mode)");
  experiment_binder.bind("--alpha", ex.alpha,
                         "detector angle, D = |cos alpha| (standard mode)");
  experiment_binder.bind("--kmax-delta-l", ex.kmax_delta_l,
                         "dimensionless shift magnitude k_max |delta_l|");
  experiment_binder.bind("--true-sign", ex.true_sign,
                         "true sign of the applied shift, +1 or -1");
  experiment_binder.bind("--k-l0", ex.k_l0, "nominal operating point k1 l0");
  experiment_binder.bind("--n-in", ex.n_in, "particles per repetition");
  experiment_binder.bind("--repetitions", ex.repetitions,
                         "number of repetitions");
  experiment_binder.bind("--seed", ex.seed, "64-bit generator seed");
  experiment_binder.bind("--threads", ex.threads,
                         "worker threads; 0 = hardware concurrency");
  experiment_binder.bind("--out", ex.out, "output JSON path");
  experiment->callback([&] {
    // The preset may come from the flag or from the config file; the flag
    // wins, and either way it is applied before the config overlay.
    std::string preset_name = preset_opt->count() > 0 ? ex.preset : "";
    if (preset_name.empty() && !experiment_binder.config_path().empty()) {
      const json file =
          tiemzi_cli::load_json_file(experiment_binder.config_path());
      const json params = tiemzi_cli::config_parameters(
          file, "experiment", experiment_binder.config_path());
      if (params.contains("preset") && params.at("preset").is_string()) {
        preset_name = params.at("preset").get<std::string>();
      }
    }
    tiemzi_cli::run_experiment(
        experiment_binder.resolve("experiment", experiment_preset(preset_name)));
  });

  GameVars gm;
  CLI::App* game = app.add_subcommand(
      "game",
      "Seeded guessing game mixing phase-shift trials with blocked-path "
      "trials (JSON)");
  Binder game_binder(game);
  game_binder.bind("--kappa", gm.kappa, "wavenumber ratio k2/k1");
  game_binder.bind("--p1", gm.p1, "population of the slow component");
  game_binder.bind("--kmax-delta-l", gm.kmax_delta_l,
                   "dimensionless shift magnitude k_max |delta_l|");
  game_binder.bind("--k-l0", gm.k_l0, "nominal operating point k1 l0");
  game_binder.bind("--n-in", gm.n_in, "particles per shift trial");
  game_binder.bind("--trials", gm.trials, "number of game trials");
  game_binder
      .bind("--mix", gm.mix,
            "chooser mixing weights: shift+ shift- blockA blockB (sum 1)")
      ->expected(4);
  game_binder.bind("--seed", gm.seed, "64-bit generator seed");
  game_binder.bind("--threads", gm.threads,
                   "worker threads; 0 = hardware concurrency");
  game_binder.bind("--out", gm.out, "output JSON path");
  game->callback([&] {
    tiemzi_cli::run_game(game_binder.resolve("game", json::object()));
  });

  AuditVars au;
  CLI::App* audit = app.add_subcommand(
      "audit",
      "Randomized sweep of the duality and sensitivity bounds over "
      "detector-based and entangled inputs (JSON)");
  Binder audit_binder(audit);
  audit_binder.bind("--trials", au.trials, "draws per input class, >= 1");
  audit_binder.bind("--seed", au.seed, "64-bit generator seed");
  audit_binder.bind("--kappa", au.kappa,
                    "wavenumber ratio for the ellipse sweep (the duality "
                    "rows always use the ratio-3 operating point)");
  audit_binder.bind("--kdl-max", au.kdl_max,
                    "largest drawn shift k1 |delta_l|, in (0, 0.3]");
  audit_binder.bind("--out", au.out, "output JSON path");
  audit->callback([&] {
    tiemzi_cli::run_audit(audit_binder.resolve("audit", json::object()));
  });

  try {
    app.parse(argc, argv);
    return 0;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the parse error
    return 2;
  } catch (const tiemzi_cli::ConfigError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  } catch (const tiemzi_cli::IoError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 3;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
