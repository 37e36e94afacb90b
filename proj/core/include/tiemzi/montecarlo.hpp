#pragma once

// Seeded Monte Carlo shot-noise experiments.
//
// Phase experiment: an unknown shift of the path difference by +|delta_l| or
// -|delta_l| is applied; each repetition sends n_in particles through the
// interferometer, records (output port, which-way outcome) per particle, and
// estimates the shift sign from the port imbalance.  Resolving the shift
// against shot noise needs at least  1 / (k_max delta_l S)^2  particles.
//
// Every atom carries its path as a latent variable drawn from the exact joint
// amplitude model: the observable pair (port s, outcome m) is sampled from
// P(s, m) = |<psi~_m|(psi_A + sigma_s psi_B)>/2|^2, and the latent path is
// then drawn from the per-path amplitude weights,
// P(path = A | s, m) = |u_mA|^2 / (|u_mA|^2 + |u_mB|^2) with
// u_mX = <psi~_m|psi_X>.  This keeps the port marginals exactly interfering
// while the conditional path matches the optimal-guess probability (1+D)/2
// when the basis reference lengths equal the true ones.
//
// Determinism: all draws come from the counter-based generator in
// tiemzi/philox.hpp, keyed by (seed, repetition, atom index), so results are
// bit-identical for a given config regardless of the thread count.

#include <cstdint>
#include <limits>
#include <vector>

#include "tiemzi/interferometry.hpp"
#include "tiemzi/states.hpp"

namespace tiemzi {

// Smallest particle number resolving a shift k_max |delta_l| at sensitivity
// S against shot noise: ceil(1 / (k_max delta_l S)^2).  Values within 1e-9
// (relative) of an integer snap to it before the ceiling is taken.
// Requires both arguments positive.
long long required_atoms(double k_max_delta_l, double sensitivity);

// Expected number of wrong path inferences when running at the shot-noise
// minimum particle number.
//
// TIE input at the shot-noise minimum:  (delta_k / k_max)^2 / (16 S^2)
// with delta_k / k_max = (kappa - 1) / kappa.  Independent of |delta_l|.
double expected_wrong_tie(double kappa, double sensitivity);

// Lower bound for any standard (detector-entangled) probe at the shot-noise
// minimum: 1 / (4 (k_max delta_l)^2), reached as D -> 0.
double expected_wrong_standard_floor(double k_max_delta_l);

// Standard probe at distinguishability D with n_in particles: n_in (1-D)/2.
double expected_wrong_standard(double distinguishability, long long n_in);

enum class ExperimentMode { tie, standard };

struct ExperimentConfig {
  ExperimentMode mode = ExperimentMode::tie;
  // TIE mode: input populations (p1, 1-p1) at k1 = 1, k2 = kappa.
  double kappa = 3.0;
  double p1 = 0.5;
  // Standard mode: detector angle, D = |cos alpha|.
  double detector_alpha = 0.0;
  // Dimensionless shift k_max |delta_l| and its unknown true sign.
  double k_max_delta_l = 0.01;
  int true_sign = +1;
  // Nominal operating point k1 l0 (TIE) or k l0 (standard).
  double k_l0 = 1.5707963267948966;
  long long n_in = 90000;
  int repetitions = 500;
  std::uint64_t seed = 1;
  int threads = 0;  // 0 = hardware concurrency
};

// Closed-form description of the per-atom distribution actually sampled.
struct ExperimentModel {
  double plus_a, plus_b, minus_a, minus_b;  // joint P(port, outcome)
  double q_a, q_b;      // P(latent path == outcome label | outcome)
  double p_plus;        // port marginal, plus_a + plus_b
  double wrong_prob;    // per-atom P(outcome label != latent path)
  double distinguishability;  // D at the path difference in force
  double sensitivity_design;  // S at the nominal path difference
  double l_ab_true;     // path difference in force (k1 = 1 units)
  int slope_sign;       // sign of dP_plus/dl_ab at the nominal point
};

// Validates the config and evaluates the sampled distribution without
// running any repetition.  Throws std::invalid_argument on a bad config.
ExperimentModel experiment_model(const ExperimentConfig& cfg);

struct RepetitionCounts {
  long long plus_a = 0, plus_b = 0;    // port +, outcome A / B
  long long minus_a = 0, minus_b = 0;  // port -, outcome A / B
  long long wrong = 0;                 // outcome label != latent path
  int sign_guess = 0;                  // +1 or -1
  bool sign_correct = false;

  long long n_plus() const { return plus_a + plus_b; }
  long long n_minus() const { return minus_a + minus_b; }
  long long outcome_a() const { return plus_a + minus_a; }
  long long outcome_b() const { return plus_b + minus_b; }
};

struct ExperimentSummary {
  ExperimentConfig config;
  ExperimentModel model;
  std::vector<RepetitionCounts> repetitions;
  // Aggregates over repetitions.
  double sign_success_rate = 0.0;
  double wrong_mean = 0.0;
  double wrong_stddev = 0.0;  // sample standard deviation
  double mean_plus_fraction = 0.0;
};

ExperimentSummary run_phase_experiment(const ExperimentConfig& cfg);

// Guessing game: per trial, the choosing party either shifts the path
// difference by +-|delta_l| (the guesser then estimates the sign from n_in
// particles, exactly as in the phase experiment) or blocks one arm (the
// guesser then names the open path from a single which-way measurement).
// Blocked trials still carry a shift, its sign drawn uniformly, so the
// open-path outcome distribution is evaluated at the difference in force.
enum class GameAction { shift_plus, shift_minus, block_a, block_b };

struct GameConfig {
  double kappa = 3.0;
  double p1 = 0.5;
  double k_max_delta_l = 0.01;
  double k_l0 = 1.5707963267948966;
  long long n_in = 90000;  // particles per shift trial
  int trials = 100;
  // Chooser's mixing weights: shift(+), shift(-), block(A), block(B).
  double mix[4] = {0.25, 0.25, 0.25, 0.25};
  std::uint64_t seed = 1;
  int threads = 0;
};

struct GameTrial {
  GameAction action;
  int shift_sign;  // sign of the shift in force (also drawn in block trials)
  int truth;       // shift trials: true sign (+-1); block trials: the open
                   // path actually travelled, 0 = A, 1 = B
  int guess;       // same encoding as truth
  bool correct;
};

struct GameCategoryStats {
  long long trials = 0;
  long long correct = 0;

  // NaN when the category never occurred.
  double rate() const {
    return trials > 0 ? static_cast<double>(correct) / trials
                      : std::numeric_limits<double>::quiet_NaN();
  }
};

struct GameSummary {
  GameConfig config;
  GameCategoryStats per_action[4];  // indexed by GameAction
  GameCategoryStats shift;          // both shift actions combined
  GameCategoryStats block;          // both block actions combined
  std::vector<GameTrial> trials;
};

GameSummary run_game(const GameConfig& cfg);

}  // namespace tiemzi
