#include "tiemzi/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "tiemzi/complementarity.hpp"
#include "tiemzi/philox.hpp"

namespace tiemzi {

namespace {

// Ceiling with a snap: values within 1e-9 (relative) of an integer are taken
// as that integer, so analytically integral expressions like 1/(0.01/3)^2
// do not spill over to the next integer through rounding.
long long snap_ceil(double v) {
  const double nearest = std::round(v);
  if (std::abs(v - nearest) <= 1e-9 * std::max(1.0, std::abs(v))) {
    return static_cast<long long>(nearest);
  }
  return static_cast<long long>(std::ceil(v));
}

void run_indexed(long long count, int threads_requested,
                 const std::function<void(long long)>& body) {
  int threads = threads_requested;
  if (threads <= 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    threads = hw > 0 ? static_cast<int>(hw) : 1;
  }
  threads = static_cast<int>(
      std::min<long long>(threads, std::max<long long>(count, 1)));
  if (threads <= 1) {
    for (long long i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<long long> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const long long i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

// Per-atom sampling tables: cumulative joint distribution over the cells
// (plus_a, plus_b, minus_a, minus_b) and the conditional label-match
// probabilities per outcome.
struct SamplingTables {
  double cum0, cum1, cum2;
  double q_a, q_b;
};

SamplingTables tables_from_model(const ExperimentModel& m) {
  SamplingTables t;
  t.cum0 = m.plus_a;
  t.cum1 = m.plus_a + m.plus_b;
  t.cum2 = m.plus_a + m.plus_b + m.minus_a;
  t.q_a = m.q_a;
  t.q_b = m.q_b;
  return t;
}

// One repetition of n_in atoms using the fixed per-atom stream layout.
RepetitionCounts sample_repetition(const SamplingTables& t, long long n_in,
                                   const CounterRng& rng,
                                   std::uint32_t repetition,
                                   std::uint32_t stream) {
  RepetitionCounts rc;
  for (long long atom = 0; atom < n_in; ++atom) {
    const auto [u_cell, u_path] =
        rng.uniforms(static_cast<std::uint64_t>(atom), repetition, stream);
    int cell;
    if (u_cell < t.cum0) {
      cell = 0;
      ++rc.plus_a;
    } else if (u_cell < t.cum1) {
      cell = 1;
      ++rc.plus_b;
    } else if (u_cell < t.cum2) {
      cell = 2;
      ++rc.minus_a;
    } else {
      cell = 3;
      ++rc.minus_b;
    }
    const double q = (cell == 0 || cell == 2) ? t.q_a : t.q_b;
    if (!(u_path < q)) ++rc.wrong;  // latent path disagrees with the label
  }
  return rc;
}

// Port association for the sign estimate: under a positive fringe slope an
// excess at port + indicates a positive shift; under a negative slope the
// association inverts.  Ties resolve to +.
int guess_sign(long long n_plus, long long n_in, int slope_sign) {
  const long long deviation = 2 * n_plus - n_in;
  if (deviation == 0) return +1;
  const bool excess_plus = deviation > 0;
  const bool positive_slope = slope_sign >= 0;
  return excess_plus == positive_slope ? +1 : -1;
}

int sign_of_slope(double slope) {
  if (slope > 0.0) return +1;
  if (slope < 0.0) return -1;
  return 0;
}

void validate_common(double k_max_delta_l, double k_l0, long long n_in,
                     const char* where) {
  if (!(k_max_delta_l >= 0.0 && k_max_delta_l < 1.5707963267948966)) {
    throw std::invalid_argument(std::string(where) +
                                ": k_max_delta_l must lie in [0, pi/2)");
  }
  if (!std::isfinite(k_l0)) {
    throw std::invalid_argument(std::string(where) + ": k_l0 must be finite");
  }
  if (n_in < 1) {
    throw std::invalid_argument(std::string(where) + ": n_in must be >= 1");
  }
}

}  // namespace

long long required_atoms(double k_max_delta_l, double sensitivity) {
  if (!(k_max_delta_l > 0.0) || !std::isfinite(k_max_delta_l)) {
    throw std::invalid_argument("required_atoms: k_max_delta_l must be > 0");
  }
  if (!(sensitivity > 0.0) || sensitivity > 1.0) {
    throw std::invalid_argument(
        "required_atoms: sensitivity must lie in (0, 1]");
  }
  const double signal = k_max_delta_l * sensitivity;
  return snap_ceil(1.0 / (signal * signal));
}

double expected_wrong_tie(double kappa, double sensitivity) {
  if (!(kappa >= 1.0) || !std::isfinite(kappa)) {
    throw std::invalid_argument("expected_wrong_tie: kappa must be >= 1");
  }
  if (!(sensitivity > 0.0) || sensitivity > 1.0) {
    throw std::invalid_argument(
        "expected_wrong_tie: sensitivity must lie in (0, 1]");
  }
  const double dk_ratio = (kappa - 1.0) / kappa;  // delta_k / k_max
  return dk_ratio * dk_ratio / (16.0 * sensitivity * sensitivity);
}

double expected_wrong_standard_floor(double k_max_delta_l) {
  if (!(k_max_delta_l > 0.0) || !std::isfinite(k_max_delta_l)) {
    throw std::invalid_argument(
        "expected_wrong_standard_floor: k_max_delta_l must be > 0");
  }
  return 1.0 / (4.0 * k_max_delta_l * k_max_delta_l);
}

double expected_wrong_standard(double distinguishability, long long n_in) {
  if (!(distinguishability >= 0.0 && distinguishability <= 1.0)) {
    throw std::invalid_argument(
        "expected_wrong_standard: D must lie in [0, 1]");
  }
  if (n_in < 1) {
    throw std::invalid_argument("expected_wrong_standard: n_in must be >= 1");
  }
  return static_cast<double>(n_in) * 0.5 * (1.0 - distinguishability);
}

ExperimentModel experiment_model(const ExperimentConfig& cfg) {
  validate_common(cfg.k_max_delta_l, cfg.k_l0, cfg.n_in, "experiment_model");
  if (cfg.repetitions < 1) {
    throw std::invalid_argument("experiment_model: repetitions must be >= 1");
  }
  if (cfg.true_sign != +1 && cfg.true_sign != -1) {
    throw std::invalid_argument("experiment_model: true_sign must be +-1");
  }
  if (cfg.threads < 0) {
    throw std::invalid_argument("experiment_model: threads must be >= 0");
  }

  ExperimentModel m;
  if (cfg.mode == ExperimentMode::tie) {
    const TieInput tie = tie_from_populations(cfg.p1, cfg.kappa);
    // k1 = 1, so |delta_l| = (k_max |delta_l|) / kappa and l0 = k_l0.
    const double delta_l =
        cfg.true_sign * cfg.k_max_delta_l / tie.k_max;
    const ArmGeometry geom = make_arm_geometry(cfg.k_l0, 0.0, delta_l);
    const WwBasis basis = ww_basis(tie, cfg.k_l0, 0.0);
    const ArmStates arms = arm_states(tie, geom.arm_a(), geom.arm_b());
    const double w_aa = std::norm(overlap(basis.tilde_a, arms.psi_a));
    const double w_ab = std::norm(overlap(basis.tilde_a, arms.psi_b));
    const double w_ba = std::norm(overlap(basis.tilde_b, arms.psi_a));
    const double w_bb = std::norm(overlap(basis.tilde_b, arms.psi_b));
    const JointOutcomeDist joint = joint_outcome_dist(tie, geom, basis);
    m.plus_a = joint.plus_a;
    m.plus_b = joint.plus_b;
    m.minus_a = joint.minus_a;
    m.minus_b = joint.minus_b;
    const double denom_a = w_aa + w_ab;
    const double denom_b = w_bb + w_ba;
    m.q_a = denom_a > 0.0 ? w_aa / denom_a : 1.0;
    m.q_b = denom_b > 0.0 ? w_bb / denom_b : 1.0;
    m.distinguishability = tie_distinguishability(tie, geom.l_ab());
    m.sensitivity_design = sensitivity(tie, cfg.k_l0);
    const double slope =
        -0.5 * (tie.p1 * tie.k1 * std::sin(tie.k1 * cfg.k_l0) +
                tie.p2 * tie.k2 * std::sin(tie.k2 * cfg.k_l0));
    m.slope_sign = sign_of_slope(slope);
    m.l_ab_true = geom.l_ab();
  } else {
    const DetectorModel det = make_detector_from_alpha(cfg.detector_alpha);
    // Single wavenumber k = 1: the pointer states make the which-way guess,
    // the ports interfere with visibility V~ = |sin alpha|.
    const double l_ab = cfg.k_l0 + cfg.true_sign * cfg.k_max_delta_l;
    const double osc = det.visibility * std::cos(l_ab);
    const double p_plus = 0.5 * (1.0 + osc);
    // The outcome marginal is 1/2 per label and independent of the port.
    m.plus_a = 0.5 * p_plus;
    m.plus_b = 0.5 * p_plus;
    m.minus_a = 0.5 * (1.0 - p_plus);
    m.minus_b = 0.5 * (1.0 - p_plus);
    m.q_a = 0.5 * (1.0 + det.distinguishability);
    m.q_b = m.q_a;
    m.distinguishability = det.distinguishability;
    m.sensitivity_design = det.visibility * std::abs(std::sin(cfg.k_l0));
    m.slope_sign = sign_of_slope(-0.5 * det.visibility * std::sin(cfg.k_l0));
    m.l_ab_true = l_ab;
  }
  m.p_plus = m.plus_a + m.plus_b;
  const double outcome_a = m.plus_a + m.minus_a;
  const double outcome_b = m.plus_b + m.minus_b;
  m.wrong_prob = outcome_a * (1.0 - m.q_a) + outcome_b * (1.0 - m.q_b);
  return m;
}

ExperimentSummary run_phase_experiment(const ExperimentConfig& cfg) {
  ExperimentSummary summary;
  summary.config = cfg;
  summary.model = experiment_model(cfg);
  const SamplingTables tables = tables_from_model(summary.model);
  const CounterRng rng(cfg.seed);

  summary.repetitions.resize(static_cast<std::size_t>(cfg.repetitions));
  run_indexed(cfg.repetitions, cfg.threads, [&](long long rep) {
    RepetitionCounts rc =
        sample_repetition(tables, cfg.n_in, rng,
                          static_cast<std::uint32_t>(rep),
                          rng_stream::phase_atoms);
    rc.sign_guess =
        guess_sign(rc.n_plus(), cfg.n_in, summary.model.slope_sign);
    rc.sign_correct = rc.sign_guess == cfg.true_sign;
    summary.repetitions[static_cast<std::size_t>(rep)] = rc;
  });

  long long correct = 0;
  double wrong_sum = 0.0;
  double plus_sum = 0.0;
  for (const auto& rc : summary.repetitions) {
    correct += rc.sign_correct ? 1 : 0;
    wrong_sum += static_cast<double>(rc.wrong);
    plus_sum += static_cast<double>(rc.n_plus()) / cfg.n_in;
  }
  const double reps = static_cast<double>(cfg.repetitions);
  summary.sign_success_rate = correct / reps;
  summary.wrong_mean = wrong_sum / reps;
  summary.mean_plus_fraction = plus_sum / reps;
  double var = 0.0;
  for (const auto& rc : summary.repetitions) {
    const double d = static_cast<double>(rc.wrong) - summary.wrong_mean;
    var += d * d;
  }
  summary.wrong_stddev =
      cfg.repetitions > 1 ? std::sqrt(var / (reps - 1.0)) : 0.0;
  return summary;
}

GameSummary run_game(const GameConfig& cfg) {
  validate_common(cfg.k_max_delta_l, cfg.k_l0, cfg.n_in, "run_game");
  if (cfg.trials < 1) {
    throw std::invalid_argument("run_game: trials must be >= 1");
  }
  if (cfg.threads < 0) {
    throw std::invalid_argument("run_game: threads must be >= 0");
  }
  double mix_total = 0.0;
  for (double w : cfg.mix) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("run_game: mixing weights must be >= 0");
    }
    mix_total += w;
  }
  if (std::abs(mix_total - 1.0) > 1e-9) {
    throw std::invalid_argument("run_game: mixing weights must sum to 1");
  }

  const TieInput tie = tie_from_populations(cfg.p1, cfg.kappa);
  const double delta_l_abs = cfg.k_max_delta_l / tie.k_max;
  const WwBasis basis = ww_basis(tie, cfg.k_l0, 0.0);

  // Shift trials reuse the phase-experiment model at either sign.
  auto shift_model = [&](int sign) {
    ExperimentConfig e;
    e.mode = ExperimentMode::tie;
    e.kappa = cfg.kappa;
    e.p1 = cfg.p1;
    e.k_max_delta_l = cfg.k_max_delta_l;
    e.true_sign = sign;
    e.k_l0 = cfg.k_l0;
    e.n_in = cfg.n_in;
    e.repetitions = 1;
    e.seed = cfg.seed;
    e.threads = 1;
    return experiment_model(e);
  };
  const ExperimentModel model_plus = shift_model(+1);
  const ExperimentModel model_minus = shift_model(-1);
  const SamplingTables tables_plus = tables_from_model(model_plus);
  const SamplingTables tables_minus = tables_from_model(model_minus);

  // Blocked trials: P(outcome psi~_A | open path) at either shift sign.
  double p_outcome_a_open_a[2];  // index 0: shift +, 1: shift -
  double p_outcome_a_open_b[2];
  for (int i = 0; i < 2; ++i) {
    const int sign = i == 0 ? +1 : -1;
    const ArmGeometry geom =
        make_arm_geometry(cfg.k_l0, 0.0, sign * delta_l_abs);
    const ArmStates arms = arm_states(tie, geom.arm_a(), geom.arm_b());
    p_outcome_a_open_a[i] = std::norm(overlap(basis.tilde_a, arms.psi_a));
    p_outcome_a_open_b[i] = std::norm(overlap(basis.tilde_a, arms.psi_b));
  }

  const double mix0 = cfg.mix[0];
  const double mix01 = cfg.mix[0] + cfg.mix[1];
  const double mix012 = cfg.mix[0] + cfg.mix[1] + cfg.mix[2];
  const CounterRng rng(cfg.seed);

  GameSummary summary;
  summary.config = cfg;
  summary.trials.resize(static_cast<std::size_t>(cfg.trials));
  run_indexed(cfg.trials, cfg.threads, [&](long long t) {
    const auto rep = static_cast<std::uint32_t>(t);
    const auto [u_action, u_shift] =
        rng.uniforms(0, rep, rng_stream::game_action);
    GameTrial trial;
    if (u_action < mix01) {
      trial.action = u_action < mix0 ? GameAction::shift_plus
                                     : GameAction::shift_minus;
      const int sign = trial.action == GameAction::shift_plus ? +1 : -1;
      trial.shift_sign = sign;
      const SamplingTables& tables =
          sign > 0 ? tables_plus : tables_minus;
      const RepetitionCounts rc = sample_repetition(
          tables, cfg.n_in, rng, rep, rng_stream::game_atoms);
      trial.truth = sign;
      trial.guess = guess_sign(rc.n_plus(), cfg.n_in, model_plus.slope_sign);
      trial.correct = trial.guess == trial.truth;
    } else {
      trial.action = u_action < mix012 ? GameAction::block_a
                                       : GameAction::block_b;
      // block_a closes path A, so the atom travels the open path B.
      const bool open_a = trial.action == GameAction::block_b;
      trial.shift_sign = u_shift < 0.5 ? +1 : -1;
      const int sign_index = trial.shift_sign > 0 ? 0 : 1;
      const double p_outcome_a = open_a ? p_outcome_a_open_a[sign_index]
                                        : p_outcome_a_open_b[sign_index];
      const auto [u_outcome, unused] =
          rng.uniforms(0, rep, rng_stream::game_block);
      (void)unused;
      const int outcome = u_outcome < p_outcome_a ? 0 : 1;
      trial.truth = open_a ? 0 : 1;
      trial.guess = outcome;
      trial.correct = trial.guess == trial.truth;
    }
    summary.trials[static_cast<std::size_t>(t)] = trial;
  });

  for (const auto& trial : summary.trials) {
    auto& stats = summary.per_action[static_cast<int>(trial.action)];
    ++stats.trials;
    if (trial.correct) ++stats.correct;
  }
  for (int a = 0; a < 4; ++a) {
    auto& combined = a < 2 ? summary.shift : summary.block;
    combined.trials += summary.per_action[a].trials;
    combined.correct += summary.per_action[a].correct;
  }
  return summary;
}

}  // namespace tiemzi
