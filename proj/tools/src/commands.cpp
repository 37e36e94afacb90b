#include "commands.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "tiemzi/complementarity.hpp"
#include "tiemzi/interferometry.hpp"
#include "tiemzi/montecarlo.hpp"
#include "tiemzi/philox.hpp"
#include "tiemzi/states.hpp"

namespace tiemzi_cli {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string csv_row(const std::vector<double>& values) {
  std::string row;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) row += ',';
    row += fmt17(values[i]);
  }
  row += '\n';
  return row;
}

double grid_point(double lo, double hi, long long points, long long i) {
  if (i == points - 1) return hi;  // hit the endpoint exactly
  return lo + (hi - lo) * static_cast<double>(i) /
                  static_cast<double>(points - 1);
}

json category_stats(const tiemzi::GameCategoryStats& stats) {
  json j;
  j["trials"] = stats.trials;
  j["correct"] = stats.correct;
  j["rate"] = stats.trials > 0 ? json(stats.rate()) : json(nullptr);
  return j;
}

const char* action_name(tiemzi::GameAction action) {
  switch (action) {
    case tiemzi::GameAction::shift_plus: return "shift_plus";
    case tiemzi::GameAction::shift_minus: return "shift_minus";
    case tiemzi::GameAction::block_a: return "block_a";
    default: return "block_b";
  }
}

struct VerdictCounts {
  long long satisfied = 0;
  long long tight = 0;
  long long violated = 0;

  void add(tiemzi::Verdict v) {
    switch (v) {
      case tiemzi::Verdict::satisfied: ++satisfied; break;
      case tiemzi::Verdict::tight: ++tight; break;
      case tiemzi::Verdict::violated: ++violated; break;
    }
  }

  json to_json() const {
    json j;
    j["satisfied"] = satisfied;
    j["tight"] = tight;
    j["violated"] = violated;
    return j;
  }
};

// Probability rescaled towards the uninformative 1/2 by an efficiency in
// [0, 1]: models a sub-optimal guesser without leaving the physical range.
double with_efficiency(double p, double efficiency) {
  return 0.5 + efficiency * (p - 0.5);
}

}  // namespace

void run_fringes(const json& params) {
  const double kappa = param_double(params, "kappa");
  const double p1 = param_double(params, "p1");
  const double grid_min = param_double(params, "grid-min");
  const double grid_max = param_double(params, "grid-max");
  const long long points = param_int(params, "points");
  const std::string out = param_string(params, "out");

  if (points < 2) {
    throw ConfigError("config error at parameters.points: need >= 2 points");
  }
  if (!std::isfinite(grid_min) || !std::isfinite(grid_max) ||
      !(grid_max > grid_min)) {
    throw ConfigError(
        "config error at parameters.grid-min/grid-max: need a finite grid "
        "with grid-max > grid-min");
  }
  const tiemzi::TieInput tie = tiemzi::tie_from_populations(p1, kappa);

  std::string csv = "k1_L_AB,P_plus,P_minus,D,S,purity\n";
  for (long long i = 0; i < points; ++i) {
    const double l = grid_point(grid_min, grid_max, points, i);
    const tiemzi::PortProbabilities ports = tiemzi::tie_fringe(tie, l);
    const double d = tiemzi::tie_distinguishability(tie, l);
    const double s = tiemzi::sensitivity(tie, l);
    const tiemzi::ArmStates arms = tiemzi::arm_states(tie, l, 0.0);
    const double pur = tiemzi::purity(arms.psi_a, arms.psi_b);
    csv += csv_row({l, ports.p_plus, ports.p_minus, d, s, pur});
  }
  write_text_file(out, csv);
  write_manifest("fringes", params, out);
}

void run_ellipse(const json& params) {
  const json& kappa_list = params.at("kappa-list");
  const long long points = param_int(params, "points");
  const std::string out = param_string(params, "out");

  if (points < 2) {
    throw ConfigError("config error at parameters.points: need >= 2 points");
  }
  std::vector<double> kappas;
  for (std::size_t i = 0; i < kappa_list.size(); ++i) {
    const json& entry = kappa_list[i];
    double kappa = 0.0;
    if (entry.is_number()) {
      kappa = entry.get<double>();
    } else if (entry.is_string()) {
      const std::string text = entry.get<std::string>();
      if (text == "inf" || text == "infinity") {
        kappa = std::numeric_limits<double>::infinity();
      } else {
        std::size_t used = 0;
        try {
          kappa = std::stod(text, &used);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used != text.size()) {
          throw ConfigError("config error at parameters.kappa-list[" +
                            std::to_string(i) + "]: cannot parse '" + text +
                            "' as a wavenumber ratio");
        }
      }
    } else {
      throw ConfigError("config error at parameters.kappa-list[" +
                        std::to_string(i) + "]: expected number or string");
    }
    if (!(kappa >= 1.0)) {
      throw ConfigError("config error at parameters.kappa-list[" +
                        std::to_string(i) + "]: ratio must be >= 1");
    }
    kappas.push_back(kappa);
  }

  std::string csv = "kappa,p1,S,D,ellipse_lhs,slack\n";
  for (const double kappa : kappas) {
    for (long long i = 0; i < points; ++i) {
      const double p1 = grid_point(0.0, 1.0, points, i);
      double s = 0.0;
      double d = 0.0;
      if (std::isinf(kappa)) {
        // Limiting family at the maximum-distinguishability operating point.
        s = 1.0 - p1;
        d = 2.0 * std::sqrt(p1 * (1.0 - p1));
      } else {
        const tiemzi::TieInput tie = tiemzi::tie_from_populations(p1, kappa);
        s = tiemzi::sensitivity(tie, kPi / 2.0);
        d = tiemzi::tie_distinguishability(tie, kPi / 2.0);
      }
      const tiemzi::DualityReport report = tiemzi::sd_ellipse_bound(s, d, kappa);
      csv += csv_row({kappa, p1, s, d, report.lhs, report.slack});
    }
  }
  write_text_file(out, csv);
  write_manifest("ellipse", params, out);
}

void run_experiment(const json& params) {
  const std::string mode = param_string(params, "mode");
  tiemzi::ExperimentConfig cfg;
  if (mode == "tie") {
    cfg.mode = tiemzi::ExperimentMode::tie;
  } else if (mode == "standard") {
    cfg.mode = tiemzi::ExperimentMode::standard;
  } else {
    throw ConfigError("config error at parameters.mode: expected 'tie' or "
                      "'standard', got '" + mode + "'");
  }
  cfg.kappa = param_double(params, "kappa");
  cfg.p1 = param_double(params, "p1");
  cfg.detector_alpha = param_double(params, "alpha");
  cfg.k_max_delta_l = param_double(params, "kmax-delta-l");
  cfg.true_sign = static_cast<int>(param_int(params, "true-sign"));
  cfg.k_l0 = param_double(params, "k-l0");
  cfg.n_in = param_int(params, "n-in");
  cfg.repetitions = static_cast<int>(param_int(params, "repetitions"));
  cfg.seed = param_uint(params, "seed");
  cfg.threads = static_cast<int>(param_int(params, "threads"));
  const std::string out = param_string(params, "out");

  const tiemzi::ExperimentSummary summary = tiemzi::run_phase_experiment(cfg);
  const tiemzi::ExperimentModel& m = summary.model;

  json predictions;
  const bool resolvable = cfg.k_max_delta_l > 0.0 && m.sensitivity_design > 0.0;
  predictions["required_atoms"] =
      resolvable
          ? json(tiemzi::required_atoms(cfg.k_max_delta_l, m.sensitivity_design))
          : json(nullptr);
  if (cfg.mode == tiemzi::ExperimentMode::tie) {
    predictions["predicted_wrong"] =
        m.sensitivity_design > 0.0
            ? json(static_cast<double>(cfg.n_in) * m.wrong_prob)
            : json(nullptr);
    predictions["predicted_wrong_at_minimum"] =
        m.sensitivity_design > 0.0
            ? json(tiemzi::expected_wrong_tie(cfg.kappa, m.sensitivity_design))
            : json(nullptr);
  } else {
    predictions["predicted_wrong"] =
        tiemzi::expected_wrong_standard(m.distinguishability, cfg.n_in);
    predictions["predicted_wrong_at_minimum"] = predictions["predicted_wrong"];
  }
  predictions["standard_floor"] =
      cfg.k_max_delta_l > 0.0
          ? json(tiemzi::expected_wrong_standard_floor(cfg.k_max_delta_l))
          : json(nullptr);
  const double signal = std::sqrt(static_cast<double>(cfg.n_in)) *
                        cfg.k_max_delta_l * m.sensitivity_design;
  predictions["sign_success_estimate"] =
      0.5 * std::erfc(-signal / std::sqrt(2.0));

  json model;
  model["plus_a"] = m.plus_a;
  model["plus_b"] = m.plus_b;
  model["minus_a"] = m.minus_a;
  model["minus_b"] = m.minus_b;
  model["q_a"] = m.q_a;
  model["q_b"] = m.q_b;
  model["p_plus"] = m.p_plus;
  model["wrong_prob"] = m.wrong_prob;
  model["distinguishability"] = m.distinguishability;
  model["sensitivity_design"] = m.sensitivity_design;
  model["l_ab_true"] = m.l_ab_true;
  model["slope_sign"] = m.slope_sign;

  json aggregates;
  aggregates["sign_success_rate"] = summary.sign_success_rate;
  aggregates["wrong_mean"] = summary.wrong_mean;
  aggregates["wrong_stddev"] = summary.wrong_stddev;
  aggregates["mean_plus_fraction"] = summary.mean_plus_fraction;

  json reps = json::array();
  for (const auto& rc : summary.repetitions) {
    json r;
    r["plus_a"] = rc.plus_a;
    r["plus_b"] = rc.plus_b;
    r["minus_a"] = rc.minus_a;
    r["minus_b"] = rc.minus_b;
    r["wrong"] = rc.wrong;
    r["sign_guess"] = rc.sign_guess;
    r["sign_correct"] = rc.sign_correct;
    reps.push_back(std::move(r));
  }

  json doc;
  doc["command"] = "experiment";
  doc["parameters"] = params;
  doc["model"] = model;
  doc["predictions"] = predictions;
  doc["aggregates"] = aggregates;
  doc["repetitions"] = std::move(reps);
  write_text_file(out, doc.dump(2) + "\n");
  write_manifest("experiment", params, out);
}

void run_game(const json& params) {
  tiemzi::GameConfig cfg;
  cfg.kappa = param_double(params, "kappa");
  cfg.p1 = param_double(params, "p1");
  cfg.k_max_delta_l = param_double(params, "kmax-delta-l");
  cfg.k_l0 = param_double(params, "k-l0");
  cfg.n_in = param_int(params, "n-in");
  cfg.trials = static_cast<int>(param_int(params, "trials"));
  const json& mix = params.at("mix");
  if (!mix.is_array() || mix.size() != 4) {
    throw ConfigError(
        "config error at parameters.mix: expected 4 weights "
        "(shift+, shift-, block A, block B)");
  }
  for (int i = 0; i < 4; ++i) {
    if (!mix[i].is_number()) {
      throw ConfigError("config error at parameters.mix[" + std::to_string(i) +
                        "]: expected a number");
    }
    cfg.mix[i] = mix[i].get<double>();
  }
  cfg.seed = param_uint(params, "seed");
  cfg.threads = static_cast<int>(param_int(params, "threads"));
  const std::string out = param_string(params, "out");

  const tiemzi::GameSummary summary = tiemzi::run_game(cfg);

  json stats;
  json per_action;
  for (int a = 0; a < 4; ++a) {
    per_action[action_name(static_cast<tiemzi::GameAction>(a))] =
        category_stats(summary.per_action[a]);
  }
  stats["per_action"] = per_action;
  stats["shift"] = category_stats(summary.shift);
  stats["block"] = category_stats(summary.block);

  json trials = json::array();
  for (const auto& t : summary.trials) {
    json record;
    record["action"] = action_name(t.action);
    record["shift_sign"] = t.shift_sign;
    record["truth"] = t.truth;
    record["guess"] = t.guess;
    record["correct"] = t.correct;
    trials.push_back(std::move(record));
  }

  json doc;
  doc["command"] = "game";
  doc["parameters"] = params;
  doc["stats"] = stats;
  doc["trials"] = std::move(trials);
  write_text_file(out, doc.dump(2) + "\n");
  write_manifest("game", params, out);
}

void run_audit(const json& params) {
  const long long trials = param_int(params, "trials");
  const std::uint64_t seed = param_uint(params, "seed");
  const double kappa = param_double(params, "kappa");
  const double kdl_max = param_double(params, "kdl-max");
  const std::string out = param_string(params, "out");

  if (trials < 1) {
    throw ConfigError("config error at parameters.trials: need >= 1");
  }
  if (!std::isfinite(kappa) || kappa < 1.0) {
    throw ConfigError(
        "config error at parameters.kappa: ratio must be finite and >= 1");
  }
  if (!(kdl_max > 0.0) || kdl_max > 0.3) {
    throw ConfigError(
        "config error at parameters.kdl-max: shift must lie in (0, 0.3]");
  }

  // Standard class: random detector angle and shift, with random guessing
  // efficiencies (10% of draws saturate them, so tight cases appear).
  // Entangled class: exact ratio-3 operating-point probabilities for the
  // duality rows; the ellipse sweep draws populations on the tight branch
  // p1 <= kappa/(kappa+1) of the configured ratio.
  VerdictCounts std_orth, std_disc, std_circle;
  VerdictCounts tie_orth, tie_disc, tie_circle, tie_ellipse;
  const tiemzi::CounterRng rng(seed);
  const tiemzi::TieInput tie3 = tiemzi::tie_from_populations(0.5, 3.0);
  for (long long i = 0; i < trials; ++i) {
    const auto index = static_cast<std::uint64_t>(i);
    {
      const auto [u1, u2] =
          rng.uniforms(index, 0, tiemzi::rng_stream::audit_standard);
      const auto [u3, u4] =
          rng.uniforms(index, 1, tiemzi::rng_stream::audit_standard);
      const auto [u5, u6] =
          rng.uniforms(index, 2, tiemzi::rng_stream::audit_standard);
      (void)u6;
      const tiemzi::DetectorModel det =
          tiemzi::make_detector_from_alpha(u1 * kPi / 2.0);
      const double x = (1.0 - u2) * kdl_max;  // in (0, kdl_max]
      const double eff_ww = u3 < 0.9 ? u3 / 0.9 : 1.0;
      const double eff_wp = u4 < 0.9 ? u4 / 0.9 : 1.0;
      const double p_ww = with_efficiency(
          tiemzi::ww_probability(det.distinguishability), eff_ww);
      const double p_wp_orth = with_efficiency(
          tiemzi::wp_probability_max(det.visibility), eff_wp);
      const double p_wp_disc = with_efficiency(
          tiemzi::wp_probability_discrete(det.visibility, x), eff_wp);
      std_orth.add(tiemzi::audit_duality_orthogonal(p_ww, p_wp_orth).verdict);
      std_disc.add(
          tiemzi::audit_duality_discrete(p_ww, p_wp_disc, x).verdict);
      const double s = det.visibility * std::abs(std::sin(u5 * 2.0 * kPi));
      std_circle.add(
          tiemzi::sd_ellipse_bound(s, det.distinguishability, 1.0).verdict);
    }
    {
      const auto [v1, v2] =
          rng.uniforms(index, 0, tiemzi::rng_stream::audit_tie);
      const double x = (1.0 - v1) * kdl_max;
      const tiemzi::SmallShiftProbabilities sp =
          tiemzi::small_shift_probabilities(tie3, x);
      tie_orth.add(
          tiemzi::audit_duality_orthogonal(sp.p_ww_exact, sp.p_wp_exact)
              .verdict);
      tie_disc.add(
          tiemzi::audit_duality_discrete(sp.p_ww_exact, sp.p_wp_exact, x)
              .verdict);
      const double p1 = v2 * kappa / (kappa + 1.0);
      const tiemzi::TieInput tie_k = tiemzi::tie_from_populations(p1, kappa);
      const double s = tiemzi::sensitivity(tie_k, kPi / 2.0);
      const double d = tiemzi::tie_distinguishability(tie_k, kPi / 2.0);
      tie_circle.add(tiemzi::sd_ellipse_bound(s, d, 1.0).verdict);
      tie_ellipse.add(tiemzi::sd_ellipse_bound(s, d, kappa).verdict);
    }
  }

  json standard_class;
  standard_class["duality_orthogonal"] = std_orth.to_json();
  standard_class["duality_discrete"] = std_disc.to_json();
  standard_class["sd_circle"] = std_circle.to_json();
  json tie_class;
  tie_class["duality_orthogonal"] = tie_orth.to_json();
  tie_class["duality_discrete"] = tie_disc.to_json();
  tie_class["sd_circle"] = tie_circle.to_json();
  tie_class["sd_ellipse"] = tie_ellipse.to_json();

  json doc;
  doc["command"] = "audit";
  doc["parameters"] = params;
  doc["classes"] = json{{"standard", standard_class}, {"tie", tie_class}};
  doc["standard_violations"] =
      std_orth.violated + std_disc.violated + std_circle.violated;
  write_text_file(out, doc.dump(2) + "\n");
  write_manifest("audit", params, out);
}

}  // namespace tiemzi_cli
