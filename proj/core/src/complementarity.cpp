#include "tiemzi/complementarity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tiemzi {

namespace {

constexpr double verdict_tol = 1e-9;

void require_unit_interval(double v, const char* where, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw std::invalid_argument(std::string(where) + ": " + what +
                                " must lie in [0, 1]");
  }
}

void require_probability_upper_half(double p, const char* where,
                                    const char* what) {
  if (!(p >= 0.5 && p <= 1.0)) {
    throw std::invalid_argument(std::string(where) + ": " + what +
                                " must lie in [1/2, 1]");
  }
}

DualityReport report(const char* inequality, double lhs) {
  DualityReport r;
  r.inequality = inequality;
  r.lhs = lhs;
  r.bound = 1.0;
  r.slack = r.bound - lhs;
  if (lhs > r.bound + verdict_tol) {
    r.verdict = Verdict::violated;
  } else if (std::abs(lhs - r.bound) <= verdict_tol) {
    r.verdict = Verdict::tight;
  } else {
    r.verdict = Verdict::satisfied;
  }
  return r;
}

}  // namespace

double distinguishability_from_overlap(complex ov) {
  const double mag2 = std::norm(ov);
  if (!std::isfinite(mag2) || mag2 > 1.0 + 1e-12) {
    throw std::invalid_argument(
        "distinguishability_from_overlap: |overlap| exceeds 1");
  }
  return std::sqrt(std::max(0.0, 1.0 - mag2));
}

double tie_distinguishability(const TieInput& tie, double l_ab) {
  if (!std::isfinite(l_ab)) {
    throw std::invalid_argument("tie_distinguishability: l_ab must be finite");
  }
  // Mathematically <= 1; clamp rounding residue from the renormalized
  // populations so downstream [0, 1] domain checks never trip.
  return std::min(1.0, 2.0 * std::sqrt(tie.p1 * tie.p2) *
                           std::abs(std::sin(tie.delta_k * l_ab / 2.0)));
}

double purity(const SpinState& psi_a, const SpinState& psi_b) {
  return std::min(1.0, std::abs(overlap(psi_b, psi_a)));
}

double ww_probability(double distinguishability) {
  require_unit_interval(distinguishability, "ww_probability", "D");
  return 0.5 * (1.0 + distinguishability);
}

double wp_probability_max(double visibility) {
  require_unit_interval(visibility, "wp_probability_max", "V");
  return 0.5 * (1.0 + visibility);
}

double wp_probability_discrete(double visibility, double k_delta_l) {
  require_unit_interval(visibility, "wp_probability_discrete", "V");
  if (!std::isfinite(k_delta_l)) {
    throw std::invalid_argument(
        "wp_probability_discrete: k_delta_l must be finite");
  }
  return 0.5 + 0.5 * visibility * std::sin(std::abs(k_delta_l));
}

double standard_sensitivity(double visibility, double phi) {
  require_unit_interval(visibility, "standard_sensitivity", "V");
  if (!std::isfinite(phi)) {
    throw std::invalid_argument("standard_sensitivity: phi must be finite");
  }
  return visibility * std::abs(std::sin(phi));
}

double sensitivity(const TieInput& tie, double l_ab) {
  if (!std::isfinite(l_ab)) {
    throw std::invalid_argument("sensitivity: l_ab must be finite");
  }
  // Bounded by (p1 k1 + p2 k2) / k_max <= 1; clamp rounding residue.
  return std::min(1.0, std::abs(tie.p1 * tie.k1 * std::sin(tie.k1 * l_ab) +
                                tie.p2 * tie.k2 * std::sin(tie.k2 * l_ab)) /
                           tie.k_max);
}

SmallShiftProbabilities small_shift_probabilities(const TieInput& tie,
                                                  double k1_delta_l) {
  if (std::abs(tie.kappa - 3.0) > 1e-9 || std::abs(tie.p1 - 0.5) > 1e-9) {
    throw std::invalid_argument(
        "small_shift_probabilities: requires kappa = 3 and p1 = 1/2");
  }
  const double x = std::abs(k1_delta_l);
  if (!(x <= 0.3)) {
    throw std::invalid_argument(
        "small_shift_probabilities: |k1 delta_l| must not exceed 0.3");
  }
  SmallShiftProbabilities out;
  out.p_ww_approx = 1.0 - x * x / 4.0;
  out.p_wp_approx = 0.5 * (1.0 + x);
  out.p_ww_exact = 0.5 * (1.0 + std::cos(x));
  // P_+ at the shifted difference: 1/2 [1 + (sin 3x - sin x)/2], and
  // sin 3x - sin x = 2 sin x cos 2x.
  out.p_wp_exact = 0.5 * (1.0 + std::sin(x) * std::cos(2.0 * x));
  out.beyond_linear_regime = x > 0.1;
  return out;
}

StandardWpBound standard_wp_bound(const DetectorModel& det, double k_delta_l) {
  if (!std::isfinite(k_delta_l)) {
    throw std::invalid_argument("standard_wp_bound: k_delta_l must be finite");
  }
  const double kdl = std::abs(k_delta_l);
  StandardWpBound b;
  b.exact = 0.5 * (1.0 + std::abs(std::sin(det.alpha)) * std::sin(kdl));
  b.linearised = 0.5 * (1.0 + std::abs(det.alpha) * kdl);
  return b;
}

DualityReport audit_duality_orthogonal(double p_ww, double p_wp) {
  require_probability_upper_half(p_ww, "audit_duality_orthogonal", "P_WW");
  require_probability_upper_half(p_wp, "audit_duality_orthogonal", "P_WP");
  const double d_term = 2.0 * p_ww - 1.0;
  const double v_term = 2.0 * p_wp - 1.0;
  return report("ww-wp-orthogonal", d_term * d_term + v_term * v_term);
}

DualityReport audit_duality_discrete(double p_ww, double p_wp,
                                     double k_delta_l) {
  require_probability_upper_half(p_ww, "audit_duality_discrete", "P_WW");
  require_probability_upper_half(p_wp, "audit_duality_discrete", "P_WP");
  if (!std::isfinite(k_delta_l)) {
    throw std::invalid_argument(
        "audit_duality_discrete: k_delta_l must be finite");
  }
  const double d_term = 2.0 * p_ww - 1.0;
  const double numer = 2.0 * p_wp - 1.0;
  const double denom = std::sin(std::abs(k_delta_l));
  double v_term;
  if (denom == 0.0) {
    // Degenerate shift: the inequality forces P_WP = 1/2 exactly.
    v_term = std::abs(numer) <= 1e-12
                 ? 0.0
                 : std::numeric_limits<double>::infinity();
  } else {
    v_term = numer / denom;
  }
  return report("ww-wp-discrete", d_term * d_term + v_term * v_term);
}

DualityReport sd_ellipse_bound(double s, double d, double kappa) {
  require_unit_interval(s, "sd_ellipse_bound", "S");
  require_unit_interval(d, "sd_ellipse_bound", "D");
  if (std::isnan(kappa) || kappa < 1.0) {
    throw std::invalid_argument(
        "sd_ellipse_bound: kappa must be >= 1 (or +infinity)");
  }
  double centre, half_axis;
  if (std::isinf(kappa)) {
    centre = 0.5;
    half_axis = 0.5;
  } else {
    centre = (kappa - 1.0) / (2.0 * kappa);
    half_axis = (kappa + 1.0) / (2.0 * kappa);
  }
  const double s_term = (s - centre) / half_axis;
  const char* name =
      kappa == 1.0 ? "sensitivity-circle" : "sensitivity-ellipse";
  return report(name, s_term * s_term + d * d);
}

}  // namespace tiemzi
