#pragma once

// Which-way / which-phase complementarity measures and the inequality audits
// that relate them: distinguishability D, interference visibility V, internal
// purity, phase sensitivity S, and the duality / sensitivity bounds.
//
// Identities maintained here (exact up to rounding):
//   D^2 + purity^2 = 1                     for TIE arm states
//   D = 2 sqrt(p1 p2) |sin(dk l_ab / 2)| = sqrt(1 - |<psi_B|psi_A>|^2)
//   S <= bound ellipse:  ((S - (kappa-1)/2kappa) / ((kappa+1)/2kappa))^2 + D^2 <= 1
// with kappa = 1 reducing the ellipse to the circle S^2 + D^2 <= 1 and
// kappa = +infinity to centre 1/2, half-axis 1/2.

#include <limits>

#include "tiemzi/interferometry.hpp"
#include "tiemzi/states.hpp"

namespace tiemzi {

// sqrt(1 - |ov|^2); requires |ov| <= 1 (1e-12 slack).
double distinguishability_from_overlap(complex ov);

// D(l_ab) = 2 sqrt(p1 p2) |sin(delta_k l_ab / 2)|.
double tie_distinguishability(const TieInput& tie, double l_ab);

// |<psi_b|psi_a>| for unit-normalised internal states.
double purity(const SpinState& psi_a, const SpinState& psi_b);

// Probability of guessing the path right with the optimal strategy: (1+D)/2.
// Requires D in [0, 1].
double ww_probability(double distinguishability);

// Best which-phase guess probability with orthogonal outputs: (1+V)/2.
double wp_probability_max(double visibility);

// Which-phase guess probability for a discrete +-|delta_l| shift read off a
// single port: 1/2 + (V/2) sin(k |delta_l|).
double wp_probability_discrete(double visibility, double k_delta_l);

// Phase sensitivity of the balanced monochromatic fringe, 2 |dP/dphi|.
double standard_sensitivity(double visibility, double phi);

// Path-difference sensitivity of the TIE fringe, normalised by k_max:
//   S = |p1 k1 sin(k1 l_ab) + p2 k2 sin(k2 l_ab)| / k_max.
double sensitivity(const TieInput& tie, double l_ab);

// Which-way and which-phase probabilities at the operating point
// kappa = 3, p1 = 1/2, k1 l0 = pi/2 for a small shift |delta_l|:
// quadratic/linear forms next to the closed-form values.
struct SmallShiftProbabilities {
  double p_ww_approx;  // 1 - (k1 delta_l)^2 / 4
  double p_wp_approx;  // (1 + |k1 delta_l|) / 2
  double p_ww_exact;   // (1 + cos(k1 delta_l)) / 2
  double p_wp_exact;   // 1/2 [1 + sin(k1 |delta_l|) cos(2 k1 delta_l)]
  bool beyond_linear_regime;  // |k1 delta_l| > 0.1
};

// Requires kappa == 3 and p1 == 1/2 (each within 1e-9) and
// |k1_delta_l| <= 0.3; sets beyond_linear_regime above 0.1.
SmallShiftProbabilities small_shift_probabilities(const TieInput& tie,
                                                  double k1_delta_l);

// Upper bound on the which-phase probability achievable by a standard
// monochromatic probe whose detector angle alpha fixes D = |cos alpha|:
//   exact      = 1/2 [1 + |sin alpha| sin(k |delta_l|)]
//   linearised = 1/2 (1 + |alpha| k |delta_l|)
struct StandardWpBound {
  double exact;
  double linearised;
};

StandardWpBound standard_wp_bound(const DetectorModel& det, double k_delta_l);

// Verdict of an inequality audit; `tight` means |lhs - bound| <= 1e-9.
enum class Verdict { satisfied, tight, violated };

struct DualityReport {
  const char* inequality;  // stable identifier of the audited inequality
  double lhs;
  double bound;   // always 1 for the audits below
  double slack;   // bound - lhs
  Verdict verdict;
};

// (2 P_WW - 1)^2 + (2 P_WP - 1)^2 <= 1 with orthogonal-output P_WP.
// Requires both probabilities in [1/2, 1].
DualityReport audit_duality_orthogonal(double p_ww, double p_wp);

// (2 P_WW - 1)^2 + [(2 P_WP - 1) / sin(k |delta_l|)]^2 <= 1 for a discrete
// shift.  At k_delta_l == 0 the inequality degenerates to P_WP == 1/2: the
// second term is 0 when |2 P_WP - 1| <= 1e-12 and +infinity otherwise.
DualityReport audit_duality_discrete(double p_ww, double p_wp,
                                     double k_delta_l);

// Sensitivity-distinguishability ellipse
//   ((S - c) / a)^2 + D^2 <= 1,  c = (kappa-1)/(2 kappa),  a = (kappa+1)/(2 kappa).
// kappa = 1 gives the circle S^2 + D^2 <= 1; kappa = +infinity (sentinel
// std::numeric_limits<double>::infinity()) gives c = a = 1/2.
// Requires S, D in [0, 1] and kappa >= 1.
DualityReport sd_ellipse_bound(double s, double d, double kappa);

inline constexpr double kappa_infinity =
    std::numeric_limits<double>::infinity();

}  // namespace tiemzi
