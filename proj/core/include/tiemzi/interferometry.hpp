#pragma once

// Mach-Zehnder interferometry: output-port statistics for standard
// (detector-entangled), polychromatic and TIE inputs.
//
// Merger convention: the recombining beam splitter maps the path states to
// |+-> = (|A> +- |B>) / sqrt(2), so the port-+ amplitude carries the relative
// plus sign.  Path differences are written L_AB = L_A - L_B; an applied shift
// delta_l changes the difference while the *sum* of the arm lengths stays at
// its nominal value, i.e. L_A = l_a0 + delta_l/2 and L_B = l_b0 - delta_l/2.
// With that convention a which-way basis built from the nominal lengths stays
// matched to the true arm sum, and all closed-form identities below hold at
// the shifted difference L_AB = (l_a0 - l_b0) + delta_l.
//
// All operations are pure; returned probability pairs sum to one.

#include <utility>
#include <vector>

#include "tiemzi/states.hpp"

namespace tiemzi {

// Arm lengths: nominal values plus an applied path-difference change.
struct ArmGeometry {
  double l_a0;     // nominal length of arm A
  double l_b0;     // nominal length of arm B
  double delta_l;  // applied change of the path difference L_A - L_B

  double l_ab0() const { return l_a0 - l_b0; }          // nominal difference
  double l_ab() const { return l_ab0() + delta_l; }     // difference in force
  double arm_a() const { return l_a0 + delta_l / 2.0; } // true length of arm A
  double arm_b() const { return l_b0 - delta_l / 2.0; } // true length of arm B
};

// Validates finiteness of all three lengths.
ArmGeometry make_arm_geometry(double l_a0, double l_b0, double delta_l);

// Which-way detector described only through the overlap of its two pointer
// states; pointer states are never represented as explicit vectors.
struct DetectorModel {
  complex overlap_dadb;       // <d_A|d_B>
  double visibility;          // V~ = |<d_A|d_B>|
  double distinguishability;  // D = sqrt(1 - V~^2)
  double alpha;               // detector angle in [0, pi/2] with cos(alpha) = D
};

// From the pointer-state overlap; requires |ov| <= 1 (1e-12 slack, clamped).
DetectorModel make_detector_from_overlap(complex ov);

// From a detector angle: D = |cos alpha|, overlap = |sin alpha| taken real.
DetectorModel make_detector_from_alpha(double alpha);

// Probabilities at the two output ports.
struct PortProbabilities {
  double p_plus;
  double p_minus;
};

// Balanced monochromatic fringe  P_+- = (1 +- V cos phi) / 2.
// Requires 0 <= V <= 1 and finite phi.
PortProbabilities standard_fringe(double visibility, double phi);

// Monochromatic fringe at path difference l0 + delta_l:
// P_+- = 1/2 +- (V/2) cos[k (l0 + delta_l)].
PortProbabilities unbalanced_fringe(double visibility, double k, double l0,
                                    double delta_l);

// One spectral component of an unentangled polychromatic packet.
struct PacketComponent {
  complex c;     // amplitude
  double k;      // wavenumber, > 0
  double omega;  // angular frequency
};

// f(x, t) = sum_j c_j e^{i (k_j x - omega_j t)} with unit total weight.
struct PolychromaticPacket {
  std::vector<PacketComponent> components;
};

// Validates (>= 1 component, k > 0, finite, nonzero weight) and rescales the
// amplitudes to exact unit total weight.
PolychromaticPacket make_packet(std::vector<PacketComponent> components);

// Instantaneous port split of a polychromatic packet combined with a
// which-way detector.  `rate` is the instantaneous detection rate
// (|f_A|^2 + |f_B|^2) / 2, normalised so its long-time average is 1; the
// probabilities are the normalised split of that rate between the ports.
// A zero-rate instant (no amplitude on either arm) returns the symmetric
// split (1/2, 1/2) with rate 0.
//
// Overlap convention: the interference term pairs f(L_A) with the conjugate
// of f(L_B) so that a positive overlap argument shifts every fringe as
// cos(k_j L_AB + arg<d_A|d_B>), consistent with polychromatic_avg.
struct InstantSplit {
  double p_plus;
  double p_minus;
  double rate;
};

InstantSplit polychromatic_instant(const PolychromaticPacket& packet,
                                   const ArmGeometry& geom,
                                   const DetectorModel& det, double t);

// Long-time average of the detected port fractions:
//   <P_+-> = 1/2 { 1 +- V~ sum_j |c_j|^2 cos(k_j l_ab + phi) },
// with V~ = |<d_A|d_B>| and phi = arg<d_A|d_B>.  Valid only when all
// component frequencies are pairwise distinct (cross terms average out);
// throws std::invalid_argument on a repeated frequency.
PortProbabilities polychromatic_avg(const PolychromaticPacket& packet,
                                    double l_ab, const DetectorModel& det);

// TIE fringe: each wavenumber contributes its own cosine, weighted by the
// populations:  P_+- = p1 (1 +- cos k1 l_ab)/2 + p2 (1 +- cos k2 l_ab)/2.
PortProbabilities tie_fringe(const TieInput& tie, double l_ab);

// Joint distribution over (output port, which-way outcome) for a TIE input
// measured in a which-way basis after the merger:
//   P(s, m) = |<psi~_m| (psi_A + sigma_s psi_B)> / 2|^2,  sigma_+- = +-1.
struct JointOutcomeDist {
  double plus_a, plus_b;    // port +, outcome psi~_A / psi~_B
  double minus_a, minus_b;  // port -, outcome psi~_A / psi~_B

  double p_plus() const { return plus_a + plus_b; }
  double p_minus() const { return minus_a + minus_b; }
  double outcome_a() const { return plus_a + minus_a; }
  double outcome_b() const { return plus_b + minus_b; }
};

JointOutcomeDist joint_outcome_dist(const TieInput& tie,
                                    const ArmGeometry& geom,
                                    const WwBasis& basis);

// 2x2 path-space density matrix in the (|A>, |B>) basis.
struct DensityMatrix2 {
  complex aa, ab;
  complex ba, bb;

  double trace_real() const { return aa.real() + bb.real(); }
  bool is_hermitian(double tol) const;
  // Eigenvalues of a Hermitian matrix, ascending.
  std::pair<double, double> eigenvalues() const;
};

// Reduced path-space state for arm states psi_A, psi_B and an additional
// field-free relative phase theta:
//   rho = 1/2 [[1, <psi_B|psi_A> e^{i theta}], [<psi_A|psi_B> e^{-i theta}, 1]].
// Both states must be normalized.
DensityMatrix2 reduced_density(const SpinState& psi_a, const SpinState& psi_b,
                               double theta);

// Port probabilities produced by the reduced density matrix above:
//   P_+- = 1/2 [1 +- |<psi_B|psi_A>| cos(theta + arg<psi_B|psi_A>)].
// Scanning theta yields fringes whose contrast equals the purity.
PortProbabilities field_free_fringe(const SpinState& psi_a,
                                    const SpinState& psi_b, double theta);

}  // namespace tiemzi
