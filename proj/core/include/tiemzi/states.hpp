#pragma once

// States of a particle whose centre-of-mass motion is entangled with a
// two-level internal degree of freedom (translational-internal entanglement,
// TIE).  A bichromatic input  c1|k1>|1> + c2|k2>|2>  propagates each internal
// component with its own wavenumber, so the relative phase between the two
// internal amplitudes grows linearly with the distance travelled.
//
// Conventions: hbar = 1; all amplitude pairs are unit-normalised; wavenumbers
// are ordered 0 < k1 <= k2.  Every value is immutable after construction and
// every operation is a pure function, so the whole module is safe to use from
// concurrent threads.

#include <complex>
#include <utility>

namespace tiemzi {

using complex = std::complex<double>;

// Amplitudes (a1, a2) on the two internal levels, |a1|^2 + |a2|^2 = 1.
struct SpinState {
  complex a1;
  complex a2;
};

// Rescales (a1, a2) to exact unit norm.  Throws std::invalid_argument on a
// zero vector.
SpinState make_spin_state(complex a1, complex a2);

// <bra|ket> with the conjugate on the first argument.
complex overlap(const SpinState& bra, const SpinState& ket);

// Bichromatic TIE input prepared before the first beam splitter.
struct TieInput {
  complex c1, c2;   // internal amplitudes, renormalised to unit norm
  double k1, k2;    // wavenumbers, 0 < k1 <= k2
  double p1, p2;    // populations |c1|^2, |c2|^2
  double kappa;     // wavenumber ratio k2 / k1
  double delta_k;   // k2 - k1
  double k_max;     // k2
};

// Validates and normalises a TIE input.  Requires |c1|^2 + |c2|^2 within
// 1e-9 of 1 (then rescales to exact unit norm) and 0 < k1 <= k2.
// Throws std::invalid_argument otherwise.
TieInput make_tie_input(complex c1, complex c2, double k1, double k2);

// Real-amplitude input (sqrt(p1), sqrt(1 - p1)) at k1 = 1, k2 = kappa.
TieInput tie_from_populations(double p1, double kappa);

// Inputs of the energy constraint  E = k_i^2 / (2 mass) + eps_i.
struct PhysicalParams {
  double mass;
  double eps1, eps2;  // internal level energies
  double energy;      // conserved total energy E
};

// Solves the constraint for the wavenumber of each internal level:
// k_i = sqrt(2 mass (E - eps_i)), paired with eps_i.  A level exactly at
// threshold (E == eps_i) yields k_i = 0.  Throws std::invalid_argument for
// non-positive mass and std::domain_error when E < eps_i for either level.
std::pair<double, double> momenta_from_energy(const PhysicalParams& params);

// Internal state after propagating a distance x:
// (c1 e^{i k1 x}, c2 e^{i k2 x}).  The relative phase between the two
// components is (k2 - k1) x, so the state is 2 pi / (k2 - k1) periodic in x
// up to a global phase.
SpinState internal_state_at(const TieInput& tie, double x);

// Internal states carried along the two interferometer arms.
struct ArmStates {
  SpinState psi_a;  // at arm length l_a
  SpinState psi_b;  // at arm length l_b
};

ArmStates arm_states(const TieInput& tie, double l_a, double l_b);

// Which-way measurement basis for the internal degree of freedom,
//   psi~_{A,B} = (|1> +- i e^{i Phi} |2>) / sqrt(2),
//   Phi = (k2 - k1) (l_a_ref + l_b_ref) / 2 + arg(conj(c1) c2).
// The pair is exactly orthonormal.  Built from *reference* arm lengths: when
// these match the true arm lengths the basis is the optimal path guess.
struct WwBasis {
  SpinState tilde_a;
  SpinState tilde_b;
};

WwBasis ww_basis(const TieInput& tie, double l_a_ref, double l_b_ref);

}  // namespace tiemzi
