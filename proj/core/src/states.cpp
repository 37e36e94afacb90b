#include "tiemzi/states.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tiemzi {

namespace {

constexpr double norm_slack = 1e-9;  // accepted deviation of a squared norm

double squared_norm(complex a1, complex a2) {
  return std::norm(a1) + std::norm(a2);
}

}  // namespace

SpinState make_spin_state(complex a1, complex a2) {
  const double n2 = squared_norm(a1, a2);
  if (n2 <= 0.0 || !std::isfinite(n2)) {
    throw std::invalid_argument("make_spin_state: zero or non-finite norm");
  }
  const double inv = 1.0 / std::sqrt(n2);
  return {a1 * inv, a2 * inv};
}

complex overlap(const SpinState& bra, const SpinState& ket) {
  return std::conj(bra.a1) * ket.a1 + std::conj(bra.a2) * ket.a2;
}

TieInput make_tie_input(complex c1, complex c2, double k1, double k2) {
  if (!(k1 > 0.0) || !(k2 > 0.0) || !std::isfinite(k1) || !std::isfinite(k2)) {
    throw std::invalid_argument("make_tie_input: wavenumbers must be positive");
  }
  if (k2 < k1) {
    throw std::invalid_argument(
        "make_tie_input: wavenumber order violated (need k1 <= k2)");
  }
  const double n2 = squared_norm(c1, c2);
  if (n2 <= 0.0) {
    throw std::invalid_argument("make_tie_input: zero total norm");
  }
  if (!std::isfinite(n2) || std::abs(n2 - 1.0) > norm_slack) {
    throw std::invalid_argument(
        "make_tie_input: |c1|^2 + |c2|^2 = " + std::to_string(n2) +
        " deviates from 1 by more than 1e-9");
  }
  const double inv = 1.0 / std::sqrt(n2);
  TieInput tie;
  tie.c1 = c1 * inv;
  tie.c2 = c2 * inv;
  tie.k1 = k1;
  tie.k2 = k2;
  tie.p1 = std::norm(tie.c1);
  tie.p2 = std::norm(tie.c2);
  tie.kappa = k2 / k1;
  tie.delta_k = k2 - k1;
  tie.k_max = k2;
  return tie;
}

TieInput tie_from_populations(double p1, double kappa) {
  if (!(p1 >= 0.0 && p1 <= 1.0)) {
    throw std::invalid_argument("tie_from_populations: p1 must lie in [0, 1]");
  }
  return make_tie_input(std::sqrt(p1), std::sqrt(1.0 - p1), 1.0, kappa);
}

std::pair<double, double> momenta_from_energy(const PhysicalParams& params) {
  if (!(params.mass > 0.0) || !std::isfinite(params.mass)) {
    throw std::invalid_argument("momenta_from_energy: mass must be positive");
  }
  const double r1 = params.energy - params.eps1;
  const double r2 = params.energy - params.eps2;
  if (r1 < 0.0 || r2 < 0.0) {
    throw std::domain_error(
        "momenta_from_energy: energy below an internal level "
        "(classically forbidden)");
  }
  return {std::sqrt(2.0 * params.mass * r1), std::sqrt(2.0 * params.mass * r2)};
}

SpinState internal_state_at(const TieInput& tie, double x) {
  // Unit-modulus phase factors preserve the norm, no rescaling needed.
  return {tie.c1 * std::polar(1.0, tie.k1 * x),
          tie.c2 * std::polar(1.0, tie.k2 * x)};
}

ArmStates arm_states(const TieInput& tie, double l_a, double l_b) {
  return {internal_state_at(tie, l_a), internal_state_at(tie, l_b)};
}

WwBasis ww_basis(const TieInput& tie, double l_a_ref, double l_b_ref) {
  const double phi = tie.delta_k * (l_a_ref + l_b_ref) / 2.0 +
                     std::arg(std::conj(tie.c1) * tie.c2);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const complex second = complex(0.0, 1.0) * std::polar(inv_sqrt2, phi);
  return {SpinState{inv_sqrt2, second}, SpinState{inv_sqrt2, -second}};
}

}  // namespace tiemzi
