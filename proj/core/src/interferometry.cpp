#include "tiemzi/interferometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tiemzi {

namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw std::invalid_argument(std::string(what) + " must be finite");
  }
}

void require_visibility(double v, const char* where) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw std::invalid_argument(std::string(where) +
                                ": visibility must lie in [0, 1]");
  }
}

// f(x, t) = sum_j c_j e^{i (k_j x - omega_j t)}
complex packet_amplitude(const PolychromaticPacket& packet, double x,
                         double t) {
  complex f = 0.0;
  for (const auto& comp : packet.components) {
    f += comp.c * std::polar(1.0, comp.k * x - comp.omega * t);
  }
  return f;
}

}  // namespace

ArmGeometry make_arm_geometry(double l_a0, double l_b0, double delta_l) {
  require_finite(l_a0, "make_arm_geometry: l_a0");
  require_finite(l_b0, "make_arm_geometry: l_b0");
  require_finite(delta_l, "make_arm_geometry: delta_l");
  return {l_a0, l_b0, delta_l};
}

DetectorModel make_detector_from_overlap(complex ov) {
  double mag = std::abs(ov);
  if (!std::isfinite(mag) || mag > 1.0 + 1e-12) {
    throw std::invalid_argument(
        "make_detector_from_overlap: |<d_A|d_B>| exceeds 1");
  }
  if (mag > 1.0) {  // within slack: clamp onto the physical boundary
    ov /= mag;
    mag = 1.0;
  }
  DetectorModel det;
  det.overlap_dadb = ov;
  det.visibility = mag;
  det.distinguishability = std::sqrt(std::max(0.0, 1.0 - mag * mag));
  det.alpha = std::acos(std::min(1.0, det.distinguishability));
  return det;
}

DetectorModel make_detector_from_alpha(double alpha) {
  require_finite(alpha, "make_detector_from_alpha: alpha");
  DetectorModel det;
  det.visibility = std::abs(std::sin(alpha));
  det.distinguishability = std::abs(std::cos(alpha));
  det.overlap_dadb = det.visibility;  // pointer-state phase taken as zero
  det.alpha = std::acos(det.distinguishability);
  return det;
}

PortProbabilities standard_fringe(double visibility, double phi) {
  require_visibility(visibility, "standard_fringe");
  require_finite(phi, "standard_fringe: phi");
  const double osc = visibility * std::cos(phi);
  return {0.5 * (1.0 + osc), 0.5 * (1.0 - osc)};
}

PortProbabilities unbalanced_fringe(double visibility, double k, double l0,
                                    double delta_l) {
  require_visibility(visibility, "unbalanced_fringe");
  require_finite(k, "unbalanced_fringe: k");
  require_finite(l0, "unbalanced_fringe: l0");
  require_finite(delta_l, "unbalanced_fringe: delta_l");
  return standard_fringe(visibility, k * (l0 + delta_l));
}

PolychromaticPacket make_packet(std::vector<PacketComponent> components) {
  if (components.empty()) {
    throw std::invalid_argument("make_packet: at least one component");
  }
  double total = 0.0;
  for (const auto& comp : components) {
    if (!(comp.k > 0.0) || !std::isfinite(comp.k)) {
      throw std::invalid_argument("make_packet: wavenumbers must be positive");
    }
    require_finite(comp.omega, "make_packet: omega");
    total += std::norm(comp.c);
  }
  if (total <= 0.0 || !std::isfinite(total)) {
    throw std::invalid_argument("make_packet: zero total weight");
  }
  const double inv = 1.0 / std::sqrt(total);
  for (auto& comp : components) {
    comp.c *= inv;
  }
  return {std::move(components)};
}

InstantSplit polychromatic_instant(const PolychromaticPacket& packet,
                                   const ArmGeometry& geom,
                                   const DetectorModel& det, double t) {
  const complex f_a = packet_amplitude(packet, geom.arm_a(), t);
  const complex f_b = packet_amplitude(packet, geom.arm_b(), t);
  const double intensity = std::norm(f_a) + std::norm(f_b);
  if (intensity <= 0.0) {
    return {0.5, 0.5, 0.0};
  }
  // Port-+ rate - port-minus rate; pairing f_A with conj(f_B) puts the
  // overlap argument on the same side as the path-difference phase.
  const double cross = 2.0 * (f_a * std::conj(f_b) * det.overlap_dadb).real();
  const double p_plus = 0.5 * (intensity + cross) / intensity;
  return {p_plus, 1.0 - p_plus, 0.5 * intensity};
}

PortProbabilities polychromatic_avg(const PolychromaticPacket& packet,
                                    double l_ab, const DetectorModel& det) {
  require_finite(l_ab, "polychromatic_avg: l_ab");
  const auto& comps = packet.components;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    for (std::size_t j = i + 1; j < comps.size(); ++j) {
      if (comps[i].omega == comps[j].omega) {
        throw std::invalid_argument(
            "polychromatic_avg: repeated component frequency, cross terms "
            "do not average out");
      }
    }
  }
  const double phi = std::arg(det.overlap_dadb);
  double sum = 0.0;
  for (const auto& comp : comps) {
    sum += std::norm(comp.c) * std::cos(comp.k * l_ab + phi);
  }
  const double osc = det.visibility * sum;
  return {0.5 * (1.0 + osc), 0.5 * (1.0 - osc)};
}

PortProbabilities tie_fringe(const TieInput& tie, double l_ab) {
  require_finite(l_ab, "tie_fringe: l_ab");
  const double c1 = std::cos(tie.k1 * l_ab);
  const double c2 = std::cos(tie.k2 * l_ab);
  return {0.5 * (tie.p1 * (1.0 + c1) + tie.p2 * (1.0 + c2)),
          0.5 * (tie.p1 * (1.0 - c1) + tie.p2 * (1.0 - c2))};
}

JointOutcomeDist joint_outcome_dist(const TieInput& tie,
                                    const ArmGeometry& geom,
                                    const WwBasis& basis) {
  const double n_a = std::norm(basis.tilde_a.a1) + std::norm(basis.tilde_a.a2);
  const double n_b = std::norm(basis.tilde_b.a1) + std::norm(basis.tilde_b.a2);
  const complex cross = overlap(basis.tilde_a, basis.tilde_b);
  if (std::abs(n_a - 1.0) > 1e-9 || std::abs(n_b - 1.0) > 1e-9 ||
      std::abs(cross) > 1e-9) {
    throw std::invalid_argument(
        "joint_outcome_dist: measurement basis must be orthonormal");
  }
  const ArmStates arms = arm_states(tie, geom.arm_a(), geom.arm_b());
  const complex u_aa = overlap(basis.tilde_a, arms.psi_a);
  const complex u_ab = overlap(basis.tilde_a, arms.psi_b);
  const complex u_ba = overlap(basis.tilde_b, arms.psi_a);
  const complex u_bb = overlap(basis.tilde_b, arms.psi_b);
  JointOutcomeDist dist;
  dist.plus_a = 0.25 * std::norm(u_aa + u_ab);
  dist.plus_b = 0.25 * std::norm(u_ba + u_bb);
  dist.minus_a = 0.25 * std::norm(u_aa - u_ab);
  dist.minus_b = 0.25 * std::norm(u_ba - u_bb);
  return dist;
}

bool DensityMatrix2::is_hermitian(double tol) const {
  return std::abs(aa.imag()) <= tol && std::abs(bb.imag()) <= tol &&
         std::abs(ab - std::conj(ba)) <= tol;
}

std::pair<double, double> DensityMatrix2::eigenvalues() const {
  const double mean = 0.5 * (aa.real() + bb.real());
  const double half_gap = 0.5 * (aa.real() - bb.real());
  const double radius = std::sqrt(half_gap * half_gap + std::norm(ab));
  return {mean - radius, mean + radius};
}

namespace {

void require_normalized(const SpinState& s, const char* where) {
  const double n = std::norm(s.a1) + std::norm(s.a2);
  if (std::abs(n - 1.0) > 1e-9) {
    throw std::invalid_argument(std::string(where) +
                                ": state must be normalized");
  }
}

}  // namespace

DensityMatrix2 reduced_density(const SpinState& psi_a, const SpinState& psi_b,
                               double theta) {
  require_finite(theta, "reduced_density: theta");
  require_normalized(psi_a, "reduced_density");
  require_normalized(psi_b, "reduced_density");
  const complex z = overlap(psi_b, psi_a) * std::polar(1.0, theta);
  return {0.5, 0.5 * z, 0.5 * std::conj(z), 0.5};
}

PortProbabilities field_free_fringe(const SpinState& psi_a,
                                    const SpinState& psi_b, double theta) {
  require_finite(theta, "field_free_fringe: theta");
  require_normalized(psi_a, "field_free_fringe");
  require_normalized(psi_b, "field_free_fringe");
  const complex z = overlap(psi_b, psi_a);
  const double osc = (z * std::polar(1.0, theta)).real();
  return {0.5 * (1.0 + osc), 0.5 * (1.0 - osc)};
}

}  // namespace tiemzi
