#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include <tiemzi/interferometry.hpp>
#include <tiemzi/states.hpp>

using namespace tiemzi;

namespace {

constexpr double pi = 3.14159265358979323846;

TieInput random_tie(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> angle(-pi, pi);
  const double p1 = unit(gen);
  const complex c1 = std::polar(std::sqrt(p1), angle(gen));
  const complex c2 = std::polar(std::sqrt(1.0 - p1), angle(gen));
  const double k1 = 0.25 + 2.0 * unit(gen);
  return make_tie_input(c1, c2, k1, (1.0 + 7.0 * unit(gen)) * k1);
}

// Brute-force joint (port, outcome) probabilities computed from first
// principles with raw complex arithmetic: plane-wave arm states, the
// measurement pair (1, +-i e^{i Phi})/sqrt(2), and a balanced merger.
// Shares no code with the library implementation.
std::array<double, 4> brute_force_joint(const TieInput& tie, double arm_a,
                                        double arm_b, double l_a_ref,
                                        double l_b_ref) {
  const complex i_unit{0.0, 1.0};
  const auto psi = [&](double l) {
    return std::array<complex, 2>{
        tie.c1 * std::exp(i_unit * tie.k1 * l),
        tie.c2 * std::exp(i_unit * tie.k2 * l)};
  };
  const auto psi_a = psi(arm_a);
  const auto psi_b = psi(arm_b);
  const double phi = (tie.k2 - tie.k1) * (l_a_ref + l_b_ref) / 2.0 +
                     std::arg(std::conj(tie.c1) * tie.c2);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const std::array<complex, 2> tilde_a{
      complex{inv_sqrt2, 0.0}, i_unit * std::exp(i_unit * phi) * inv_sqrt2};
  const std::array<complex, 2> tilde_b{
      complex{inv_sqrt2, 0.0}, -i_unit * std::exp(i_unit * phi) * inv_sqrt2};
  const auto inner = [](const std::array<complex, 2>& bra,
                        const std::array<complex, 2>& ket) {
    return std::conj(bra[0]) * ket[0] + std::conj(bra[1]) * ket[1];
  };
  std::array<double, 4> out{};  // plus_a, plus_b, minus_a, minus_b
  int slot = 0;
  for (const double sign : {+1.0, -1.0}) {
    for (const auto& tilde : {tilde_a, tilde_b}) {
      const complex amp =
          0.5 * (inner(tilde, psi_a) + sign * inner(tilde, psi_b));
      out[slot++] = std::norm(amp);
    }
  }
  return out;
}

}  // namespace

TEST_SUITE("interferometry") {

TEST_CASE("arm geometry shifts the difference and preserves the sum") {
  const ArmGeometry geom = make_arm_geometry(2.0, 0.5, 0.25);
  CHECK(geom.l_ab0() == 1.5);
  CHECK(geom.l_ab() == 1.75);
  CHECK(geom.arm_a() - geom.arm_b() == doctest::Approx(1.75).epsilon(1e-15));
  CHECK(geom.arm_a() + geom.arm_b() == doctest::Approx(2.5).epsilon(1e-15));
  CHECK_THROWS_AS(
      make_arm_geometry(std::numeric_limits<double>::infinity(), 0.0, 0.0),
      std::invalid_argument);
}

TEST_CASE("detector models keep the duality identity") {
  const DetectorModel ideal = make_detector_from_overlap({1.0, 0.0});
  CHECK(ideal.visibility == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(ideal.distinguishability == doctest::Approx(0.0).epsilon(1e-15));

  const DetectorModel marked = make_detector_from_overlap({0.0, 0.0});
  CHECK(marked.distinguishability == doctest::Approx(1.0).epsilon(1e-15));

  std::mt19937_64 gen(21);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> angle(-pi, pi);
  for (int i = 0; i < 200; ++i) {
    const DetectorModel det =
        make_detector_from_overlap(std::polar(unit(gen), angle(gen)));
    CHECK(det.distinguishability * det.distinguishability +
              det.visibility * det.visibility ==
          doctest::Approx(1.0).epsilon(1e-12));
  }

  const DetectorModel from_alpha = make_detector_from_alpha(std::acos(0.9));
  CHECK(from_alpha.distinguishability == doctest::Approx(0.9).epsilon(1e-14));
  CHECK(from_alpha.visibility ==
        doctest::Approx(std::sqrt(0.19)).epsilon(1e-14));

  CHECK_THROWS_AS(make_detector_from_overlap({1.5, 0.0}),
                  std::invalid_argument);
}

TEST_CASE("standard fringe evaluates the baseline two-path formula") {
  const PortProbabilities full = standard_fringe(1.0, 0.0);
  CHECK(full.p_plus == 1.0);
  CHECK(full.p_minus == 0.0);

  const PortProbabilities blind = standard_fringe(0.0, 1.234);
  CHECK(blind.p_plus == 0.5);
  CHECK(blind.p_minus == 0.5);

  const PortProbabilities mid = standard_fringe(0.5, pi / 3.0);
  CHECK(mid.p_plus == doctest::Approx(0.625).epsilon(1e-14));
  CHECK(mid.p_minus == doctest::Approx(0.375).epsilon(1e-14));

  CHECK_THROWS_AS(standard_fringe(1.5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(standard_fringe(-0.1, 0.0), std::invalid_argument);
}

TEST_CASE("unbalanced fringe tracks small shifts about the nominal point") {
  const PortProbabilities node = unbalanced_fringe(0.7, 1.0, pi / 2.0, 0.0);
  CHECK(node.p_plus == doctest::Approx(0.5).epsilon(1e-14));

  const PortProbabilities crest =
      unbalanced_fringe(1.0, 1.0, pi / 2.0, -pi / 2.0);
  CHECK(crest.p_plus == doctest::Approx(1.0).epsilon(1e-14));

  const double v_tilde = std::sqrt(0.19);
  const PortProbabilities shifted =
      unbalanced_fringe(v_tilde, 1.0, pi / 2.0, 0.01);
  CHECK(shifted.p_plus ==
        doctest::Approx(0.5 - 0.5 * v_tilde * std::sin(0.01)).epsilon(1e-14));
  CHECK(shifted.p_plus == doctest::Approx(0.49782).epsilon(1e-4));
}

TEST_CASE("tie fringe matches the two-cosine form and its anchor points") {
  const TieInput tie = tie_from_populations(0.5, 3.0);
  CHECK(tie_fringe(tie, 0.0).p_plus == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(tie_fringe(tie, pi).p_plus == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(tie_fringe(tie, pi / 2.0).p_plus ==
        doctest::Approx(0.5).epsilon(1e-14));

  std::mt19937_64 gen(22);
  std::uniform_real_distribution<double> length(-10.0, 10.0);
  for (int i = 0; i < 300; ++i) {
    const TieInput t = random_tie(gen);
    const double l = length(gen);
    const PortProbabilities p = tie_fringe(t, l);
    const double expected =
        t.p1 * 0.5 * (1.0 + std::cos(t.k1 * l)) +
        t.p2 * 0.5 * (1.0 + std::cos(t.k2 * l));
    CHECK(p.p_plus == doctest::Approx(expected).epsilon(1e-13));
    CHECK(p.p_plus + p.p_minus == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(p.p_plus >= -1e-15);
    CHECK(p.p_plus <= 1.0 + 1e-15);
  }
}

TEST_CASE("tie fringe with equal wavenumbers degenerates to the standard") {
  const TieInput tie =
      make_tie_input({0.6, 0.1}, std::polar(std::sqrt(1.0 - 0.37), 0.9), 1.7,
                     1.7);
  for (const double l : {0.0, 0.3, 1.1, 2.9, -4.2}) {
    const PortProbabilities a = tie_fringe(tie, l);
    const PortProbabilities b = standard_fringe(1.0, 1.7 * l);
    CHECK(a.p_plus == doctest::Approx(b.p_plus).epsilon(1e-14));
  }
}

TEST_CASE("tie fringe spans the full unit interval at the design ratio") {
  const TieInput tie = tie_from_populations(0.5, 3.0);
  double lo = 1.0, hi = 0.0;
  const int n = 1000;
  for (int i = 0; i <= n; ++i) {
    const double l = 2.0 * pi * i / n;
    const double p = tie_fringe(tie, l).p_plus;
    lo = std::min(lo, p);
    hi = std::max(hi, p);
  }
  CHECK(lo <= 1e-9);
  CHECK(hi >= 1.0 - 1e-9);
}

TEST_CASE("joint outcome distribution matches the brute-force amplitudes") {
  std::mt19937_64 gen(23);
  std::uniform_real_distribution<double> length(-6.0, 6.0);
  for (int i = 0; i < 1000; ++i) {
    const TieInput tie = random_tie(gen);
    const double l_a0 = length(gen);
    const double l_b0 = length(gen);
    const double delta = 0.25 * length(gen);
    const ArmGeometry geom = make_arm_geometry(l_a0, l_b0, delta);
    // Alternate matched and mismatched measurement references.
    const double ref_a = (i % 2 == 0) ? geom.arm_a() : length(gen);
    const double ref_b = (i % 2 == 0) ? geom.arm_b() : length(gen);
    const WwBasis basis = ww_basis(tie, ref_a, ref_b);
    const JointOutcomeDist joint = joint_outcome_dist(tie, geom, basis);
    const auto oracle =
        brute_force_joint(tie, geom.arm_a(), geom.arm_b(), ref_a, ref_b);
    CHECK(joint.plus_a == doctest::Approx(oracle[0]).epsilon(1e-12));
    CHECK(joint.plus_b == doctest::Approx(oracle[1]).epsilon(1e-12));
    CHECK(joint.minus_a == doctest::Approx(oracle[2]).epsilon(1e-12));
    CHECK(joint.minus_b == doctest::Approx(oracle[3]).epsilon(1e-12));

    const double total =
        joint.plus_a + joint.plus_b + joint.minus_a + joint.minus_b;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

    // Port marginal reproduces the fringe for any orthonormal basis.
    const PortProbabilities fringe = tie_fringe(tie, geom.l_ab());
    CHECK(joint.p_plus() == doctest::Approx(fringe.p_plus).epsilon(1e-12));
    CHECK(joint.p_minus() == doctest::Approx(fringe.p_minus).epsilon(1e-12));
  }
}

TEST_CASE("joint outcome marginals are unbiased with matched references") {
  std::mt19937_64 gen(24);
  std::uniform_real_distribution<double> length(-6.0, 6.0);
  for (int i = 0; i < 300; ++i) {
    const TieInput tie = random_tie(gen);
    const ArmGeometry geom =
        make_arm_geometry(length(gen), length(gen), 0.25 * length(gen));
    const WwBasis basis = ww_basis(tie, geom.arm_a(), geom.arm_b());
    const JointOutcomeDist joint = joint_outcome_dist(tie, geom, basis);
    CHECK(joint.outcome_a() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(joint.outcome_b() == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("joint outcome distribution special points") {
  const TieInput tie = tie_from_populations(0.5, 3.0);

  // Zero path difference carries no which-way information.
  const ArmGeometry balanced = make_arm_geometry(1.1, 1.1, 0.0);
  const WwBasis basis0 = ww_basis(tie, balanced.arm_a(), balanced.arm_b());
  const JointOutcomeDist j0 = joint_outcome_dist(tie, balanced, basis0);
  CHECK(j0.plus_a == doctest::Approx(j0.plus_b).epsilon(1e-13));
  CHECK(j0.minus_a == doctest::Approx(j0.minus_b).epsilon(1e-13));

  // Design point: full contrast.  The outcome marginal of the two-path
  // distribution stays 1/2, while an atom on a single unblocked path
  // triggers its own outcome with certainty.
  const ArmGeometry design = make_arm_geometry(pi / 2.0, 0.0, 0.0);
  const WwBasis basis1 = ww_basis(tie, design.arm_a(), design.arm_b());
  const JointOutcomeDist j1 = joint_outcome_dist(tie, design, basis1);
  CHECK(j1.outcome_a() == doctest::Approx(0.5).epsilon(1e-13));
  const ArmStates arms1 = arm_states(tie, design.arm_a(), design.arm_b());
  CHECK(std::norm(overlap(basis1.tilde_a, arms1.psi_a)) ==
        doctest::Approx(1.0).epsilon(1e-13));
  CHECK(std::norm(overlap(basis1.tilde_b, arms1.psi_b)) ==
        doctest::Approx(1.0).epsilon(1e-13));

  // A non-orthonormal basis is rejected.
  WwBasis bad = basis1;
  bad.tilde_b = bad.tilde_a;
  CHECK_THROWS_AS(joint_outcome_dist(tie, design, bad), std::invalid_argument);
}

TEST_CASE("instantaneous polychromatic split reduces to the standard fringe") {
  const PolychromaticPacket mono = make_packet({{{1.0, 0.0}, 1.3, 2.0}});
  const DetectorModel ideal = make_detector_from_overlap({1.0, 0.0});
  std::mt19937_64 gen(25);
  std::uniform_real_distribution<double> length(-5.0, 5.0);
  for (int i = 0; i < 100; ++i) {
    const ArmGeometry geom =
        make_arm_geometry(length(gen), length(gen), 0.0);
    const double t = length(gen);
    const InstantSplit split = polychromatic_instant(mono, geom, ideal, t);
    const PortProbabilities expected = standard_fringe(1.0, 1.3 * geom.l_ab());
    CHECK(split.p_plus == doctest::Approx(expected.p_plus).epsilon(1e-12));
    CHECK(split.rate == doctest::Approx(1.0).epsilon(1e-12));
  }

  // Full which-way marking suppresses interference at every instant.
  const DetectorModel marked = make_detector_from_overlap({0.0, 0.0});
  const PolychromaticPacket duo = make_packet(
      {{{1.0 / std::sqrt(2.0), 0.0}, 1.0, 1.0},
       {{1.0 / std::sqrt(2.0), 0.0}, 2.0, 2.3}});
  for (const double t : {0.0, 0.7, 3.9}) {
    const InstantSplit split = polychromatic_instant(
        duo, make_arm_geometry(1.0, 0.3, 0.0), marked, t);
    CHECK(split.p_plus == doctest::Approx(0.5).epsilon(1e-13));
  }
}

TEST_CASE("time-averaged polychromatic split matches the closed form") {
  const PortProbabilities one =
      polychromatic_avg(make_packet({{{1.0, 0.0}, 1.0, 1.0}}), 0.0,
                        make_detector_from_overlap({1.0, 0.0}));
  CHECK(one.p_plus == doctest::Approx(1.0).epsilon(1e-14));

  const PolychromaticPacket duo = make_packet(
      {{{1.0 / std::sqrt(2.0), 0.0}, 1.0, 1.0},
       {{1.0 / std::sqrt(2.0), 0.0}, 2.0, 2.7}});
  const PortProbabilities blind =
      polychromatic_avg(duo, 0.0, make_detector_from_overlap({0.0, 0.0}));
  CHECK(blind.p_plus == doctest::Approx(0.5).epsilon(1e-14));

  // Components at phases 0 and pi cancel exactly.
  const PolychromaticPacket cancel = make_packet(
      {{{1.0 / std::sqrt(2.0), 0.0}, 1.0, 1.0},
       {{1.0 / std::sqrt(2.0), 0.0}, 2.0, 1.5}});
  const PortProbabilities split =
      polychromatic_avg(cancel, pi, make_detector_from_overlap({1.0, 0.0}));
  CHECK(split.p_plus == doctest::Approx(0.5).epsilon(1e-13));

  // Repeated frequencies break the averaging assumption.
  const PolychromaticPacket degenerate = make_packet(
      {{{1.0 / std::sqrt(2.0), 0.0}, 1.0, 1.0},
       {{1.0 / std::sqrt(2.0), 0.0}, 2.0, 1.0}});
  CHECK_THROWS_AS(
      polychromatic_avg(degenerate, 0.0, make_detector_from_overlap({1.0, 0.0})),
      std::invalid_argument);
}

TEST_CASE("rate-weighted time average converges to the closed form") {
  // Two equal-weight components; average over many beat periods with
  // trapezoidal quadrature, weighting each instant by its arrival rate.
  const PolychromaticPacket packet = make_packet(
      {{{1.0 / std::sqrt(2.0), 0.0}, 1.0, 1.0},
       {{1.0 / std::sqrt(2.0), 0.0}, 3.0, 1.8}});
  const DetectorModel det =
      make_detector_from_overlap(std::polar(0.85, 0.4));
  const ArmGeometry geom = make_arm_geometry(1.2, 0.5, 0.0);

  const double beat = 2.0 * pi / std::abs(1.8 - 1.0);
  const double window = 500.0 * beat;
  const int steps = 40000;
  double num = 0.0;
  double den = 0.0;
  for (int i = 0; i <= steps; ++i) {
    const double t = window * i / steps;
    const double w = (i == 0 || i == steps) ? 0.5 : 1.0;
    const InstantSplit split = polychromatic_instant(packet, geom, det, t);
    num += w * split.rate * split.p_plus;
    den += w * split.rate;
  }
  const PortProbabilities closed = polychromatic_avg(packet, geom.l_ab(), det);
  CHECK(num / den == doctest::Approx(closed.p_plus).epsilon(0.01));
}

TEST_CASE("reduced density matrix has the analytic eigenvalues") {
  const TieInput tie = tie_from_populations(0.5, 3.0);

  // Identical arm states: a pure path state.
  const ArmStates same = arm_states(tie, 0.8, 0.8);
  const DensityMatrix2 pure = reduced_density(same.psi_a, same.psi_b, 0.0);
  CHECK(pure.aa.real() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(pure.ab.real() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(pure.ab.imag() == doctest::Approx(0.0).epsilon(1e-14));
  const auto [lo_pure, hi_pure] = pure.eigenvalues();
  CHECK(lo_pure == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(hi_pure == doctest::Approx(1.0).epsilon(1e-13));

  // Orthogonal arm states: maximally mixed.
  const ArmStates ortho = arm_states(tie, pi / 2.0, 0.0);
  const DensityMatrix2 mixed = reduced_density(ortho.psi_a, ortho.psi_b, 0.3);
  CHECK(std::abs(mixed.ab) < 1e-14);
  const auto [lo_mixed, hi_mixed] = mixed.eigenvalues();
  CHECK(lo_mixed == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(hi_mixed == doctest::Approx(0.5).epsilon(1e-13));

  std::mt19937_64 gen(26);
  std::uniform_real_distribution<double> length(-6.0, 6.0);
  std::uniform_real_distribution<double> angle(-pi, pi);
  for (int i = 0; i < 300; ++i) {
    const TieInput t = random_tie(gen);
    const ArmStates arms = arm_states(t, length(gen), length(gen));
    const double theta = angle(gen);
    const DensityMatrix2 rho = reduced_density(arms.psi_a, arms.psi_b, theta);
    CHECK(rho.trace_real() == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(rho.is_hermitian(1e-12));

    // Independent eigenvalue oracle: roots of the characteristic polynomial
    // of [[a, b], [conj(b), d]].
    const double a = rho.aa.real();
    const double d = rho.bb.real();
    const double radius =
        0.5 * std::sqrt((a - d) * (a - d) + 4.0 * std::norm(rho.ab));
    const double mean = 0.5 * (a + d);
    const auto [lo, hi] = rho.eigenvalues();
    CHECK(lo == doctest::Approx(mean - radius).epsilon(1e-12));
    CHECK(hi == doctest::Approx(mean + radius).epsilon(1e-12));
    CHECK(lo >= -1e-12);

    // The spectrum is set by the arm-state overlap alone.
    const double z = std::abs(overlap(arms.psi_b, arms.psi_a));
    CHECK(hi == doctest::Approx(0.5 * (1.0 + z)).epsilon(1e-12));
  }
}

TEST_CASE("field-free fringe contrast equals the arm-state overlap") {
  const TieInput tie = tie_from_populations(0.5, 3.0);
  const ArmStates same = arm_states(tie, 0.4, 0.4);
  const PortProbabilities full = field_free_fringe(same.psi_a, same.psi_b, 0.0);
  CHECK(full.p_plus == doctest::Approx(1.0).epsilon(1e-14));

  const ArmStates ortho = arm_states(tie, pi / 2.0, 0.0);
  for (const double theta : {0.0, 0.9, 2.8}) {
    const PortProbabilities p =
        field_free_fringe(ortho.psi_a, ortho.psi_b, theta);
    CHECK(p.p_plus == doctest::Approx(0.5).epsilon(1e-14));
  }

  std::mt19937_64 gen(27);
  std::uniform_real_distribution<double> length(-6.0, 6.0);
  for (int i = 0; i < 100; ++i) {
    const TieInput t = random_tie(gen);
    const ArmStates arms = arm_states(t, length(gen), length(gen));
    const complex z = overlap(arms.psi_b, arms.psi_a);

    // Scan theta; include the analytic extremes so both bounds are exact.
    double hi = 0.0, lo = 1.0;
    const int n = 4096;
    for (int j = 0; j <= n + 2; ++j) {
      const double theta = j <= n     ? 2.0 * pi * j / n
                           : j == n + 1 ? -std::arg(z)
                                        : -std::arg(z) + pi;
      const double p = field_free_fringe(arms.psi_a, arms.psi_b, theta).p_plus;
      hi = std::max(hi, p);
      lo = std::min(lo, p);
    }
    const double contrast = (hi - lo) / (hi + lo);
    CHECK(contrast == doctest::Approx(std::abs(z)).epsilon(1e-9));
  }
}

}  // TEST_SUITE
