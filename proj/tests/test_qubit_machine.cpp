#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "qclone/qubit_machine.hpp"
#include "qclone/qudit_machine.hpp"
#include "test_helpers.hpp"

using qclone::BlochState;
using qclone::CloneReport;
using qclone::Complex;
using qclone::ComplexMatrix;
using qclone::MachineKind;
using qclone::MachineParams;
using qclone::SubsystemShape;
using qclone::optimal_mu;

namespace {

constexpr double kPi = std::numbers::pi;

std::mt19937 seeded(unsigned s) { return std::mt19937(s); }

double rand_in(std::mt19937& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace

TEST_CASE("MachineParams enforces the unitarity constraint") {
    const MachineParams p = MachineParams::from_mu(0.3);
    CHECK(std::abs(p.nu * p.nu + 2.0 * p.mu * p.mu - 1.0) < 1e-12);

    CHECK_THROWS_AS(MachineParams::from_mu(-0.1), std::domain_error);
    CHECK_THROWS_AS(MachineParams::from_mu(0.8), std::domain_error);
    CHECK_THROWS_AS(MachineParams(0.5, 0.9, 2), std::invalid_argument);

    // nu = 0 boundary (fully symmetrizing machine) is a valid limit; the
    // double nearest to 1/sqrt(2) sits an ulp below it, so nu is tiny but
    // need not be exactly zero.
    const MachineParams top = MachineParams::from_mu(1.0 / std::sqrt(2.0));
    CHECK(top.nu < 1e-7);
    CHECK(std::abs(top.nu * top.nu + 2.0 * top.mu * top.mu - 1.0) < 1e-12);
}

TEST_CASE("BlochState validates theta and wraps phi") {
    CHECK_THROWS_AS(BlochState(-0.1), std::domain_error);
    CHECK_THROWS_AS(BlochState(kPi + 0.1), std::domain_error);
    const BlochState s(1.0, 2.0 * kPi + 0.5);
    CHECK(std::abs(s.phi - 0.5) < 1e-12);
}

TEST_CASE("build_isometry columns carry the machine amplitudes") {
    // mu = 0 machine copies pole states exactly.
    const ComplexMatrix v0 = build_isometry(MachineParams::from_mu(0.0));
    CHECK(v0(0, 0) == Complex(1.0));
    for (std::size_t i = 1; i < 8; ++i) CHECK(v0(i, 0) == Complex(0.0));

    // mu = 1/2 (nu = 1/sqrt(2)): the |1> column populates |1,1>|1>, |0,1>|0>,
    // |1,0>|0>.
    const ComplexMatrix v = build_isometry(MachineParams::from_mu(0.5));
    CHECK(std::abs(v(7, 1) - Complex(1.0 / std::sqrt(2.0))) < 1e-15);
    CHECK(std::abs(v(2, 1) - Complex(0.5)) < 1e-15);
    CHECK(std::abs(v(4, 1) - Complex(0.5)) < 1e-15);
    CHECK(v(0, 1) == Complex(0.0));

    CHECK_THROWS_AS(build_isometry(MachineParams::from_mu(0.2, 3)), std::invalid_argument);
}

TEST_CASE("build_isometry is an isometry across the whole mu range") {
    for (int i = 0; i <= 40; ++i) {
        const double mu = (1.0 / std::sqrt(2.0)) * i / 40.0;
        const ComplexMatrix v = build_isometry(MachineParams::from_mu(mu));
        CHECK((dagger(v) * v).max_abs_diff(ComplexMatrix::identity(2)) < 1e-12);
    }
}

TEST_CASE("clone on pole states with the trivial machine is exact") {
    const CloneReport rep = clone(BlochState(0.0), MachineParams::from_mu(0.0));
    CHECK(std::abs(rep.fidelity - 1.0) < 1e-15);
    CHECK(std::abs(rep.d1) < 1e-15);
    CHECK(std::abs(rep.d2) < 1e-15);
}

TEST_CASE("clone at the equator with mu = 1/2 reaches the equatorial fidelity") {
    const CloneReport rep = clone(BlochState(kPi / 2.0), MachineParams::from_mu(0.5));
    CHECK(std::abs(rep.fidelity - 0.5 * (1.0 + 1.0 / std::sqrt(2.0))) < 1e-12);
    CHECK(std::abs(rep.d2 - (7.0 / 8.0 - 1.0 / std::sqrt(2.0))) < 1e-12);
}

TEST_CASE("clone output satisfies the report invariants") {
    auto rng = seeded(201);
    for (int trial = 0; trial < 100; ++trial) {
        const BlochState state(rand_in(rng, 0.0, kPi), rand_in(rng, 0.0, 2.0 * kPi));
        const MachineParams params =
            MachineParams::from_mu(rand_in(rng, 0.0, 1.0 / std::sqrt(2.0)));
        const CloneReport rep = clone(state, params);

        CHECK(rep.rho_ab.hermiticity_defect() < 1e-14);
        CHECK(std::abs(rep.rho_ab.trace().real() - 1.0) < 1e-12);
        const auto ev = hermitian_eigenvalues(rep.rho_ab);
        CHECK(ev.front() >= -1e-10);

        CHECK(rep.rho_a.max_abs_diff(rep.rho_b) < 1e-12);
        CHECK(rep.fidelity >= 0.0);
        CHECK(rep.fidelity <= 1.0);
    }
}

TEST_CASE("fidelity_closed matches the printed constants") {
    const MachineParams universal = machine_preset(MachineKind::universal);
    for (double theta : {0.0, 0.4, 1.1, kPi / 2.0, 2.9, kPi})
        CHECK(std::abs(fidelity_closed(theta, universal) - 5.0 / 6.0) < 1e-12);

    const MachineParams equatorial = machine_preset(MachineKind::equatorial);
    CHECK(std::abs(fidelity_closed(kPi / 2.0, equatorial) - 0.5 * (1.0 + 1.0 / std::sqrt(2.0))) <
          1e-15);

    CHECK(std::abs(fidelity_closed(0.0, MachineParams::from_mu(0.0)) - 1.0) < 1e-15);
}

TEST_CASE("d1_closed: universal constant, trivial zero, and the 1/16 value") {
    const MachineParams universal = machine_preset(MachineKind::universal);
    for (double theta : {0.0, 0.7, 1.3, 2.2, kPi})
        CHECK(std::abs(d1_closed(theta, universal) - 19.0 / 324.0) < 1e-12);

    CHECK(std::abs(d1_closed(0.0, MachineParams::from_mu(0.0))) < 1e-15);

    // The polynomial evaluates to 1/16 at the equator with mu = 1/2; the
    // definitional route lands on the same number (not the also-printed 9/64).
    const MachineParams equatorial = machine_preset(MachineKind::equatorial);
    CHECK(std::abs(d1_closed(kPi / 2.0, equatorial) - 0.0625) < 1e-14);
    const CloneReport rep = clone(BlochState(kPi / 2.0), equatorial);
    CHECK(std::abs(rep.d1 - 0.0625) < 1e-12);
}

TEST_CASE("d2_closed matches the printed constants and the oracle") {
    const MachineParams universal = machine_preset(MachineKind::universal);
    for (double theta : {0.0, 0.5, 1.9, kPi})
        CHECK(std::abs(d2_closed(theta, universal) - 2.0 / 9.0) < 1e-12);

    const MachineParams equatorial = machine_preset(MachineKind::equatorial);
    CHECK(std::abs(d2_closed(kPi / 2.0, equatorial) - (7.0 / 8.0 - 1.0 / std::sqrt(2.0))) <
          1e-15);

    const MachineParams p = MachineParams::from_mu(0.37);
    const CloneReport rep = clone(BlochState(0.8), p);
    CHECK(std::abs(d2_closed(0.8, p) - rep.d2) < 1e-12);
}

TEST_CASE("closed forms agree with the definitional oracle on random inputs") {
    auto rng = seeded(202);
    for (int trial = 0; trial < 1000; ++trial) {
        const double theta = rand_in(rng, 0.0, kPi);
        const double phi = rand_in(rng, 0.0, 2.0 * kPi);
        const MachineParams params =
            MachineParams::from_mu(rand_in(rng, 0.0, 1.0 / std::sqrt(2.0)));
        const CloneReport rep = clone(BlochState(theta, phi), params);
        CHECK(std::abs(fidelity_closed(theta, params) - rep.fidelity) < 1e-12);
        CHECK(std::abs(d2_closed(theta, params) - rep.d2) < 1e-12);
        CHECK(std::abs(d1_closed(theta, params) - rep.d1) < 1e-12);
    }
}

TEST_CASE("scalar outputs are invariant under phi shifts") {
    auto rng = seeded(203);
    for (int trial = 0; trial < 50; ++trial) {
        const double theta = rand_in(rng, 0.0, kPi);
        const double phi = rand_in(rng, 0.0, 2.0 * kPi);
        const double delta = rand_in(rng, 0.0, 2.0 * kPi);
        const MachineParams params =
            MachineParams::from_mu(rand_in(rng, 0.0, 1.0 / std::sqrt(2.0)));
        const CloneReport a = clone(BlochState(theta, phi), params);
        const CloneReport b = clone(BlochState(theta, phi + delta), params);
        CHECK(std::abs(a.fidelity - b.fidelity) < 1e-12);
        CHECK(std::abs(a.d1 - b.d1) < 1e-12);
        CHECK(std::abs(a.d2 - b.d2) < 1e-12);
        for (int k = 0; k < 4; ++k)
            CHECK(std::abs(a.ppt_spectrum[k] - b.ppt_spectrum[k]) < 1e-12);
    }
}

TEST_CASE("rho_a matches its closed form") {
    auto rng = seeded(204);
    for (int trial = 0; trial < 1000; ++trial) {
        const BlochState state(rand_in(rng, 0.0, kPi), rand_in(rng, 0.0, 2.0 * kPi));
        const MachineParams params =
            MachineParams::from_mu(rand_in(rng, 0.0, 1.0 / std::sqrt(2.0)));
        const qclone::QuditState as_qudit(2, {state.amp0(), state.amp1()});
        const CloneReport rep = clone(state, params);
        CHECK(rep.rho_a.max_abs_diff(rho_a_closed(as_qudit, params)) < 1e-12);
    }
}

TEST_CASE("optimal_mu at the poles and the equator") {
    const MachineParams at_pole = optimal_mu(0.0);
    CHECK(at_pole.mu == 0.0);
    CHECK(std::abs(fidelity_closed(0.0, at_pole) - 1.0) < 1e-15);

    const MachineParams at_equator = optimal_mu(kPi / 2.0);
    CHECK(std::abs(at_equator.mu - 0.5) < 1e-15);

    CHECK_THROWS_AS(optimal_mu(-0.2), std::domain_error);
    CHECK_THROWS_AS(optimal_mu(kPi + 0.2), std::domain_error);
}

TEST_CASE("optimal_mu agrees with a fine grid search") {
    const double theta = 0.6;
    const MachineParams best = optimal_mu(theta);
    double best_grid_mu = 0.0, best_grid_f = -1.0;
    const double mu_top = 1.0 / std::sqrt(2.0);
    const int steps = 707107;  // ~1e-6 resolution
    for (int i = 0; i <= steps; ++i) {
        const double mu = mu_top * i / steps;
        const double f = fidelity_closed(theta, MachineParams::from_mu(mu));
        if (f > best_grid_f) {
            best_grid_f = f;
            best_grid_mu = mu;
        }
    }
    CHECK(std::abs(best.mu - best_grid_mu) < 1e-5);
}

TEST_CASE("optimal_mu dominates the universal fidelity and is stationary") {
    for (int i = 0; i < 1000; ++i) {
        const double theta = kPi * (i / 999.0);  // factor <= 1 keeps theta <= pi
        CHECK(fidelity_closed(theta, optimal_mu(theta)) >= 5.0 / 6.0 - 1e-12);
    }

    // theta and pi - theta give the same machine.
    for (double theta : {0.3, 0.9, 1.4}) {
        CHECK(std::abs(optimal_mu(theta).mu - optimal_mu(kPi - theta).mu) < 1e-15);
    }

    const double h = 1e-6;
    for (double theta = 0.25; theta < kPi - 0.25; theta += 0.05) {
        const double mu = optimal_mu(theta).mu;
        const double up = fidelity_closed(theta, MachineParams::from_mu(mu + h));
        const double down = fidelity_closed(theta, MachineParams::from_mu(mu - h));
        CHECK(std::abs(up - down) / (2.0 * h) < 1e-4);
    }
}

TEST_CASE("ppt_matrix_closed has unit trace and matches the oracle") {
    const BlochState state(kPi / 3.0, 0.7);
    const MachineParams params = MachineParams::from_mu(0.4);
    const ComplexMatrix t = ppt_matrix_closed(state, params);
    CHECK(std::abs(t.trace().real() - 1.0) < 1e-14);

    const CloneReport rep = clone(state, params);
    const ComplexMatrix oracle = partial_transpose(rep.rho_ab, SubsystemShape{2, 2}, 0);
    CHECK(t.max_abs_diff(oracle) < 1e-12);
}

TEST_CASE("ppt_matrix_closed matches the oracle on random inputs") {
    auto rng = seeded(205);
    for (int trial = 0; trial < 1000; ++trial) {
        const BlochState state(rand_in(rng, 0.0, kPi), rand_in(rng, 0.0, 2.0 * kPi));
        const MachineParams params =
            MachineParams::from_mu(rand_in(rng, 0.0, 1.0 / std::sqrt(2.0)));
        const ComplexMatrix oracle =
            partial_transpose(clone(state, params).rho_ab, SubsystemShape{2, 2}, 0);
        CHECK(ppt_matrix_closed(state, params).max_abs_diff(oracle) < 1e-12);
    }
}

TEST_CASE("PPT minimum vanishes at the north pole for the optimal machine") {
    // With the universal machine the minimum stays at 1/3 - sqrt(5)/6 for
    // every theta; only the theta-tuned machine touches zero at the poles.
    const auto ev_universal = hermitian_eigenvalues(
        ppt_matrix_closed(BlochState(0.0, 1.3), machine_preset(MachineKind::universal)));
    CHECK(std::abs(ev_universal.front() - (1.0 / 3.0 - std::sqrt(5.0) / 6.0)) < 1e-10);

    const auto ev_optimal =
        hermitian_eigenvalues(ppt_matrix_closed(BlochState(0.0, 1.3), optimal_mu(0.0)));
    CHECK(std::abs(ev_optimal.front()) < 1e-9);
}

TEST_CASE("optimal-machine partial transpose: three nonnegative eigenvalues, one marginal") {
    for (int i = 0; i <= 200; ++i) {
        const double theta = kPi * (i / 200.0);
        const CloneReport rep = clone(BlochState(theta), optimal_mu(theta));
        CHECK(rep.ppt_spectrum[0] <= 1e-10);
        CHECK(rep.ppt_spectrum[1] >= -1e-10);
        CHECK(rep.ppt_spectrum[2] >= -1e-10);
        CHECK(rep.ppt_spectrum[3] >= -1e-10);
    }
    for (double theta : {0.0, kPi / 2.0, kPi}) {
        const CloneReport rep = clone(BlochState(theta), optimal_mu(theta));
        CHECK(std::abs(rep.ppt_spectrum[0]) < 1e-9);
    }
}

TEST_CASE("machine_preset values") {
    CHECK(std::abs(machine_preset(MachineKind::universal).mu - 1.0 / std::sqrt(6.0)) < 1e-15);
    CHECK(machine_preset(MachineKind::equatorial).mu == 0.5);
    CHECK(machine_preset(MachineKind::custom, 0.0).nu == 1.0);
    CHECK_THROWS_AS(machine_preset(MachineKind::custom, 0.9), std::domain_error);
}
