// One-parameter symmetric 1->2 qubit cloning machine. The machine acts on
// input (a), blank copy (b) and internal register (x); tracing out x yields
// the two-copy output state. Closed-form fidelity, Hilbert-Schmidt distances
// and the partial-transpose matrix are provided alongside the definitional
// route through the isometry, which serves as the ground truth.

#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "complex_matrix.hpp"
#include "machine_params.hpp"

namespace qclone {

// Pure qubit state as polar angles on the Bloch sphere:
// |n> = cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
struct BlochState {
    double theta;
    double phi;

    explicit BlochState(double theta_, double phi_ = 0.0) : theta(theta_), phi(phi_) {
        if (theta < 0.0 || theta > std::numbers::pi)
            throw std::domain_error("BlochState: theta must lie in [0, pi]");
        // Only e^{i phi} matters; store the representative in [0, 2 pi).
        phi = std::fmod(phi, 2.0 * std::numbers::pi);
        if (phi < 0.0) phi += 2.0 * std::numbers::pi;
    }

    Complex amp0() const { return std::cos(0.5 * theta); }
    Complex amp1() const { return std::polar(std::sin(0.5 * theta), phi); }

    ComplexMatrix ket() const { return ComplexMatrix::column({amp0(), amp1()}); }
};

// Bundled outputs of one cloning evaluation.
struct CloneReport {
    ComplexMatrix rho_ab;                // 4x4 two-copy output state
    ComplexMatrix rho_a;                 // 2x2 marginal of copy a
    ComplexMatrix rho_b;                 // 2x2 marginal of copy b
    double fidelity;                     // <n| rho_a |n>
    double d1;                           // Tr[(rho_ab - rho_a x rho_b)^2]
    double d2;                           // Tr[(rho_ab - ideal)^2]
    std::array<double, 4> ppt_spectrum;  // ascending eigenvalues of rho_ab^{T_a}
};

// 8x2 isometry V of the machine in the a (x) b (x) x product basis, basis
// index |a,b,x> = 4a + 2b + x:
//   |0> -> nu |0,0>|0> + mu (|0,1> + |1,0>) |1>
//   |1> -> nu |1,1>|1> + mu (|0,1> + |1,0>) |0>
inline ComplexMatrix build_isometry(const MachineParams& params) {
    if (params.d != 2)
        throw std::invalid_argument("build_isometry: machine is for qubits (d = 2)");
    ComplexMatrix v(8, 2);
    v(0, 0) = params.nu;  // |0,0>|0>
    v(3, 0) = params.mu;  // |0,1>|1>
    v(5, 0) = params.mu;  // |1,0>|1>
    v(7, 1) = params.nu;  // |1,1>|1>
    v(2, 1) = params.mu;  // |0,1>|0>
    v(4, 1) = params.mu;  // |1,0>|0>
    return v;
}

// Definitional route: isometry -> pure joint state -> partial traces.
inline CloneReport clone(const BlochState& state, const MachineParams& params) {
    const ComplexMatrix v = build_isometry(params);
    const ComplexMatrix psi = state.ket();
    const ComplexMatrix joint = v * psi;
    const ComplexMatrix rho_abx = joint * dagger(joint);

    const SubsystemShape abx{2, 2, 2};
    ComplexMatrix rho_ab = partial_trace(rho_abx, abx, {0, 1});
    const SubsystemShape ab{2, 2};
    ComplexMatrix rho_a = partial_trace(rho_ab, ab, {0});
    ComplexMatrix rho_b = partial_trace(rho_ab, ab, {1});

    const double fidelity = (dagger(psi) * rho_a * psi)(0, 0).real();
    const ComplexMatrix pure = psi * dagger(psi);
    const double d1 = hs_distance_sq(rho_ab, kron(rho_a, rho_b));
    const double d2 = hs_distance_sq(rho_ab, kron(pure, pure));

    const auto ev = hermitian_eigenvalues(partial_transpose(rho_ab, ab, 0));
    CloneReport report{std::move(rho_ab), std::move(rho_a), std::move(rho_b),
                       fidelity,          d1,               d2,
                       {ev[0], ev[1], ev[2], ev[3]}};
    return report;
}

// F(theta) = 1/2 + mu nu + (nu^2/2 - mu nu) cos^2(theta). Independent of phi.
inline double fidelity_closed(double theta, const MachineParams& params) {
    const double c2 = std::cos(theta) * std::cos(theta);
    return 0.5 + params.mu * params.nu +
           (0.5 * params.nu * params.nu - params.mu * params.nu) * c2;
}

// Degree-4 polynomial in u = cos^2(theta/2) for the two-copy product
// distance D1.
inline double d1_closed(double theta, const MachineParams& params) {
    const double m2 = params.mu * params.mu;
    const double m4 = m2 * m2;
    const double m6 = m4 * m2;
    const double m8 = m4 * m4;
    const double a8 = 576.0 * m8 - 768.0 * m6 + 352.0 * m4 - 64.0 * m2 + 4.0;
    const double a6 = -1152.0 * m8 + 1536.0 * m6 - 704.0 * m4 + 128.0 * m2 - 8.0;
    const double a4 = 672.0 * m8 - 928.0 * m6 + 424.0 * m4 - 72.0 * m2 + 4.0;
    const double a2 = -96.0 * m8 + 160.0 * m6 - 72.0 * m4 + 8.0 * m2;
    const double a0 = 4.0 * m8 + 2.0 * m4;
    const double c = std::cos(0.5 * theta);
    const double u = c * c;
    return (((a8 * u + a6) * u + a4) * u + a2) * u + a0;
}

// D2(theta) = 8 mu^4 - (6 mu^4 + mu^2 + 2 mu nu - 1) sin^2(theta).
inline double d2_closed(double theta, const MachineParams& params) {
    const double m2 = params.mu * params.mu;
    const double m4 = m2 * m2;
    const double s = std::sin(theta);
    return 8.0 * m4 - (6.0 * m4 + m2 + 2.0 * params.mu * params.nu - 1.0) * s * s;
}

// The fidelity-maximizing machine for a fixed polar angle. The stationary
// points are mu^2 = (1 +/- r)/4 with r = cos^2(theta) / sqrt(cos^4(theta)
// + 2 sin^4(theta)), which is the tan^4 form rewritten so it stays finite
// at theta = pi/2 (where both branches collapse to mu^2 = 1/4). Both
// branches are evaluated and the larger fidelity wins.
inline MachineParams optimal_mu(double theta) {
    if (theta < 0.0 || theta > std::numbers::pi)
        throw std::domain_error("optimal_mu: theta must lie in [0, pi]");
    const double c2 = std::cos(theta) * std::cos(theta);
    const double s2 = std::sin(theta) * std::sin(theta);
    const double r = c2 / std::sqrt(c2 * c2 + 2.0 * s2 * s2);
    const MachineParams minus = MachineParams::from_mu(std::sqrt(0.25 * (1.0 - r)));
    const MachineParams plus = MachineParams::from_mu(std::sqrt(0.25 * (1.0 + r)));
    return fidelity_closed(theta, minus) >= fidelity_closed(theta, plus) ? minus : plus;
}

// Partial transpose of the two-copy output on party a, built entry by entry
// from its closed form.
inline ComplexMatrix ppt_matrix_closed(const BlochState& state, const MachineParams& params) {
    const double c = std::cos(0.5 * state.theta);
    const double s = std::sin(0.5 * state.theta);
    const double n2 = params.nu * params.nu;
    const double m2 = params.mu * params.mu;
    const Complex e = std::polar(1.0, state.phi);
    const Complex w = params.mu * params.nu * s * c * e;             // mu nu e^{+i phi} sc
    const Complex wbar = params.mu * params.nu * s * c * std::conj(e);

    ComplexMatrix t(4, 4);
    t(0, 0) = n2 * c * c; t(0, 1) = wbar; t(0, 2) = w;    t(0, 3) = m2;
    t(1, 0) = w;          t(1, 1) = m2;   t(1, 2) = 0.0;  t(1, 3) = w;
    t(2, 0) = wbar;       t(2, 1) = 0.0;  t(2, 2) = m2;   t(2, 3) = wbar;
    t(3, 0) = m2;         t(3, 1) = wbar; t(3, 2) = w;    t(3, 3) = n2 * s * s;
    return t;
}

enum class MachineKind { universal, equatorial, optimal, custom };

// Presets: universal (mu = 1/sqrt(6), state-independent outputs), equatorial
// (mu = 1/2, best on the Bloch equator), optimal (arg = theta), custom
// (arg = mu).
inline MachineParams machine_preset(MachineKind kind, double arg = 0.0) {
    switch (kind) {
        case MachineKind::universal:
            return MachineParams::from_mu(1.0 / std::sqrt(6.0));
        case MachineKind::equatorial:
            return MachineParams::from_mu(0.5);
        case MachineKind::optimal:
            return optimal_mu(arg);
        case MachineKind::custom:
            return MachineParams::from_mu(arg);
    }
    throw std::invalid_argument("machine_preset: unknown kind");
}

}  // namespace qclone
