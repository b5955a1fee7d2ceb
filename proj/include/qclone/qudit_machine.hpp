// d-level generalization of the cloning machine: |j> -> nu |j,j>|j>
// + mu sum_{l != j} (|j,l> + |l,j>) |l>, with nu^2 + 2(d-1) mu^2 = 1.
// The single-copy output depends on the input state only through
// A_psi = sum_k |alpha_k|^4, which is also expressible through the
// diagonal Cartan generators of SU(d). The qutrit optimum has a closed
// form; other dimensions are optimized numerically.

#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "complex_matrix.hpp"
#include "golden_section.hpp"
#include "machine_params.hpp"

namespace qclone {

inline constexpr double kStateNormTol = 1e-12;

// Pure d-level state |psi> = sum_j alpha_j |j>.
struct QuditState {
    int d;
    std::vector<Complex> amplitudes;

    QuditState(int d_, std::vector<Complex> amps) : d(d_), amplitudes(std::move(amps)) {
        if (d < 2) throw std::domain_error("QuditState: d must be >= 2");
        if (static_cast<int>(amplitudes.size()) != d)
            throw std::invalid_argument("QuditState: amplitude count does not match d");
        double n = 0.0;
        for (const Complex& a : amplitudes) n += std::norm(a);
        if (std::abs(n - 1.0) > kStateNormTol)
            throw std::invalid_argument("QuditState: amplitudes are not normalized");
    }

    // Rescales an arbitrary nonzero amplitude vector to unit norm.
    static QuditState normalized(int d, std::vector<Complex> amps) {
        double n = 0.0;
        for (const Complex& a : amps) n += std::norm(a);
        if (n <= 0.0) throw std::invalid_argument("QuditState: zero amplitude vector");
        const double scale = 1.0 / std::sqrt(n);
        for (Complex& a : amps) a *= scale;
        return QuditState(d, std::move(amps));
    }

    static QuditState basis(int d, int j) {
        if (j < 0 || j >= d) throw std::domain_error("QuditState: basis index out of range");
        std::vector<Complex> amps(d, 0.0);
        amps[j] = 1.0;
        return QuditState(d, std::move(amps));
    }

    // All |alpha_k|^2 = 1/d.
    static QuditState equatorial(int d) {
        if (d < 2) throw std::domain_error("QuditState: d must be >= 2");
        return QuditState(d, std::vector<Complex>(d, 1.0 / std::sqrt(double(d))));
    }

    ComplexMatrix ket() const { return ComplexMatrix::column(amplitudes); }
};

// General qutrit: cos(theta)|0> + sin(theta)cos(phi) e^{i alpha}|1>
// + sin(theta)sin(phi) e^{i beta}|2>.
inline QuditState qutrit_state(double theta, double phi, double alpha, double beta) {
    const double ct = std::cos(theta), st = std::sin(theta);
    return QuditState(3, {Complex(ct, 0.0),
                          std::polar(st * std::cos(phi), alpha),
                          std::polar(st * std::sin(phi), beta)});
}

// Diagonal Cartan generators of SU(d), normalized to tr(H_i H_j) = delta_ij:
// H_k = diag(1, ..., 1, -k, 0, ..., 0) / sqrt(k(k+1)) with k leading ones.
struct CartanSet {
    int d;
    std::vector<ComplexMatrix> generators;  // H_1 .. H_{d-1}

    static CartanSet make(int d) {
        if (d < 2) throw std::domain_error("CartanSet: d must be >= 2");
        CartanSet set{d, {}};
        for (int k = 1; k < d; ++k) {
            std::vector<double> diag(d, 0.0);
            const double scale = 1.0 / std::sqrt(double(k) * (k + 1));
            for (int i = 0; i < k; ++i) diag[i] = scale;
            diag[k] = -double(k) * scale;
            set.generators.push_back(ComplexMatrix::diagonal(diag));
        }
        return set;
    }
};

// d^3 x d isometry in the a (x) b (x) x product basis, |a,b,x> = a d^2 + b d + x.
inline ComplexMatrix build_isometry_d(const MachineParams& params) {
    const int d = params.d;
    const std::size_t dd = static_cast<std::size_t>(d);
    ComplexMatrix v(dd * dd * dd, dd);
    for (int j = 0; j < d; ++j) {
        v((j * d + j) * dd + j, j) = params.nu;  // |j,j>|j>
        for (int l = 0; l < d; ++l) {
            if (l == j) continue;
            v((j * d + l) * dd + l, j) = params.mu;  // |j,l>|l>
            v((l * d + j) * dd + l, j) = params.mu;  // |l,j>|l>
        }
    }
    return v;
}

// Single-copy output state, closed form:
// rho_a = mu^2 1 + ((d-2) mu^2 + 2 mu nu)|psi><psi|
//       + (nu^2 - 2 mu nu) sum_l |alpha_l|^2 |l><l|.
inline ComplexMatrix rho_a_closed(const QuditState& state, const MachineParams& params) {
    if (state.d != params.d)
        throw std::invalid_argument("rho_a_closed: state and machine dimensions differ");
    const int d = params.d;
    const double m2 = params.mu * params.mu;
    const double proj_weight = (d - 2) * m2 + 2.0 * params.mu * params.nu;
    const double diag_weight = params.nu * params.nu - 2.0 * params.mu * params.nu;

    ComplexMatrix rho(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j)
            rho(i, j) = proj_weight * state.amplitudes[i] * std::conj(state.amplitudes[j]);
        rho(i, i) += m2 + diag_weight * std::norm(state.amplitudes[i]);
    }
    return rho;
}

// A_psi = sum_k |alpha_k|^4, in [1/d, 1].
inline double a_psi(const QuditState& state) {
    double a = 0.0;
    for (const Complex& amp : state.amplitudes) {
        const double p = std::norm(amp);
        a += p * p;
    }
    return a;
}

// The same quantity through Cartan expectation values:
// A_psi = 1/d + sum_k <H_k>^2.
inline double a_psi_from_cartan(const QuditState& state, const CartanSet& cartan) {
    if (state.d != cartan.d)
        throw std::invalid_argument("a_psi_from_cartan: dimension mismatch");
    double a = 1.0 / state.d;
    for (const ComplexMatrix& h : cartan.generators) {
        double expectation = 0.0;
        for (int i = 0; i < state.d; ++i)
            expectation += h(i, i).real() * std::norm(state.amplitudes[i]);
        a += expectation * expectation;
    }
    return a;
}

// F = (d-1) mu^2 + 2 mu nu + (nu^2 - 2 mu nu) A.
inline double fidelity_qudit_closed(double a, const MachineParams& params) {
    if (a < 1.0 / params.d - kStateNormTol || a > 1.0 + kStateNormTol)
        throw std::domain_error("fidelity_qudit_closed: A outside [1/d, 1]");
    return (params.d - 1) * params.mu * params.mu + 2.0 * params.mu * params.nu +
           (params.nu * params.nu - 2.0 * params.mu * params.nu) * a;
}

// Both stationary branches mu^2 = (1 +/- sqrt(eta/(eta+4)))/8 of the qutrit
// optimization at fixed A, with eta = (1-2A)^2/(1-A)^2. Which sign maximizes
// the fidelity depends on A (they cross at A = 1/2, where eta = 0).
struct QutritOptimum {
    MachineParams plus_branch;
    MachineParams minus_branch;
    double fidelity_plus;
    double fidelity_minus;

    const MachineParams& best() const {
        return fidelity_plus >= fidelity_minus ? plus_branch : minus_branch;
    }
    double best_fidelity() const { return std::max(fidelity_plus, fidelity_minus); }
};

inline QutritOptimum qutrit_branch_optima(double a) {
    if (a < 1.0 / 3.0 - kStateNormTol || a > 1.0 + kStateNormTol)
        throw std::domain_error("qutrit_branch_optima: A outside [1/3, 1]");
    // eta diverges as A -> 1; the branch factor sqrt(eta/(eta+4)) tends to 1,
    // so the limit is taken directly (minus branch then gives mu = 0, F = 1).
    double s;
    if (a >= 1.0 - 1e-15) {
        s = 1.0;
    } else {
        const double eta = (1.0 - 2.0 * a) * (1.0 - 2.0 * a) / ((1.0 - a) * (1.0 - a));
        s = std::sqrt(eta / (eta + 4.0));
    }
    MachineParams plus = MachineParams::from_mu(std::sqrt((1.0 + s) / 8.0), 3);
    MachineParams minus = MachineParams::from_mu(std::sqrt((1.0 - s) / 8.0), 3);
    const double fp = fidelity_qudit_closed(a, plus);
    const double fm = fidelity_qudit_closed(a, minus);
    return QutritOptimum{std::move(plus), std::move(minus), fp, fm};
}

inline MachineParams optimal_mu_qutrit(double a) { return qutrit_branch_optima(a).best(); }

// Numeric optimum for arbitrary d: golden-section search of the closed-form
// fidelity over mu in [0, mu_max(d)] down to a 1e-10 bracket.
inline MachineParams optimal_mu_numeric(int d, double a) {
    if (d < 2) throw std::domain_error("optimal_mu_numeric: d must be >= 2");
    if (a < 1.0 / d - kStateNormTol || a > 1.0 + kStateNormTol)
        throw std::domain_error("optimal_mu_numeric: A outside [1/d, 1]");
    const long double aa = a;
    auto objective = [d, aa](long double mu) {
        long double nusq = 1.0L - 2.0L * (d - 1) * mu * mu;
        if (nusq < 0.0L) nusq = 0.0L;
        const long double nu = std::sqrt(nusq);
        return (d - 1) * mu * mu + 2.0L * mu * nu + (nusq - 2.0L * mu * nu) * aa;
    };
    const long double mu =
        golden_section_max(objective, 0.0L, (long double)MachineParams::mu_max(d), 1e-10L);
    return MachineParams::from_mu(static_cast<double>(mu), d);
}

struct ReferenceFidelities {
    double phase_covariant;
    double universal;
};

// Printed reference bounds:
//   F_pc(d)   = 1/d + (d - 2 + sqrt(d^2 + 4d - 4)) / (4d)
//   F_univ(d) = (d + 3) / (2(d + 1))
inline ReferenceFidelities reference_fidelities(int d) {
    if (d < 2) throw std::domain_error("reference_fidelities: d must be >= 2");
    const double dd = d;
    return ReferenceFidelities{
        1.0 / dd + (dd - 2.0 + std::sqrt(dd * dd + 4.0 * dd - 4.0)) / (4.0 * dd),
        (dd + 3.0) / (2.0 * (dd + 1.0))};
}

// Machine whose fidelity is independent of the input state: nu = 2 mu
// removes the A-dependent term, giving mu = 1/sqrt(2(d+1)) and the universal
// fidelity (d+3)/(2(d+1)).
inline MachineParams universal_machine_d(int d) {
    if (d < 2) throw std::domain_error("universal_machine_d: d must be >= 2");
    return MachineParams::from_mu(1.0 / std::sqrt(2.0 * (d + 1)), d);
}

// Bundled outputs of one d-level cloning evaluation through the isometry.
struct QuditCloneReport {
    ComplexMatrix rho_ab;
    ComplexMatrix rho_a;
    ComplexMatrix rho_b;
    double fidelity;
    double d1;
    double d2;
    std::vector<double> ppt_spectrum;  // ascending, d^2 values
};

inline QuditCloneReport clone_qudit(const QuditState& state, const MachineParams& params) {
    if (state.d != params.d)
        throw std::invalid_argument("clone_qudit: state and machine dimensions differ");
    const std::size_t d = static_cast<std::size_t>(params.d);
    const ComplexMatrix v = build_isometry_d(params);
    const ComplexMatrix psi = state.ket();
    const ComplexMatrix joint = v * psi;
    const ComplexMatrix rho_full = joint * dagger(joint);

    const SubsystemShape abx{d, d, d};
    ComplexMatrix rho_ab = partial_trace(rho_full, abx, {0, 1});
    const SubsystemShape ab{d, d};
    ComplexMatrix rho_a = partial_trace(rho_ab, ab, {0});
    ComplexMatrix rho_b = partial_trace(rho_ab, ab, {1});

    const double fidelity = (dagger(psi) * rho_a * psi)(0, 0).real();
    const ComplexMatrix pure = psi * dagger(psi);
    const double d1 = hs_distance_sq(rho_ab, kron(rho_a, rho_b));
    const double d2 = hs_distance_sq(rho_ab, kron(pure, pure));
    const auto ppt = hermitian_eigenvalues(partial_transpose(rho_ab, ab, 0));

    return QuditCloneReport{std::move(rho_ab), std::move(rho_a), std::move(rho_b),
                            fidelity,          d1,               d2,
                            ppt};
}

}  // namespace qclone
