// Cloning-machine parameter pair (mu, nu) for local dimension d, with the
// unitarity constraint nu^2 + 2(d-1) mu^2 = 1 baked in.

#pragma once

#include <cmath>
#include <stdexcept>

namespace qclone {

inline constexpr double kParamConstraintTol = 1e-12;

struct MachineParams {
    double mu;
    double nu;
    int d;

    MachineParams(double mu_, double nu_, int d_) : mu(mu_), nu(nu_), d(d_) {
        if (d < 2) throw std::domain_error("MachineParams: d must be >= 2");
        if (mu < 0.0 || nu < 0.0)
            throw std::invalid_argument("MachineParams: mu and nu must be nonnegative");
        const double defect = std::abs(nu * nu + 2.0 * (d - 1) * mu * mu - 1.0);
        if (defect > kParamConstraintTol)
            throw std::invalid_argument("MachineParams: unitarity constraint violated");
    }

    // Largest admissible mu for dimension d (nu = 0 there).
    static double mu_max(int d) { return 1.0 / std::sqrt(2.0 * (d - 1)); }

    // Derives nu from the constraint. mu must lie in [0, mu_max(d)].
    static MachineParams from_mu(double mu, int d = 2) {
        if (d < 2) throw std::domain_error("MachineParams: d must be >= 2");
        if (mu < 0.0 || mu > mu_max(d) + kParamConstraintTol)
            throw std::domain_error("MachineParams: mu outside [0, 1/sqrt(2(d-1))]");
        double nusq = 1.0 - 2.0 * (d - 1) * mu * mu;
        // mu at the top of the range can leave nusq a few ulps below zero.
        if (nusq < 0.0) nusq = 0.0;
        return MachineParams(mu, std::sqrt(nusq), d);
    }
};

}  // namespace qclone
