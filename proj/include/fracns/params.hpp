#pragma once

#include "fracns/field.hpp"

namespace fracns {

/// Physical constants of the isentropic model with background density 1.
struct FluidParams {
    double A = 0.5;
    double gamma = 2.0;
    double mu = 1.0;
    double alpha = 0.75;
    // derived
    double kappa = 1.0;     // sqrt(A gamma)
    double a = 2.0;         // 2 / (gamma - 1)
    double mu_prime = 1.0;  // kappa^a mu

    /// False for alpha = 1, which is accepted but lies outside the main decay results.
    bool alpha_in_open_range() const { return alpha < 1.0; }
};

/// Requires A > 0, gamma > 1, mu > 0 and alpha in (1/2, 1]; throws
/// std::invalid_argument naming the offending parameter otherwise.
FluidParams derive_constants(double A, double gamma, double mu, double alpha = 0.75);

/// rho = a kappa (rho_tilde^{1/a} - 1). Throws VacuumError unless rho_tilde > 0.
RealField to_perturbation(const RealField& rho_tilde, const FluidParams& p);
/// rho_tilde = kappa^{-a} (kappa + rho/a)^a. Throws VacuumError unless kappa + rho/a > 0.
RealField from_perturbation(const RealField& rho, const FluidParams& p);

/// mu' / (kappa + rho/a)^a pointwise; equals mu exactly where rho = 0.
RealField viscosity_coeff(const RealField& rho, const FluidParams& p);
/// viscosity_coeff - mu, evaluated without cancellation; exactly 0 where rho = 0.
RealField viscosity_remainder(const RealField& rho, const FluidParams& p);

} // namespace fracns
