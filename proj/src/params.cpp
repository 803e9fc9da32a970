#include "fracns/params.hpp"

#include "fracns/errors.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fracns {

namespace {

void require_no_vacuum(double rho, const FluidParams& p)
{
    if (!(p.kappa + rho / p.a > 0.0))
        throw VacuumError("kappa + rho/a = " + std::to_string(p.kappa + rho / p.a) +
                          " is not positive");
}

} // namespace

FluidParams derive_constants(double A, double gamma, double mu, double alpha)
{
    if (!(A > 0.0) || !std::isfinite(A))
        throw std::invalid_argument("A must be positive");
    if (!(gamma > 1.0) || !std::isfinite(gamma))
        throw std::invalid_argument("gamma must exceed 1");
    if (!(mu > 0.0) || !std::isfinite(mu))
        throw std::invalid_argument("mu must be positive");
    if (!(alpha > 0.5 && alpha <= 1.0))
        throw std::invalid_argument("alpha must lie in (1/2, 1]");
    FluidParams p;
    p.A = A;
    p.gamma = gamma;
    p.mu = mu;
    p.alpha = alpha;
    p.kappa = std::sqrt(A * gamma);
    p.a = 2.0 / (gamma - 1.0);
    p.mu_prime = std::pow(p.kappa, p.a) * mu;
    return p;
}

RealField to_perturbation(const RealField& rho_tilde, const FluidParams& p)
{
    RealField out(rho_tilde.grid_ptr());
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (!(rho_tilde[i] > 0.0))
            throw VacuumError("density " + std::to_string(rho_tilde[i]) + " is not positive");
        out[i] = p.a * p.kappa * std::expm1(std::log(rho_tilde[i]) / p.a);
    }
    return out;
}

RealField from_perturbation(const RealField& rho, const FluidParams& p)
{
    RealField out(rho.grid_ptr());
    for (std::size_t i = 0; i < out.size(); ++i) {
        require_no_vacuum(rho[i], p);
        out[i] = std::exp(p.a * std::log1p(rho[i] / (p.a * p.kappa)));
    }
    return out;
}

RealField viscosity_coeff(const RealField& rho, const FluidParams& p)
{
    RealField out(rho.grid_ptr());
    for (std::size_t i = 0; i < out.size(); ++i) {
        require_no_vacuum(rho[i], p);
        // mu' / (kappa + rho/a)^a = mu (kappa / (kappa + rho/a))^a
        out[i] = p.mu * std::pow(p.kappa / (p.kappa + rho[i] / p.a), p.a);
    }
    return out;
}

RealField viscosity_remainder(const RealField& rho, const FluidParams& p)
{
    RealField out(rho.grid_ptr());
    for (std::size_t i = 0; i < out.size(); ++i) {
        require_no_vacuum(rho[i], p);
        out[i] = p.mu * std::expm1(-p.a * std::log1p(rho[i] / (p.a * p.kappa)));
    }
    return out;
}

} // namespace fracns
