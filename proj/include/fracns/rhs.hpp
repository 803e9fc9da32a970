#pragma once

#include "fracns/params.hpp"
#include "fracns/state.hpp"

namespace fracns {

/// Constant-coefficient part L U = (-kappa div u, -kappa grad rho - mu Lambda^{2 alpha} u).
State linear_terms(const State& s, const FluidParams& p);

/// Nonlinear part F = (F1, F2) with
///   F1 = -u.grad rho - (1/a) rho div u,
///   F2 = -(c(rho) - mu) Lambda^{2 alpha} u - u.grad u - (1/a) rho grad rho,
/// where c(rho) = mu' / (kappa + rho/a)^a. Products are pseudo-spectral and
/// dealiased. Throws VacuumError if kappa + rho/a <= 0 at a grid point.
State nonlinear_terms(const State& s, const FluidParams& p);

/// Time derivative of the full system, L U + F(U).
State rhs_full(const State& s, const FluidParams& p);

/// Friedrich-truncated time derivative: the linear part acts on J u and J rho,
/// every nonlinear term takes projected arguments and is projected again, and
/// the viscosity remainder c(J rho) - mu is projected before it multiplies
/// Lambda^{2 alpha} J u. With J the identity on the grid this reproduces rhs_full.
State rhs_friedrich(const State& s, double eps, const FluidParams& p);

} // namespace fracns
