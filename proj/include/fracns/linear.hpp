#pragma once

#include "fracns/params.hpp"
#include "fracns/state.hpp"

#include <array>
#include <vector>

namespace fracns {

/// (d+1)x(d+1) matrices over (rho, u_1..u_d); only the leading block is used in 2D.
using SymbolMatrix = std::array<std::array<cplx, 4>, 4>;

/// d/dt (rho, u)^ = -M(xi) (rho, u)^ for the linearized system
/// rho_t + kappa div u = 0, u_t + mu Lambda^{2 alpha} u + kappa grad rho = 0.
struct LinearSymbol {
    std::array<double, 3> xi{};
    int dim = 3;
    SymbolMatrix M{};
};

LinearSymbol linear_symbol(const std::array<double, 3>& xi, int dim, const FluidParams& p);

/// Roots of lambda^2 + mu r^{2 alpha} lambda + kappa^2 r^2, the eigenvalues of
/// the acoustic block in the variables (rho, xi.u/|xi|).
std::array<cplx, 2> acoustic_eigenvalues(double r, const FluidParams& p);

/// Entries of exp(tA) for the acoustic block
///   A = [[0, -i kappa r], [-i kappa r, -mu q]],
/// together with the scalar dissipative factor exp(-mu q t). Here r is the
/// coupling wavenumber and q the dissipation symbol (|xi|^{2 alpha} in the
/// continuum). e11, e22 and the factor are real.
struct AcousticPropagator {
    double e11 = 1.0;
    double e22 = 1.0;
    double coupling = 0.0;  // e12 = e21 = -i * coupling
    double solenoidal = 1.0;
};

/// Closed form via exp(tA) = e^{tau t/2} [C I + S (A - tau/2 I)], tau = -mu q,
/// s^2 = tau^2/4 - kappa^2 r^2, with C = cosh(st), S = sinh(st)/s read as
/// cos / sin for s^2 < 0 and as a series near the double root. Requires t >= 0.
AcousticPropagator acoustic_propagator(double r, double q, double t, const FluidParams& p);

/// exp(-t M(xi)); the identity at xi = 0.
SymbolMatrix semigroup_matrix(const std::array<double, 3>& xi, int dim, double t,
                              const FluidParams& p);

/// Per-mode propagator exp(tL) tabulated on a grid. Derivative wavenumbers
/// follow the spectral operators (zero on a mode's own Nyquist axis), so the
/// table is the exact flow of linear_terms.
class LinearPropagator {
public:
    LinearPropagator(const GridPtr& grid, double t, const FluidParams& p);

    double time() const { return t_; }
    const GridPtr& grid() const { return grid_; }
    /// s <- exp(tL) s, fields only.
    void apply(State& s) const;

private:
    GridPtr grid_;
    double t_;
    std::vector<AcousticPropagator> table_;
    std::vector<std::array<double, 3>> direction_;
};

/// exp(tL) applied to the state; the result carries time s.t + t.
State apply_semigroup(const State& s, double t, const FluidParams& p);

} // namespace fracns
