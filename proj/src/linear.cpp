#include "fracns/linear.hpp"

#include <cmath>
#include <stdexcept>

namespace fracns {

namespace {

// Below this |s^2 t^2| the closed forms lose digits to cancellation and the
// Taylor series of cosh(st) and sinh(st)/s in z = s^2 t^2 takes over.
constexpr double series_band = 1e-2;

void series(double z, double& c, double& s_over_t)
{
    // C = sum z^k/(2k)!, S/t = sum z^k/(2k+1)!
    double term_c = 1.0, term_s = 1.0;
    c = 1.0;
    s_over_t = 1.0;
    for (int k = 1; k <= 8; ++k) {
        term_c *= z / ((2.0 * k - 1.0) * (2.0 * k));
        term_s *= z / ((2.0 * k) * (2.0 * k + 1.0));
        c += term_c;
        s_over_t += term_s;
    }
}

} // namespace

LinearSymbol linear_symbol(const std::array<double, 3>& xi, int dim, const FluidParams& p)
{
    if (dim != 2 && dim != 3)
        throw std::invalid_argument("linear_symbol: dim must be 2 or 3");
    LinearSymbol sym;
    sym.xi = xi;
    sym.dim = dim;
    double r2 = 0.0;
    for (int a = 0; a < dim; ++a)
        r2 += xi[static_cast<std::size_t>(a)] * xi[static_cast<std::size_t>(a)];
    const double diss = r2 > 0.0 ? p.mu * std::pow(r2, p.alpha) : 0.0;
    for (int a = 0; a < dim; ++a) {
        const auto ia = static_cast<std::size_t>(a);
        sym.M[0][ia + 1] = cplx(0.0, p.kappa * xi[ia]);
        sym.M[ia + 1][0] = cplx(0.0, p.kappa * xi[ia]);
        sym.M[ia + 1][ia + 1] = diss;
    }
    return sym;
}

std::array<cplx, 2> acoustic_eigenvalues(double r, const FluidParams& p)
{
    const double tau = -p.mu * std::pow(r * r, p.alpha);
    const double delta = p.kappa * p.kappa * r * r;
    const double s2 = 0.25 * tau * tau - delta;
    if (s2 >= 0.0) {
        const double minus = 0.5 * tau - std::sqrt(s2);
        if (minus == 0.0)
            return {cplx{}, cplx{}};
        return {cplx(delta / minus), cplx(minus)};
    }
    const double w = std::sqrt(-s2);
    return {cplx(0.5 * tau, w), cplx(0.5 * tau, -w)};
}

AcousticPropagator acoustic_propagator(double r, double q, double t, const FluidParams& p)
{
    if (!(t >= 0.0))
        throw std::invalid_argument("acoustic_propagator: t must be nonnegative");
    const double tau = -p.mu * q;
    const double delta = p.kappa * p.kappa * r * r;
    const double s2 = 0.25 * tau * tau - delta;
    const double z = s2 * t * t;
    const double half_damping = 0.5 * p.mu * q;  // -(tau/2)

    AcousticPropagator out;
    out.solenoidal = std::exp(tau * t);
    if (std::abs(z) < series_band || s2 < 0.0) {
        const double e = std::exp(0.5 * tau * t);
        double c = 0.0, s = 0.0;
        if (std::abs(z) < series_band) {
            double s_over_t = 0.0;
            series(z, c, s_over_t);
            s = s_over_t * t;
        } else {
            const double w = std::sqrt(-s2);
            c = std::cos(w * t);
            s = std::sin(w * t) / w;
        }
        out.e11 = e * (c + s * half_damping);
        out.e22 = e * (c - s * half_damping);
        out.coupling = p.kappa * r * e * s;
        return out;
    }

    // Overdamped: exp(tA) = (e^{l+ t}(A - l- I) - e^{l- t}(A - l+ I)) / (l+ - l-),
    // written relative to the slow root l+ = delta / l- to avoid overflow.
    const double s = std::sqrt(s2);
    const double minus = 0.5 * tau - s;
    const double plus = delta / minus;
    const double slow = std::exp(plus * t);
    const double ratio = std::exp(-2.0 * s * t);  // e^{(l- - l+) t}
    const double inv = 1.0 / (2.0 * s);
    out.e11 = slow * (-minus + plus * ratio) * inv;
    out.e22 = slow * (plus - minus * ratio) * inv;
    out.coupling = p.kappa * r * slow * -std::expm1(-2.0 * s * t) * inv;
    return out;
}

SymbolMatrix semigroup_matrix(const std::array<double, 3>& xi, int dim, double t,
                              const FluidParams& p)
{
    if (dim != 2 && dim != 3)
        throw std::invalid_argument("semigroup_matrix: dim must be 2 or 3");
    double r2 = 0.0;
    for (int a = 0; a < dim; ++a)
        r2 += xi[static_cast<std::size_t>(a)] * xi[static_cast<std::size_t>(a)];
    SymbolMatrix E{};
    if (r2 == 0.0) {
        for (int a = 0; a <= dim; ++a)
            E[static_cast<std::size_t>(a)][static_cast<std::size_t>(a)] = 1.0;
        return E;
    }
    const double r = std::sqrt(r2);
    const auto prop = acoustic_propagator(r, std::pow(r2, p.alpha), t, p);
    std::array<double, 3> n{};
    for (int a = 0; a < dim; ++a)
        n[static_cast<std::size_t>(a)] = xi[static_cast<std::size_t>(a)] / r;
    E[0][0] = prop.e11;
    for (std::size_t a = 0; a < static_cast<std::size_t>(dim); ++a) {
        E[0][a + 1] = cplx(0.0, -prop.coupling * n[a]);
        E[a + 1][0] = cplx(0.0, -prop.coupling * n[a]);
        for (std::size_t b = 0; b < static_cast<std::size_t>(dim); ++b) {
            const double nn = n[a] * n[b];
            E[a + 1][b + 1] = prop.e22 * nn + prop.solenoidal * ((a == b ? 1.0 : 0.0) - nn);
        }
    }
    return E;
}

LinearPropagator::LinearPropagator(const GridPtr& grid, double t, const FluidParams& p)
    : grid_(grid), t_(t), table_(grid->size()), direction_(grid->size())
{
    const int d = grid->dim();
    const auto n = static_cast<std::size_t>(grid->n());
    const auto k2 = grid->k2();
    for (std::size_t i = 0; i < grid->size(); ++i) {
        // derivative wavevector: a mode's own Nyquist component does not couple
        std::array<double, 3> kd{};
        double r2 = 0.0;
        std::size_t stride = 1;
        for (int a = d - 1; a >= 0; --a) {
            const auto ia = static_cast<std::size_t>(a);
            const bool nyq = (i / stride) % n == n / 2;
            kd[ia] = nyq ? 0.0 : grid->k(a)[i];
            r2 += kd[ia] * kd[ia];
            stride *= n;
        }
        const double r = std::sqrt(r2);
        const double q = i == 0 ? 0.0 : std::pow(k2[i], p.alpha);
        table_[i] = acoustic_propagator(r, q, t, p);
        if (r > 0.0)
            for (int a = 0; a < d; ++a)
                direction_[i][static_cast<std::size_t>(a)] = kd[static_cast<std::size_t>(a)] / r;
    }
}

void LinearPropagator::apply(State& s) const
{
    validate_state(s);
    require_same_grid(*grid_, s.grid());
    if (t_ == 0.0)
        return;
    const auto d = static_cast<std::size_t>(grid_->dim());
    const cplx minus_i(0.0, -1.0);
    for (std::size_t i = 0; i < grid_->size(); ++i) {
        const auto& e = table_[i];
        const auto& dir = direction_[i];
        cplx w = 0.0;
        for (std::size_t a = 0; a < d; ++a)
            w += dir[a] * s.u[a][i];
        const cplx rho = s.rho[i];
        const cplx rho_new = e.e11 * rho + minus_i * e.coupling * w;
        const cplx w_new = minus_i * e.coupling * rho + e.e22 * w;
        s.rho[i] = rho_new;
        for (std::size_t a = 0; a < d; ++a)
            s.u[a][i] = e.solenoidal * (s.u[a][i] - dir[a] * w) + dir[a] * w_new;
    }
}

State apply_semigroup(const State& s, double t, const FluidParams& p)
{
    State out = s;
    LinearPropagator(s.grid_ptr(), t, p).apply(out);
    out.t = s.t + t;
    return out;
}

} // namespace fracns
