#include "fracns/rhs.hpp"

#include "fracns/multipliers.hpp"

#include <optional>

namespace fracns {

namespace {

RealField physical(const SpectralField& f) { return inverse(dealias(f)); }

// F(U) with every argument and every product passed through proj. Each factor
// is sampled once from its dealiased coefficients and the products of one
// component are summed before the single forward transform.
template <class Proj>
State nonlinear_impl(const State& s, const FluidParams& p, Proj&& proj)
{
    validate_state(s);
    const auto d = static_cast<std::size_t>(s.dim());
    const std::size_t N = s.grid().size();
    const SpectralField rho = proj(s.rho);
    std::vector<SpectralField> u;
    for (const auto& c : s.u)
        u.push_back(proj(c));

    const RealField R = physical(rho);
    std::vector<RealField> U, G, L;
    std::vector<std::vector<RealField>> DU(d);  // DU[a][b] = d_b u_a
    const auto grad_rho = gradient(rho);
    for (std::size_t a = 0; a < d; ++a) {
        U.push_back(physical(u[a]));
        G.push_back(physical(grad_rho[a]));
        L.push_back(physical(fractional_laplacian(u[a], p.alpha)));
        for (std::size_t b = 0; b < d; ++b)
            DU[a].push_back(physical(partial(u[a], static_cast<int>(b))));
    }
    // c(rho) - mu is formed pointwise from the dealiased density samples.
    const RealField C = physical(proj(transform(viscosity_remainder(R, p))));
    const double inv_a = 1.0 / p.a;

    const auto finish = [&](RealField&& sum) { return proj(dealias(transform(sum))); };
    State out = State::zero(s.grid_ptr(), s.t);
    {
        RealField f(s.grid_ptr());
        for (std::size_t i = 0; i < N; ++i) {
            double adv = 0.0, div = 0.0;
            for (std::size_t b = 0; b < d; ++b) {
                adv += U[b][i] * G[b][i];
                div += DU[b][b][i];
            }
            f[i] = -(adv + inv_a * R[i] * div);
        }
        out.rho = finish(std::move(f));
    }
    for (std::size_t a = 0; a < d; ++a) {
        RealField f(s.grid_ptr());
        for (std::size_t i = 0; i < N; ++i) {
            double adv = 0.0;
            for (std::size_t b = 0; b < d; ++b)
                adv += U[b][i] * DU[a][b][i];
            f[i] = -(C[i] * L[a][i] + adv + inv_a * R[i] * G[a][i]);
        }
        out.u[a] = finish(std::move(f));
    }
    return out;
}

template <class Proj>
State linear_impl(const State& s, const FluidParams& p, Proj&& proj)
{
    validate_state(s);
    std::vector<SpectralField> u;
    for (const auto& c : s.u)
        u.push_back(proj(c));
    const SpectralField rho = proj(s.rho);

    State out = State::zero(s.grid_ptr(), s.t);
    out.rho = -p.kappa * divergence(u);
    const auto grad_rho = gradient(rho);
    for (std::size_t a = 0; a < u.size(); ++a) {
        out.u[a] = -p.kappa * grad_rho[a];
        out.u[a].axpy(-p.mu, fractional_laplacian(u[a], p.alpha));
    }
    return out;
}

const auto identity = [](const SpectralField& f) -> const SpectralField& { return f; };

} // namespace

State linear_terms(const State& s, const FluidParams& p) { return linear_impl(s, p, identity); }

State nonlinear_terms(const State& s, const FluidParams& p)
{
    return nonlinear_impl(s, p, identity);
}

State rhs_full(const State& s, const FluidParams& p)
{
    State out = linear_terms(s, p);
    out += nonlinear_terms(s, p);
    return out;
}

State rhs_friedrich(const State& s, double eps, const FluidParams& p)
{
    const auto J = [eps](const SpectralField& f) { return friedrich_project(f, eps); };
    State out = linear_impl(s, p, J);
    out += nonlinear_impl(s, p, J);
    return out;
}

} // namespace fracns
