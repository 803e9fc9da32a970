#include "fracns/state.hpp"

#include "fracns/errors.hpp"

#include <cmath>
#include <string>

namespace fracns {

State State::zero(const GridPtr& grid, double t)
{
    State s{SpectralField(grid), {}, t};
    for (int a = 0; a < grid->dim(); ++a)
        s.u.emplace_back(grid);
    return s;
}

State& State::operator+=(const State& o)
{
    rho += o.rho;
    for (std::size_t a = 0; a < u.size(); ++a)
        u[a] += o.u[a];
    return *this;
}

State& State::operator-=(const State& o)
{
    rho -= o.rho;
    for (std::size_t a = 0; a < u.size(); ++a)
        u[a] -= o.u[a];
    return *this;
}

State& State::operator*=(double s)
{
    for_each([s](SpectralField& f) { f *= s; });
    return *this;
}

State& State::axpy(double s, const State& x)
{
    rho.axpy(s, x.rho);
    for (std::size_t a = 0; a < u.size(); ++a)
        u[a].axpy(s, x.u[a]);
    return *this;
}

double State::l2_norm() const
{
    double sum = 0.0;
    for_each([&sum](const SpectralField& f) { sum += f.l2_norm_squared(); });
    return std::sqrt(sum);
}

bool State::finite() const
{
    bool ok = true;
    for_each([&ok](const SpectralField& f) {
        for (const auto& c : f.coeffs())
            ok = ok && std::isfinite(c.real()) && std::isfinite(c.imag());
    });
    return ok;
}

void validate_state(const State& s)
{
    const int d = s.dim();
    if (static_cast<int>(s.u.size()) != d)
        throw GridMismatch("state has " + std::to_string(s.u.size()) + " velocity components on a " +
                           std::to_string(d) + "-dimensional grid");
    for (const auto& c : s.u)
        require_same_grid(s.grid(), c.grid());
}

} // namespace fracns
