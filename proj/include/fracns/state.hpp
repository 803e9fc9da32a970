#pragma once

#include "fracns/field.hpp"

#include <vector>

namespace fracns {

/// Perturbation density rho and velocity u at time t. Also used for time
/// derivatives, where t is ignored.
struct State {
    SpectralField rho;
    std::vector<SpectralField> u;
    double t = 0.0;

    static State zero(const GridPtr& grid, double t = 0.0);

    const Grid& grid() const { return rho.grid(); }
    const GridPtr& grid_ptr() const { return rho.grid_ptr(); }
    int dim() const { return rho.grid().dim(); }

    /// Applies op to rho and to every velocity component.
    template <class Op>
    void for_each(Op&& op)
    {
        op(rho);
        for (auto& c : u)
            op(c);
    }
    template <class Op>
    void for_each(Op&& op) const
    {
        op(rho);
        for (const auto& c : u)
            op(c);
    }

    State& operator+=(const State& o);
    State& operator-=(const State& o);
    State& operator*=(double s);
    /// this += s * x (fields only)
    State& axpy(double s, const State& x);

    /// sqrt(||rho||^2 + sum_i ||u_i||^2)
    double l2_norm() const;
    bool finite() const;

    friend State operator+(State a, const State& b) { return a += b; }
    friend State operator-(State a, const State& b) { return a -= b; }
    friend State operator*(double s, State a) { return a *= s; }
};

/// Throws GridMismatch unless s has dim velocity components on one grid.
void validate_state(const State& s);

} // namespace fracns
