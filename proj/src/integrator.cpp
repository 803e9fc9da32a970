#include "fracns/integrator.hpp"

#include "fracns/checkpoint.hpp"
#include "fracns/energy.hpp"
#include "fracns/errors.hpp"
#include "fracns/multipliers.hpp"
#include "fracns/rhs.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fracns {

Scheme parse_scheme(const std::string& name)
{
    if (name == "rk4")
        return Scheme::rk4;
    if (name == "rk4-exp" || name == "rk4-with-linear-exponential-splitting")
        return Scheme::rk4_exp;
    throw std::invalid_argument("unknown time scheme '" + name + "' (expected rk4 or rk4-exp)");
}

std::string scheme_name(Scheme s) { return s == Scheme::rk4 ? "rk4" : "rk4-exp"; }

double stable_dt(const State& s, const FluidParams& p, double cfl, Scheme scheme)
{
    validate_state(s);
    const Grid& g = s.grid();
    std::vector<double> speed2(g.size(), 0.0);
    for (const auto& c : s.u) {
        const RealField uc = inverse(c);
        for (std::size_t i = 0; i < g.size(); ++i)
            speed2[i] += uc[i] * uc[i];
    }
    const double umax = std::sqrt(*std::max_element(speed2.begin(), speed2.end()));
    double mu_max = 0.0;
    if (scheme == Scheme::rk4) {
        const RealField visc = viscosity_coeff(inverse(s.rho), p);
        mu_max = *std::max_element(visc.samples().begin(), visc.samples().end());
    } else {
        mu_max = viscosity_remainder(inverse(s.rho), p).linf_norm();
    }

    const double dx = g.dx();
    double dt = dx / (p.kappa + umax);
    if (mu_max > 0.0)
        dt = std::min(dt, 1.0 / (mu_max * std::pow(g.kmax_dealiased(), 2.0 * p.alpha)));
    if (umax > 0.0)
        dt = std::min(dt, dx / umax);
    return cfl * dt;
}

State evaluate_rhs(const State& s, const FluidParams& p, const std::optional<double>& eps)
{
    return eps ? rhs_friedrich(s, *eps, p) : rhs_full(s, p);
}

Stepper::Stepper(FluidParams p, Scheme scheme, std::optional<double> eps)
    : p_(p), scheme_(scheme), eps_(eps)
{
}

State Stepper::nonlinear(const State& s) const
{
    State n = evaluate_rhs(s, p_, eps_);
    n -= linear_terms(s, p_);
    return n;
}

std::shared_ptr<const LinearPropagator> Stepper::propagator(const GridPtr& grid, double t)
{
    for (const auto& e : cache_)
        if (e->grid() == grid && e->time() == t)
            return e;
    if (cache_.size() >= 4)
        cache_.erase(cache_.begin());
    cache_.push_back(std::make_shared<const LinearPropagator>(grid, t, p_));
    return cache_.back();
}

State Stepper::step(const State& s, double h)
{
    if (!(h > 0.0))
        throw std::invalid_argument("step: dt must be positive");
    State next = s;
    if (scheme_ == Scheme::rk4) {
        const auto f = [this](const State& x) { return evaluate_rhs(x, p_, eps_); };
        const State k1 = f(s);
        State tmp = s;
        tmp.axpy(0.5 * h, k1);
        const State k2 = f(tmp);
        tmp = s;
        tmp.axpy(0.5 * h, k2);
        const State k3 = f(tmp);
        tmp = s;
        tmp.axpy(h, k3);
        const State k4 = f(tmp);
        next.axpy(h / 6.0, k1);
        next.axpy(h / 3.0, k2);
        next.axpy(h / 3.0, k3);
        next.axpy(h / 6.0, k4);
    } else {
        // Lawson RK4 in the variable exp(-tL) U
        const auto half = propagator(s.grid_ptr(), 0.5 * h);
        const auto full = propagator(s.grid_ptr(), h);
        const State k1 = nonlinear(s);

        State a = s;
        a.axpy(0.5 * h, k1);
        half->apply(a);
        const State k2 = nonlinear(a);

        State eh_u = s;
        half->apply(eh_u);  // E_{h/2} u
        State b = eh_u;
        b.axpy(0.5 * h, k2);
        const State k3 = nonlinear(b);

        State c = s;
        full->apply(c);  // E_h u
        State ek3 = k3;
        half->apply(ek3);
        const State e_u = c;
        c.axpy(h, ek3);
        const State k4 = nonlinear(c);

        State ek1 = k1;
        full->apply(ek1);
        State k23 = k2;
        k23 += k3;
        half->apply(k23);
        next = e_u;
        next.axpy(h / 6.0, ek1);
        next.axpy(h / 3.0, k23);
        next.axpy(h / 6.0, k4);
    }
    next.t = s.t + h;
    return next;
}

State step(const State& s, double dt, const FluidParams& p, Scheme scheme, std::optional<double> eps)
{
    return Stepper(p, scheme, eps).step(s, dt);
}

void Trajectory::validate() const
{
    if (!(stride > 0.0))
        throw StrideMismatch("trajectory stride must be positive");
    for (std::size_t i = 1; i < states.size(); ++i) {
        const double gap = states[i].t - states[i - 1].t;
        if (std::abs(gap - stride) > 1e-9 * stride) {
            std::ostringstream msg;
            msg << "samples " << i - 1 << " and " << i << " are " << gap
                << " apart, expected stride " << stride;
            throw StrideMismatch(msg.str());
        }
    }
}

Trajectory Trajectory::subsample(std::size_t factor) const
{
    if (factor == 0)
        throw std::invalid_argument("subsample factor must be positive");
    Trajectory out;
    out.stride = stride * static_cast<double>(factor);
    for (std::size_t i = 0; i < states.size(); i += factor)
        out.states.push_back(states[i]);
    return out;
}

Trajectory simulate(const State& s0, const FluidParams& p, const TimeStepSpec& spec,
                    const std::vector<Observer>& observers, bool keep_states)
{
    validate_state(s0);
    if (!s0.finite())
        throw std::domain_error("simulate: initial data contain non-finite coefficients");
    if (!(spec.output_interval > 0.0))
        throw std::invalid_argument("output interval must be positive");
    if (spec.dt && !(*spec.dt > 0.0))
        throw std::invalid_argument("dt must be positive");
    if (!(spec.t_end >= 0.0))
        throw std::invalid_argument("t_end must be nonnegative");

    const double e0 = energy_E0(s0, spec.energy_s);
    const double ceiling = spec.blowup_factor * e0;
    const auto outputs = static_cast<std::size_t>(std::llround(spec.t_end / spec.output_interval));

    Trajectory traj;
    traj.stride = spec.output_interval;
    Stepper stepper(p, spec.scheme, spec.eps);

    State cur = s0;
    const auto emit = [&](std::size_t index) {
        for (const auto& obs : observers)
            obs(cur);
        if (keep_states)
            traj.states.push_back(cur);
        if (!spec.checkpoint_path.empty() && spec.checkpoint_every > 0 &&
            index % static_cast<std::size_t>(spec.checkpoint_every) == 0)
            write_checkpoint(spec.checkpoint_path, cur, p);
    };
    emit(0);

    for (std::size_t k = 1; k <= outputs; ++k) {
        const State last_output = cur;
        const double dt_target = spec.dt ? *spec.dt : stable_dt(cur, p, spec.cfl, spec.scheme);
        // whole number of equal steps per output interval
        const auto nsub = static_cast<std::size_t>(
            std::max(1.0, std::ceil(spec.output_interval / dt_target * (1.0 - 1e-12))));
        const double h = spec.output_interval / static_cast<double>(nsub);
        for (std::size_t j = 0; j < nsub; ++j) {
            State next = [&] {
                try {
                    return stepper.step(cur, h);
                } catch (const VacuumError& e) {
                    throw BlowUpError(std::string("vacuum reached: ") + e.what(), cur);
                }
            }();
            if (!next.finite())
                throw BlowUpError("non-finite coefficients at t = " + std::to_string(next.t), cur);
            cur = std::move(next);
        }
        cur.t = s0.t + static_cast<double>(k) * spec.output_interval;
        const double e = energy_E0(cur, spec.energy_s);
        if (e > ceiling)
            throw BlowUpError("energy " + std::to_string(e) + " exceeds ceiling " +
                                  std::to_string(ceiling) + " at t = " + std::to_string(cur.t),
                              last_output);
        emit(k);
    }
    return traj;
}

} // namespace fracns
