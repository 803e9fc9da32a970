#pragma once

#include "fracns/linear.hpp"
#include "fracns/params.hpp"
#include "fracns/state.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fracns {

enum class Scheme {
    rk4,      // classical RK4 on the full right-hand side
    rk4_exp,  // integrating-factor RK4: exact linear propagator, RK4 on the nonlinear part
};

Scheme parse_scheme(const std::string& name);
std::string scheme_name(Scheme s);

struct TimeStepSpec {
    Scheme scheme = Scheme::rk4;
    std::optional<double> dt;  // empty: chosen by stable_dt at every output time
    double t_end = 1.0;
    double output_interval = 0.1;
    double cfl = 0.5;
    std::optional<double> eps;  // Friedrich truncation; empty: full right-hand side
    double blowup_factor = 1e3;
    double energy_s = 2.0;      // regularity of the energy used by the blow-up ceiling
    std::string checkpoint_path;  // written at every checkpoint_every-th output when nonempty
    int checkpoint_every = 0;
};

/// cfl * min(dx/(kappa + |u|_inf), 1/(mu_max kmax^{2 alpha}), dx/|u|_inf), with
/// mu_max the largest viscosity coefficient on the grid and kmax the largest
/// |k| kept by dealiasing. The last term is skipped when u vanishes. Under
/// rk4_exp the constant part mu is integrated exactly, so mu_max is replaced by
/// the largest |c(rho) - mu| and the viscous term is skipped when that vanishes.
double stable_dt(const State& s, const FluidParams& p, double cfl = 0.5,
                 Scheme scheme = Scheme::rk4);

/// Right-hand side selected by eps (Friedrich when set).
State evaluate_rhs(const State& s, const FluidParams& p, const std::optional<double>& eps);

/// One-step integrator. Caches the linear propagators of the last step size.
class Stepper {
public:
    Stepper(FluidParams p, Scheme scheme, std::optional<double> eps = std::nullopt);
    State step(const State& s, double dt);

private:
    State nonlinear(const State& s) const;
    std::shared_ptr<const LinearPropagator> propagator(const GridPtr& grid, double t);

    FluidParams p_;
    Scheme scheme_;
    std::optional<double> eps_;
    std::vector<std::shared_ptr<const LinearPropagator>> cache_;
};

State step(const State& s, double dt, const FluidParams& p, Scheme scheme,
           std::optional<double> eps = std::nullopt);

/// States sampled at a uniform time stride.
struct Trajectory {
    std::vector<State> states;
    double stride = 0.0;

    bool empty() const { return states.empty(); }
    std::size_t size() const { return states.size(); }
    /// Throws StrideMismatch unless consecutive times differ by stride (to 1e-9 relative).
    void validate() const;
    /// Every factor-th state, with stride scaled accordingly.
    Trajectory subsample(std::size_t factor) const;
};

/// Blow-up detected: a non-finite coefficient or an energy above the ceiling.
class BlowUpError : public std::runtime_error {
public:
    BlowUpError(const std::string& what, State last_valid)
        : std::runtime_error(what), last_valid_(std::move(last_valid)) {}
    const State& last_valid() const noexcept { return last_valid_; }

private:
    State last_valid_;
};

using Observer = std::function<void(const State&)>;

/// Integrates from s0 to spec.t_end. Observers see s0 and every output time;
/// the returned trajectory holds the same states when keep_states is set.
Trajectory simulate(const State& s0, const FluidParams& p, const TimeStepSpec& spec,
                    const std::vector<Observer>& observers = {}, bool keep_states = true);

} // namespace fracns
