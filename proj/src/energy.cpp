#include "fracns/energy.hpp"

#include "fracns/littlewood_paley.hpp"
#include "fracns/multipliers.hpp"

#include <algorithm>

namespace fracns {

namespace {

double field_sum(const std::vector<SpectralField>& v, NormSpec spec)
{
    double sum = 0.0;
    for (const auto& c : v)
        sum += sobolev_norm_squared(c, spec);
    return sum;
}

} // namespace

double energy_E0(const State& s, double s_reg)
{
    const NormSpec h{s_reg + 1.0, NormFlavor::inhomogeneous};
    return sobolev_norm_squared(s.rho, h) + field_sum(s.u, h);
}

EnergyMonitor::EnergyMonitor(double s_reg, double alpha, double bootstrap_factor)
    : s_(s_reg), alpha_(alpha), factor_(bootstrap_factor)
{
}

void EnergyMonitor::observe(const State& st)
{
    const NormSpec hs{s_, NormFlavor::inhomogeneous};
    const NormSpec hs1{s_ + 1.0, NormFlavor::inhomogeneous};

    EnergyReport r;
    r.t = st.t;
    r.s = s_;
    r.rho_norm2 = sobolev_norm_squared(st.rho, hs1);
    r.u_norm2 = field_sum(st.u, hs1);
    const double grad_rho = field_sum(gradient(st.rho), hs);
    double lambda_u = 0.0;
    for (const auto& c : st.u)
        lambda_u += sobolev_norm_squared(lambda_power(c, alpha_), hs1);

    if (series_.empty()) {
        e0_ = r.rho_norm2 + r.u_norm2;
        r.sup_rho = r.rho_norm2;
        r.sup_u = r.u_norm2;
    } else {
        const EnergyReport& prev = series_.back();
        const double h = st.t - prev.t;
        r.sup_rho = std::max(prev.sup_rho, r.rho_norm2);
        r.sup_u = std::max(prev.sup_u, r.u_norm2);
        r.diss_rho = prev.diss_rho + 0.5 * h * (prev_grad_rho_ + grad_rho);
        r.diss_u = prev.diss_u + 0.5 * h * (prev_lambda_u_ + lambda_u);
    }
    prev_grad_rho_ = grad_rho;
    prev_lambda_u_ = lambda_u;
    r.ET = r.sup_rho + r.sup_u + r.diss_rho + r.diss_u;
    r.violation = r.ET > factor_ * e0_;
    series_.push_back(r);
}

bool EnergyMonitor::violated() const
{
    return std::any_of(series_.begin(), series_.end(),
                       [](const EnergyReport& r) { return r.violation; });
}

std::vector<EnergyReport> energy_ET_running(const Trajectory& traj, double s_reg, double alpha,
                                            double bootstrap_factor)
{
    if (traj.size() > 1)
        traj.validate();
    EnergyMonitor mon(s_reg, alpha, bootstrap_factor);
    for (const auto& st : traj.states)
        mon.observe(st);
    return mon.series();
}

} // namespace fracns
