#pragma once

#include "fracns/integrator.hpp"
#include "fracns/state.hpp"

#include <vector>

namespace fracns {

/// ||rho||^2_{H^{s+1}} + ||u||^2_{H^{s+1}}, summed with sobolev_norm_squared.
double energy_E0(const State& s, double s_reg);

/// Instantaneous and accumulated parts of the E(T) norm at one output time.
struct EnergyReport {
    double t = 0.0;
    double s = 0.0;
    double rho_norm2 = 0.0;   // ||rho(t)||^2_{H^{s+1}}
    double u_norm2 = 0.0;     // ||u(t)||^2_{H^{s+1}}
    double sup_rho = 0.0;     // running sup of rho_norm2
    double sup_u = 0.0;       // running sup of u_norm2
    double diss_rho = 0.0;    // int_0^t ||grad rho||^2_{H^s}
    double diss_u = 0.0;      // int_0^t ||Lambda^alpha u||^2_{H^{s+1}}
    double ET = 0.0;          // sup_rho + sup_u + diss_rho + diss_u
    bool violation = false;   // ET > bootstrap_factor * E(0)
};

/// Accumulates EnergyReports from states observed at a uniform stride;
/// the dissipation integrals use the trapezoid rule.
class EnergyMonitor {
public:
    EnergyMonitor(double s_reg, double alpha, double bootstrap_factor = 4.0);

    void observe(const State& s);
    const std::vector<EnergyReport>& series() const { return series_; }
    bool violated() const;
    double E0() const { return e0_; }

private:
    double s_, alpha_, factor_;
    double e0_ = 0.0;
    double prev_grad_rho_ = 0.0, prev_lambda_u_ = 0.0;
    std::vector<EnergyReport> series_;
};

/// EnergyMonitor run over a stored trajectory. Throws StrideMismatch on
/// nonuniform sampling.
std::vector<EnergyReport> energy_ET_running(const Trajectory& traj, double s_reg, double alpha,
                                            double bootstrap_factor = 4.0);

} // namespace fracns
