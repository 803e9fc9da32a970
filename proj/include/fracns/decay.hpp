#pragma once

#include "fracns/integrator.hpp"
#include "fracns/params.hpp"

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace fracns {

/// Radial Fourier-side data on R^d, split along the Helmholtz decomposition:
/// rho(r), the longitudinal velocity xi.u/|xi| = longitudinal(r) and a
/// solenoidal part of magnitude solenoidal(r). All three vanish for r >= support.
struct RadialProfile {
    std::string name;
    double support = 1.0;
    std::function<double(double)> rho;
    std::function<double(double)> longitudinal;
    std::function<double(double)> solenoidal;
};

/// exp(1 - 1/(1 - (r/R)^2)) on r < R, times the given weights.
RadialProfile bump_profile(double R, double w_rho, double w_long, double w_sol);
/// Indicator of the ball r < R, times the given weights.
RadialProfile ball_profile(double R, double w_rho, double w_long, double w_sol);

/// (int_{R^d} |xi|^{2 sigma} |exp(-tM(xi)) U0(xi)|^2 dxi)^{1/2} by adaptive
/// Gauss-Kronrod quadrature in r, with the angular integral done exactly.
/// Requires sigma >= 0, t >= 0, d in {2, 3} and a profile with positive support
/// and all three components set.
double rd_decay_quadrature(const FluidParams& p, double sigma, double t,
                           const RadialProfile& profile, int dim = 3);

struct DecayCurve {
    std::vector<double> times;
    std::vector<double> values;
    double sigma = 0.0;
    double alpha = 0.0;
    double mu = 0.0;
    double kappa = 0.0;
    std::string profile;
};

/// Quadrature curve at the given times.
DecayCurve rd_decay_curve(const FluidParams& p, double sigma, const std::vector<double>& times,
                          const RadialProfile& profile, int dim = 3);

/// ||Lambda^sigma (rho, u)(t)|| along a trajectory (homogeneous norm).
DecayCurve trajectory_decay_curve(const Trajectory& traj, const FluidParams& p, double sigma,
                                  const std::string& profile = "");

/// Logarithmically spaced times t1 .. t2, count >= 2.
std::vector<double> log_times(double t1, double t2, int count);

/// CSV with header "t,value,sigma"; metadata goes in leading '#' lines.
void write_decay_csv(std::ostream& os, const DecayCurve& c);
DecayCurve read_decay_csv(std::istream& is);

/// Duhamel defect ||U(t_i) - e^{t_i L} U0 - int_0^{t_i} e^{(t_i - tau) L} F(U(tau)) dtau||
/// along a stored trajectory, with the time integral done by the trapezoid rule
/// on the output stride. relative divides by ||U(t_i)|| (0 where U vanishes).
struct DuhamelResidual {
    std::vector<double> times;
    std::vector<double> absolute;
    std::vector<double> relative;
    double max_relative() const;
};

/// Throws StrideMismatch on nonuniform sampling.
DuhamelResidual duhamel_residual(const Trajectory& traj, const FluidParams& p);

} // namespace fracns
