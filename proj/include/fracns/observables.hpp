#pragma once

#include "fracns/decay.hpp"
#include "fracns/integrator.hpp"
#include "fracns/params.hpp"
#include "fracns/state.hpp"

#include <optional>
#include <vector>

namespace fracns {

/// -3/(4 alpha) - sigma/2
double decay_bound(double alpha, double sigma);

struct DecayFit {
    double sigma = 0.0;
    double exponent = 0.0;
    double intercept = 0.0;   // log-amplitude
    double ci = 0.0;          // 95% half-width from the residual variance
    double t1 = 0.0;
    double t2 = 0.0;
    std::size_t samples = 0;
    double bound = 0.0;
};

/// Least squares of log(value) against log(1+t) over samples with t in [t1, t2].
/// Throws std::invalid_argument when fewer than 10 samples fall in the window
/// and std::domain_error on a nonpositive value inside it.
DecayFit fit_power_law(const DecayCurve& curve, double t1, double t2);

struct DecayRecord {
    DecayFit fit;
    bool pass = false;  // exponent <= bound + tolerance
};

/// Fits every curve on [t1, t2] and compares with decay_bound(curve.alpha, sigma).
/// Throws std::invalid_argument when the window lies outside a curve's time range.
std::vector<DecayRecord> decay_report(const std::vector<DecayCurve>& curves, double t1, double t2,
                                      double tolerance = 0.05);

/// Torus fit window: t2 = 0.5/(mu k_min^{2 alpha}), t1 = t2/10.
std::pair<double, double> default_fit_window(const Grid& grid, const FluidParams& p);

/// ||Lambda^s0 rho||^2 + ||Lambda^s0 u||^2 + 2 beta3 <grad Lambda^{s0-1} rho, Lambda^{s0-1} u>.
/// Requires 5/2 < sigma0 < (3 + 4 alpha)/2 and beta3 >= 0; the error message
/// quotes the admissible interval.
double modified_energy_sigma0(const State& s, double sigma0, double beta3, double alpha);

/// Midpoint of (5/2, (3 + 4 alpha)/2).
double default_sigma0(double alpha);
/// 0.05 min(kappa, mu)
double default_beta3(const FluidParams& p);

struct MtDiagnostic {
    std::vector<double> sigma_grid;
    std::vector<double> times;
    std::vector<double> M;                         // running sup of the weighted sum
    std::vector<std::vector<double>> weighted;     // [time][sigma] (1+t)^{-bound} ||Lambda^sigma U||
    /// M at the last sample over M at the sample nearest t_mid.
    double plateau_ratio(double t_mid) const;
};

MtDiagnostic m_functional(const Trajectory& traj, const FluidParams& p,
                          const std::vector<double>& sigma_grid);

struct GronwallReport {
    std::vector<double> c_grid;
    std::vector<double> C_min;   // smallest admissible C for each c
    double best_c = 0.0;
    double best_C = 0.0;
    bool pass = false;           // best_C <= C_max
};

/// Fitted-constant check of
///   ||Lambda^s0 U(t)||^2 <= C (e^{-ct} ||Lambda^s0 U0||^2 + sup_{tau<=t} ||Lambda^s0 U^L(tau)||^2),
/// where U^L keeps |k| <= r0. An empty c_grid defaults to 2 mu r0^{2 alpha} 2^{-k}, k = 0..12.
GronwallReport highfreq_gronwall_check(const Trajectory& traj, const FluidParams& p, double sigma0,
                                       double r0, std::vector<double> c_grid = {},
                                       double C_max = 100.0);

} // namespace fracns
