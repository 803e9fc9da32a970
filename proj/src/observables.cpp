#include "fracns/observables.hpp"

#include "fracns/littlewood_paley.hpp"
#include "fracns/multipliers.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace fracns {

namespace {

double lambda_norm2(const State& s, double sigma)
{
    const NormSpec spec{sigma, NormFlavor::homogeneous};
    double v = 0.0;
    s.for_each([&](const SpectralField& f) { v += sobolev_norm_squared(f, spec); });
    return v;
}

} // namespace

double decay_bound(double alpha, double sigma) { return -3.0 / (4.0 * alpha) - 0.5 * sigma; }

DecayFit fit_power_law(const DecayCurve& curve, double t1, double t2)
{
    if (!(t1 < t2))
        throw std::invalid_argument("fit_power_law: window needs t1 < t2");
    if (curve.times.size() != curve.values.size())
        throw std::invalid_argument("fit_power_law: times and values differ in length");
    std::vector<double> x, y;
    for (std::size_t i = 0; i < curve.times.size(); ++i) {
        const double t = curve.times[i];
        if (t < t1 || t > t2)
            continue;
        const double v = curve.values[i];
        if (!(v > 0.0)) {
            std::ostringstream msg;
            msg << "fit_power_law: value " << v << " at t = " << t << " is not positive";
            throw std::domain_error(msg.str());
        }
        x.push_back(std::log1p(t));
        y.push_back(std::log(v));
    }
    const std::size_t n = x.size();
    if (n < 10) {
        std::ostringstream msg;
        msg << "fit_power_law: window [" << t1 << ", " << t2 << "] holds " << n
            << " samples, need at least 10";
        throw std::invalid_argument(msg.str());
    }
    double xm = 0.0, ym = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        xm += x[i];
        ym += y[i];
    }
    xm /= static_cast<double>(n);
    ym /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - xm) * (x[i] - xm);
        sxy += (x[i] - xm) * (y[i] - ym);
    }
    DecayFit f;
    f.sigma = curve.sigma;
    f.exponent = sxy / sxx;
    f.intercept = ym - f.exponent * xm;
    double ssr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - f.intercept - f.exponent * x[i];
        ssr += r * r;
    }
    const double dof = static_cast<double>(n - 2);
    const boost::math::students_t dist(dof);
    f.ci = boost::math::quantile(boost::math::complement(dist, 0.025)) * std::sqrt(ssr / dof / sxx);
    f.t1 = t1;
    f.t2 = t2;
    f.samples = n;
    f.bound = decay_bound(curve.alpha, curve.sigma);
    return f;
}

std::vector<DecayRecord> decay_report(const std::vector<DecayCurve>& curves, double t1, double t2,
                                      double tolerance)
{
    std::vector<DecayRecord> out;
    for (const auto& c : curves) {
        if (c.times.empty() || t1 < c.times.front() || t2 > c.times.back()) {
            std::ostringstream msg;
            msg << "decay_report: window [" << t1 << ", " << t2 << "] lies outside the curve";
            if (!c.times.empty())
                msg << " range [" << c.times.front() << ", " << c.times.back() << "]";
            throw std::invalid_argument(msg.str());
        }
        DecayRecord r;
        r.fit = fit_power_law(c, t1, t2);
        r.pass = r.fit.exponent <= r.fit.bound + tolerance;
        out.push_back(r);
    }
    return out;
}

std::pair<double, double> default_fit_window(const Grid& grid, const FluidParams& p)
{
    const double t2 = 0.5 / (p.mu * std::pow(grid.k0(), 2.0 * p.alpha));
    return {t2 / 10.0, t2};
}

double modified_energy_sigma0(const State& s, double sigma0, double beta3, double alpha)
{
    const double hi = (3.0 + 4.0 * alpha) / 2.0;
    if (!(sigma0 > 2.5 && sigma0 < hi)) {
        std::ostringstream msg;
        msg << "sigma0 = " << sigma0 << " lies outside the admissible interval (2.5, " << hi
            << ") for alpha = " << alpha;
        throw std::invalid_argument(msg.str());
    }
    if (!(beta3 >= 0.0))
        throw std::invalid_argument("beta3 must be nonnegative");
    const double plain = lambda_norm2(s, sigma0);
    if (beta3 == 0.0)
        return plain;
    const auto grad = gradient(lambda_power(s.rho, sigma0 - 1.0));
    double cross = 0.0;
    for (int a = 0; a < s.dim(); ++a) {
        const auto ia = static_cast<std::size_t>(a);
        cross += inner(grad[ia], lambda_power(s.u[ia], sigma0 - 1.0)).real();
    }
    return plain + 2.0 * beta3 * cross;
}

double default_sigma0(double alpha) { return 0.5 * (2.5 + (3.0 + 4.0 * alpha) / 2.0); }

double default_beta3(const FluidParams& p) { return 0.05 * std::min(p.kappa, p.mu); }

double MtDiagnostic::plateau_ratio(double t_mid) const
{
    if (M.empty())
        throw std::invalid_argument("plateau_ratio of an empty diagnostic");
    std::size_t mid = 0;
    for (std::size_t i = 0; i < times.size(); ++i)
        if (std::abs(times[i] - t_mid) < std::abs(times[mid] - t_mid))
            mid = i;
    if (M[mid] == 0.0)
        return M.back() == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
    return M.back() / M[mid];
}

MtDiagnostic m_functional(const Trajectory& traj, const FluidParams& p,
                          const std::vector<double>& sigma_grid)
{
    if (traj.empty())
        throw std::invalid_argument("m_functional: empty trajectory");
    MtDiagnostic d;
    d.sigma_grid = sigma_grid;
    double running = 0.0;
    for (const auto& s : traj.states) {
        std::vector<double> w;
        double sum = 0.0;
        for (double sigma : sigma_grid) {
            const double v =
                std::pow(1.0 + s.t, -decay_bound(p.alpha, sigma)) * std::sqrt(lambda_norm2(s, sigma));
            w.push_back(v);
            sum += v;
        }
        running = std::max(running, sum);
        d.times.push_back(s.t);
        d.M.push_back(running);
        d.weighted.push_back(std::move(w));
    }
    return d;
}

GronwallReport highfreq_gronwall_check(const Trajectory& traj, const FluidParams& p, double sigma0,
                                       double r0, std::vector<double> c_grid, double C_max)
{
    if (traj.empty())
        throw std::invalid_argument("highfreq_gronwall_check: empty trajectory");
    if (!(r0 > 0.0))
        throw std::invalid_argument("highfreq_gronwall_check: r0 must be positive");
    if (c_grid.empty())
        for (int k = 0; k <= 12; ++k)
            c_grid.push_back(2.0 * p.mu * std::pow(r0, 2.0 * p.alpha) * std::exp2(-k));

    std::vector<double> t, lhs, sup_low;
    double running = 0.0;
    const auto low = [r0](const SpectralField& f) {
        SpectralField out(f.grid_ptr());
        const auto kmag = f.grid().kmag();
        for (std::size_t i = 0; i < f.size(); ++i)
            if (kmag[i] <= r0)
                out[i] = f[i];
        return out;
    };
    for (const auto& s : traj.states) {
        State sl = s;
        sl.for_each([&](SpectralField& f) { f = low(f); });
        running = std::max(running, lambda_norm2(sl, sigma0));
        t.push_back(s.t - traj.states.front().t);
        lhs.push_back(lambda_norm2(s, sigma0));
        sup_low.push_back(running);
    }

    GronwallReport rep;
    rep.c_grid = c_grid;
    rep.best_C = std::numeric_limits<double>::infinity();
    for (double c : c_grid) {
        double C = 0.0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            const double rhs = std::exp(-c * t[i]) * lhs.front() + sup_low[i];
            if (lhs[i] == 0.0)
                continue;
            C = std::max(C, rhs > 0.0 ? lhs[i] / rhs : std::numeric_limits<double>::infinity());
        }
        rep.C_min.push_back(C);
        if (C < rep.best_C) {
            rep.best_C = C;
            rep.best_c = c;
        }
    }
    rep.pass = rep.best_C <= C_max;
    return rep;
}

} // namespace fracns
