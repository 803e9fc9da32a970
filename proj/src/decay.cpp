#include "fracns/decay.hpp"

#include "fracns/errors.hpp"
#include "fracns/littlewood_paley.hpp"
#include "fracns/linear.hpp"
#include "fracns/rhs.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace fracns {

namespace {

double bump(double r, double R)
{
    if (r >= R)
        return 0.0;
    const double x = r / R;
    return std::exp(1.0 - 1.0 / (1.0 - x * x));
}

RadialProfile weighted(std::string name, double R, std::function<double(double)> shape, double w_rho,
                       double w_long, double w_sol)
{
    if (!(R > 0.0))
        throw std::invalid_argument("radial profile support must be positive");
    RadialProfile p;
    p.name = std::move(name);
    p.support = R;
    p.rho = [shape, w_rho](double r) { return w_rho * shape(r); };
    p.longitudinal = [shape, w_long](double r) { return w_long * shape(r); };
    p.solenoidal = [shape, w_sol](double r) { return w_sol * shape(r); };
    return p;
}

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

RadialProfile bump_profile(double R, double w_rho, double w_long, double w_sol)
{
    return weighted("bump", R, [R](double r) { return bump(r, R); }, w_rho, w_long, w_sol);
}

RadialProfile ball_profile(double R, double w_rho, double w_long, double w_sol)
{
    return weighted("ball", R, [R](double r) { return r < R ? 1.0 : 0.0; }, w_rho, w_long, w_sol);
}

double rd_decay_quadrature(const FluidParams& p, double sigma, double t, const RadialProfile& profile,
                           int dim)
{
    if (!(sigma >= 0.0))
        throw std::invalid_argument("rd_decay_quadrature: sigma must be nonnegative");
    if (!(t >= 0.0))
        throw std::invalid_argument("rd_decay_quadrature: t must be nonnegative");
    if (dim != 2 && dim != 3)
        throw std::invalid_argument("rd_decay_quadrature: dim must be 2 or 3");
    if (!(profile.support > 0.0) || !profile.rho || !profile.longitudinal || !profile.solenoidal)
        throw std::invalid_argument("rd_decay_quadrature: profile '" + profile.name +
                                    "' needs a positive support and all three radial components");

    const double R = profile.support;
    const double power = dim - 1 + 2.0 * sigma;
    const auto integrand = [&](double r) {
        if (r <= 0.0 || r >= R)
            return 0.0;
        const double q = std::pow(r * r, p.alpha);
        const auto e = acoustic_propagator(r, q, t, p);
        const double rho = profile.rho(r), w = profile.longitudinal(r), sol = profile.solenoidal(r);
        // real amplitudes: the coupling is imaginary, so cross terms drop out
        const double acoustic = rho * rho * (e.e11 * e.e11 + e.coupling * e.coupling) +
                                w * w * (e.coupling * e.coupling + e.e22 * e.e22);
        return std::pow(r, power) * (acoustic + sol * sol * e.solenoidal * e.solenoidal);
    };
    // log2 of the slowest squared decay factor at r, used to stop past the peak
    const auto decay_exponent = [&](double r) {
        const auto ev = acoustic_eigenvalues(r, p);
        const double slow = std::max(ev[0].real(), ev[1].real());
        return 2.0 * t * std::max(slow, -p.mu * std::pow(r * r, p.alpha));
    };

    const double rs = t > 0.0 ? std::pow(1.0 / (2.0 * p.mu * t), 1.0 / (2.0 * p.alpha)) : R;
    const double scale = std::min(rs, R);
    std::vector<double> cuts{0.0};
    for (int k = -24;; ++k) {
        const double r = scale * std::exp2(0.5 * k);
        if (r >= R) {
            cuts.push_back(R);
            break;
        }
        cuts.push_back(r);
        if (r > rs && decay_exponent(r) < -200.0)
            break;
    }

    using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        // map each piece to [-1, 1] at unit size; the rule's error floor is absolute
        const double mid = 0.5 * (cuts[i] + cuts[i + 1]), half = 0.5 * (cuts[i + 1] - cuts[i]);
        const auto unit = [&](double x) { return integrand(mid + half * x); };
        double l1 = 0.0;
        GK::integrate(unit, -1.0, 1.0, 0, 1.0, nullptr, &l1);
        if (l1 == 0.0)
            continue;
        const auto scaled = [&](double x) { return unit(x) / l1; };
        total += half * l1 * GK::integrate(scaled, -1.0, 1.0, 12, 1e-12);
    }
    const double sphere = 2.0 * std::pow(std::numbers::pi, 0.5 * dim) / std::tgamma(0.5 * dim);
    return std::sqrt(sphere * total);
}

DecayCurve rd_decay_curve(const FluidParams& p, double sigma, const std::vector<double>& times,
                          const RadialProfile& profile, int dim)
{
    DecayCurve c;
    c.sigma = sigma;
    c.alpha = p.alpha;
    c.mu = p.mu;
    c.kappa = p.kappa;
    c.profile = profile.name;
    c.times = times;
    for (double t : times)
        c.values.push_back(rd_decay_quadrature(p, sigma, t, profile, dim));
    return c;
}

DecayCurve trajectory_decay_curve(const Trajectory& traj, const FluidParams& p, double sigma,
                                  const std::string& profile)
{
    DecayCurve c;
    c.sigma = sigma;
    c.alpha = p.alpha;
    c.mu = p.mu;
    c.kappa = p.kappa;
    c.profile = profile;
    const NormSpec spec{sigma, NormFlavor::homogeneous};
    for (const auto& s : traj.states) {
        double v = 0.0;
        s.for_each([&](const SpectralField& f) { v += sobolev_norm_squared(f, spec); });
        c.times.push_back(s.t);
        c.values.push_back(std::sqrt(v));
    }
    return c;
}

std::vector<double> log_times(double t1, double t2, int count)
{
    if (!(t1 > 0.0 && t2 > t1) || count < 2)
        throw std::invalid_argument("log_times needs 0 < t1 < t2 and count >= 2");
    std::vector<double> t;
    const double l1 = std::log(t1), l2 = std::log(t2);
    for (int i = 0; i < count; ++i)
        t.push_back(std::exp(l1 + (l2 - l1) * i / (count - 1)));
    t.front() = t1;
    t.back() = t2;
    return t;
}

void write_decay_csv(std::ostream& os, const DecayCurve& c)
{
    os << "# alpha=" << fmt(c.alpha) << " mu=" << fmt(c.mu) << " kappa=" << fmt(c.kappa)
       << " profile=" << (c.profile.empty() ? "-" : c.profile) << "\n";
    os << "t,value,sigma\n";
    for (std::size_t i = 0; i < c.times.size(); ++i)
        os << fmt(c.times[i]) << ',' << fmt(c.values[i]) << ',' << fmt(c.sigma) << '\n';
}

DecayCurve read_decay_csv(std::istream& is)
{
    DecayCurve c;
    std::string line;
    bool header = false;
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        if (line[0] == '#') {
            std::istringstream meta(line.substr(1));
            std::string kv;
            while (meta >> kv) {
                const auto eq = kv.find('=');
                if (eq == std::string::npos)
                    continue;
                const auto key = kv.substr(0, eq), val = kv.substr(eq + 1);
                if (key == "alpha")
                    c.alpha = std::stod(val);
                else if (key == "mu")
                    c.mu = std::stod(val);
                else if (key == "kappa")
                    c.kappa = std::stod(val);
                else if (key == "profile")
                    c.profile = val == "-" ? "" : val;
            }
            continue;
        }
        if (!header) {
            if (line != "t,value,sigma")
                throw std::runtime_error("decay CSV: expected header 't,value,sigma', got '" + line + "'");
            header = true;
            continue;
        }
        double t = 0, v = 0, s = 0;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &t, &v, &s) != 3)
            throw std::runtime_error("decay CSV: malformed row '" + line + "'");
        c.times.push_back(t);
        c.values.push_back(v);
        c.sigma = s;
    }
    if (!header)
        throw std::runtime_error("decay CSV: missing header");
    return c;
}

double DuhamelResidual::max_relative() const
{
    double m = 0.0;
    for (double r : relative)
        m = std::max(m, r);
    return m;
}

DuhamelResidual duhamel_residual(const Trajectory& traj, const FluidParams& p)
{
    DuhamelResidual out;
    if (traj.empty())
        return out;
    if (traj.size() > 1)
        traj.validate();
    const double h = traj.stride;
    const State& u0 = traj.states.front();

    // W_i = e^{t_i L} U0 + trapezoid(int_0^{t_i} e^{(t_i - tau) L} F dtau), advanced by
    // W_{i+1} = e^{hL}(W_i + h/2 F_i) + h/2 F_{i+1}
    std::optional<LinearPropagator> step;
    if (traj.size() > 1)
        step.emplace(u0.grid_ptr(), h, p);
    State w = u0;
    State f_prev = nonlinear_terms(u0, p);
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const State& u = traj.states[i];
        if (i > 0) {
            w.axpy(0.5 * h, f_prev);
            step->apply(w);
            const State f = nonlinear_terms(u, p);
            w.axpy(0.5 * h, f);
            f_prev = f;
        }
        const double abs = (u - w).l2_norm();
        const double norm = u.l2_norm();
        out.times.push_back(u.t);
        out.absolute.push_back(abs);
        out.relative.push_back(norm > 0.0 ? abs / norm : 0.0);
    }
    return out;
}

} // namespace fracns
