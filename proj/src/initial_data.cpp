#include "fracns/initial_data.hpp"

#include "fracns/energy.hpp"
#include "fracns/multipliers.hpp"

#include <cmath>
#include <stdexcept>

namespace fracns {

namespace {

SpectralField gaussian_bumps(const GridPtr& grid, std::mt19937_64& rng, double width, int bumps)
{
    const int d = grid->dim();
    const double L = grid->box_length();
    std::uniform_real_distribution<double> centre(0.25 * L, 0.75 * L);
    std::normal_distribution<double> gauss(0.0, 1.0);

    RealField f(grid);
    for (int b = 0; b < bumps; ++b) {
        std::array<double, 3> c{}, dir{};
        double norm = 0.0;
        for (int a = 0; a < d; ++a) {
            c[static_cast<std::size_t>(a)] = centre(rng);
            dir[static_cast<std::size_t>(a)] = gauss(rng);
            norm += dir[static_cast<std::size_t>(a)] * dir[static_cast<std::size_t>(a)];
        }
        const double weight = gauss(rng);
        norm = std::sqrt(norm);
        for (std::size_t i = 0; i < f.size(); ++i) {
            const auto x = grid->point(i);
            double r2 = 0.0, proj = 0.0;
            for (int a = 0; a < d; ++a) {
                const auto ia = static_cast<std::size_t>(a);
                const double dx = x[ia] - c[ia];
                r2 += dx * dx;
                proj += dx * dir[ia] / norm;
            }
            // directional derivative of exp(-r^2 / (2 w^2)), up to the factor -1/w^2
            f[i] += weight * proj / width * std::exp(-0.5 * r2 / (width * width));
        }
    }
    SpectralField F = transform(f);
    F[0] = 0.0;
    F.symmetrize();
    return F;
}

} // namespace

SpectralField random_spectral_field(const GridPtr& grid, std::mt19937_64& rng, int max_mode,
                                    bool mean_zero, double width)
{
    std::normal_distribution<double> gauss(0.0, 1.0);
    SpectralField f(grid);
    for (std::size_t i = 0; i < f.size(); ++i) {
        const auto m = grid->mode_numbers(i);
        bool keep = !grid->nyquist()[i];
        double r2 = 0.0;
        for (int a = 0; a < grid->dim(); ++a) {
            const int ma = m[static_cast<std::size_t>(a)];
            keep = keep && std::abs(ma) <= max_mode;
            r2 += static_cast<double>(ma) * ma;
        }
        const double re = gauss(rng);
        const double im = gauss(rng);
        if (keep)
            f[i] = std::exp(-r2 / (width * width)) * cplx(re, im);
    }
    if (mean_zero)
        f[0] = 0.0;
    f.symmetrize();
    return f;
}

State make_initial_state(const GridPtr& grid, const InitialDataSpec& spec, double s_reg)
{
    State s = State::zero(grid);
    if (spec.family == "zero")
        return s;

    std::mt19937_64 rng(spec.seed);
    if (spec.family == "gaussian-bumps") {
        if (!(spec.width > 0.0) || spec.bumps < 1)
            throw std::invalid_argument("gaussian-bumps needs width > 0 and bumps >= 1");
        s.for_each([&](SpectralField& f) { f = gaussian_bumps(grid, rng, spec.width, spec.bumps); });
    } else if (spec.family == "random-spectral") {
        if (!(spec.width > 0.0))
            throw std::invalid_argument("random-spectral needs width > 0");
        s.for_each([&](SpectralField& f) {
            f = random_spectral_field(grid, rng, grid->n() / 2 - 1, true, spec.width);
        });
    } else {
        throw std::invalid_argument("unknown initial-data family '" + spec.family + "'");
    }
    s.for_each([](SpectralField& f) { dealias_inplace(f); });

    if (spec.target_E0) {
        const double e = energy_E0(s, s_reg);
        if (e == 0.0)
            throw std::invalid_argument("initial data vanish on this grid");
        s *= std::sqrt(*spec.target_E0 / e);
    } else {
        s *= spec.amplitude;
    }
    return s;
}

} // namespace fracns
