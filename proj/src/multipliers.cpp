#include "fracns/multipliers.hpp"

#include "fracns/errors.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fracns {

namespace {

void require_mean_zero(const SpectralField& f, const char* what)
{
    if (f.mean_coeff() != cplx{})
        throw MeanZeroViolation(std::string(what) + " requires a mean-zero field");
}

// Applies |k|^{2p} = (|k|^2)^p, with the k = 0 value fixed separately.
SpectralField radial_power(const SpectralField& f, double p, cplx at_zero)
{
    SpectralField out(f.grid_ptr());
    const auto k2 = f.grid().k2();
    out[0] = at_zero * f[0];
    for (std::size_t i = 1; i < f.size(); ++i)
        out[i] = std::pow(k2[i], p) * f[i];
    return out;
}

} // namespace

SpectralField apply_multiplier(const SpectralField& f, const Symbol& m)
{
    const Grid& grid = f.grid();
    SpectralField out(f.grid_ptr());
    if (m.at_zero) {
        out[0] = *m.at_zero * f[0];
    } else {
        require_mean_zero(f, "a multiplier without a k = 0 value");
        out[0] = cplx{};
    }
    for (std::size_t i = 1; i < f.size(); ++i) {
        const cplx v = m.at_nonzero(grid.wave(i));
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::domain_error("multiplier is not finite at a retained wavevector");
        out[i] = v * f[i];
    }
    return out;
}

SpectralField fractional_laplacian(const SpectralField& f, double alpha)
{
    if (!(alpha > 0.0))
        throw std::invalid_argument("fractional_laplacian: alpha must be positive");
    return radial_power(f, alpha, cplx{});
}

SpectralField lambda_power(const SpectralField& f, double s)
{
    if (s == 0.0)
        return f;
    if (s < 0.0) {
        require_mean_zero(f, "lambda_power with s < 0");
        return radial_power(f, s / 2.0, cplx{});
    }
    return radial_power(f, s / 2.0, cplx{});
}

SpectralField partial(const SpectralField& f, int axis)
{
    const Grid& grid = f.grid();
    if (axis < 0 || axis >= grid.dim())
        throw std::invalid_argument("partial: axis out of range");
    SpectralField out(f.grid_ptr());
    const auto k = grid.k(axis);
    const auto nyq = grid.nyquist();
    const auto n = static_cast<std::size_t>(grid.n());
    std::size_t stride = 1;
    for (int a = grid.dim() - 1; a > axis; --a)
        stride *= n;
    for (std::size_t i = 0; i < f.size(); ++i) {
        // only the Nyquist index of this axis is dropped
        const bool own_nyquist = nyq[i] && (i / stride) % n == n / 2;
        out[i] = own_nyquist ? cplx{} : cplx(0.0, k[i]) * f[i];
    }
    return out;
}

std::vector<SpectralField> gradient(const SpectralField& f)
{
    std::vector<SpectralField> out;
    out.reserve(static_cast<std::size_t>(f.grid().dim()));
    for (int a = 0; a < f.grid().dim(); ++a)
        out.push_back(partial(f, a));
    return out;
}

SpectralField divergence(std::span<const SpectralField> v)
{
    if (v.empty())
        throw std::invalid_argument("divergence: empty vector field");
    const int d = v[0].grid().dim();
    if (static_cast<int>(v.size()) != d)
        throw GridMismatch("divergence: vector field has " + std::to_string(v.size()) +
                           " components on a " + std::to_string(d) + "-dimensional grid");
    SpectralField out = partial(v[0], 0);
    for (int a = 1; a < d; ++a)
        out += partial(v[static_cast<std::size_t>(a)], a);
    return out;
}

void friedrich_project_inplace(SpectralField& f, double eps)
{
    if (!(eps > 0.0))
        throw std::invalid_argument("friedrich_project: eps must be positive");
    const double cutoff = 1.0 / eps;
    const auto kmag = f.grid().kmag();
    for (std::size_t i = 0; i < f.size(); ++i)
        if (kmag[i] > cutoff)
            f[i] = cplx{};
}

SpectralField friedrich_project(const SpectralField& f, double eps)
{
    SpectralField out = f;
    friedrich_project_inplace(out, eps);
    return out;
}

FrequencySplit low_mid_high_split(const SpectralField& f, double r0, double R0)
{
    if (!(r0 > 0.0) || !(r0 < R0))
        throw std::invalid_argument("low_mid_high_split requires 0 < r0 < R0");
    FrequencySplit split{SpectralField(f.grid_ptr()), SpectralField(f.grid_ptr()),
                         SpectralField(f.grid_ptr())};
    const auto kmag = f.grid().kmag();
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (kmag[i] <= r0)
            split.low[i] = f[i];
        else if (kmag[i] >= R0)
            split.high[i] = f[i];
        else
            split.mid[i] = f[i];
    }
    return split;
}

void dealias_inplace(SpectralField& f)
{
    const auto mask = f.grid().dealias_mask();
    for (std::size_t i = 0; i < f.size(); ++i)
        if (!mask[i])
            f[i] = cplx{};
}

SpectralField dealias(const SpectralField& f)
{
    SpectralField out = f;
    dealias_inplace(out);
    return out;
}

SpectralField product(const SpectralField& a, const SpectralField& b)
{
    require_same_grid(a.grid(), b.grid());
    const RealField pa = inverse(dealias(a));
    const RealField pb = inverse(dealias(b));
    RealField prod(a.grid_ptr());
    for (std::size_t i = 0; i < prod.size(); ++i)
        prod[i] = pa[i] * pb[i];
    SpectralField out = transform(prod);
    dealias_inplace(out);
    return out;
}

} // namespace fracns
