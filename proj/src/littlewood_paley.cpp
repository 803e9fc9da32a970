#include "fracns/littlewood_paley.hpp"

#include "fracns/errors.hpp"
#include "fracns/multipliers.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fracns {

int block_index(double k2)
{
    if (k2 < 1.0)
        return -1;
    // k2 = m 2^e with m in [0.5, 1), so floor(log2 k2) = e - 1 and |k| sits in
    // [2^j, 2^{j+1}) exactly when floor(log2 k2) is 2j or 2j + 1.
    int e = 0;
    std::frexp(k2, &e);
    return (e - 1) / 2;
}

int max_block(const Grid& grid) { return block_index(grid.kmax() * grid.kmax()); }

SpectralField lp_block(const SpectralField& f, int j)
{
    if (j < -1)
        throw std::invalid_argument("lp_block: block index must be >= -1, got " + std::to_string(j));
    SpectralField out(f.grid_ptr());
    const auto k2 = f.grid().k2();
    for (std::size_t i = 0; i < f.size(); ++i)
        if (block_index(k2[i]) == j)
            out[i] = f[i];
    return out;
}

double sobolev_norm_squared(const SpectralField& f, NormSpec spec)
{
    if (spec.s == 0.0)
        return f.l2_norm_squared();
    const auto k2 = f.grid().k2();
    double sum = 0.0;
    if (spec.flavor == NormFlavor::inhomogeneous) {
        for (std::size_t i = 0; i < f.size(); ++i)
            sum += std::pow(1.0 + k2[i], spec.s) * std::norm(f[i]);
        return sum;
    }
    if (spec.s < 0.0 && f.mean_coeff() != cplx{})
        throw MeanZeroViolation("homogeneous Sobolev norm with s < 0 requires a mean-zero field");
    for (std::size_t i = 1; i < f.size(); ++i)
        sum += std::pow(k2[i], spec.s) * std::norm(f[i]);
    return sum;
}

double sobolev_norm(const SpectralField& f, NormSpec spec)
{
    return std::sqrt(sobolev_norm_squared(f, spec));
}

double lp_equivalence_ratio(const SpectralField& f, double s)
{
    const auto k2 = f.grid().k2();
    double blocks = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const int j = block_index(k2[i]);
        const double w = j < 0 ? 1.0 : std::exp2(2.0 * j * s);
        blocks += w * std::norm(f[i]);
    }
    if (blocks == 0.0)
        throw UndefinedRatio("lp_equivalence_ratio of the zero field");
    return sobolev_norm_squared(f, {s, NormFlavor::inhomogeneous}) / blocks;
}

BernsteinRatios bernstein_verify(const SpectralField& f, int j, double alpha)
{
    if (j < 0)
        throw std::invalid_argument("bernstein_verify: annulus blocks start at j = 0");
    if (!(alpha > 0.0))
        throw std::invalid_argument("bernstein_verify: alpha must be positive");
    const SpectralField g = lp_block(f, j);
    const double norm = g.l2_norm();
    if (norm == 0.0)
        throw UndefinedRatio("bernstein_verify: block " + std::to_string(j) + " is empty");
    const double lifted = fractional_laplacian(g, alpha).l2_norm();
    // same expression as the multiplier, so a mode on the inner edge gives exactly 1
    const double inner_edge = std::pow(std::ldexp(1.0, 2 * j), alpha);
    const double outer_edge = std::pow(std::ldexp(1.0, 2 * (j + 1)), alpha);
    return {lifted / (inner_edge * norm), lifted / (outer_edge * norm)};
}

SpectralField transport(std::span<const SpectralField> u, const SpectralField& g)
{
    const int d = g.grid().dim();
    if (static_cast<int>(u.size()) != d)
        throw GridMismatch("transport: velocity has " + std::to_string(u.size()) +
                           " components on a " + std::to_string(d) + "-dimensional grid");
    SpectralField out(g.grid_ptr());
    for (int a = 0; a < d; ++a)
        out += product(u[static_cast<std::size_t>(a)], partial(g, a));
    return out;
}

SpectralField commutator_transport(std::span<const SpectralField> u, const SpectralField& f, int j)
{
    return transport(u, lp_block(f, j)) - lp_block(transport(u, f), j);
}

SpectralField commutator_lambda(const SpectralField& g, const SpectralField& h, double alpha)
{
    return lambda_power(product(g, h), alpha) - product(g, lambda_power(h, alpha));
}

std::vector<double> commutator_constants(std::span<const SpectralField> u, const SpectralField& f,
                                         double sigma)
{
    const int d = f.grid().dim();
    if (!(sigma > 0.5 * d - 1.0))
        throw std::invalid_argument("commutator_constants: sigma must exceed d/2 - 1");
    const NormSpec h{sigma + 1.0, NormFlavor::inhomogeneous};
    double grad_u = 0.0;
    for (const auto& c : u)
        for (const auto& dc : gradient(c))
            grad_u += sobolev_norm_squared(dc, h);
    const double denom = std::sqrt(grad_u) * sobolev_norm(f, h);
    if (denom == 0.0)
        throw UndefinedRatio("commutator_constants: grad u or f vanishes");

    std::vector<double> c;
    for (int j = -1; j <= max_block(f.grid()); ++j) {
        const double comm = commutator_transport(u, f, j).l2_norm();
        c.push_back(std::exp2(j * (sigma + 1.0)) * comm / denom);
    }
    return c;
}

SplitInequalities split_inequalities(const SpectralField& f, double r0, double R0, int k0, int k,
                                     int k1)
{
    if (!(0 <= k0 && k0 <= k && k <= k1))
        throw std::invalid_argument("split_inequalities requires 0 <= k0 <= k <= k1");
    const auto parts = low_mid_high_split(f, r0, R0);
    const auto dk = [](const SpectralField& g, int order) {
        return sobolev_norm(g, {static_cast<double>(order), NormFlavor::homogeneous});
    };
    SplitInequalities out{};
    out.low_scaling = {dk(parts.low, k), std::pow(r0, k - k0) * dk(parts.low, k0)};
    out.low_by_full = {dk(parts.low, k), dk(f, k1)};
    out.high_scaling = {dk(parts.high, k), std::pow(R0, k - k1) * dk(parts.high, k1)};
    out.high_by_full = {dk(parts.high, k), dk(f, k1)};
    out.mid_lower = {std::pow(r0, k) * parts.mid.l2_norm(), dk(parts.mid, k)};
    out.mid_upper = {dk(parts.mid, k), std::pow(R0, k) * parts.mid.l2_norm()};
    return out;
}

} // namespace fracns
