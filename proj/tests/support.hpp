#pragma once

#include "fracns/field.hpp"
#include "fracns/initial_data.hpp"
#include "fracns/multipliers.hpp"

#include <cmath>
#include <cstdint>
#include <random>

namespace fracns::testing {

// Random real field with envelope exp(-|m|^2 / width^2), no Nyquist content
// and (optionally) zero mean. Coefficients beyond max_mode are zero.
inline SpectralField random_field(const GridPtr& grid, std::uint64_t seed, int max_mode,
                                  bool mean_zero = true, double width = 4.0)
{
    std::mt19937_64 rng(seed);
    return random_spectral_field(grid, rng, max_mode, mean_zero, width);
}

// Field holding a single real Fourier pair at mode numbers +-m.
inline SpectralField single_mode(const GridPtr& grid, std::array<int, 3> m, cplx c = 1.0)
{
    SpectralField f(grid);
    const auto i = grid->flat_index(m);
    f[i] = c;
    std::array<int, 3> neg{-m[0], -m[1], -m[2]};
    const auto j = grid->flat_index(neg);
    if (j == i)
        f[i] = c.real();
    else
        f[j] = std::conj(c);
    return f;
}

inline double max_abs_diff(const SpectralField& a, const SpectralField& b)
{
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

inline double max_abs(const SpectralField& a)
{
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        d = std::max(d, std::abs(a[i]));
    return d;
}

inline bool bit_equal(const SpectralField& a, const SpectralField& b)
{
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].real() != b[i].real() || a[i].imag() != b[i].imag())
            return false;
    return true;
}

// Dealiased product by direct convolution, O(N^2):
// (ab)^(k) = L^{-d/2} sum_{p+q=k} a(p) b(q), kept inside the dealiasing band.
inline SpectralField dense_product(const SpectralField& a_in, const SpectralField& b_in)
{
    const auto a = dealias(a_in);
    const auto b = dealias(b_in);
    const Grid& g = a.grid();
    const int c = g.dealias_cutoff();
    SpectralField out(a.grid_ptr());
    const double scale = std::pow(g.box_length(), -0.5 * g.dim());
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (a[i] == cplx{})
            continue;
        const auto p = g.mode_numbers(i);
        for (std::size_t j = 0; j < g.size(); ++j) {
            if (b[j] == cplx{})
                continue;
            const auto q = g.mode_numbers(j);
            std::array<int, 3> k{p[0] + q[0], p[1] + q[1], p[2] + q[2]};
            bool inside = true;
            for (int ax = 0; ax < g.dim(); ++ax)
                inside = inside && std::abs(k[static_cast<std::size_t>(ax)]) <= c;
            if (inside)
                out[g.flat_index(k)] += scale * a[i] * b[j];
        }
    }
    return out;
}

} // namespace fracns::testing
