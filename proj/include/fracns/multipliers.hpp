#pragma once

#include "fracns/field.hpp"

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace fracns {

/// Fourier symbol m(k). The value at k = 0 is given separately: when it is
/// absent the operator is only defined on mean-zero fields.
struct Symbol {
    std::function<cplx(const WaveVector&)> at_nonzero;
    std::optional<cplx> at_zero;
};

/// (m F)^(k) = m(k) F^(k). Throws MeanZeroViolation when at_zero is absent and
/// F has a nonzero mean; std::domain_error if m is not finite at a retained k.
SpectralField apply_multiplier(const SpectralField& f, const Symbol& m);

/// (-Delta)^alpha, symbol |k|^{2 alpha} with value 0 at k = 0. Requires alpha > 0.
SpectralField fractional_laplacian(const SpectralField& f, double alpha);

/// Lambda^s, symbol |k|^s. For s < 0 the field must be mean-zero.
/// lambda_power(f, 2 alpha) and fractional_laplacian(f, alpha) agree bit for bit.
SpectralField lambda_power(const SpectralField& f, double s);

/// d/dx_axis, symbol i k_axis. Zero on the Nyquist planes, which keeps the
/// output Hermitian-symmetric.
SpectralField partial(const SpectralField& f, int axis);
std::vector<SpectralField> gradient(const SpectralField& f);
SpectralField divergence(std::span<const SpectralField> v);

/// Sharp truncation to |k| <= 1/eps. Requires eps > 0.
SpectralField friedrich_project(const SpectralField& f, double eps);
void friedrich_project_inplace(SpectralField& f, double eps);

/// Sharp low / medium / high decomposition: low on |k| <= r0, high on
/// |k| >= R0, medium in between. Every coefficient lands in exactly one part.
struct FrequencySplit {
    SpectralField low;
    SpectralField mid;
    SpectralField high;

    SpectralField low_band() const { return low + mid; }   // f^L
    SpectralField high_band() const { return mid + high; } // f^H
};

/// Requires 0 < r0 < R0.
FrequencySplit low_mid_high_split(const SpectralField& f, double r0, double R0);

/// Zeroes every mode with some |m_i| beyond the grid's dealiasing cutoff.
SpectralField dealias(const SpectralField& f);
void dealias_inplace(SpectralField& f);

/// Pseudo-spectral product: both factors are dealiased, multiplied pointwise
/// in physical space, transformed back and dealiased again. For factors inside
/// the 2/3 band this equals the exact truncated convolution.
SpectralField product(const SpectralField& a, const SpectralField& b);

} // namespace fracns
