#pragma once

#include "fracns/grid.hpp"

#include <functional>
#include <span>
#include <vector>

namespace fracns {

/// Real samples of a field at the grid points.
class RealField {
public:
    explicit RealField(GridPtr grid);
    RealField(GridPtr grid, std::vector<double> samples);

    /// Samples f(x) at every grid point.
    static RealField from_function(GridPtr grid,
                                   const std::function<double(const std::array<double, 3>&)>& f);

    const Grid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }
    std::size_t size() const { return samples_.size(); }

    std::span<double> samples() { return samples_; }
    std::span<const double> samples() const { return samples_; }
    double& operator[](std::size_t i) { return samples_[i]; }
    double operator[](std::size_t i) const { return samples_[i]; }

    /// (L/n)^d sum_j f_j^2, the box L^2 norm of the trigonometric interpolant.
    double l2_norm() const;
    double linf_norm() const;
    double min() const;

private:
    GridPtr grid_;
    std::vector<double> samples_;
};

/// Fourier coefficients of a field on the periodic grid, under the unitary
/// normalization f(x) = L^{-d/2} sum_k fhat(k) e^{ik.x}. With it the box L^2
/// norm is exactly sum_k |fhat(k)|^2 and a single mode with coefficient 1 has
/// unit L^2 norm.
class SpectralField {
public:
    explicit SpectralField(GridPtr grid);
    SpectralField(GridPtr grid, std::vector<cplx> coeffs);

    const Grid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }
    std::size_t size() const { return coeffs_.size(); }

    std::span<cplx> coeffs() { return coeffs_; }
    std::span<const cplx> coeffs() const { return coeffs_; }
    cplx& operator[](std::size_t i) { return coeffs_[i]; }
    const cplx& operator[](std::size_t i) const { return coeffs_[i]; }
    /// Coefficient of the k = 0 mode.
    cplx mean_coeff() const { return coeffs_[0]; }

    double l2_norm_squared() const;
    double l2_norm() const;
    /// max_k |fhat(-k) - conj(fhat(k))| relative to max_k |fhat(k)| (0 for the zero field).
    double hermitian_defect() const;
    /// Replaces the coefficients by their Hermitian-symmetric part, so the field is real.
    void symmetrize();

    SpectralField& operator+=(const SpectralField& o);
    SpectralField& operator-=(const SpectralField& o);
    SpectralField& operator*=(double a);
    /// this += a * x
    SpectralField& axpy(double a, const SpectralField& x);
    void set_zero();

    friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
    friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
    friend SpectralField operator*(double s, SpectralField a) { return a *= s; }

private:
    GridPtr grid_;
    std::vector<cplx> coeffs_;
};

/// Throws GridMismatch unless both fields live on equal grids.
void require_same_grid(const Grid& a, const Grid& b);

/// sum_k conj(f(k)) g(k), the L^2 inner product <f, g>.
cplx inner(const SpectralField& f, const SpectralField& g);

SpectralField transform(const RealField& f);
/// Real part of the inverse transform; exact for Hermitian-symmetric input.
RealField inverse(const SpectralField& f);

} // namespace fracns
