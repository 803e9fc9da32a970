#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace fracns {

using cplx = std::complex<double>;

/// Periodic box [0, L)^dim sampled by n points per axis.
///
/// Wavevectors are k = (2*pi/L) * m with integer m, |m_i| <= n/2. The mode
/// number of the FFT index i is m = i for i < n/2, m = i - n for i > n/2 and
/// m = -n/2 on the Nyquist index i = n/2, so |k| is symmetric under k -> -k.
struct GridSpec {
    int dim = 2;
    int n = 64;
    double box_length = 6.283185307179586;
    double dealias_fraction = 2.0 / 3.0;

    /// Throws std::invalid_argument if dim is not 2 or 3, n is not a power of
    /// two >= 4, L <= 0 or the dealias fraction is outside (0, 1].
    void validate() const;

    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

struct WaveVector {
    std::array<double, 3> k{};  // components beyond dim are zero
    double norm2 = 0.0;         // |k|^2, the same value the grid tables hold
    double norm = 0.0;
};

class Grid;
using GridPtr = std::shared_ptr<const Grid>;

/// Precomputed wavenumber tables and FFT plans for one GridSpec.
///
/// Storage is row-major over n^dim points with axis 0 slowest; the same flat
/// index addresses grid points in physical space and modes in Fourier space.
/// Grids are immutable and shared: make() returns the cached instance for an
/// equal spec while one is alive.
class Grid {
public:
    static GridPtr make(const GridSpec& spec);

    ~Grid();
    Grid(const Grid&) = delete;
    Grid& operator=(const Grid&) = delete;

    const GridSpec& spec() const noexcept { return spec_; }
    int dim() const noexcept { return spec_.dim; }
    int n() const noexcept { return spec_.n; }
    std::size_t size() const noexcept { return size_; }
    double box_length() const noexcept { return spec_.box_length; }
    double dx() const noexcept { return spec_.box_length / spec_.n; }
    double k0() const noexcept { return k0_; }

    std::span<const double> k(int axis) const { return k_[static_cast<std::size_t>(axis)]; }
    std::span<const double> k2() const { return k2_; }
    std::span<const double> kmag() const { return kmag_; }
    /// 1 where the mode survives the dealiasing mask.
    std::span<const std::uint8_t> dealias_mask() const { return dealias_; }
    /// 1 where some axis sits on its Nyquist index; first derivatives vanish there.
    std::span<const std::uint8_t> nyquist() const { return nyquist_; }

    int mode_number(int axis, std::size_t flat) const;
    std::array<int, 3> mode_numbers(std::size_t flat) const;
    /// Flat index of the signed mode numbers m (taken modulo n).
    std::size_t flat_index(std::array<int, 3> m) const;
    /// Flat index of -k.
    std::size_t mirror_index(std::size_t flat) const;
    WaveVector wave(std::size_t flat) const;
    std::array<double, 3> point(std::size_t flat) const;

    /// Largest |k| on the full lattice and on the dealiased lattice.
    double kmax() const noexcept { return kmax_; }
    double kmax_dealiased() const noexcept { return kmax_dealiased_; }
    /// Largest retained |m_i| under the dealiasing mask.
    int dealias_cutoff() const noexcept { return dealias_cutoff_; }

    // Unnormalized DFTs (sign -1 forward, +1 backward); in and out must differ.
    void fft_forward(const cplx* in, cplx* out) const;
    void fft_backward(const cplx* in, cplx* out) const;
    /// Factors turning the raw DFT pair into the unitary pair
    /// fhat(k) = L^{d/2}/N sum_j f_j e^{-ik.x_j},  f_j = L^{-d/2} sum_k fhat(k) e^{ik.x_j}.
    double forward_scale() const noexcept { return forward_scale_; }
    double backward_scale() const noexcept { return backward_scale_; }

private:
    explicit Grid(const GridSpec& spec);

    GridSpec spec_;
    std::size_t size_ = 0;
    double k0_ = 0.0;
    std::array<std::vector<double>, 3> k_;
    std::vector<double> k2_, kmag_;
    std::vector<std::uint8_t> dealias_, nyquist_;
    double kmax_ = 0.0, kmax_dealiased_ = 0.0;
    int dealias_cutoff_ = 0;
    double forward_scale_ = 1.0, backward_scale_ = 1.0;
    void* plan_forward_ = nullptr;
    void* plan_backward_ = nullptr;
};

} // namespace fracns
