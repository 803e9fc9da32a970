#include "fracns/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <tuple>

namespace fracns {

namespace {

// The FFTW planner is not thread-safe; executing a finished plan is.
std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}

using SpecKey = std::tuple<int, int, double, double>;

SpecKey key_of(const GridSpec& s) { return {s.dim, s.n, s.box_length, s.dealias_fraction}; }

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

} // namespace

void GridSpec::validate() const
{
    if (dim != 2 && dim != 3)
        throw std::invalid_argument("grid.dim must be 2 or 3, got " + std::to_string(dim));
    if (n < 4 || !is_power_of_two(n))
        throw std::invalid_argument("grid.n must be a power of two >= 4, got " + std::to_string(n));
    if (!(box_length > 0.0) || !std::isfinite(box_length))
        throw std::invalid_argument("grid.box_length must be positive");
    if (!(dealias_fraction > 0.0 && dealias_fraction <= 1.0))
        throw std::invalid_argument("grid.dealias_fraction must lie in (0, 1]");
}

GridPtr Grid::make(const GridSpec& spec)
{
    spec.validate();
    static std::mutex cache_mutex;
    static std::map<SpecKey, std::weak_ptr<const Grid>> cache;

    std::lock_guard lock(cache_mutex);
    auto& slot = cache[key_of(spec)];
    if (auto alive = slot.lock())
        return alive;
    GridPtr grid(new Grid(spec));
    slot = grid;
    return grid;
}

Grid::Grid(const GridSpec& spec) : spec_(spec)
{
    const int d = spec.dim;
    const int n = spec.n;
    size_ = 1;
    for (int i = 0; i < d; ++i)
        size_ *= static_cast<std::size_t>(n);
    k0_ = 2.0 * std::numbers::pi / spec.box_length;

    dealias_cutoff_ = static_cast<int>(std::floor(spec.dealias_fraction * n / 2.0));

    for (int a = 0; a < 3; ++a)
        k_[static_cast<std::size_t>(a)].assign(size_, 0.0);
    k2_.assign(size_, 0.0);
    kmag_.assign(size_, 0.0);
    dealias_.assign(size_, 1);
    nyquist_.assign(size_, 0);

    for (std::size_t flat = 0; flat < size_; ++flat) {
        const auto m = mode_numbers(flat);
        double sum = 0.0;
        for (int a = 0; a < d; ++a) {
            const double ka = k0_ * m[static_cast<std::size_t>(a)];
            k_[static_cast<std::size_t>(a)][flat] = ka;
            sum += ka * ka;
            if (std::abs(m[static_cast<std::size_t>(a)]) > dealias_cutoff_)
                dealias_[flat] = 0;
            if (m[static_cast<std::size_t>(a)] == -n / 2)
                nyquist_[flat] = 1;
        }
        k2_[flat] = sum;
        kmag_[flat] = std::sqrt(sum);
        kmax_ = std::max(kmax_, kmag_[flat]);
        if (dealias_[flat])
            kmax_dealiased_ = std::max(kmax_dealiased_, kmag_[flat]);
    }

    forward_scale_ = std::pow(spec.box_length, 0.5 * d) / static_cast<double>(size_);
    backward_scale_ = std::pow(spec.box_length, -0.5 * d);

    std::array<int, 3> dims{n, n, n};
    std::lock_guard lock(planner_mutex());
    auto* a = fftw_alloc_complex(size_);
    auto* b = fftw_alloc_complex(size_);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    plan_forward_ = fftw_plan_dft(d, dims.data(), a, b, FFTW_FORWARD, flags);
    plan_backward_ = fftw_plan_dft(d, dims.data(), a, b, FFTW_BACKWARD, flags);
    fftw_free(a);
    fftw_free(b);
    if (!plan_forward_ || !plan_backward_)
        throw std::runtime_error("FFTW planning failed");
}

Grid::~Grid()
{
    std::lock_guard lock(planner_mutex());
    if (plan_forward_)
        fftw_destroy_plan(static_cast<fftw_plan>(plan_forward_));
    if (plan_backward_)
        fftw_destroy_plan(static_cast<fftw_plan>(plan_backward_));
}

int Grid::mode_number(int axis, std::size_t flat) const
{
    const auto n = static_cast<std::size_t>(spec_.n);
    std::size_t stride = 1;
    for (int a = spec_.dim - 1; a > axis; --a)
        stride *= n;
    const int i = static_cast<int>((flat / stride) % n);
    return i < spec_.n / 2 ? i : i - spec_.n;
}

std::array<int, 3> Grid::mode_numbers(std::size_t flat) const
{
    std::array<int, 3> m{0, 0, 0};
    for (int a = 0; a < spec_.dim; ++a)
        m[static_cast<std::size_t>(a)] = mode_number(a, flat);
    return m;
}

std::size_t Grid::flat_index(std::array<int, 3> m) const
{
    const int n = spec_.n;
    std::size_t flat = 0;
    for (int a = 0; a < spec_.dim; ++a) {
        const int i = ((m[static_cast<std::size_t>(a)] % n) + n) % n;
        flat = flat * static_cast<std::size_t>(n) + static_cast<std::size_t>(i);
    }
    return flat;
}

std::size_t Grid::mirror_index(std::size_t flat) const
{
    auto m = mode_numbers(flat);
    for (auto& v : m)
        v = -v;
    return flat_index(m);
}

WaveVector Grid::wave(std::size_t flat) const
{
    WaveVector w;
    for (int a = 0; a < spec_.dim; ++a)
        w.k[static_cast<std::size_t>(a)] = k_[static_cast<std::size_t>(a)][flat];
    w.norm2 = k2_[flat];
    w.norm = kmag_[flat];
    return w;
}

std::array<double, 3> Grid::point(std::size_t flat) const
{
    std::array<double, 3> x{0.0, 0.0, 0.0};
    const auto n = static_cast<std::size_t>(spec_.n);
    for (int a = spec_.dim - 1; a >= 0; --a) {
        x[static_cast<std::size_t>(a)] = dx() * static_cast<double>(flat % n);
        flat /= n;
    }
    return x;
}

void Grid::fft_forward(const cplx* in, cplx* out) const
{
    fftw_execute_dft(static_cast<fftw_plan>(plan_forward_),
                     reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
}

void Grid::fft_backward(const cplx* in, cplx* out) const
{
    fftw_execute_dft(static_cast<fftw_plan>(plan_backward_),
                     reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
}

} // namespace fracns
