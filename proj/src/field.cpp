#include "fracns/field.hpp"

#include "fracns/errors.hpp"

#include <algorithm>
#include <cmath>

namespace fracns {

void require_same_grid(const Grid& a, const Grid& b)
{
    if (&a != &b && !(a.spec() == b.spec()))
        throw GridMismatch("fields live on different grids");
}

RealField::RealField(GridPtr grid) : grid_(std::move(grid)), samples_(grid_->size(), 0.0) {}

RealField::RealField(GridPtr grid, std::vector<double> samples)
    : grid_(std::move(grid)), samples_(std::move(samples))
{
    if (samples_.size() != grid_->size())
        throw GridMismatch("sample count " + std::to_string(samples_.size()) +
                           " does not match grid size " + std::to_string(grid_->size()));
}

RealField RealField::from_function(GridPtr grid,
                                   const std::function<double(const std::array<double, 3>&)>& f)
{
    RealField out(grid);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = f(grid->point(i));
    return out;
}

double RealField::l2_norm() const
{
    double sum = 0.0;
    for (double v : samples_)
        sum += v * v;
    return std::sqrt(sum * std::pow(grid_->dx(), grid_->dim()));
}

double RealField::linf_norm() const
{
    double m = 0.0;
    for (double v : samples_)
        m = std::max(m, std::abs(v));
    return m;
}

double RealField::min() const { return *std::min_element(samples_.begin(), samples_.end()); }

SpectralField::SpectralField(GridPtr grid) : grid_(std::move(grid)), coeffs_(grid_->size()) {}

SpectralField::SpectralField(GridPtr grid, std::vector<cplx> coeffs)
    : grid_(std::move(grid)), coeffs_(std::move(coeffs))
{
    if (coeffs_.size() != grid_->size())
        throw GridMismatch("coefficient count " + std::to_string(coeffs_.size()) +
                           " does not match grid size " + std::to_string(grid_->size()));
}

double SpectralField::l2_norm_squared() const
{
    double sum = 0.0;
    for (const auto& c : coeffs_)
        sum += std::norm(c);
    return sum;
}

double SpectralField::l2_norm() const { return std::sqrt(l2_norm_squared()); }

double SpectralField::hermitian_defect() const
{
    double scale = 0.0;
    double defect = 0.0;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        scale = std::max(scale, std::abs(coeffs_[i]));
        const auto j = grid_->mirror_index(i);
        defect = std::max(defect, std::abs(coeffs_[j] - std::conj(coeffs_[i])));
    }
    return scale > 0.0 ? defect / scale : 0.0;
}

void SpectralField::symmetrize()
{
    std::vector<cplx> out(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        const auto j = grid_->mirror_index(i);
        out[i] = 0.5 * (coeffs_[i] + std::conj(coeffs_[j]));
    }
    coeffs_ = std::move(out);
}

SpectralField& SpectralField::operator+=(const SpectralField& o)
{
    require_same_grid(*grid_, *o.grid_);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        coeffs_[i] += o.coeffs_[i];
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o)
{
    require_same_grid(*grid_, *o.grid_);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        coeffs_[i] -= o.coeffs_[i];
    return *this;
}

SpectralField& SpectralField::operator*=(double a)
{
    for (auto& c : coeffs_)
        c *= a;
    return *this;
}

SpectralField& SpectralField::axpy(double a, const SpectralField& x)
{
    require_same_grid(*grid_, *x.grid_);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        coeffs_[i] += a * x.coeffs_[i];
    return *this;
}

void SpectralField::set_zero() { std::fill(coeffs_.begin(), coeffs_.end(), cplx{}); }

cplx inner(const SpectralField& f, const SpectralField& g)
{
    require_same_grid(f.grid(), g.grid());
    cplx sum{};
    for (std::size_t i = 0; i < f.size(); ++i)
        sum += std::conj(f[i]) * g[i];
    return sum;
}

SpectralField transform(const RealField& f)
{
    const Grid& grid = f.grid();
    std::vector<cplx> in(grid.size());
    for (std::size_t i = 0; i < in.size(); ++i)
        in[i] = cplx(f[i], 0.0);
    std::vector<cplx> out(grid.size());
    grid.fft_forward(in.data(), out.data());
    const double scale = grid.forward_scale();
    for (auto& c : out)
        c *= scale;
    return SpectralField(f.grid_ptr(), std::move(out));
}

RealField inverse(const SpectralField& f)
{
    const Grid& grid = f.grid();
    std::vector<cplx> out(grid.size());
    grid.fft_backward(f.coeffs().data(), out.data());
    const double scale = grid.backward_scale();
    std::vector<double> samples(grid.size());
    for (std::size_t i = 0; i < samples.size(); ++i)
        samples[i] = out[i].real() * scale;
    return RealField(f.grid_ptr(), std::move(samples));
}

} // namespace fracns
