#include "fracns/errors.hpp"
#include "fracns/multipliers.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace fracns;
using fracns::testing::bit_equal;
using fracns::testing::max_abs;
using fracns::testing::max_abs_diff;
using fracns::testing::random_field;
using fracns::testing::single_mode;

namespace {

constexpr double pi = std::numbers::pi;

GridPtr grid2(int n = 32, double L = 2 * pi) { return Grid::make({2, n, L, 2.0 / 3.0}); }
GridPtr grid3(int n = 16, double L = 2 * pi) { return Grid::make({3, n, L, 2.0 / 3.0}); }

RealField smooth_bump(const GridPtr& g)
{
    const double L = g->box_length();
    return RealField::from_function(g, [L](const std::array<double, 3>& x) {
        double r2 = 0.0;
        for (double v : x)
            r2 += (v - L / 2) * (v - L / 2);
        return std::exp(-r2) + 0.3 * std::sin(2 * pi * x[0] / L);
    });
}

} // namespace

TEST_CASE("grid spec validation")
{
    CHECK_THROWS_AS(Grid::make({4, 16, 1.0, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(Grid::make({2, 12, 1.0, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(Grid::make({2, 16, 0.0, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(Grid::make({2, 16, 1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(Grid::make({2, 16, 1.0, 1.5}), std::invalid_argument);
    CHECK(Grid::make({2, 16, 1.0, 0.5}) == Grid::make({2, 16, 1.0, 0.5}));
}

TEST_CASE("wavenumber table is symmetric under k -> -k")
{
    for (const auto& g : {grid2(16, 3.0), grid3(8, 5.0)}) {
        for (std::size_t i = 0; i < g->size(); ++i) {
            const auto j = g->mirror_index(i);
            CHECK(g->kmag()[i] == g->kmag()[j]);
            CHECK(g->dealias_mask()[i] == g->dealias_mask()[j]);
        }
        CHECK(g->mode_number(0, static_cast<std::size_t>(g->n() / 2) *
                                    static_cast<std::size_t>(std::pow(g->n(), g->dim() - 1))) ==
              -g->n() / 2);
    }
}

TEST_CASE("zero field round trip")
{
    auto g = grid2(16);
    RealField f(g);
    const auto F = transform(f);
    CHECK(max_abs(F) == 0.0);
    CHECK(inverse(F).linf_norm() == 0.0);
}

TEST_CASE("cosine has exactly two coefficients of equal modulus")
{
    const double L = 3.0;
    auto g = grid2(16, L);
    const auto f = RealField::from_function(
        g, [L](const std::array<double, 3>& x) { return std::cos(2 * pi * x[0] / L); });
    const auto F = transform(f);
    const auto ip = g->flat_index({1, 0, 0});
    const auto im = g->flat_index({-1, 0, 0});
    // f = L^{-1} (L/2)(e^{ikx} + e^{-ikx})
    CHECK(std::abs(F[ip]) == doctest::Approx(L / 2).epsilon(1e-14));
    CHECK(std::abs(F[im]) == doctest::Approx(L / 2).epsilon(1e-14));
    double rest = 0.0;
    for (std::size_t i = 0; i < F.size(); ++i)
        if (i != ip && i != im)
            rest = std::max(rest, std::abs(F[i]));
    CHECK(rest < 1e-14);
}

TEST_CASE("round trip and Parseval")
{
    for (const auto& g : {grid2(64, 10.0), grid3(16, 2 * pi)}) {
        const auto f = smooth_bump(g);
        const auto F = transform(f);
        const auto back = inverse(F);
        double err = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i)
            err = std::max(err, std::abs(back[i] - f[i]));
        CHECK(err <= 1e-12 * f.linf_norm());
        CHECK(F.l2_norm() == doctest::Approx(f.l2_norm()).epsilon(1e-12));
        CHECK(F.hermitian_defect() < 1e-12);
    }
}

TEST_CASE("single mode with unit coefficient has unit L2 norm")
{
    auto g = grid2(16, 7.0);
    SpectralField F(g);
    F[g->flat_index({2, -3, 0})] = 1.0;
    // complex single mode: the real part alone is not the field, so check the sum directly
    std::vector<cplx> raw(g->size());
    g->fft_backward(F.coeffs().data(), raw.data());
    double sum = 0.0;
    for (const auto& v : raw)
        sum += std::norm(v * g->backward_scale());
    CHECK(sum * g->dx() * g->dx() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("mismatched sample counts are rejected")
{
    auto g = grid2(16);
    CHECK_THROWS_AS(RealField(g, std::vector<double>(10)), GridMismatch);
    CHECK_THROWS_AS(SpectralField(g, std::vector<cplx>(10)), GridMismatch);
    auto a = SpectralField(g);
    auto b = SpectralField(grid2(32));
    CHECK_THROWS_AS(a += b, GridMismatch);
}

TEST_CASE("apply_multiplier basics")
{
    auto g = grid2(16, 5.0);
    const auto f = random_field(g, 1, 5, false);
    const Symbol one{[](const WaveVector&) { return cplx(1.0); }, cplx(1.0)};
    const Symbol zero{[](const WaveVector&) { return cplx(0.0); }, cplx(0.0)};
    CHECK(bit_equal(apply_multiplier(f, one), f));
    CHECK(max_abs(apply_multiplier(f, zero)) == 0.0);

    const auto m = single_mode(g, {1, 2, 0});
    const Symbol lap{[](const WaveVector& w) { return cplx(w.norm2); }, std::nullopt};
    const auto out = apply_multiplier(m, lap);
    const double k2 = g->k2()[g->flat_index({1, 2, 0})];
    CHECK(max_abs_diff(out, k2 * m) == 0.0);

    CHECK_THROWS_AS(apply_multiplier(f, lap), MeanZeroViolation);
    const Symbol bad{[k0 = g->k0()](const WaveVector& w) { return cplx(1.0 / (w.norm - k0)); }, 0.0};
    CHECK_THROWS_AS(apply_multiplier(f, bad), std::domain_error);
}

TEST_CASE("fractional laplacian")
{
    auto g = grid2(16, 2 * pi);
    SpectralField c(g);
    c[0] = 3.0;
    CHECK(max_abs(fractional_laplacian(c, 0.75)) == 0.0);
    CHECK_THROWS_AS(fractional_laplacian(c, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(fractional_laplacian(c, -1.0), std::invalid_argument);

    const auto m = single_mode(g, {2, 0, 0});
    const auto out = fractional_laplacian(m, 0.75);
    CHECK(out[g->flat_index({2, 0, 0})].real() ==
          doctest::Approx(std::pow(2.0, 1.5)).epsilon(1e-15));
}

TEST_CASE("fractional laplacian against direct lattice sum")
{
    // Physical-space values from a direct O(N^2) evaluation of
    // L^{-d/2} sum_k |k|^{2 alpha} fhat(k) e^{ik.x}.
    const double L = 4.0;
    const double alpha = 0.6;
    auto g = grid2(16, L);
    const auto bump = RealField::from_function(g, [L](const std::array<double, 3>& x) {
        const double dx = x[0] - L / 2, dy = x[1] - L / 2;
        return std::exp(-4.0 * (dx * dx + dy * dy));
    });
    const auto F = transform(bump);
    const auto fast = inverse(fractional_laplacian(F, alpha));
    double err = 0.0, scale = 0.0;
    for (std::size_t j = 0; j < g->size(); ++j) {
        const auto x = g->point(j);
        cplx sum = 0.0;
        for (std::size_t i = 0; i < g->size(); ++i) {
            const auto w = g->wave(i);
            const double phase = w.k[0] * x[0] + w.k[1] * x[1];
            sum += std::pow(w.norm, 2 * alpha) * F[i] * std::polar(1.0, phase);
        }
        const double direct = sum.real() / L;
        err = std::max(err, std::abs(direct - fast[j]));
        scale = std::max(scale, std::abs(direct));
    }
    CHECK(err <= 1e-10 * scale);
}

TEST_CASE("lambda_power")
{
    auto g = grid3(8, 3.0);
    const auto f = random_field(g, 2, 3);
    CHECK(bit_equal(lambda_power(f, 0.0), f));

    const Symbol lap{[](const WaveVector& w) { return cplx(w.norm2); }, 0.0};
    CHECK(bit_equal(lambda_power(f, 2.0), apply_multiplier(f, lap)));
    for (double alpha : {0.55, 0.75, 0.9, 1.0})
        CHECK(bit_equal(lambda_power(f, 2 * alpha), fractional_laplacian(f, alpha)));

    const auto back = lambda_power(lambda_power(f, 1.0), -1.0);
    CHECK(max_abs_diff(back, f) <= 1e-12 * max_abs(f));
    const auto sum = lambda_power(lambda_power(f, 0.7), 1.1);
    CHECK(max_abs_diff(sum, lambda_power(f, 1.8)) <= 1e-12 * max_abs(lambda_power(f, 1.8)));

    auto with_mean = f;
    with_mean[0] = 1.0;
    CHECK_THROWS_AS(lambda_power(with_mean, -0.5), MeanZeroViolation);
    CHECK_NOTHROW(lambda_power(with_mean, 0.5));
}

TEST_CASE("gradient and divergence")
{
    const double L = 5.0;
    auto g = grid2(32, L);
    SpectralField c(g);
    c[0] = 2.0;
    for (const auto& d : gradient(c))
        CHECK(max_abs(d) == 0.0);

    const auto s = RealField::from_function(
        g, [L](const std::array<double, 3>& x) { return std::sin(2 * pi * x[0] / L); });
    const auto ds = inverse(partial(transform(s), 0));
    double err = 0.0;
    for (std::size_t i = 0; i < g->size(); ++i) {
        const double exact = 2 * pi / L * std::cos(2 * pi * g->point(i)[0] / L);
        err = std::max(err, std::abs(ds[i] - exact));
    }
    CHECK(err <= 1e-12);

    for (const auto& gg : {grid2(32, L), grid3(16, 2 * pi)}) {
        const auto f = random_field(gg, 3, gg->n() / 2 - 1);
        const auto grad = gradient(f);
        const auto lhs = divergence(grad) + lambda_power(f, 2.0);
        CHECK(lhs.l2_norm() <= 1e-12 * f.l2_norm() * gg->kmax() * gg->kmax());
        for (const auto& d : grad)
            CHECK(d.hermitian_defect() < 1e-12);
    }

    // Nyquist content is dropped by first derivatives.
    auto g8 = grid2(8, 2 * pi);
    SpectralField nyq(g8);
    nyq[g8->flat_index({-4, 1, 0})] = 1.0;
    CHECK(max_abs(partial(nyq, 0)) == 0.0);
    CHECK(max_abs(partial(nyq, 1)) > 0.0);

    std::vector<SpectralField> wrong{c};
    CHECK_THROWS_AS(divergence(wrong), GridMismatch);
}

TEST_CASE("Friedrich projection")
{
    auto g = grid2(32, 2 * pi);
    const auto f = random_field(g, 4, 15, false);
    CHECK(bit_equal(friedrich_project(f, 0.5 / g->kmax()), f));
    const auto J = friedrich_project(f, 0.1);
    CHECK(bit_equal(friedrich_project(J, 0.1), J));
    for (std::size_t i = 0; i < g->size(); ++i)
        if (g->kmag()[i] > 10.0)
            CHECK(J[i] == cplx{});

    const auto m = single_mode(g, {3, 0, 0});
    CHECK(max_abs(friedrich_project(m, 0.5)) == 0.0);

    const auto h = random_field(g, 5, 15, false);
    const cplx lhs = inner(friedrich_project(f, 0.2), h);
    const cplx rhs = inner(f, friedrich_project(h, 0.2));
    CHECK(std::abs(lhs - rhs) <= 1e-12 * f.l2_norm() * h.l2_norm());

    CHECK_THROWS_AS(friedrich_project(f, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(friedrich_project(f, -1.0), std::invalid_argument);
}

TEST_CASE("low / mid / high split")
{
    auto g = grid2(32, 2 * pi);
    const auto f = random_field(g, 6, 15, false);
    const auto parts = low_mid_high_split(f, 1.0, 4.0);
    CHECK(bit_equal(parts.low + parts.mid + parts.high, f));
    for (std::size_t i = 0; i < g->size(); ++i) {
        if (g->kmag()[i] > 1.0)
            CHECK(parts.low[i] == cplx{});
        if (g->kmag()[i] < 4.0)
            CHECK(parts.high[i] == cplx{});
    }
    CHECK(bit_equal(parts.low_band() + parts.high, f));

    const auto m = single_mode(g, {2, 0, 0}); // |k| = 2, midway between r0 = 1 and R0 = 3
    const auto pm = low_mid_high_split(m, 1.0, 3.0);
    CHECK(bit_equal(pm.mid, m));
    CHECK(max_abs(pm.low) == 0.0);
    CHECK(max_abs(pm.high) == 0.0);

    CHECK_THROWS_AS(low_mid_high_split(f, 4.0, 4.0), std::invalid_argument);
    CHECK_THROWS_AS(low_mid_high_split(f, 5.0, 4.0), std::invalid_argument);
}

TEST_CASE("dealiasing")
{
    auto g = grid2(16, 2 * pi);
    CHECK(g->dealias_cutoff() == 5);
    const auto low = random_field(g, 7, 5);
    CHECK(bit_equal(dealias(low), low));
    const auto top = single_mode(g, {7, 0, 0});
    CHECK(max_abs(dealias(top)) == 0.0);
}

TEST_CASE("dealiased product equals truncated convolution")
{
    for (const auto& g : {grid2(16, 3.0), grid3(8, 2 * pi)}) {
        const int c = g->dealias_cutoff();
        const auto a = random_field(g, 8, c, false, 10.0);
        const auto b = random_field(g, 9, c, false, 10.0);
        const auto fast = product(a, b);
        const auto slow = fracns::testing::dense_product(a, b);
        CHECK(max_abs_diff(fast, slow) <= 1e-12 * max_abs(slow));
    }
}
