#include "fracns/errors.hpp"
#include "fracns/littlewood_paley.hpp"
#include "fracns/multipliers.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace fracns;
using fracns::testing::bit_equal;
using fracns::testing::dense_product;
using fracns::testing::max_abs;
using fracns::testing::max_abs_diff;
using fracns::testing::random_field;
using fracns::testing::single_mode;

namespace {

constexpr double pi = std::numbers::pi;

GridPtr make_grid(int dim, int n, double L = 2 * pi) { return Grid::make({dim, n, L, 2.0 / 3.0}); }

std::vector<SpectralField> random_velocity(const GridPtr& g, std::uint64_t seed, int max_mode,
                                           double width = 4.0)
{
    std::vector<SpectralField> u;
    for (int a = 0; a < g->dim(); ++a)
        u.push_back(random_field(g, seed + 101 * static_cast<std::uint64_t>(a), max_mode, true, width));
    return u;
}

} // namespace

TEST_CASE("block index edges")
{
    CHECK(block_index(0.0) == -1);
    CHECK(block_index(0.999) == -1);
    CHECK(block_index(1.0) == 0);
    CHECK(block_index(3.999) == 0);
    CHECK(block_index(4.0) == 1);
    CHECK(block_index(9.0) == 1);
    CHECK(block_index(15.999999) == 1);
    CHECK(block_index(16.0) == 2);
    CHECK(block_index(std::ldexp(1.0, 40)) == 20);
    CHECK(block_index(std::nextafter(std::ldexp(1.0, 40), 0.0)) == 19);
}

TEST_CASE("lp blocks partition the lattice")
{
    auto g = make_grid(2, 32, 5.0);
    const auto f = random_field(g, 11, 15, false);
    const auto m = single_mode(make_grid(2, 32), {3, 0, 0});
    CHECK(bit_equal(lp_block(m, 1), m));
    CHECK(max_abs(lp_block(m, 0)) == 0.0);

    SpectralField sum(g);
    double norms = 0.0;
    for (int j = -1; j <= max_block(*g); ++j) {
        const auto b = lp_block(f, j);
        sum += b;
        norms += b.l2_norm_squared();
        for (int i = -1; i <= max_block(*g); ++i)
            if (i != j)
                CHECK(max_abs(lp_block(b, i)) == 0.0);
    }
    CHECK(bit_equal(sum, f));
    CHECK(norms == doctest::Approx(f.l2_norm_squared()).epsilon(1e-12));
    CHECK_THROWS_AS(lp_block(f, -2), std::invalid_argument);
}

TEST_CASE("sobolev norms")
{
    auto g = make_grid(2, 16);
    const auto m = single_mode(g, {2, 0, 0}, 1.0 / std::sqrt(2.0));
    CHECK(m.l2_norm() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(sobolev_norm(m, {1.0, NormFlavor::inhomogeneous}) ==
          doctest::Approx(std::sqrt(5.0)).epsilon(1e-14));
    CHECK(sobolev_norm(m, {1.0, NormFlavor::homogeneous}) == doctest::Approx(2.0).epsilon(1e-14));

    const auto f = random_field(g, 12, 7, false);
    CHECK(sobolev_norm(f, {0.0, NormFlavor::inhomogeneous}) == f.l2_norm());
    CHECK(sobolev_norm(f, {0.0, NormFlavor::homogeneous}) == f.l2_norm());
    double prev = 0.0;
    for (double s = -2.0; s <= 4.0; s += 0.5) {
        const double v = sobolev_norm(f, {s, NormFlavor::inhomogeneous});
        CHECK(v >= prev);
        prev = v;
    }
    CHECK_THROWS_AS(sobolev_norm(f, {-1.0, NormFlavor::homogeneous}), MeanZeroViolation);
    CHECK_NOTHROW(sobolev_norm(f, {-1.0, NormFlavor::inhomogeneous}));
}

TEST_CASE("Sobolev norm versus dyadic block sum")
{
    // On the integer lattice (L = 2 pi) the ratio sits in [2^{-2|s|}, 2^{2|s|+1}].
    for (int dim : {2, 3}) {
        auto g = make_grid(dim, dim == 2 ? 32 : 16);
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const auto f = random_field(g, seed, g->n() / 2 - 1, seed % 2 == 0, 6.0);
            for (double s : {-2.0, -1.0, -0.5, 0.5, 1.0, 2.0, 3.0}) {
                const double r = lp_equivalence_ratio(f, s);
                CHECK(r >= std::exp2(-2 * std::abs(s)));
                CHECK(r <= std::exp2(2 * std::abs(s) + 1));
            }
        }
    }
    // For a general box the per-coefficient factor only lies in [5^{-|s|}, 5^{|s|}].
    auto g = make_grid(2, 32, 11.0);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto f = random_field(g, seed, 15, false, 8.0);
        for (double s : {-2.0, -0.5, 1.0, 3.0}) {
            const double r = lp_equivalence_ratio(f, s);
            CHECK(r >= std::pow(5.0, -std::abs(s)) * (1 - 1e-12));
            CHECK(r <= std::pow(5.0, std::abs(s)) * (1 + 1e-12));
        }
    }
    CHECK_THROWS_AS(lp_equivalence_ratio(SpectralField(g), 1.0), UndefinedRatio);
}

TEST_CASE("Bernstein ratios")
{
    auto g = make_grid(2, 32);
    const double alpha = 0.75;
    for (int j = 0; j <= 3; ++j) {
        const auto edge = single_mode(g, {1 << j, 0, 0});
        const auto r = bernstein_verify(edge, j, alpha);
        CHECK(r.lower == doctest::Approx(1.0).epsilon(1e-14));
    }

    // |k| = 31/16, just below 2 on a box of length 32 pi
    auto big = make_grid(2, 64, 32 * pi);
    const auto near = single_mode(big, {31, 0, 0});
    const auto r = bernstein_verify(near, 0, alpha);
    CHECK(r.lower == doctest::Approx(std::pow(31.0 / 16.0, 2 * alpha)).epsilon(1e-13));
    CHECK(r.upper <= 1.0);
    CHECK(r.upper > 0.9);

    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 50; ++trial) {
        const int j = static_cast<int>(rng() % 4);
        const auto f = lp_block(random_field(g, rng(), 15, true, 30.0), j);
        const auto rr = bernstein_verify(f, j, 0.55 + 0.4 * (trial % 5) / 4.0);
        CHECK(rr.lower >= 1.0 - 1e-12);
        CHECK(rr.upper <= 1.0 + 1e-12);
    }

    CHECK_THROWS_AS(bernstein_verify(near, -1, alpha), std::invalid_argument);
    CHECK_THROWS_AS(bernstein_verify(near, 3, alpha), UndefinedRatio);
}

TEST_CASE("transport commutator")
{
    auto g = make_grid(2, 32, 5.0);
    const auto f = random_field(g, 13, 10);
    std::vector<SpectralField> u;
    for (double c : {0.7, -1.3}) {
        SpectralField ui(g);
        ui[0] = c * g->box_length(); // constant c
        u.push_back(ui);
    }
    for (int j = -1; j <= max_block(*g); ++j)
        CHECK(commutator_transport(u, f, j).l2_norm() <= 1e-10 * f.l2_norm());
}

TEST_CASE("transport commutator of a block field equals its leakage")
{
    auto g = make_grid(2, 16);
    const int j = 1;
    const auto f = lp_block(random_field(g, 14, 5, true, 10.0), j);
    const auto u = random_velocity(g, 15, 1);

    // Direct transport by dense convolution, then split into blocks.
    SpectralField direct(g);
    for (int a = 0; a < 2; ++a)
        direct += dense_product(u[static_cast<std::size_t>(a)], partial(f, a));
    SpectralField leakage(g);
    for (int i = -1; i <= max_block(*g); ++i)
        if (i != j)
            leakage += lp_block(direct, i);

    const auto comm = commutator_transport(u, f, j);
    CHECK(max_abs_diff(comm, leakage) <= 1e-12 * max_abs(direct));
    CHECK(leakage.l2_norm() > 0.0);
}

TEST_CASE("commutator constants are finite")
{
    auto g = make_grid(2, 32);
    const auto f = random_field(g, 16, 10);
    const auto u = random_velocity(g, 17, 6);
    const auto c = commutator_constants(u, f, 1.0);
    CHECK(c.size() == static_cast<std::size_t>(max_block(*g) + 2));
    for (double v : c)
        CHECK(std::isfinite(v));
    CHECK_THROWS_AS(commutator_constants(u, f, -0.5), std::invalid_argument);
}

TEST_CASE("Lambda commutator")
{
    auto g = make_grid(2, 16, 3.0);
    const auto h = random_field(g, 18, 5, false, 10.0);
    SpectralField c(g);
    c[0] = 2.5;
    CHECK(commutator_lambda(c, h, 0.75).l2_norm() <= 1e-12 * h.l2_norm());

    const auto gg = random_field(g, 19, 5, false, 10.0);
    CHECK(max_abs(commutator_lambda(gg, h, 0.0)) == 0.0);

    for (double alpha : {0.6, 0.75, 1.0}) {
        const auto fast = commutator_lambda(gg, h, alpha);
        const auto slow =
            lambda_power(dense_product(gg, h), alpha) - dense_product(gg, lambda_power(h, alpha));
        CHECK(max_abs_diff(fast, slow) <= 1e-12 * max_abs(lambda_power(dense_product(gg, h), alpha)));

        const auto lhs = fast + product(gg, lambda_power(h, alpha));
        const auto rhs = lambda_power(product(gg, h), alpha);
        CHECK(max_abs_diff(lhs, rhs) <= 1e-15 * max_abs(rhs) * 4);
    }
}

TEST_CASE("frequency split inequalities")
{
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 200; ++trial) {
        const int dim = trial % 2 == 0 ? 2 : 3;
        auto g = make_grid(dim, dim == 2 ? 32 : 16);
        const auto f = random_field(g, rng(), g->n() / 2 - 1, true, 6.0);
        const double r0 = 1.0 + 2.0 * std::uniform_real_distribution<>(0, 1)(rng);
        const double R0 = r0 + 1.0 + (9.0 - r0) * std::uniform_real_distribution<>(0, 1)(rng);
        const int k0 = static_cast<int>(rng() % 5);
        const int k = k0 + static_cast<int>(rng() % static_cast<unsigned>(5 - k0));
        const int k1 = k + static_cast<int>(rng() % static_cast<unsigned>(5 - k));
        const auto s = split_inequalities(f, r0, R0, k0, k, k1);
        CHECK(s.low_scaling.holds());
        CHECK(s.low_by_full.holds());
        CHECK(s.high_scaling.holds());
        CHECK(s.high_by_full.holds());
        CHECK(s.mid_lower.holds());
        CHECK(s.mid_upper.holds());
    }
}
