#include "fracns/linear.hpp"
#include "fracns/rhs.hpp"
#include "support.hpp"

#include <doctest.h>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <numbers>
#include <random>

using namespace fracns;
using fracns::testing::max_abs;
using fracns::testing::random_field;

namespace {

constexpr double pi = std::numbers::pi;

Eigen::MatrixXcd to_eigen(const SymbolMatrix& m, int dim)
{
    Eigen::MatrixXcd out(dim + 1, dim + 1);
    for (int i = 0; i <= dim; ++i)
        for (int j = 0; j <= dim; ++j)
            out(i, j) = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    return out;
}

double rel_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b)
{
    return (a - b).cwiseAbs().maxCoeff() / std::max(1e-300, b.cwiseAbs().maxCoeff());
}

// acoustic block as a 2x2 matrix
Eigen::Matrix2cd acoustic_block(double r, double q, const FluidParams& p)
{
    Eigen::Matrix2cd A;
    A << cplx{}, cplx(0, -p.kappa * r), cplx(0, -p.kappa * r), cplx(-p.mu * q, 0);
    return A;
}

State random_state(const GridPtr& g, std::uint64_t seed, int max_mode)
{
    State s = State::zero(g);
    std::uint64_t k = 0;
    s.for_each([&](SpectralField& f) { f = random_field(g, seed + 7 * k++, max_mode, false, 4.0); });
    return s;
}

} // namespace

TEST_CASE("symbol at xi = 0")
{
    const auto p = derive_constants(0.5, 2.0, 1.0);
    const auto m = semigroup_matrix({0, 0, 0}, 3, 2.0, p);
    CHECK(rel_diff(to_eigen(m, 3), Eigen::MatrixXcd::Identity(4, 4)) == 0.0);
    const auto ls = linear_symbol({0, 0, 0}, 3, p);
    CHECK(to_eigen(ls.M, 3).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("acoustic eigenvalues against a dense eigensolver")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 300; ++trial) {
        const auto p = derive_constants(0.1 + 2 * u(rng), 1.1 + 2 * u(rng), 0.05 + 3 * u(rng),
                                        0.51 + 0.49 * u(rng));
        const double r = std::exp(-3.0 + 8.0 * u(rng));
        const auto ev = acoustic_eigenvalues(r, p);
        const double q = std::pow(r, 2 * p.alpha);
        const Eigen::Matrix2cd A = acoustic_block(r, q, p);
        Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(A);
        const auto ref = es.eigenvalues();
        const double scale = std::max(std::abs(ref(0)), std::abs(ref(1)));
        const double d1 = std::max(std::abs(ev[0] - ref(0)), std::abs(ev[1] - ref(1)));
        const double d2 = std::max(std::abs(ev[0] - ref(1)), std::abs(ev[1] - ref(0)));
        CHECK(std::min(d1, d2) <= 1e-12 * scale);
        // trace and determinant
        CHECK(std::abs(ev[0] + ev[1] + p.mu * q) <= 1e-12 * std::max(p.mu * q, scale));
        CHECK(std::abs(ev[0] * ev[1] - p.kappa * p.kappa * r * r) <= 1e-12 * scale * scale);
        CHECK(ev[0].real() <= 0.0);
        CHECK(ev[1].real() <= 0.0);
    }
}

TEST_CASE("semigroup against the matrix exponential")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 400; ++trial) {
        const int dim = trial % 2 == 0 ? 2 : 3;
        const auto p = derive_constants(0.1 + 2 * u(rng), 1.1 + 2 * u(rng), 0.05 + 3 * u(rng),
                                        0.51 + 0.49 * u(rng));
        const double r = std::exp(-4.0 + 7.0 * u(rng));
        std::array<double, 3> xi{u(rng) - 0.5, u(rng) - 0.5, dim == 3 ? u(rng) - 0.5 : 0.0};
        const double nx = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
        for (auto& x : xi)
            x *= r / nx;
        const double t = std::exp(-5.0 + 7.0 * u(rng));
        const auto M = to_eigen(linear_symbol(xi, dim, p).M, dim);
        const Eigen::MatrixXcd ref = (-t * M).exp();
        const auto got = to_eigen(semigroup_matrix(xi, dim, t, p), dim);
        CHECK(rel_diff(got, ref) <= 1e-12);
    }
}

TEST_CASE("acoustic regimes")
{
    const auto p = derive_constants(0.5, 2.0, 0.8, 0.75);
    const double rstar = std::pow(2 * p.kappa / p.mu, 1.0 / (2 * p.alpha - 1));
    for (double r : {0.01, 0.5, rstar * (1 - 1e-3), rstar, rstar * (1 + 1e-7), rstar * (1 + 1e-3), 3.0, 50.0})
        for (double t : {1e-3, 0.1, 1.0, 10.0}) {
            const double q = std::pow(r, 2 * p.alpha);
            const Eigen::Matrix2cd ref = (t * acoustic_block(r, q, p)).exp();
            const auto a = acoustic_propagator(r, q, t, p);
            Eigen::Matrix2cd got;
            got << a.e11, cplx(0, -a.coupling), cplx(0, -a.coupling), a.e22;
            CHECK(rel_diff(got, ref) <= 1e-12);
            CHECK(a.solenoidal == doctest::Approx(std::exp(-p.mu * q * t)).epsilon(1e-15));
        }
}

TEST_CASE("propagator is continuous across the critical wavenumber")
{
    const auto p = derive_constants(0.5, 2.0, 0.8, 0.75);
    const double rstar = std::pow(2 * p.kappa / p.mu, 1.0 / (2 * p.alpha - 1));
    const double t = 2.0;
    const auto at = [&](double r) { return acoustic_propagator(r, std::pow(r, 2 * p.alpha), t, p); };
    const auto mid = at(rstar);
    for (double h : {1e-6, 1e-9, 1e-12}) {
        for (double r : {rstar * (1 - h), rstar * (1 + h)}) {
            const auto a = at(r);
            CHECK(std::abs(a.e11 - mid.e11) <= 1e3 * h + 1e-14);
            CHECK(std::abs(a.e22 - mid.e22) <= 1e3 * h + 1e-14);
            CHECK(std::abs(a.coupling - mid.coupling) <= 1e3 * h + 1e-14);
        }
    }
    // walk across the series switch in small steps; no jump exceeds the local slope
    double prev = at(rstar * 0.9).e11;
    for (int i = 1; i <= 2000; ++i) {
        const double r = rstar * (0.9 + 0.2 * i / 2000.0);
        const double v = at(r).e11;
        CHECK(std::abs(v - prev) <= 1e-3);
        prev = v;
    }
}

TEST_CASE("identity at t = 0 and the semigroup property")
{
    const auto p = derive_constants(0.7, 1.4, 0.5, 0.65);
    auto g = Grid::make({2, 32, 9.0, 2.0 / 3.0});
    const auto s = random_state(g, 5, 15);
    const auto s0 = apply_semigroup(s, 0.0, p);
    CHECK((s0 - s).l2_norm() == 0.0);

    const auto two = apply_semigroup(apply_semigroup(s, 0.3, p), 0.45, p);
    const auto one = apply_semigroup(s, 0.75, p);
    CHECK((two - one).l2_norm() <= 1e-10 * one.l2_norm());
    CHECK(one.t == doctest::Approx(0.75));

    // the mean is an exact fixed point
    for (double t : {0.1, 10.0}) {
        const auto st = apply_semigroup(s, t, p);
        CHECK(st.rho[0] == s.rho[0]);
        for (int a = 0; a < 2; ++a)
            CHECK(st.u[static_cast<std::size_t>(a)][0] == s.u[static_cast<std::size_t>(a)][0]);
    }
    CHECK_THROWS(apply_semigroup(s, -1.0, p));
}

TEST_CASE("solenoidal part decays with exp(-mu |k|^{2 alpha} t)")
{
    const auto p = derive_constants(0.5, 2.0, 0.9, 0.8);
    auto g = Grid::make({2, 16, 2 * pi, 2.0 / 3.0});
    // u = (-k2, k1) e^{ik.x} + c.c. is divergence free
    State s = State::zero(g);
    const std::array<int, 3> m{2, 3, 0};
    s.u[0] = fracns::testing::single_mode(g, m, cplx(-3.0, 0));
    s.u[1] = fracns::testing::single_mode(g, m, cplx(2.0, 0));
    const double t = 0.4;
    const auto out = apply_semigroup(s, t, p);
    const double factor = std::exp(-p.mu * std::pow(13.0, p.alpha) * t);
    CHECK(max_abs(out.rho) <= 1e-15);
    CHECK((out - factor * s).l2_norm() <= 1e-14 * s.l2_norm());
}

TEST_CASE("propagator is the flow of the linear terms")
{
    const auto p = derive_constants(0.5, 2.0, 0.6, 0.75);
    for (int dim : {2, 3}) {
        auto g = Grid::make({dim, dim == 2 ? 32 : 16, 5.0, 2.0 / 3.0});
        const auto s = random_state(g, 21, g->n() / 2);  // includes Nyquist modes
        const double t = 0.2, h = 1e-4;
        const auto fwd = apply_semigroup(s, t + h, p);
        const auto bwd = apply_semigroup(s, t - h, p);
        const auto mid = apply_semigroup(s, t, p);
        State fd = fwd - bwd;
        fd *= 1.0 / (2 * h);
        const auto lt = linear_terms(mid, p);
        CHECK((fd - lt).l2_norm() <= 1e-6 * lt.l2_norm());
    }
}
