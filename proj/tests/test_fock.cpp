#include <doctest.h>

#include <cmath>
#include <random>

#include "puocs/fock.hpp"
#include "puocs/gcs.hpp"

using namespace puocs;
using cd = std::complex<double>;

TEST_CASE("ladder matrices at N = 2")
{
    const auto [a, adag] = fock::ladder_matrices<double>(2);
    CHECK(a.rows() == 3);
    const double expected[3][3] = {{0, 1, 0}, {0, 0, std::sqrt(2.0)}, {0, 0, 0}};
    for (int m = 0; m < 3; ++m) {
        for (int n = 0; n < 3; ++n) {
            CHECK(a(m, n) == cd(expected[m][n], 0));
        }
    }
    CHECK(adag == a.adjoint());
}

TEST_CASE("ladder matrices at N = 0 are the 1x1 zero")
{
    const auto [a, adag] = fock::ladder_matrices<double>(0);
    CHECK(a.size() == 1);
    CHECK(a(0, 0) == cd(0, 0));
    CHECK(adag(0, 0) == cd(0, 0));
    CHECK_THROWS_AS(fock::ladder_matrices<double>(-1), std::invalid_argument);
}

TEST_CASE("truncated commutator is identity except the corner")
{
    for (int n : {1, 5, 12, 60}) {
        const auto [a, adag] = fock::ladder_matrices<double>(n);
        const OperatorMatrix<double> c = a * adag - adag * a;
        for (int r = 0; r <= n; ++r) {
            for (int k = 0; k <= n; ++k) {
                double want = r == k ? 1.0 : 0.0;
                if (r == n && k == n) {
                    want = -n;
                }
                CHECK(std::abs(c(r, k) - want) <= 1e-13);
            }
        }
    }
}

TEST_CASE("position and momentum at unit parameters")
{
    const auto ops = fock::position_momentum<double>(1.0, 1.0, 1);
    CHECK(ops.pos(0, 1).real() == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(ops.pos(1, 0).real() == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(ops.pos(0, 0) == cd(0, 0));
    CHECK(ops.pos(1, 1) == cd(0, 0));
    CHECK(fock::is_hermitian(ops.pos));
    CHECK(fock::is_hermitian(ops.mom));
}

TEST_CASE("canonical commutator on the leading block")
{
    const auto ops = fock::position_momentum<double>(1.0, 2.0, 10);
    const OperatorMatrix<double> c = ops.pos * ops.mom - ops.mom * ops.pos;
    const OperatorMatrix<double> block = c.topLeftCorner(10, 10);
    const OperatorMatrix<double> want = cd(0, 1) * OperatorMatrix<double>::Identity(10, 10);
    CHECK((block - want).cwiseAbs().maxCoeff() <= 1e-12);
    // The last level carries the truncation artifact.
    CHECK(std::abs(c(10, 10) - cd(0, 1)) > 1.0);
}

TEST_CASE("position_momentum rejects nonpositive parameters")
{
    CHECK_THROWS_AS(fock::position_momentum<double>(0.0, 1.0, 3), std::invalid_argument);
    CHECK_THROWS_AS(fock::position_momentum<double>(1.0, -2.0, 3), std::invalid_argument);
}

TEST_CASE("expectation on number states")
{
    const auto number = fock::number_operator<double>(6);
    CHECK(fock::expectation(fock::number_state<double>(6, 0), number) == cd(0, 0));
    CHECK(fock::expectation(fock::number_state<double>(6, 1), number) == cd(1, 0));
}

TEST_CASE("annihilation expectation of a coherent state with alpha = 0.5")
{
    const OscillatorSpec<double> spec{1.0, 1.0, EnergySign::normal};
    const GcsLabel<double> label{0.25, 0.0};
    const int n = 30;
    const auto psi = gcs::build_state(spec, label, n);
    const auto [a, adag] = fock::ladder_matrices<double>(n);

    // Direct summation: sum_n c_n c_{n+1} sqrt(n+1) with c_n = e^{-1/8} 0.5^n / sqrt(n!).
    double direct = 0;
    for (int k = 0; k < n; ++k) {
        const double ck = std::exp(-0.125) * std::pow(0.5, k) / std::sqrt(std::tgamma(k + 1.0));
        const double ck1 = std::exp(-0.125) * std::pow(0.5, k + 1) / std::sqrt(std::tgamma(k + 2.0));
        direct += ck * ck1 * std::sqrt(k + 1.0);
    }
    const cd value = fock::expectation(psi, a);
    CHECK(std::abs(value - cd(0.5, 0)) <= 1e-12);
    CHECK(std::abs(value.real() - direct) <= 1e-14);
}

TEST_CASE("expectation preconditions")
{
    const auto number = fock::number_operator<double>(3);
    CHECK_THROWS_AS(fock::expectation(fock::number_state<double>(4, 0), number),
                    std::invalid_argument);
    FockVector<double> loose = fock::number_state<double>(3, 0);
    loose(1) = cd(1e-4, 0);
    CHECK_THROWS_AS(fock::expectation(loose, number), std::invalid_argument);
}

TEST_CASE("normalize")
{
    FockVector<double> v(2);
    v << cd(3, 0), cd(4, 0);
    const auto n = fock::normalize(v);
    CHECK(n.norm == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(n.state(0).real() == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(n.state(1).real() == doctest::Approx(0.8).epsilon(1e-15));

    const auto again = fock::normalize(n.state);
    CHECK(again.norm == doctest::Approx(1.0).epsilon(1e-15));
    CHECK((again.state - n.state).norm() <= 1e-15);

    CHECK_THROWS_AS(fock::normalize(FockVector<double>::Zero(3).eval()), std::invalid_argument);
}

TEST_CASE("unnormalized series with J = 1 has squared norm e")
{
    // sum_n 1/n! to 50 digits: 2.71828182845904523536...
    const int n = 40;
    FockVector<double> v(n + 1);
    for (int k = 0; k <= n; ++k) {
        v(k) = cd(1 / std::sqrt(std::tgamma(k + 1.0)), 0);
    }
    const auto result = fock::normalize(v);
    CHECK(result.norm * result.norm == doctest::Approx(2.718281828459045).epsilon(1e-14));
}

TEST_CASE("property: Hermitian expectations are real, number states orthonormal")
{
    std::mt19937_64 rng(7);
    std::normal_distribution<double> normal;
    std::uniform_int_distribution<int> dim(1, 25);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = dim(rng);
        OperatorMatrix<double> m(n + 1, n + 1);
        FockVector<double> v(n + 1);
        for (int r = 0; r <= n; ++r) {
            v(r) = cd(normal(rng), normal(rng));
            for (int k = 0; k <= n; ++k) {
                m(r, k) = cd(normal(rng), normal(rng));
            }
        }
        const OperatorMatrix<double> h = m + m.adjoint();
        const auto psi = fock::normalize(v).state;
        CHECK(std::abs(fock::expectation(psi, h).imag()) <= 1e-10);

        std::uniform_int_distribution<int> level(0, n);
        const int p = level(rng);
        const int q = level(rng);
        const cd overlap = fock::number_state<double>(n, p).dot(fock::number_state<double>(n, q));
        CHECK(overlap == cd(p == q ? 1.0 : 0.0, 0.0));
    }
}

TEST_CASE("float scalar instantiation")
{
    const auto ops = fock::position_momentum<float>(1.0f, 1.0f, 4);
    CHECK(fock::is_hermitian(ops.pos));
    const auto psi = fock::number_state<float>(4, 2);
    CHECK(fock::expectation(psi, fock::number_operator<float>(4)).real() ==
          doctest::Approx(2.0f).epsilon(1e-6));
}
