#include <doctest.h>

#include <cmath>
#include <numbers>

#include "puocs/classical.hpp"

using namespace puocs;
using std::numbers::pi;

namespace {

const PuoParams<double> standard{2.0, 1.0};

std::vector<double> grid(double t_end, double step)
{
    std::vector<double> t;
    for (int i = 0; i * step <= t_end + 1e-12; ++i) {
        t.push_back(i * step);
    }
    return t;
}

}  // namespace

TEST_CASE("analytic solution examples")
{
    const TwoModeSolution zero{};
    for (double t : {0.0, 1.0, 7.5}) {
        CHECK(classical::analytic_solution(standard, zero, t) == 0.0);
    }
    const TwoModeSolution single{1, 0, 0, 0};
    CHECK(classical::analytic_solution(standard, single, pi / 4) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("analytic derivatives match finite differences")
{
    const TwoModeSolution sol{0.7, 0.2, 1.3, -0.5};
    const auto f = [&](double t) { return classical::analytic_solution(standard, sol, t); };
    for (double t : {0.3, 2.0, 5.1}) {
        const double h = 1e-3;
        const double d1 = (f(t + h) - f(t - h)) / (2 * h);
        CHECK(classical::analytic_derivative(standard, sol, t, 1) == doctest::Approx(d1).epsilon(1e-6));
        CHECK(classical::analytic_derivative(standard, sol, t, 2) ==
              doctest::Approx(classical::second_derivative(f, t, h)).epsilon(1e-8));
    }
    CHECK_THROWS_AS(classical::analytic_derivative(standard, sol, 0.0, 5), std::invalid_argument);
}

TEST_CASE("analytic solutions annihilate the fourth-order operator")
{
    for (double W : {1.1, 2.0, 5.0, 20.0}) {
        const PuoParams<double> params{W, 1.0};
        for (const TwoModeSolution& sol : {TwoModeSolution{1, 0, 1, 0}, TwoModeSolution{0, 0, 1, 0.3},
                                           TwoModeSolution{1, 0.8, 0, 0}}) {
            const auto f = [&](double t) { return classical::analytic_solution(params, sol, t); };
            CHECK(classical::equation_of_motion_residual(params, f, grid(10, 0.05)) <= 1e-5);
        }
    }
    // A function that is not a solution is flagged.
    const auto wrong = [](double t) { return std::sin(1.5 * t); };
    CHECK(classical::equation_of_motion_residual(standard, wrong, grid(10, 0.1)) > 0.1);
}

TEST_CASE("integrate zero data")
{
    const auto tr = classical::integrate(standard, ClassicalInit{}, 1.0, 0.01);
    CHECK(tr.size() == 101);
    for (std::size_t i = 0; i < tr.size(); ++i) {
        CHECK(tr.z[i] == 0.0);
    }
}

TEST_CASE("integrate against the analytic solution")
{
    const TwoModeSolution sol{1, 0, 1, 0};
    const auto tr = classical::integrate(standard, classical::initial_conditions(standard, sol), 10, 1e-3);
    double worst = 0;
    for (std::size_t i = 0; i < tr.size(); ++i) {
        worst = std::max(worst, std::abs(tr.z[i] - classical::analytic_solution(standard, sol, tr.times[i])));
    }
    CHECK(worst <= 1e-8);
    CHECK(tr.times.back() == doctest::Approx(10.0).epsilon(1e-12));
    for (std::size_t i = 1; i < tr.size(); ++i) {
        CHECK(tr.times[i] > tr.times[i - 1]);
    }
    CHECK(classical::convergence_order(standard, sol, 10, 0.02) >= 3.8);
}

TEST_CASE("integrate rejects bad input")
{
    CHECK_THROWS_AS(classical::integrate(standard, ClassicalInit{}, 1.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(classical::integrate(standard, ClassicalInit{}, 0.0, 0.01), std::invalid_argument);
    CHECK_THROWS_AS(classical::integrate(standard, ClassicalInit{}, 1.0, -0.01), std::invalid_argument);
    CHECK_THROWS_AS(classical::integrate(standard, ClassicalInit{1e308, 1e308, 1e308, 1e308}, 1.0, 0.01),
                    std::runtime_error);
}

TEST_CASE("classical trajectory follows the coherent-state mean")
{
    CHECK(classical::match_expectation(standard, PuoStateLabel{}, 10, 1e-3) == 0.0);
    CHECK(classical::match_expectation(standard, PuoStateLabel{0.5, 0, 0.5, 0, 0}, 10, 1e-3) <= 1e-6);
    CHECK(classical::match_expectation(standard, PuoStateLabel{0.5, pi / 3, 0.5, 0, 0}, 10, 1e-3) <= 1e-6);
}

TEST_CASE("finite-difference stencils on polynomials and sines")
{
    const auto cubic = [](double t) { return t * t * t; };
    CHECK(classical::second_derivative(cubic, 2.0, 0.1) == doctest::Approx(12.0).epsilon(1e-10));
    const auto quartic = [](double t) { return t * t * t * t; };
    CHECK(classical::fourth_derivative(quartic, 1.0, 0.1) == doctest::Approx(24.0).epsilon(1e-8));
    const auto wave = [](double t) { return std::sin(t); };
    CHECK(classical::fourth_derivative(wave, 0.7, 0.02) == doctest::Approx(std::sin(0.7)).epsilon(1e-5));
}

TEST_CASE("single-mode Ehrenfest residual")
{
    const auto f = [](double t) { return 0.8 * std::cos(3 * t + 0.2); };
    CHECK(classical::ehrenfest_residual(3.0, 0.8, f, grid(5, 0.1)) <= 1e-6);
    CHECK(classical::ehrenfest_residual(2.0, 0.8, f, grid(5, 0.1)) > 0.1);
}
