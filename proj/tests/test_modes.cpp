#include <doctest.h>

#include <cmath>
#include <random>

#include "puocs/modes.hpp"

using namespace puocs;

namespace {

const PuoParams<double> standard{2.0, 1.0};
const double root3 = std::sqrt(3.0);

double max_diff(const Vector4<double>& a, const Vector4<double>& b)
{
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("parameter invariant")
{
    CHECK_THROWS_WITH_AS(modes::make_params(1.0, 2.0), "requires Omega > omega > 0",
                         std::invalid_argument);
    CHECK_THROWS_AS(modes::make_params(1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(modes::make_params(2.0, 0.0), std::invalid_argument);
    CHECK_NOTHROW(modes::make_params(2.0, 1.0));
}

TEST_CASE("forward map examples")
{
    auto m = modes::forward(standard, PuoPhasePoint<double>{1, 0, 0, 0});
    CHECK(max_diff(m.vec(), Vector4<double>(0, 2 / root3, 4 / root3, 0)) <= 1e-15);

    m = modes::forward(standard, PuoPhasePoint<double>{0, 1, 0, 0});
    CHECK(max_diff(m.vec(), Vector4<double>(1 / (2 * root3), 0, 0, 1 / root3)) <= 1e-15);

    m = modes::forward(PuoParams<double>{7.0, 0.3}, PuoPhasePoint<double>{});
    CHECK(m.vec() == Vector4<double>::Zero());
}

TEST_CASE("inverse map examples")
{
    const PuoPhasePoint<double> pt{1, 0.3, -2, 0.7};
    CHECK(max_diff(modes::inverse(standard, modes::forward(standard, pt)).vec(), pt.vec()) <= 1e-14);

    CHECK(modes::inverse(standard, ModePhasePoint<double>{}).vec() == Vector4<double>::Zero());

    const auto z = modes::inverse(standard, ModePhasePoint<double>{0, 0, 1, 0});
    CHECK(max_diff(z.vec(), Vector4<double>(1 / root3, 0, 0, -1 / root3)) <= 1e-15);
}

TEST_CASE("symplectic residual")
{
    CHECK(modes::symplectic_residual(standard) <= 1e-14);
    CHECK(modes::symplectic_residual(PuoParams<double>{10.0, 0.1}) <= 1e-12);
    CHECK(modes::symplectic_residual(standard, InverseVariant::printed) > 0.1);
}

TEST_CASE("printed inverse fails the round trip")
{
    const PuoPhasePoint<double> pt{1, 0.3, -2, 0.7};
    const auto back = modes::inverse(standard, modes::forward(standard, pt), InverseVariant::printed);
    CHECK(max_diff(back.vec(), pt.vec()) > 0.1);
}

TEST_CASE("Hamiltonian examples")
{
    CHECK(modes::hamiltonian_puo(standard, PuoPhasePoint<double>{1, 0, 0, 0}) == -2.0);
    CHECK(modes::hamiltonian_puo(standard, PuoPhasePoint<double>{}) == 0.0);
    CHECK(modes::hamiltonian_puo(standard, PuoPhasePoint<double>{0, 0, 1, 0}) == 2.5);
    CHECK(modes::hamiltonian_modes(standard, ModePhasePoint<double>{1, 0, 0, 0}) == 2.0);
    CHECK(modes::hamiltonian_modes(standard, ModePhasePoint<double>{}) == 0.0);
    CHECK(modes::hamiltonian_modes(standard, ModePhasePoint<double>{0, 0, 1, 0}) == -0.5);
    CHECK(modes::hamiltonian_modes(standard, modes::forward(standard, PuoPhasePoint<double>{1, 0, 0, 0})) ==
          doctest::Approx(-2.0).epsilon(1e-14));
}

TEST_CASE("property: canonical map over ratios 1.01 to 1000")
{
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> log_ratio(std::log(1.01), std::log(1000.0)),
        small(0.1, 3.0), coord(-5.0, 5.0);
    for (int trial = 0; trial < 300; ++trial) {
        const double w = small(rng);
        const PuoParams<double> params{w * std::exp(log_ratio(rng)), w};
        // Normalise to unit omega so tolerances are scale-free.
        const PuoParams<double> unit{params.big_freq / params.small_freq, 1.0};
        CHECK(modes::symplectic_residual(unit) <= 1e-12);

        const PuoPhasePoint<double> pt{coord(rng), coord(rng), coord(rng), coord(rng)};
        const auto there = modes::forward(unit, pt);
        const auto back = modes::inverse(unit, there);
        CHECK(max_diff(back.vec(), pt.vec()) <= 1e-12 * std::max(1.0, pt.vec().cwiseAbs().maxCoeff()));

        const double W2 = unit.big_freq * unit.big_freq;
        const double scale = 0.5 * (pt.p_q * pt.p_q + 2 * std::abs(pt.q * pt.p_z) +
                                    (W2 + 1) * pt.q * pt.q + W2 * pt.z * pt.z);
        CHECK(std::abs(modes::hamiltonian_puo(unit, pt) - modes::hamiltonian_modes(unit, there)) <=
              1e-12 * scale);

        // Linearity of the forward map.
        const PuoPhasePoint<double> other{coord(rng), coord(rng), coord(rng), coord(rng)};
        const double c = coord(rng);
        const auto sum = modes::forward(unit, PuoPhasePoint<double>::from(pt.vec() + c * other.vec()));
        const Vector4<double> expected = there.vec() + c * modes::forward(unit, other).vec();
        CHECK(max_diff(sum.vec(), expected) <= 1e-9 * std::max(1.0, expected.cwiseAbs().maxCoeff()));

        CHECK(modes::symplectic_residual(unit, InverseVariant::printed) > 1e-3);
    }
}
