#ifndef PUOCS_FOCK_HPP
#define PUOCS_FOCK_HPP

// Truncated Fock-space linear algebra: ladder, position and momentum
// operators as dense complex matrices, plus state expectations.
// Units: hbar = 1.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Dense>

namespace puocs {

template <typename Scalar>
using Complex = std::complex<Scalar>;

/// Amplitudes of a truncated number-basis state; index n is the occupation.
template <typename Scalar>
using FockVector = Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, 1>;

/// Dense operator, entry (m, n) = <m|O|n>.
template <typename Scalar>
using OperatorMatrix = Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

namespace fock {

inline constexpr double construction_tolerance = 1e-12;
inline constexpr double expectation_tolerance = 1e-10;

template <typename Scalar>
struct LadderPair {
    OperatorMatrix<Scalar> annihilation;
    OperatorMatrix<Scalar> creation;
};

template <typename Scalar>
struct PhaseSpaceOperators {
    OperatorMatrix<Scalar> pos;
    OperatorMatrix<Scalar> mom;
};

/// a and a^dagger on the span of |0>..|N>; a(n-1, n) = sqrt(n).
template <typename Scalar = double>
LadderPair<Scalar> ladder_matrices(int truncation)
{
    if (truncation < 0) {
        throw std::invalid_argument("truncation level must be nonnegative");
    }
    const Eigen::Index dim = truncation + 1;
    OperatorMatrix<Scalar> a = OperatorMatrix<Scalar>::Zero(dim, dim);
    for (Eigen::Index n = 1; n < dim; ++n) {
        a(n - 1, n) = Complex<Scalar>(std::sqrt(static_cast<Scalar>(n)), Scalar(0));
    }
    OperatorMatrix<Scalar> adag = a.adjoint();
    return {std::move(a), std::move(adag)};
}

template <typename Scalar = double>
OperatorMatrix<Scalar> number_operator(int truncation)
{
    const auto [a, adag] = ladder_matrices<Scalar>(truncation);
    return adag * a;
}

/// pos = (a + a^dag)/sqrt(2 m w), mom = -i sqrt(m w / 2) (a - a^dag).
template <typename Scalar = double>
PhaseSpaceOperators<Scalar> position_momentum(Scalar mass, Scalar freq, int truncation)
{
    if (!(mass > 0) || !(freq > 0)) {
        throw std::invalid_argument("position_momentum: mass and frequency must be positive");
    }
    const auto [a, adag] = ladder_matrices<Scalar>(truncation);
    const Scalar pos_scale = Scalar(1) / std::sqrt(Scalar(2) * mass * freq);
    const Complex<Scalar> mom_scale(Scalar(0), -std::sqrt(mass * freq / Scalar(2)));
    OperatorMatrix<Scalar> pos = pos_scale * (a + adag);
    OperatorMatrix<Scalar> mom = mom_scale * (a - adag);
    return {std::move(pos), std::move(mom)};
}

template <typename Scalar = double>
FockVector<Scalar> number_state(int truncation, int occupation)
{
    if (occupation < 0 || occupation > truncation) {
        throw std::invalid_argument("number_state: occupation outside truncated basis");
    }
    FockVector<Scalar> v = FockVector<Scalar>::Zero(truncation + 1);
    v(occupation) = Complex<Scalar>(1, 0);
    return v;
}

/// <state|op|state>. Requires matching dimensions and a unit state.
template <typename Scalar>
Complex<Scalar> expectation(const FockVector<Scalar>& state, const OperatorMatrix<Scalar>& op)
{
    if (op.rows() != op.cols() || state.size() != op.rows()) {
        throw std::invalid_argument("expectation: dimension mismatch (state " +
                                    std::to_string(state.size()) + ", operator " +
                                    std::to_string(op.rows()) + "x" + std::to_string(op.cols()) +
                                    ")");
    }
    const Scalar norm_sq = state.squaredNorm();
    if (!std::isfinite(norm_sq) || std::abs(norm_sq - Scalar(1)) > Scalar(expectation_tolerance)) {
        throw std::invalid_argument("expectation: state is not normalized");
    }
    return state.dot(op * state);
}

template <typename Scalar>
struct Normalized {
    FockVector<Scalar> state;
    Scalar norm;
};

template <typename Scalar>
Normalized<Scalar> normalize(const FockVector<Scalar>& state)
{
    const Scalar norm = state.norm();
    if (!(norm > 0) || !std::isfinite(norm)) {
        throw std::invalid_argument("normalize: zero or nonfinite vector");
    }
    return {state / norm, norm};
}

template <typename Scalar>
bool is_hermitian(const OperatorMatrix<Scalar>& op, Scalar tol = Scalar(0))
{
    return op.rows() == op.cols() && (op - op.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

/// Appends two empty levels so that any product of two ladder operators
/// acts on the state exactly as on the untruncated space.
template <typename Scalar>
FockVector<Scalar> pad_for_quadratic(const FockVector<Scalar>& state)
{
    FockVector<Scalar> out = FockVector<Scalar>::Zero(state.size() + 2);
    out.head(state.size()) = state;
    return out;
}

/// Kronecker product A (x) B; the first factor is the slow index.
template <typename Scalar>
OperatorMatrix<Scalar> kron(const OperatorMatrix<Scalar>& a, const OperatorMatrix<Scalar>& b)
{
    OperatorMatrix<Scalar> out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

template <typename Scalar>
FockVector<Scalar> kron(const FockVector<Scalar>& a, const FockVector<Scalar>& b)
{
    FockVector<Scalar> out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        out.segment(i * b.size(), b.size()) = a(i) * b;
    }
    return out;
}

}  // namespace fock
}  // namespace puocs

#endif  // PUOCS_FOCK_HPP
