#ifndef PUOCS_MODES_HPP
#define PUOCS_MODES_HPP

// Linear canonical map between the oscillator variables (z, p_z, q, p_q)
// and the decoupled normal modes (X, P, x, p), with s = sqrt(W^2 - w^2):
//
//   X = (p_z + W^2 q) / (W s)     x = (p_q + W^2 z) / s
//   P = W (p_q + w^2 z) / s       p = (p_z + w^2 q) / s
//
// Both orderings pair coordinates with momenta as (0,1), (2,3).

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace puocs {

template <typename Scalar = double>
struct PuoParams {
    Scalar big_freq{2};
    Scalar small_freq{1};

    Scalar gap() const { return std::sqrt(big_freq * big_freq - small_freq * small_freq); }
};

template <typename Scalar = double>
using Vector4 = Eigen::Matrix<Scalar, 4, 1>;

template <typename Scalar = double>
using Matrix4 = Eigen::Matrix<Scalar, 4, 4>;

template <typename Scalar = double>
struct PuoPhasePoint {
    Scalar z{}, p_z{}, q{}, p_q{};

    Vector4<Scalar> vec() const { return {z, p_z, q, p_q}; }
    static PuoPhasePoint from(const Vector4<Scalar>& v) { return {v(0), v(1), v(2), v(3)}; }
};

template <typename Scalar = double>
struct ModePhasePoint {
    Scalar X{}, P{}, x{}, p{};

    Vector4<Scalar> vec() const { return {X, P, x, p}; }
    static ModePhasePoint from(const Vector4<Scalar>& v) { return {v(0), v(1), v(2), v(3)}; }
};

/// Which inverse rows to use. `printed` reproduces the typeset inverse
/// (x in place of X in p_z, w in place of W in p_q); it is not the inverse
/// of the forward map and exists so that tests can show it gets caught.
enum class InverseVariant { corrected, printed };

namespace modes {

template <typename Scalar>
void validate(const PuoParams<Scalar>& params)
{
    if (!std::isfinite(params.big_freq) || !std::isfinite(params.small_freq) ||
        !(params.small_freq > 0) || !(params.big_freq > params.small_freq)) {
        throw std::invalid_argument("requires Omega > omega > 0");
    }
}

template <typename Scalar>
PuoParams<Scalar> make_params(Scalar big_freq, Scalar small_freq)
{
    PuoParams<Scalar> params{big_freq, small_freq};
    validate(params);
    return params;
}

/// d(X, P, x, p) / d(z, p_z, q, p_q).
template <typename Scalar>
Matrix4<Scalar> forward_jacobian(const PuoParams<Scalar>& params)
{
    validate(params);
    const Scalar W = params.big_freq;
    const Scalar w2 = params.small_freq * params.small_freq;
    const Scalar s = params.gap();
    Matrix4<Scalar> t;
    // clang-format off
    t << 0,          1 / (W * s), W / s,      0,
         W * w2 / s, 0,           0,          W / s,
         W * W / s,  0,           0,          1 / s,
         0,          1 / s,       w2 / s,     0;
    // clang-format on
    return t;
}

/// d(z, p_z, q, p_q) / d(X, P, x, p).
template <typename Scalar>
Matrix4<Scalar> inverse_jacobian(const PuoParams<Scalar>& params,
                                 InverseVariant variant = InverseVariant::corrected)
{
    validate(params);
    const Scalar W = params.big_freq;
    const Scalar w = params.small_freq;
    const Scalar w2 = w * w;
    const Scalar s = params.gap();
    Matrix4<Scalar> t;
    // clang-format off
    t << 0,           -1 / (W * s), 1 / s,     0,
         -W * w2 / s, 0,            0,         W * W / s,
         W / s,       0,            0,         -1 / s,
         0,           W / s,        -w2 / s,   0;
    // clang-format on
    if (variant == InverseVariant::printed) {
        t.row(1) << 0, 0, -W * w2 / s, W * W / s;
        t.row(3) << 0, w / s, -w2 / s, 0;
    }
    return t;
}

template <typename Scalar>
ModePhasePoint<Scalar> forward(const PuoParams<Scalar>& params, const PuoPhasePoint<Scalar>& pt)
{
    return ModePhasePoint<Scalar>::from(forward_jacobian(params) * pt.vec());
}

template <typename Scalar>
PuoPhasePoint<Scalar> inverse(const PuoParams<Scalar>& params, const ModePhasePoint<Scalar>& pt,
                              InverseVariant variant = InverseVariant::corrected)
{
    return PuoPhasePoint<Scalar>::from(inverse_jacobian(params, variant) * pt.vec());
}

/// Block-antisymmetric form pairing (0,1) and (2,3).
template <typename Scalar = double>
Matrix4<Scalar> symplectic_form()
{
    Matrix4<Scalar> j = Matrix4<Scalar>::Zero();
    j(0, 1) = 1;
    j(1, 0) = -1;
    j(2, 3) = 1;
    j(3, 2) = -1;
    return j;
}

/// max |T^T J T - J|.
template <typename Scalar>
Scalar symplectic_residual(const Matrix4<Scalar>& jacobian)
{
    const Matrix4<Scalar> j = symplectic_form<Scalar>();
    return (jacobian.transpose() * j * jacobian - j).cwiseAbs().maxCoeff();
}

/// Worst symplectic defect of the forward map and of the selected inverse.
template <typename Scalar>
Scalar symplectic_residual(const PuoParams<Scalar>& params,
                           InverseVariant variant = InverseVariant::corrected)
{
    return std::max(symplectic_residual(forward_jacobian(params)),
                    symplectic_residual(inverse_jacobian(params, variant)));
}

/// 1/2 [p_q^2 + 2 q p_z + (W^2 + w^2) q^2 - W^2 w^2 z^2]
template <typename Scalar>
Scalar hamiltonian_puo(const PuoParams<Scalar>& params, const PuoPhasePoint<Scalar>& pt)
{
    const Scalar W2 = params.big_freq * params.big_freq;
    const Scalar w2 = params.small_freq * params.small_freq;
    return Scalar(0.5) * (pt.p_q * pt.p_q + Scalar(2) * pt.q * pt.p_z + (W2 + w2) * pt.q * pt.q -
                          W2 * w2 * pt.z * pt.z);
}

/// 1/2 (P^2 + W^2 X^2) - 1/2 (p^2 + w^2 x^2)
template <typename Scalar>
Scalar hamiltonian_modes(const PuoParams<Scalar>& params, const ModePhasePoint<Scalar>& pt)
{
    const Scalar W2 = params.big_freq * params.big_freq;
    const Scalar w2 = params.small_freq * params.small_freq;
    return Scalar(0.5) * (pt.P * pt.P + W2 * pt.X * pt.X) -
           Scalar(0.5) * (pt.p * pt.p + w2 * pt.x * pt.x);
}

}  // namespace modes
}  // namespace puocs

#endif  // PUOCS_MODES_HPP
