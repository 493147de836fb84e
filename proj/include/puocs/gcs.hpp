#ifndef PUOCS_GCS_HPP
#define PUOCS_GCS_HPP

// Generalized coherent states of a single oscillator, for either the
// ordinary spectrum E_n = freq (n + 1/2) or the ghost spectrum
// E_n = -freq (n + 1/2). Both live in a positive-norm Fock space.
//
// Normal:  alpha = sqrt(J) e^{-i Gamma}
// Ghost:   alpha = -i sqrt(j) e^{+i gamma}
//
// With these, the state is the standard series
//   |alpha> = e^{-|alpha|^2/2} sum_n alpha^n / sqrt(n!) |n>
// and Schroedinger evolution advances the phase label by freq * t.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "puocs/fock.hpp"

namespace puocs {

enum class EnergySign : int { normal = 1, ghost = -1 };

inline constexpr int sign_value(EnergySign s) { return static_cast<int>(s); }

template <typename Scalar = double>
struct OscillatorSpec {
    Scalar mass{1};
    Scalar freq{1};
    EnergySign sign{EnergySign::normal};
};

/// strength is J (normal) or j (ghost); phase is Gamma or gamma.
template <typename Scalar = double>
struct GcsLabel {
    Scalar strength{0};
    Scalar phase{0};
};

template <typename Scalar = double>
struct MomentSet {
    Scalar mean_pos{};
    Scalar mean_mom{};
    Scalar mean_pos_sq{};
    Scalar mean_mom_sq{};
    Scalar var_pos{};
    Scalar var_mom{};
    Scalar uncertainty_product{};
    Scalar energy{};
};

namespace gcs {

inline constexpr double default_tail_tolerance = 1e-12;
inline constexpr double max_strength = 50.0;

template <typename Scalar>
void validate(const OscillatorSpec<Scalar>& spec)
{
    if (!(spec.mass > 0) || !(spec.freq > 0) || !std::isfinite(spec.mass) ||
        !std::isfinite(spec.freq)) {
        throw std::invalid_argument("oscillator mass and frequency must be positive and finite");
    }
    if (spec.sign != EnergySign::normal && spec.sign != EnergySign::ghost) {
        throw std::invalid_argument("oscillator sign must be +1 or -1");
    }
}

template <typename Scalar>
void validate(const GcsLabel<Scalar>& label)
{
    if (!(label.strength >= 0) || !std::isfinite(label.strength)) {
        throw std::invalid_argument("coherent-state strength must be nonnegative and finite");
    }
    if (label.strength > Scalar(max_strength)) {
        throw std::invalid_argument("coherent-state strength above supported maximum of 50");
    }
    if (!std::isfinite(label.phase)) {
        throw std::invalid_argument("coherent-state phase must be finite");
    }
}

/// Eigenvalue of the annihilation operator for the labelled state.
template <typename Scalar>
Complex<Scalar> coherent_parameter(const OscillatorSpec<Scalar>& spec, const GcsLabel<Scalar>& label)
{
    const Scalar r = std::sqrt(label.strength);
    if (spec.sign == EnergySign::normal) {
        return std::polar(r, -label.phase);
    }
    // -i e^{i gamma} = e^{i (gamma - pi/2)}
    return std::polar(r, label.phase - std::numbers::pi_v<Scalar> / Scalar(2));
}

/// Smallest N with e^{-s} sum_{n>N} s^n/n! <= tail_tol.
template <typename Scalar = double>
int truncation_for(Scalar strength, Scalar tail_tol = Scalar(default_tail_tolerance))
{
    if (!(tail_tol > 0) || !(tail_tol < 1)) {
        throw std::invalid_argument("truncation_for: tail tolerance must lie in (0, 1)");
    }
    if (!(strength >= 0) || !std::isfinite(strength)) {
        throw std::invalid_argument("truncation_for: strength must be nonnegative");
    }
    if (strength == 0) {
        return 0;
    }
    // Poisson weights in log space, far enough out that the remainder is
    // below double resolution of the tolerance.
    const int n_max = static_cast<int>(std::ceil(strength + 40 * std::sqrt(strength) + 60));
    std::vector<Scalar> weight(static_cast<std::size_t>(n_max) + 1);
    Scalar log_w = -strength;
    const Scalar log_s = std::log(strength);
    for (int n = 0; n <= n_max; ++n) {
        if (n > 0) {
            log_w += log_s - std::log(static_cast<Scalar>(n));
        }
        weight[static_cast<std::size_t>(n)] = std::exp(log_w);
    }
    // tail(N) = sum_{n > N} weight[n], accumulated from the far end.
    Scalar tail = 0;
    int answer = n_max;
    for (int n = n_max; n >= 0; --n) {
        if (tail > tail_tol) {
            break;
        }
        answer = n;
        tail += weight[static_cast<std::size_t>(n)];
    }
    return answer;
}

/// Fock amplitudes e^{-|alpha|^2/2} alpha^n / sqrt(n!), n = 0..N.
/// Unless allow_short_truncation is set, N must cover the Poisson tail to
/// the default tolerance.
template <typename Scalar>
FockVector<Scalar> build_state(const OscillatorSpec<Scalar>& spec, const GcsLabel<Scalar>& label,
                               int truncation, bool allow_short_truncation = false)
{
    validate(spec);
    validate(label);
    if (truncation < 0) {
        throw std::invalid_argument("build_state: truncation must be nonnegative");
    }
    if (!allow_short_truncation) {
        const int needed = truncation_for<Scalar>(label.strength);
        if (truncation < needed) {
            throw std::domain_error("build_state: truncation " + std::to_string(truncation) +
                                    " below tail requirement " + std::to_string(needed));
        }
    }
    const Complex<Scalar> alpha = coherent_parameter(spec, label);
    FockVector<Scalar> amps = FockVector<Scalar>::Zero(truncation + 1);
    if (label.strength == 0) {
        amps(0) = Complex<Scalar>(1, 0);
        return amps;
    }
    const Scalar log_r = std::log(std::abs(alpha));
    const Scalar arg = std::arg(alpha);
    Scalar log_mag = -label.strength / Scalar(2);
    for (int n = 0; n <= truncation; ++n) {
        if (n > 0) {
            log_mag += log_r - Scalar(0.5) * std::log(static_cast<Scalar>(n));
        }
        amps(n) = std::polar(std::exp(log_mag), static_cast<Scalar>(n) * arg);
    }
    return amps;
}

template <typename Scalar>
FockVector<Scalar> build_state(const OscillatorSpec<Scalar>& spec, const GcsLabel<Scalar>& label)
{
    validate(label);
    return build_state(spec, label, truncation_for<Scalar>(label.strength));
}

/// Schroedinger evolution by the diagonal spectrum E_n = sign freq (n + 1/2).
template <typename Scalar>
FockVector<Scalar> evolve_state(const OscillatorSpec<Scalar>& spec, const FockVector<Scalar>& state,
                                Scalar t)
{
    FockVector<Scalar> out(state.size());
    const Scalar s = static_cast<Scalar>(sign_value(spec.sign));
    for (Eigen::Index n = 0; n < state.size(); ++n) {
        const Scalar energy = s * spec.freq * (static_cast<Scalar>(n) + Scalar(0.5));
        out(n) = state(n) * std::polar(Scalar(1), -energy * t);
    }
    return out;
}

/// Closed-form <pos>, <mom>.
template <typename Scalar>
std::pair<Scalar, Scalar> first_moments(const OscillatorSpec<Scalar>& spec,
                                        const GcsLabel<Scalar>& label)
{
    const Scalar mw = spec.mass * spec.freq;
    const Scalar j = label.strength;
    if (spec.sign == EnergySign::normal) {
        return {std::sqrt(Scalar(2) * j / mw) * std::cos(label.phase),
                -std::sqrt(Scalar(2) * mw * j) * std::sin(label.phase)};
    }
    return {std::sqrt(Scalar(2) * j / mw) * std::sin(label.phase),
            -std::sqrt(Scalar(2) * mw * j) * std::cos(label.phase)};
}

template <typename Scalar>
Scalar gcs_energy(const OscillatorSpec<Scalar>& spec, const GcsLabel<Scalar>& label)
{
    return static_cast<Scalar>(sign_value(spec.sign)) * spec.freq *
           (Scalar(1) + Scalar(2) * label.strength) / Scalar(2);
}

template <typename Scalar>
MomentSet<Scalar> second_moments_and_dispersions(const OscillatorSpec<Scalar>& spec,
                                                 const GcsLabel<Scalar>& label)
{
    const Scalar mw = spec.mass * spec.freq;
    const Scalar four_j = Scalar(4) * label.strength;
    // Normal: position follows cos, momentum sin. Ghost: swapped.
    const Scalar c = std::cos(label.phase);
    const Scalar s = std::sin(label.phase);
    const Scalar pos_trig = spec.sign == EnergySign::normal ? c : s;
    const Scalar mom_trig = spec.sign == EnergySign::normal ? s : c;

    MomentSet<Scalar> m;
    std::tie(m.mean_pos, m.mean_mom) = first_moments(spec, label);
    m.mean_pos_sq = (Scalar(1) + four_j * pos_trig * pos_trig) / (Scalar(2) * mw);
    m.mean_mom_sq = mw * (Scalar(1) + four_j * mom_trig * mom_trig) / Scalar(2);
    m.var_pos = Scalar(1) / (Scalar(2) * mw);
    m.var_mom = mw / Scalar(2);
    m.uncertainty_product = Scalar(0.25);
    m.energy = gcs_energy(spec, label);
    return m;
}

/// Brute-force moments of an arbitrary unit Fock state via matrix
/// expectations; the independent check on the closed forms above. The state
/// is zero-padded so quadratic operators act exactly on its support.
template <typename Scalar>
MomentSet<Scalar> numeric_moments(const OscillatorSpec<Scalar>& spec, const FockVector<Scalar>& state)
{
    validate(spec);
    const FockVector<Scalar> padded = fock::pad_for_quadratic(state);
    const int truncation = static_cast<int>(padded.size()) - 1;
    const auto ops = fock::position_momentum<Scalar>(spec.mass, spec.freq, truncation);
    const OperatorMatrix<Scalar> pos_sq = ops.pos * ops.pos;
    const OperatorMatrix<Scalar> mom_sq = ops.mom * ops.mom;

    MomentSet<Scalar> m;
    m.mean_pos = fock::expectation(padded, ops.pos).real();
    m.mean_mom = fock::expectation(padded, ops.mom).real();
    m.mean_pos_sq = fock::expectation(padded, pos_sq).real();
    m.mean_mom_sq = fock::expectation(padded, mom_sq).real();
    m.var_pos = m.mean_pos_sq - m.mean_pos * m.mean_pos;
    m.var_mom = m.mean_mom_sq - m.mean_mom * m.mean_mom;
    m.uncertainty_product = m.var_pos * m.var_mom;
    const Scalar kinetic_plus_potential =
        m.mean_mom_sq / (Scalar(2) * spec.mass) +
        spec.mass * spec.freq * spec.freq * m.mean_pos_sq / Scalar(2);
    m.energy = static_cast<Scalar>(sign_value(spec.sign)) * kinetic_plus_potential;
    return m;
}

}  // namespace gcs
}  // namespace puocs

#endif  // PUOCS_GCS_HPP
