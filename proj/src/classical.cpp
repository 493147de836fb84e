#include "puocs/classical.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace puocs::classical {

namespace {

using State = Eigen::Vector4d;

State rhs(const PuoParams<double>& params, const State& u)
{
    const double W2 = params.big_freq * params.big_freq;
    const double w2 = params.small_freq * params.small_freq;
    return {u(1), u(2), u(3), -(W2 + w2) * u(2) - W2 * w2 * u(0)};
}

double sine_derivative(double amp, double freq, double phase, double t, int order)
{
    return amp * std::pow(freq, order) *
           std::sin(freq * t + phase + order * std::numbers::pi / 2);
}

}  // namespace

double analytic_solution(const PuoParams<double>& params, const TwoModeSolution& sol, double t)
{
    return analytic_derivative(params, sol, t, 0);
}

double analytic_derivative(const PuoParams<double>& params, const TwoModeSolution& sol, double t,
                           int order)
{
    if (order < 0 || order > 4) {
        throw std::invalid_argument("analytic_derivative: order must be in [0, 4]");
    }
    return sine_derivative(sol.amp_big, params.big_freq, sol.phase_big, t, order) +
           sine_derivative(sol.amp_small, params.small_freq, sol.phase_small, t, order);
}

ClassicalInit initial_conditions(const PuoParams<double>& params, const TwoModeSolution& sol)
{
    return {analytic_derivative(params, sol, 0, 0), analytic_derivative(params, sol, 0, 1),
            analytic_derivative(params, sol, 0, 2), analytic_derivative(params, sol, 0, 3)};
}

TwoModeSolution solution_for(const PuoParams<double>& params, const PuoStateLabel& label)
{
    modes::validate(params);
    puo::validate(label);
    const double s = params.gap();
    return {std::sqrt(2 * label.J / params.big_freq) / s, label.Gamma0,
            std::sqrt(2 * label.j / params.small_freq) / s, label.gamma0};
}

Trajectory integrate(const PuoParams<double>& params, const ClassicalInit& init, double t_end,
                     double dt)
{
    modes::validate(params);
    if (!(t_end > 0) || !std::isfinite(t_end)) {
        throw std::invalid_argument("integrate: t_end must be positive");
    }
    if (!(dt > 0) || dt > 0.1 / params.big_freq) {
        throw std::invalid_argument("integrate: step must satisfy 0 < dt <= 0.1 / Omega");
    }
    const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));

    Trajectory traj;
    traj.step = dt;
    traj.times.reserve(steps + 1);
    for (auto* v : {&traj.z, &traj.zdot, &traj.zddot, &traj.zdddot}) {
        v->reserve(steps + 1);
    }
    auto record = [&](std::size_t k, const State& u) {
        if (!u.allFinite()) {
            throw std::runtime_error("integrate: nonfinite state at step " + std::to_string(k));
        }
        traj.times.push_back(static_cast<double>(k) * dt);
        traj.z.push_back(u(0));
        traj.zdot.push_back(u(1));
        traj.zddot.push_back(u(2));
        traj.zdddot.push_back(u(3));
    };

    State u(init.z0, init.zdot0, init.zddot0, init.zdddot0);
    record(0, u);
    for (std::size_t k = 1; k <= steps; ++k) {
        const State k1 = rhs(params, u);
        const State k2 = rhs(params, u + 0.5 * dt * k1);
        const State k3 = rhs(params, u + 0.5 * dt * k2);
        const State k4 = rhs(params, u + dt * k3);
        u += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        record(k, u);
    }
    return traj;
}

double match_expectation(const PuoParams<double>& params, const PuoStateLabel& label, double t_end,
                         double dt)
{
    const TwoModeSolution sol = solution_for(params, label);
    const Trajectory traj = integrate(params, initial_conditions(params, sol), t_end, dt);
    double worst = 0;
    PuoStateLabel at = label;
    for (std::size_t k = 0; k < traj.size(); ++k) {
        at.t = traj.times[k];
        const double mean_z = puo::closed_moments(params, at).mean_z;
        worst = std::max(worst, std::abs(traj.z[k] - mean_z));
    }
    return worst;
}

double second_derivative(const std::function<double(double)>& f, double t, double h)
{
    return (-f(t + 2 * h) + 16 * f(t + h) - 30 * f(t) + 16 * f(t - h) - f(t - 2 * h)) /
           (12 * h * h);
}

double fourth_derivative(const std::function<double(double)>& f, double t, double h)
{
    const double sum = -(f(t + 3 * h) + f(t - 3 * h)) + 12 * (f(t + 2 * h) + f(t - 2 * h)) -
                       39 * (f(t + h) + f(t - h)) + 56 * f(t);
    return sum / (6 * h * h * h * h);
}

double fourth_derivative_step(const PuoParams<double>& params)
{
    // Balances stencil roundoff ~27 eps / (h^4 W^2 w^2) against truncation
    // ~0.03 (h W)^4, both relative to the largest equation term.
    return 0.026 / (std::pow(params.big_freq, 0.75) * std::pow(params.small_freq, 0.25));
}

double equation_of_motion_residual(const PuoParams<double>& params,
                                   const std::function<double(double)>& f,
                                   const std::vector<double>& times)
{
    const double W2 = params.big_freq * params.big_freq;
    const double w2 = params.small_freq * params.small_freq;
    const double h4 = fourth_derivative_step(params);
    const double h2 = 1e-3 / params.big_freq;
    double worst = 0;
    double scale = 0;
    for (const double t : times) {
        const double d4 = fourth_derivative(f, t, h4);
        const double d2 = (W2 + w2) * second_derivative(f, t, h2);
        const double d0 = W2 * w2 * f(t);
        worst = std::max(worst, std::abs(d4 + d2 + d0));
        scale = std::max({scale, std::abs(d4), std::abs(d2), std::abs(d0)});
    }
    return scale > 0 ? worst / scale : 0.0;
}

double ehrenfest_residual(double freq, double amplitude, const std::function<double(double)>& f,
                          const std::vector<double>& times)
{
    if (amplitude == 0) {
        return 0;
    }
    const double h = 1e-3 / freq;
    double worst = 0;
    for (const double t : times) {
        worst = std::max(worst, std::abs(second_derivative(f, t, h) + freq * freq * f(t)));
    }
    return worst / (freq * freq * amplitude);
}

double convergence_order(const PuoParams<double>& params, const TwoModeSolution& sol, double t_end,
                         double dt)
{
    const ClassicalInit init = initial_conditions(params, sol);
    auto max_error = [&](double step) {
        const Trajectory traj = integrate(params, init, t_end, step);
        double worst = 0;
        for (std::size_t k = 0; k < traj.size(); ++k) {
            worst = std::max(worst,
                             std::abs(traj.z[k] - analytic_solution(params, sol, traj.times[k])));
        }
        return worst;
    };
    return std::log2(max_error(dt) / max_error(dt / 2));
}

}  // namespace puocs::classical
