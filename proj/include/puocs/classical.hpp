#ifndef PUOCS_CLASSICAL_HPP
#define PUOCS_CLASSICAL_HPP

// Classical oracle for z'''' + (W^2 + w^2) z'' + W^2 w^2 z = 0.

#include <functional>
#include <vector>

#include "puocs/modes.hpp"
#include "puocs/puo.hpp"

namespace puocs {

struct ClassicalInit {
    double z0{}, zdot0{}, zddot0{}, zdddot0{};
};

/// A sin(W t + a) + B sin(w t + b).
struct TwoModeSolution {
    double amp_big{}, phase_big{};
    double amp_small{}, phase_small{};
};

struct Trajectory {
    double step{};
    std::vector<double> times;
    std::vector<double> z, zdot, zddot, zdddot;

    std::size_t size() const { return times.size(); }
};

namespace classical {

double analytic_solution(const PuoParams<double>& params, const TwoModeSolution& sol, double t);

/// k-th time derivative of the two-sine form, 0 <= k <= 4.
double analytic_derivative(const PuoParams<double>& params, const TwoModeSolution& sol, double t,
                           int order);

ClassicalInit initial_conditions(const PuoParams<double>& params, const TwoModeSolution& sol);

/// Two-sine solution whose z(t) equals <z>(t) of the coherent state.
TwoModeSolution solution_for(const PuoParams<double>& params, const PuoStateLabel& label);

/// Fixed-step RK4 on u = (z, z', z'', z'''). Requires dt <= 0.1 / W and
/// t_end > 0; the grid runs 0, dt, ..., n dt with n = ceil(t_end / dt).
/// Throws std::invalid_argument on a bad step and std::runtime_error if the
/// state stops being finite.
Trajectory integrate(const PuoParams<double>& params, const ClassicalInit& init, double t_end,
                     double dt);

/// max |z_classical(t) - <z>(t)| over the integration grid.
double match_expectation(const PuoParams<double>& params, const PuoStateLabel& label, double t_end,
                         double dt);

/// Centered 5-point second derivative.
double second_derivative(const std::function<double(double)>& f, double t, double h);

/// Centered 7-point fourth derivative.
double fourth_derivative(const std::function<double(double)>& f, double t, double h);

/// Step used for the 4th-derivative stencil: 0.026 W^{-3/4} w^{-1/4}.
double fourth_derivative_step(const PuoParams<double>& params);

/// max over `times` of |f'''' + (W^2+w^2) f'' + W^2 w^2 f|, divided by the
/// largest single term seen on the grid (0 when f vanishes identically).
double equation_of_motion_residual(const PuoParams<double>& params,
                                   const std::function<double(double)>& f,
                                   const std::vector<double>& times);

/// max over `times` of |f'' + freq^2 f| / (freq^2 * amplitude), with the
/// 5-point stencil at h = 1e-3 / freq.
double ehrenfest_residual(double freq, double amplitude, const std::function<double(double)>& f,
                          const std::vector<double>& times);

/// Empirical order log2(err(dt) / err(dt/2)) against the analytic solution.
double convergence_order(const PuoParams<double>& params, const TwoModeSolution& sol, double t_end,
                         double dt);

}  // namespace classical
}  // namespace puocs

#endif  // PUOCS_CLASSICAL_HPP
