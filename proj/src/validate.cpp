#include "puocs/validate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "puocs/classical.hpp"
#include "puocs/fock.hpp"
#include "puocs/gcs.hpp"
#include "puocs/puo.hpp"

namespace puocs::validate {

namespace {

constexpr double pi = std::numbers::pi;

class Tally {
public:
    Tally(std::string suite, std::string invariant, double tolerance)
    {
        result_.suite = std::move(suite);
        result_.invariant = std::move(invariant);
        result_.tolerance = tolerance;
    }

    /// Records one check; NaN counts as a failure.
    void add(double residual)
    {
        ++result_.checks;
        if (!(residual <= result_.tolerance)) {
            ++result_.failures;
        }
        if (std::isnan(residual)) {
            result_.worst = residual;
        } else if (!std::isnan(result_.worst)) {
            result_.worst = std::max(result_.worst, residual);
        }
    }

    /// Records a boolean condition with its witness value.
    void require(bool ok, double witness)
    {
        ++result_.checks;
        if (!ok) {
            ++result_.failures;
        }
        result_.worst = std::max(result_.worst, witness);
    }

    CheckResult done() const { return result_; }

private:
    CheckResult result_;
};

struct PuoGrid {
    std::vector<double> ratios;
    std::vector<double> strengths;
    std::vector<double> phases;
    std::vector<double> times;
};

PuoGrid puo_grid(Grid grid)
{
    if (grid == Grid::small) {
        return {{2.0, 20.0}, {0.0, 2.0}, {0.0, pi / 2}, {0.0, 3.0}};
    }
    return {{1.1, 2.0, 5.0, 20.0}, {0.0, 0.5, 2.0}, {0.0, pi / 4, pi / 2, pi}, {0.0, 1.0, 3.0}};
}

/// Calls fn(params, label) for every (ratio, J, j, Gamma0, gamma0) with t = 0.
template <typename Fn>
void for_each_label(const PuoGrid& g, Fn&& fn)
{
    for (const double ratio : g.ratios) {
        const PuoParams<double> params{ratio, 1.0};
        for (const double J : g.strengths) {
            for (const double j : g.strengths) {
                for (const double G : g.phases) {
                    for (const double gam : g.phases) {
                        fn(params, PuoStateLabel{J, G, j, gam, 0.0});
                    }
                }
            }
        }
    }
}

std::vector<double> linspace(double from, double to, int count)
{
    std::vector<double> out(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        out[static_cast<std::size_t>(k)] = from + (to - from) * k / (count - 1);
    }
    return out;
}

double rel_dev(double a, double b, double abs_floor)
{
    const double diff = std::abs(a - b);
    if (diff <= abs_floor) {
        return 0;
    }
    return diff / std::max(std::abs(a), std::abs(b));
}

double moment_set_deviation(const MomentSet<double>& a, const MomentSet<double>& b)
{
    using M = MomentSet<double>;
    constexpr std::array<double M::*, 8> fields{&M::mean_pos, &M::mean_mom, &M::mean_pos_sq,
                                                &M::mean_mom_sq, &M::var_pos, &M::var_mom,
                                                &M::uncertainty_product, &M::energy};
    double worst = 0;
    for (auto f : fields) {
        worst = std::max(worst, rel_dev(a.*f, b.*f, puo::absolute_tolerance));
    }
    return worst;
}

FockVector<double> random_unit_state(std::mt19937_64& rng, int truncation)
{
    std::normal_distribution<double> normal;
    FockVector<double> v(truncation + 1);
    for (Eigen::Index n = 0; n < v.size(); ++n) {
        v(n) = {normal(rng), normal(rng)};
    }
    return fock::normalize(v).state;
}

}  // namespace

std::vector<CheckResult> fock_suite(const Options& options)
{
    const std::vector<int> truncations =
        options.grid == Grid::small ? std::vector<int>{0, 1, 5, 20}
                                    : std::vector<int>{0, 1, 2, 5, 10, 20, 40, 80};
    Tally adjoint("fock", "ladder_adjointness", 0.0);
    Tally commutator("fock", "truncated_commutator", 1e-13);
    Tally canonical("fock", "position_momentum_commutator_block", 1e-12);
    Tally realness("fock", "hermitian_expectation_realness", 1e-10);
    Tally ortho("fock", "number_state_orthonormality", 0.0);

    std::mt19937_64 rng(20260101);
    for (const int n : truncations) {
        const auto [a, adag] = fock::ladder_matrices<double>(n);
        adjoint.add((adag - a.adjoint()).cwiseAbs().maxCoeff());

        OperatorMatrix<double> expected = OperatorMatrix<double>::Identity(n + 1, n + 1);
        expected(n, n) = -static_cast<double>(n);
        commutator.add((a * adag - adag * a - expected).cwiseAbs().maxCoeff());

        for (const double freq : {0.5, 1.0, 2.0}) {
            const auto ops = fock::position_momentum<double>(1.3, freq, n);
            if (n >= 1) {
                const OperatorMatrix<double> c = ops.pos * ops.mom - ops.mom * ops.pos;
                const OperatorMatrix<double> block = c.topLeftCorner(n, n);
                canonical.add(
                    (block - std::complex<double>(0, 1) * OperatorMatrix<double>::Identity(n, n))
                        .cwiseAbs()
                        .maxCoeff());
            }
            const std::array<OperatorMatrix<double>, 4> hermitian{
                ops.pos, ops.mom, OperatorMatrix<double>(ops.pos * ops.pos),
                fock::number_operator<double>(n)};
            for (int trial = 0; trial < 3; ++trial) {
                const auto psi = random_unit_state(rng, n);
                for (const auto& op : hermitian) {
                    realness.add(std::abs(fock::expectation(psi, op).imag()));
                }
            }
        }

        for (int m = 0; m <= n; ++m) {
            for (int k = 0; k <= n; ++k) {
                const auto overlap =
                    fock::number_state<double>(n, m).dot(fock::number_state<double>(n, k));
                ortho.add(std::abs(overlap - std::complex<double>(m == k ? 1.0 : 0.0, 0.0)));
            }
        }
    }
    return {adjoint.done(), commutator.done(), canonical.done(), realness.done(), ortho.done()};
}

std::vector<CheckResult> gcs_suite(const Options& options)
{
    const bool small = options.grid == Grid::small;
    const std::vector<double> masses = small ? std::vector<double>{1.0} : std::vector<double>{1.0, 2.5};
    const std::vector<double> freqs = small ? std::vector<double>{2.0} : std::vector<double>{0.7, 2.0};
    const std::vector<double> strengths =
        small ? std::vector<double>{0.0, 4.0} : std::vector<double>{0.0, 0.5, 2.0, 4.0};
    const std::vector<double> phases = small ? std::vector<double>{0.0, 1.0}
                                             : std::vector<double>{0.0, pi / 4, pi / 2, pi, 5.0};

    Tally oracle("gcs", "closed_vs_fock_moments", 1e-8);
    Tally alpha("gcs", "annihilation_expectation", 1e-10);
    Tally dispersion_closed("gcs", "dispersion_constancy_closed", 0.0);
    Tally dispersion_numeric("gcs", "dispersion_constancy_numeric", 1e-8);
    Tally evolution("gcs", "phase_shift_is_time_evolution", 1e-10);
    Tally ninety("gcs", "ninety_degree_phase_relation", 1e-12);
    Tally ehrenfest("gcs", "ehrenfest_second_derivative", 1e-6);

    const auto times = linspace(0.0, 6.0, 13);
    for (const EnergySign sign : {EnergySign::normal, EnergySign::ghost}) {
        for (const double mass : masses) {
            for (const double freq : freqs) {
                const OscillatorSpec<double> spec{mass, freq, sign};
                const int n_ops = gcs::truncation_for(strengths.back());
                const auto [a, adag] = fock::ladder_matrices<double>(n_ops);
                for (const double strength : strengths) {
                    for (const double phase : phases) {
                        const GcsLabel<double> label{strength, phase};
                        const auto psi = gcs::build_state(spec, label, n_ops);
                        const auto closed = gcs::second_moments_and_dispersions(spec, label);
                        const auto numeric = gcs::numeric_moments(spec, psi);
                        oracle.add(moment_set_deviation(closed, numeric));

                        alpha.add(std::abs(fock::expectation(psi, a) -
                                           gcs::coherent_parameter(spec, label)));

                        const double mw = mass * freq;
                        dispersion_closed.add(std::max({std::abs(closed.var_pos - 1 / (2 * mw)),
                                                        std::abs(closed.var_mom - mw / 2),
                                                        std::abs(closed.uncertainty_product - 0.25)}));
                        dispersion_numeric.add(std::max({rel_dev(numeric.var_pos, 1 / (2 * mw), 0),
                                                         rel_dev(numeric.var_mom, mw / 2, 0),
                                                         rel_dev(numeric.uncertainty_product, 0.25, 0)}));

                        for (const double t : {0.3, 1.7, 4.0}) {
                            const auto evolved = gcs::evolve_state(spec, psi, t);
                            const auto shifted =
                                gcs::build_state(spec, GcsLabel<double>{strength, phase + freq * t}, n_ops);
                            evolution.add(std::abs(std::abs(evolved.dot(shifted)) - 1.0));
                        }

                        if (sign == EnergySign::ghost) {
                            const OscillatorSpec<double> normal{mass, freq, EnergySign::normal};
                            const auto [gx, gp] = gcs::first_moments(spec, label);
                            const auto [nx, np] =
                                gcs::first_moments(normal, GcsLabel<double>{strength, pi / 2 - phase});
                            const double scale = std::max({1.0, std::abs(gx), std::abs(gp)});
                            ninety.add(std::max(std::abs(gx - nx), std::abs(gp - np)) / scale);
                        }

                        const double amplitude = std::sqrt(2 * strength / mw);
                        ehrenfest.add(classical::ehrenfest_residual(
                            freq, amplitude,
                            [&](double t) {
                                return gcs::first_moments(spec, GcsLabel<double>{strength, phase + freq * t})
                                    .first;
                            },
                            times));
                    }
                }
            }
        }
    }
    return {oracle.done(),    alpha.done(),     dispersion_closed.done(), dispersion_numeric.done(),
            evolution.done(), ninety.done(),    ehrenfest.done()};
}

std::vector<CheckResult> modes_suite(const Options& options)
{
    const std::vector<std::pair<double, double>> freq_pairs =
        options.grid == Grid::small
            ? std::vector<std::pair<double, double>>{{1.01, 1.0}, {2.0, 1.0}, {1000.0, 1.0}}
            : std::vector<std::pair<double, double>>{{1.01, 1.0}, {1.1, 1.0}, {2.0, 1.0},
                                                     {5.0, 1.0},  {20.0, 1.0}, {100.0, 1.0},
                                                     {1000.0, 1.0}, {10.0, 0.1}};
    const int points = options.grid == Grid::small ? 8 : 32;

    Tally round_trip("modes", "round_trip_identity", 1e-12);
    Tally symplectic("modes", "symplectic_residual", 1e-12);
    Tally energy("modes", "hamiltonian_equivalence", 1e-12);
    Tally linear("modes", "linearity", 1e-12);
    Tally detect("modes", "printed_inverse_detected", 0.0);

    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    auto random_vec = [&] { return Vector4<double>(coord(rng), coord(rng), coord(rng), coord(rng)); };

    for (const auto& [W, w] : freq_pairs) {
        const PuoParams<double> params{W, w};
        symplectic.add(modes::symplectic_residual(params, options.inverse));
        const double printed = modes::symplectic_residual(params, InverseVariant::printed);
        detect.require(printed > 0.1, 0.0);

        for (int k = 0; k < points; ++k) {
            const auto pt = PuoPhasePoint<double>::from(random_vec());
            const auto back = modes::inverse(params, modes::forward(params, pt), options.inverse);
            round_trip.add((back.vec() - pt.vec()).cwiseAbs().maxCoeff() /
                           std::max(1.0, pt.vec().cwiseAbs().maxCoeff()));

            const auto mp = ModePhasePoint<double>::from(random_vec());
            const auto fwd = modes::forward(params, modes::inverse(params, mp, options.inverse));
            round_trip.add((fwd.vec() - mp.vec()).cwiseAbs().maxCoeff() /
                           std::max(1.0, mp.vec().cwiseAbs().maxCoeff()));

            // Both forms are indefinite, so the error is measured against the
            // size of the individual quadratic terms, not against |H|.
            const auto mp_of_pt = modes::forward(params, pt);
            const double h_puo = modes::hamiltonian_puo(params, pt);
            const double h_modes = modes::hamiltonian_modes(params, mp_of_pt);
            const double W2 = W * W;
            const double w2 = w * w;
            const double term_scale = std::max(
                0.5 * (pt.p_q * pt.p_q + 2 * std::abs(pt.q * pt.p_z) + (W2 + w2) * pt.q * pt.q +
                       W2 * w2 * pt.z * pt.z),
                0.5 * (mp_of_pt.P * mp_of_pt.P + W2 * mp_of_pt.X * mp_of_pt.X + mp_of_pt.p * mp_of_pt.p +
                       w2 * mp_of_pt.x * mp_of_pt.x));
            energy.add(std::abs(h_puo - h_modes) / term_scale);

            const auto pt2 = PuoPhasePoint<double>::from(random_vec());
            const double ca = coord(rng);
            const double cb = coord(rng);
            const auto lhs =
                modes::forward(params, PuoPhasePoint<double>::from(ca * pt.vec() + cb * pt2.vec()));
            const Vector4<double> rhs = ca * modes::forward(params, pt).vec() +
                                        cb * modes::forward(params, pt2).vec();
            linear.add((lhs.vec() - rhs).cwiseAbs().maxCoeff() /
                       std::max(1.0, rhs.cwiseAbs().maxCoeff()));
        }
    }
    return {round_trip.done(), symplectic.done(), energy.done(), linear.done(), detect.done()};
}

std::vector<CheckResult> puo_suite(const Options& options)
{
    const PuoGrid grid = puo_grid(options.grid);
    Tally oracle("puo", "closed_vs_fock_moments", 1e-8);
    Tally energy_forms("puo", "energy_quadratic_form_cross_check", 1e-8);
    Tally invariance("puo", "dispersion_time_invariance", 1e-8);
    Tally constraint("puo", "constraint_zdot_equals_q", 1e-9);
    Tally tensor("puo", "tensor_product_spot_check", 1e-8);
    Tally eom("puo", "mean_z_solves_fourth_order_equation", 1e-5);
    Tally energy_pos("puo", "energy_positive_at_J_equals_j", 0.0);
    Tally product_bound("puo", "uncertainty_product_above_quarter", 0.0);
    Tally asym_value("puo", "asymptotic_product_at_ratio_100", 1e-6);
    Tally asym_rate("puo", "asymptotic_gap_quadratic_decay", 0.0);

    const auto sweep = linspace(0.0, 10.0, options.grid == Grid::small ? 6 : 21);
    const auto eom_times = linspace(0.0, 9.5, options.grid == Grid::small ? 5 : 20);

    for_each_label(grid, [&](const PuoParams<double>& params, PuoStateLabel label) {
        for (const double t : grid.times) {
            label.t = t;
            const auto closed = puo::closed_moments(params, label);
            const auto numeric = puo::numeric_moments_detailed(params, label, std::nullopt, options.inverse);
            oracle.add(puo::worst_relative_deviation(closed, numeric.report));
            energy_forms.add(rel_dev(numeric.energy_quadratic_form, numeric.report.energy,
                                     puo::absolute_tolerance));
            constraint.add(numeric.report.constraint_residual);
        }

        std::array<double, 3> lo{1e300, 1e300, 1e300};
        std::array<double, 3> hi{-1e300, -1e300, -1e300};
        for (const double t : sweep) {
            label.t = t;
            const auto r = puo::numeric_moments(params, label, std::nullopt, options.inverse);
            const std::array<double, 3> v{r.var_z, r.var_pz, r.uncertainty_product};
            for (std::size_t i = 0; i < 3; ++i) {
                lo[i] = std::min(lo[i], v[i]);
                hi[i] = std::max(hi[i], v[i]);
            }
        }
        double spread = 0;
        for (std::size_t i = 0; i < 3; ++i) {
            spread = std::max(spread, (hi[i] - lo[i]) / std::abs(hi[i]));
        }
        invariance.add(spread);

        label.t = 0;
        eom.add(classical::equation_of_motion_residual(
            params,
            [&](double t) {
                PuoStateLabel at = label;
                at.t = t;
                return puo::closed_moments(params, at).mean_z;
            },
            eom_times));
    });

    {
        const PuoParams<double> params{2.0, 1.0};
        const PuoStateLabel label{0.5, pi / 4, 0.5, pi / 3, 0.7};
        tensor.add(puo::worst_relative_deviation(puo::tensor_product_moments(params, label, 12),
                                                 puo::numeric_moments(params, label, 12, options.inverse)));
    }

    for (const double ratio : {1.01, 1.1, 2.0, 5.0, 20.0, 100.0, 1000.0}) {
        const PuoParams<double> params{ratio, 1.0};
        for (const double J : {0.0, 0.5, 2.0, 10.0}) {
            const auto e = puo::energy_positivity(params, J);
            energy_pos.require(e.positive, 0.0);
        }
        const auto a = puo::asymptotic_product(params);
        product_bound.require(a.exact > 0.25, 0.0);
    }

    asym_value.add(std::abs(puo::asymptotic_product(PuoParams<double>{100.0, 1.0}).exact - 0.2525508));
    double previous_gap = 1e300;
    for (int k = 0; k <= 12; ++k) {
        const double ratio = std::pow(10.0, 1.0 + 3.0 * k / 12);
        const auto a = puo::asymptotic_product(PuoParams<double>{ratio, 1.0});
        const double r2 = 1.0 / (ratio * ratio);
        asym_rate.require(a.gap < previous_gap && a.gap <= 2 * r2, 0.0);
        previous_gap = a.gap;
    }

    return {oracle.done(),     energy_forms.done(), invariance.done(),    constraint.done(),
            tensor.done(),     eom.done(),          energy_pos.done(),    product_bound.done(),
            asym_value.done(), asym_rate.done()};
}

std::vector<CheckResult> classical_suite(const Options& options)
{
    const PuoGrid grid = puo_grid(options.grid);
    Tally analytic("classical", "analytic_solution_residual", 1e-5);
    Tally rk4("classical", "rk4_matches_analytic", 1e-8);
    // Recorded as the shortfall below order 3.8.
    Tally order("classical", "rk4_convergence_order_shortfall", 0.0);
    Tally correspondence("classical", "mean_z_matches_classical_trajectory", 1e-6);
    Tally ehrenfest("classical", "single_mode_ehrenfest", 1e-6);

    const auto times = linspace(0.0, 9.5, 20);
    for (const double ratio : grid.ratios) {
        const PuoParams<double> params{ratio, 1.0};
        for (const TwoModeSolution sol : {TwoModeSolution{1, 0, 1, 0}, TwoModeSolution{0.3, 1.1, 2.0, -0.4},
                                          TwoModeSolution{0, 0, 1, 0.5}}) {
            analytic.add(classical::equation_of_motion_residual(
                params, [&](double t) { return classical::analytic_solution(params, sol, t); },
                times));
        }
    }

    {
        const PuoParams<double> params{2.0, 1.0};
        const TwoModeSolution sol{1, 0, 1, 0};
        const auto traj = classical::integrate(params, classical::initial_conditions(params, sol), 10.0, 1e-3);
        double worst = 0;
        for (std::size_t k = 0; k < traj.size(); ++k) {
            worst = std::max(worst, std::abs(traj.z[k] - classical::analytic_solution(params, sol, traj.times[k])));
        }
        rk4.add(worst);
        const double p = classical::convergence_order(params, sol, 10.0, 0.02);
        order.add(std::max(0.0, 3.8 - p));
    }

    for_each_label(grid, [&](const PuoParams<double>& params, const PuoStateLabel& label) {
        correspondence.add(classical::match_expectation(params, label, 10.0, 1e-3));

        const auto big = puo::normal_mode(params);
        const auto small = puo::ghost_mode(params);
        for (const auto& [spec, label1] :
             {std::pair{big, GcsLabel<double>{label.J, label.Gamma0}},
              std::pair{small, GcsLabel<double>{label.j, label.gamma0}}}) {
            const double amplitude = std::sqrt(2 * label1.strength / spec.freq);
            ehrenfest.add(classical::ehrenfest_residual(
                spec.freq, amplitude,
                [&](double t) {
                    return gcs::first_moments(spec, GcsLabel<double>{label1.strength,
                                                                     label1.phase + spec.freq * t})
                        .first;
                },
                times));
        }
    });

    return {analytic.done(), rk4.done(), order.done(), correspondence.done(), ehrenfest.done()};
}

std::vector<CheckResult> run_all(const Options& options)
{
    std::vector<CheckResult> all;
    for (auto suite : {fock_suite, gcs_suite, modes_suite, puo_suite, classical_suite}) {
        auto part = suite(options);
        all.insert(all.end(), part.begin(), part.end());
    }
    return all;
}

bool all_passed(const std::vector<CheckResult>& results)
{
    return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed(); });
}

}  // namespace puocs::validate
