#include "puocs/puo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace puocs::puo {

namespace {

using Row = Eigen::RowVector4d;
using ComplexMatrix4 = Eigen::Matrix<std::complex<double>, 4, 4>;

/// <v_i v_k> for v = (X, P, x, p) in a product state. Same-mode entries come
/// from operator products; cross-mode entries factorize.
struct ModeMoments {
    Vector4<double> mean;
    ComplexMatrix4 second;
};

ModeMoments mode_moments(const PuoParams<double>& params, const FockVector<double>& normal_unpadded,
                         const FockVector<double>& ghost_unpadded)
{
    const FockVector<double> normal_state = fock::pad_for_quadratic(normal_unpadded);
    const FockVector<double> ghost_state = fock::pad_for_quadratic(ghost_unpadded);
    const int n_normal = static_cast<int>(normal_state.size()) - 1;
    const int n_ghost = static_cast<int>(ghost_state.size()) - 1;
    const auto big = fock::position_momentum<double>(1.0, params.big_freq, n_normal);
    const auto small = fock::position_momentum<double>(1.0, params.small_freq, n_ghost);

    const std::array<const OperatorMatrix<double>*, 2> normal_ops{&big.pos, &big.mom};
    const std::array<const OperatorMatrix<double>*, 2> ghost_ops{&small.pos, &small.mom};

    ModeMoments m;
    for (int i = 0; i < 2; ++i) {
        m.mean(i) = fock::expectation(normal_state, *normal_ops[i]).real();
        m.mean(2 + i) = fock::expectation(ghost_state, *ghost_ops[i]).real();
    }
    for (int i = 0; i < 2; ++i) {
        for (int k = 0; k < 2; ++k) {
            const OperatorMatrix<double> nn = (*normal_ops[i]) * (*normal_ops[k]);
            const OperatorMatrix<double> gg = (*ghost_ops[i]) * (*ghost_ops[k]);
            m.second(i, k) = fock::expectation(normal_state, nn);
            m.second(2 + i, 2 + k) = fock::expectation(ghost_state, gg);
            m.second(i, 2 + k) = m.mean(i) * m.mean(2 + k);
            m.second(2 + i, k) = m.mean(2 + i) * m.mean(k);
        }
    }
    return m;
}

/// <A B> for linear observables A = a.v, B = b.v.
double bilinear(const ModeMoments& m, const Row& a, const Row& b)
{
    return (a.cast<std::complex<double>>() * m.second * b.transpose().cast<std::complex<double>>())
        .value()
        .real();
}

}  // namespace

void validate(const PuoStateLabel& label)
{
    gcs::validate(GcsLabel<double>{label.J, label.Gamma0});
    gcs::validate(GcsLabel<double>{label.j, label.gamma0});
    if (!std::isfinite(label.t)) {
        throw std::invalid_argument("time must be finite");
    }
}

OscillatorSpec<double> normal_mode(const PuoParams<double>& params)
{
    return {1.0, params.big_freq, EnergySign::normal};
}

OscillatorSpec<double> ghost_mode(const PuoParams<double>& params)
{
    return {1.0, params.small_freq, EnergySign::ghost};
}

int auto_truncation(const PuoStateLabel& label)
{
    return gcs::truncation_for(std::max(label.J, label.j));
}

MomentReport closed_moments(const PuoParams<double>& params, const PuoStateLabel& label)
{
    modes::validate(params);
    validate(label);
    const double W = params.big_freq;
    const double w = params.small_freq;
    const double s2 = W * W - w * w;
    const double s = std::sqrt(s2);
    const double G = label.Gamma(params);
    const double g = label.gamma(params);
    const double J = label.J;
    const double j = label.j;

    MomentReport r;
    r.mean_z = (std::sqrt(2 * J / W) * std::sin(G) + std::sqrt(2 * j / w) * std::sin(g)) / s;
    r.mean_q = (std::sqrt(2 * w * j) * std::cos(g) + std::sqrt(2 * W * J) * std::cos(G)) / s;
    r.mean_zdot = r.mean_q;
    r.mean_pz =
        -(W * W * std::sqrt(2 * w * j) * std::cos(g) + w * w * std::sqrt(2 * W * J) * std::cos(G)) /
        s;
    const double zs = std::sqrt(j / w) * std::sin(g) + std::sqrt(J / W) * std::sin(G);
    r.mean_z_sq = (0.5 * (1 / w + 1 / W) + 2 * zs * zs) / s2;
    r.var_z = 1 / (2 * W * w * (W - w));
    const double ps = w * w * std::sqrt(W * J) * std::cos(G) + W * W * std::sqrt(w * j) * std::cos(g);
    r.mean_pz_sq = (0.5 * W * w * (w * w * w + W * W * W) + 2 * ps * ps) / s2;
    r.var_pz = W * w * (w * w + W * W - w * W) / (2 * (W - w));
    r.uncertainty_product = (w * w + W * W - w * W) / (4 * (W - w) * (W - w));
    r.energy = W * (1 + 2 * J) / 2 - w * (1 + 2 * j) / 2;
    r.constraint_residual = 0;
    return r;
}

NumericMoments numeric_moments_detailed(const PuoParams<double>& params, const PuoStateLabel& label,
                                        std::optional<int> truncation, InverseVariant variant)
{
    modes::validate(params);
    validate(label);
    const int needed = auto_truncation(label);
    const int n = truncation.value_or(needed);
    if (n < needed) {
        throw std::domain_error("truncation " + std::to_string(n) +
                                " is below the tail requirement " + std::to_string(needed));
    }

    const auto big = normal_mode(params);
    const auto small = ghost_mode(params);
    const auto normal_state = gcs::evolve_state(
        big, gcs::build_state(big, GcsLabel<double>{label.J, label.Gamma0}, n), label.t);
    const auto ghost_state = gcs::evolve_state(
        small, gcs::build_state(small, GcsLabel<double>{label.j, label.gamma0}, n), label.t);
    const ModeMoments m = mode_moments(params, normal_state, ghost_state);

    const Matrix4<double> inv = modes::inverse_jacobian(params, variant);
    const Row z_row = inv.row(0);
    const Row pz_row = inv.row(1);
    const Row q_row = inv.row(2);
    const Row pq_row = inv.row(3);
    const double W = params.big_freq;
    const double w = params.small_freq;
    const double s = params.gap();
    // zdot = (W X - p) / s, stated directly as an operator identity.
    const Row zdot_row(W / s, 0.0, 0.0, -1.0 / s);

    NumericMoments out;
    out.truncation = n;
    MomentReport& r = out.report;
    r.mean_z = z_row.dot(m.mean.transpose());
    r.mean_q = q_row.dot(m.mean.transpose());
    r.mean_pz = pz_row.dot(m.mean.transpose());
    r.mean_zdot = zdot_row.dot(m.mean.transpose());
    r.mean_z_sq = bilinear(m, z_row, z_row);
    r.mean_pz_sq = bilinear(m, pz_row, pz_row);
    r.var_z = r.mean_z_sq - r.mean_z * r.mean_z;
    r.var_pz = r.mean_pz_sq - r.mean_pz * r.mean_pz;
    r.uncertainty_product = r.var_z * r.var_pz;
    const double mode_energy = 0.5 * (m.second(1, 1).real() + W * W * m.second(0, 0).real()) -
                               0.5 * (m.second(3, 3).real() + w * w * m.second(2, 2).real());
    r.energy = mode_energy;
    r.constraint_residual = std::abs(r.mean_zdot - r.mean_q);

    out.energy_quadratic_form =
        0.5 * (bilinear(m, pq_row, pq_row) + 2 * bilinear(m, q_row, pz_row) +
               (W * W + w * w) * bilinear(m, q_row, q_row) - W * W * w * w * r.mean_z_sq);
    return out;
}

MomentReport numeric_moments(const PuoParams<double>& params, const PuoStateLabel& label,
                             std::optional<int> truncation, InverseVariant variant)
{
    return numeric_moments_detailed(params, label, truncation, variant).report;
}

double constraint_residual(const PuoParams<double>& params, const PuoStateLabel& label,
                           std::optional<int> truncation)
{
    return numeric_moments(params, label, truncation).constraint_residual;
}

MomentReport tensor_product_moments(const PuoParams<double>& params, const PuoStateLabel& label,
                                    int truncation)
{
    modes::validate(params);
    validate(label);
    const auto big = normal_mode(params);
    const auto small = ghost_mode(params);
    const auto normal_state = gcs::evolve_state(
        big, gcs::build_state(big, GcsLabel<double>{label.J, label.Gamma0}, truncation), label.t);
    const auto ghost_state = gcs::evolve_state(
        small, gcs::build_state(small, GcsLabel<double>{label.j, label.gamma0}, truncation),
        label.t);
    const FockVector<double> psi =
        fock::kron(fock::pad_for_quadratic(normal_state), fock::pad_for_quadratic(ghost_state));

    const int levels = truncation + 2;
    const auto bo = fock::position_momentum<double>(1.0, params.big_freq, levels);
    const auto so = fock::position_momentum<double>(1.0, params.small_freq, levels);
    const OperatorMatrix<double> id = OperatorMatrix<double>::Identity(levels + 1, levels + 1);
    const std::array<OperatorMatrix<double>, 4> v{fock::kron(bo.pos, id), fock::kron(bo.mom, id),
                                                  fock::kron(id, so.pos), fock::kron(id, so.mom)};

    const Matrix4<double> inv = modes::inverse_jacobian(params);
    auto combine = [&](const Row& row) {
        OperatorMatrix<double> op = OperatorMatrix<double>::Zero(psi.size(), psi.size());
        for (int i = 0; i < 4; ++i) {
            op += row(i) * v[static_cast<std::size_t>(i)];
        }
        return op;
    };
    const double W = params.big_freq;
    const double w = params.small_freq;
    const double s = params.gap();
    const OperatorMatrix<double> z = combine(inv.row(0));
    const OperatorMatrix<double> pz = combine(inv.row(1));
    const OperatorMatrix<double> q = combine(inv.row(2));
    const OperatorMatrix<double> zdot = combine(Row(W / s, 0.0, 0.0, -1.0 / s));
    const OperatorMatrix<double> h = 0.5 * (v[1] * v[1] + W * W * v[0] * v[0]) -
                                     0.5 * (v[3] * v[3] + w * w * v[2] * v[2]);

    auto ev = [&](const OperatorMatrix<double>& op) { return fock::expectation(psi, op).real(); };
    MomentReport r;
    r.mean_z = ev(z);
    r.mean_q = ev(q);
    r.mean_pz = ev(pz);
    r.mean_zdot = ev(zdot);
    r.mean_z_sq = ev(z * z);
    r.mean_pz_sq = ev(pz * pz);
    r.var_z = r.mean_z_sq - r.mean_z * r.mean_z;
    r.var_pz = r.mean_pz_sq - r.mean_pz * r.mean_pz;
    r.uncertainty_product = r.var_z * r.var_pz;
    r.energy = ev(h);
    r.constraint_residual = std::abs(r.mean_zdot - r.mean_q);
    return r;
}

AsymptoticProduct asymptotic_product(const PuoParams<double>& params)
{
    modes::validate(params);
    const double W = params.big_freq;
    const double w = params.small_freq;
    AsymptoticProduct a;
    a.exact = (w * w + W * W - w * W) / (4 * (W - w) * (W - w));
    a.leading = 0.25 * (1 + w / W);
    a.gap = std::abs(a.exact - a.leading);
    return a;
}

EnergyCheck energy_positivity(const PuoParams<double>& params, double J_equal_j)
{
    modes::validate(params);
    if (!(J_equal_j >= 0) || !std::isfinite(J_equal_j)) {
        throw std::invalid_argument("energy_positivity: J = j must be nonnegative");
    }
    const double e = (params.big_freq - params.small_freq) * (1 + 2 * J_equal_j) / 2;
    return {e, e > 0};
}

bool close(double a, double b, double rel, double abs)
{
    const double diff = std::abs(a - b);
    return diff <= abs || diff <= rel * std::max(std::abs(a), std::abs(b));
}

double worst_relative_deviation(const MomentReport& a, const MomentReport& b, double abs)
{
    double worst = 0;
    for (const auto& field : report_fields) {
        const double x = a.*field.member;
        const double y = b.*field.member;
        const double diff = std::abs(x - y);
        if (diff <= abs) {
            continue;
        }
        worst = std::max(worst, diff / std::max(std::abs(x), std::abs(y)));
    }
    return worst;
}

}  // namespace puocs::puo
