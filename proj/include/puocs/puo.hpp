#ifndef PUOCS_PUO_HPP
#define PUOCS_PUO_HPP

// Coherent states of the fourth-order oscillator, built as the product of
// a normal coherent state (frequency Omega, labels J, Gamma) and a ghost
// coherent state (frequency omega, labels j, gamma). All masses are 1.

#include <array>
#include <optional>
#include <string_view>

#include "puocs/gcs.hpp"
#include "puocs/modes.hpp"

namespace puocs {

struct PuoStateLabel {
    double J{0};
    double Gamma0{0};
    double j{0};
    double gamma0{0};
    double t{0};

    double Gamma(const PuoParams<double>& params) const { return Gamma0 + params.big_freq * t; }
    double gamma(const PuoParams<double>& params) const { return gamma0 + params.small_freq * t; }
};

struct MomentReport {
    double mean_z{};
    double mean_q{};
    double mean_pz{};
    double mean_zdot{};
    double mean_z_sq{};
    double mean_pz_sq{};
    double var_z{};
    double var_pz{};
    double uncertainty_product{};
    double energy{};
    double constraint_residual{};
};

struct ReportField {
    std::string_view name;
    double MomentReport::*member;
};

/// Canonical field order for every tabular output.
inline constexpr std::array<ReportField, 11> report_fields{{
    {"mean_z", &MomentReport::mean_z},
    {"mean_q", &MomentReport::mean_q},
    {"mean_pz", &MomentReport::mean_pz},
    {"mean_zdot", &MomentReport::mean_zdot},
    {"mean_z_sq", &MomentReport::mean_z_sq},
    {"mean_pz_sq", &MomentReport::mean_pz_sq},
    {"var_z", &MomentReport::var_z},
    {"var_pz", &MomentReport::var_pz},
    {"uncertainty_product", &MomentReport::uncertainty_product},
    {"energy", &MomentReport::energy},
    {"constraint_residual", &MomentReport::constraint_residual},
}};

namespace puo {

inline constexpr double relative_tolerance = 1e-8;
inline constexpr double absolute_tolerance = 1e-10;

void validate(const PuoStateLabel& label);

OscillatorSpec<double> normal_mode(const PuoParams<double>& params);
OscillatorSpec<double> ghost_mode(const PuoParams<double>& params);

/// Truncation chosen by the 1e-12 Poisson tail rule on max(J, j).
int auto_truncation(const PuoStateLabel& label);

MomentReport closed_moments(const PuoParams<double>& params, const PuoStateLabel& label);

struct NumericMoments {
    MomentReport report;
    int truncation{};
    /// <H> evaluated as the quadratic form in (z, p_z, q, p_q) moments.
    double energy_quadratic_form{};
};

/// Fock-space oracle. Builds both single-mode states at the t = 0 labels,
/// evolves them with their own spectra to label.t, and maps mode moments
/// through the inverse canonical map. Throws std::domain_error if an
/// explicit truncation is below the tail requirement.
NumericMoments numeric_moments_detailed(const PuoParams<double>& params, const PuoStateLabel& label,
                                        std::optional<int> truncation = std::nullopt,
                                        InverseVariant variant = InverseVariant::corrected);

MomentReport numeric_moments(const PuoParams<double>& params, const PuoStateLabel& label,
                             std::optional<int> truncation = std::nullopt,
                             InverseVariant variant = InverseVariant::corrected);

/// |<zdot> - <q>| from numeric single-mode moments.
double constraint_residual(const PuoParams<double>& params, const PuoStateLabel& label,
                           std::optional<int> truncation = std::nullopt);

/// Moments from the full two-mode tensor-product operators; used to check
/// the factorized path in numeric_moments. Cost grows as N^4.
MomentReport tensor_product_moments(const PuoParams<double>& params, const PuoStateLabel& label,
                                    int truncation);

struct AsymptoticProduct {
    double exact{};
    double leading{};
    double gap{};
};

AsymptoticProduct asymptotic_product(const PuoParams<double>& params);

struct EnergyCheck {
    double energy{};
    bool positive{};
};

/// Energy at J = j.
EnergyCheck energy_positivity(const PuoParams<double>& params, double J_equal_j);

/// Field-by-field comparison at relative / absolute tolerance.
bool close(double a, double b, double rel = relative_tolerance, double abs = absolute_tolerance);

/// Largest field deviation, scaled as |a-b| / max(|a|,|b|) when above the
/// absolute floor and 0 otherwise.
double worst_relative_deviation(const MomentReport& a, const MomentReport& b,
                                double abs = absolute_tolerance);

}  // namespace puo
}  // namespace puocs

#endif  // PUOCS_PUO_HPP
