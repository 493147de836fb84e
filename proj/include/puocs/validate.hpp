#ifndef PUOCS_VALIDATE_HPP
#define PUOCS_VALIDATE_HPP

// Invariant suites for every module, run by `puocs validate`.

#include <string>
#include <vector>

#include "puocs/modes.hpp"

namespace puocs::validate {

enum class Grid { small, full };

struct Options {
    Grid grid{Grid::full};
    /// Inverse map used by the modes and puo suites; `printed` is the
    /// deliberate-bug configuration and must make validation fail.
    InverseVariant inverse{InverseVariant::corrected};
};

struct CheckResult {
    std::string suite;
    std::string invariant;
    long checks{0};
    long failures{0};
    double worst{0};
    double tolerance{0};

    bool passed() const { return failures == 0; }
};

std::vector<CheckResult> fock_suite(const Options& options);
std::vector<CheckResult> gcs_suite(const Options& options);
std::vector<CheckResult> modes_suite(const Options& options);
std::vector<CheckResult> puo_suite(const Options& options);
std::vector<CheckResult> classical_suite(const Options& options);

/// All suites in the order fock, gcs, modes, puo, classical.
std::vector<CheckResult> run_all(const Options& options);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace puocs::validate

#endif  // PUOCS_VALIDATE_HPP
