#ifndef PUOCS_CLI_HPP
#define PUOCS_CLI_HPP

#include <ostream>
#include <optional>
#include <string>

#include "puocs/modes.hpp"
#include "puocs/table.hpp"
#include "puocs/validate.hpp"

namespace puocs::cli {

enum ExitStatus : int { success = 0, validation_failure = 1, usage_error = 2 };

struct RunConfig {
    double big_freq{2};
    double small_freq{1};
    double J{0};
    double j{0};
    double Gamma0{0};
    double gamma0{0};
    double t{0};
    double t0{0};
    double t1{10};
    double dt{0.01};
    std::optional<int> truncation;  // nullopt = auto
    OutputFormat format{OutputFormat::csv};
    int precision{12};
    validate::Grid grid{validate::Grid::full};
};

struct ScanConfig {
    std::string param{"ratio"};
    double from{1.5};
    double to{1000};
    int steps{20};
    bool log_spacing{true};
};

/// Build-time hooks; the test-only injected binary swaps the inverse map.
struct Hooks {
    InverseVariant inverse{InverseVariant::corrected};
};

int cmd_report(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_evolve(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_scan(const RunConfig& config, const ScanConfig& scan, std::ostream& out, std::ostream& err);
int cmd_validate(const RunConfig& config, const Hooks& hooks, std::ostream& out, std::ostream& err);

/// Full command line: `puocs <report|evolve|scan|validate> [flags]`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
        const Hooks& hooks = {});

}  // namespace puocs::cli

#endif  // PUOCS_CLI_HPP
