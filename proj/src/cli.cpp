#include "puocs/cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "puocs/classical.hpp"
#include "puocs/puo.hpp"

namespace puocs::cli {

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

PuoParams<double> params_of(const RunConfig& c)
{
    try {
        return modes::make_params(c.big_freq, c.small_freq);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

PuoStateLabel label_of(const RunConfig& c, double t)
{
    PuoStateLabel label{c.J, c.Gamma0, c.j, c.gamma0, t};
    try {
        puo::validate(label);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return label;
}

std::optional<int> parse_truncation(const std::string& text)
{
    if (text == "auto") {
        return std::nullopt;
    }
    std::size_t used = 0;
    int value = 0;
    try {
        value = std::stoi(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || value <= 0) {
        throw UsageError("--truncation must be 'auto' or a positive integer");
    }
    return value;
}

OutputFormat parse_format(const std::string& text)
{
    if (text == "csv") {
        return OutputFormat::csv;
    }
    if (text == "json") {
        return OutputFormat::json;
    }
    throw UsageError("--format must be csv or json");
}

validate::Grid parse_grid(const std::string& text)
{
    if (text == "small") {
        return validate::Grid::small;
    }
    if (text == "full") {
        return validate::Grid::full;
    }
    throw UsageError("--grid must be small or full");
}

void check_common(const RunConfig& c)
{
    params_of(c);
    if (c.precision < 6 || c.precision > 17) {
        throw UsageError("--precision must lie in [6, 17]");
    }
}

std::vector<std::string> report_columns()
{
    std::vector<std::string> cols{"row"};
    for (const auto& f : report_fields) {
        cols.emplace_back(f.name);
    }
    return cols;
}

std::vector<Cell> report_row(const std::string& name, const MomentReport& r)
{
    std::vector<Cell> row{name};
    for (const auto& f : report_fields) {
        row.emplace_back(r.*f.member);
    }
    return row;
}

/// Runs fn and maps exceptions to exit codes.
int guarded(std::ostream& err, const std::function<int()>& fn)
{
    try {
        return fn();
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return validation_failure;
    }
}

}  // namespace

int cmd_report(const RunConfig& config, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        check_common(config);
        const auto params = params_of(config);
        const auto label = label_of(config, config.t);
        const MomentReport closed = puo::closed_moments(params, label);
        const MomentReport numeric = puo::numeric_moments(params, label, config.truncation);

        MomentReport abs_dev;
        MomentReport rel_dev;
        for (const auto& f : report_fields) {
            const double a = closed.*f.member;
            const double b = numeric.*f.member;
            const double d = std::abs(a - b);
            const double scale = std::max(std::abs(a), std::abs(b));
            abs_dev.*f.member = d;
            rel_dev.*f.member = scale > 0 ? d / scale : 0.0;
        }

        Table table(report_columns());
        table.add_row(report_row("closed", closed));
        table.add_row(report_row("numeric", numeric));
        table.add_row(report_row("abs_deviation", abs_dev));
        table.add_row(report_row("rel_deviation", rel_dev));
        table.write(out, config.format, config.precision);
        return static_cast<int>(success);
    });
}

int cmd_evolve(const RunConfig& config, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        check_common(config);
        const auto params = params_of(config);
        if (!(config.dt > 0) || !std::isfinite(config.dt)) {
            throw UsageError("--dt must be positive");
        }
        if (!(config.t1 > config.t0) || !std::isfinite(config.t0) || !std::isfinite(config.t1)) {
            throw UsageError("--t1 must exceed --t0");
        }
        const auto rows =
            static_cast<std::size_t>(std::floor((config.t1 - config.t0) / config.dt + 1e-9)) + 1;
        const PuoStateLabel start = label_of(config, config.t0);

        // Classical trajectory from t0, at a substep fine enough for RK4.
        const auto sub = static_cast<std::size_t>(
            std::max({1.0, std::ceil(config.dt / 1e-3 - 1e-9),
                      std::ceil(config.dt * params.big_freq / 0.1 - 1e-9)}));
        TwoModeSolution sol = classical::solution_for(params, label_of(config, 0));
        sol.phase_big += params.big_freq * config.t0;
        sol.phase_small += params.small_freq * config.t0;
        std::vector<double> z_classical{classical::initial_conditions(params, sol).z0};
        if (rows > 1) {
            const auto traj =
                classical::integrate(params, classical::initial_conditions(params, sol),
                                     static_cast<double>(rows - 1) * config.dt,
                                     config.dt / static_cast<double>(sub));
            z_classical.clear();
            for (std::size_t k = 0; k < rows; ++k) {
                z_classical.push_back(traj.z.at(k * sub));
            }
        }

        Table table({"t", "mean_z_closed", "mean_z_numeric", "z_classical", "var_z", "var_pz",
                     "uncertainty_product", "constraint_residual"});
        for (std::size_t k = 0; k < rows; ++k) {
            PuoStateLabel label = start;
            label.t = config.t0 + static_cast<double>(k) * config.dt;
            const auto closed = puo::closed_moments(params, label);
            const auto numeric = puo::numeric_moments(params, label, config.truncation);
            table.add_row({label.t, closed.mean_z, numeric.mean_z, z_classical[k], numeric.var_z,
                           numeric.var_pz, numeric.uncertainty_product,
                           numeric.constraint_residual});
        }
        table.write(out, config.format, config.precision);
        return static_cast<int>(success);
    });
}

int cmd_scan(const RunConfig& config, const ScanConfig& scan, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        if (config.precision < 6 || config.precision > 17) {
            throw UsageError("--precision must lie in [6, 17]");
        }
        if (scan.param != "ratio") {
            throw UsageError("--param must be ratio");
        }
        if (!(scan.from > 1) || !(scan.to > 1) || !std::isfinite(scan.from) ||
            !std::isfinite(scan.to)) {
            throw UsageError("scan range must satisfy ratio > 1");
        }
        if (scan.steps < 2) {
            throw UsageError("--steps must be at least 2");
        }
        Table table({"ratio", "exact", "leading", "gap"});
        for (int k = 0; k < scan.steps; ++k) {
            const double f = static_cast<double>(k) / (scan.steps - 1);
            const double ratio =
                scan.log_spacing ? std::exp(std::log(scan.from) + f * (std::log(scan.to) - std::log(scan.from)))
                                 : scan.from + f * (scan.to - scan.from);
            const auto a = puo::asymptotic_product(PuoParams<double>{ratio, 1.0});
            table.add_row({ratio, a.exact, a.leading, a.gap});
        }
        table.write(out, config.format, config.precision);
        return static_cast<int>(success);
    });
}

int cmd_validate(const RunConfig& config, const Hooks& hooks, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        if (config.precision < 6 || config.precision > 17) {
            throw UsageError("--precision must lie in [6, 17]");
        }
        const validate::Options options{config.grid, hooks.inverse};
        const auto results = validate::run_all(options);

        Table table({"suite", "invariant", "checks", "failures", "worst_residual", "tolerance",
                     "status"});
        std::map<std::string, validate::CheckResult> per_suite;
        std::vector<std::string> suite_order;
        for (const auto& r : results) {
            table.add_row({r.suite, r.invariant, r.checks, r.failures, r.worst, r.tolerance,
                           std::string(r.passed() ? "pass" : "FAIL")});
            auto [it, inserted] = per_suite.try_emplace(r.suite, validate::CheckResult{r.suite, "*"});
            if (inserted) {
                suite_order.push_back(r.suite);
            }
            it->second.checks += r.checks;
            it->second.failures += r.failures;
            it->second.worst = std::max(it->second.worst, r.worst);
        }
        for (const auto& name : suite_order) {
            const auto& s = per_suite.at(name);
            table.add_row({s.suite, s.invariant, s.checks, s.failures, s.worst, 0.0,
                           std::string(s.passed() ? "pass" : "FAIL")});
        }
        table.write(out, config.format, config.precision);

        if (!validate::all_passed(results)) {
            for (const auto& r : results) {
                if (!r.passed()) {
                    err << "validate: FAILED " << r.suite << '/' << r.invariant << " ("
                        << r.failures << " of " << r.checks << " checks)\n";
                }
            }
            return static_cast<int>(validation_failure);
        }
        return static_cast<int>(success);
    });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err, const Hooks& hooks)
{
    CLI::App app{"Coherent states of the Pais-Uhlenbeck oscillator: closed forms and oracles",
                 "puocs"};
    app.require_subcommand(1);

    RunConfig flags;
    std::string truncation_text = "auto";
    std::string format_text = "csv";
    std::string grid_text = "full";
    std::string config_path;
    ScanConfig scan;
    std::string spacing_text = "log";

    struct Bound {
        CLI::Option* option;
        std::string key;
        std::function<void(RunConfig&, const nlohmann::json&)> from_json;
        std::function<void(RunConfig&)> from_flag;
    };
    std::vector<Bound> bound;

    auto add_common = [&](CLI::App* sub) {
        auto num = [&](const std::string& names, const std::string& key, double RunConfig::*field,
                       const std::string& help) {
            auto* opt = sub->add_option(names, flags.*field, help);
            bound.push_back({opt, key,
                             [field](RunConfig& c, const nlohmann::json& v) { c.*field = v.get<double>(); },
                             [field, &flags](RunConfig& c) { c.*field = flags.*field; }});
        };
        num("--Omega,--big-freq", "Omega", &RunConfig::big_freq, "larger frequency");
        num("--omega,--small-freq", "omega", &RunConfig::small_freq, "smaller frequency");
        num("--J", "J", &RunConfig::J, "normal-mode strength J");
        num("--j", "j", &RunConfig::j, "ghost-mode strength j");
        num("--Gamma0", "Gamma0", &RunConfig::Gamma0, "normal-mode phase at t = 0");
        num("--gamma0", "gamma0", &RunConfig::gamma0, "ghost-mode phase at t = 0");
        num("--t", "t", &RunConfig::t, "time");
        num("--t0", "t0", &RunConfig::t0, "sweep start");
        num("--t1", "t1", &RunConfig::t1, "sweep end");
        num("--dt", "dt", &RunConfig::dt, "sweep step");

        auto* trunc = sub->add_option("--truncation", truncation_text, "auto or a positive integer");
        bound.push_back({trunc, "truncation",
                         [](RunConfig& c, const nlohmann::json& v) {
                             c.truncation = parse_truncation(v.is_string() ? v.get<std::string>()
                                                                           : std::to_string(v.get<int>()));
                         },
                         [&](RunConfig& c) { c.truncation = parse_truncation(truncation_text); }});
        auto* fmt = sub->add_option("--format", format_text, "csv or json");
        bound.push_back({fmt, "format",
                         [](RunConfig& c, const nlohmann::json& v) { c.format = parse_format(v.get<std::string>()); },
                         [&](RunConfig& c) { c.format = parse_format(format_text); }});
        auto* prec = sub->add_option("--precision", flags.precision, "significant digits, 6..17");
        bound.push_back({prec, "precision",
                         [](RunConfig& c, const nlohmann::json& v) { c.precision = v.get<int>(); },
                         [&](RunConfig& c) { c.precision = flags.precision; }});
        auto* grid = sub->add_option("--grid", grid_text, "small or full");
        bound.push_back({grid, "grid",
                         [](RunConfig& c, const nlohmann::json& v) { c.grid = parse_grid(v.get<std::string>()); },
                         [&](RunConfig& c) { c.grid = parse_grid(grid_text); }});
        sub->add_option("--config", config_path, "json file of flag values; flags take precedence");
    };

    auto* report = app.add_subcommand("report", "closed-form and Fock-space moments at one time");
    auto* evolve = app.add_subcommand("evolve", "time series of moments and the classical trajectory");
    auto* scan_cmd = app.add_subcommand("scan", "uncertainty product against frequency ratio");
    auto* validate_cmd = app.add_subcommand("validate", "run every invariant suite");
    for (auto* sub : {report, evolve, scan_cmd, validate_cmd}) {
        add_common(sub);
    }
    scan_cmd->add_option("--param", scan.param, "scanned parameter (ratio)");
    scan_cmd->add_option("--from", scan.from, "first ratio");
    scan_cmd->add_option("--to", scan.to, "last ratio");
    scan_cmd->add_option("--steps", scan.steps, "number of rows");
    scan_cmd->add_option("--spacing", spacing_text, "linear or log");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? static_cast<int>(success) : static_cast<int>(usage_error);
    }

    RunConfig config;
    try {
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) {
                throw UsageError("cannot open config file " + config_path);
            }
            nlohmann::json doc;
            try {
                doc = nlohmann::json::parse(in);
            } catch (const nlohmann::json::exception& e) {
                throw UsageError(std::string("config file: ") + e.what());
            }
            if (!doc.is_object()) {
                throw UsageError("config file must hold a json object");
            }
            std::map<std::string, const Bound*> by_key;
            for (const auto& b : bound) {
                by_key.emplace(b.key, &b);
            }
            for (const auto& [key, value] : doc.items()) {
                const auto it = by_key.find(key);
                if (it == by_key.end()) {
                    throw UsageError("config file: unknown key '" + key + "'");
                }
                try {
                    it->second->from_json(config, value);
                } catch (const nlohmann::json::exception&) {
                    throw UsageError("config file: bad value for '" + key + "'");
                }
            }
        }
        for (const auto& b : bound) {
            if (b.option->count() > 0) {
                b.from_flag(config);
            }
        }
        if (spacing_text != "log" && spacing_text != "linear") {
            throw UsageError("--spacing must be linear or log");
        }
        scan.log_spacing = spacing_text == "log";
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    }

    if (report->parsed()) {
        return cmd_report(config, out, err);
    }
    if (evolve->parsed()) {
        return cmd_evolve(config, out, err);
    }
    if (scan_cmd->parsed()) {
        return cmd_scan(config, scan, out, err);
    }
    return cmd_validate(config, hooks, out, err);
}

}  // namespace puocs::cli
