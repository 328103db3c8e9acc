#pragma once

#include <string>
#include <vector>

#include "ctmax/config.hpp"
#include "ctmax/counterexample.hpp"
#include "ctmax/io.hpp"
#include "ctmax/smoothing.hpp"

namespace ctmax {

/// Exit codes: 0 all checks passed, 2 a reported check failed. Hard errors throw.
inline constexpr int kChecksFailed = 2;

struct CommandResult {
    Table table;
    nlohmann::ordered_json summary;
    int exit_code = 0;
};

QuadratureOptions quadrature_options(const RunConfig& cfg);
InstancePolicy instance_policy(const RunConfig& cfg);
TrialThresholds trial_thresholds(const RunConfig& cfg);

/// "0", "t", "t^p" or "c*t^p".
PathSpec parse_path(const std::string& text);

/// Least-squares slope of log y against log x; NaN with fewer than two usable points.
double fitted_loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Sobolev indices of a sweep: scan.s_values, or the fractions of the critical exponent plus one above.
std::vector<double> scan_s_values(const RunConfig& cfg, double a, double gamma);

/// Columns of a sharpness sweep row.
const std::vector<std::string>& record_columns();
std::vector<Cell> record_row(const ExperimentRecord& r);

CommandResult cmd_exponent(const RunConfig& cfg);
CommandResult cmd_phase_diagram(const RunConfig& cfg);
CommandResult cmd_sharpness_scan(const RunConfig& cfg);
CommandResult cmd_convergence(const RunConfig& cfg);
CommandResult cmd_kernel_probe(const RunConfig& cfg);
CommandResult cmd_domination(const RunConfig& cfg);

/// Dispatch by subcommand name; throws ConfigError for an unknown name.
CommandResult run_command(const std::string& name, const RunConfig& cfg);

/// Serialized output: CSV text, or JSON {"summary", "rows"} with a trailing newline.
std::string render(const CommandResult& result, const std::string& format);
std::string render_summary(const CommandResult& result);

}  // namespace ctmax
