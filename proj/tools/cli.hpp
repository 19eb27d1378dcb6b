// cli.hpp: run configuration, argument/config parsing and subcommand dispatch

#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace hyperent::cli {

enum class Command { Evolve, Tau, Sweep, OracleCheck, Couplings, Plot };
std::string to_string(Command command);

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int usage = 2;
inline constexpr int runtime = 3;
inline constexpr int partial = 4;
}  // namespace exit_code

/// Invalid flags, config keys or parameter values. Maps to exit code 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Flat record of every setting; unit suffixes follow the config key names.
struct RunConfig {
    Command command{Command::Evolve};

    int n{1};
    double f{0.5};
    double alpha{1.0};
    double phase_rad{0.0};
    double bfield_T{0.0};
    double a_coupling_ueV{83.0};
    double g_factor{-0.44};

    double t_end_ns{0.0};  // 0: command default
    int points{0};         // 0: command default

    std::string method{"first-return"};
    double epsilon{1e-9};
    int max_doublings{6};

    std::string axis{"F"};
    std::vector<double> values;  // empty: defaults for the axis
    std::string fit{"linear"};
    std::string fit_target{"tau"};

    double l_perp_nm{20.0};
    double l_z_nm{2.0};
    std::string materials;

    std::string input;
    std::string output;
    std::string json;
    std::string svg;

    int jobs{0};  // 0: all available processors

    bool operator==(const RunConfig&) const = default;
};

/// Parses `hyperent <command> [flags]`, applying --config and validating.
/// Throws UsageError; `help` receives the help text when --help is given.
RunConfig parse_command_line(const std::vector<std::string>& args, std::string* help = nullptr);

/// INI text: top-level `jobs`, then one section for the config's command.
std::string to_config_text(const RunConfig& config);

/// Checks every numeric field against the owning module's preconditions.
void validate(const RunConfig& config);

/// Default sweep values for an axis.
std::vector<double> default_sweep_values(const std::string& axis);

/// Runs a validated config. Returns an exit code; results go to files or `out`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full entry point used by main(): parse, validate, run, map errors to exit codes.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hyperent::cli
