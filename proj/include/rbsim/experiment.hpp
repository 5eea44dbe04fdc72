#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rbsim/fitting.hpp"
#include "rbsim/rb.hpp"

namespace rbsim {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A requested computation exceeds the feasible problem size (dense
/// superoperator cap or group enumeration cap).
struct InfeasibleSizeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One benchmarking experiment: group, noise family, protocol variant,
/// sequence-length sweep and repetition count. Field names follow the
/// config-file keys (flat key=value or JSON).
struct ExperimentSpec {
    std::string group_type = "mu";  // "mu" | "clifford"
    int d = 2;
    int n = 8;
    int qubits = 1;

    // "identity" | "depolarize" | "random_isometry" | "unitary_x" |
    // "unitary_mixture" | "delta_covariant"
    std::string noise_type = "depolarize";
    double p = 0.9;
    double delta = 0.1;
    double a = 0.1;

    std::string protocol = "standard";  // "standard" | "approx" | "generator"
    std::vector<int> m_values;
    int sequences = 100;  // M
    int burn_in = 10;     // b, generator protocol
    long walk_length = 20;
    int repetitions = 1;  // R
    std::uint64_t master_seed = 1;
    int fit_order = 0;  // 0 = derived from the group profile
    std::vector<double> p_values;  // comparison sweeps

    std::string output_csv;
    std::string output_json;
    int threads = 1;
};

/// Parses a flat key=value document ('#' comments allowed) or, when the
/// content starts with '{', the same keys as a JSON object. Unknown keys
/// raise ConfigError with the offending line.
ExperimentSpec parse_config(std::istream& in);
ExperimentSpec parse_config_file(const std::string& path);
void apply_config_line(ExperimentSpec& spec, const std::string& key, const std::string& value,
                       int line_number = 0);

struct RepetitionResult {
    double true_favg = 0.0;
    double est_favg_min = 0.0;
    double est_favg_max = 0.0;
    double est_fe_min = 0.0;
    double est_fe_max = 0.0;
    double error = 0.0;  // |true - midpoint|
    DecayFit fit;
    RBRun run;
};

struct ResultRecord {
    std::vector<RepetitionResult> repetitions;
    double mean_error = 0.0;
    double median_error = 0.0;
    double std_deviation = 0.0;
};

void aggregate(ResultRecord& record);

/// Draws a fresh noise instance per repetition, runs the selected protocol,
/// fits, scores against the analytically known fidelity, and writes the
/// per-point CSV / summary JSON when paths are set.
ResultRecord run_experiment(const ExperimentSpec& spec);

/// Desk-scale reproduction of the study sweeps t1..t5. Overrides are
/// config key=value pairs applied on top of the table defaults. Prints a
/// formatted table to `out`.
ResultRecord reproduce_table(const std::string& name,
                             const std::vector<std::string>& overrides, std::ostream& out);

/// Runs the three protocol variants over the spec's p sweep and writes one
/// CSV row per (p, mode): p, mode, mean_error, median_error, std_error, R.
void emit_comparison(const ExperimentSpec& spec, std::ostream& csv_out);

void write_run_csv(const ResultRecord& record, std::ostream& out);
void write_summary_json(const ResultRecord& record, std::ostream& out);

/// Parses "1,2,5-8" style integer lists.
std::vector<int> parse_int_list(const std::string& text);

}  // namespace rbsim
