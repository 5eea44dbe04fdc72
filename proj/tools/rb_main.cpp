#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "rbsim/experiment.hpp"
#include "rbsim/fitting.hpp"
#include "rbsim/group.hpp"
#include "rbsim/rb.hpp"
#include "rbsim/walks.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitDegenerateFit = 4;

int run_command(const std::string& config_path) {
    rbsim::ExperimentSpec spec = rbsim::parse_config_file(config_path);
    rbsim::ResultRecord record = rbsim::run_experiment(spec);
    std::cout << "repetitions: " << record.repetitions.size() << '\n';
    std::cout << "mean_error:   " << record.mean_error << '\n';
    std::cout << "median_error: " << record.median_error << '\n';
    std::cout << "std_error:    " << record.std_deviation << '\n';
    if (!spec.output_csv.empty()) std::cout << "csv:  " << spec.output_csv << '\n';
    if (!spec.output_json.empty()) std::cout << "json: " << spec.output_json << '\n';
    return kExitOk;
}

int reproduce_command(const std::string& table, const std::vector<std::string>& overrides) {
    rbsim::reproduce_table(table, overrides, std::cout);
    return kExitOk;
}

int compare_command(const std::string& config_path) {
    rbsim::ExperimentSpec spec = rbsim::parse_config_file(config_path);
    if (!spec.output_csv.empty()) {
        std::ofstream out(spec.output_csv);
        if (!out) throw rbsim::ConfigError("cannot write CSV to '" + spec.output_csv + "'");
        rbsim::emit_comparison(spec, out);
        std::cout << "csv: " << spec.output_csv << '\n';
    } else {
        rbsim::emit_comparison(spec, std::cout);
    }
    return kExitOk;
}

// group spec forms: "mu:d=4,n=8" or "clifford:qubits=1".
int mixing_time_command(const std::string& group_spec, double eps) {
    const auto colon = group_spec.find(':');
    const std::string kind = group_spec.substr(0, colon);
    std::map<std::string, int> args;
    if (colon != std::string::npos) {
        std::stringstream ss(group_spec.substr(colon + 1));
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto eq = item.find('=');
            if (eq == std::string::npos)
                throw rbsim::ConfigError("bad group spec fragment '" + item + "'");
            args[item.substr(0, eq)] = std::stoi(item.substr(eq + 1));
        }
    }
    Eigen::MatrixXd pi;
    std::size_t size = 0;
    if (kind == "mu") {
        const int d = args.count("d") ? args["d"] : 2;
        const int n = args.count("n") ? args["n"] : 8;
        auto gens = rbsim::mu_generator_set(d, n);
        auto group = rbsim::bfs_enumerate<rbsim::MonomialOps>(gens, 100000);
        size = group.size();
        pi = rbsim::transition_matrix<rbsim::MonomialOps>(gens, group);
    } else if (kind == "clifford") {
        const int qubits = args.count("qubits") ? args["qubits"] : 1;
        auto gens = rbsim::clifford_generator_set(qubits);
        auto group = rbsim::bfs_enumerate<rbsim::CliffordOps>(gens, 100000);
        size = group.size();
        pi = rbsim::transition_matrix<rbsim::CliffordOps>(gens, group);
    } else {
        throw rbsim::ConfigError("group spec must start with 'mu' or 'clifford'");
    }
    const long t_eps = rbsim::mixing_time(pi, eps);
    const long t_mix = rbsim::mixing_time(pi, 0.25);
    std::cout << "group size:      " << size << '\n';
    std::cout << "t(" << eps << "):        " << t_eps << '\n';
    std::cout << "t_mix = t(1/4):  " << t_mix << '\n';
    return kExitOk;
}

int fit_command(const std::string& csv_path, int order, bool strict) {
    std::ifstream in(csv_path);
    if (!in) throw rbsim::ConfigError("cannot open CSV file '" + csv_path + "'");
    std::string line;
    if (!std::getline(in, line)) throw rbsim::ConfigError("empty CSV file");
    // Accept the run CSV layout (m,mean_fidelity,std_err,...) or a bare
    // m,mean[,std_err] file; skip a non-numeric header row.
    std::map<int, rbsim::DecaySample> by_m;
    auto ingest = [&](const std::string& row) {
        std::stringstream ss(row);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() < 2) throw rbsim::ConfigError("CSV row needs >= 2 columns: " + row);
        rbsim::DecaySample s;
        s.m = std::stoi(cells[0]);
        s.mean = std::stod(cells[1]);
        s.std_err = cells.size() > 2 ? std::stod(cells[2]) : 0.0;
        if (by_m.count(s.m))
            throw rbsim::ConfigError("duplicate sequence length m=" + std::to_string(s.m) +
                                     "; fit one repetition at a time");
        by_m[s.m] = s;
    };
    try {
        ingest(line);
    } catch (const std::invalid_argument&) {
        // header row
    }
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        ingest(line);
    }
    std::vector<rbsim::DecaySample> samples;
    for (auto& [m, s] : by_m) samples.push_back(s);
    rbsim::DecayFit fit = order == 2 ? rbsim::fit_double_decay(samples)
                                     : rbsim::fit_single_decay(samples);
    std::cout << "order:        " << fit.order << '\n';
    std::cout << "a0:           " << fit.a0 << '\n';
    for (const auto& term : fit.terms)
        std::cout << "term:         a=" << term.a << "  lambda=" << term.lambda << '\n';
    std::cout << "residual_rms: " << fit.residual_rms << '\n';
    if (fit.collapsed) std::cout << "note: rates collapsed; reporting a single decay\n";
    if (fit.unidentifiable) std::cout << "note: constant data; decay rate unidentifiable\n";
    if (strict && (fit.collapsed || fit.unidentifiable)) return kExitDegenerateFit;
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Randomized benchmarking simulator for finite matrix groups"};
    app.require_subcommand(1);

    std::string config_path;
    auto* run = app.add_subcommand("run", "Run an experiment from a config file");
    run->add_option("config", config_path, "key=value or JSON config file")->required();

    std::string table;
    std::vector<std::string> overrides;
    auto* reproduce = app.add_subcommand("reproduce", "Reproduce a study table (t1..t5)");
    reproduce->add_option("table", table, "table name: t1, t2, t3, t4 or t5")->required();
    reproduce->add_option("--scale", overrides,
                          "config overrides, e.g. --scale M=50 --scale repetitions=5");

    std::string compare_path;
    auto* compare = app.add_subcommand("compare", "Compare protocols over a p sweep");
    compare->add_option("config", compare_path, "key=value or JSON config file")->required();

    std::string group_spec;
    double eps = 0.25;
    auto* mixing = app.add_subcommand("mixing-time", "Walk mixing time for a group");
    mixing->add_option("group", group_spec, "e.g. mu:d=2,n=4 or clifford:qubits=1")->required();
    mixing->add_option("--eps", eps, "target total-variation distance")->check(CLI::Range(1e-12, 0.999999));

    std::string csv_path;
    int order = 1;
    bool strict = false;
    auto* fit = app.add_subcommand("fit", "Fit decay curves from a CSV file");
    fit->add_option("csv", csv_path, "CSV with columns m,mean[,std_err]")->required();
    fit->add_option("--order", order, "number of decay terms (1 or 2)")->check(CLI::Range(1, 2));
    fit->add_flag("--strict", strict, "exit 4 when the fit is degenerate");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*run) return run_command(config_path);
        if (*reproduce) return reproduce_command(table, overrides);
        if (*compare) return compare_command(compare_path);
        if (*mixing) return mixing_time_command(group_spec, eps);
        if (*fit) return fit_command(csv_path, order, strict);
    } catch (const rbsim::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const rbsim::GroupTooLargeError& e) {
        std::cerr << "infeasible size: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const rbsim::InfeasibleSizeError& e) {
        std::cerr << "infeasible size: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    return kExitOk;
}
