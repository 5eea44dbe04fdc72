#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "rbsim/experiment.hpp"
#include "rbsim/fitting.hpp"
#include "rbsim/group.hpp"
#include "rbsim/rb.hpp"
#include "rbsim/twirl.hpp"
#include "rbsim/walks.hpp"

namespace py = pybind11;
using namespace rbsim;

namespace {

std::vector<Mat> mu_unitaries(int d, int n, std::size_t cap) {
    auto gens = mu_generator_set(d, n);
    auto group = bfs_enumerate<MonomialOps>(gens, cap);
    std::vector<Mat> out;
    out.reserve(group.size());
    for (const auto& g : group) out.push_back(mu_to_unitary(g));
    return out;
}

std::vector<Mat> clifford_unitaries(int qubits, std::size_t cap) {
    auto gens = clifford_generator_set(qubits);
    auto group = bfs_enumerate<CliffordOps>(gens, cap);
    std::vector<Mat> out;
    out.reserve(group.size());
    for (const auto& g : group) out.push_back(g.matrix);
    return out;
}

Eigen::MatrixXd mu_transition(int d, int n, std::size_t cap) {
    auto gens = mu_generator_set(d, n);
    auto group = bfs_enumerate<MonomialOps>(gens, cap);
    return transition_matrix<MonomialOps>(gens, group);
}

Eigen::MatrixXd clifford_transition(int qubits, std::size_t cap) {
    auto gens = clifford_generator_set(qubits);
    auto group = bfs_enumerate<CliffordOps>(gens, cap);
    return transition_matrix<CliffordOps>(gens, group);
}

NoiseModel model_from_kwargs(const std::string& type, double p, double delta, double a, int d,
                             Rng& rng) {
    (void)delta;
    (void)a;
    if (type == "identity") return IdentityNoise{};
    if (type == "depolarize") return DepolarizeToState{p, random_density(d, rng)};
    if (type == "random_isometry") return RandomIsometryMixture{p, draw_random_isometry(d, rng)};
    if (type == "unitary") return UnitaryConjugation{draw_haar_unitary(d, rng)};
    throw std::invalid_argument("unknown noise type '" + type + "'");
}

py::dict fit_to_dict(const DecayFit& fit) {
    py::dict out;
    out["a0"] = fit.a0;
    py::list terms;
    for (const auto& t : fit.terms) {
        py::dict term;
        term["a"] = t.a;
        term["lambda"] = t.lambda;
        terms.append(term);
    }
    out["terms"] = terms;
    out["residual_rms"] = fit.residual_rms;
    out["order"] = fit.order;
    out["collapsed"] = fit.collapsed;
    out["unidentifiable"] = fit.unidentifiable;
    return out;
}

py::dict run_to_dict(const RBRun& run) {
    py::dict out;
    py::list ms, means, errs;
    for (const auto& p : run.points) {
        ms.append(p.m);
        means.append(p.mean);
        errs.append(p.std_err);
    }
    out["m"] = ms;
    out["mean"] = means;
    out["std_err"] = errs;
    return out;
}

}  // namespace

PYBIND11_MODULE(_rbsim, mod) {
    mod.doc() = "Randomized benchmarking simulation for finite matrix groups";

    mod.def("mu_group_unitaries", &mu_unitaries, py::arg("d"), py::arg("n"),
            py::arg("cap") = 100000,
            "Enumerate the monomial unitary group MU(d, n) as dense matrices.");
    mod.def("clifford_group_unitaries", &clifford_unitaries, py::arg("qubits"),
            py::arg("cap") = 100000,
            "Enumerate the n-qubit Clifford group as canonical-phase matrices.");
    mod.def("mu_group_order", [](int d, int n) {
        double order = 1.0;
        for (int k = 2; k <= d; ++k) order *= k;
        for (int k = 0; k < d; ++k) order *= n;
        return order;
    }, py::arg("d"), py::arg("n"), "d! * n^d");

    mod.def("adjoint_channel", &adjoint_channel, py::arg("u"),
            "Column-stacking superoperator of X -> U X U^dagger.");
    mod.def("choi", &choi, py::arg("superop"));
    mod.def("entanglement_fidelity", &entanglement_fidelity, py::arg("superop"));
    mod.def("average_fidelity_from_entanglement", &average_fidelity_from_entanglement,
            py::arg("fe"), py::arg("d"));
    mod.def("is_completely_positive", &is_completely_positive, py::arg("superop"),
            py::arg("tol") = 1e-8);
    mod.def("is_trace_preserving", &is_trace_preserving, py::arg("superop"),
            py::arg("tol") = 1e-9);

    mod.def("exact_twirl", &exact_twirl, py::arg("superop"), py::arg("group_unitaries"));
    mod.def(
        "mu_structure_params",
        [](const Mat& superop, int d) {
            auto s = mu_structure_params(superop, d);
            return py::make_tuple(s.get("off_diagonal"), s.get("diagonal"));
        },
        py::arg("superop"), py::arg("d"),
        "Eigenvalue pair (alpha, beta) of the MU twirl of the channel.");
    mod.def(
        "clifford_depolarizing_param",
        [](const Mat& superop, int qubits) {
            return clifford_depolarizing_param(superop, qubits).get("traceless");
        },
        py::arg("superop"), py::arg("qubits"));
    mod.def("commutant_dimension", &commutant_dimension, py::arg("group_unitaries"));

    mod.def("mu_transition_matrix", &mu_transition, py::arg("d"), py::arg("n"),
            py::arg("cap") = 100000);
    mod.def("clifford_transition_matrix", &clifford_transition, py::arg("qubits"),
            py::arg("cap") = 100000);
    mod.def("mixing_time", &mixing_time, py::arg("transition"), py::arg("eps"),
            py::arg("step_cap") = (1L << 20));
    mod.def("worst_case_tv", &worst_case_tv, py::arg("transition"), py::arg("n"));
    mod.def(
        "approx_twirl_bound",
        [](const std::vector<double>& eps, std::size_t group_size) {
            return approx_twirl_bound(eps, group_size);
        },
        py::arg("epsilons"), py::arg("group_size"));
    mod.def("hoeffding_bound", &hoeffding_bound, py::arg("sequences"), py::arg("eps"));

    mod.def(
        "make_noise_superop",
        [](const std::string& type, int d, double p, double delta, double a,
           std::uint64_t seed) {
            Rng rng(seed);
            NoiseModel model = model_from_kwargs(type, p, delta, a, d, rng);
            NoiseChannel channel = make_noise(model, d, rng);
            if (!channel.superop)
                throw std::runtime_error("dimension exceeds the dense superoperator cap");
            return *channel.superop;
        },
        py::arg("type"), py::arg("d"), py::arg("p") = 0.9, py::arg("delta") = 0.1,
        py::arg("a") = 0.1, py::arg("seed") = 1,
        "Draw a noise channel and return its dense superoperator.");

    mod.def(
        "run_rb",
        [](const std::string& group_type, int d, int n, int qubits,
           const std::string& noise_type, double p, double a, const std::string& protocol,
           const std::vector<int>& m_values, int sequences, int burn_in, long walk_length,
           std::uint64_t seed) {
            ExperimentSpec spec;
            spec.group_type = group_type;
            spec.d = d;
            spec.n = n;
            spec.qubits = qubits;
            spec.noise_type = noise_type;
            spec.p = p;
            spec.a = a;
            spec.protocol = protocol;
            spec.m_values = m_values;
            spec.sequences = sequences;
            spec.burn_in = burn_in;
            spec.walk_length = walk_length;
            spec.master_seed = seed;
            ResultRecord record = run_experiment(spec);
            const auto& rep = record.repetitions.front();
            py::dict out = run_to_dict(rep.run);
            out["fit"] = fit_to_dict(rep.fit);
            out["F_avg_min"] = rep.est_favg_min;
            out["F_avg_max"] = rep.est_favg_max;
            out["true_F_avg"] = rep.true_favg;
            out["error"] = rep.error;
            return out;
        },
        py::arg("group_type"), py::arg("d") = 2, py::arg("n") = 8, py::arg("qubits") = 1,
        py::arg("noise_type") = "depolarize", py::arg("p") = 0.9, py::arg("a") = 0.1,
        py::arg("protocol") = "standard", py::arg("m_values") = std::vector<int>{1, 2, 3, 4, 5, 6},
        py::arg("sequences") = 100, py::arg("burn_in") = 10, py::arg("walk_length") = 20,
        py::arg("seed") = 1, "Run one RB experiment repetition and return curve + fit.");

    mod.def(
        "fit_decay",
        [](const std::vector<int>& m, const std::vector<double>& mean,
           const std::vector<double>& std_err, int order) {
            if (m.size() != mean.size() ||
                (!std_err.empty() && std_err.size() != m.size()))
                throw std::invalid_argument("m, mean and std_err lengths must agree");
            std::vector<DecaySample> samples;
            for (std::size_t i = 0; i < m.size(); ++i)
                samples.push_back({m[i], mean[i], std_err.empty() ? 0.0 : std_err[i], 0});
            DecayFit fit = order == 2 ? fit_double_decay(samples) : fit_single_decay(samples);
            return fit_to_dict(fit);
        },
        py::arg("m"), py::arg("mean"), py::arg("std_err") = std::vector<double>{},
        py::arg("order") = 1, "Weighted separable least-squares decay fit.");

    mod.def(
        "parse_config",
        [](const std::string& text) {
            std::istringstream in(text);
            ExperimentSpec spec = parse_config(in);
            py::dict out;
            out["group_type"] = spec.group_type;
            out["d"] = spec.d;
            out["n"] = spec.n;
            out["qubits"] = spec.qubits;
            out["noise_type"] = spec.noise_type;
            out["protocol"] = spec.protocol;
            out["m_values"] = spec.m_values;
            out["M"] = spec.sequences;
            out["repetitions"] = spec.repetitions;
            out["master_seed"] = spec.master_seed;
            return out;
        },
        py::arg("text"), "Parse a key=value or JSON experiment config.");
}
