#include "rbsim/rb.hpp"

#include <cmath>
#include <memory>

namespace rbsim {

void finalize_point(RBPoint& point) {
    const std::size_t count = point.fidelities.size();
    double sum = 0.0;
    for (double f : point.fidelities) sum += f;
    point.mean = sum / static_cast<double>(count);
    double ss = 0.0;
    for (double f : point.fidelities) ss += (f - point.mean) * (f - point.mean);
    const double sample_var = count > 1 ? ss / static_cast<double>(count - 1) : 0.0;
    point.std_err = std::sqrt(sample_var / static_cast<double>(count));
}

double hoeffding_bound(long sequences, double eps) {
    if (sequences < 1 || eps <= 0.0) throw std::invalid_argument("need M >= 1, eps > 0");
    return std::exp(-2.0 * static_cast<double>(sequences) * eps * eps);
}

std::vector<double> exact_expectation_curve(const Mat& noise_superop,
                                            const std::vector<Mat>& group_unitaries,
                                            const Mat& rho, const Mat& effect,
                                            const std::vector<int>& m_values) {
    const Mat twirled = exact_twirl(noise_superop, group_unitaries);
    std::vector<double> curve;
    curve.reserve(m_values.size());
    for (int m : m_values) {
        Mat s = superop_power(twirled, m) * noise_superop;
        curve.push_back((apply_superop(s, rho) * effect).trace().real());
    }
    return curve;
}

BenchmarkGroup<MonomialOps> make_mu_group(int d, int n) {
    BenchmarkGroup<MonomialOps> group;
    group.identity = mu_identity(d, n);
    group.generators = mu_generator_set(d, n);
    group.dim = d;
    group.sample_uniform = [d, n](Rng& rng) { return mu_sample_uniform(d, n, rng); };
    return group;
}

BenchmarkGroup<CliffordOps> make_clifford_group(int qubits, std::size_t cap) {
    // |C(n)| up to global phase is 2^(n^2+2n) * prod_j (4^j - 1); fail fast
    // instead of discovering an oversized group by enumeration.
    double order = std::pow(2.0, qubits * qubits + 2 * qubits);
    for (int j = 1; j <= qubits; ++j) order *= std::pow(4.0, j) - 1.0;
    if (order > static_cast<double>(cap)) throw GroupTooLargeError(cap);
    BenchmarkGroup<CliffordOps> group;
    group.identity = cl_identity(qubits);
    group.generators = clifford_generator_set(qubits);
    group.dim = 1 << qubits;
    group.enumerated = bfs_enumerate<CliffordOps>(group.generators, cap);
    auto elements = std::make_shared<std::vector<CliffordElement>>(group.enumerated);
    group.sample_uniform = [elements](Rng& rng) {
        std::uniform_int_distribution<std::size_t> pick(0, elements->size() - 1);
        return (*elements)[pick(rng)];
    };
    return group;
}

}  // namespace rbsim
