#include "rbsim/twirl.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rbsim {

IrrepProfile mu_profile(int d) {
    IrrepProfile profile;
    profile.blocks = {{1, 1, "trivial"}, {d * d - d, 1, "off_diagonal"}, {d - 1, 1, "diagonal"}};
    profile.total = d * d;
    return profile;
}

IrrepProfile clifford_profile(int qubits) {
    const int d = 1 << qubits;
    IrrepProfile profile;
    profile.blocks = {{1, 1, "trivial"}, {d * d - 1, 1, "traceless"}};
    profile.total = d * d;
    return profile;
}

double CovariantSpectrum::get(const std::string& label) const {
    for (const auto& [name, value] : eigenvalues)
        if (name == label) return value;
    throw std::invalid_argument("no eigenvalue labelled '" + label + "'");
}

namespace {

/// Pairwise tree reduction keeps the sum independent of evaluation order.
Mat tree_sum(std::vector<Mat>& terms) {
    if (terms.empty()) throw std::invalid_argument("empty sum");
    std::size_t count = terms.size();
    while (count > 1) {
        std::size_t half = (count + 1) / 2;
        for (std::size_t i = 0; i + half < count; ++i) terms[i] += terms[i + half];
        count = half;
    }
    return terms[0];
}

}  // namespace

Mat exact_twirl(const Mat& superop, const std::vector<Mat>& group_unitaries) {
    if (group_unitaries.empty()) throw std::invalid_argument("group enumeration is empty");
    std::vector<Mat> terms;
    terms.reserve(group_unitaries.size());
    for (const Mat& u : group_unitaries)
        terms.push_back(adjoint_channel_dual(u) * superop * adjoint_channel(u));
    return tree_sum(terms) / static_cast<double>(group_unitaries.size());
}

Mat mc_twirl(const Mat& superop, const std::function<Mat(Rng&)>& sample_unitary,
             long num_samples, Rng& rng) {
    if (num_samples < 1) throw std::invalid_argument("need at least one sample");
    std::vector<Mat> terms;
    terms.reserve(num_samples);
    for (long i = 0; i < num_samples; ++i) {
        Mat u = sample_unitary(rng);
        terms.push_back(adjoint_channel_dual(u) * superop * adjoint_channel(u));
    }
    return tree_sum(terms) / static_cast<double>(num_samples);
}

Mat mu_projector_trivial(int d) {
    CVec id = vectorize(Mat::Identity(d, d));
    return (id * id.transpose()) / static_cast<double>(d);
}

namespace {

/// Dephasing superoperator: keeps the diagonal, kills off-diagonal entries.
Mat dephasing_superop(int d) {
    Mat s = Mat::Zero(d * d, d * d);
    for (int i = 0; i < d; ++i) s(i * d + i, i * d + i) = 1.0;
    return s;
}

}  // namespace

Mat mu_projector_off_diagonal(int d) { return superop_identity(d) - dephasing_superop(d); }

Mat mu_projector_diagonal(int d) { return dephasing_superop(d) - mu_projector_trivial(d); }

Mat mu_covariant_channel(double alpha, double beta, int d) {
    return mu_projector_trivial(d) + alpha * mu_projector_off_diagonal(d) +
           beta * mu_projector_diagonal(d);
}

CovariantSpectrum mu_structure_params(const Mat& superop, int d) {
    const double alpha =
        (mu_projector_off_diagonal(d) * superop).trace().real() / (d * d - d);
    const double beta = (mu_projector_diagonal(d) * superop).trace().real() / (d - 1);
    CovariantSpectrum spectrum;
    spectrum.eigenvalues = {{"trivial", 1.0}, {"off_diagonal", alpha}, {"diagonal", beta}};
    return spectrum;
}

CovariantSpectrum clifford_depolarizing_param(const Mat& superop, int qubits) {
    const double d2 = static_cast<double>(1 << (2 * qubits));
    const double p = (superop.trace().real() - 1.0) / (d2 - 1.0);
    CovariantSpectrum spectrum;
    spectrum.eigenvalues = {{"trivial", 1.0}, {"traceless", p}};
    return spectrum;
}

int commutant_dimension(const std::vector<Mat>& group_unitaries) {
    if (group_unitaries.empty()) throw std::invalid_argument("group enumeration is empty");
    double sum = 0.0;
    for (const Mat& u : group_unitaries) {
        const double chi = std::abs(u.trace());
        sum += chi * chi * chi * chi;
    }
    sum /= static_cast<double>(group_unitaries.size());
    const double rounded = std::round(sum);
    if (std::abs(sum - rounded) >= 1e-6)
        throw std::runtime_error("character sum " + std::to_string(sum) +
                                 " is not close to an integer; representation data inconsistent");
    return static_cast<int>(rounded);
}

double covariance_defect(const Mat& superop, const std::vector<Mat>& generator_unitaries) {
    double defect = 0.0;
    for (const Mat& u : generator_unitaries) {
        Mat adj = adjoint_channel(u);
        defect = std::max(defect, (adj * superop - superop * adj).cwiseAbs().maxCoeff());
    }
    return defect;
}

std::pair<double, double> fidelity_bounds(const std::vector<double>& estimates,
                                          const IrrepProfile& profile) {
    if (estimates.size() != profile.blocks.size())
        throw std::invalid_argument("one eigenvalue estimate per block required");
    std::vector<double> lambdas(estimates.begin() + 1, estimates.end());
    std::vector<double> dims;
    for (std::size_t i = 1; i < profile.blocks.size(); ++i)
        dims.push_back(profile.blocks[i].dim * profile.blocks[i].multiplicity);
    std::sort(lambdas.rbegin(), lambdas.rend());
    std::vector<double> dims_desc = dims;
    std::sort(dims_desc.rbegin(), dims_desc.rend());
    std::vector<double> dims_asc = dims_desc;
    std::reverse(dims_asc.begin(), dims_asc.end());
    // Rearrangement inequality: descending-with-descending maximizes.
    double fe_max = 1.0, fe_min = 1.0;
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        fe_max += dims_desc[i] * lambdas[i];
        fe_min += dims_asc[i] * lambdas[i];
    }
    const double d2 = static_cast<double>(profile.total);
    return {fe_min / d2, fe_max / d2};
}

Mat isolating_state(IsolatingSector which, int d, double eps) {
    if (d < 2) throw std::invalid_argument("isolating_state requires d >= 2");
    if (eps <= 0.0) throw std::invalid_argument("eps must be positive");
    Mat x = Mat::Zero(d, d);
    if (which == IsolatingSector::OffDiagonal) {
        x(0, 1) = 1.0;
        x(1, 0) = 1.0;
    } else {
        x(0, 0) = 1.0;
        x(1, 1) = -1.0;
    }
    Mat rho = Mat::Identity(d, d) / static_cast<double>(d) + eps * x;
    if (1.0 / d - eps < -1e-12)
        throw std::invalid_argument("eps too large for a positive semidefinite state");
    return rho;
}

}  // namespace rbsim
