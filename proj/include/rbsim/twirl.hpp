#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "rbsim/channels.hpp"

namespace rbsim {

struct IrrepBlock {
    int dim = 0;
    int multiplicity = 1;
    std::string label;
};

/// Block structure of the adjoint representation U (x) conj(U); dimensions
/// (with multiplicity) sum to d^2 and exactly one trivial block of
/// dimension 1 is present for the shipped families.
struct IrrepProfile {
    std::vector<IrrepBlock> blocks;
    int total = 0;
};

/// MU(d, n), n >= 3: blocks of rank 1 (trivial), d^2 - d and d - 1.
IrrepProfile mu_profile(int d);
/// Clifford on n qubits: trivial block plus one block of rank d^2 - 1.
IrrepProfile clifford_profile(int qubits);

struct CovariantSpectrum {
    std::vector<std::pair<std::string, double>> eigenvalues;
    double get(const std::string& label) const;
};

/// Arithmetic mean of U_g^* o T o U_g over the enumerated group, summed by
/// pairwise tree reduction so the result does not depend on element order.
Mat exact_twirl(const Mat& superop, const std::vector<Mat>& group_unitaries);

/// Monte-Carlo twirl over N sampled elements drawn by the caller-supplied
/// sampler.
Mat mc_twirl(const Mat& superop, const std::function<Mat(Rng&)>& sample_unitary,
             long num_samples, Rng& rng);

/// The three closed-form MU projection superoperators.
Mat mu_projector_trivial(int d);
Mat mu_projector_off_diagonal(int d);
Mat mu_projector_diagonal(int d);

/// Builds the MU-covariant channel with parameters (alpha, beta):
/// Q_triv + alpha * Q_off + beta * Q_diag as a superoperator.
Mat mu_covariant_channel(double alpha, double beta, int d);

/// Eigenvalues (alpha, beta) of the MU(d, n) twirl of the channel, read off
/// via projector traces.
CovariantSpectrum mu_structure_params(const Mat& superop, int d);

/// Depolarizing parameter p = (tr S - 1)/(d^2 - 1) of the Clifford twirl.
CovariantSpectrum clifford_depolarizing_param(const Mat& superop, int qubits);

/// Rounds (1/|G|) sum_g |tr U_g|^4 to the nearest integer; this equals
/// sum_alpha m_alpha^2 for the adjoint representation. Throws if the sum
/// is farther than 1e-6 from an integer.
int commutant_dimension(const std::vector<Mat>& group_unitaries);

/// Max over generators a of the entrywise deviation between U_a o T and
/// T o U_a as superoperators; zero iff T is covariant for the generated
/// group.
double covariance_defect(const Mat& superop, const std::vector<Mat>& generator_unitaries);

/// Rearrangement bounds on the entanglement fidelity from sorted eigenvalue
/// estimates. `estimates` must be descending, start with the trivial
/// eigenvalue 1, and have one entry per block of the profile.
std::pair<double, double> fidelity_bounds(const std::vector<double>& estimates,
                                          const IrrepProfile& profile);

enum class IsolatingSector { OffDiagonal, Diagonal };

/// State I/d + eps*X with X supported on a single non-trivial MU block, so
/// that T^m maps it to I/d + lambda^m eps X for MU-covariant T.
Mat isolating_state(IsolatingSector which, int d, double eps);

}  // namespace rbsim
