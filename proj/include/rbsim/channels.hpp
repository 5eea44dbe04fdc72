#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <variant>

#include "rbsim/rng.hpp"

namespace rbsim {

using Mat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

/// Superoperators act on column-stacked vectorizations throughout:
/// vec(A X B) = (B^T kron A) vec(X). This is the single convention used
/// everywhere Choi matrices and adjoint representations appear.
CVec vectorize(const Mat& x);
Mat devectorize(const CVec& v, int d);
Mat kron(const Mat& a, const Mat& b);

/// Dense superoperators are only formed up to this dimension (matrix side
/// d^2 = 4096); larger channels must go through the functional path.
inline constexpr int kDenseDimCap = 64;

Mat superop_identity(int d);
Mat superop_compose(const Mat& a, const Mat& b);  // (a o b)(x) = a(b(x))
Mat superop_power(const Mat& a, long m);
Mat apply_superop(const Mat& s, const Mat& x);

/// Superoperator of X -> U X U^dagger.
Mat adjoint_channel(const Mat& u);
/// Superoperator of the Hilbert-Schmidt adjoint X -> U^dagger X U.
Mat adjoint_channel_dual(const Mat& u);

Mat max_entangled(int d);
Mat choi(const Mat& superop);
double entanglement_fidelity(const Mat& superop);
double average_fidelity_from_entanglement(double fe, int d);

bool is_density_matrix(const Mat& rho, double tol = 1e-9);
bool is_povm_effect(const Mat& e, double tol = 1e-9);
bool is_trace_preserving(const Mat& superop, double tol = 1e-9);
bool is_completely_positive(const Mat& superop, double tol = 1e-8);

/// |k><k| in dimension d.
Mat basis_state(int d, int k);
/// Hilbert-Schmidt (Ginibre) random state: G G^dagger / tr(G G^dagger).
Mat random_density(int d, Rng& rng);
/// Isometry C^d -> C^d (x) C^d with orthonormal columns, from a complex
/// Gaussian matrix.
Mat draw_random_isometry(int d, Rng& rng);
/// U = (x)_j exp(i theta_j X_j) with theta_j i.i.d. uniform on (0, a).
Mat random_x_rotation_unitary(int qubits, double a, Rng& rng);
/// Haar-random unitary from the QR decomposition of a Ginibre matrix.
Mat draw_haar_unitary(int d, Rng& rng);

struct IdentityNoise {};
struct DepolarizeToState {
    double p;
    Mat sigma;
};
struct RandomIsometryMixture {
    double p;
    Mat isometry;  // d^2 x d; drawn at make_noise time when empty
};
struct UnitaryConjugation {
    Mat u;
};
struct DeltaCovariant;

using NoiseModel = std::variant<IdentityNoise, DepolarizeToState, RandomIsometryMixture,
                                UnitaryConjugation, DeltaCovariant>;

struct DeltaCovariant {
    double delta;
    std::shared_ptr<NoiseModel> covariant_part;
    std::shared_ptr<NoiseModel> noise_part;
};

/// Concrete channel: a state-level applicator always, plus the dense
/// superoperator whenever d <= kDenseDimCap.
struct NoiseChannel {
    int d = 0;
    std::function<Mat(const Mat&)> apply;
    std::optional<Mat> superop;
};

NoiseChannel make_noise(const NoiseModel& model, int d, Rng& rng);

/// Applies the channels left-to-right in list order to rho, then returns
/// Re tr(. E).
double sequence_fidelity(const Mat& rho, const Mat& effect,
                         const std::vector<std::function<Mat(const Mat&)>>& ops);

}  // namespace rbsim
