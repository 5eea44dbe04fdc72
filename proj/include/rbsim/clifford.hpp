#pragma once

#include <Eigen/Dense>

namespace rbsim {

/// Clifford group element stored as a dense 2^n x 2^n unitary with the
/// global phase fixed: the first nonzero entry in column-major order is
/// real and positive.
struct CliffordElement {
    Eigen::MatrixXcd matrix;
    int qubits = 0;
};

inline constexpr double kCliffordEqualTol = 1e-9;

/// Removes the global phase. Throws std::invalid_argument if U is not
/// unitary to within 1e-10.
CliffordElement cl_canonicalize(const Eigen::MatrixXcd& u);

CliffordElement cl_identity(int qubits);
CliffordElement cl_multiply(const CliffordElement& g, const CliffordElement& h);
CliffordElement cl_inverse(const CliffordElement& g);
bool cl_equal(const CliffordElement& g, const CliffordElement& h,
              double tol = kCliffordEqualTol);

Eigen::MatrixXcd cl_hadamard();
Eigen::MatrixXcd cl_phase_gate();  // diag(1, i), the pi-gate
Eigen::MatrixXcd cl_cnot(int qubits, int control, int target);

/// Embeds a single-qubit gate at the given position in an n-qubit register.
Eigen::MatrixXcd cl_single_qubit(int qubits, int pos, const Eigen::MatrixXcd& gate);

}  // namespace rbsim
