#include "rbsim/clifford.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace rbsim {

namespace {

bool is_unitary(const Eigen::MatrixXcd& u, double tol) {
    if (u.rows() != u.cols() || u.rows() == 0) return false;
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(u.rows(), u.cols());
    return (u.adjoint() * u - id).cwiseAbs().maxCoeff() <= tol;
}

int qubits_from_dim(Eigen::Index dim) {
    int q = 0;
    Eigen::Index m = 1;
    while (m < dim) {
        m <<= 1;
        ++q;
    }
    if (m != dim) throw std::invalid_argument("Clifford matrix dimension is not a power of two");
    return q;
}

}  // namespace

CliffordElement cl_canonicalize(const Eigen::MatrixXcd& u) {
    if (!is_unitary(u, 1e-10)) throw std::invalid_argument("matrix is not unitary within 1e-10");
    const int qubits = qubits_from_dim(u.rows());
    // First nonzero entry in column-major scan fixes the global phase.
    std::complex<double> lead{0.0, 0.0};
    for (Eigen::Index c = 0; c < u.cols() && lead == std::complex<double>(0.0, 0.0); ++c)
        for (Eigen::Index r = 0; r < u.rows(); ++r)
            if (std::abs(u(r, c)) > 1e-12) {
                lead = u(r, c);
                break;
            }
    CliffordElement out;
    out.qubits = qubits;
    out.matrix = u * (std::abs(lead) / lead);
    return out;
}

CliffordElement cl_identity(int qubits) {
    CliffordElement out;
    out.qubits = qubits;
    out.matrix = Eigen::MatrixXcd::Identity(1 << qubits, 1 << qubits);
    return out;
}

CliffordElement cl_multiply(const CliffordElement& g, const CliffordElement& h) {
    if (g.qubits != h.qubits) throw std::invalid_argument("Clifford qubit counts differ");
    return cl_canonicalize(g.matrix * h.matrix);
}

CliffordElement cl_inverse(const CliffordElement& g) { return cl_canonicalize(g.matrix.adjoint()); }

bool cl_equal(const CliffordElement& g, const CliffordElement& h, double tol) {
    if (g.qubits != h.qubits) return false;
    return (g.matrix - h.matrix).cwiseAbs().maxCoeff() <= tol;
}

Eigen::MatrixXcd cl_hadamard() {
    Eigen::MatrixXcd h(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    h << s, s, s, -s;
    return h;
}

Eigen::MatrixXcd cl_phase_gate() {
    Eigen::MatrixXcd p(2, 2);
    p << 1.0, 0.0, 0.0, std::complex<double>(0.0, 1.0);
    return p;
}

Eigen::MatrixXcd cl_single_qubit(int qubits, int pos, const Eigen::MatrixXcd& gate) {
    if (pos < 0 || pos >= qubits) throw std::invalid_argument("qubit index out of range");
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
    for (int q = 0; q < qubits; ++q) {
        const Eigen::MatrixXcd& factor =
            (q == pos) ? gate : Eigen::MatrixXcd::Identity(2, 2).eval();
        Eigen::MatrixXcd next(out.rows() * 2, out.cols() * 2);
        for (Eigen::Index i = 0; i < out.rows(); ++i)
            for (Eigen::Index j = 0; j < out.cols(); ++j)
                next.block(i * 2, j * 2, 2, 2) = out(i, j) * factor;
        out = std::move(next);
    }
    return out;
}

Eigen::MatrixXcd cl_cnot(int qubits, int control, int target) {
    if (control == target || control < 0 || target < 0 || control >= qubits || target >= qubits)
        throw std::invalid_argument("bad CNOT qubit indices");
    const int dim = 1 << qubits;
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dim, dim);
    // Qubit 0 is the most significant bit of the basis index.
    const int cbit = qubits - 1 - control;
    const int tbit = qubits - 1 - target;
    for (int x = 0; x < dim; ++x) {
        const int y = (x >> cbit) & 1 ? x ^ (1 << tbit) : x;
        u(y, x) = 1.0;
    }
    return u;
}

}  // namespace rbsim
