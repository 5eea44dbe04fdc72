#include "rbsim/group.hpp"

namespace rbsim {

GeneratorSet<MonomialElement> mu_generator_set(int d, int n, bool lazy) {
    if (d < 2 || n < 3) throw std::invalid_argument("mu_generator_set requires d >= 2, n >= 3");
    GeneratorSet<MonomialElement> set;
    if (lazy) set.elements.push_back(mu_identity(d, n));
    for (int i = 0; i + 1 < d; ++i) {
        MonomialElement swap = mu_identity(d, n);
        std::swap(swap.perm[i], swap.perm[i + 1]);
        set.elements.push_back(std::move(swap));
    }
    for (int i = 0; i < d; ++i) {
        MonomialElement plus = mu_identity(d, n);
        plus.phases[i] = 1;
        MonomialElement minus = mu_identity(d, n);
        minus.phases[i] = n - 1;
        set.elements.push_back(std::move(plus));
        set.elements.push_back(std::move(minus));
    }
    set.closed_under_inversion = generator_set_closed_under_inversion<MonomialOps>(set);
    return set;
}

GeneratorSet<CliffordElement> clifford_generator_set(int qubits, bool lazy) {
    if (qubits < 1) throw std::invalid_argument("clifford_generator_set requires n >= 1");
    GeneratorSet<CliffordElement> set;
    if (lazy) set.elements.push_back(cl_identity(qubits));
    for (int q = 0; q < qubits; ++q) {
        set.elements.push_back(cl_canonicalize(cl_single_qubit(qubits, q, cl_hadamard())));
        set.elements.push_back(cl_canonicalize(cl_single_qubit(qubits, q, cl_phase_gate())));
        set.elements.push_back(
            cl_canonicalize(cl_single_qubit(qubits, q, cl_phase_gate().adjoint())));
    }
    for (int c = 0; c < qubits; ++c)
        for (int t = 0; t < qubits; ++t)
            if (c != t) set.elements.push_back(cl_canonicalize(cl_cnot(qubits, c, t)));
    set.closed_under_inversion = generator_set_closed_under_inversion<CliffordOps>(set);
    return set;
}

}  // namespace rbsim
