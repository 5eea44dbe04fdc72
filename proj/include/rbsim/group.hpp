#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "rbsim/clifford.hpp"
#include "rbsim/monomial.hpp"

namespace rbsim {

/// A generating set closed under inversion. By default the identity is a
/// member, which makes the induced random walk lazy and hence aperiodic;
/// `strict` builds reproduce the bare generator list.
template <class Element>
struct GeneratorSet {
    std::vector<Element> elements;
    bool closed_under_inversion = false;
};

struct GroupTooLargeError : std::runtime_error {
    explicit GroupTooLargeError(std::size_t cap)
        : std::runtime_error("group exceeds enumeration cap of " + std::to_string(cap)) {}
};

/// Static group operations for MU(d, n); used as the Ops parameter of the
/// generic walk and enumeration machinery.
struct MonomialOps {
    using Element = MonomialElement;
    static Element multiply(const Element& a, const Element& b) { return mu_multiply(a, b); }
    static Element inverse(const Element& a) { return mu_inverse(a); }
    static bool equal(const Element& a, const Element& b) { return a == b; }
    static Eigen::MatrixXcd to_unitary(const Element& a) { return mu_to_unitary(a); }
    static Eigen::MatrixXcd conjugate(const Element& a, const Eigen::MatrixXcd& rho) {
        return mu_conjugate(a, rho);
    }
    static int dim(const Element& a) { return a.d; }
};

struct CliffordOps {
    using Element = CliffordElement;
    static Element multiply(const Element& a, const Element& b) { return cl_multiply(a, b); }
    static Element inverse(const Element& a) { return cl_inverse(a); }
    static bool equal(const Element& a, const Element& b) { return cl_equal(a, b); }
    static Eigen::MatrixXcd to_unitary(const Element& a) { return a.matrix; }
    static Eigen::MatrixXcd conjugate(const Element& a, const Eigen::MatrixXcd& rho) {
        return a.matrix * rho * a.matrix.adjoint();
    }
    static int dim(const Element& a) { return static_cast<int>(a.matrix.rows()); }
};

/// Breadth-first closure of the generators under multiplication,
/// deduplicated by the family's element equality. Throws
/// GroupTooLargeError once more than `cap` elements have been found.
template <class Ops>
std::vector<typename Ops::Element> bfs_enumerate(
    const GeneratorSet<typename Ops::Element>& generators, std::size_t cap) {
    using Element = typename Ops::Element;
    std::vector<Element> found;
    auto known = [&](const Element& e) {
        for (const auto& f : found)
            if (Ops::equal(e, f)) return true;
        return false;
    };
    for (const auto& g : generators.elements)
        if (!known(g)) found.push_back(g);
    std::size_t frontier_begin = 0;
    while (frontier_begin < found.size()) {
        std::size_t frontier_end = found.size();
        for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
            for (const auto& a : generators.elements) {
                Element next = Ops::multiply(a, found[i]);
                if (!known(next)) {
                    if (found.size() >= cap) throw GroupTooLargeError(cap);
                    found.push_back(next);
                }
            }
        }
        frontier_begin = frontier_end;
    }
    return found;
}

template <class Ops>
bool generator_set_closed_under_inversion(const GeneratorSet<typename Ops::Element>& gens) {
    for (const auto& a : gens.elements) {
        auto inv = Ops::inverse(a);
        bool present = false;
        for (const auto& b : gens.elements)
            if (Ops::equal(inv, b)) { present = true; break; }
        if (!present) return false;
    }
    return true;
}

/// Identity, adjacent transpositions with zero phases, and +1/-1 phase
/// gates on each site. Generates MU(d, n) and is closed under inversion.
GeneratorSet<MonomialElement> mu_generator_set(int d, int n, bool lazy = true);

/// {I, H_i, pi_i, pi_i^-1, CNOT_{i,j}} on n qubits, canonicalized.
GeneratorSet<CliffordElement> clifford_generator_set(int qubits, bool lazy = true);

}  // namespace rbsim
