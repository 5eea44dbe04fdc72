#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "rbsim/rng.hpp"

namespace rbsim {

/// Element of MU(d, n): a monomial unitary U = D * P where D is diagonal
/// with entries that are n-th roots of unity and P is a permutation matrix
/// acting as P|j> = |perm[j]>. Storage is O(d), so multiplication and
/// inversion run in O(d).
struct MonomialElement {
    std::vector<std::int32_t> perm;    // j -> perm[j]
    std::vector<std::int32_t> phases;  // row i carries omega^phases[i]
    std::int32_t d = 0;
    std::int32_t n = 0;

    bool operator==(const MonomialElement& other) const = default;
};

MonomialElement mu_identity(int d, int n);

/// U_g * U_h under the U = D*P convention.
MonomialElement mu_multiply(const MonomialElement& g, const MonomialElement& h);

MonomialElement mu_inverse(const MonomialElement& g);

/// Uniform over MU(d, n): unbiased shuffle for the permutation, i.i.d.
/// uniform phase exponents.
MonomialElement mu_sample_uniform(int d, int n, Rng& rng);

/// Dense d x d matrix: U[i][j] = omega^phases[i] if i == perm[j], else 0.
Eigen::MatrixXcd mu_to_unitary(const MonomialElement& g);

/// U rho U^dagger without forming U; O(d^2).
Eigen::MatrixXcd mu_conjugate(const MonomialElement& g, const Eigen::MatrixXcd& rho);

void mu_validate(const MonomialElement& g);

}  // namespace rbsim
