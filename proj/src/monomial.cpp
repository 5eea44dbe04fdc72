#include "rbsim/monomial.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rbsim {

namespace {

std::complex<double> root_of_unity(int exponent, int n) {
    const double angle = 2.0 * std::numbers::pi * exponent / n;
    return {std::cos(angle), std::sin(angle)};
}

void check_compatible(const MonomialElement& g, const MonomialElement& h) {
    if (g.d != h.d || g.n != h.n)
        throw std::invalid_argument("MU elements have mismatched (d, n)");
}

}  // namespace

void mu_validate(const MonomialElement& g) {
    if (g.d < 1 || g.n < 3) throw std::invalid_argument("MU(d, n) requires d >= 1, n >= 3");
    if (g.perm.size() != static_cast<std::size_t>(g.d) ||
        g.phases.size() != static_cast<std::size_t>(g.d))
        throw std::invalid_argument("MU element has wrong vector lengths");
    std::vector<bool> seen(g.d, false);
    for (int j = 0; j < g.d; ++j) {
        const int target = g.perm[j];
        if (target < 0 || target >= g.d || seen[target])
            throw std::invalid_argument("MU element permutation is not a bijection");
        seen[target] = true;
        if (g.phases[j] < 0 || g.phases[j] >= g.n)
            throw std::invalid_argument("MU element phase exponent out of [0, n)");
    }
}

MonomialElement mu_identity(int d, int n) {
    MonomialElement e;
    e.d = d;
    e.n = n;
    e.perm.resize(d);
    e.phases.assign(d, 0);
    for (int j = 0; j < d; ++j) e.perm[j] = j;
    return e;
}

MonomialElement mu_multiply(const MonomialElement& g, const MonomialElement& h) {
    check_compatible(g, h);
    const int d = g.d;
    MonomialElement out;
    out.d = d;
    out.n = g.n;
    out.perm.resize(d);
    out.phases.resize(d);
    // pi_out = pi_g o pi_h; phases_out[i] = phases_g[i] + phases_h[pi_g^-1(i)]
    std::vector<std::int32_t> g_inv(d);
    for (int j = 0; j < d; ++j) g_inv[g.perm[j]] = j;
    for (int j = 0; j < d; ++j) out.perm[j] = g.perm[h.perm[j]];
    for (int i = 0; i < d; ++i)
        out.phases[i] = static_cast<std::int32_t>((g.phases[i] + h.phases[g_inv[i]]) % g.n);
    return out;
}

MonomialElement mu_inverse(const MonomialElement& g) {
    const int d = g.d;
    MonomialElement out;
    out.d = d;
    out.n = g.n;
    out.perm.resize(d);
    out.phases.resize(d);
    for (int j = 0; j < d; ++j) out.perm[g.perm[j]] = j;
    for (int i = 0; i < d; ++i)
        out.phases[i] = static_cast<std::int32_t>(((g.n - g.phases[g.perm[i]]) % g.n));
    return out;
}

MonomialElement mu_sample_uniform(int d, int n, Rng& rng) {
    if (d < 1 || n < 3) throw std::invalid_argument("MU(d, n) requires d >= 1, n >= 3");
    MonomialElement out = mu_identity(d, n);
    // Fisher-Yates
    for (int j = d - 1; j > 0; --j) {
        std::uniform_int_distribution<int> pick(0, j);
        std::swap(out.perm[j], out.perm[pick(rng)]);
    }
    std::uniform_int_distribution<std::int32_t> phase(0, n - 1);
    for (int i = 0; i < d; ++i) out.phases[i] = phase(rng);
    return out;
}

Eigen::MatrixXcd mu_to_unitary(const MonomialElement& g) {
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(g.d, g.d);
    for (int j = 0; j < g.d; ++j) u(g.perm[j], j) = root_of_unity(g.phases[g.perm[j]], g.n);
    return u;
}

Eigen::MatrixXcd mu_conjugate(const MonomialElement& g, const Eigen::MatrixXcd& rho) {
    const int d = g.d;
    Eigen::MatrixXcd out(d, d);
    // (U rho U^t)[pi(i), pi(j)] = w^(p[pi(i)] - p[pi(j)]) rho[i, j]
    for (int j = 0; j < d; ++j) {
        for (int i = 0; i < d; ++i) {
            const int e = ((g.phases[g.perm[i]] - g.phases[g.perm[j]]) % g.n + g.n) % g.n;
            out(g.perm[i], g.perm[j]) = root_of_unity(e, g.n) * rho(i, j);
        }
    }
    return out;
}

}  // namespace rbsim
