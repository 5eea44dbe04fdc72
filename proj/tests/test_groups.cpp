#include <doctest.h>

#include <cmath>
#include <complex>
#include <map>

#include "rbsim/group.hpp"
#include "rbsim/rng.hpp"

using namespace rbsim;
using cd = std::complex<double>;

namespace {

MonomialElement make_mu(std::vector<std::int32_t> perm, std::vector<std::int32_t> phases, int n) {
    MonomialElement g;
    g.d = static_cast<std::int32_t>(perm.size());
    g.n = n;
    g.perm = std::move(perm);
    g.phases = std::move(phases);
    return g;
}

double max_dev(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("monomial multiply matches the dense-matrix oracle") {
    // d=2, n=4: g=(swap,[1,0]), h=(id,[0,2]) -> (swap,[3,0]).
    auto g = make_mu({1, 0}, {1, 0}, 4);
    auto h = make_mu({0, 1}, {0, 2}, 4);
    auto gh = mu_multiply(g, h);
    CHECK(gh.perm == std::vector<std::int32_t>{1, 0});
    CHECK(gh.phases == std::vector<std::int32_t>{3, 0});
    CHECK(max_dev(mu_to_unitary(gh), mu_to_unitary(g) * mu_to_unitary(h)) < 1e-12);

    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        auto a = mu_sample_uniform(6, 8, rng);
        auto b = mu_sample_uniform(6, 8, rng);
        CHECK(max_dev(mu_to_unitary(mu_multiply(a, b)),
                      mu_to_unitary(a) * mu_to_unitary(b)) < 1e-12);
    }
    CHECK(mu_multiply(g, mu_identity(2, 4)) == g);
}

TEST_CASE("monomial inverse") {
    auto g = make_mu({1, 0}, {1, 0}, 4);
    auto inv = mu_inverse(g);
    CHECK(inv.perm == std::vector<std::int32_t>{1, 0});
    CHECK(inv.phases == std::vector<std::int32_t>{0, 3});
    CHECK(max_dev(mu_to_unitary(inv), mu_to_unitary(g).adjoint()) < 1e-12);
    CHECK(mu_inverse(mu_identity(3, 4)) == mu_identity(3, 4));
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        auto a = mu_sample_uniform(5, 3, rng);
        CHECK(mu_multiply(a, mu_inverse(a)) == mu_identity(5, 3));
    }
}

TEST_CASE("monomial unitaries are monomial and unitary") {
    CHECK(max_dev(mu_to_unitary(mu_identity(3, 5)), Eigen::MatrixXcd::Identity(3, 3)) == 0.0);
    // (swap,[1,0]) at n=4: D = diag(i, 1) times swap -> [[0, i], [1, 0]].
    auto g = make_mu({1, 0}, {1, 0}, 4);
    Eigen::MatrixXcd expected(2, 2);
    expected << cd(0, 0), cd(0, 1), cd(1, 0), cd(0, 0);
    CHECK(max_dev(mu_to_unitary(g), expected) < 1e-14);
    Rng rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        auto a = mu_sample_uniform(4, 6, rng);
        Eigen::MatrixXcd u = mu_to_unitary(a);
        CHECK(max_dev(u.adjoint() * u, Eigen::MatrixXcd::Identity(4, 4)) < 1e-12);
        for (int col = 0; col < 4; ++col) {
            int nonzero = 0;
            for (int row = 0; row < 4; ++row)
                if (std::abs(u(row, col)) > 1e-12) {
                    ++nonzero;
                    CHECK(std::abs(std::abs(u(row, col)) - 1.0) < 1e-12);
                }
            CHECK(nonzero == 1);
        }
    }
}

TEST_CASE("monomial conjugation agrees with dense conjugation") {
    Rng rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        auto g = mu_sample_uniform(4, 8, rng);
        Eigen::MatrixXcd rho = Eigen::MatrixXcd::Random(4, 4);
        rho = (rho + rho.adjoint()).eval();
        Eigen::MatrixXcd u = mu_to_unitary(g);
        CHECK(max_dev(mu_conjugate(g, rho), u * rho * u.adjoint()) < 1e-12);
    }
}

TEST_CASE("uniform monomial sampling is uniform and deterministic") {
    // d=2, n=3: 2 * 9 = 18 elements.
    const long draws = 100000;
    std::map<std::pair<std::vector<std::int32_t>, std::vector<std::int32_t>>, long> counts;
    Rng rng(42);
    for (long i = 0; i < draws; ++i) {
        auto g = mu_sample_uniform(2, 3, rng);
        ++counts[{g.perm, g.phases}];
    }
    CHECK(counts.size() == 18);
    const double expect = draws / 18.0;
    const double se = std::sqrt(expect * (1.0 - 1.0 / 18.0));
    for (const auto& [key, count] : counts)
        CHECK(std::abs(count - expect) < 5.0 * se);

    auto g1 = mu_sample_uniform(1, 4, rng);
    CHECK(g1.perm == std::vector<std::int32_t>{0});

    Rng a(123), b(123);
    CHECK(mu_sample_uniform(3, 5, a) == mu_sample_uniform(3, 5, b));
}

TEST_CASE("clifford canonical phase") {
    Eigen::MatrixXcd h = cl_hadamard();
    CHECK(max_dev(cl_canonicalize(h).matrix, h) < 1e-12);
    CHECK(max_dev(cl_canonicalize(std::exp(cd(0, M_PI / 3)) * h).matrix, h) < 1e-12);
    auto once = cl_canonicalize(cl_cnot(2, 0, 1));
    auto twice = cl_canonicalize(once.matrix);
    CHECK(max_dev(once.matrix, twice.matrix) == 0.0);
    CHECK_THROWS_AS(cl_canonicalize(2.0 * h), std::invalid_argument);
}

TEST_CASE("clifford multiply and inverse") {
    auto h = cl_canonicalize(cl_hadamard());
    CHECK(cl_equal(cl_multiply(h, h), cl_identity(1)));
    auto pi = cl_canonicalize(cl_phase_gate());
    auto pi_inv = cl_canonicalize(cl_phase_gate().adjoint());
    CHECK(cl_equal(cl_inverse(pi), pi_inv));
    auto gens = clifford_generator_set(2);
    Rng rng(9);
    std::uniform_int_distribution<std::size_t> pick(0, gens.elements.size() - 1);
    for (int trial = 0; trial < 10; ++trial) {
        const auto& a = gens.elements[pick(rng)];
        const auto& b = gens.elements[pick(rng)];
        const auto& c = gens.elements[pick(rng)];
        CHECK(max_dev(cl_multiply(cl_multiply(a, b), c).matrix,
                      cl_multiply(a, cl_multiply(b, c)).matrix) < 1e-10);
    }
}

TEST_CASE("generator sets") {
    auto cl1 = clifford_generator_set(1);
    CHECK(cl1.elements.size() == 4);  // I, H, pi, pi^-1
    CHECK(cl1.closed_under_inversion);
    auto cl2 = clifford_generator_set(2);
    CHECK(cl2.elements.size() == 9);
    CHECK(generator_set_closed_under_inversion<CliffordOps>(cl2));

    auto mu = mu_generator_set(2, 4);
    CHECK(mu.elements.size() == 6);  // id, swap, phase gates +-1 on both sites
    CHECK(generator_set_closed_under_inversion<MonomialOps>(mu));
}

TEST_CASE("bfs enumeration") {
    auto mu = bfs_enumerate<MonomialOps>(mu_generator_set(2, 4), 1000);
    CHECK(mu.size() == 32);  // 2! * 4^2
    auto cl = bfs_enumerate<CliffordOps>(clifford_generator_set(1), 1000);
    CHECK(cl.size() == 24);

    GeneratorSet<MonomialElement> trivial;
    trivial.elements = {mu_identity(2, 4)};
    CHECK(bfs_enumerate<MonomialOps>(trivial, 10).size() == 1);

    CHECK_THROWS_AS(bfs_enumerate<MonomialOps>(mu_generator_set(2, 4), 10), GroupTooLargeError);
}
