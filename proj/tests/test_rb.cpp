#include <doctest.h>

#include <cmath>

#include "rbsim/rb.hpp"

using namespace rbsim;

namespace {

std::vector<Mat> unitaries_of(const std::vector<MonomialElement>& group) {
    std::vector<Mat> out;
    for (const auto& g : group) out.push_back(mu_to_unitary(g));
    return out;
}

}  // namespace

TEST_CASE("hoeffding bound") {
    CHECK(hoeffding_bound(1000, 0.05) == doctest::Approx(std::exp(-5.0)).epsilon(1e-12));
    CHECK(hoeffding_bound(1000, 1e-9) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(hoeffding_bound(150000000, 1e-4) == doctest::Approx(std::exp(-3.0)).epsilon(1e-10));
    CHECK(hoeffding_bound(150000000, 1e-4) <= 0.05);
    CHECK_THROWS_AS(hoeffding_bound(0, 0.1), std::invalid_argument);
}

TEST_CASE("identity noise gives exactly unit fidelity") {
    auto group = make_mu_group(2, 8);
    Rng rng(1);
    NoiseChannel identity = make_noise(IdentityNoise{}, 2, rng);
    RBParams params;
    params.m_values = {1, 3, 7};
    params.sequences_per_length = 50;
    params.rho = basis_state(2, 0);
    params.effect = basis_state(2, 0);
    params.master_seed = 5;
    for (const auto& run : {run_standard_rb(group, identity, params),
                            run_approx_rb(group, identity, params, 4),
                            run_generator_rb(group, identity, params, 10)}) {
        for (const auto& point : run.points) {
            CHECK(point.mean == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(point.std_err < 1e-12);
        }
    }
}

TEST_CASE("standard RB matches the closed-form curve for MU(2,8)") {
    auto group = make_mu_group(2, 8);
    Rng rng(2);
    NoiseChannel noise = make_noise(DepolarizeToState{0.9, Mat::Identity(2, 2) / 2.0}, 2, rng);
    RBParams params;
    params.m_values = {1, 2, 4, 8};
    params.sequences_per_length = 4000;
    params.rho = basis_state(2, 0);
    params.effect = basis_state(2, 0);
    params.master_seed = 17;
    params.threads = 4;
    RBRun run = run_standard_rb(group, noise, params);
    for (const auto& point : run.points) {
        const double expected = 0.5 + 0.5 * std::pow(0.9, point.m + 1);
        CHECK(std::abs(point.mean - expected) < 5.0 * std::max(point.std_err, 1e-12));
    }
}

TEST_CASE("thread count does not change the run") {
    auto group = make_mu_group(2, 4);
    Rng rng(3);
    NoiseChannel noise = make_noise(DepolarizeToState{0.8, random_density(2, rng)}, 2, rng);
    RBParams params;
    params.m_values = {1, 2, 3};
    params.sequences_per_length = 64;
    params.rho = basis_state(2, 0);
    params.effect = basis_state(2, 0);
    params.master_seed = 99;
    params.threads = 1;
    RBRun serial = run_standard_rb(group, noise, params);
    params.threads = 4;
    RBRun parallel = run_standard_rb(group, noise, params);
    for (std::size_t k = 0; k < serial.points.size(); ++k)
        for (std::size_t i = 0; i < serial.points[k].fidelities.size(); ++i)
            CHECK(serial.points[k].fidelities[i] == parallel.points[k].fidelities[i]);
}

TEST_CASE("exact expectation curve") {
    auto group = make_mu_group(2, 4);
    enumerate_group(group, 1000);
    auto units = unitaries_of(group.enumerated);
    Mat rho = basis_state(2, 0);
    Rng rng(4);
    Mat effect = basis_state(2, 0);
    // Identity noise: the curve is tr(rho E) at every m.
    auto flat = exact_expectation_curve(superop_identity(2), units, rho, effect, {1, 5, 9});
    for (double f : flat) CHECK(f == doctest::Approx(1.0).epsilon(1e-12));
    // Known spectrum: depolarize sigma = I/2 gives 1/2 + p^{m+1}/2.
    NoiseChannel noise = make_noise(DepolarizeToState{0.9, Mat::Identity(2, 2) / 2.0}, 2, rng);
    auto curve = exact_expectation_curve(*noise.superop, units, rho, effect, {1, 2, 3});
    for (std::size_t k = 0; k < curve.size(); ++k)
        CHECK(curve[k] ==
              doctest::Approx(0.5 + 0.5 * std::pow(0.9, static_cast<int>(k) + 2)).epsilon(1e-10));
}

TEST_CASE("degenerate walk: singleton identity generator set") {
    BenchmarkGroup<MonomialOps> group;
    group.identity = mu_identity(2, 4);
    group.generators.elements = {mu_identity(2, 4)};
    group.generators.closed_under_inversion = true;
    group.dim = 2;
    Rng rng(5);
    NoiseChannel noise = make_noise(DepolarizeToState{0.7, random_density(2, rng)}, 2, rng);
    RBParams params;
    params.m_values = {1, 2, 3};
    params.sequences_per_length = 3;
    params.rho = basis_state(2, 0);
    params.effect = basis_state(2, 0);
    params.master_seed = 1;
    RBRun run = run_approx_rb(group, noise, params, 1);
    for (const auto& point : run.points) {
        Mat evolved = apply_superop(superop_power(*noise.superop, point.m + 1), params.rho);
        CHECK(point.mean ==
              doctest::Approx((evolved * params.effect).trace().real()).epsilon(1e-10));
        CHECK(point.std_err < 1e-14);
    }
}

TEST_CASE("protocol preconditions") {
    auto group = make_mu_group(2, 4);
    Rng rng(6);
    NoiseChannel noise = make_noise(IdentityNoise{}, 2, rng);
    RBParams params;
    params.m_values = {1, 2, 3};
    params.sequences_per_length = 2;
    params.rho = basis_state(2, 0);
    params.effect = basis_state(2, 0);
    CHECK_THROWS_AS(run_approx_rb(group, noise, params, 0), std::invalid_argument);
    CHECK_THROWS_AS(run_generator_rb(group, noise, params, 0), std::invalid_argument);
    BenchmarkGroup<MonomialOps> no_sampler = group;
    no_sampler.sample_uniform = nullptr;
    CHECK_THROWS_AS(run_standard_rb(no_sampler, noise, params), std::invalid_argument);
}

TEST_CASE("clifford group assembly") {
    auto group = make_clifford_group(1);
    CHECK(group.enumerated.size() == 24);
    CHECK(group.dim == 2);
    Rng rng(7);
    auto g = group.sample_uniform(rng);
    CHECK(g.matrix.rows() == 2);
    CHECK_THROWS_AS(make_clifford_group(2, 100), GroupTooLargeError);
}
