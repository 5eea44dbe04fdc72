#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <future>
#include <numeric>
#include <thread>
#include <vector>

#include "rbsim/channels.hpp"
#include "rbsim/group.hpp"
#include "rbsim/twirl.hpp"
#include "rbsim/walks.hpp"

namespace rbsim {

/// A concrete finite group with its unitary representation, packaged for
/// the RB protocols. `sample_uniform` draws exact Haar samples and may be
/// empty when no O(d) sampler exists (Clifford beyond the enumeration cap).
template <class Ops>
struct BenchmarkGroup {
    using Element = typename Ops::Element;
    Element identity;
    GeneratorSet<Element> generators;
    std::function<Element(Rng&)> sample_uniform;
    std::vector<Element> enumerated;  // empty unless enumerate() was called
    int dim = 0;
};

BenchmarkGroup<MonomialOps> make_mu_group(int d, int n);

/// Enumerates the group by BFS (|C(n)| = 24 for n = 1, 11520 for n = 2) and
/// samples uniformly from the element list. Throws GroupTooLargeError when
/// the group exceeds `cap`; use walk sampling in that case.
BenchmarkGroup<CliffordOps> make_clifford_group(int qubits, std::size_t cap = 200000);

template <class Ops>
void enumerate_group(BenchmarkGroup<Ops>& group, std::size_t cap) {
    if (group.enumerated.empty()) group.enumerated = bfs_enumerate<Ops>(group.generators, cap);
}

struct RBParams {
    std::vector<int> m_values;
    int sequences_per_length = 100;  // M
    Mat rho;
    Mat effect;
    std::uint64_t master_seed = 0;
    int threads = 1;
};

struct RBPoint {
    int m = 0;
    std::vector<double> fidelities;
    double mean = 0.0;
    double std_err = 0.0;
};

struct RBRun {
    std::vector<RBPoint> points;
};

void finalize_point(RBPoint& point);

/// P(|F - Fbar| >= eps) <= exp(-2 M eps^2).
double hoeffding_bound(long sequences, double eps);

/// tr((Twirl(T)^m o T)(rho) E) for each m. The trailing T matches the
/// simulated sequences, which apply the noise channel before every gate
/// including the first.
std::vector<double> exact_expectation_curve(const Mat& noise_superop,
                                            const std::vector<Mat>& group_unitaries,
                                            const Mat& rho, const Mat& effect,
                                            const std::vector<int>& m_values);

namespace detail {

template <class Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
    if (threads <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

/// Simulates S = o_{j} (U_{g_j} o T) applied to rho: noise before each gate.
template <class Ops>
Mat simulate_sequence(const std::vector<typename Ops::Element>& gates, const NoiseChannel& noise,
                      Mat rho) {
    for (const auto& g : gates) {
        rho = noise.apply(rho);
        rho = Ops::conjugate(g, rho);
    }
    return rho;
}

template <class Ops>
RBRun run_rb_impl(const BenchmarkGroup<Ops>& group, const NoiseChannel& noise,
                  const RBParams& params,
                  const std::function<typename Ops::Element(const BenchmarkGroup<Ops>&, Rng&)>& draw,
                  int burn_in) {
    using Element = typename Ops::Element;
    RBRun run;
    run.points.resize(params.m_values.size());
    for (std::size_t k = 0; k < params.m_values.size(); ++k) {
        RBPoint& point = run.points[k];
        point.m = params.m_values[k];
        point.fidelities.resize(params.sequences_per_length);
        detail::parallel_for(
            static_cast<std::size_t>(params.sequences_per_length), params.threads,
            [&](std::size_t i) {
                Rng rng = make_stream_rng(params.master_seed,
                                          static_cast<std::uint64_t>(point.m), i);
                const int total = point.m + burn_in;
                std::vector<Element> gates;
                gates.reserve(total + 1);
                Element product = group.identity;
                for (int j = 0; j < total; ++j) {
                    Element g = draw(group, rng);
                    product = Ops::multiply(g, product);
                    gates.push_back(std::move(g));
                }
                gates.push_back(Ops::inverse(product));
                Mat out = simulate_sequence<Ops>(gates, noise, params.rho);
                point.fidelities[i] = (out * params.effect).trace().real();
            });
        finalize_point(point);
    }
    return run;
}

}  // namespace detail

/// Standard protocol: m i.i.d. Haar gates plus the closing inverse.
template <class Ops>
RBRun run_standard_rb(const BenchmarkGroup<Ops>& group, const NoiseChannel& noise,
                      const RBParams& params) {
    if (!group.sample_uniform)
        throw std::invalid_argument(
            "exact Haar sampling is not available for this group; use walk sampling "
            "(run_approx_rb), which is guaranteed accurate for mixed walks");
    std::function<typename Ops::Element(const BenchmarkGroup<Ops>&, Rng&)> draw =
        [](const BenchmarkGroup<Ops>& g, Rng& rng) { return g.sample_uniform(rng); };
    return detail::run_rb_impl<Ops>(group, noise, params, draw, 0);
}

/// Approximate-sampling protocol: every gate is the endpoint of a fresh
/// independent walk of the given length from the identity.
template <class Ops>
RBRun run_approx_rb(const BenchmarkGroup<Ops>& group, const NoiseChannel& noise,
                    const RBParams& params, long walk_length) {
    if (walk_length < 1) throw std::invalid_argument("walk length must be >= 1");
    std::function<typename Ops::Element(const BenchmarkGroup<Ops>&, Rng&)> draw =
        [walk_length](const BenchmarkGroup<Ops>& g, Rng& rng) {
            return walk_endpoint<Ops>(g.identity, g.generators, walk_length, rng);
        };
    return detail::run_rb_impl<Ops>(group, noise, params, draw, 0);
}

/// Generator protocol: b + m uniform generator gates, one closing inverse;
/// the first b gates act as state preparation.
template <class Ops>
RBRun run_generator_rb(const BenchmarkGroup<Ops>& group, const NoiseChannel& noise,
                       const RBParams& params, int burn_in) {
    if (burn_in < 1) throw std::invalid_argument("burn-in must be >= 1");
    if (!group.generators.closed_under_inversion)
        throw std::invalid_argument("generator set must be closed under inversion");
    std::function<typename Ops::Element(const BenchmarkGroup<Ops>&, Rng&)> draw =
        [](const BenchmarkGroup<Ops>& g, Rng& rng) {
            std::uniform_int_distribution<std::size_t> pick(0, g.generators.elements.size() - 1);
            return g.generators.elements[pick(rng)];
        };
    return detail::run_rb_impl<Ops>(group, noise, params, draw, burn_in);
}

}  // namespace rbsim
