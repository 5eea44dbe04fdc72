#pragma once

#include <Eigen/Dense>
#include <span>
#include <stdexcept>
#include <vector>

#include "rbsim/channels.hpp"
#include "rbsim/group.hpp"
#include "rbsim/rng.hpp"

namespace rbsim {

struct DistributionVector {
    std::vector<double> p;
    std::size_t size() const { return p.size(); }
};

double tv_distance(const DistributionVector& a, const DistributionVector& b);

/// Natural-log relative entropy; +infinity when a charges a b-null point.
double relative_entropy(const DistributionVector& a, const DistributionVector& b);

/// Row-stochastic (and doubly stochastic) transition matrix of the walk:
/// pi(g1, g2) = nu(g2 g1^-1) with nu uniform on the generators.
template <class Ops>
Eigen::MatrixXd transition_matrix(const GeneratorSet<typename Ops::Element>& generators,
                                  const std::vector<typename Ops::Element>& group) {
    const std::size_t size = group.size();
    auto index_of = [&](const typename Ops::Element& e) -> std::size_t {
        for (std::size_t i = 0; i < size; ++i)
            if (Ops::equal(e, group[i])) return i;
        throw std::runtime_error("walk stepped outside the enumerated group");
    };
    Eigen::MatrixXd pi = Eigen::MatrixXd::Zero(size, size);
    const double w = 1.0 / static_cast<double>(generators.elements.size());
    for (std::size_t i = 0; i < size; ++i) {
        for (const auto& a : generators.elements)
            pi(i, index_of(Ops::multiply(a, group[i]))) += w;
    }
    return pi;
}

/// Distribution of the walk after `steps` left-multiplications starting
/// from the point mass at `start_index`.
DistributionVector exact_walk_distribution(const Eigen::MatrixXd& transition,
                                           std::size_t start_index, long steps);

DistributionVector uniform_distribution(std::size_t size);

struct NonConvergingWalkError : std::runtime_error {
    NonConvergingWalkError()
        : std::runtime_error(
              "walk did not reach the target TV distance within the step cap; "
              "use a lazy generator set (identity included) to guarantee aperiodicity") {}
};

/// Smallest n with max-over-starts TV(pi^n delta_g, uniform) <= eps.
/// Geometric advance followed by binary search; TV is monotone for lazy
/// walks.
long mixing_time(const Eigen::MatrixXd& transition, double eps, long step_cap = 1 << 20);

/// Worst-case TV to uniform after n steps (max over point-mass starts).
double worst_case_tv(const Eigen::MatrixXd& transition, long n);

/// 4 * sqrt(log|G| / (1 - |G|^-1) * sum eps_k), natural log.
double approx_twirl_bound(std::span<const double> epsilons, std::size_t group_size);

template <class Ops>
struct WalkState {
    typename Ops::Element current;
    long steps_taken = 0;
};

template <class Ops>
void walk_step(WalkState<Ops>& state, const GeneratorSet<typename Ops::Element>& generators,
               Rng& rng) {
    std::uniform_int_distribution<std::size_t> pick(0, generators.elements.size() - 1);
    state.current = Ops::multiply(generators.elements[pick(rng)], state.current);
    ++state.steps_taken;
}

template <class Ops>
typename Ops::Element walk_endpoint(const typename Ops::Element& start,
                                    const GeneratorSet<typename Ops::Element>& generators,
                                    long length, Rng& rng) {
    WalkState<Ops> state{start, 0};
    for (long i = 0; i < length; ++i) walk_step<Ops>(state, generators, rng);
    return state.current;
}

/// Exact nu-twirl to the power m for walk-sampled gate sequences: each gate
/// U_k is an independent endpoint of an L-step walk from the identity, and
/// D_k = U_k ... U_1. Computed by dynamic programming over the enumerated
/// group; the k = 1 factor is applied first.
Mat nu_twirl_power(const Mat& superop, const std::vector<Mat>& group_unitaries,
                   const Eigen::MatrixXd& transition, long walk_length, int m,
                   std::size_t identity_index);

}  // namespace rbsim
