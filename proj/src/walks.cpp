#include "rbsim/walks.hpp"

#include <cmath>
#include <limits>

#include "rbsim/channels.hpp"

namespace rbsim {

double tv_distance(const DistributionVector& a, const DistributionVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("distribution index sets differ");
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a.p[i] - b.p[i]);
    return sum / 2.0;
}

double relative_entropy(const DistributionVector& a, const DistributionVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("distribution index sets differ");
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a.p[i] == 0.0) continue;
        if (b.p[i] == 0.0) return std::numeric_limits<double>::infinity();
        sum += a.p[i] * std::log(a.p[i] / b.p[i]);
    }
    return sum;
}

DistributionVector uniform_distribution(std::size_t size) {
    return DistributionVector{std::vector<double>(size, 1.0 / static_cast<double>(size))};
}

DistributionVector exact_walk_distribution(const Eigen::MatrixXd& transition,
                                           std::size_t start_index, long steps) {
    Eigen::RowVectorXd mu = Eigen::RowVectorXd::Zero(transition.rows());
    mu(static_cast<Eigen::Index>(start_index)) = 1.0;
    for (long s = 0; s < steps; ++s) mu = mu * transition;
    DistributionVector out;
    out.p.assign(mu.data(), mu.data() + mu.size());
    return out;
}

double worst_case_tv(const Eigen::MatrixXd& transition, long n) {
    Eigen::MatrixXd pn = Eigen::MatrixXd::Identity(transition.rows(), transition.cols());
    Eigen::MatrixXd base = transition;
    long m = n;
    while (m > 0) {
        if (m & 1) pn = pn * base;
        base = base * base;
        m >>= 1;
    }
    const double unif = 1.0 / static_cast<double>(transition.rows());
    double worst = 0.0;
    for (Eigen::Index i = 0; i < pn.rows(); ++i) {
        double tv = 0.0;
        for (Eigen::Index j = 0; j < pn.cols(); ++j) tv += std::abs(pn(i, j) - unif);
        worst = std::max(worst, tv / 2.0);
    }
    return worst;
}

long mixing_time(const Eigen::MatrixXd& transition, double eps, long step_cap) {
    if (eps <= 0.0 || eps >= 1.0) throw std::invalid_argument("eps must lie in (0, 1)");
    long hi = 1;
    while (worst_case_tv(transition, hi) > eps) {
        hi *= 2;
        if (hi > step_cap) throw NonConvergingWalkError();
    }
    long lo = hi / 2;  // worst_case_tv(lo) > eps (or lo == 0)
    while (lo + 1 < hi) {
        long mid = lo + (hi - lo) / 2;
        if (worst_case_tv(transition, mid) <= eps)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

double approx_twirl_bound(std::span<const double> epsilons, std::size_t group_size) {
    if (group_size < 2) throw std::invalid_argument("group size must be >= 2");
    double sum = 0.0;
    for (double e : epsilons) {
        if (e < 0.0) throw std::invalid_argument("epsilons must be nonnegative");
        sum += e;
    }
    const double g = static_cast<double>(group_size);
    return 4.0 * std::sqrt(std::log(g) / (1.0 - 1.0 / g) * sum);
}

Mat nu_twirl_power(const Mat& superop, const std::vector<Mat>& group_unitaries,
                   const Eigen::MatrixXd& transition, long walk_length, int m,
                   std::size_t identity_index) {
    const std::size_t size = group_unitaries.size();
    // One-gate law and the transition kernel of the D_k chain.
    Eigen::MatrixXd step = Eigen::MatrixXd::Identity(size, size);
    {
        Eigen::MatrixXd base = transition;
        long l = walk_length;
        while (l > 0) {
            if (l & 1) step = step * base;
            base = base * base;
            l >>= 1;
        }
    }
    std::vector<Mat> conj(size);
    for (std::size_t i = 0; i < size; ++i)
        conj[i] = adjoint_channel_dual(group_unitaries[i]) * superop *
                  adjoint_channel(group_unitaries[i]);
    // A_k(g) = E[ C_{D_k} ... C_{D_1} ; D_k = g ]
    std::vector<Mat> layer(size);
    for (std::size_t g = 0; g < size; ++g)
        layer[g] = step(static_cast<Eigen::Index>(identity_index), static_cast<Eigen::Index>(g)) *
                   conj[g];
    for (int k = 2; k <= m; ++k) {
        std::vector<Mat> next(size, Mat::Zero(superop.rows(), superop.cols()));
        for (std::size_t g2 = 0; g2 < size; ++g2) {
            Mat acc = Mat::Zero(superop.rows(), superop.cols());
            for (std::size_t g1 = 0; g1 < size; ++g1)
                acc += step(static_cast<Eigen::Index>(g1), static_cast<Eigen::Index>(g2)) *
                       layer[g1];
            next[g2] = conj[g2] * acc;
        }
        layer = std::move(next);
    }
    Mat total = Mat::Zero(superop.rows(), superop.cols());
    for (const Mat& a : layer) total += a;
    return total;
}

}  // namespace rbsim
