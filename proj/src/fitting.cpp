#include "rbsim/fitting.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rbsim/rb.hpp"

namespace rbsim {

namespace {

constexpr double kGolden = 0.6180339887498949;
constexpr double kCollapseGap = 1e-3;

struct WeightedData {
    std::vector<double> m;
    std::vector<double> y;
    std::vector<double> w;
};

WeightedData prepare(std::span<const DecaySample> samples, const FitOptions& opts,
                     std::size_t min_count) {
    if (samples.size() < min_count)
        throw std::invalid_argument("need at least " + std::to_string(min_count) +
                                    " samples at distinct m");
    WeightedData data;
    for (const auto& s : samples) {
        for (double m : data.m)
            if (m == static_cast<double>(s.m))
                throw std::invalid_argument("duplicate sequence length in fit data");
        data.m.push_back(static_cast<double>(s.m));
        data.y.push_back(s.mean);
        data.w.push_back(!opts.uniform_weights && s.std_err > 0.0
                             ? 1.0 / (s.std_err * s.std_err)
                             : 1.0);
    }
    return data;
}

/// Weighted linear least squares for the coefficients given fixed rates;
/// returns the weighted residual sum of squares.
double linear_solve(const WeightedData& data, const std::vector<double>& lambdas,
                    Eigen::VectorXd& coeffs) {
    const std::size_t rows = data.m.size();
    const std::size_t cols = lambdas.size() + 1;
    Eigen::MatrixXd design(rows, cols);
    Eigen::VectorXd target(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        const double sw = std::sqrt(data.w[i]);
        design(i, 0) = sw;
        for (std::size_t k = 0; k < lambdas.size(); ++k)
            design(i, k + 1) = sw * std::pow(lambdas[k], data.m[i]);
        target(i) = sw * data.y[i];
    }
    coeffs = design.colPivHouseholderQr().solve(target);
    return (design * coeffs - target).squaredNorm();
}

double rms_residual(const WeightedData& data, double a0, const std::vector<DecayTerm>& terms) {
    double ss = 0.0;
    for (std::size_t i = 0; i < data.m.size(); ++i) {
        double fit = a0;
        for (const auto& t : terms) fit += t.a * std::pow(t.lambda, data.m[i]);
        ss += (data.y[i] - fit) * (data.y[i] - fit);
    }
    return std::sqrt(ss / static_cast<double>(data.m.size()));
}

bool constant_data(const WeightedData& data) {
    const double lo = *std::min_element(data.y.begin(), data.y.end());
    const double hi = *std::max_element(data.y.begin(), data.y.end());
    return hi - lo < 1e-12;
}

double golden_refine(const std::function<double(double)>& loss, double lo, double hi,
                     double tol) {
    double a = lo, b = hi;
    double x1 = b - kGolden * (b - a);
    double x2 = a + kGolden * (b - a);
    double f1 = loss(x1), f2 = loss(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kGolden * (b - a);
            f1 = loss(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kGolden * (b - a);
            f2 = loss(x2);
        }
    }
    return (a + b) / 2.0;
}

}  // namespace

DecayFit fit_single_decay(std::span<const DecaySample> samples, const FitOptions& opts) {
    WeightedData data = prepare(samples, opts, 4);
    DecayFit fit;
    fit.order = 1;
    if (constant_data(data)) {
        fit.a0 = data.y[0];
        fit.terms = {{0.0, 0.0}};
        fit.unidentifiable = true;
        return fit;
    }
    auto loss = [&](double lambda) {
        Eigen::VectorXd coeffs;
        return linear_solve(data, {lambda}, coeffs);
    };
    double best = 0.0, best_loss = loss(0.0);
    for (int i = 1; i <= 512; ++i) {
        const double lambda = static_cast<double>(i) / 512.0;
        const double l = loss(lambda);
        if (l < best_loss) {
            best_loss = l;
            best = lambda;
        }
    }
    const double lo = std::max(0.0, best - 1.0 / 512.0);
    const double hi = std::min(1.0, best + 1.0 / 512.0);
    const double lambda = golden_refine(loss, lo, hi, 1e-12);
    Eigen::VectorXd coeffs;
    linear_solve(data, {lambda}, coeffs);
    fit.a0 = coeffs(0);
    fit.terms = {{coeffs(1), lambda}};
    fit.residual_rms = rms_residual(data, fit.a0, fit.terms);
    return fit;
}

DecayFit fit_double_decay(std::span<const DecaySample> samples, const FitOptions& opts) {
    WeightedData data = prepare(samples, opts, 6);
    if (constant_data(data)) {
        DecayFit fit = fit_single_decay(samples, opts);
        fit.order = 2;
        return fit;
    }
    auto loss = [&](double l1, double l2) {
        Eigen::VectorXd coeffs;
        return linear_solve(data, {l1, l2}, coeffs);
    };
    double best1 = 1.0, best2 = 0.0;
    double best_loss = loss(best1, best2);
    constexpr int kGrid = 64;
    for (int i = 0; i <= kGrid; ++i) {
        for (int j = 0; j < i; ++j) {
            const double l1 = static_cast<double>(i) / kGrid;
            const double l2 = static_cast<double>(j) / kGrid;
            const double l = loss(l1, l2);
            // Ties break toward the lexicographically smallest pair.
            if (l < best_loss - 1e-15) {
                best_loss = l;
                best1 = l1;
                best2 = l2;
            }
        }
    }
    // Coordinate golden-section refinement.
    const double cell = 1.0 / kGrid;
    for (int pass = 0; pass < 500; ++pass) {
        const double prev1 = best1, prev2 = best2;
        best1 = golden_refine([&](double l) { return loss(l, best2); },
                              std::max(0.0, best1 - cell), std::min(1.0, best1 + cell), 1e-12);
        best2 = golden_refine([&](double l) { return loss(best1, l); },
                              std::max(0.0, best2 - cell), std::min(1.0, best2 + cell), 1e-12);
        if (std::abs(best1 - prev1) < 1e-12 && std::abs(best2 - prev2) < 1e-12) break;
    }
    // Degenerate data admits zero-residual minima with split rates (one
    // coefficient near zero), so collapse both on rate proximity and when
    // the second exponential does not beat the single fit. With
    // inverse-variance weights the residuals are in standard-error units,
    // so an improvement of chi-square(2) scale is pure noise.
    DecayFit single = fit_single_decay(samples, opts);
    Eigen::VectorXd single_coeffs;
    const double single_rss =
        single.unidentifiable
            ? 0.0
            : linear_solve(data, {single.terms[0].lambda}, single_coeffs);
    const double double_rss = loss(best1, best2);
    bool weighted = false;
    for (const auto& s : samples)
        if (!opts.uniform_weights && s.std_err > 0.0) weighted = true;
    const double slack = weighted ? 9.0 : 1e-12 * (1.0 + single_rss);
    bool insignificant = false;
    if (weighted) {
        // Whitened design: coefficient covariance is (D^T D)^-1, so a rate
        // whose amplitude is within 5 sigma of zero is pure noise.
        Eigen::VectorXd c;
        linear_solve(data, {best1, best2}, c);
        Eigen::MatrixXd design(data.m.size(), 3);
        for (std::size_t i = 0; i < data.m.size(); ++i) {
            const double sw = std::sqrt(data.w[i]);
            design(static_cast<Eigen::Index>(i), 0) = sw;
            design(static_cast<Eigen::Index>(i), 1) = sw * std::pow(best1, data.m[i]);
            design(static_cast<Eigen::Index>(i), 2) = sw * std::pow(best2, data.m[i]);
        }
        Eigen::MatrixXd cov = (design.transpose() * design).inverse();
        for (int k = 1; k <= 2; ++k)
            if (std::abs(c(k)) < 5.0 * std::sqrt(std::max(cov(k, k), 0.0)))
                insignificant = true;
    }
    if (std::abs(best1 - best2) < kCollapseGap || insignificant ||
        single_rss <= double_rss + slack) {
        single.order = 2;
        single.collapsed = true;
        return single;
    }
    Eigen::VectorXd coeffs;
    linear_solve(data, {best1, best2}, coeffs);
    DecayFit fit;
    fit.order = 2;
    fit.a0 = coeffs(0);
    fit.terms = {{coeffs(1), std::max(best1, best2)}, {coeffs(2), std::min(best1, best2)}};
    if (fit.terms[0].lambda < fit.terms[1].lambda) std::swap(fit.terms[0], fit.terms[1]);
    fit.residual_rms = rms_residual(data, fit.a0, fit.terms);
    return fit;
}

FidelityRange fidelity_from_fit(const DecayFit& fit, const IrrepProfile& profile, int d) {
    const std::size_t nontrivial = profile.blocks.size() - 1;
    if (fit.terms.size() > nontrivial)
        throw std::invalid_argument("fit order exceeds the number of non-trivial blocks");
    std::vector<double> estimates = {1.0};
    for (std::size_t i = 0; i < nontrivial; ++i) {
        const auto& term = fit.terms[std::min(i, fit.terms.size() - 1)];
        estimates.push_back(term.lambda);
    }
    std::sort(estimates.rbegin(), estimates.rend());
    auto [fe_min, fe_max] = fidelity_bounds(estimates, profile);
    FidelityRange range;
    range.fe_min = fe_min;
    range.fe_max = fe_max;
    range.favg_min = average_fidelity_from_entanglement(fe_min, d);
    range.favg_max = average_fidelity_from_entanglement(fe_max, d);
    return range;
}

std::vector<DecaySample> samples_from_run(const RBRun& run) {
    std::vector<DecaySample> samples;
    samples.reserve(run.points.size());
    for (const auto& point : run.points)
        samples.push_back({point.m, point.mean, point.std_err,
                           static_cast<long>(point.fidelities.size())});
    return samples;
}

}  // namespace rbsim
