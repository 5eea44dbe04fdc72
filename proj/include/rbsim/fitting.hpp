#pragma once

#include <span>
#include <vector>

#include "rbsim/twirl.hpp"

namespace rbsim {

struct DecaySample {
    int m = 0;
    double mean = 0.0;
    double std_err = 0.0;
    long sequences = 0;
};

struct DecayTerm {
    double a = 0.0;
    double lambda = 0.0;
};

struct DecayFit {
    double a0 = 0.0;
    std::vector<DecayTerm> terms;  // sorted by descending lambda
    double residual_rms = 0.0;
    int order = 0;
    /// Constant data: a1 = 0 and lambda is meaningless.
    bool unidentifiable = false;
    /// Double fit whose two rates came closer than 1e-3 and was collapsed
    /// to a single exponential.
    bool collapsed = false;
};

struct FitOptions {
    bool uniform_weights = false;  // default: inverse-variance when std_err > 0
};

/// Weighted separable least squares for a0 + a1 * lambda^m: 512-point grid
/// over lambda in [0, 1], then golden-section refinement. Needs >= 4
/// samples at distinct m.
DecayFit fit_single_decay(std::span<const DecaySample> samples, const FitOptions& opts = {});

/// Two-rate model a0 + a1 l1^m + a2 l2^m: 64x64 grid over l1 > l2 with
/// closed-form linear coefficients, then coordinate golden-section
/// refinement to 1e-10. Rates closer than 1e-3 collapse to the single fit.
DecayFit fit_double_decay(std::span<const DecaySample> samples, const FitOptions& opts = {});

struct FidelityRange {
    double fe_min = 0.0;
    double fe_max = 0.0;
    double favg_min = 0.0;
    double favg_max = 0.0;
};

/// Prepends the pinned trivial eigenvalue 1, pairs fitted rates with block
/// dimensions by rearrangement order, and converts to average fidelity. A
/// fit of lower order than the profile (collapsed/degenerate) replicates
/// its rate across the missing blocks.
FidelityRange fidelity_from_fit(const DecayFit& fit, const IrrepProfile& profile, int d);

std::vector<DecaySample> samples_from_run(const struct RBRun& run);

}  // namespace rbsim
