#pragma once

#include "mubtomo/bases.hpp"
#include "mubtomo/simulate.hpp"
#include "mubtomo/states.hpp"

#include <vector>

namespace mubtomo {

struct MleOptions {
    double tolerance = 1e-10;    // absolute log-likelihood change at convergence
    int max_iterations = 100000;
    double dilution = 0.5;       // initial mixing weight of the update operator
};

enum class ReconstructionMethod { Mle, LinearInversion };

struct ReconstructionResult {
    DensityMatrix rho_hat;
    double log_likelihood = 0.0;
    int iterations = 0;
    bool converged = false;
    ReconstructionMethod method = ReconstructionMethod::Mle;
    // Log-likelihood after the initial state and after each accepted step;
    // non-decreasing by construction.
    std::vector<double> log_likelihood_history;
};

/// Multinomial log-likelihood sum_b sum_g n_g ln p_g. Outcomes with zero
/// counts contribute nothing; probabilities are floored at 1e-15 where
/// counts are positive.
double log_likelihood(const DensityMatrix& rho, const CountData& counts,
                      const MeasurementScheme& scheme);

/// Diluted fixed-point likelihood ascent: with R = sum (n_g / p_g) O_g
/// normalized by the total count, iterate
///   rho <- normalize[ ((1-e)I + eR) rho ((1-e)I + eR) ]
/// from the maximally mixed state. Steps that would lower the likelihood are
/// rejected and the dilution halved, so accepted log-likelihoods never
/// decrease. Stops when the accepted improvement drops below the tolerance.
ReconstructionResult mle_reconstruct(const CountData& counts, const MeasurementScheme& scheme,
                                     const MleOptions& opts = {});

struct LinearInversionResult {
    ComplexMatrix raw;       // Hermitian, unit trace, possibly non-PSD
    DensityMatrix physical;  // raw repaired via project_to_physical
};

/// Least-squares inversion of the per-basis frequencies against the scheme's
/// operators in an orthonormal Hermitian coordinate basis, with trace fixed
/// to one. Throws if the scheme is incomplete or any basis has zero counts.
LinearInversionResult linear_inversion(const CountData& counts,
                                       const MeasurementScheme& scheme);

/// Expected linear-inversion infidelity at the maximally mixed state for a
/// total budget of n_total counts, from the multinomial covariance of the
/// frequencies propagated through the inversion (second-order expansion of
/// 1 - F around I/D).
double predicted_mixed_infidelity(const MeasurementScheme& scheme, double n_total);

/// Ratio predicted_mixed_infidelity(a) / predicted_mixed_infidelity(b);
/// independent of n_total since both scale as 1/N.
double predict_mixed_ratio(const MeasurementScheme& scheme_a, const MeasurementScheme& scheme_b,
                           double n_total);

}  // namespace mubtomo
