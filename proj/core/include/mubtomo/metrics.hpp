#pragma once

#include "mubtomo/states.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace mubtomo {

struct SummaryStats {
    double median = 0.0;
    double mean = 0.0;
    double std = 0.0;        // sample standard deviation (n-1 denominator)
    double median_se = 0.0;  // bootstrap standard error of the median
    std::size_t n = 0;
};

/// Uhlmann fidelity F = (Tr sqrt(sqrt(sigma) rho sqrt(sigma)))^2, computed
/// from the eigenvalues of sqrt(sigma) rho sqrt(sigma) with negatives clipped
/// to zero. Result clamped to [0, 1].
double fidelity(const DensityMatrix& sigma, const DensityMatrix& rho);

/// 1 - fidelity.
double infidelity(const DensityMatrix& sigma, const DensityMatrix& rho);

/// Tr rho^2, in [1/D, 1].
double purity(const DensityMatrix& rho);

/// Median (midpoint for even n), mean, sample std, and a bootstrap standard
/// error of the median (1000 resamples, fixed internal seed so results are
/// reproducible). Throws on empty input.
SummaryStats summarize(const std::vector<double>& samples);

/// Least-squares slope of ln(infidelity) against ln(N) for (N, infidelity)
/// pairs. Requires at least two distinct N values and positive inputs.
double fit_power_law(const std::vector<std::pair<double, double>>& points);

}  // namespace mubtomo
