#include "mubtomo/metrics.hpp"

#include "mubtomo/linalg.hpp"
#include "mubtomo/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mubtomo {

namespace {

double median_of_sorted(const std::vector<double>& sorted) {
    const std::size_t n = sorted.size();
    if (n % 2 == 1) {
        return sorted[n / 2];
    }
    return (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0;
}

}  // namespace

double fidelity(const DensityMatrix& sigma, const DensityMatrix& rho) {
    if (sigma.dim() != rho.dim()) {
        throw std::invalid_argument("fidelity: states have different dimensions");
    }
    const ComplexMatrix root = sqrt_psd(sigma.matrix());
    ComplexMatrix inner = root * rho.matrix() * root;
    inner = (inner + inner.adjoint()) / 2.0;
    const EigenSystem es = eig_hermitian(inner);
    // The square root amplifies eigenvalue roundoff (sqrt(1e-16) = 1e-8), so
    // clip anything below a relative floor along with the negatives.
    const double floor = 1e-12 * std::max(es.eigenvalues[0], 0.0);
    double sum = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues.size(); ++i) {
        if (es.eigenvalues[i] > floor) {
            sum += std::sqrt(es.eigenvalues[i]);
        }
    }
    return std::clamp(sum * sum, 0.0, 1.0);
}

double infidelity(const DensityMatrix& sigma, const DensityMatrix& rho) {
    return 1.0 - fidelity(sigma, rho);
}

double purity(const DensityMatrix& rho) {
    return trace_product(rho.matrix(), rho.matrix()).real();
}

SummaryStats summarize(const std::vector<double>& samples) {
    if (samples.empty()) {
        throw std::invalid_argument("summarize: empty sample list");
    }
    SummaryStats stats;
    stats.n = samples.size();

    std::vector<double> sorted = samples;
    std::sort(sorted.begin(), sorted.end());
    stats.median = median_of_sorted(sorted);

    double sum = 0.0;
    for (double x : samples) {
        sum += x;
    }
    stats.mean = sum / static_cast<double>(samples.size());

    double ss = 0.0;
    for (double x : samples) {
        ss += (x - stats.mean) * (x - stats.mean);
    }
    stats.std = samples.size() > 1
                    ? std::sqrt(ss / static_cast<double>(samples.size() - 1))
                    : 0.0;

    // Bootstrap SE of the median with a fixed internal stream keyed on the
    // sample size, keeping repeated runs byte-identical.
    constexpr std::size_t kResamples = 1000;
    const std::size_t n = samples.size();
    RngStream rng(0x6d656469616eULL, n);
    std::vector<double> medians;
    medians.reserve(kResamples);
    std::vector<double> resample(n);
    for (std::size_t r = 0; r < kResamples; ++r) {
        for (std::size_t i = 0; i < n; ++i) {
            resample[i] = sorted[static_cast<std::size_t>(rng.next_u64() % n)];
        }
        std::sort(resample.begin(), resample.end());
        medians.push_back(median_of_sorted(resample));
    }
    double bm = 0.0;
    for (double m : medians) {
        bm += m;
    }
    bm /= static_cast<double>(kResamples);
    double bss = 0.0;
    for (double m : medians) {
        bss += (m - bm) * (m - bm);
    }
    stats.median_se = std::sqrt(bss / static_cast<double>(kResamples - 1));
    return stats;
}

double fit_power_law(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 2) {
        throw std::invalid_argument("fit_power_law: need at least two points");
    }
    std::vector<double> xs, ys;
    xs.reserve(points.size());
    ys.reserve(points.size());
    for (const auto& [n, y] : points) {
        if (n <= 0.0 || y <= 0.0) {
            throw std::invalid_argument("fit_power_law: N and infidelity must be positive");
        }
        xs.push_back(std::log(n));
        ys.push_back(std::log(y));
    }
    const double x_mean = std::accumulate(xs.begin(), xs.end(), 0.0) /
                          static_cast<double>(xs.size());
    const double y_mean = std::accumulate(ys.begin(), ys.end(), 0.0) /
                          static_cast<double>(ys.size());
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - x_mean) * (xs[i] - x_mean);
        sxy += (xs[i] - x_mean) * (ys[i] - y_mean);
    }
    if (sxx == 0.0) {
        throw std::invalid_argument("fit_power_law: need at least two distinct N values");
    }
    return sxy / sxx;
}

}  // namespace mubtomo
