#include "mubtomo/estimate.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <stdexcept>

namespace mubtomo {

namespace {

constexpr double kProbFloor = 1e-15;   // log-likelihood floor
constexpr double kRatioFloor = 1e-12;  // floor for n/p terms in the update operator
constexpr double kMinDilution = 1e-7;

void check_counts_match_scheme(const CountData& counts, const MeasurementScheme& scheme) {
    if (counts.counts.size() != scheme.bases.size()) {
        throw std::invalid_argument("count data and scheme have different basis counts");
    }
    for (std::size_t b = 0; b < scheme.bases.size(); ++b) {
        if (counts.counts[b].size() != scheme.bases[b].elements.size()) {
            throw std::invalid_argument("count data and scheme have different outcome counts");
        }
    }
}

double log_likelihood_raw(const ComplexMatrix& rho, const CountData& counts,
                          const MeasurementScheme& scheme) {
    long double acc = 0.0L;
    for (std::size_t b = 0; b < scheme.bases.size(); ++b) {
        const auto& basis = scheme.bases[b];
        for (std::size_t g = 0; g < basis.elements.size(); ++g) {
            const std::int64_t n = counts.counts[b][g];
            if (n <= 0) {
                continue;
            }
            double p = trace_product(basis.elements[g].matrix, rho).real();
            p = std::max(p, kProbFloor);
            acc += static_cast<long double>(n) * std::log(static_cast<long double>(p));
        }
    }
    return static_cast<double>(acc);
}

}  // namespace

double log_likelihood(const DensityMatrix& rho, const CountData& counts,
                      const MeasurementScheme& scheme) {
    check_counts_match_scheme(counts, scheme);
    return log_likelihood_raw(rho.matrix(), counts, scheme);
}

ReconstructionResult mle_reconstruct(const CountData& counts, const MeasurementScheme& scheme,
                                     const MleOptions& opts) {
    check_counts_match_scheme(counts, scheme);
    if (opts.tolerance <= 0.0 || opts.max_iterations < 1) {
        throw std::invalid_argument("mle_reconstruct: bad options");
    }
    if (!(opts.dilution > 0.0) || opts.dilution > 1.0) {
        throw std::invalid_argument("mle_reconstruct: dilution must be in (0, 1]");
    }
    if (!certify_complete(scheme)) {
        throw std::invalid_argument("mle_reconstruct: scheme is not informationally complete");
    }
    const std::int64_t total = counts.observed_total();
    if (total <= 0) {
        throw std::invalid_argument("mle_reconstruct: no counts to fit");
    }

    const Eigen::Index d = scheme.dim;
    const ComplexMatrix identity = ComplexMatrix::Identity(d, d);
    ComplexMatrix rho = identity / static_cast<double>(d);
    double loglik = log_likelihood_raw(rho, counts, scheme);

    ReconstructionResult result{DensityMatrix(rho), loglik, 0, false,
                                ReconstructionMethod::Mle, {loglik}};
    double eps = opts.dilution;

    ComplexMatrix update(d, d);
    for (int pass = 0; pass < opts.max_iterations; ++pass) {
        update.setZero();
        for (std::size_t b = 0; b < scheme.bases.size(); ++b) {
            const auto& basis = scheme.bases[b];
            for (std::size_t g = 0; g < basis.elements.size(); ++g) {
                const std::int64_t n = counts.counts[b][g];
                if (n <= 0) {
                    continue;
                }
                const double p =
                    std::max(trace_product(basis.elements[g].matrix, rho).real(), kRatioFloor);
                update += (static_cast<double>(n) / p) * basis.elements[g].matrix;
            }
        }
        update /= static_cast<double>(total);

        const ComplexMatrix mixed = (1.0 - eps) * identity + eps * update;
        ComplexMatrix candidate = mixed * rho * mixed;
        candidate = (candidate + candidate.adjoint()) / 2.0;
        const double trace = candidate.trace().real();
        if (!(trace > 0.0)) {
            throw std::runtime_error("mle_reconstruct: iterate lost its trace");
        }
        candidate /= trace;

        const double candidate_loglik = log_likelihood_raw(candidate, counts, scheme);
        if (candidate_loglik >= loglik) {
            const double delta = candidate_loglik - loglik;
            rho = std::move(candidate);
            loglik = candidate_loglik;
            ++result.iterations;
            result.log_likelihood_history.push_back(loglik);
            if (delta < opts.tolerance) {
                result.converged = true;
                break;
            }
        } else {
            eps /= 2.0;
            if (eps < kMinDilution) {
                break;
            }
        }
    }

    result.rho_hat = DensityMatrix(rho);
    result.log_likelihood = loglik;
    return result;
}

LinearInversionResult linear_inversion(const CountData& counts,
                                       const MeasurementScheme& scheme) {
    check_counts_match_scheme(counts, scheme);
    if (!certify_complete(scheme)) {
        throw std::invalid_argument("linear_inversion: scheme is not informationally complete");
    }
    const Eigen::Index d = scheme.dim;
    const auto basis_ops = traceless_hermitian_basis(d);
    const Eigen::Index num_params = static_cast<Eigen::Index>(basis_ops.size());
    const Eigen::Index rows = static_cast<Eigen::Index>(scheme.total_elements());

    RealMatrix design(rows, num_params);
    RealVector rhs(rows);
    Eigen::Index row = 0;
    for (std::size_t b = 0; b < scheme.bases.size(); ++b) {
        const std::int64_t basis_total = counts.basis_total(b);
        if (basis_total <= 0) {
            throw std::invalid_argument("linear_inversion: basis " + std::to_string(b) +
                                        " has no counts");
        }
        const auto& basis = scheme.bases[b];
        for (std::size_t g = 0; g < basis.elements.size(); ++g) {
            const ComplexMatrix& op = basis.elements[g].matrix;
            for (Eigen::Index k = 0; k < num_params; ++k) {
                design(row, k) = trace_product(op, basis_ops[static_cast<std::size_t>(k)]).real();
            }
            const double frequency = static_cast<double>(counts.counts[b][g]) /
                                     static_cast<double>(basis_total);
            rhs(row) = frequency - op.trace().real() / static_cast<double>(d);
            ++row;
        }
    }

    Eigen::JacobiSVD<RealMatrix> svd(design, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double cutoff = 1e-9 * std::max(1.0, svd.singularValues()[0]);
    if (svd.singularValues().minCoeff() <= cutoff) {
        throw std::runtime_error("linear_inversion: rank-deficient design matrix");
    }
    const RealVector x = svd.solve(rhs);

    ComplexMatrix raw = ComplexMatrix::Identity(d, d) / static_cast<double>(d);
    for (Eigen::Index k = 0; k < num_params; ++k) {
        raw += x[k] * basis_ops[static_cast<std::size_t>(k)];
    }
    raw = (raw + raw.adjoint()) / 2.0;
    return LinearInversionResult{raw, DensityMatrix(project_to_physical(raw))};
}

double predicted_mixed_infidelity(const MeasurementScheme& scheme, double n_total) {
    if (!(n_total > 0.0)) {
        throw std::invalid_argument("predicted_mixed_infidelity: n_total must be positive");
    }
    if (!certify_complete(scheme)) {
        throw std::invalid_argument("predicted_mixed_infidelity: scheme is not complete");
    }
    const Eigen::Index d = scheme.dim;
    const auto basis_ops = traceless_hermitian_basis(d);
    const Eigen::Index num_params = static_cast<Eigen::Index>(basis_ops.size());
    const Eigen::Index rows = static_cast<Eigen::Index>(scheme.total_elements());

    RealMatrix design(rows, num_params);
    Eigen::Index row = 0;
    for (const auto& basis : scheme.bases) {
        for (const auto& el : basis.elements) {
            for (Eigen::Index k = 0; k < num_params; ++k) {
                design(row, k) =
                    trace_product(el.matrix, basis_ops[static_cast<std::size_t>(k)]).real();
            }
            ++row;
        }
    }

    Eigen::JacobiSVD<RealMatrix> svd(design, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double cutoff = 1e-9 * std::max(1.0, svd.singularValues()[0]);
    if (svd.singularValues().minCoeff() <= cutoff) {
        throw std::runtime_error("predicted_mixed_infidelity: rank-deficient design matrix");
    }
    // Pseudoinverse G maps frequency deviations to coordinate estimates.
    RealVector inv_sv(num_params);
    for (Eigen::Index k = 0; k < num_params; ++k) {
        inv_sv[k] = 1.0 / svd.singularValues()[k];
    }
    const RealMatrix pinv =
        svd.matrixV() * inv_sv.asDiagonal() * svd.matrixU().transpose();  // num_params x rows

    // At I/D the expected infidelity is the trace of the coordinate
    // covariance, block-diagonal over bases in the frequency covariance.
    const double shots_per_basis = n_total / static_cast<double>(scheme.bases.size());
    double expected = 0.0;
    Eigen::Index offset = 0;
    for (const auto& basis : scheme.bases) {
        const Eigen::Index k = static_cast<Eigen::Index>(basis.elements.size());
        RealVector p(k);
        for (Eigen::Index g = 0; g < k; ++g) {
            p[g] = basis.elements[static_cast<std::size_t>(g)].matrix.trace().real() /
                   static_cast<double>(d);
        }
        RealMatrix cov = (RealMatrix(p.asDiagonal()) - p * p.transpose()) / shots_per_basis;
        const RealMatrix g_block = pinv.middleCols(offset, k);
        expected += (g_block * cov * g_block.transpose()).trace();
        offset += k;
    }
    return expected;
}

double predict_mixed_ratio(const MeasurementScheme& scheme_a, const MeasurementScheme& scheme_b,
                           double n_total) {
    return predicted_mixed_infidelity(scheme_a, n_total) /
           predicted_mixed_infidelity(scheme_b, n_total);
}

}  // namespace mubtomo
