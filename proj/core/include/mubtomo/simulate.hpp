#pragma once

#include "mubtomo/bases.hpp"
#include "mubtomo/rng.hpp"
#include "mubtomo/states.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mubtomo {

enum class CountModel {
    MultinomialExact,  // counts sum to n_total exactly
    PoissonPerBasis,   // per-basis totals drawn Poisson(n_total / num_bases)
};

std::string to_string(CountModel model);
CountModel count_model_from_string(std::string_view name);

/// Outcome counts from one simulated acquisition: one integer vector of
/// length D per basis, in scheme order.
struct CountData {
    std::string scheme_name;
    double visibility = 1.0;
    Eigen::Index dim = 0;
    CountModel model = CountModel::MultinomialExact;
    std::uint64_t seed = 0;       // master seed the stream derived from
    std::uint64_t stream_id = 0;  // stream used for this acquisition
    std::int64_t n_total = 0;     // requested total count budget
    std::vector<std::vector<std::int64_t>> counts;

    std::int64_t observed_total() const;
    std::int64_t basis_total(std::size_t basis_index) const;
};

/// Born-rule probabilities p_g = Tr[O_g rho] for one basis. Tiny negative
/// values (roundoff) are clipped to zero.
RealVector born_probabilities(const DensityMatrix& rho, const MeasurementBasis& basis);

/// Simulate one acquisition: split n_total over the scheme's bases (equal
/// split; remainder to the first bases under the exact model, Poisson totals
/// otherwise), then draw each basis's counts multinomially from the Born
/// probabilities via sequential binomial decomposition.
CountData sample_counts(const DensityMatrix& rho, const MeasurementScheme& scheme,
                        std::int64_t n_total, CountModel model, RngStream& rng);

/// Noise-free counts: per basis, round(p_g * per_basis) for every outcome.
/// Useful as the idealized dataset whose maximum-likelihood fit is the true
/// state itself.
CountData exact_proportion_counts(const DensityMatrix& rho, const MeasurementScheme& scheme,
                                  std::int64_t per_basis);

}  // namespace mubtomo
