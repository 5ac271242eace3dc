#include "mubtomo/simulate.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mubtomo {

std::string to_string(CountModel model) {
    switch (model) {
        case CountModel::MultinomialExact: return "multinomial-exact";
        case CountModel::PoissonPerBasis: return "poisson-per-basis";
    }
    throw std::logic_error("to_string: bad CountModel");
}

CountModel count_model_from_string(std::string_view name) {
    if (name == "multinomial-exact" || name == "multinomial") {
        return CountModel::MultinomialExact;
    }
    if (name == "poisson-per-basis" || name == "poisson") {
        return CountModel::PoissonPerBasis;
    }
    throw std::invalid_argument("unknown count model '" + std::string(name) +
                                "'; expected multinomial(-exact) or poisson(-per-basis)");
}

std::int64_t CountData::observed_total() const {
    std::int64_t total = 0;
    for (const auto& basis : counts) {
        total = std::accumulate(basis.begin(), basis.end(), total);
    }
    return total;
}

std::int64_t CountData::basis_total(std::size_t basis_index) const {
    const auto& basis = counts.at(basis_index);
    return std::accumulate(basis.begin(), basis.end(), std::int64_t{0});
}

RealVector born_probabilities(const DensityMatrix& rho, const MeasurementBasis& basis) {
    if (basis.elements.empty() || basis.elements.front().matrix.rows() != rho.dim()) {
        throw std::invalid_argument("born_probabilities: dimension mismatch");
    }
    RealVector p(static_cast<Eigen::Index>(basis.elements.size()));
    for (std::size_t g = 0; g < basis.elements.size(); ++g) {
        const double value = trace_product(basis.elements[g].matrix, rho.matrix()).real();
        if (value < -1e-12) {
            throw std::runtime_error("born_probabilities: negative probability " +
                                     std::to_string(value));
        }
        p[static_cast<Eigen::Index>(g)] = std::max(value, 0.0);
    }
    return p;
}

namespace {

// Multinomial via sequential binomial decomposition.
std::vector<std::int64_t> multinomial(std::int64_t n, const RealVector& p, RngStream& rng) {
    const Eigen::Index k = p.size();
    std::vector<std::int64_t> counts(static_cast<std::size_t>(k), 0);
    double remaining_p = p.sum();
    std::int64_t remaining_n = n;
    for (Eigen::Index g = 0; g + 1 < k && remaining_n > 0; ++g) {
        if (remaining_p <= 0.0) {
            break;
        }
        const double q = std::min(1.0, std::max(0.0, p[g] / remaining_p));
        const std::int64_t c = rng.binomial(remaining_n, q);
        counts[static_cast<std::size_t>(g)] = c;
        remaining_n -= c;
        remaining_p -= p[g];
    }
    counts[static_cast<std::size_t>(k - 1)] += remaining_n;
    return counts;
}

}  // namespace

CountData sample_counts(const DensityMatrix& rho, const MeasurementScheme& scheme,
                        std::int64_t n_total, CountModel model, RngStream& rng) {
    if (n_total < 0) {
        throw std::invalid_argument("sample_counts: n_total must be >= 0");
    }
    if (scheme.dim != rho.dim()) {
        throw std::invalid_argument("sample_counts: state and scheme dimensions differ");
    }
    const std::int64_t num_bases = static_cast<std::int64_t>(scheme.bases.size());
    if (num_bases == 0) {
        throw std::invalid_argument("sample_counts: scheme has no bases");
    }

    CountData data;
    data.scheme_name = scheme.name;
    data.visibility = scheme.visibility;
    data.dim = scheme.dim;
    data.model = model;
    data.seed = rng.seed();
    data.stream_id = rng.stream_id();
    data.n_total = n_total;
    data.counts.reserve(scheme.bases.size());

    for (std::int64_t b = 0; b < num_bases; ++b) {
        std::int64_t shots = 0;
        if (model == CountModel::MultinomialExact) {
            shots = n_total / num_bases + (b < n_total % num_bases ? 1 : 0);
        } else {
            shots = rng.poisson(static_cast<double>(n_total) / static_cast<double>(num_bases));
        }
        const RealVector p =
            born_probabilities(rho, scheme.bases[static_cast<std::size_t>(b)]);
        data.counts.push_back(multinomial(shots, p, rng));
    }
    return data;
}

CountData exact_proportion_counts(const DensityMatrix& rho, const MeasurementScheme& scheme,
                                  std::int64_t per_basis) {
    if (per_basis < 0) {
        throw std::invalid_argument("exact_proportion_counts: per_basis must be >= 0");
    }
    CountData data;
    data.scheme_name = scheme.name;
    data.visibility = scheme.visibility;
    data.dim = scheme.dim;
    data.model = CountModel::MultinomialExact;
    data.counts.reserve(scheme.bases.size());
    std::int64_t total = 0;
    for (const auto& basis : scheme.bases) {
        const RealVector p = born_probabilities(rho, basis);
        std::vector<std::int64_t> row;
        row.reserve(basis.elements.size());
        for (Eigen::Index g = 0; g < p.size(); ++g) {
            const std::int64_t c = std::llround(p[g] * static_cast<double>(per_basis));
            row.push_back(c);
            total += c;
        }
        data.counts.push_back(std::move(row));
    }
    data.n_total = total;
    return data;
}

}  // namespace mubtomo
