#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <mubtomo/simulate.hpp>

#include "test_helpers.hpp"

#include <cmath>

using namespace mubtomo;

TEST_CASE("born probabilities for the maximally mixed state are uniform") {
    const auto mixed = maximally_mixed(4);
    for (const auto& basis : mub_scheme(0.93).bases) {
        const RealVector p = born_probabilities(mixed, basis);
        for (Eigen::Index g = 0; g < p.size(); ++g) {
            CHECK(p[g] == doctest::Approx(0.25).epsilon(1e-12));
        }
    }
}

TEST_CASE("born probabilities of Phi+ in the H/V basis show Bell correlations") {
    const auto rho = density_from_pure(bell_state(BellKind::PhiPlus));
    const RealVector p = born_probabilities(rho, ssqst_scheme().bases[0]);
    CHECK(p[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(p[1] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(p[2] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(p[3] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("born probabilities of Phi+ in the entangled MUB bases match a brute-force oracle") {
    // Rebuild the four basis-4 kets from raw amplitudes and evaluate
    // |<e|Phi+>|^2 directly.
    const Complex i(0, 1);
    const double s = 1.0 / std::sqrt(2.0);
    Eigen::Vector2cd r, l;
    r << s, s * i;
    l << s, -s * i;
    auto two_qubit = [](const Eigen::Vector2cd& a, const Eigen::Vector2cd& b) {
        Eigen::Vector4cd out;
        out << a(0) * b(0), a(0) * b(1), a(1) * b(0), a(1) * b(1);
        return out;
    };
    const Eigen::Vector4cd rl = two_qubit(r, l), lr = two_qubit(l, r);
    const Eigen::Vector4cd rr = two_qubit(r, r), ll = two_qubit(l, l);
    Eigen::Vector4cd phi_plus;
    phi_plus << s, 0, 0, s;

    std::array<Eigen::Vector4cd, 4> kets = {
        (rl + i * lr) * s, (rl - i * lr) * s, (rr + i * ll) * s, (rr - i * ll) * s};
    RealVector expected(4);
    for (int k = 0; k < 4; ++k) {
        expected[k] = std::norm(Complex(kets[k].adjoint() * phi_plus));
    }

    const auto rho = density_from_pure(bell_state(BellKind::PhiPlus));
    const RealVector p = born_probabilities(rho, mub_scheme(1.0).bases[3]);
    for (int k = 0; k < 4; ++k) {
        CHECK(p[k] == doctest::Approx(expected[k]).epsilon(1e-12));
    }
    // Sanity: the oracle itself puts all weight on the first pair.
    CHECK(expected[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(expected[1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(expected[2] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(expected[3] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("born probabilities sum to one on every basis") {
    RngStream rng(31, 0);
    for (int rep = 0; rep < 20; ++rep) {
        const auto rho = testutil::random_density(rng, 4);
        for (const auto& scheme : {ssqst_scheme(), mub_scheme(0.93)}) {
            for (const auto& basis : scheme.bases) {
                REQUIRE(born_probabilities(rho, basis).sum() ==
                        doctest::Approx(1.0).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("sample_counts with zero budget and deterministic outcomes") {
    const auto scheme = ssqst_scheme();
    RngStream rng(32, 0);
    const auto zero = sample_counts(density_from_pure(ket("HV")), scheme, 0,
                                    CountModel::MultinomialExact, rng);
    CHECK(zero.observed_total() == 0);
    CHECK(zero.counts.size() == 9);

    // |HV> in the H/V basis always lands on outcome HV.
    RngStream rng2(32, 1);
    const auto counts = sample_counts(density_from_pure(ket("HV")), scheme, 9000,
                                      CountModel::MultinomialExact, rng2);
    CHECK(counts.counts[0][0] == 0);
    CHECK(counts.counts[0][1] == 1000);
    CHECK(counts.counts[0][2] == 0);
    CHECK(counts.counts[0][3] == 0);
}

TEST_CASE("same stream reproduces identical counts") {
    const auto scheme = mub_scheme(0.93);
    const auto rho = density_from_pure(bell_state(BellKind::PhiPlus));
    RngStream a(5, 9), b(5, 9);
    const auto ca = sample_counts(rho, scheme, 5000, CountModel::MultinomialExact, a);
    const auto cb = sample_counts(rho, scheme, 5000, CountModel::MultinomialExact, b);
    CHECK(ca.counts == cb.counts);
    RngStream c(5, 10);
    const auto cc = sample_counts(rho, scheme, 5000, CountModel::MultinomialExact, c);
    CHECK(ca.counts != cc.counts);
}

TEST_CASE("multinomial-exact splits the budget equally with remainder up front") {
    const auto scheme = ssqst_scheme();
    const auto rho = maximally_mixed(4);
    RngStream rng(33, 0);
    const auto counts = sample_counts(rho, scheme, 9004, CountModel::MultinomialExact, rng);
    CHECK(counts.observed_total() == 9004);
    for (std::size_t b = 0; b < 9; ++b) {
        CHECK(counts.basis_total(b) == (b < 4 ? 1001 : 1000));
    }

    RngStream rng2(33, 1);
    const auto mub_counts =
        sample_counts(rho, mub_scheme(1.0), 18000, CountModel::MultinomialExact, rng2);
    for (std::size_t b = 0; b < 5; ++b) {
        CHECK(mub_counts.basis_total(b) == 3600);
    }
}

TEST_CASE("empirical frequencies converge to the Born probabilities") {
    const auto scheme = ssqst_scheme();
    const auto rho = density_from_pure(bell_state(BellKind::PhiPlus));
    RngStream rng(34, 0);
    const auto counts = sample_counts(rho, scheme, 1000000, CountModel::MultinomialExact, rng);
    double worst = 0.0;
    for (std::size_t b = 0; b < scheme.bases.size(); ++b) {
        const RealVector p = born_probabilities(rho, scheme.bases[b]);
        const double total = static_cast<double>(counts.basis_total(b));
        for (Eigen::Index g = 0; g < p.size(); ++g) {
            const double f = static_cast<double>(counts.counts[b][static_cast<std::size_t>(g)]) / total;
            worst = std::max(worst, std::abs(f - p[g]));
        }
    }
    CHECK(worst < 5e-3);
}

TEST_CASE("poisson-per-basis totals average to the budget") {
    const auto scheme = ssqst_scheme();
    const auto rho = maximally_mixed(4);
    const std::int64_t n_total = 9000;
    const int reps = 1000;
    double sum = 0.0;
    for (int rep = 0; rep < reps; ++rep) {
        RngStream rng(35, static_cast<std::uint64_t>(rep));
        sum += static_cast<double>(
            sample_counts(rho, scheme, n_total, CountModel::PoissonPerBasis, rng)
                .observed_total());
    }
    const double mean = sum / reps;
    const double three_sigma = 3.0 * std::sqrt(static_cast<double>(n_total) / reps);
    CHECK(std::abs(mean - static_cast<double>(n_total)) < three_sigma);
}

TEST_CASE("exact_proportion_counts reproduces rational Born weights") {
    const auto scheme = mub_scheme(1.0);
    const auto rho = density_from_pure(bell_state(BellKind::PhiPlus));
    const auto counts = exact_proportion_counts(rho, scheme, 2000);
    CHECK(counts.counts[0][0] == 1000);
    CHECK(counts.counts[0][3] == 1000);
    CHECK(counts.counts[1][0] == 500);  // unbiased basis: quarters
    CHECK(counts.counts[3][0] == 1000);
    CHECK(counts.counts[3][2] == 0);
    CHECK(counts.observed_total() == counts.n_total);
}

TEST_CASE("count model names round-trip") {
    CHECK(to_string(CountModel::MultinomialExact) == "multinomial-exact");
    CHECK(count_model_from_string("poisson") == CountModel::PoissonPerBasis);
    CHECK(count_model_from_string("multinomial-exact") == CountModel::MultinomialExact);
    CHECK_THROWS_AS(count_model_from_string("gaussian"), std::invalid_argument);
}

TEST_CASE("sample_counts input validation") {
    RngStream rng(36, 0);
    CHECK_THROWS_AS(sample_counts(maximally_mixed(4), ssqst_scheme(), -1,
                                  CountModel::MultinomialExact, rng),
                    std::invalid_argument);
    CHECK_THROWS_AS(sample_counts(maximally_mixed(2), ssqst_scheme(), 10,
                                  CountModel::MultinomialExact, rng),
                    std::invalid_argument);
}
