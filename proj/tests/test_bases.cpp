#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <mubtomo/bases.hpp>
#include <mubtomo/linalg.hpp>

#include "test_helpers.hpp"

#include <map>
#include <set>

using namespace mubtomo;
using testutil::max_abs_diff;

namespace {

const MeasurementOperator& find_element(const MeasurementScheme& s, const std::string& label) {
    for (const auto& basis : s.bases) {
        for (const auto& el : basis.elements) {
            if (el.label == label) {
                return el;
            }
        }
    }
    throw std::runtime_error("no element labeled " + label);
}

// Expected single-qubit squared overlap from letters: 1 if equal, 0 if the
// orthogonal partner, 1/2 across different Pauli pairs.
double letter_overlap(char a, char b) {
    if (a == b) {
        return 1.0;
    }
    const std::map<char, char> partner = {{'H', 'V'}, {'V', 'H'}, {'D', 'A'},
                                          {'A', 'D'}, {'R', 'L'}, {'L', 'R'}};
    return partner.at(a) == b ? 0.0 : 0.5;
}

}  // namespace

TEST_CASE("ssqst has 9 bases of 4 rank-1 projectors with the documented labels") {
    const auto s = ssqst_scheme();
    CHECK(s.name == "SSQST");
    CHECK(s.bases.size() == 9);
    CHECK(s.total_elements() == 36);
    CHECK(s.bases.front().elements.front().label == "HH");
    CHECK(s.bases.back().elements.back().label == "LL");
    for (const auto& basis : s.bases) {
        CHECK_FALSE(basis.entangled);
        ComplexMatrix sum = ComplexMatrix::Zero(4, 4);
        for (const auto& el : basis.elements) {
            CHECK(el.rank == 1);
            CHECK(is_hermitian(el.matrix));
            // Rank-1 projector idempotence.
            CHECK(max_abs_diff(el.matrix * el.matrix, el.matrix) < 1e-9);
            sum += el.matrix;
        }
        CHECK(max_abs_diff(sum, ComplexMatrix::Identity(4, 4)) < 1e-9);
    }
}

TEST_CASE("ssqst overlap values match the label structure") {
    const auto s = ssqst_scheme();
    CHECK(overlap(find_element(s, "HH"), find_element(s, "HD")) ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK(overlap(find_element(s, "HH"), find_element(s, "DD")) ==
          doctest::Approx(0.25).epsilon(1e-12));
    CHECK(overlap(find_element(s, "HH"), find_element(s, "VD")) ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK(overlap(find_element(s, "HH"), find_element(s, "VV")) ==
          doctest::Approx(0.0).epsilon(1e-12));

    // Every cross-basis pair must match the prediction from its labels, and
    // 0.5 must occur exactly when one qubit shares its eigenstate while the
    // other changes Pauli basis.
    for (std::size_t a = 0; a < s.bases.size(); ++a) {
        for (std::size_t b = a + 1; b < s.bases.size(); ++b) {
            for (const auto& p : s.bases[a].elements) {
                for (const auto& q : s.bases[b].elements) {
                    const double expected =
                        letter_overlap(p.label[0], q.label[0]) *
                        letter_overlap(p.label[1], q.label[1]);
                    const double got = overlap(p, q);
                    REQUIRE(got == doctest::Approx(expected).epsilon(1e-12));
                    const bool shares_eigenstate =
                        (p.label[0] == q.label[0] && p.label[1] != q.label[1]) ||
                        (p.label[1] == q.label[1] && p.label[0] != q.label[0]);
                    if (got > 0.3) {
                        REQUIRE(shares_eigenstate);
                    }
                }
            }
        }
    }
}

TEST_CASE("mub scheme structure at full visibility") {
    const auto s = mub_scheme(1.0);
    CHECK(s.name == "MUB");
    CHECK(s.bases.size() == 5);
    CHECK(s.total_elements() == 20);
    CHECK(s.bases[0].elements[0].label == "HH");
    CHECK(s.bases[3].elements[0].label == "RL+iLR");
    CHECK(s.bases[4].elements[3].label == "RH-iLV");
    int entangled_bases = 0;
    for (const auto& basis : s.bases) {
        if (basis.entangled) {
            ++entangled_bases;
        }
        ComplexMatrix sum = ComplexMatrix::Zero(4, 4);
        for (const auto& el : basis.elements) {
            CHECK(el.rank == 1);
            CHECK(max_abs_diff(el.matrix * el.matrix, el.matrix) < 1e-9);
            sum += el.matrix;
        }
        CHECK(max_abs_diff(sum, ComplexMatrix::Identity(4, 4)) < 1e-9);
    }
    CHECK(entangled_bases == 2);
}

TEST_CASE("mub cross-basis overlaps are exactly 1/4 at V=1") {
    const auto report = certify_unbiased(mub_scheme(1.0));
    CHECK(report.pair_count == 160);  // C(5,2) basis pairs x 16 element pairs
    CHECK(report.max_deviation < 1e-12);
}

TEST_CASE("ssqst cross-basis overlaps take exactly the values 0, 1/4, 1/2") {
    const auto report = certify_unbiased(ssqst_scheme());
    REQUIRE(report.overlap_values.size() == 3);
    CHECK(report.overlap_values[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(report.overlap_values[1] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(report.overlap_values[2] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(report.min_deviation == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(report.max_deviation == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("certify_unbiased of a single basis is vacuous") {
    MeasurementScheme sub = mub_scheme(1.0);
    sub.bases.resize(1);
    const auto report = certify_unbiased(sub);
    CHECK(report.pair_count == 0);
    CHECK(report.min_deviation == 0.0);
    CHECK(report.max_deviation == 0.0);
}

TEST_CASE("visibility degrades entangled elements into rank-2 mixtures") {
    const auto s = mub_scheme(0.93);
    for (const auto& basis : s.bases) {
        ComplexMatrix sum = ComplexMatrix::Zero(4, 4);
        for (const auto& el : basis.elements) {
            sum += el.matrix;
            CHECK(is_hermitian(el.matrix));
            CHECK(el.matrix.trace().real() == doctest::Approx(1.0).epsilon(1e-12));
            const auto es = eig_hermitian(el.matrix);
            CHECK(es.eigenvalues.minCoeff() > -1e-12);
            if (basis.entangled) {
                CHECK(el.rank == 2);
                CHECK(es.eigenvalues[0] == doctest::Approx(0.965).epsilon(1e-12));
                CHECK(es.eigenvalues[1] == doctest::Approx(0.035).epsilon(1e-12));
                CHECK(std::abs(es.eigenvalues[2]) < 1e-12);
                CHECK(std::abs(es.eigenvalues[3]) < 1e-12);
            } else {
                CHECK(el.rank == 1);
            }
        }
        CHECK(max_abs_diff(sum, ComplexMatrix::Identity(4, 4)) < 1e-9);
    }
}

TEST_CASE("mub elements stay PSD and unit trace across the visibility range") {
    for (double v : {0.05, 0.25, 0.5, 0.75, 0.93, 1.0}) {
        const auto s = mub_scheme(v);
        for (const auto& basis : s.bases) {
            for (const auto& el : basis.elements) {
                const auto es = eig_hermitian(el.matrix);
                REQUIRE(es.eigenvalues.minCoeff() > -1e-12);
                REQUIRE(es.eigenvalues.maxCoeff() < 1.0 + 1e-12);
                REQUIRE(el.matrix.trace().real() == doctest::Approx(1.0).epsilon(1e-12));
            }
        }
        REQUIRE(certify_complete(s));
    }
    CHECK_THROWS_AS(mub_scheme(0.0), std::invalid_argument);
    CHECK_THROWS_AS(mub_scheme(1.5), std::invalid_argument);
}

TEST_CASE("completeness certification") {
    CHECK(certify_complete(ssqst_scheme()));
    CHECK(certify_complete(mub_scheme(1.0)));
    CHECK(certify_complete(mub_scheme(0.93)));

    MeasurementScheme partial = mub_scheme(1.0);
    partial.bases.resize(3);
    CHECK_FALSE(certify_complete(partial));
}

TEST_CASE("single-qubit MUB convenience scheme") {
    const auto s = single_qubit_mub_scheme();
    CHECK(s.dim == 2);
    CHECK(s.bases.size() == 3);
    const auto report = certify_unbiased(s);
    CHECK(report.pair_count == 12);
    CHECK(report.max_deviation < 1e-12);  // all overlaps 1/2
    CHECK(certify_complete(s));
}

TEST_CASE("scheme_by_name lookup") {
    CHECK(scheme_by_name("mub", 0.93).visibility == doctest::Approx(0.93));
    CHECK(scheme_by_name("SSQST").name == "SSQST");
    CHECK_THROWS_AS(scheme_by_name("sic", 1.0), std::invalid_argument);
}

TEST_CASE("overlap of the Phi+ projector with HH is 1/2") {
    const auto phi = bell_state(BellKind::PhiPlus);
    const MeasurementOperator phi_op{"phi+", phi.amplitudes() * phi.amplitudes().adjoint(), 1};
    const auto scheme = ssqst_scheme();
    const auto& hh = scheme.bases[0].elements[0];
    // Direct oracle: Tr[P_phi P_hh] = |<phi|HH>|^2 from the amplitudes.
    const Complex amp = phi.amplitudes().adjoint() * ket("HH").amplitudes();
    CHECK(std::norm(amp) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(overlap(phi_op, hh) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("overlap rejects mismatched dimensions") {
    const auto a = mub_scheme(1.0).bases[0].elements[0];
    const auto b = single_qubit_mub_scheme().bases[0].elements[0];
    CHECK_THROWS_AS(overlap(a, b), std::invalid_argument);
}
