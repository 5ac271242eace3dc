#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <mubtomo/linalg.hpp>
#include <mubtomo/rng.hpp>

#include "test_helpers.hpp"

#include <complex>

using namespace mubtomo;
using testutil::max_abs_diff;
using testutil::random_hermitian;

namespace {

ComplexMatrix diag4(double a, double b, double c, double d) {
    ComplexMatrix m = ComplexMatrix::Zero(4, 4);
    m(0, 0) = a;
    m(1, 1) = b;
    m(2, 2) = c;
    m(3, 3) = d;
    return m;
}

}  // namespace

TEST_CASE("eig_hermitian on the identity") {
    const auto es = eig_hermitian(ComplexMatrix::Identity(4, 4));
    for (Eigen::Index i = 0; i < 4; ++i) {
        CHECK(es.eigenvalues[i] == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("eig_hermitian on an already diagonal matrix") {
    ComplexMatrix m = ComplexMatrix::Zero(3, 3);
    m(0, 0) = 3.0;
    m(1, 1) = 1.0;
    m(2, 2) = -2.0;
    const auto es = eig_hermitian(m);
    CHECK(es.eigenvalues[0] == doctest::Approx(3.0));
    CHECK(es.eigenvalues[1] == doctest::Approx(1.0));
    CHECK(es.eigenvalues[2] == doctest::Approx(-2.0));
    // Eigenvectors are permuted identity columns up to phase.
    for (Eigen::Index k = 0; k < 3; ++k) {
        CHECK(es.eigenvectors.col(k).cwiseAbs().maxCoeff() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("eig_hermitian round-trip on random Hermitian matrices") {
    RngStream rng(11, 0);
    for (Eigen::Index dim : {2, 4}) {
        for (int rep = 0; rep < 1000; ++rep) {
            const ComplexMatrix m = random_hermitian(rng, dim);
            const auto es = eig_hermitian(m);
            const ComplexMatrix rebuilt = es.eigenvectors *
                                          es.eigenvalues.cast<Complex>().asDiagonal() *
                                          es.eigenvectors.adjoint();
            REQUIRE(max_abs_diff(rebuilt, m) < 1e-9);
            REQUIRE(max_abs_diff(es.eigenvectors.adjoint() * es.eigenvectors,
                                 ComplexMatrix::Identity(dim, dim)) < 1e-9);
            for (Eigen::Index i = 0; i + 1 < dim; ++i) {
                REQUIRE(es.eigenvalues[i] >= es.eigenvalues[i + 1]);
            }
        }
    }
}

TEST_CASE("eig_hermitian rejects bad input") {
    CHECK_THROWS_AS(eig_hermitian(ComplexMatrix::Zero(2, 3)), std::invalid_argument);
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 1) = Complex(0.0, 1.0);
    m(1, 0) = Complex(0.0, 1.0);  // not Hermitian
    CHECK_THROWS_AS(eig_hermitian(m), std::invalid_argument);
}

TEST_CASE("sqrt_psd identity and diagonal cases") {
    CHECK(max_abs_diff(sqrt_psd(ComplexMatrix::Identity(4, 4)),
                       ComplexMatrix::Identity(4, 4)) < 1e-12);
    CHECK(max_abs_diff(sqrt_psd(diag4(4, 9, 0, 1)), diag4(2, 3, 0, 1)) < 1e-12);
}

TEST_CASE("sqrt_psd squares back to the input") {
    RngStream rng(12, 0);
    for (int rep = 0; rep < 200; ++rep) {
        // Random rank-2 PSD matrix.
        ComplexMatrix g(4, 2);
        for (Eigen::Index i = 0; i < 4; ++i) {
            for (Eigen::Index j = 0; j < 2; ++j) {
                g(i, j) = rng.complex_gaussian();
            }
        }
        const ComplexMatrix m = g * g.adjoint();
        const ComplexMatrix root = sqrt_psd(m);
        REQUIRE(is_hermitian(root, 1e-9));
        REQUIRE(max_abs_diff(root * root, m) < 1e-8);
    }
}

TEST_CASE("sqrt_psd rejects indefinite input") {
    CHECK_THROWS_AS(sqrt_psd(diag4(1, 1, 1, -0.5)), std::invalid_argument);
}

TEST_CASE("kron identities and projectors") {
    const ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
    CHECK(max_abs_diff(kron(i2, i2), ComplexMatrix::Identity(4, 4)) == 0.0);
    ComplexMatrix p = ComplexMatrix::Zero(2, 2);
    p(0, 0) = 1.0;
    CHECK(max_abs_diff(kron(p, p), diag4(1, 0, 0, 0)) == 0.0);
}

TEST_CASE("kron matches the index formula entry by entry") {
    ComplexMatrix x = ComplexMatrix::Zero(2, 2);
    x(0, 1) = 1.0;
    x(1, 0) = 1.0;
    ComplexMatrix z = ComplexMatrix::Zero(2, 2);
    z(0, 0) = 1.0;
    z(1, 1) = -1.0;
    const ComplexMatrix k = kron(x, z);
    for (Eigen::Index i = 0; i < 2; ++i) {
        for (Eigen::Index j = 0; j < 2; ++j) {
            for (Eigen::Index a = 0; a < 2; ++a) {
                for (Eigen::Index b = 0; b < 2; ++b) {
                    CHECK(k(i * 2 + a, j * 2 + b) == x(i, j) * z(a, b));
                }
            }
        }
    }
}

TEST_CASE("kron associativity") {
    RngStream rng(13, 0);
    const ComplexMatrix a = testutil::random_matrix(rng, 2);
    const ComplexMatrix b = testutil::random_matrix(rng, 2);
    const ComplexMatrix c = testutil::random_matrix(rng, 2);
    CHECK(max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))) < 1e-12);
}

TEST_CASE("trace_product basics") {
    const ComplexMatrix i4 = ComplexMatrix::Identity(4, 4);
    CHECK(trace_product(i4, i4).real() == doctest::Approx(4.0));

    ComplexVector v(4);
    v << Complex(0.5, 0), Complex(0.5, 0), Complex(0.5, 0), Complex(0.5, 0);
    const ComplexMatrix p = v * v.adjoint();
    CHECK(trace_product(p, p).real() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("trace_product agrees with forming the full product") {
    RngStream rng(14, 0);
    for (int rep = 0; rep < 100; ++rep) {
        const ComplexMatrix a = testutil::random_matrix(rng, 4);
        const ComplexMatrix b = testutil::random_matrix(rng, 4);
        const Complex direct = trace_product(a, b);
        const Complex naive = (a * b).trace();
        REQUIRE(std::abs(direct - naive) < 1e-12);
        // Cyclic symmetry.
        REQUIRE(std::abs(trace_product(a, b) - trace_product(b, a)) < 1e-12);
    }
    CHECK_THROWS_AS(trace_product(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(4, 4)),
                    std::invalid_argument);
}

TEST_CASE("project_to_physical fixes points and clips") {
    const ComplexMatrix rho = diag4(0.4, 0.3, 0.2, 0.1);
    CHECK(max_abs_diff(project_to_physical(rho), rho) < 1e-12);
    CHECK(max_abs_diff(project_to_physical(diag4(1.2, -0.2, 0, 0)), diag4(1, 0, 0, 0)) < 1e-12);
    CHECK_THROWS_AS(project_to_physical(diag4(-1, -2, 0, 0)), std::runtime_error);
}

TEST_CASE("project_to_physical output is PSD with unit trace") {
    RngStream rng(15, 0);
    for (int rep = 0; rep < 300; ++rep) {
        ComplexMatrix m = random_hermitian(rng, 4);
        m(0, 0) += 1.0;  // keep some positive weight so clipping never empties it
        const ComplexMatrix out = project_to_physical(m);
        REQUIRE(std::abs(out.trace().real() - 1.0) < 1e-12);
        // PSD check through random quadratic forms, independent of the
        // eigensolver used inside.
        for (int probe = 0; probe < 16; ++probe) {
            ComplexVector x(4);
            for (Eigen::Index i = 0; i < 4; ++i) {
                x(i) = rng.complex_gaussian();
            }
            REQUIRE((x.adjoint() * out * x)(0).real() > -1e-12);
        }
    }
}

TEST_CASE("traceless_hermitian_basis is orthonormal and traceless") {
    for (Eigen::Index dim : {2, 4}) {
        const auto basis = traceless_hermitian_basis(dim);
        REQUIRE(basis.size() == static_cast<std::size_t>(dim * dim - 1));
        for (std::size_t a = 0; a < basis.size(); ++a) {
            CHECK(std::abs(basis[a].trace()) < 1e-14);
            CHECK(is_hermitian(basis[a], 1e-14));
            for (std::size_t b = 0; b < basis.size(); ++b) {
                const double expected = a == b ? 1.0 : 0.0;
                CHECK(std::abs(trace_product(basis[a], basis[b]).real() - expected) < 1e-12);
            }
        }
    }
}
