#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace mubtomo {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

// Absolute entrywise tolerance below which a matrix counts as Hermitian.
// All matrices in this library are constructed Hermitian; larger violations
// indicate a bug upstream rather than roundoff.
inline constexpr double kHermitianTol = 1e-10;

// Eigenvalues above -kPsdTol are treated as nonnegative and clipped to zero.
inline constexpr double kPsdTol = 1e-10;

/// Eigendecomposition of a Hermitian matrix, eigenvalues sorted descending.
/// Columns of `eigenvectors` pair with the entries of `eigenvalues`.
struct EigenSystem {
    RealVector eigenvalues;
    ComplexMatrix eigenvectors;
};

bool is_hermitian(const ComplexMatrix& m, double tol = kHermitianTol);

/// Diagonalize a Hermitian matrix. Throws std::invalid_argument if `m` is
/// not square or violates the Hermiticity tolerance.
EigenSystem eig_hermitian(const ComplexMatrix& m);

/// Unique PSD square root of a Hermitian PSD matrix. Eigenvalues in
/// [-kPsdTol, 0) are clipped to zero; anything more negative throws.
ComplexMatrix sqrt_psd(const ComplexMatrix& m);

/// Kronecker product: result((i*rb + k), (j*cb + l)) = a(i,j) * b(k,l).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Tr[a * b] without forming the product, as sum_ij a(i,j) b(j,i).
Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// Repair a matrix into a valid density matrix: hermitize, clip negative
/// eigenvalues to zero, renormalize to unit trace. Throws std::runtime_error
/// if nothing remains after clipping.
ComplexMatrix project_to_physical(const ComplexMatrix& m);

/// Orthonormal traceless Hermitian basis (generalized Gell-Mann matrices):
/// dim*dim - 1 matrices T_k with Tr[T_j T_k] = delta_jk and Tr[T_k] = 0.
std::vector<ComplexMatrix> traceless_hermitian_basis(Eigen::Index dim);

/// Real coordinates of a Hermitian matrix in the orthonormal basis
/// { I/sqrt(dim), T_1, ..., T_{dim^2-1} }. Coordinate 0 is Tr[m]/sqrt(dim).
RealVector hermitian_coordinates(const ComplexMatrix& m,
                                 const std::vector<ComplexMatrix>& traceless_basis);

}  // namespace mubtomo
