#include "mubtomo/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace mubtomo {

bool is_hermitian(const ComplexMatrix& m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

EigenSystem eig_hermitian(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("eig_hermitian: matrix must be square");
    }
    if (!is_hermitian(m)) {
        throw std::invalid_argument("eig_hermitian: matrix not Hermitian within tolerance");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver((m + m.adjoint()) / 2.0);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eig_hermitian: eigensolver did not converge");
    }
    // Eigen returns ascending order; flip to descending.
    const Eigen::Index n = m.rows();
    EigenSystem out{RealVector(n), ComplexMatrix(n, n)};
    for (Eigen::Index i = 0; i < n; ++i) {
        out.eigenvalues[i] = solver.eigenvalues()[n - 1 - i];
        out.eigenvectors.col(i) = solver.eigenvectors().col(n - 1 - i);
    }
    return out;
}

ComplexMatrix sqrt_psd(const ComplexMatrix& m) {
    EigenSystem es = eig_hermitian(m);
    RealVector roots(es.eigenvalues.size());
    for (Eigen::Index i = 0; i < es.eigenvalues.size(); ++i) {
        const double lambda = es.eigenvalues[i];
        if (lambda < -kPsdTol) {
            throw std::invalid_argument("sqrt_psd: matrix has a negative eigenvalue");
        }
        roots[i] = std::sqrt(std::max(lambda, 0.0));
    }
    ComplexMatrix r = es.eigenvectors * roots.asDiagonal() * es.eigenvectors.adjoint();
    return (r + r.adjoint()) / 2.0;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const Eigen::Index ra = a.rows(), ca = a.cols();
    const Eigen::Index rb = b.rows(), cb = b.cols();
    ComplexMatrix out(ra * rb, ca * cb);
    for (Eigen::Index i = 0; i < ra; ++i) {
        for (Eigen::Index j = 0; j < ca; ++j) {
            out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
        }
    }
    return out;
}

Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
        throw std::invalid_argument("trace_product: matrices must be square and same size");
    }
    Complex acc{0.0, 0.0};
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            acc += a(i, j) * b(j, i);
        }
    }
    return acc;
}

ComplexMatrix project_to_physical(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("project_to_physical: matrix must be square");
    }
    const ComplexMatrix h = (m + m.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("project_to_physical: eigensolver did not converge");
    }
    RealVector clipped = solver.eigenvalues().cwiseMax(0.0);
    const double total = clipped.sum();
    if (total <= 0.0) {
        throw std::runtime_error("project_to_physical: matrix vanishes after clipping");
    }
    clipped /= total;
    ComplexMatrix r =
        solver.eigenvectors() * clipped.asDiagonal() * solver.eigenvectors().adjoint();
    return (r + r.adjoint()) / 2.0;
}

std::vector<ComplexMatrix> traceless_hermitian_basis(Eigen::Index dim) {
    if (dim < 2) {
        throw std::invalid_argument("traceless_hermitian_basis: dim must be >= 2");
    }
    std::vector<ComplexMatrix> basis;
    basis.reserve(static_cast<std::size_t>(dim * dim - 1));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = i + 1; j < dim; ++j) {
            ComplexMatrix sym = ComplexMatrix::Zero(dim, dim);
            sym(i, j) = inv_sqrt2;
            sym(j, i) = inv_sqrt2;
            basis.push_back(sym);
            ComplexMatrix anti = ComplexMatrix::Zero(dim, dim);
            anti(i, j) = Complex(0.0, -inv_sqrt2);
            anti(j, i) = Complex(0.0, inv_sqrt2);
            basis.push_back(anti);
        }
    }
    for (Eigen::Index k = 1; k < dim; ++k) {
        ComplexMatrix diag = ComplexMatrix::Zero(dim, dim);
        const double norm = 1.0 / std::sqrt(static_cast<double>(k * (k + 1)));
        for (Eigen::Index j = 0; j < k; ++j) {
            diag(j, j) = norm;
        }
        diag(k, k) = -static_cast<double>(k) * norm;
        basis.push_back(diag);
    }
    return basis;
}

RealVector hermitian_coordinates(const ComplexMatrix& m,
                                 const std::vector<ComplexMatrix>& traceless_basis) {
    const Eigen::Index dim = m.rows();
    RealVector coords(static_cast<Eigen::Index>(traceless_basis.size()) + 1);
    coords[0] = m.trace().real() / std::sqrt(static_cast<double>(dim));
    for (std::size_t k = 0; k < traceless_basis.size(); ++k) {
        coords[static_cast<Eigen::Index>(k) + 1] = trace_product(traceless_basis[k], m).real();
    }
    return coords;
}

}  // namespace mubtomo
