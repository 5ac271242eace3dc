#include "mubtomo/states.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>
#include <string>

namespace mubtomo {

namespace {

constexpr double kNormTol = 1e-12;
constexpr double kTraceTol = 1e-10;

ComplexVector single_qubit_amplitudes(char letter) {
    const double s = 1.0 / std::sqrt(2.0);
    ComplexVector v(2);
    switch (letter) {
        case 'H': v << Complex(1, 0), Complex(0, 0); break;
        case 'V': v << Complex(0, 0), Complex(1, 0); break;
        case 'D': v << Complex(s, 0), Complex(s, 0); break;
        case 'A': v << Complex(s, 0), Complex(-s, 0); break;
        case 'R': v << Complex(s, 0), Complex(0, s); break;
        case 'L': v << Complex(s, 0), Complex(0, -s); break;
        default:
            throw std::invalid_argument(std::string("ket: unknown polarization letter '") +
                                        letter + "'");
    }
    return v;
}

}  // namespace

PureState::PureState(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() < 2) {
        throw std::invalid_argument("PureState: need at least two amplitudes");
    }
    const double norm2 = amplitudes_.squaredNorm();
    if (std::abs(norm2 - 1.0) > kNormTol) {
        throw std::invalid_argument("PureState: amplitudes are not normalized");
    }
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix) : matrix_(std::move(matrix)) {
    if (matrix_.rows() != matrix_.cols() || matrix_.rows() < 2) {
        throw std::invalid_argument("DensityMatrix: matrix must be square, dim >= 2");
    }
    if (!is_hermitian(matrix_)) {
        throw std::invalid_argument("DensityMatrix: matrix not Hermitian within tolerance");
    }
    if (std::abs(matrix_.trace().real() - 1.0) > kTraceTol ||
        std::abs(matrix_.trace().imag()) > kTraceTol) {
        throw std::invalid_argument("DensityMatrix: trace differs from 1");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(matrix_);
    if (solver.info() != Eigen::Success) {
        throw std::invalid_argument("DensityMatrix: eigensolver failed");
    }
    if (solver.eigenvalues().minCoeff() < -kPsdTol) {
        throw std::invalid_argument("DensityMatrix: matrix has a negative eigenvalue");
    }
}

PureState ket(std::string_view label) {
    if (label.empty() || label.size() > 2) {
        throw std::invalid_argument("ket: label must have one letter per qubit, length 1 or 2");
    }
    ComplexVector amps = single_qubit_amplitudes(label[0]);
    for (std::size_t i = 1; i < label.size(); ++i) {
        amps = kron(amps, single_qubit_amplitudes(label[i]));
    }
    return PureState(std::move(amps));
}

PureState bell_state(BellKind kind) {
    const double s = 1.0 / std::sqrt(2.0);
    ComplexVector amps = ComplexVector::Zero(4);
    switch (kind) {
        case BellKind::PhiPlus:  amps(0) = s;  amps(3) = s;  break;
        case BellKind::PhiMinus: amps(0) = s;  amps(3) = -s; break;
        case BellKind::PsiPlus:  amps(1) = s;  amps(2) = s;  break;
        case BellKind::PsiMinus: amps(1) = s;  amps(2) = -s; break;
    }
    return PureState(std::move(amps));
}

PureState tensor(const PureState& a, const PureState& b) {
    return PureState(kron(a.amplitudes(), b.amplitudes()));
}

DensityMatrix density_from_pure(const PureState& psi) {
    return DensityMatrix(psi.amplitudes() * psi.amplitudes().adjoint());
}

DensityMatrix maximally_mixed(Eigen::Index dim) {
    if (dim < 2) {
        throw std::invalid_argument("maximally_mixed: dim must be >= 2");
    }
    return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix depolarize(const DensityMatrix& rho, double weight) {
    if (weight < 0.0 || weight > 1.0) {
        throw std::invalid_argument("depolarize: weight must be in [0, 1]");
    }
    const Eigen::Index d = rho.dim();
    ComplexMatrix m = (1.0 - weight) * rho.matrix() +
                      weight * ComplexMatrix::Identity(d, d) / static_cast<double>(d);
    return DensityMatrix(std::move(m));
}

ComplexMatrix haar_random_single_qubit_unitary(RngStream& rng) {
    // QR of a Ginibre matrix; Gram-Schmidt keeps the R diagonal real positive,
    // which makes Q exactly Haar-distributed.
    while (true) {
        ComplexMatrix z(2, 2);
        z << rng.complex_gaussian(), rng.complex_gaussian(),
             rng.complex_gaussian(), rng.complex_gaussian();
        const double n0 = z.col(0).norm();
        if (n0 < 1e-12) {
            continue;
        }
        ComplexVector q0 = z.col(0) / n0;
        ComplexVector v = z.col(1) - q0 * (q0.adjoint() * z.col(1))(0);
        const double n1 = v.norm();
        if (n1 < 1e-12) {
            continue;
        }
        ComplexMatrix u(2, 2);
        u.col(0) = q0;
        u.col(1) = v / n1;
        return u;
    }
}

DensityMatrix haar_random_separable(RngStream& rng) {
    const ComplexMatrix u1 = haar_random_single_qubit_unitary(rng);
    const ComplexMatrix u2 = haar_random_single_qubit_unitary(rng);
    ComplexVector amps = kron(u1, u2) * ket("HH").amplitudes();
    return density_from_pure(PureState(std::move(amps)));
}

DensityMatrix haar_random_max_entangled(RngStream& rng) {
    const ComplexMatrix u1 = haar_random_single_qubit_unitary(rng);
    const ComplexMatrix u2 = haar_random_single_qubit_unitary(rng);
    ComplexVector amps = kron(u1, u2) * bell_state(BellKind::PhiPlus).amplitudes();
    return density_from_pure(PureState(std::move(amps)));
}

ComplexMatrix reduced_qubit_state(const DensityMatrix& rho, int qubit) {
    if (rho.dim() != 4) {
        throw std::invalid_argument("reduced_qubit_state: expects a two-qubit state");
    }
    if (qubit != 0 && qubit != 1) {
        throw std::invalid_argument("reduced_qubit_state: qubit must be 0 or 1");
    }
    const ComplexMatrix& m = rho.matrix();
    ComplexMatrix out = ComplexMatrix::Zero(2, 2);
    for (Eigen::Index i = 0; i < 2; ++i) {
        for (Eigen::Index j = 0; j < 2; ++j) {
            for (Eigen::Index k = 0; k < 2; ++k) {
                if (qubit == 0) {
                    out(i, j) += m(2 * i + k, 2 * j + k);
                } else {
                    out(i, j) += m(2 * k + i, 2 * k + j);
                }
            }
        }
    }
    return out;
}

DensityMatrix make_named_state(std::string_view id, RngStream& rng) {
    if (id == "maximally-mixed") {
        return maximally_mixed(4);
    }
    if (id == "bell-phi-plus") {
        return density_from_pure(bell_state(BellKind::PhiPlus));
    }
    if (id == "bell-phi-minus") {
        return density_from_pure(bell_state(BellKind::PhiMinus));
    }
    if (id == "bell-psi-plus") {
        return density_from_pure(bell_state(BellKind::PsiPlus));
    }
    if (id == "bell-psi-minus") {
        return density_from_pure(bell_state(BellKind::PsiMinus));
    }
    if (id == "haar-separable") {
        return haar_random_separable(rng);
    }
    if (id == "haar-entangled") {
        return haar_random_max_entangled(rng);
    }
    if (id.size() == 2) {
        return density_from_pure(ket(id));
    }
    throw std::invalid_argument("unknown state identifier '" + std::string(id) +
                                "'; expected a two-letter polarization label, bell-phi-plus, "
                                "bell-phi-minus, bell-psi-plus, bell-psi-minus, "
                                "maximally-mixed, haar-separable or haar-entangled");
}

}  // namespace mubtomo
