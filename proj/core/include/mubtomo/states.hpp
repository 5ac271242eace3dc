#pragma once

#include "mubtomo/linalg.hpp"
#include "mubtomo/rng.hpp"

#include <string>
#include <string_view>

namespace mubtomo {

/// Normalized pure state of one or two polarization qubits.
class PureState {
public:
    explicit PureState(ComplexVector amplitudes);

    Eigen::Index dim() const { return amplitudes_.size(); }
    const ComplexVector& amplitudes() const { return amplitudes_; }

private:
    ComplexVector amplitudes_;
};

/// Hermitian, unit-trace, positive-semidefinite state. The constructor
/// validates all three invariants and throws std::invalid_argument on
/// violation.
class DensityMatrix {
public:
    explicit DensityMatrix(ComplexMatrix matrix);

    Eigen::Index dim() const { return matrix_.rows(); }
    const ComplexMatrix& matrix() const { return matrix_; }

private:
    ComplexMatrix matrix_;
};

enum class BellKind { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

/// Polarization ket from a label over {H,V,D,A,R,L}, one letter per qubit.
/// Conventions: H=(1,0), V=(0,1), D=(H+V)/sqrt2, A=(H-V)/sqrt2,
/// R=(H+iV)/sqrt2, L=(H-iV)/sqrt2. Multi-letter labels are tensor products.
PureState ket(std::string_view label);

/// Phi+- = (|HH> +- |VV>)/sqrt2, Psi+- = (|HV> +- |VH>)/sqrt2.
PureState bell_state(BellKind kind);

PureState tensor(const PureState& a, const PureState& b);

DensityMatrix density_from_pure(const PureState& psi);
DensityMatrix maximally_mixed(Eigen::Index dim);

/// (1 - weight) * rho + weight * I/dim, weight in [0, 1].
DensityMatrix depolarize(const DensityMatrix& rho, double weight);

/// Haar-distributed 2x2 unitary (QR of a complex Gaussian matrix with the
/// R diagonal phase fixed).
ComplexMatrix haar_random_single_qubit_unitary(RngStream& rng);

/// (U1 (x) U2)|HH>: a Haar-random pure product state.
DensityMatrix haar_random_separable(RngStream& rng);

/// (U1 (x) U2)|Phi+>: a Haar-random maximally entangled pure state.
DensityMatrix haar_random_max_entangled(RngStream& rng);

/// Partial trace of a two-qubit state onto one qubit (0 = first, 1 = second).
ComplexMatrix reduced_qubit_state(const DensityMatrix& rho, int qubit);

/// Resolve a named-state identifier: a two-letter polarization label ("HV",
/// "DD", ...), "bell-phi-plus" / "bell-phi-minus" / "bell-psi-plus" /
/// "bell-psi-minus", "maximally-mixed", "haar-separable", "haar-entangled".
/// The rng is consumed only by the haar-* identifiers.
DensityMatrix make_named_state(std::string_view id, RngStream& rng);

}  // namespace mubtomo
