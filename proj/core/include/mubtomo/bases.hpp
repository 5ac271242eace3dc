#pragma once

#include "mubtomo/linalg.hpp"
#include "mubtomo/states.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace mubtomo {

/// One POVM element. Rank 1 for projective measurements; rank 2 for
/// visibility-degraded entangled measurements.
struct MeasurementOperator {
    std::string label;
    ComplexMatrix matrix;
    int rank = 1;
};

/// One measurement setting: D operators summing to the identity.
struct MeasurementBasis {
    int index = 0;
    std::vector<MeasurementOperator> elements;
    bool entangled = false;
};

/// A named, ordered list of measurement bases.
struct MeasurementScheme {
    std::string name;
    Eigen::Index dim = 0;
    int num_qubits = 0;
    std::vector<MeasurementBasis> bases;
    double visibility = 1.0;

    std::size_t total_elements() const;
};

/// Cross-basis overlap report produced by certify_unbiased.
struct UnbiasedReport {
    double min_deviation = 0.0;   // min |overlap - 1/D| over cross-basis pairs
    double max_deviation = 0.0;   // max |overlap - 1/D|
    std::size_t pair_count = 0;   // unordered cross-basis element pairs
    std::vector<double> overlap_values;  // distinct overlaps, ascending
};

/// Standard separable tomography: the nine bases of pairwise Pauli
/// eigenstates (36 rank-1 projectors).
MeasurementScheme ssqst_scheme();

/// Mutually unbiased bases for two qubits: three separable bases plus two
/// maximally entangled ones. For visibility < 1 each entangled projector is
/// replaced by the rank-2 mixture
///   (1+V)/2 |e><e| + (1-V)/2 |e_perp><e_perp|
/// with e_perp the paired partner inside the same +- pair.
MeasurementScheme mub_scheme(double visibility = 1.0);

/// Single-qubit MUBs {H,V}, {D,A}, {R,L} as a D=2 convenience scheme.
MeasurementScheme single_qubit_mub_scheme();

/// Scheme lookup by case-insensitive name ("mub" or "ssqst"). The visibility
/// applies to the MUB scheme only.
MeasurementScheme scheme_by_name(std::string_view name, double visibility = 1.0);

/// Hilbert-Schmidt overlap Re Tr[p q]; equals |<p|q>|^2 for projectors.
double overlap(const MeasurementOperator& p, const MeasurementOperator& q);

/// Scan all cross-basis element pairs and report how far their overlaps sit
/// from the unbiased value 1/D.
UnbiasedReport certify_unbiased(const MeasurementScheme& s);

/// True iff the scheme's elements span the full dim^2-dimensional operator
/// space (informational completeness), rank computed at tolerance 1e-9.
bool certify_complete(const MeasurementScheme& s);

}  // namespace mubtomo
