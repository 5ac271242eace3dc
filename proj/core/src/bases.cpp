#include "mubtomo/bases.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace mubtomo {

namespace {

MeasurementOperator projector(std::string label, const ComplexVector& amps, int rank = 1) {
    return MeasurementOperator{std::move(label), amps * amps.adjoint(), rank};
}

MeasurementBasis separable_basis(int index, const std::array<const char*, 4>& labels) {
    MeasurementBasis basis;
    basis.index = index;
    basis.entangled = false;
    for (const char* label : labels) {
        basis.elements.push_back(projector(label, ket(label).amplitudes()));
    }
    return basis;
}

// (|ab> + sign * i |cd>)/sqrt2
ComplexVector entangled_ket(const char* ab, const char* cd, double sign) {
    const double s = 1.0 / std::sqrt(2.0);
    return s * (ket(ab).amplitudes() + Complex(0.0, sign) * ket(cd).amplitudes());
}

MeasurementBasis entangled_basis(int index, const char* ab, const char* cd, const char* ef,
                                 const char* gh) {
    MeasurementBasis basis;
    basis.index = index;
    basis.entangled = true;
    basis.elements.push_back(projector(std::string(ab) + "+i" + cd, entangled_ket(ab, cd, +1.0)));
    basis.elements.push_back(projector(std::string(ab) + "-i" + cd, entangled_ket(ab, cd, -1.0)));
    basis.elements.push_back(projector(std::string(ef) + "+i" + gh, entangled_ket(ef, gh, +1.0)));
    basis.elements.push_back(projector(std::string(ef) + "-i" + gh, entangled_ket(ef, gh, -1.0)));
    return basis;
}

// Mix each entangled projector with its partner inside the same +- pair:
// element 2k with 2k+1, weights (1+V)/2 and (1-V)/2.
void degrade_entangled_basis(MeasurementBasis& basis, double visibility) {
    const double w_plus = (1.0 + visibility) / 2.0;
    const double w_minus = (1.0 - visibility) / 2.0;
    std::vector<ComplexMatrix> pure;
    pure.reserve(basis.elements.size());
    for (const auto& el : basis.elements) {
        pure.push_back(el.matrix);
    }
    for (std::size_t k = 0; k + 1 < basis.elements.size(); k += 2) {
        basis.elements[k].matrix = w_plus * pure[k] + w_minus * pure[k + 1];
        basis.elements[k].rank = 2;
        basis.elements[k + 1].matrix = w_plus * pure[k + 1] + w_minus * pure[k];
        basis.elements[k + 1].rank = 2;
    }
}

}  // namespace

std::size_t MeasurementScheme::total_elements() const {
    std::size_t n = 0;
    for (const auto& basis : bases) {
        n += basis.elements.size();
    }
    return n;
}

MeasurementScheme ssqst_scheme() {
    MeasurementScheme s;
    s.name = "SSQST";
    s.dim = 4;
    s.num_qubits = 2;
    s.visibility = 1.0;
    const std::array<std::array<const char*, 4>, 9> rows = {{
        {"HH", "HV", "VH", "VV"},
        {"HD", "HA", "VD", "VA"},
        {"HR", "HL", "VR", "VL"},
        {"DH", "DV", "AH", "AV"},
        {"DD", "DA", "AD", "AA"},
        {"DR", "DL", "AR", "AL"},
        {"RH", "RV", "LH", "LV"},
        {"RD", "RA", "LD", "LA"},
        {"RR", "RL", "LR", "LL"},
    }};
    for (std::size_t i = 0; i < rows.size(); ++i) {
        s.bases.push_back(separable_basis(static_cast<int>(i), rows[i]));
    }
    return s;
}

MeasurementScheme mub_scheme(double visibility) {
    if (!(visibility > 0.0) || visibility > 1.0) {
        throw std::invalid_argument("mub_scheme: visibility must be in (0, 1]");
    }
    MeasurementScheme s;
    s.name = "MUB";
    s.dim = 4;
    s.num_qubits = 2;
    s.visibility = visibility;
    s.bases.push_back(separable_basis(0, {"HH", "HV", "VH", "VV"}));
    s.bases.push_back(separable_basis(1, {"RD", "RA", "LD", "LA"}));
    s.bases.push_back(separable_basis(2, {"DR", "DL", "AR", "AL"}));
    s.bases.push_back(entangled_basis(3, "RL", "LR", "RR", "LL"));
    s.bases.push_back(entangled_basis(4, "RV", "LH", "RH", "LV"));
    if (visibility < 1.0) {
        for (auto& basis : s.bases) {
            if (basis.entangled) {
                degrade_entangled_basis(basis, visibility);
            }
        }
    }
    return s;
}

MeasurementScheme single_qubit_mub_scheme() {
    MeasurementScheme s;
    s.name = "MUB-1Q";
    s.dim = 2;
    s.num_qubits = 1;
    s.visibility = 1.0;
    const std::array<std::array<const char*, 2>, 3> rows = {{
        {"H", "V"},
        {"D", "A"},
        {"R", "L"},
    }};
    for (std::size_t i = 0; i < rows.size(); ++i) {
        MeasurementBasis basis;
        basis.index = static_cast<int>(i);
        for (const char* label : rows[i]) {
            basis.elements.push_back(projector(label, ket(label).amplitudes()));
        }
        s.bases.push_back(std::move(basis));
    }
    return s;
}

MeasurementScheme scheme_by_name(std::string_view name, double visibility) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "mub") {
        return mub_scheme(visibility);
    }
    if (lower == "ssqst") {
        return ssqst_scheme();
    }
    if (lower == "mub-1q") {
        return single_qubit_mub_scheme();
    }
    throw std::invalid_argument("unknown scheme '" + std::string(name) +
                                "'; expected mub or ssqst");
}

double overlap(const MeasurementOperator& p, const MeasurementOperator& q) {
    if (p.matrix.rows() != q.matrix.rows()) {
        throw std::invalid_argument("overlap: operators have different dimensions");
    }
    return trace_product(p.matrix, q.matrix).real();
}

UnbiasedReport certify_unbiased(const MeasurementScheme& s) {
    UnbiasedReport report;
    const double target = 1.0 / static_cast<double>(s.dim);
    double min_dev = 0.0;
    double max_dev = 0.0;
    bool first = true;
    std::vector<double> values;
    for (std::size_t a = 0; a < s.bases.size(); ++a) {
        for (std::size_t b = a + 1; b < s.bases.size(); ++b) {
            for (const auto& p : s.bases[a].elements) {
                for (const auto& q : s.bases[b].elements) {
                    const double o = overlap(p, q);
                    const double dev = std::abs(o - target);
                    if (first) {
                        min_dev = max_dev = dev;
                        first = false;
                    } else {
                        min_dev = std::min(min_dev, dev);
                        max_dev = std::max(max_dev, dev);
                    }
                    ++report.pair_count;
                    values.push_back(o);
                }
            }
        }
    }
    report.min_deviation = min_dev;
    report.max_deviation = max_dev;
    std::sort(values.begin(), values.end());
    for (double v : values) {
        if (report.overlap_values.empty() || v - report.overlap_values.back() > 1e-9) {
            report.overlap_values.push_back(v);
        }
    }
    return report;
}

bool certify_complete(const MeasurementScheme& s) {
    const Eigen::Index d = s.dim;
    const auto basis = traceless_hermitian_basis(d);
    const Eigen::Index full = d * d;
    RealMatrix coords(static_cast<Eigen::Index>(s.total_elements()), full);
    Eigen::Index row = 0;
    for (const auto& b : s.bases) {
        for (const auto& el : b.elements) {
            coords.row(row++) = hermitian_coordinates(el.matrix, basis).transpose();
        }
    }
    if (row < full) {
        return false;
    }
    Eigen::JacobiSVD<RealMatrix> svd(coords);
    const double cutoff = 1e-9 * std::max(1.0, svd.singularValues()[0]);
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
        if (svd.singularValues()[i] > cutoff) {
            ++rank;
        }
    }
    return rank == full;
}

}  // namespace mubtomo
