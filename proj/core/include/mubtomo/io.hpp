#pragma once

#include "mubtomo/bases.hpp"
#include "mubtomo/estimate.hpp"
#include "mubtomo/simulate.hpp"

#include <iosfwd>
#include <string>

namespace mubtomo {

/// Scheme export: per basis, element labels and matrices as nested arrays of
/// [real, imaginary] pairs.
std::string scheme_to_json(const MeasurementScheme& scheme);
void save_scheme(const std::string& path, const MeasurementScheme& scheme);

/// Counts as structured text: scheme name, model, seed provenance and one
/// labeled integer vector per basis (labels come from the scheme when given).
std::string count_data_to_json(const CountData& counts,
                               const MeasurementScheme* scheme = nullptr);
CountData count_data_from_json(const std::string& text);
void save_count_data(const std::string& path, const CountData& counts,
                     const MeasurementScheme* scheme = nullptr);
CountData load_count_data(const std::string& path);

/// Reconstruction export: density matrix as nested [real, imaginary] arrays
/// plus the convergence diagnostics.
std::string reconstruction_to_json(const ReconstructionResult& result);
void save_reconstruction(const std::string& path, const ReconstructionResult& result);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace mubtomo
