#pragma once
// File formats: potential JSON (fourier or grid form), spectral-vector JSON,
// report JSON. Parsing uses nlohmann::json; every numeric value is emitted
// through the fixed 17-significant-digit writer so reruns are byte-identical.

#include <iosfwd>
#include <string>

#include "slspec/equivalence.hpp"
#include "slspec/inverse.hpp"
#include "slspec/potential.hpp"
#include "slspec/spectral_maps.hpp"

namespace slspec {

// shortest-but-exact is not the goal; fixed %.17g keeps round trips lossless
// and output stable across runs
std::string fmt17(double v);

void write_potential_json(std::ostream& os, const Potential& q);

struct PotentialReadInfo {
    bool from_grid = false;
    double removed_mean = 0;
    double tail_rms = 0;
};
// Accepts {"fourier": {"cos": [...], "sin": [...]}} or {"grid": {"values":
// [...]}} (uniform midpoint samples); grid input is projected on at most
// grid_modes Fourier modes with the mean removed. Malformed input throws
// std::invalid_argument.
Potential read_potential_json(const std::string& text, int grid_modes = 16,
                              PotentialReadInfo* info = nullptr);

void write_spectral_vector_json(std::ostream& os, const SpectralVector& v);
SpectralVector read_spectral_vector_json(const std::string& text);

void write_equivalence_report_json(std::ostream& os, const EquivalenceReport& report);
void write_reconstruction_report_json(std::ostream& os, const ReconstructionResult& result,
                                      const SolverConfig& cfg);
void write_estimate_report_json(std::ostream& os, const EstimateReport& report);

std::string read_text_file(const std::string& path);

}  // namespace slspec
