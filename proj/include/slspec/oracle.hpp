#pragma once
// Independent finite-difference oracle: second-order centered stencils on a
// sequence of meshes, eigenvalues located by Sturm/inertia bisection on the
// symmetric (tridiagonal, or tridiagonal-plus-corner for the periodic cases)
// matrices, then Richardson-extrapolated at order 2. Shares no code with the
// shooting path; used for cross-validation and fixture generation.

#include <vector>

#include "slspec/potential.hpp"

namespace slspec {

enum class OracleBc { DD, NN, DN, ND, PER2, PER4 };
const char* oracle_bc_name(OracleBc bc);

struct OracleConfig {
    std::vector<double> mesh_sizes = {1.0 / 1024, 1.0 / 2048, 1.0 / 4096};
    int levels = 10;
};

struct OracleResult {
    // DD/DN/ND: eigenvalues 1..levels. NN: nu_0..nu_levels. PER2: sorted
    // (lam0_plus, lam_n -/+ for n <= levels), 2*levels+1 values; PER4 the
    // same for the doubled problem's 4-periodic spectrum.
    std::vector<double> values;
    std::vector<double> error_estimates;
};

OracleResult fd_spectrum(const Potential& q, OracleBc bc, const OracleConfig& cfg = {});

}  // namespace slspec
