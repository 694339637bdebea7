#pragma once
// Truncated inverse of the gap map: Newton iteration on 2N Fourier
// coefficients matching the first 2N gap-map entries, with analytic
// Jacobian rows from eigenvalue gradients (squared normalized
// eigenfunctions) projected on the Fourier basis.

#include <vector>

#include "slspec/fundamental.hpp"
#include "slspec/potential.hpp"
#include "slspec/spectral_maps.hpp"

namespace slspec {

enum class JacobianMode { analytic, finite_difference };

struct SolverConfig {
    int N = 12;                  // map entries 1..2N, Fourier modes 1..N
    double residual_tol = 1e-8;  // l2 on the 2N-entry residual
    int max_iter = 60;
    double damping_factor = 0.5;
    double min_step = 1.0 / 1024.0;
    JacobianMode jacobian_mode = JacobianMode::analytic;
    double fd_step = 1e-5;  // central-difference step scale, h_k = fd_step*(1+|c_k|)
    double condition_limit = 1e10;
    IntegratorConfig integrator{};
    int tail_levels = 4;  // extra levels reported as uncontrolled tail residual
};

struct ReconstructionResult {
    Potential potential;
    double residual_norm = 0;
    int iterations = 0;
    bool converged = false;
    double jacobian_condition_estimate = 0;
    double tail_residual = 0;  // l2 of gap-map entries N+1 .. N+tail_levels
    std::vector<double> residual_history;
};

// d lambda_n / dq as a grid function: y_n^2 with integral 1; the directional
// derivative of the eigenvalue along dq is the integral of y_n^2 * dq.
GridFunction eigenvalue_gradient(const Potential& q, Bc bc, int n,
                                 const IntegratorConfig& cfg = {});

// d(gap map)/d(Fourier coefficients) at q, a 2N x 2N matrix in row-major
// nested vectors: row i is gap-map entry i+1, column 2k-2 the cos(2 pi k x)
// coefficient, column 2k-1 the sin one. Mode selects the analytic rows
// (eigenfunction squares) or central finite differences on the forward map.
std::vector<std::vector<double>> gap_map_jacobian(const Potential& q,
                                                  const SolverConfig& cfg);

// target must have kind gap_f and length 2N matching config. Initial guess 0,
// or the warm-start coefficients when given (used by the involutions).
ReconstructionResult reconstruct_from_gap_map(const SpectralVector& target,
                                              const SolverConfig& cfg,
                                              const Potential* warm_start = nullptr);

}  // namespace slspec
