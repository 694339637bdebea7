#pragma once
// Fundamental solutions of -f'' + q f = lambda f on [0,1] (or the even
// extension on [0,2]): values at the right endpoint, oscillation counts,
// the discriminant Delta(lambda), and normalized eigenfunctions.
//
// Integrator: fourth-order Magnus method with a two-point Gauss quadrature
// per step, applied to the first-order system for (f, f'). One step is the
// exact exponential of
//     Omega = (h/2)(A1 + A2) + (sqrt(3) h^2 / 12) [A2, A1],
// which for the 2x2 traceless Omega is C*I + S*Omega in closed form. The
// scheme is exact for q = 0 at any step count and its error is uniform in
// lambda on compacts, which the root-finders rely on.

#include <vector>

#include "slspec/potential.hpp"

namespace slspec {

enum class Bc { DD, NN, DN, ND };
const char* bc_name(Bc bc);

struct IntegratorConfig {
    int min_steps = 1024;           // per unit length; configuration error if < 16
    int steps_per_wavelength = 16;  // at least 12
    double lambda_max = 12000.0;    // range error beyond (per unit-length scaling)
    int grid_steps = 2048;          // eigenfunction grid per unit length
};

struct FundamentalValues {
    double lambda = 0;
    double theta1 = 1;   // theta(L, lambda)
    double dtheta1 = 0;  // theta'(L, lambda)
    double phi1 = 0;     // phi(L, lambda)
    double dphi1 = 1;    // phi'(L, lambda)
    int oscillation_count = 0;        // zeros of phi in (0, L]
    int theta_oscillation_count = 0;  // zeros of theta in (0, L]
};

struct GridFunction {
    double dx = 0;
    std::vector<double> values;  // values[i] at x = i * dx
    bool normalized = false;     // declares integral of f^2 == 1

    double trapezoid() const;  // integral of f over the grid
};

FundamentalValues fundamental_at_one(const Potential& q, double lambda,
                                     const IntegratorConfig& cfg = {});
// Same solver on the even extension; values taken at x = 2.
FundamentalValues fundamental_at_end(const ExtendedPotential& q, double lambda,
                                     const IntegratorConfig& cfg = {});

double discriminant(const Potential& q, double lambda, const IntegratorConfig& cfg = {});
// Discriminant of the length-2 interval (doubled problem).
double discriminant_doubled(const ExtendedPotential& q, double lambda,
                            const IntegratorConfig& cfg = {});

// Prufer angle at the endpoint for the phi- or theta-solution, assembled from
// the integration's zero count k and the terminal (f, f') direction:
//     angle = k*pi + atan2(|f|, (-1)^k f') in [k*pi, (k+1)*pi),
// strictly increasing in lambda. Eigenvalue targets: mu_n -> n*pi (phi),
// tau_n -> (n - 1/2)*pi (phi), rho_n -> n*pi (theta), nu_n -> (n + 1/2)*pi
// (theta, n >= 0).
double prufer_angle_phi(const FundamentalValues& v);
double prufer_angle_theta(const FundamentalValues& v);

// Normalized eigenfunction (integral of y^2 = 1, grid step 1/grid_steps),
// sign fixed so the solution's unit initial data is positive: y is phi(. ,
// lambda) scaled for Dirichlet-at-0 tags (DD, DN), theta(. , lambda) for
// Neumann-at-0 tags (NN, ND). Throws SolverError("not an eigenvalue ...")
// when the boundary residual at x = 1 exceeds 1e-6 * scale.
GridFunction eigenfunction(const Potential& q, Bc bc, double eigenvalue,
                           const IntegratorConfig& cfg = {});

}  // namespace slspec
