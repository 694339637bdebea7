#pragma once
// Boundary spectra (Dirichlet, Neumann, mixed), periodic band edges, the
// in-gap discriminant maximizers, norming constants, and the validated
// spectrum table. Roots are bracketed by the monotone Prufer angle
// (oscillation counting), then polished by safeguarded secant on the
// shooting residual, so nearly double roots at closing gaps cannot be
// skipped or double-counted.

#include <iosfwd>
#include <vector>

#include "slspec/fundamental.hpp"
#include "slspec/potential.hpp"

namespace slspec {

enum class NormingVariant { dirichlet, neumann };

struct SpectrumTable {
    int N = 0;
    double nu0 = 0;
    std::vector<double> mu, nu, tau, rho;  // level n at index n-1
    double lam0_plus = 0;
    std::vector<double> lam_minus, lam_plus, lam_star;
    std::vector<bool> gap_closed;
    std::vector<double> hs, ghs;
    std::vector<double> delta_lam_star;  // Delta(lambda_n), consumed by the h-map
};

struct PeriodicSpectrum {
    double lam0_plus = 0;
    std::vector<double> lam_minus, lam_plus;
    std::vector<bool> closed;
};

// First N zeros (N+1 for NN, which starts at nu_0) of the tagged boundary
// value, in increasing order.
std::vector<double> boundary_eigenvalues(const Potential& q, Bc bc, int N,
                                         const IntegratorConfig& cfg = {});
std::vector<double> boundary_eigenvalues(const ExtendedPotential& q, Bc bc, int N,
                                         const IntegratorConfig& cfg = {});

PeriodicSpectrum periodic_spectrum(const Potential& q, int N,
                                   const IntegratorConfig& cfg = {});
// Band edges of the doubled problem (4-periodic), computed on [0,2] with the
// discriminant of the length-2 interval.
PeriodicSpectrum periodic_spectrum(const ExtendedPotential& q, int N,
                                   const IntegratorConfig& cfg = {});

std::vector<double> discriminant_maxima(const Potential& q, int N,
                                        const IntegratorConfig& cfg = {});

std::vector<double> norming_constants(const Potential& q, int N, NormingVariant variant,
                                      const IntegratorConfig& cfg = {});

// Full table with every invariant checked (interlacing, band placement,
// cosh-relation); an invariant violation throws rather than returning a bad
// table.
SpectrumTable spectrum_table(const Potential& q, int N, const IntegratorConfig& cfg = {});

// CSV with header n,mu,nu,tau,rho,lam_minus,lam_plus,lam_star,h_s,gh_s;
// row n = 0 carries nu_0 and lam_plus only.
void write_spectrum_csv(std::ostream& os, const SpectrumTable& table);

}  // namespace slspec
