#pragma once
// Coordinate maps built from a SpectrumTable: the gap map f, the two-component
// p/h maps (Dirichlet variants), their Neumann analogues frak_p/frak_h, the
// two-spectra pairings, map norms, and the two-sided norm estimates.

#include <array>
#include <string>
#include <vector>

#include "slspec/eigensolve.hpp"

namespace slspec {

enum class VecKind {
    gap_f,
    p,
    frak_p,
    h,
    frak_h,
    pair_mu_tau,
    pair_nu_rho,
    pair_nu_tau,
    pair_mu_rho,
    pair_mu_hs,
    pair_nu_ghs,
    mixed_zeta,  // sign-selected assemblies (level-wise mixed sources)
    mixed_xi,
    mixed_p,
};

const char* vec_kind_name(VecKind k);
VecKind vec_kind_from_name(const std::string& name);
bool vec_kind_is_scalar(VecKind k);

struct SpectralVector {
    VecKind kind = VecKind::gap_f;
    int N = 0;
    std::vector<double> scalars;                // gap_f: 2N entries
    std::vector<std::array<double, 2>> pairs;   // all two-component kinds: N entries
};

// f_{2n-1} = rho_n - tau_n, f_{2n} = nu_n - mu_n.
SpectralVector gap_map(const SpectrumTable& table);

// p_{n,1} = (lam_plus + lam_minus)/2 - mu_n (dirichlet; nu_n for neumann),
// |p_n| = (lam_plus - lam_minus)/2, p_{n,2} = sqrt(|p_n|^2 - p_{n,1}^2) with
// the sign of the matching norming constant (+0 when that constant is 0).
SpectralVector p_map(const SpectrumTable& table, NormingVariant variant);

// |h_n| = arccosh|Delta(lambda_n)|, second slot from the norming constant,
// first slot h_{c,n} = sqrt(|h_n|^2 - h_{s,n}^2) * sign(lambda_n - mu_n)
// (nu_n for the neumann variant). Entries are stored as (h_{c,n}, h_{s,n}).
SpectralVector h_map(const SpectrumTable& table, NormingVariant variant);

enum class PairWhich { mu_tau, nu_rho, nu_tau, mu_rho, mu_hs, nu_ghs };
SpectralVector pair_map(const SpectrumTable& table, PairWhich which);

// l2 norm for gap_f/p/frak_p; weighted norm sqrt(sum n^2 |h_n|^2) for the
// h kinds. Pairings have no norm (usage error).
double map_norm(const SpectralVector& v);

struct EstimateLine {
    std::string name;        // which inequality
    double lhs = 0, rhs = 0; // as evaluated at truncation N
    bool holds = false;
    // Truncation cuts only map norms, which therefore underestimate. A PASS
    // is rigorous when the truncated side is the larger one (map norm on the
    // right); a VIOLATION is rigorous when the truncated side is the smaller
    // one (map norm on the left).
    bool rigorous = false;   // whether the *outcome* (holds or not) is conclusive
};

struct EstimateReport {
    double q_norm = 0;
    double f_norm = 0, p_norm = 0, h1_norm = 0, h_sup = 0;
    std::vector<EstimateLine> lines;
    bool any_rigorous_violation = false;
};

// Requires N >= 16 (tails above the truncation must be negligible for the
// report's rigor labels to mean anything).
EstimateReport estimate_check(const Potential& q, const SpectrumTable& table);

}  // namespace slspec
