#pragma once
// Sign sequences, the gap-map sign flip J_sigma, the potential-space
// involution U_sigma (gap-flip then inverse solve), and the verification
// suites for the exchange theorems, the doubling lemma, and the smoothness
// diagnostic.

#include <optional>
#include <string>
#include <vector>

#include "slspec/inverse.hpp"
#include "slspec/spectral_maps.hpp"

namespace slspec {

struct SignSequence {
    std::vector<int> prefix;   // sigma_1 .. sigma_m
    std::vector<int> tail;     // repeats after the prefix; never empty

    static SignSequence all_ones();
    static SignSequence odd_ones();  // sigma_{2j-1} = 1, sigma_{2j} = 0
    // "all-ones" | "odd-ones" | comma bits ("1,0,1,1"), padded by repeating
    // the final two-bit pattern.
    static SignSequence parse(const std::string& text);

    int bit(int j) const;  // 1-indexed
    std::string describe() const;
    bool is_all_ones(int up_to) const;
    bool is_odd_ones(int up_to) const;
};

SpectralVector apply_sign_flip(const SignSequence& sigma, const SpectralVector& v);

// U_sigma q: solves gap_map(result) = J_sigma gap_map(q) at truncation
// config.N, warm-started from q. Inverse-solver failures propagate.
Potential involution(const SignSequence& sigma, const Potential& q,
                     const SolverConfig& cfg);

struct IdentityCheck {
    std::string name;
    double residual = 0;
    double tolerance = 0;
    bool pass = false;
};

struct EquivalenceReport {
    std::string which;   // t1 / t2 / t3 / doubling / smoothness
    std::string sigma;
    int N = 0;
    bool solver_failed = false;
    std::string failure_cause;
    std::vector<IdentityCheck> identities;
    bool pass = false;  // all identities pass and the solver did not fail

    void add(const std::string& name, double residual, double tolerance);
};

enum class Theorem { T1, T2, T3 };

// Checks the selected theorem's identities entrywise for n <= 3N/4 (top
// quarter excluded as the truncation boundary). T3 takes the caller sigma
// (must satisfy sigma_{2j-1} = 1).
EquivalenceReport verify_theorem(const Potential& q, Theorem which, const SolverConfig& cfg,
                                 const std::optional<SignSequence>& sigma_t3 = std::nullopt);

// Lemma-level doubling checks: Dirichlet/Neumann spectra of the even
// extension against the interleaved tau/mu and rho/nu values, and the
// doubled band edges against the unordered pairs {tau,rho} / {mu,nu}.
EquivalenceReport verify_doubling(const Potential& q, int N,
                                  const IntegratorConfig& cfg = {});

struct MixedMaps {
    SpectralVector zeta;   // (mu_n, tau_n) or (nu_n, rho_n) per level
    SpectralVector xi;     // (mu_n, h_{s,n}) or (nu_n, gh_{s,n})
    SpectralVector frak_f; // p_n or frak_p_n
};
// Requires sigma_{2j-1} = 1 for all levels in range (usage error otherwise);
// level n selects the Neumann-side sources when sigma_n = 1.
MixedMaps assemble_mixed_map(const SignSequence& sigma, const SpectrumTable& table);

struct SmoothnessReport {
    bool defined = false;       // false when too few resolved modes
    double slope_q = 0;         // least-squares slope of log|c_k| vs log k
    double slope_involved = 0;
    int resolved_modes_q = 0;
    int resolved_modes_involved = 0;
    std::string note;
};
SmoothnessReport smoothness_diagnostic(const Potential& q, const SignSequence& sigma,
                                       const SolverConfig& cfg);

}  // namespace slspec
