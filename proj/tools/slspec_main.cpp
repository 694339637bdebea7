// slspec: command-line front end for the Sturm-Liouville spectral toolkit.
//
// Subcommands: spectrum, discriminant, involve, reconstruct,
// verify {t1,t2,t3,doubling,smoothness}, oracle-compare.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error,
// 3 solver failure. Re-running a command with identical inputs produces
// byte-identical output files.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "slspec/eigensolve.hpp"
#include "slspec/equivalence.hpp"
#include "slspec/fundamental.hpp"
#include "slspec/inverse.hpp"
#include "slspec/json_io.hpp"
#include "slspec/numeric.hpp"
#include "slspec/oracle.hpp"
#include "slspec/potential.hpp"
#include "slspec/spectral_maps.hpp"

namespace {

using namespace slspec;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitSolver = 3;

// Options shared by every subcommand; solver knobs only matter where a
// Newton solve runs but parsing them uniformly keeps the grammar small.
struct GlobalOptions {
    int threads = std::max(1u, std::thread::hardware_concurrency());
    int grid_steps = 2048;
    double residual_tol = 1e-8;
    int max_iter = 60;
    std::string jacobian = "analytic";
    double fd_step = 1e-5;
    double condition_limit = 1e10;
    int tail_levels = 4;

    IntegratorConfig integrator() const {
        IntegratorConfig cfg;
        cfg.grid_steps = grid_steps;
        return cfg;
    }
    SolverConfig solver(int levels) const {
        SolverConfig cfg;
        cfg.N = levels;
        cfg.residual_tol = residual_tol;
        cfg.max_iter = max_iter;
        cfg.jacobian_mode = jacobian == "analytic" ? JacobianMode::analytic
                                                   : JacobianMode::finite_difference;
        cfg.fd_step = fd_step;
        cfg.condition_limit = condition_limit;
        cfg.tail_levels = tail_levels;
        cfg.integrator = integrator();
        return cfg;
    }
    void apply() const { set_thread_budget(threads); }
};

void write_file(const std::string& path, const std::function<void(std::ostream&)>& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open for writing: " + path);
    body(out);
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path);
}

// input and output paths must not collide (the reader would race the writer)
void ensure_distinct(const std::vector<std::string>& paths) {
    std::vector<std::filesystem::path> seen;
    for (const auto& p : paths) {
        if (p.empty()) continue;
        std::filesystem::path canon;
        try {
            canon = std::filesystem::weakly_canonical(p);
        } catch (const std::filesystem::filesystem_error&) {
            canon = std::filesystem::path(p).lexically_normal();
        }
        for (const auto& s : seen)
            if (s == canon)
                throw std::invalid_argument("input and output paths must be distinct: " + p);
        seen.push_back(canon);
    }
}

Potential load_potential(const std::string& path, int grid_modes,
                         PotentialReadInfo* info = nullptr) {
    return read_potential_json(read_text_file(path), grid_modes, info);
}

// splitmix64; fixed here so seeded runs are reproducible across platforms
struct SplitMix64 {
    std::uint64_t state;
    std::uint64_t next() {
        state += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    double symmetric() { return 2.0 * ((next() >> 11) * 0x1.0p-53) - 1.0; }
};

Potential random_potential(std::uint64_t seed, int modes, double norm) {
    SplitMix64 rng{seed};
    std::vector<double> c(modes), s(modes);
    for (int k = 0; k < modes; ++k) {
        c[k] = rng.symmetric();
        s[k] = rng.symmetric();
    }
    double n0 = Potential(c, s).l2_norm();
    if (n0 > 0) {
        for (auto& v : c) v *= norm / n0;
        for (auto& v : s) v *= norm / n0;
    }
    return Potential(c, s);
}

// ---------------------------------------------------------------- spectrum

struct SpectrumArgs {
    std::string potential, out_csv, out_maps, out_estimates;
    int levels = 12;
};

void print_spectrum_table(const SpectrumTable& t) {
    std::printf("level 0:  nu_0 = %.12g   lam_0^+ = %.12g\n", t.nu0, t.lam0_plus);
    std::printf("%4s %18s %18s %18s %18s %18s %18s\n", "n", "mu", "nu", "tau", "rho",
                "lam_n^-", "lam_n^+");
    for (int n = 1; n <= t.N; ++n)
        std::printf("%4d %18.12g %18.12g %18.12g %18.12g %18.12g %18.12g\n", n,
                    t.mu[n - 1], t.nu[n - 1], t.tau[n - 1], t.rho[n - 1],
                    t.lam_minus[n - 1], t.lam_plus[n - 1]);
}

void write_maps_json(std::ostream& os, const Potential& q, const SpectrumTable& t,
                     const GlobalOptions& g, int levels) {
    SpectralVector f = gap_map(t);
    SpectralVector pd = p_map(t, NormingVariant::dirichlet);
    SpectralVector pn = p_map(t, NormingVariant::neumann);
    SpectralVector hd = h_map(t, NormingVariant::dirichlet);
    SpectralVector hn = h_map(t, NormingVariant::neumann);
    IntegratorConfig ic = g.integrator();
    os << "{\n  \"settings\": {\"levels\": " << levels
       << ", \"grid_steps\": " << ic.grid_steps << ", \"min_steps\": " << ic.min_steps
       << ", \"steps_per_wavelength\": " << ic.steps_per_wavelength << "},\n";
    os << "  \"norms\": {\"q\": " << fmt17(q.l2_norm()) << ", \"gap_f\": " << fmt17(map_norm(f))
       << ", \"p\": " << fmt17(map_norm(pd)) << ", \"frak_p\": " << fmt17(map_norm(pn))
       << ", \"h\": " << fmt17(map_norm(hd)) << ", \"frak_h\": " << fmt17(map_norm(hn))
       << "},\n";
    os << "  \"vectors\": {\n    \"gap_f\": ";
    write_spectral_vector_json(os, f);
    os << ",\n    \"p\": ";
    write_spectral_vector_json(os, pd);
    os << ",\n    \"frak_p\": ";
    write_spectral_vector_json(os, pn);
    os << ",\n    \"h\": ";
    write_spectral_vector_json(os, hd);
    os << ",\n    \"frak_h\": ";
    write_spectral_vector_json(os, hn);
    os << "\n  }\n}\n";
}

int cmd_spectrum(const GlobalOptions& g, const SpectrumArgs& a) {
    g.apply();
    ensure_distinct({a.potential, a.out_csv, a.out_maps, a.out_estimates});
    Potential q = load_potential(a.potential, a.levels);
    SpectrumTable t = spectrum_table(q, a.levels, g.integrator());
    print_spectrum_table(t);
    if (!a.out_csv.empty())
        write_file(a.out_csv, [&](std::ostream& os) { write_spectrum_csv(os, t); });
    if (!a.out_maps.empty())
        write_file(a.out_maps, [&](std::ostream& os) { write_maps_json(os, q, t, g, a.levels); });
    if (!a.out_estimates.empty()) {
        EstimateReport rep = estimate_check(q, t);
        write_file(a.out_estimates,
                   [&](std::ostream& os) { write_estimate_report_json(os, rep); });
        for (const auto& line : rep.lines)
            std::printf("estimate %-44s lhs %.6g  rhs %.6g  %s%s\n", line.name.c_str(),
                        line.lhs, line.rhs, line.holds ? "holds" : "VIOLATED",
                        line.rigorous ? "" : " (heuristic)");
        if (rep.any_rigorous_violation)
            std::printf("rigorous estimate violated\n");
    }
    return kExitOk;
}

// ------------------------------------------------------------ discriminant

struct DiscriminantArgs {
    std::string potential, out, markers;
    double lambda_min = -10.0, lambda_max = 420.0;
    int samples = 1200;
    int levels = 12;
};

int cmd_discriminant(const GlobalOptions& g, const DiscriminantArgs& a) {
    g.apply();
    ensure_distinct({a.potential, a.out, a.markers});
    if (!(a.lambda_min < a.lambda_max))
        throw std::invalid_argument("discriminant: lambda-min must be below lambda-max");
    Potential q = load_potential(a.potential, a.levels);
    IntegratorConfig ic = g.integrator();
    std::vector<double> lam(a.samples), delta(a.samples);
    double span = a.lambda_max - a.lambda_min;
    parallel_for(a.samples, [&](int i) {
        lam[i] = a.lambda_min + span * i / (a.samples - 1);
        FundamentalValues f = fundamental_at_one(q, lam[i], ic);
        delta[i] = 0.5 * (f.theta1 + f.dphi1);
    });
    write_file(a.out, [&](std::ostream& os) {
        os << "lambda,delta\n";
        for (int i = 0; i < a.samples; ++i)
            os << fmt17(lam[i]) << "," << fmt17(delta[i]) << "\n";
    });
    if (!a.markers.empty()) {
        SpectrumTable t = spectrum_table(q, a.levels, ic);
        write_file(a.markers, [&](std::ostream& os) { write_spectrum_csv(os, t); });
    }
    std::printf("wrote %d discriminant samples on [%.6g, %.6g] to %s\n", a.samples,
                a.lambda_min, a.lambda_max, a.out.c_str());
    return kExitOk;
}

// ----------------------------------------------------------------- involve

struct InvolveArgs {
    std::string sigma, potential, out;
    int levels = 12;
};

int cmd_involve(const GlobalOptions& g, const InvolveArgs& a) {
    g.apply();
    ensure_distinct({a.potential, a.out});
    SignSequence sigma = SignSequence::parse(a.sigma);
    Potential q = load_potential(a.potential, a.levels);
    Potential out = involution(sigma, q, g.solver(a.levels));
    write_file(a.out, [&](std::ostream& os) { write_potential_json(os, out); });
    std::printf("sigma %s, levels %d: |q| = %.12g -> |U q| = %.12g, wrote %s\n",
                sigma.describe().c_str(), a.levels, q.l2_norm(), out.l2_norm(),
                a.out.c_str());
    return kExitOk;
}

// ------------------------------------------------------------- reconstruct

struct ReconstructArgs {
    std::string target, out, report, warm_start;
};

int cmd_reconstruct(const GlobalOptions& g, const ReconstructArgs& a) {
    g.apply();
    ensure_distinct({a.target, a.warm_start, a.out, a.report});
    SpectralVector target = read_spectral_vector_json(read_text_file(a.target));
    SolverConfig cfg = g.solver(target.N);
    std::optional<Potential> warm;
    if (!a.warm_start.empty()) warm = load_potential(a.warm_start, target.N);

    ReconstructionResult res;
    try {
        res = reconstruct_from_gap_map(target, cfg, warm ? &*warm : nullptr);
    } catch (const SolverError& err) {
        // leave a machine-readable trace of the aborted solve before exiting
        if (!a.report.empty())
            write_file(a.report, [&](std::ostream& os) {
                os << "{\n  \"converged\": false,\n  \"error\": \"solver failure\",\n"
                   << "  \"settings\": {\"N\": " << cfg.N
                   << ", \"residual_tol\": " << fmt17(cfg.residual_tol)
                   << ", \"max_iter\": " << cfg.max_iter << "}\n}\n";
            });
        throw;
    }

    write_file(a.out, [&](std::ostream& os) { write_potential_json(os, res.potential); });
    if (!a.report.empty())
        write_file(a.report,
                   [&](std::ostream& os) { write_reconstruction_report_json(os, res, cfg); });
    std::printf("%s after %d iterations: residual %.6g, tail %.6g, |q| = %.12g\n",
                res.converged ? "converged" : "did not converge", res.iterations,
                res.residual_norm, res.tail_residual, res.potential.l2_norm());
    if (!res.converged) {
        std::fprintf(stderr, "reconstruct: residual %.6g above tolerance %.6g\n",
                     res.residual_norm, cfg.residual_tol);
        return kExitSolver;
    }
    return kExitOk;
}

// ------------------------------------------------------------------ verify

struct VerifyArgs {
    std::string potential, out, sigma;
    int levels = 12;
};

int report_outcome(const EquivalenceReport& rep, const std::string& out_path) {
    for (const auto& id : rep.identities)
        std::printf("  %-52s residual %.6g  tol %.6g  %s\n", id.name.c_str(), id.residual,
                    id.tolerance, id.pass ? "pass" : "FAIL");
    if (rep.solver_failed)
        std::printf("solver failed: %s\n", rep.failure_cause.c_str());
    std::printf("%s: %s\n", rep.which.c_str(), rep.pass ? "PASS" : "FAIL");
    if (!out_path.empty())
        write_file(out_path,
                   [&](std::ostream& os) { write_equivalence_report_json(os, rep); });
    if (rep.solver_failed) return kExitSolver;
    return rep.pass ? kExitOk : kExitVerifyFailed;
}

int cmd_verify_theorem(const GlobalOptions& g, const VerifyArgs& a, Theorem which) {
    g.apply();
    ensure_distinct({a.potential, a.out});
    Potential q = load_potential(a.potential, a.levels);
    std::optional<SignSequence> sigma;
    if (which == Theorem::T3) sigma = SignSequence::parse(a.sigma);
    EquivalenceReport rep = verify_theorem(q, which, g.solver(a.levels), sigma);
    return report_outcome(rep, a.out);
}

int cmd_verify_doubling(const GlobalOptions& g, const VerifyArgs& a) {
    g.apply();
    ensure_distinct({a.potential, a.out});
    Potential q = load_potential(a.potential, a.levels);
    EquivalenceReport rep = verify_doubling(q, a.levels, g.integrator());
    return report_outcome(rep, a.out);
}

int cmd_verify_smoothness(const GlobalOptions& g, const VerifyArgs& a) {
    g.apply();
    ensure_distinct({a.potential, a.out});
    Potential q = load_potential(a.potential, a.levels);
    SignSequence sigma = SignSequence::parse(a.sigma.empty() ? "all-ones" : a.sigma);
    SmoothnessReport rep = smoothness_diagnostic(q, sigma, g.solver(a.levels));
    // decay exponents of q and U_sigma q should agree when both are resolved;
    // an undersampled tail is inconclusive, not a failure
    bool pass = !rep.defined || std::abs(rep.slope_q - rep.slope_involved) <= 0.5;
    std::printf("  slope(q) = %.4f over %d resolved modes\n", rep.slope_q,
                rep.resolved_modes_q);
    std::printf("  slope(U_sigma q) = %.4f over %d resolved modes\n", rep.slope_involved,
                rep.resolved_modes_involved);
    if (!rep.defined) std::printf("  inconclusive: %s\n", rep.note.c_str());
    std::printf("smoothness: %s\n", pass ? "PASS" : "FAIL");
    if (!a.out.empty())
        write_file(a.out, [&](std::ostream& os) {
            os << "{\n  \"which\": \"smoothness\",\n  \"sigma\": \"" << sigma.describe()
               << "\",\n  \"N\": " << a.levels << ",\n  \"defined\": "
               << (rep.defined ? "true" : "false")
               << ",\n  \"slope_q\": " << fmt17(rep.slope_q)
               << ",\n  \"slope_involved\": " << fmt17(rep.slope_involved)
               << ",\n  \"resolved_modes_q\": " << rep.resolved_modes_q
               << ",\n  \"resolved_modes_involved\": " << rep.resolved_modes_involved
               << ",\n  \"pass\": " << (pass ? "true" : "false") << "\n}\n";
        });
    return pass ? kExitOk : kExitVerifyFailed;
}

// ---------------------------------------------------------- oracle-compare

struct OracleArgs {
    std::string potential, bc = "DD", out;
    int levels = 10;
    double rel_tol = 0;  // 0 = max(1e-6, 3x oracle error estimate)
    std::uint64_t seed = 1;
    int modes = 4;
    double norm = 1.5;
};

int cmd_oracle_compare(const GlobalOptions& g, const OracleArgs& a) {
    g.apply();
    ensure_distinct({a.potential, a.out});
    Potential q = a.potential.empty() ? random_potential(a.seed, a.modes, a.norm)
                                      : load_potential(a.potential, a.levels);
    if (a.potential.empty())
        std::printf("random potential: seed %llu, %d modes, |q| = %.12g\n",
                    static_cast<unsigned long long>(a.seed), a.modes, q.l2_norm());

    static const std::vector<std::pair<std::string, OracleBc>> kBcs = {
        {"DD", OracleBc::DD},   {"NN", OracleBc::NN},     {"DN", OracleBc::DN},
        {"ND", OracleBc::ND},   {"PER2", OracleBc::PER2}, {"PER4", OracleBc::PER4}};
    auto it = std::find_if(kBcs.begin(), kBcs.end(),
                           [&](const auto& p) { return p.first == a.bc; });
    if (it == kBcs.end()) throw std::invalid_argument("oracle-compare: unknown bc " + a.bc);
    OracleBc obc = it->second;

    OracleConfig ocfg;
    ocfg.levels = a.levels;
    OracleResult oracle = fd_spectrum(q, obc, ocfg);

    IntegratorConfig ic = g.integrator();
    std::vector<double> shoot;
    std::vector<std::string> label;
    auto flatten = [&](const PeriodicSpectrum& ps) {
        shoot.push_back(ps.lam0_plus);
        label.push_back("0+");
        for (int n = 1; n <= a.levels; ++n) {
            shoot.push_back(ps.lam_minus[n - 1]);
            label.push_back(std::to_string(n) + "-");
            shoot.push_back(ps.lam_plus[n - 1]);
            label.push_back(std::to_string(n) + "+");
        }
    };
    switch (obc) {
        case OracleBc::DD:
        case OracleBc::DN:
        case OracleBc::ND: {
            Bc bc = obc == OracleBc::DD ? Bc::DD : (obc == OracleBc::DN ? Bc::DN : Bc::ND);
            shoot = boundary_eigenvalues(q, bc, a.levels, ic);
            for (int n = 1; n <= a.levels; ++n) label.push_back(std::to_string(n));
            break;
        }
        case OracleBc::NN:
            shoot = boundary_eigenvalues(q, Bc::NN, a.levels, ic);
            for (int n = 0; n <= a.levels; ++n) label.push_back(std::to_string(n));
            break;
        case OracleBc::PER2:
            flatten(periodic_spectrum(q, a.levels, ic));
            break;
        case OracleBc::PER4:
            flatten(periodic_spectrum(even_extension(q), a.levels, ic));
            break;
    }
    if (shoot.size() != oracle.values.size())
        throw std::runtime_error("oracle-compare: value count mismatch");

    bool all_ok = true;
    std::vector<double> rel(shoot.size()), limit(shoot.size());
    std::vector<bool> ok(shoot.size());
    for (std::size_t i = 0; i < shoot.size(); ++i) {
        double scale = std::max(1.0, std::abs(oracle.values[i]));
        rel[i] = std::abs(shoot[i] - oracle.values[i]) / scale;
        // an explicit --rel-tol is a hard ceiling; the default rule lets the
        // oracle's own discretization error widen the band
        limit[i] = a.rel_tol > 0 ? a.rel_tol
                                 : std::max(1e-6, 3.0 * oracle.error_estimates[i] / scale);
        ok[i] = rel[i] <= limit[i];
        all_ok = all_ok && ok[i];
    }

    std::printf("%6s %20s %20s %12s %12s %5s\n", "n", "oracle", "shooting", "rel_diff",
                "limit", "ok");
    for (std::size_t i = 0; i < shoot.size(); ++i)
        std::printf("%6s %20.12g %20.12g %12.4g %12.4g %5s\n", label[i].c_str(),
                    oracle.values[i], shoot[i], rel[i], limit[i], ok[i] ? "yes" : "NO");
    std::printf("oracle-compare %s: %s\n", oracle_bc_name(obc), all_ok ? "PASS" : "FAIL");

    if (!a.out.empty())
        write_file(a.out, [&](std::ostream& os) {
            os << "n,oracle,shooting,rel_diff,limit,ok\n";
            for (std::size_t i = 0; i < shoot.size(); ++i)
                os << label[i] << "," << fmt17(oracle.values[i]) << "," << fmt17(shoot[i])
                   << "," << fmt17(rel[i]) << "," << fmt17(limit[i]) << ","
                   << (ok[i] ? 1 : 0) << "\n";
        });
    return all_ok ? kExitOk : kExitVerifyFailed;
}

const char* kFooter = R"(File formats:
  potential JSON     {"fourier": {"cos": [a1, ...], "sin": [b1, ...]}} with
                     coefficients of cos(2 pi k x) / sin(2 pi k x), or
                     {"grid": {"values": [...]}} holding uniform midpoint
                     samples, projected on at most --levels modes with the
                     mean removed.
  spectral vector    {"kind": "gap_f", "N": 12, "entries": [...]}; scalar
                     kinds list 2N numbers, two-component kinds N pairs
                     [a, b]. Kinds: gap_f, p, frak_p, h, frak_h,
                     pair_{mu_tau,nu_rho,nu_tau,mu_rho,mu_hs,nu_ghs},
                     mixed_{zeta,xi,p}.
  spectrum CSV       header n,mu,nu,tau,rho,lam_minus,lam_plus,lam_star,
                     h_s,gh_s; row 0 carries nu_0 and lam_0^+ only.
  report JSON        verify: {which, sigma, N, solver_failed, failure_cause,
                     pass, identities: [{name, residual, tolerance, pass}]};
                     reconstruct: {converged, iterations, residual_norm,
                     tail_residual, jacobian_condition_estimate,
                     residual_history, settings}.
  sigma grammar      all-ones | odd-ones | comma bits ("1,0,1,1"), extended
                     by repeating the final two-bit pattern.

All floating-point file output uses 17 significant digits; reruns with
identical inputs are byte-identical. Identity tolerances inside `verify`
are fixed contract constants; solver knobs may come from the environment:
SLSPEC_THREADS, SLSPEC_GRID_STEPS, SLSPEC_RESIDUAL_TOL, SLSPEC_CONDITION_LIMIT.

Exit codes: 0 success | 1 verification failure | 2 usage error | 3 solver failure.)";

int run(int argc, char** argv) {
    CLI::App app{"Spectral toolkit for -f'' + q f = lambda f on [0,1] with "
                 "trigonometric-polynomial q: forward spectra, coordinate maps, "
                 "sign-flip involutions, and inverse reconstruction."};
    app.footer(kFooter);
    app.require_subcommand(1);

    GlobalOptions g;
    app.add_option("--threads", g.threads, "worker threads (default: all cores)")
        ->envname("SLSPEC_THREADS")
        ->check(CLI::Range(1, 1024));
    app.add_option("--grid-steps", g.grid_steps, "uniform grid steps for norming integrals")
        ->envname("SLSPEC_GRID_STEPS")
        ->check(CLI::Range(64, 1 << 20));
    app.add_option("--residual-tol", g.residual_tol, "Newton convergence tolerance")
        ->envname("SLSPEC_RESIDUAL_TOL")
        ->check(CLI::Range(0.0, 1.0));
    app.add_option("--max-iter", g.max_iter, "Newton iteration cap")
        ->check(CLI::Range(1, 10000));
    app.add_option("--jacobian", g.jacobian, "Jacobian mode: analytic | fd")
        ->check(CLI::IsMember({"analytic", "fd"}));
    app.add_option("--fd-step", g.fd_step, "finite-difference step scale")
        ->check(CLI::Range(1e-12, 1e-1));
    app.add_option("--condition-limit", g.condition_limit,
                   "abort threshold for the Jacobian condition estimate")
        ->envname("SLSPEC_CONDITION_LIMIT")
        ->check(CLI::Range(1.0, 1e30));
    app.add_option("--tail-levels", g.tail_levels, "extra levels in the tail residual")
        ->check(CLI::Range(0, 64));

    int rc = kExitOk;
    auto levels_check = CLI::Range(1, 32);

    SpectrumArgs sa;
    auto* spectrum = app.add_subcommand(
        "spectrum", "compute the four boundary spectra, band edges, and coordinate maps");
    spectrum->fallthrough();
    spectrum->add_option("--potential", sa.potential, "potential JSON file")->required();
    spectrum->add_option("--levels", sa.levels, "number of levels N")->check(levels_check);
    spectrum->add_option("--out-csv", sa.out_csv, "spectrum table CSV path");
    spectrum->add_option("--out-maps", sa.out_maps, "gap/p/h map JSON path");
    spectrum->add_option("--estimates", sa.out_estimates,
                         "two-sided norm estimate report JSON path (needs --levels >= 16)");
    spectrum->callback([&] { rc = cmd_spectrum(g, sa); });

    DiscriminantArgs da;
    auto* disc = app.add_subcommand(
        "discriminant", "sample Delta(lambda) for band plots, with spectrum markers");
    disc->fallthrough();
    disc->add_option("--potential", da.potential, "potential JSON file")->required();
    disc->add_option("--lambda-min", da.lambda_min, "sweep start");
    disc->add_option("--lambda-max", da.lambda_max, "sweep end");
    disc->add_option("--samples", da.samples, "sample count")->check(CLI::Range(2, 1000000));
    disc->add_option("--out", da.out, "CSV path (lambda,delta)")->required();
    disc->add_option("--markers", da.markers, "also write the spectrum CSV here");
    disc->add_option("--levels", da.levels, "levels for the marker table")->check(levels_check);
    disc->callback([&] { rc = cmd_discriminant(g, da); });

    InvolveArgs ia;
    auto* involve = app.add_subcommand(
        "involve", "apply the gap-flip involution U_sigma to a potential");
    involve->fallthrough();
    involve->add_option("--sigma", ia.sigma, "all-ones | odd-ones | bits like 1,0,1,1")
        ->required();
    involve->add_option("--potential", ia.potential, "potential JSON file")->required();
    involve->add_option("--out", ia.out, "output potential JSON path")->required();
    involve->add_option("--levels", ia.levels, "truncation level N")->check(levels_check);
    involve->callback([&] { rc = cmd_involve(g, ia); });

    ReconstructArgs ra;
    auto* rec = app.add_subcommand(
        "reconstruct", "recover a potential from a gap-map spectral vector");
    rec->fallthrough();
    rec->add_option("--target", ra.target, "spectral vector JSON (kind gap_f)")->required();
    rec->add_option("--out", ra.out, "output potential JSON path")->required();
    rec->add_option("--report", ra.report, "reconstruction report JSON path");
    rec->add_option("--warm-start", ra.warm_start, "initial guess potential JSON");
    rec->callback([&] { rc = cmd_reconstruct(g, ra); });

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "run an identity verification suite");
    verify->require_subcommand(1);
    verify->fallthrough();
    const char* vdesc[] = {
        "exchange of Dirichlet/Neumann data under the all-ones flip",
        "reflection x -> 1-x as the odd-ones flip",
        "mixed-data exchange for an admissible sigma (odd entries flipped)",
        "doubled-interval spectra interleave the mixed and principal ones",
        "Fourier decay exponent preserved by the involution"};
    auto add_verify = [&](const char* name, const char* desc,
                          std::function<int()> body) {
        auto* sub = verify->add_subcommand(name, desc);
        sub->fallthrough();
        sub->add_option("--potential", va.potential, "potential JSON file")->required();
        sub->add_option("--levels", va.levels, "truncation level N")->check(levels_check);
        sub->add_option("--out", va.out, "report JSON path");
        sub->callback([&rc, body] { rc = body(); });
        return sub;
    };
    add_verify("t1", vdesc[0], [&] { return cmd_verify_theorem(g, va, Theorem::T1); });
    add_verify("t2", vdesc[1], [&] { return cmd_verify_theorem(g, va, Theorem::T2); });
    auto* t3 = add_verify("t3", vdesc[2],
                          [&] { return cmd_verify_theorem(g, va, Theorem::T3); });
    t3->add_option("--sigma", va.sigma, "sign sequence with every odd entry 1")->required();
    add_verify("doubling", vdesc[3], [&] { return cmd_verify_doubling(g, va); });
    auto* smooth = add_verify("smoothness", vdesc[4], [&] { return cmd_verify_smoothness(g, va); });
    smooth->add_option("--sigma", va.sigma, "sign sequence (default all-ones)");

    OracleArgs oa;
    auto* oc = app.add_subcommand(
        "oracle-compare", "shooting solver vs finite-difference oracle, side by side");
    oc->fallthrough();
    oc->add_option("--potential", oa.potential,
                   "potential JSON file (omit for a seeded random one)");
    oc->add_option("--bc", oa.bc, "boundary tag: DD | NN | DN | ND | PER2 | PER4")
        ->check(CLI::IsMember({"DD", "NN", "DN", "ND", "PER2", "PER4"}));
    oc->add_option("--levels", oa.levels, "levels to compare")->check(CLI::Range(1, 16));
    oc->add_option("--rel-tol", oa.rel_tol,
                   "hard relative tolerance (default: max(1e-6, 3x oracle estimate))")
        ->check(CLI::Range(0.0, 1.0));
    oc->add_option("--seed", oa.seed, "random potential seed");
    oc->add_option("--modes", oa.modes, "random potential modes")->check(CLI::Range(1, 16));
    oc->add_option("--norm", oa.norm, "random potential L2 norm")
        ->check(CLI::Range(0.0, 10.0));
    oc->add_option("--out", oa.out, "comparison CSV path");
    oc->callback([&] { rc = cmd_oracle_compare(g, oa); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const SolverError& e) {
        std::fprintf(stderr, "solver failure: %s\n", e.what());
        return kExitSolver;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitSolver;
    }
}
