#include "slspec/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "slspec/numeric.hpp"

namespace slspec {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kLevelCap = 64;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// ---- the same ladder solver runs on [0,1] and on the doubled interval ----

double interval_length(const Potential&) { return 1.0; }
double interval_length(const ExtendedPotential&) { return 2.0; }

FundamentalValues values_at_end(const Potential& q, double lam,
                                const IntegratorConfig& cfg) {
    return fundamental_at_one(q, lam, cfg);
}
FundamentalValues values_at_end(const ExtendedPotential& q, double lam,
                                const IntegratorConfig& cfg) {
    return fundamental_at_end(q, lam, cfg);
}

double boundary_residual(Bc bc, const FundamentalValues& v) {
    switch (bc) {
        case Bc::DD: return v.phi1;
        case Bc::DN: return v.dphi1;
        case Bc::ND: return v.theta1;
        case Bc::NN: return v.dtheta1;
    }
    return 0;
}

// keeps the residual stopping test commensurate with the natural size of the
// boundary value: phi(1) decays like 1/sqrt(lambda), theta'(1) grows like
// sqrt(lambda)
double residual_scale(Bc bc, double lam) {
    double s = std::sqrt(std::max(lam, 1.0));
    switch (bc) {
        case Bc::DD: return 1.0 / s;
        case Bc::NN: return s;
        default: return 1.0;
    }
}

double prufer_angle(Bc bc, const FundamentalValues& v) {
    return (bc == Bc::DD || bc == Bc::DN) ? prufer_angle_phi(v) : prufer_angle_theta(v);
}

// ladder targets are spaced exactly pi apart; the first one depends on the tag
double first_target(Bc bc) {
    switch (bc) {
        case Bc::DD: return kPi;        // mu_n at n pi
        case Bc::DN: return 0.5 * kPi;  // tau_n at (n - 1/2) pi
        case Bc::ND: return kPi;        // rho_n at n pi
        case Bc::NN: return 0.5 * kPi;  // nu_n at (n + 1/2) pi, starting at nu_0
    }
    return 0;
}

void check_level_count(int n) {
    if (n < 1) throw std::invalid_argument("eigensolve: level count must be >= 1");
    if (n > kLevelCap)
        throw std::invalid_argument("eigensolve: level count " + std::to_string(n) +
                                    " exceeds the cap of " + std::to_string(kLevelCap));
}

struct AngleEval {
    double lam = 0;
    double angle = 0;
    double residual = 0;
};

template <class Q>
std::vector<double> solve_ladder(const Q& q, Bc bc, int count,
                                 const IntegratorConfig& cfg) {
    const double length = interval_length(q);
    const double t0 = first_target(bc);
    auto target = [&](int i) { return t0 + kPi * i; };

    auto eval = [&](double lam) -> AngleEval {
        FundamentalValues v = values_at_end(q, lam, cfg);
        return {lam, prufer_angle(bc, v), boundary_residual(bc, v)};
    };
    auto residual_at = [&](double lam) {
        return boundary_residual(bc, values_at_end(q, lam, cfg));
    };

    // Below the bottom of the spectrum both fundamental solutions are free of
    // zeros and growing, so the angle sits under pi/2 < first target.
    double lo = -q.coeff_bound() - 1e-3;
    AngleEval a = eval(lo);
    for (int tries = 0; a.angle >= target(0) - 1e-9 && tries < 8; ++tries) {
        lo -= std::max(10.0, std::abs(lo));
        a = eval(lo);
    }
    if (a.angle >= target(0) - 1e-9)
        throw SolverError("eigensolve: no lower bracket below the spectrum (angle " +
                          fmt(a.angle) + " at lambda = " + fmt(a.lam) + ")");

    double top = target(count - 1);
    double hi = std::pow((top / kPi + 0.75) * kPi / length, 2) + q.coeff_bound();
    AngleEval b = eval(hi);  // out_of_range from the integrator marks N too
                             // large for the configured lambda range
    while (b.angle <= top + 1e-2) {
        hi += std::max(50.0, 0.5 * hi);
        b = eval(hi);
    }

    std::vector<double> roots(count);
    struct Seg {
        AngleEval a, b;
        int i0, i1;
    };
    std::vector<Seg> work{{a, b, 0, count}};
    while (!work.empty()) {
        Seg s = work.back();
        work.pop_back();
        if (s.i0 >= s.i1) continue;
        if (s.b.angle - s.a.angle < 0.9 * kPi) {
            // window shorter than the target spacing: exactly one level fits
            if (s.i1 - s.i0 != 1)
                throw SolverError(
                    "eigensolve: oscillation count inconsistent: " +
                    std::to_string(s.i1 - s.i0) + " levels in an angle window of " +
                    fmt(s.b.angle - s.a.angle) + " near lambda = " + fmt(s.a.lam));
            double mid = 0.5 * (s.a.lam + s.b.lam);
            double sc = residual_scale(bc, mid);
            if (s.a.residual * s.b.residual > 0) {
                // a partition point can land on a root to machine precision,
                // leaving both residuals with the sign of the far endpoint
                if (std::abs(s.a.residual) <= 1e-9 * sc) {
                    roots[s.i0] = s.a.lam;
                } else if (std::abs(s.b.residual) <= 1e-9 * sc) {
                    roots[s.i0] = s.b.lam;
                } else {
                    throw SolverError(
                        "eigensolve: residual does not change sign across the level " +
                        std::to_string(s.i0) + " bracket near lambda = " + fmt(mid));
                }
                continue;
            }
            RootResult r =
                refine_root(residual_at, s.a.lam, s.b.lam, s.a.residual, s.b.residual,
                            1e-9 * (1.0 + std::abs(s.b.lam)), 1e-10 * sc, 200);
            roots[s.i0] = r.x;
            continue;
        }
        if (s.b.lam - s.a.lam < 1e-12 * (1.0 + std::abs(s.b.lam)))
            throw SolverError("eigensolve: bracket collapsed with " +
                              std::to_string(s.i1 - s.i0) +
                              " levels unresolved near lambda = " + fmt(s.a.lam));
        AngleEval m = eval(0.5 * (s.a.lam + s.b.lam));
        if (m.angle < s.a.angle - 1e-9 || m.angle > s.b.angle + 1e-9)
            throw SolverError("eigensolve: prufer angle not monotone at lambda = " +
                              fmt(m.lam));
        int k = s.i0;
        while (k < s.i1 && target(k) < m.angle) ++k;
        work.push_back({s.a, m, s.i0, k});
        work.push_back({m, s.b, k, s.i1});
    }
    return roots;
}

// ---- band edges ----

struct GapResult {
    double lam_minus = 0, lam_plus = 0, lam_star = 0;
    double delta_star = 0;  // signed Delta(lam_star)
    bool closed = false;
};

IntegratorConfig edge_config(IntegratorConfig cfg) {
    // Edge roots of Delta -/+ 1 are ill-conditioned near gap closure; a finer
    // mesh buys the discriminant accuracy the 1e-6 edge tolerances need.
    cfg.min_steps = std::max(cfg.min_steps * 4, 4096);
    return cfg;
}

template <class Q>
class DiscFn {
public:
    DiscFn(const Q& q, const IntegratorConfig& cfg) : q_(q), cfg_(cfg) {}
    double operator()(double lam) const {
        FundamentalValues v = values_at_end(q_, lam, cfg_);
        return 0.5 * (v.dphi1 + v.theta1);
    }

private:
    const Q& q_;
    IntegratorConfig cfg_;
};

// golden-section maximizer for a unimodal function
template <class F>
double golden_max(const F& f, double a, double b, double xtol) {
    const double r = 0.6180339887498949;
    double x1 = b - r * (b - a), x2 = a + r * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > xtol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + r * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - r * (b - a);
            f1 = f(x1);
        }
    }
    return 0.5 * (a + b);
}

// One parabolic refinement step around x with half-width d; returns the vertex
// (clamped to [x-d, x+d]) and reports the curvature estimate.
template <class F>
double parabola_step(const F& f, double x, double d, double& curvature) {
    double fm = f(x - d), f0 = f(x), fp = f(x + d);
    double denom = fm - 2 * f0 + fp;
    curvature = std::abs(denom) / (d * d);
    if (denom >= 0) return x;  // not concave at this scale; keep the center
    double shift = 0.5 * d * (fm - fp) / denom;
    return x + std::clamp(shift, -d, d);
}

template <class Q>
GapResult solve_gap(int n, double gl, double gr, double mu_n, double nu_n,
                    const DiscFn<Q>& disc) {
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    auto s = [&](double lam) { return sign * disc(lam); };

    double width_tol = std::max(1e-7, 1e-5 * (1.0 + std::abs(gr)));
    double star = golden_max(s, gl, gr, width_tol);
    double curvature = 0;
    star = parabola_step(s, star, width_tol, curvature);
    double c2 = curvature;
    star = parabola_step(s, star, width_tol / 16, curvature);
    if (curvature > 0) c2 = curvature;

    double m = s(star) - 1.0;
    if (m < -1e-7)
        throw SolverError("periodic spectrum: discriminant maximum " + fmt(s(star)) +
                          " below 1 in gap " + std::to_string(n));

    GapResult out;
    double model_width = c2 > 0 ? std::sqrt(8.0 * std::max(m, 0.0) / c2) : 0.0;
    double resolve_width = 1e-3 * (1.0 + std::abs(star) / 400.0);

    if (model_width >= resolve_width) {
        auto g = [&](double lam) { return s(lam) - 1.0; };
        double fgl = g(gl), fgr = g(gr);
        double xtol = 1e-10 * (1.0 + std::abs(star));
        out.lam_minus =
            fgl >= 0 ? gl : refine_root(g, gl, star, fgl, m, xtol, 1e100, 200).x;
        out.lam_plus =
            fgr >= 0 ? gr : refine_root(g, star, gr, m, fgr, xtol, 1e100, 200).x;
        // project onto the configuration the band-placement theorem dictates,
        // so one-sided root error cannot push mu/nu outside the gap
        out.lam_minus = std::clamp(out.lam_minus, gl, std::min(mu_n, nu_n));
        out.lam_plus = std::clamp(out.lam_plus, std::max(mu_n, nu_n), gr);
        out.lam_star = std::clamp(star, out.lam_minus, out.lam_plus);
        out.delta_star = sign * (1.0 + m);
    } else {
        // Gap too narrow for well-conditioned edge roots: report the
        // bracketing Dirichlet/Neumann pair, which sits inside the gap by the
        // placement theorem and is exchanged entrywise by the involutions.
        out.lam_minus = std::min(mu_n, nu_n);
        out.lam_plus = std::max(mu_n, nu_n);
        out.lam_star = 0.5 * (out.lam_minus + out.lam_plus);
        double d = s(out.lam_star);
        if (d < 1.0 - 1e-7)
            throw SolverError("periodic spectrum: discriminant " + fmt(sign * d) +
                              " inconsistent with a closed gap at level " +
                              std::to_string(n));
        out.delta_star = sign * std::max(d, 1.0);
    }
    out.closed = (out.lam_plus - out.lam_minus) < 1e-8 * (1.0 + std::abs(out.lam_minus));
    // at a closed gap |Delta| = 1 exactly; keeping the roundoff excess would
    // blow up downstream in arccosh, which has a square-root cusp at 1
    if (out.closed) out.delta_star = sign;
    return out;
}

template <class Q>
PeriodicSpectrum periodic_core(const Q& q, int N, const IntegratorConfig& cfg,
                               double nu0, const std::vector<double>& mu,
                               const std::vector<double>& nu,
                               const std::vector<double>& tau,
                               const std::vector<double>& rho,
                               std::vector<double>* lam_star_out = nullptr,
                               std::vector<double>* delta_star_out = nullptr) {
    DiscFn<Q> disc(q, edge_config(cfg));
    PeriodicSpectrum out;
    out.lam_minus.resize(N);
    out.lam_plus.resize(N);
    out.closed.resize(N);
    if (lam_star_out) lam_star_out->resize(N);
    if (delta_star_out) delta_star_out->resize(N);

    // ground edge: root of Delta - 1 above nu_0
    double f0 = disc(nu0) - 1.0;
    if (f0 < -1e-7)
        throw SolverError("periodic spectrum: discriminant " + fmt(f0 + 1.0) +
                          " below 1 at nu_0 = " + fmt(nu0));
    if (f0 <= 1e-10) {
        out.lam0_plus = nu0;
    } else {
        double right = std::min(tau[0], rho[0]);
        auto g = [&](double lam) { return disc(lam) - 1.0; };
        double fr = g(right);
        if (fr > 0)
            throw SolverError("periodic spectrum: no sign change for lambda_0^+ in [" +
                              fmt(nu0) + ", " + fmt(right) + "]");
        out.lam0_plus =
            refine_root(g, nu0, right, f0, fr, 1e-10 * (1.0 + std::abs(right)), 1e100, 200)
                .x;
    }

    std::vector<GapResult> gaps(N);
    parallel_for(N, [&](int i) {
        int n = i + 1;
        double gl = std::max(tau[n - 1], rho[n - 1]);
        double gr = std::min(tau[n], rho[n]);
        gaps[i] = solve_gap(n, gl, gr, mu[n - 1], nu[n - 1], disc);
    });
    for (int i = 0; i < N; ++i) {
        out.lam_minus[i] = gaps[i].lam_minus;
        out.lam_plus[i] = gaps[i].lam_plus;
        out.closed[i] = gaps[i].closed;
        if (lam_star_out) (*lam_star_out)[i] = gaps[i].lam_star;
        if (delta_star_out) (*delta_star_out)[i] = gaps[i].delta_star;
    }
    return out;
}

template <class Q>
PeriodicSpectrum periodic_spectrum_impl(const Q& q, int N, const IntegratorConfig& cfg) {
    check_level_count(N);
    std::vector<double> tau = solve_ladder(q, Bc::DN, N + 1, cfg);
    std::vector<double> rho = solve_ladder(q, Bc::ND, N + 1, cfg);
    std::vector<double> mu = solve_ladder(q, Bc::DD, N, cfg);
    std::vector<double> nn = solve_ladder(q, Bc::NN, N + 1, cfg);
    double nu0 = nn[0];
    std::vector<double> nu(nn.begin() + 1, nn.end());
    return periodic_core(q, N, cfg, nu0, mu, nu, tau, rho);
}

}  // namespace

std::vector<double> boundary_eigenvalues(const Potential& q, Bc bc, int N,
                                         const IntegratorConfig& cfg) {
    check_level_count(N);
    return solve_ladder(q, bc, bc == Bc::NN ? N + 1 : N, cfg);
}

std::vector<double> boundary_eigenvalues(const ExtendedPotential& q, Bc bc, int N,
                                         const IntegratorConfig& cfg) {
    check_level_count(N);
    return solve_ladder(q, bc, bc == Bc::NN ? N + 1 : N, cfg);
}

PeriodicSpectrum periodic_spectrum(const Potential& q, int N, const IntegratorConfig& cfg) {
    return periodic_spectrum_impl(q, N, cfg);
}

PeriodicSpectrum periodic_spectrum(const ExtendedPotential& q, int N,
                                   const IntegratorConfig& cfg) {
    return periodic_spectrum_impl(q, N, cfg);
}

std::vector<double> discriminant_maxima(const Potential& q, int N,
                                        const IntegratorConfig& cfg) {
    return spectrum_table(q, N, cfg).lam_star;
}

std::vector<double> norming_constants(const Potential& q, int N, NormingVariant variant,
                                      const IntegratorConfig& cfg) {
    check_level_count(N);
    std::vector<double> out(N);
    if (variant == NormingVariant::dirichlet) {
        std::vector<double> mu = solve_ladder(q, Bc::DD, N, cfg);
        for (int n = 0; n < N; ++n) {
            double dphi = fundamental_at_one(q, mu[n], cfg).dphi1;
            if (std::abs(dphi) < 1e-12)
                throw SolverError("norming constants: |phi'(1)| degenerate at mu_" +
                                  std::to_string(n + 1) + " (value " + fmt(dphi) + ")");
            out[n] = std::log(std::abs(dphi));
        }
    } else {
        std::vector<double> nn = solve_ladder(q, Bc::NN, N + 1, cfg);
        for (int n = 1; n <= N; ++n) {
            double th = fundamental_at_one(q, nn[n], cfg).theta1;
            if (std::abs(th) < 1e-12)
                throw SolverError("norming constants: |theta(1)| degenerate at nu_" +
                                  std::to_string(n) + " (value " + fmt(th) + ")");
            out[n - 1] = std::log(std::abs(th));
        }
    }
    return out;
}

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw SolverError("spectrum table: " + what);
}

void validate_table(const SpectrumTable& t, double q_sup_bound) {
    const int N = t.N;
    auto slack = [](double lam) { return 1e-7 * (1.0 + std::abs(lam)); };
    auto edge_slack = [](double lam) { return 2e-6 * (1.0 + std::abs(lam)); };

    // interlacing of the four boundary ladders
    require(t.nu0 <= std::min(t.tau[0], t.rho[0]) + slack(t.nu0),
            "nu_0 above {tau_1, rho_1}: " + fmt(t.nu0) + " vs " +
                fmt(std::min(t.tau[0], t.rho[0])));
    for (int n = 1; n <= N; ++n) {
        double pair_hi = std::max(t.tau[n - 1], t.rho[n - 1]);
        double dn_lo = std::min(t.mu[n - 1], t.nu[n - 1]);
        require(pair_hi <= dn_lo + slack(dn_lo),
                "{tau,rho}_" + std::to_string(n) + " above {mu,nu}_" + std::to_string(n) +
                    ": " + fmt(pair_hi) + " vs " + fmt(dn_lo));
        if (n < N) {
            double dn_hi = std::max(t.mu[n - 1], t.nu[n - 1]);
            double next_lo = std::min(t.tau[n], t.rho[n]);
            require(dn_hi <= next_lo + slack(dn_hi),
                    "{mu,nu}_" + std::to_string(n) + " above {tau,rho}_" +
                        std::to_string(n + 1) + ": " + fmt(dn_hi) + " vs " + fmt(next_lo));
        }
    }

    // band placement
    require(t.nu0 <= t.lam0_plus + edge_slack(t.nu0), "nu_0 above lambda_0^+");
    // lambda_0^+ <= 0 (mean-zero q) and nu_0 >= -sup|q|, so the ground band
    // edge sits within the sup-norm bound of nu_0
    require(t.lam0_plus <= t.nu0 + q_sup_bound + 1e-6,
            "lambda_0^+ exceeds nu_0 + sup|q|: " + fmt(t.lam0_plus) + " vs " +
                fmt(t.nu0 + q_sup_bound));
    for (int n = 1; n <= N; ++n) {
        double lm = t.lam_minus[n - 1], lp = t.lam_plus[n - 1];
        double prev_edge = (n == 1) ? t.lam0_plus : t.lam_plus[n - 2];
        require(prev_edge <= std::min(t.tau[n - 1], t.rho[n - 1]) + edge_slack(prev_edge),
                "band edge " + std::to_string(n - 1) + "^+ above {tau,rho}_" +
                    std::to_string(n));
        require(std::max(t.tau[n - 1], t.rho[n - 1]) <= lm + edge_slack(lm),
                "{tau,rho}_" + std::to_string(n) + " above lambda_" + std::to_string(n) +
                    "^-");
        require(lm <= std::min(t.mu[n - 1], t.nu[n - 1]) + edge_slack(lm) &&
                    std::max(t.mu[n - 1], t.nu[n - 1]) <= lp + edge_slack(lp),
                "{mu,nu}_" + std::to_string(n) + " outside the gap [" + fmt(lm) + ", " +
                    fmt(lp) + "]");
        require(lm <= t.lam_star[n - 1] && t.lam_star[n - 1] <= lp,
                "lambda_star outside gap " + std::to_string(n));
        double ds = ((n % 2 == 0) ? 1.0 : -1.0) * t.delta_lam_star[n - 1];
        require(ds >= 1.0 - 1e-7, "(-1)^n Delta(lambda_star) = " + fmt(ds) +
                                      " below 1 at level " + std::to_string(n));
        require(t.gap_closed[n - 1] == (lp - lm < 1e-8 * (1.0 + std::abs(lm))),
                "closed-gap flag inconsistent at level " + std::to_string(n));
    }
}

}  // namespace

SpectrumTable spectrum_table(const Potential& q, int N, const IntegratorConfig& cfg) {
    check_level_count(N);
    SpectrumTable t;
    t.N = N;
    t.tau = solve_ladder(q, Bc::DN, N + 1, cfg);
    t.rho = solve_ladder(q, Bc::ND, N + 1, cfg);
    t.mu = solve_ladder(q, Bc::DD, N, cfg);
    std::vector<double> nn = solve_ladder(q, Bc::NN, N + 1, cfg);
    t.nu0 = nn[0];
    t.nu.assign(nn.begin() + 1, nn.end());

    t.hs.resize(N);
    t.ghs.resize(N);
    for (int n = 1; n <= N; ++n) {
        FundamentalValues vm = fundamental_at_one(q, t.mu[n - 1], cfg);
        if (std::abs(vm.dphi1) < 1e-12)
            throw SolverError("spectrum table: |phi'(1)| degenerate at mu_" +
                              std::to_string(n));
        t.hs[n - 1] = std::log(std::abs(vm.dphi1));
        // Wronskian consistency: (-1)^n Delta(mu_n) must equal cosh(h_s).
        double dm = ((n % 2 == 0) ? 0.5 : -0.5) * (vm.dphi1 + vm.theta1);
        double want = std::cosh(t.hs[n - 1]);
        if (std::abs(dm - want) > 1e-8 * want + 1e-8)
            throw SolverError("spectrum table: cosh relation off at mu_" +
                              std::to_string(n) + ": " + fmt(dm) + " vs " + fmt(want));
        FundamentalValues vn = fundamental_at_one(q, t.nu[n - 1], cfg);
        if (std::abs(vn.theta1) < 1e-12)
            throw SolverError("spectrum table: |theta(1)| degenerate at nu_" +
                              std::to_string(n));
        t.ghs[n - 1] = std::log(std::abs(vn.theta1));
    }

    PeriodicSpectrum p = periodic_core(q, N, cfg, t.nu0, t.mu, t.nu, t.tau, t.rho,
                                       &t.lam_star, &t.delta_lam_star);
    t.lam0_plus = p.lam0_plus;
    t.lam_minus = p.lam_minus;
    t.lam_plus = p.lam_plus;
    t.gap_closed.assign(p.closed.begin(), p.closed.end());
    t.tau.resize(N);
    t.rho.resize(N);

    validate_table(t, q.coeff_bound());
    return t;
}

void write_spectrum_csv(std::ostream& os, const SpectrumTable& t) {
    os << "n,mu,nu,tau,rho,lam_minus,lam_plus,lam_star,h_s,gh_s\n";
    os << "0,," << fmt(t.nu0) << ",,,," << fmt(t.lam0_plus) << ",,,\n";
    for (int n = 1; n <= t.N; ++n) {
        os << n << ',' << fmt(t.mu[n - 1]) << ',' << fmt(t.nu[n - 1]) << ','
           << fmt(t.tau[n - 1]) << ',' << fmt(t.rho[n - 1]) << ','
           << fmt(t.lam_minus[n - 1]) << ',' << fmt(t.lam_plus[n - 1]) << ','
           << fmt(t.lam_star[n - 1]) << ',' << fmt(t.hs[n - 1]) << ','
           << fmt(t.ghs[n - 1]) << '\n';
    }
}

}  // namespace slspec
