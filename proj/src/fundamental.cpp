#include "slspec/fundamental.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "slspec/numeric.hpp"

namespace slspec {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;
constexpr double kSqrt3Over12 = 0.14433756729740644112728719512549;

// exp of the traceless 2x2 Omega with Omega^2 = z*I: C(z)*I + S(z)*Omega
inline void cs_pair(double z, double& C, double& S) {
    if (z > 1e-8) {
        double r = std::sqrt(z);
        C = std::cosh(r);
        S = std::sinh(r) / r;
    } else if (z < -1e-8) {
        double r = std::sqrt(-z);
        C = std::cos(r);
        S = std::sin(r) / r;
    } else {
        C = 1.0 + z * (0.5 + z / 24.0);
        S = 1.0 + z * (1.0 / 6.0 + z / 120.0);
    }
}

// Counts sign changes of a nodal sequence that starts positive; an exact zero
// is counted at its node and the next nonzero node only re-arms the sign.
struct ZeroCounter {
    int count = 0;
    int sign = 1;
    bool pending = false;

    void push(double f) {
        if (f == 0.0) {
            if (!pending) ++count;
            pending = true;
            return;
        }
        int s = f > 0 ? 1 : -1;
        if (pending) {
            sign = s;
            pending = false;
        } else if (s != sign) {
            ++count;
            sign = s;
        }
    }
};

void validate_config(const IntegratorConfig& cfg) {
    if (cfg.min_steps < 16)
        throw std::invalid_argument("integrator: configured minimum step count below 16");
    if (cfg.steps_per_wavelength < 12)
        throw std::invalid_argument("integrator: fewer than 12 steps per wavelength");
    if (cfg.grid_steps < 16)
        throw std::invalid_argument("integrator: eigenfunction grid below 16 steps");
    if (!(cfg.lambda_max >= 100.0))
        throw std::invalid_argument("integrator: lambda_max must be at least 100");
}

void validate_lambda(double lambda, double length, const IntegratorConfig& cfg) {
    if (!std::isfinite(lambda)) throw std::invalid_argument("integrator: non-finite lambda");
    if (lambda > cfg.lambda_max)
        throw std::out_of_range("integrator: lambda above configured lambda_max");
    double cap = 650.0 / length;
    if (lambda < -cap * cap)
        throw std::out_of_range("integrator: lambda too negative, solution would overflow");
}

// steps = (min_steps per unit length) * 2^j, first j that resolves the local
// wavelength; powers of two keep the per-potential sample cache small.
int step_count(double length, double lambda, double q_bound, const IntegratorConfig& cfg,
               int base_per_unit) {
    double omega = std::sqrt(std::max(lambda + q_bound, 1.0));
    double needed = length * cfg.steps_per_wavelength * omega / (2.0 * kPi);
    int steps = base_per_unit * int(std::lround(length));
    while (double(steps) < needed) steps *= 2;
    return steps;
}

struct EndState {
    double theta1, dtheta1, phi1, dphi1;
    int zeros_phi, zeros_theta;
};

// One pass of the Magnus propagator over the cached Gauss samples, advancing
// the full fundamental matrix (columns theta and phi).
EndState propagate_matrix(const std::vector<double>& qs, int steps, double length,
                          double lambda) {
    const double h = length / steps;
    const double comm = kSqrt3Over12 * h * h;
    double th = 1.0, dth = 0.0, ph = 0.0, dph = 1.0;
    ZeroCounter zc_phi, zc_theta;
    for (int i = 0; i < steps; ++i) {
        double u1 = qs[2 * i] - lambda;
        double u2 = qs[2 * i + 1] - lambda;
        double w11 = comm * (u1 - u2);
        double w21 = 0.5 * h * (u1 + u2);
        double C, S;
        cs_pair(w11 * w11 + h * w21, C, S);
        double t11 = C + S * w11, t12 = S * h;
        double t21 = S * w21, t22 = C - S * w11;
        double nth = t11 * th + t12 * dth;
        dth = t21 * th + t22 * dth;
        th = nth;
        double nph = t11 * ph + t12 * dph;
        dph = t21 * ph + t22 * dph;
        ph = nph;
        zc_phi.push(ph);
        zc_theta.push(th);
    }
    return {th, dth, ph, dph, zc_phi.count, zc_theta.count};
}

FundamentalValues values_from(const EndState& e, double lambda) {
    FundamentalValues v;
    v.lambda = lambda;
    v.theta1 = e.theta1;
    v.dtheta1 = e.dtheta1;
    v.phi1 = e.phi1;
    v.dphi1 = e.dphi1;
    v.oscillation_count = e.zeros_phi;
    v.theta_oscillation_count = e.zeros_theta;
    return v;
}

}  // namespace

const char* bc_name(Bc bc) {
    switch (bc) {
        case Bc::DD: return "DD";
        case Bc::NN: return "NN";
        case Bc::DN: return "DN";
        case Bc::ND: return "ND";
    }
    return "?";
}

double GridFunction::trapezoid() const {
    if (values.size() < 2) return 0.0;
    double s = 0.5 * (values.front() + values.back());
    for (size_t i = 1; i + 1 < values.size(); ++i) s += values[i];
    return s * dx;
}

FundamentalValues fundamental_at_one(const Potential& q, double lambda,
                                     const IntegratorConfig& cfg) {
    validate_config(cfg);
    validate_lambda(lambda, 1.0, cfg);
    int steps = step_count(1.0, lambda, q.coeff_bound(), cfg, cfg.min_steps);
    return values_from(propagate_matrix(q.gauss_samples(steps), steps, 1.0, lambda), lambda);
}

FundamentalValues fundamental_at_end(const ExtendedPotential& q, double lambda,
                                     const IntegratorConfig& cfg) {
    validate_config(cfg);
    validate_lambda(lambda, 2.0, cfg);
    int steps = step_count(2.0, lambda, q.coeff_bound(), cfg, cfg.min_steps);
    return values_from(propagate_matrix(q.gauss_samples(steps), steps, 2.0, lambda), lambda);
}

double discriminant(const Potential& q, double lambda, const IntegratorConfig& cfg) {
    FundamentalValues v = fundamental_at_one(q, lambda, cfg);
    return 0.5 * (v.dphi1 + v.theta1);
}

double discriminant_doubled(const ExtendedPotential& q, double lambda,
                            const IntegratorConfig& cfg) {
    FundamentalValues v = fundamental_at_end(q, lambda, cfg);
    return 0.5 * (v.dphi1 + v.theta1);
}

double prufer_angle_phi(const FundamentalValues& v) {
    int k = v.oscillation_count;
    if (v.phi1 == 0.0) return k * kPi;
    double sgn = (k % 2 == 0) ? 1.0 : -1.0;
    return k * kPi + std::atan2(std::abs(v.phi1), sgn * v.dphi1);
}

double prufer_angle_theta(const FundamentalValues& v) {
    int k = v.theta_oscillation_count;
    if (v.theta1 == 0.0) return k * kPi;
    double sgn = (k % 2 == 0) ? 1.0 : -1.0;
    return k * kPi + std::atan2(std::abs(v.theta1), sgn * v.dtheta1);
}

GridFunction eigenfunction(const Potential& q, Bc bc, double eigenvalue,
                           const IntegratorConfig& cfg) {
    validate_config(cfg);
    validate_lambda(eigenvalue, 1.0, cfg);
    int steps = step_count(1.0, eigenvalue, q.coeff_bound(), cfg, cfg.grid_steps);
    int stride = steps / cfg.grid_steps;

    const bool dirichlet_at_0 = (bc == Bc::DD || bc == Bc::DN);
    const std::vector<double>& qs = q.gauss_samples(steps);
    const double h = 1.0 / steps;
    const double comm = kSqrt3Over12 * h * h;

    GridFunction out;
    out.dx = 1.0 / cfg.grid_steps;
    out.values.resize(size_t(cfg.grid_steps) + 1);
    double f = dirichlet_at_0 ? 0.0 : 1.0;
    double g = dirichlet_at_0 ? 1.0 : 0.0;
    out.values[0] = f;
    double max_abs = std::abs(f);
    for (int i = 0; i < steps; ++i) {
        double u1 = qs[2 * i] - eigenvalue;
        double u2 = qs[2 * i + 1] - eigenvalue;
        double w11 = comm * (u1 - u2);
        double w21 = 0.5 * h * (u1 + u2);
        double C, S;
        cs_pair(w11 * w11 + h * w21, C, S);
        double nf = (C + S * w11) * f + S * h * g;
        g = S * w21 * f + (C - S * w11) * g;
        f = nf;
        max_abs = std::max(max_abs, std::abs(f));
        if ((i + 1) % stride == 0) out.values[size_t((i + 1) / stride)] = f;
    }

    // residual of the boundary condition at x = 1, on the eigenfunction scale
    double deriv_scale = std::sqrt(std::max(std::abs(eigenvalue), 1.0));
    double resid;
    switch (bc) {
        case Bc::DD: resid = std::abs(f); break;
        case Bc::DN: resid = std::abs(g) / deriv_scale; break;
        case Bc::NN: resid = std::abs(g) / deriv_scale; break;
        case Bc::ND: resid = std::abs(f); break;
        default: resid = 0;
    }
    if (resid > 1e-6 * max_abs)
        throw SolverError(std::string("eigenfunction: not an eigenvalue of the ") +
                          bc_name(bc) + " problem (boundary residual " +
                          std::to_string(resid / max_abs) + ")");

    double norm2 = 0.5 * (out.values.front() * out.values.front() +
                          out.values.back() * out.values.back());
    for (size_t i = 1; i + 1 < out.values.size(); ++i) norm2 += out.values[i] * out.values[i];
    norm2 *= out.dx;
    double scale = 1.0 / std::sqrt(norm2);
    for (double& v : out.values) v *= scale;
    out.normalized = true;
    return out;
}

}  // namespace slspec
