#pragma once

// Brute-force reference computations used only by tests and the fixture
// generator. Everything here is deliberately independent of the production
// integrator: a midpoint transfer matrix and a finite-difference eigenvector
// with Sturm bisection plus inverse iteration.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "slspec/potential.hpp"

namespace oracle_helpers {

struct Transfer {
    double theta1, dtheta1, phi1, dphi1;
};

// explicit midpoint rule on (y, y') with u = q - lambda; order 2
inline Transfer transfer_midpoint(const slspec::Potential& q, double lam, int steps) {
    const double h = 1.0 / steps;
    double th = 1, dth = 0, ph = 0, dph = 1;
    for (int i = 0; i < steps; ++i) {
        double x = i * h;
        double u0 = q(x) - lam;
        double um = q(x + 0.5 * h) - lam;
        double thm = th + 0.5 * h * dth;
        double dthm = dth + 0.5 * h * u0 * th;
        double phm = ph + 0.5 * h * dph;
        double dphm = dph + 0.5 * h * u0 * ph;
        th += h * dthm;
        dth += h * um * thm;
        ph += h * dphm;
        dph += h * um * phm;
    }
    return {th, dth, ph, dph};
}

// two-mesh Richardson at order 2
inline Transfer transfer_extrapolated(const slspec::Potential& q, double lam, int steps) {
    Transfer c = transfer_midpoint(q, lam, steps / 2);
    Transfer f = transfer_midpoint(q, lam, steps);
    auto rich = [](double coarse, double fine) { return (4.0 * fine - coarse) / 3.0; };
    return {rich(c.theta1, f.theta1), rich(c.dtheta1, f.dtheta1), rich(c.phi1, f.phi1),
            rich(c.dphi1, f.dphi1)};
}

// negative pivots of the Dirichlet finite-difference matrix minus sigma
inline int dd_negative_pivots(const std::vector<double>& diag, double w, double sigma) {
    int neg = 0;
    double cur = diag[0] - sigma;
    const double tiny = 1e-14 * (std::abs(sigma) + 4.0 * w);
    for (size_t i = 0;; ++i) {
        double piv = std::abs(cur) < tiny ? (cur < 0 ? -tiny : tiny) : cur;
        if (piv < 0) ++neg;
        if (i + 1 == diag.size()) break;
        cur = (diag[i + 1] - sigma) - (w / piv) * w;
    }
    return neg;
}

// k-th (0-based) eigenvalue of the interior Dirichlet matrix on mesh 1/n
inline double dd_mesh_eigenvalue(const slspec::Potential& q, int k, int n) {
    const double h = 1.0 / n;
    const double w = 1.0 / (h * h);
    std::vector<double> diag(n - 1);
    for (int i = 1; i < n; ++i) diag[i - 1] = 2 * w + q(i * h);
    double lo = -4.0 * w, hi = 4.0 * w + 10.0;
    while (hi - lo > 1e-13 * (1.0 + std::abs(lo) + std::abs(hi))) {
        double mid = 0.5 * (lo + hi);
        if (dd_negative_pivots(diag, -w, mid) <= k)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// interior eigenvector by inverse iteration against the mesh eigenvalue;
// returned with boundary zeros attached, sign fixed so the left slope is
// positive, normalized to unit trapezoid L2 norm
inline std::vector<double> dd_mesh_eigenvector(const slspec::Potential& q, double mu, int n) {
    const double h = 1.0 / n;
    const double w = 1.0 / (h * h);
    const int m = n - 1;
    std::vector<double> diag(m);
    for (int i = 1; i <= m; ++i) diag[i - 1] = 2 * w + q(i * h) - mu;
    std::vector<double> v(m);
    for (int i = 0; i < m; ++i) v[i] = std::sin(3.97 * (i + 1) / m) + 0.3;
    std::vector<double> c(m), dvec(m), x(m);
    for (int sweep = 0; sweep < 4; ++sweep) {
        // Thomas solve (A - mu I) x = v with a tiny-pivot guard
        double piv = diag[0];
        if (std::abs(piv) < 1e-12 * w) piv = piv < 0 ? -1e-12 * w : 1e-12 * w;
        c[0] = -w / piv;
        x[0] = v[0] / piv;
        for (int i = 1; i < m; ++i) {
            piv = diag[i] + w * c[i - 1];
            if (std::abs(piv) < 1e-12 * w) piv = piv < 0 ? -1e-12 * w : 1e-12 * w;
            c[i] = -w / piv;
            x[i] = (v[i] + w * x[i - 1]) / piv;
        }
        for (int i = m - 2; i >= 0; --i) x[i] -= c[i] * x[i + 1];
        double norm = 0;
        for (double t : x) norm += t * t;
        norm = std::sqrt(norm);
        if (!(norm > 0)) throw std::runtime_error("inverse iteration: zero solve result");
        for (int i = 0; i < m; ++i) v[i] = x[i] / norm;
    }
    std::vector<double> full(n + 1, 0.0);
    for (int i = 0; i < m; ++i) full[i + 1] = v[i];
    if (full[1] < 0)
        for (auto& t : full) t = -t;
    double l2 = 0;
    for (int i = 0; i < n; ++i) {
        double a = full[i], b = full[i + 1];
        l2 += 0.5 * (a * a + b * b) * h;
    }
    l2 = std::sqrt(l2);
    for (auto& t : full) t /= l2;
    return full;
}

// ln of the end-slope ratio of a Dirichlet eigenvector: both slopes from
// one-sided five-point stencils, the shared normalization cancels
inline double dd_slope_ratio_log(const std::vector<double>& y, double h) {
    size_t n = y.size() - 1;
    double left = (48 * y[1] - 36 * y[2] + 16 * y[3] - 3 * y[4]) / (12 * h);
    double right =
        -(48 * y[n - 1] - 36 * y[n - 2] + 16 * y[n - 3] - 3 * y[n - 4]) / (12 * h);
    return std::log(std::abs(right / left));
}

}  // namespace oracle_helpers
