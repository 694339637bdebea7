// Generates tests/fixtures.hpp: reference numbers computed by the
// finite-difference oracle and the independent midpoint transfer matrix.
// Run once and commit the output; the unit tests assert the production
// integrator against these frozen values.

#include <cmath>
#include <cstdio>
#include <vector>

#include "slspec/oracle.hpp"
#include "slspec/potential.hpp"
#include "oracle_helpers.hpp"

using namespace slspec;

namespace {

std::vector<double> meshes_10_13() {
    return {1.0 / 1024, 1.0 / 2048, 1.0 / 4096, 1.0 / 8192};
}

void emit(const char* name, double value, double estimate) {
    std::printf("constexpr double %s = %.17g;  // oracle error estimate %.3g\n", name,
                value, estimate);
}

}  // namespace

int main() {
    std::printf("#pragma once\n\n");
    std::printf("// Frozen reference values produced by tests/gen_fixtures.cpp.\n");
    std::printf("// Regenerate with the gen_fixtures tool; do not edit by hand.\n\n");
    std::printf("namespace fixtures {\n\n");

    Potential mathieu({2.0}, {});

    {
        OracleConfig cfg;
        cfg.mesh_sizes = meshes_10_13();
        cfg.levels = 6;
        OracleResult r = fd_spectrum(mathieu, OracleBc::DD, cfg);
        std::printf("// first Dirichlet eigenvalues of q = 2cos(2 pi x)\n");
        emit("kMathieuMu1", r.values[0], r.error_estimates[0]);
        emit("kMathieuMu2", r.values[1], r.error_estimates[1]);
        emit("kMathieuMu3", r.values[2], r.error_estimates[2]);
        std::printf("\n");
    }

    {
        OracleConfig cfg;
        cfg.mesh_sizes = meshes_10_13();
        cfg.levels = 2;
        OracleResult r4 = fd_spectrum(mathieu, OracleBc::PER4, cfg);
        OracleResult r2 = fd_spectrum(mathieu, OracleBc::PER2, cfg);
        // The potential is even, so its Dirichlet/Neumann pair fills the first
        // gap edges exactly; in the doubled 4-periodic spectrum those are
        // entries 3 and 4 (after the ground level and the double eigenvalue of
        // the closed odd gap). The direct 2-periodic spectrum must agree.
        std::printf("// first band gap of q = 2cos(2 pi x), from the doubled problem\n");
        std::printf("// (2-periodic oracle cross-check: %.17g %.17g)\n", r2.values[1],
                    r2.values[2]);
        emit("kMathieuLam1Minus", r4.values[3], r4.error_estimates[3]);
        emit("kMathieuLam1Plus", r4.values[4], r4.error_estimates[4]);
        std::printf("\n");
    }

    {
        oracle_helpers::Transfer t =
            oracle_helpers::transfer_extrapolated(mathieu, 9.0, 1 << 14);
        oracle_helpers::Transfer c =
            oracle_helpers::transfer_extrapolated(mathieu, 9.0, 1 << 13);
        std::printf("// transfer matrix of q = 2cos(2 pi x) at lambda = 9,\n");
        std::printf("// midpoint rule at mesh 2^-14 with one Richardson step\n");
        emit("kMathieuTheta1At9", t.theta1, std::abs(t.theta1 - c.theta1));
        emit("kMathieuDTheta1At9", t.dtheta1, std::abs(t.dtheta1 - c.dtheta1));
        emit("kMathieuPhi1At9", t.phi1, std::abs(t.phi1 - c.phi1));
        emit("kMathieuDPhi1At9", t.dphi1, std::abs(t.dphi1 - c.dphi1));
        std::printf("\n");
    }

    {
        Potential q({2.0}, {1.0});
        std::vector<double> hs;
        for (int n : {1024, 2048, 4096, 8192}) {
            double mu = oracle_helpers::dd_mesh_eigenvalue(q, 0, n);
            auto y = oracle_helpers::dd_mesh_eigenvector(q, mu, n);
            hs.push_back(oracle_helpers::dd_slope_ratio_log(y, 1.0 / n));
        }
        std::vector<double> r(hs.size() - 1);
        for (size_t i = 0; i + 1 < hs.size(); ++i) r[i] = (4 * hs[i + 1] - hs[i]) / 3;
        std::printf("// Dirichlet norming constant h_s1 of q = 2cos(2 pi x) + sin(2 pi x),\n");
        std::printf("// log end-slope ratio of the finite-difference eigenvector\n");
        emit("kAsymHs1", r.back(), std::abs(r[r.size() - 1] - r[r.size() - 2]));
        std::printf("\n");
    }

    std::printf("}  // namespace fixtures\n");
    return 0;
}
