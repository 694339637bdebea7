#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "slspec/oracle.hpp"
#include "oracle_helpers.hpp"

using namespace slspec;

namespace {
constexpr double kPi = 3.14159265358979323846;

OracleConfig small_cfg(int levels) {
    OracleConfig cfg;
    cfg.mesh_sizes = {1.0 / 512, 1.0 / 1024, 1.0 / 2048};
    cfg.levels = levels;
    return cfg;
}
}  // namespace

TEST_CASE("free spectra of all four boundary problems") {
    Potential zero({}, {});
    auto cfg = small_cfg(5);

    OracleResult dd = fd_spectrum(zero, OracleBc::DD, cfg);
    REQUIRE(dd.values.size() == 5);
    for (int n = 1; n <= 5; ++n)
        CHECK(std::abs(dd.values[n - 1] - kPi * kPi * n * n) <=
              std::max(1e-8, 3 * dd.error_estimates[n - 1]));

    OracleResult nn = fd_spectrum(zero, OracleBc::NN, cfg);
    REQUIRE(nn.values.size() == 6);
    CHECK(std::abs(nn.values[0]) < 1e-8);
    for (int n = 1; n <= 5; ++n)
        CHECK(std::abs(nn.values[n] - kPi * kPi * n * n) <=
              std::max(1e-8, 3 * nn.error_estimates[n]));

    OracleResult dn = fd_spectrum(zero, OracleBc::DN, cfg);
    OracleResult nd = fd_spectrum(zero, OracleBc::ND, cfg);
    for (int n = 1; n <= 5; ++n) {
        double want = kPi * kPi * (n - 0.5) * (n - 0.5);
        CHECK(std::abs(dn.values[n - 1] - want) <= std::max(1e-8, 3 * dn.error_estimates[n - 1]));
        CHECK(std::abs(nd.values[n - 1] - want) <= std::max(1e-8, 3 * nd.error_estimates[n - 1]));
    }
}

TEST_CASE("free periodic spectra carry double eigenvalues") {
    Potential zero({}, {});
    auto cfg = small_cfg(3);
    OracleResult p2 = fd_spectrum(zero, OracleBc::PER2, cfg);
    REQUIRE(p2.values.size() == 7);
    CHECK(std::abs(p2.values[0]) < 1e-8);
    for (int n = 1; n <= 3; ++n) {
        double want = kPi * kPi * n * n;
        CHECK(std::abs(p2.values[2 * n - 1] - want) <= std::max(1e-7, 3 * p2.error_estimates[2 * n - 1]));
        CHECK(std::abs(p2.values[2 * n] - want) <= std::max(1e-7, 3 * p2.error_estimates[2 * n]));
    }
    OracleResult p4 = fd_spectrum(zero, OracleBc::PER4, cfg);
    for (int m = 1; m <= 3; ++m) {
        double want = kPi * kPi * m * m / 4.0;
        CHECK(std::abs(p4.values[2 * m - 1] - want) <= std::max(1e-7, 3 * p4.error_estimates[2 * m - 1]));
    }
}

TEST_CASE("oracle matches the independent transfer matrix on a shooting residual") {
    // the first Dirichlet eigenvalue of the Mathieu potential should make the
    // midpoint transfer matrix's phi(1) vanish
    Potential q({2.0}, {});
    auto cfg = small_cfg(1);
    OracleResult dd = fd_spectrum(q, OracleBc::DD, cfg);
    double mu1 = dd.values[0];
    CHECK(mu1 == doctest::Approx(8.86).epsilon(0.01));
    auto t = oracle_helpers::transfer_extrapolated(q, mu1, 1 << 13);
    CHECK(std::abs(t.phi1) < 1e-6);
}

TEST_CASE("mesh eigenvector helper reproduces the free sine mode") {
    Potential zero({}, {});
    int n = 2048;
    double mu = oracle_helpers::dd_mesh_eigenvalue(zero, 0, n);
    CHECK(mu == doctest::Approx(kPi * kPi).epsilon(1e-5));
    auto y = oracle_helpers::dd_mesh_eigenvector(zero, mu, n);
    REQUIRE(y.size() == size_t(n + 1));
    double sq = std::sqrt(2.0);
    for (int i : {n / 4, n / 2, 3 * n / 4}) {
        double x = double(i) / n;
        CHECK(y[i] == doctest::Approx(sq * std::sin(kPi * x)).epsilon(1e-5));
    }
    CHECK(std::abs(oracle_helpers::dd_slope_ratio_log(y, 1.0 / n)) < 1e-6);
}

TEST_CASE("oracle validation") {
    Potential zero({}, {});
    OracleConfig cfg;
    cfg.mesh_sizes = {1.0 / 512};
    CHECK_THROWS_AS(fd_spectrum(zero, OracleBc::DD, cfg), std::invalid_argument);
    cfg.mesh_sizes = {1.0 / 512, 1.0 / 1536};
    CHECK_THROWS_AS(fd_spectrum(zero, OracleBc::DD, cfg), std::invalid_argument);
    cfg.mesh_sizes = {1.0 / 512, 1.0 / 1024};
    cfg.levels = 40;  // 512 points cannot resolve 40 levels
    CHECK_THROWS_AS(fd_spectrum(zero, OracleBc::DD, cfg), std::out_of_range);
    cfg.levels = 0;
    CHECK_THROWS_AS(fd_spectrum(zero, OracleBc::DD, cfg), std::invalid_argument);
}
