#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "slspec/potential.hpp"

using namespace slspec;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("trig series evaluation matches hand values") {
    Potential q({2.0}, {});
    CHECK(q(0.0) == doctest::Approx(2.0));
    CHECK(std::abs(q(0.25)) < 1e-14);
    CHECK(q(0.5) == doctest::Approx(-2.0));

    Potential s({}, {1.0});
    CHECK(s(0.25) == doctest::Approx(1.0));
    CHECK(s(0.75) == doctest::Approx(-1.0));

    Potential mix({0.5, -1.0}, {0.0, 2.0});
    double x = 0.3125;
    double want = 0.5 * std::cos(2 * kPi * x) - std::cos(4 * kPi * x) + 2 * std::sin(4 * kPi * x);
    CHECK(mix(x) == doctest::Approx(want).epsilon(1e-14));
}

TEST_CASE("mean-zero norm follows the coefficient sum") {
    CHECK(Potential({}, {}).l2_norm() == 0.0);
    Potential one({1.0}, {});
    CHECK(one.l2_norm() * one.l2_norm() == doctest::Approx(0.5));
    Potential two({0.0, 3.0}, {4.0});
    CHECK(two.l2_norm() * two.l2_norm() == doctest::Approx(12.5));
}

TEST_CASE("norm agrees with direct quadrature of q^2") {
    Potential q({0.7, -0.3}, {1.1, 0.0, 0.25});
    int n = 4096;
    double sum = 0;
    for (int i = 0; i < n; ++i) {
        double v = q((i + 0.5) / n);
        sum += v * v;
    }
    CHECK(q.l2_norm() == doctest::Approx(std::sqrt(sum / n)).epsilon(1e-10));
}

TEST_CASE("reflection flips sine coefficients and the graph") {
    Potential q({0.5, 0.2}, {-1.0, 0.7});
    Potential r = q.reflected();
    for (double x : {0.0, 0.1, 0.37, 0.5, 0.92, 1.0})
        CHECK(r(x) == doctest::Approx(q(1.0 - x)).epsilon(1e-14));
    Potential rr = r.reflected();
    CHECK(rr(0.37) == doctest::Approx(q(0.37)).epsilon(1e-14));
    CHECK(r.l2_norm() == doctest::Approx(q.l2_norm()));
}

TEST_CASE("periodic evaluation wraps the unit interval") {
    Potential q({0.3}, {0.8});
    CHECK(q.periodic(1.25) == doctest::Approx(q(0.25)).epsilon(1e-14));
    CHECK(q.periodic(-0.25) == doctest::Approx(q(0.75)).epsilon(1e-14));
    CHECK(q.periodic(3.0) == doctest::Approx(q(0.0)).epsilon(1e-14));
}

TEST_CASE("evaluation outside the interval is rejected") {
    Potential q({1.0}, {});
    CHECK_THROWS_AS(q(-0.1), std::domain_error);
    CHECK_THROWS_AS(q(1.5), std::domain_error);
}

TEST_CASE("non-finite coefficients are rejected") {
    CHECK_THROWS_AS(Potential({std::nan("")}, {}), std::invalid_argument);
    CHECK_THROWS_AS(Potential({}, {1.0, std::numeric_limits<double>::infinity()}),
                    std::invalid_argument);
}

TEST_CASE("grid projection recovers fourier coefficients from midpoint samples") {
    Potential q({0.4, -0.9, 0.0, 0.05}, {1.3, 0.0, -0.2});
    int n = 256;
    std::vector<double> vals(n);
    for (int i = 0; i < n; ++i) vals[i] = q((i + 0.5) / n) + 2.5;  // add a mean to strip
    GridProjection proj = potential_from_grid(vals, 8);
    CHECK(proj.removed_mean == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(proj.tail_rms < 1e-12);
    const auto& a = proj.q.cos_coeffs();
    const auto& b = proj.q.sin_coeffs();
    REQUIRE(a.size() >= 4);
    CHECK(a[0] == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(a[1] == doctest::Approx(-0.9).epsilon(1e-12));
    CHECK(a[3] == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(b[0] == doctest::Approx(1.3).epsilon(1e-12));
    CHECK(b[2] == doctest::Approx(-0.2).epsilon(1e-12));
    for (double x : {0.1, 0.6})
        CHECK(proj.q(x) == doctest::Approx(q(x)).epsilon(1e-10));
}

TEST_CASE("grid projection reports unresolved high-frequency content") {
    int n = 64;
    std::vector<double> vals(n);
    for (int i = 0; i < n; ++i) {
        double x = (i + 0.5) / n;
        vals[i] = std::cos(2 * kPi * x) + 0.5 * std::cos(2 * kPi * 12 * x);
    }
    GridProjection proj = potential_from_grid(vals, 4);
    CHECK(proj.q.modes() <= 4);
    // the k=12 line cannot be represented with 4 modes; rms of that line is 0.5/sqrt(2)
    CHECK(proj.tail_rms == doctest::Approx(0.5 / std::sqrt(2.0)).epsilon(1e-6));
    CHECK_THROWS_AS(potential_from_grid(std::vector<double>{1.0}, 4), std::invalid_argument);
}

TEST_CASE("even extension mirrors about x = 1 and has period two") {
    Potential q({0.6, -0.2}, {0.9});
    ExtendedPotential qe(q);
    for (double x : {0.0, 0.3, 0.77, 1.0}) {
        CHECK(qe(x) == doctest::Approx(q(x)).epsilon(1e-14));
        CHECK(qe(2.0 - x) == doctest::Approx(q(x)).epsilon(1e-14));
    }
    CHECK(qe.periodic(2.3) == doctest::Approx(qe(0.3)).epsilon(1e-13));
    CHECK(qe.periodic(-0.3) == doctest::Approx(qe(0.3)).epsilon(1e-13));
    CHECK_THROWS_AS(qe(2.5), std::domain_error);
    CHECK(even_extension(q)(1.5) == doctest::Approx(q(0.5)).epsilon(1e-14));
}

TEST_CASE("gauss samples land on the two-point nodes of each cell") {
    Potential q({0.0, 1.0}, {0.5});
    int steps = 32;
    const auto& s = q.gauss_samples(steps);
    REQUIRE(s.size() == size_t(2 * steps));
    double h = 1.0 / steps;
    double off = 0.5 - std::sqrt(3.0) / 6.0;
    CHECK(s[0] == doctest::Approx(q(off * h)).epsilon(1e-14));
    CHECK(s[1] == doctest::Approx(q((1.0 - off) * h)).epsilon(1e-14));
    CHECK(s[2 * 31] == doctest::Approx(q((31 + off) * h)).epsilon(1e-14));
}
