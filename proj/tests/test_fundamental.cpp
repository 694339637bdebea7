#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "slspec/fundamental.hpp"
#include "slspec/numeric.hpp"
#include "slspec/potential.hpp"
#include "fixtures.hpp"

using namespace slspec;

namespace {
constexpr double kPi = 3.14159265358979323846;

// closed-form discriminant of the free problem, valid for either sign of lambda
double free_disc(double lam) {
    return lam >= 0 ? std::cos(std::sqrt(lam)) : std::cosh(std::sqrt(-lam));
}

Potential random_potential(Rng& rng, int modes, double norm_cap) {
    std::vector<double> a(modes), b(modes);
    for (int k = 0; k < modes; ++k) {
        a[k] = rng.uniform(-1.0, 1.0);
        b[k] = rng.uniform(-1.0, 1.0);
    }
    Potential q(a, b);
    double n = q.l2_norm();
    if (n > norm_cap) {
        double s = norm_cap / n;
        for (auto& v : a) v *= s;
        for (auto& v : b) v *= s;
        q = Potential(a, b);
    }
    return q;
}
}  // namespace

TEST_CASE("free problem reproduces the closed-form solutions") {
    Potential zero({}, {});
    FundamentalValues at_pi2 = fundamental_at_one(zero, kPi * kPi);
    CHECK(at_pi2.theta1 == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(std::abs(at_pi2.dtheta1) < 1e-10);
    CHECK(std::abs(at_pi2.phi1) < 1e-12);
    CHECK(at_pi2.dphi1 == doctest::Approx(-1.0).epsilon(1e-12));

    FundamentalValues at_zero = fundamental_at_one(zero, 0.0);
    CHECK(at_zero.theta1 == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(std::abs(at_zero.dtheta1) < 1e-12);
    CHECK(at_zero.phi1 == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(at_zero.dphi1 == doctest::Approx(1.0).epsilon(1e-13));

    double lam = -9.0;
    FundamentalValues neg = fundamental_at_one(zero, lam);
    CHECK(neg.theta1 == doctest::Approx(std::cosh(3.0)).epsilon(1e-12));
    CHECK(neg.phi1 == doctest::Approx(std::sinh(3.0) / 3.0).epsilon(1e-12));
}

TEST_CASE("free discriminant tracks cos(sqrt(lambda)) over the working range") {
    Potential zero({}, {});
    double hi = 400.0 * kPi * kPi;
    for (int i = 0; i <= 300; ++i) {
        double lam = -10.0 + (hi + 10.0) * i / 300.0;
        CHECK(std::abs(discriminant(zero, lam) - free_disc(lam)) < 1e-8);
    }
}

TEST_CASE("wronskian stays at one for random potentials") {
    Rng rng{20240817u};
    for (int trial = 0; trial < 8; ++trial) {
        Potential q = random_potential(rng, 6, 5.0);
        for (double lam : {-20.0, 0.0, 5.0, 100.0, 1234.5, 9876.0}) {
            FundamentalValues v = fundamental_at_one(q, lam);
            double w = v.theta1 * v.dphi1 - v.dtheta1 * v.phi1;
            CHECK(std::abs(w - 1.0) < 1e-9);
        }
    }
}

TEST_CASE("values for the mathieu potential match the frozen reference run") {
    Potential q({2.0}, {});
    FundamentalValues v = fundamental_at_one(q, 9.0);
    CHECK(v.theta1 == doctest::Approx(fixtures::kMathieuTheta1At9).epsilon(1e-9));
    CHECK(v.dtheta1 == doctest::Approx(fixtures::kMathieuDTheta1At9).epsilon(1e-9));
    CHECK(std::abs(v.phi1 - fixtures::kMathieuPhi1At9) < 1e-9);
    CHECK(v.dphi1 == doctest::Approx(fixtures::kMathieuDPhi1At9).epsilon(1e-9));
    double w = v.theta1 * v.dphi1 - v.dtheta1 * v.phi1;
    CHECK(std::abs(w - 1.0) < 1e-9);
}

TEST_CASE("oscillation counts match the free problem") {
    // lambda chosen so no zero sits exactly on x = 1, where the count would be
    // a coin flip on roundoff (the prufer angle is what bracketing relies on)
    Potential zero({}, {});
    FundamentalValues v = fundamental_at_one(zero, std::pow(3.3 * kPi, 2));
    CHECK(v.oscillation_count == 3);        // sin zeros at j/3.3, j = 1..3
    CHECK(v.theta_oscillation_count == 3);  // cos zeros at (j-1/2)/3.3, j = 1..3
}

TEST_CASE("prufer angles are monotone in lambda and hit free targets") {
    Potential zero({}, {});
    IntegratorConfig cfg;
    for (int n : {1, 2, 5}) {
        double target = n * kPi;
        double angle = prufer_angle_phi(fundamental_at_one(zero, std::pow(n * kPi, 2), cfg));
        CHECK(angle == doctest::Approx(target).epsilon(1e-12));
    }
    // theta angle at the free Neumann eigenvalue (pi n)^2 is (n + 1/2) pi
    double a_theta = prufer_angle_theta(fundamental_at_one(zero, std::pow(2 * kPi, 2), cfg));
    CHECK(a_theta == doctest::Approx(2.5 * kPi).epsilon(1e-12));

    Rng rng{77u};
    Potential q = random_potential(rng, 4, 3.0);
    double prev = prufer_angle_phi(fundamental_at_one(q, -5.0, cfg));
    for (double lam : {0.0, 10.0, 40.0, 90.0, 200.0, 500.0}) {
        double cur = prufer_angle_phi(fundamental_at_one(q, lam, cfg));
        CHECK(cur > prev);
        prev = cur;
    }
}

TEST_CASE("fundamental solutions on the doubled interval") {
    Potential zero({}, {});
    ExtendedPotential qe(zero);
    double lam = 2.0;
    double r = std::sqrt(lam);
    FundamentalValues v = fundamental_at_end(qe, lam);
    CHECK(v.theta1 == doctest::Approx(std::cos(2 * r)).epsilon(1e-12));
    CHECK(v.phi1 == doctest::Approx(std::sin(2 * r) / r).epsilon(1e-12));
    CHECK(discriminant_doubled(qe, lam) == doctest::Approx(std::cos(2 * r)).epsilon(1e-12));
}

TEST_CASE("eigenfunction returns normalized shapes for known eigenvalues") {
    Potential zero({}, {});
    GridFunction y = eigenfunction(zero, Bc::DD, kPi * kPi);
    REQUIRE(y.values.size() >= 3);
    CHECK(y.normalized);
    int n = int(y.values.size()) - 1;
    double sq = std::sqrt(2.0);
    for (int i : {n / 4, n / 2, (3 * n) / 4}) {
        double x = i * y.dx;
        CHECK(y.values[i] == doctest::Approx(sq * std::sin(kPi * x)).epsilon(1e-7));
    }
    double l2 = 0;  // trapezoid rule on y^2, matching the normalization
    for (size_t i = 0; i + 1 < y.values.size(); ++i) {
        double a = y.values[i], b = y.values[i + 1];
        l2 += 0.5 * (a * a + b * b) * y.dx;
    }
    CHECK(l2 == doctest::Approx(1.0).epsilon(1e-9));

    GridFunction c = eigenfunction(zero, Bc::NN, 0.0);
    CHECK(c.values.front() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(c.values[c.values.size() / 2] == doctest::Approx(1.0).epsilon(1e-10));

    GridFunction d = eigenfunction(zero, Bc::DN, kPi * kPi / 4.0);
    CHECK(d.values[d.values.size() / 2] ==
          doctest::Approx(sq * std::sin(kPi * 0.25)).epsilon(1e-7));

    CHECK_THROWS_AS(eigenfunction(zero, Bc::DD, 5.0), SolverError);
}

TEST_CASE("configuration and range validation") {
    Potential zero({}, {});
    IntegratorConfig bad;
    bad.min_steps = 4;
    CHECK_THROWS_AS(fundamental_at_one(zero, 1.0, bad), std::invalid_argument);
    IntegratorConfig cfg;
    CHECK_THROWS_AS(fundamental_at_one(zero, 2.0e4, cfg), std::out_of_range);
    CHECK_THROWS_AS(fundamental_at_one(zero, -5.0e5, cfg), std::out_of_range);
    CHECK_THROWS_AS(fundamental_at_one(zero, std::nan(""), cfg), std::invalid_argument);
}
