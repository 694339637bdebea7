#pragma once

// Frozen reference values produced by tests/gen_fixtures.cpp.
// Regenerate with the gen_fixtures tool; do not edit by hand.

namespace fixtures {

// first Dirichlet eigenvalues of q = 2cos(2 pi x)
constexpr double kMathieuMu1 = 8.8570989463473193;  // oracle error estimate 5.75e-09
constexpr double kMathieuMu2 = 39.469974558179963;  // oracle error estimate 1.2e-08
constexpr double kMathieuMu3 = 88.832612471656446;  // oracle error estimate 2.42e-09

// first band gap of q = 2cos(2 pi x), from the doubled problem
// (2-periodic oracle cross-check: 8.8570989463475449 10.856778200095221)
constexpr double kMathieuLam1Minus = 8.8570989463475449;  // oracle error estimate 5.75e-09
constexpr double kMathieuLam1Plus = 10.856778200095221;  // oracle error estimate 4.78e-10

// transfer matrix of q = 2cos(2 pi x) at lambda = 9,
// midpoint rule at mesh 2^-14 with one Richardson step
constexpr double kMathieuTheta1At9 = -1.0035120259651695;  // oracle error estimate 2e-11
constexpr double kMathieuDTheta1At9 = -0.91041021483552098;  // oracle error estimate 2.01e-11
constexpr double kMathieuPhi1At9 = -0.0077288085609676814;  // oracle error estimate 1.66e-13
constexpr double kMathieuDPhi1At9 = -1.0035120259645733;  // oracle error estimate 2.41e-11

// Dirichlet norming constant h_s1 of q = 2cos(2 pi x) + sin(2 pi x),
// log end-slope ratio of the finite-difference eigenvector
constexpr double kAsymHs1 = 0.077601694407828978;  // oracle error estimate 2.19e-11

}  // namespace fixtures
