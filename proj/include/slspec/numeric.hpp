#pragma once
// Shared numerical utilities: deterministic RNG, bracketed root refinement,
// and the thread budget used by the coarse-grained parallel loops.

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

namespace slspec {

// Iterative-solver failure (distinct from malformed input, which throws
// std::invalid_argument / std::domain_error / std::out_of_range).
struct SolverError : std::runtime_error {
    explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

// splitmix64-based generator: identical output on every platform, unlike the
// distributions in <random>, so test batteries and CLI seeds are portable.
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    double uniform01() { return std::ldexp(double(next_u64() >> 11), -53); }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }
};

struct RootResult {
    double x = 0;
    double fx = 0;
    int evals = 0;
};

// Safeguarded secant/bisection on a sign-change bracket [a,b], f(a)*f(b) <= 0.
// Stops when the bracket width falls below xtol and |f| below ftol (or f hits
// zero exactly); returns the best iterate if max_iter runs out first.
RootResult refine_root(const std::function<double(double)>& f, double a, double b,
                       double fa, double fb, double xtol,
                       double ftol = std::numeric_limits<double>::infinity(),
                       int max_iter = 128);

int thread_budget();
void set_thread_budget(int n);

// body(i) must write only to its own slot; results are then independent of
// the schedule and the budget.
void parallel_for(int n, const std::function<void(int)>& body);

}  // namespace slspec
