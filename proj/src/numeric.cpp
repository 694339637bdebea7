#include "slspec/numeric.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>
#include <vector>

namespace slspec {

RootResult refine_root(const std::function<double(double)>& f, double a, double b,
                       double fa, double fb, double xtol, double ftol, int max_iter) {
    if (a > b) {
        std::swap(a, b);
        std::swap(fa, fb);
    }
    if (fa == 0.0) return {a, 0.0, 0};
    if (fb == 0.0) return {b, 0.0, 0};
    if ((fa > 0) == (fb > 0))
        throw SolverError("refine_root: endpoints do not bracket a sign change");

    int evals = 0;
    // c is the previous iterate; secant through (b, fb)-(c, fc) when it stays
    // inside the bracket and shrinks it fast enough, bisection otherwise.
    double c = a, fc = fa;
    for (int it = 0; it < max_iter; ++it) {
        if (std::abs(fc) < std::abs(fb)) {
            // keep |f(b)| the smaller of the bracket ends
            std::swap(b, c);
            std::swap(fb, fc);
        }
        double width = std::abs(b - c);
        if (fb == 0.0 || (width <= xtol && std::abs(fb) <= ftol)) return {b, fb, evals};

        double x;
        double denom = fc - fb;
        if (denom != 0.0) {
            x = b - fb * (c - b) / denom;
            double lo = std::min(b, c), hi = std::max(b, c);
            double margin = 0.01 * width;
            if (!(x > lo + margin && x < hi - margin)) x = 0.5 * (b + c);
        } else {
            x = 0.5 * (b + c);
        }

        double fx = f(x);
        ++evals;
        if (fx == 0.0) return {x, 0.0, evals};
        if ((fx > 0) == (fb > 0)) {
            b = x;
            fb = fx;
        } else {
            c = b;
            fc = fb;
            b = x;
            fb = fx;
        }
    }
    return {b, fb, evals};
}

namespace {
std::atomic<int> g_thread_budget{0};  // 0 = not set yet, use hardware count
}

int thread_budget() {
    int n = g_thread_budget.load();
    if (n > 0) return n;
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? int(hw) : 1;
}

void set_thread_budget(int n) {
    if (n < 1) throw std::invalid_argument("thread budget must be >= 1");
    g_thread_budget.store(n);
}

void parallel_for(int n, const std::function<void(int)>& body) {
    int workers = std::min(thread_budget(), n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::exception_ptr error;
    std::mutex error_mutex;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                int i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace slspec
