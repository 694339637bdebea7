#include "slspec/potential.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace slspec {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

void check_finite(const std::vector<double>& v, const char* which) {
    for (size_t i = 0; i < v.size(); ++i)
        if (!std::isfinite(v[i]))
            throw std::invalid_argument(std::string("potential: non-finite ") + which +
                                        " coefficient at index " + std::to_string(i + 1));
}

double series_eval(const std::vector<double>& a, const std::vector<double>& b, double x) {
    // incremental rotation instead of M trig calls per sample
    double c1 = std::cos(kTwoPi * x), s1 = std::sin(kTwoPi * x);
    double ck = c1, sk = s1;
    double sum = 0;
    for (size_t k = 0; k < a.size(); ++k) {
        sum += a[k] * ck + b[k] * sk;
        double cn = ck * c1 - sk * s1;
        sk = sk * c1 + ck * s1;
        ck = cn;
    }
    return sum;
}
}  // namespace

Potential::Potential(std::vector<double> cos_coeffs, std::vector<double> sin_coeffs)
    : a_(std::move(cos_coeffs)),
      b_(std::move(sin_coeffs)),
      cache_(std::make_shared<detail::SampleCache>()) {
    check_finite(a_, "cos");
    check_finite(b_, "sin");
    // pad the shorter list so a_ and b_ always have equal length
    if (a_.size() < b_.size()) a_.resize(b_.size(), 0.0);
    if (b_.size() < a_.size()) b_.resize(a_.size(), 0.0);
}

double Potential::operator()(double x) const {
    if (!(x >= 0.0 && x <= 1.0))
        throw std::domain_error("potential: evaluation point outside [0,1]");
    return series_eval(a_, b_, x);
}

double Potential::periodic(double x) const {
    double t = x - std::floor(x);
    return series_eval(a_, b_, t);
}

double Potential::l2_norm() const {
    double s = 0;
    for (size_t k = 0; k < a_.size(); ++k) s += a_[k] * a_[k] + b_[k] * b_[k];
    return std::sqrt(0.5 * s);
}

double Potential::coeff_bound() const {
    double s = 0;
    for (size_t k = 0; k < a_.size(); ++k) s += std::abs(a_[k]) + std::abs(b_[k]);
    return s;
}

Potential Potential::reflected() const {
    std::vector<double> nb(b_.size());
    for (size_t k = 0; k < b_.size(); ++k) nb[k] = -b_[k];
    return Potential(a_, nb);
}

const std::vector<double>& Potential::gauss_samples(int steps) const {
    if (steps < 1) throw std::invalid_argument("potential: step count must be positive");
    std::lock_guard<std::mutex> lock(cache_->mutex);
    auto& cache = cache_->entries;
    auto it = cache.find(steps);
    if (it == cache.end()) {
        auto v = std::make_unique<std::vector<double>>(size_t(2) * steps);
        const double h = 1.0 / steps;
        const double off = 0.28867513459481288225457439025098;  // sqrt(3)/6
        for (int i = 0; i < steps; ++i) {
            double x1 = (i + 0.5 - off) * h;
            double x2 = (i + 0.5 + off) * h;
            (*v)[2 * i] = series_eval(a_, b_, x1);
            (*v)[2 * i + 1] = series_eval(a_, b_, x2);
        }
        it = cache.emplace(steps, std::move(v)).first;
    }
    return *it->second;
}

Potential potential_from_fourier(const std::vector<double>& cos_coeffs,
                                 const std::vector<double>& sin_coeffs) {
    return Potential(cos_coeffs, sin_coeffs);
}

GridProjection potential_from_grid(const std::vector<double>& values, int max_modes) {
    const int n = int(values.size());
    if (n < 2) throw std::invalid_argument("grid potential: need at least 2 samples");
    if (max_modes < 0) throw std::invalid_argument("grid potential: negative mode count");
    for (int i = 0; i < n; ++i)
        if (!std::isfinite(values[i]))
            throw std::invalid_argument("grid potential: non-finite sample at index " +
                                        std::to_string(i));

    GridProjection out;
    double mean = 0;
    for (double v : values) mean += v;
    mean /= n;
    out.removed_mean = mean;

    // midpoint samples x_i = (i + 1/2)/n; the discrete projection is exact
    // for band-limited data with 2M < n
    int M = std::min(max_modes, (n - 1) / 2);
    std::vector<double> a(M), b(M);
    for (int k = 1; k <= M; ++k) {
        double ca = 0, cb = 0;
        for (int i = 0; i < n; ++i) {
            double x = (i + 0.5) / n;
            ca += (values[i] - mean) * std::cos(kTwoPi * k * x);
            cb += (values[i] - mean) * std::sin(kTwoPi * k * x);
        }
        a[k - 1] = 2.0 * ca / n;
        b[k - 1] = 2.0 * cb / n;
    }
    out.q = Potential(std::move(a), std::move(b));

    double resid2 = 0;
    for (int i = 0; i < n; ++i) {
        double x = (i + 0.5) / n;
        double r = values[i] - mean - out.q(x);
        resid2 += r * r;
    }
    out.tail_rms = std::sqrt(resid2 / n);
    return out;
}

double ExtendedPotential::operator()(double x) const {
    if (!(x >= 0.0 && x <= 2.0))
        throw std::domain_error("extended potential: evaluation point outside [0,2]");
    return x <= 1.0 ? base_(x) : base_(2.0 - x);
}

double ExtendedPotential::periodic(double x) const {
    double t = 0.5 * x;
    t = 2.0 * (t - std::floor(t));  // t in [0,2)
    return t <= 1.0 ? base_.periodic(t) : base_.periodic(2.0 - t);
}

const std::vector<double>& ExtendedPotential::gauss_samples(int steps) const {
    if (steps < 2 || steps % 2 != 0)
        throw std::invalid_argument("extended potential: step count must be even");
    std::lock_guard<std::mutex> lock(cache_->mutex);
    auto& cache = cache_->entries;
    auto it = cache.find(steps);
    if (it == cache.end()) {
        auto v = std::make_unique<std::vector<double>>(size_t(2) * steps);
        const double h = 2.0 / steps;
        const double off = 0.28867513459481288225457439025098;
        for (int i = 0; i < steps; ++i) {
            double x1 = (i + 0.5 - off) * h;
            double x2 = (i + 0.5 + off) * h;
            (*v)[2 * i] = (*this)(x1);
            (*v)[2 * i + 1] = (*this)(x2);
        }
        it = cache.emplace(steps, std::move(v)).first;
    }
    return *it->second;
}

ExtendedPotential even_extension(const Potential& q) { return ExtendedPotential(q); }

}  // namespace slspec
