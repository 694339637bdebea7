#pragma once
// Zero-mean potentials q(x) = sum_k a_k cos(2 pi k x) + b_k sin(2 pi k x) on
// [0,1], and the even extension to [0,2] used by the doubling checks.
// Potentials are immutable after construction; the sample caches are lazily
// filled under a mutex, so sharing across threads is safe.

#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace slspec {

namespace detail {
// Lazily filled Gauss-node sample cache, shared between copies of a potential
// (the coefficient data is immutable, so sharing is sound).
struct SampleCache {
    std::mutex mutex;
    std::map<int, std::unique_ptr<const std::vector<double>>> entries;
};
}  // namespace detail

class Potential {
public:
    Potential() : cache_(std::make_shared<detail::SampleCache>()) {}  // q == 0
    Potential(std::vector<double> cos_coeffs, std::vector<double> sin_coeffs);

    // Evaluation on the principal interval; x outside [0,1] is a domain error.
    double operator()(double x) const;
    // 1-periodic evaluation (used by the finite-difference oracle).
    double periodic(double x) const;

    double l2_norm() const;      // Parseval: sqrt(sum (a_k^2 + b_k^2) / 2)
    double coeff_bound() const;  // sum |a_k| + |b_k| >= sup |q|

    int modes() const { return int(a_.size()); }
    const std::vector<double>& cos_coeffs() const { return a_; }
    const std::vector<double>& sin_coeffs() const { return b_; }

    Potential reflected() const;  // q(1 - x): a_k -> a_k, b_k -> -b_k

    // q at the two Gauss nodes of each of `steps` uniform subintervals of
    // [0,1]; 2*steps values, cached per step count.
    const std::vector<double>& gauss_samples(int steps) const;

private:
    std::vector<double> a_, b_;  // a_[k-1] = a_k, b_[k-1] = b_k
    std::shared_ptr<detail::SampleCache> cache_;
};

Potential potential_from_fourier(const std::vector<double>& cos_coeffs,
                                 const std::vector<double>& sin_coeffs);

// Projection of uniform midpoint samples ((i+1/2)/n, i < n) onto M Fourier
// modes with the mean removed; the discarded part is reported, not dropped
// silently.
struct GridProjection {
    Potential q;
    double removed_mean = 0;
    double tail_rms = 0;  // rms of samples - (mean + projection)
};
GridProjection potential_from_grid(const std::vector<double>& values, int max_modes);

// Even extension per the doubling construction: value q(x) for x in [0,1],
// q(2-x) for x in (1,2].
class ExtendedPotential {
public:
    explicit ExtendedPotential(Potential base)
        : base_(std::move(base)), cache_(std::make_shared<detail::SampleCache>()) {}

    double operator()(double x) const;  // domain [0,2]
    double periodic(double x) const;    // 2-periodic extension (oracle use)
    const Potential& base() const { return base_; }
    double coeff_bound() const { return base_.coeff_bound(); }

    // Same Gauss-node cache over [0,2]; `steps` must be even so the kink at
    // x = 1 lands on a step boundary and every step sees a smooth integrand.
    const std::vector<double>& gauss_samples(int steps) const;

private:
    Potential base_;
    std::shared_ptr<detail::SampleCache> cache_;
};

ExtendedPotential even_extension(const Potential& q);

}  // namespace slspec
