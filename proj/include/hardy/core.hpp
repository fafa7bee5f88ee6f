#pragma once

// Shared vocabulary for the hardy library: complex alias, error types and
// log-domain helpers used by every module.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hardy {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double sqrt_two_pi = 2.5066282746310002;  // sqrt(2*pi)
inline constexpr cplx I{0.0, 1.0};

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Requested Hermite index is not resolved by the sampling grid.
class BandLimitError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Sampled function does not decay at the grid edges, so a transform
/// computed on the grid would wrap around.
class AliasingError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Not enough usable data to fit a decay law.
class FitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Result of checking |f(x)| <= C exp(-a x^2 / 2) on a grid (or in closed form).
struct EnvelopeReport {
    double a = 0.0;
    double constant = 0.0;   // sup |f(x)| e^{a x^2/2}
    double argmax_x = 0.0;
    bool divergent = false;  // constant is then only a lower estimate
};

/// A complex number stored as log-magnitude and phase, with an explicit
/// zero marker. Used where magnitudes leave the double range.
struct LogComplex {
    double log_mag = -std::numeric_limits<double>::infinity();
    double phase = 0.0;
    bool is_zero = true;

    static LogComplex zero() { return {}; }
    static LogComplex from(cplx z) {
        if (z == cplx{}) return zero();
        return {std::log(std::abs(z)), std::arg(z), false};
    }
    cplx value() const {
        if (is_zero) return {};
        return std::polar(std::exp(log_mag), phase);
    }
};

namespace detail {

inline double log_factorial(double n) { return std::lgamma(n + 1.0); }

/// log(sum exp(terms)), accumulating from the smallest term upward.
inline double log_sum_exp(std::vector<double> terms) {
    if (terms.empty()) return -std::numeric_limits<double>::infinity();
    std::sort(terms.begin(), terms.end());
    const double top = terms.back();
    if (!std::isfinite(top)) return top;
    double sum = 0.0, comp = 0.0;  // Kahan
    for (double t : terms) {
        const double y = std::exp(t - top) - comp;
        const double s = sum + y;
        comp = (s - sum) - y;
        sum = s;
    }
    return top + std::log(sum);
}

/// Relative comparison helper used by tests and the acceptance harness.
inline double rel_err(double got, double want) {
    const double d = std::abs(got - want);
    return want == 0.0 ? d : d / std::abs(want);
}

}  // namespace detail
}  // namespace hardy
