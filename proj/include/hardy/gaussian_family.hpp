#pragma once

// Closed-form algebra on generalized Gaussians A exp(-b x^2 / 2), Re b > 0.
// The family is closed under the Fourier transform, the Bargmann transform
// and the harmonic oscillator flow, and has explicit Hermite coefficients.

#include <string>

#include "hardy/core.hpp"
#include "hardy/hermite_basis.hpp"

namespace hardy {

struct GeneralizedGaussian {
    cplx amplitude{1.0, 0.0};
    cplx width{1.0, 0.0};

    void validate() const {
        if (!(width.real() > 0.0))
            throw DomainError("GeneralizedGaussian: Re b must be positive");
    }
    cplx operator()(double x) const { return amplitude * std::exp(-0.5 * width * x * x); }

    /// (1 - b)/(1 + b); |z| < 1 exactly when Re b > 0.
    cplx mobius() const { return (1.0 - width) / (1.0 + width); }

    static GeneralizedGaussian g(double a) { return {1.0, a}; }
};

/// P exp(lambda w^2), the Bargmann image of a generalized Gaussian.
struct BargmannGaussian {
    cplx prefactor{};
    cplx quad_coeff{};
    cplx operator()(cplx w) const { return prefactor * std::exp(quad_coeff * w * w); }
};

/// (A, b) -> (A b^{-1/2}, 1/b), principal root.
inline GeneralizedGaussian fourier_gaussian(const GeneralizedGaussian& g) {
    g.validate();
    return {g.amplitude / std::sqrt(g.width), 1.0 / g.width};
}

inline BargmannGaussian bargmann_gaussian(const GeneralizedGaussian& g) {
    g.validate();
    const cplx onepb = 1.0 + g.width;
    return {std::pow(2.0, 0.25) * g.amplitude / std::sqrt(onepb), (1.0 - g.width) / (4.0 * onepb)};
}

/// <g, phi_k> in log form for k = 0..kmax. Odd indices vanish; for k = 2m
///   <g, phi_2m> = 2^{1/4} A (1+b)^{-1/2} z^m sqrt((2m)!) / (2^m m!),  z = (1-b)/(1+b).
inline std::vector<LogComplex> hermite_coeffs_gaussian_log(const GeneralizedGaussian& g, int kmax) {
    g.validate();
    if (kmax < 0) throw DomainError("hermite_coeffs_gaussian: kmax must be non-negative");
    std::vector<LogComplex> out(static_cast<std::size_t>(kmax) + 1);
    const cplx lead = std::pow(2.0, 0.25) * g.amplitude / std::sqrt(1.0 + g.width);
    if (lead == cplx{}) return out;
    const cplx z = g.mobius();
    const LogComplex l0 = LogComplex::from(lead);
    for (int m = 0; 2 * m <= kmax; ++m) {
        LogComplex c;
        if (m > 0 && z == cplx{}) {
            c = LogComplex::zero();
        } else {
            const double log_ratio = 0.5 * detail::log_factorial(2.0 * m) - m * std::log(2.0) -
                                     detail::log_factorial(m);
            const double log_z = m == 0 ? 0.0 : m * std::log(std::abs(z));
            c = {l0.log_mag + log_ratio + log_z, l0.phase + (m == 0 ? 0.0 : m * std::arg(z)), false};
        }
        out[static_cast<std::size_t>(2 * m)] = c;
    }
    return out;
}

inline HermiteExpansion hermite_coeffs_gaussian(const GeneralizedGaussian& g, int kmax) {
    HermiteExpansion e;
    for (const auto& c : hermite_coeffs_gaussian_log(g, kmax)) e.coeffs.push_back(c.value());
    return e;
}

/// Closed-form envelope: sup_x |A| e^{(a - Re b) x^2 / 2}. Widths within
/// 1e-12 (relative) of a count as equal, so rounding in 1/b does not flip
/// endpoint members.
inline EnvelopeReport envelope_constant(const GeneralizedGaussian& g, double a) {
    g.validate();
    EnvelopeReport r;
    r.a = a;
    r.argmax_x = 0.0;
    r.constant = std::abs(g.amplitude);
    r.divergent = g.width.real() < a - 1e-12 * std::max(1.0, std::abs(a));
    return r;
}

struct Membership {
    bool member = false;
    double constant = 0.0;  // max of the time- and frequency-side constants
    EnvelopeReport time_side;
    EnvelopeReport frequency_side;
};

/// Membership in E(a): |g| <= C g_a and |\hat g| <= C g_a.
inline Membership e_membership(const GeneralizedGaussian& g, double a) {
    Membership m;
    m.time_side = envelope_constant(g, a);
    m.frequency_side = envelope_constant(fourier_gaussian(g), a);
    m.member = !m.time_side.divergent && !m.frequency_side.divergent;
    m.constant = std::max(m.time_side.constant, m.frequency_side.constant);
    return m;
}

/// The chirped Gaussian exp((-a + i sqrt(1 - a^2)) x^2 / 2) with a = tanh(2 alpha):
/// a member of E(a) whose Hermite coefficients decay at exactly the rate e^{-alpha k}.
inline GeneralizedGaussian endpoint_chirp(double alpha) {
    if (!(alpha > 0.0)) throw DomainError("endpoint_chirp: alpha must be positive");
    const double a = std::tanh(2.0 * alpha);
    return {1.0, cplx(a, -std::sqrt(1.0 - a * a))};
}

}  // namespace hardy
