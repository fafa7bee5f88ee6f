#pragma once

// The Bargmann transform
//   Uf(w) = e^{-w^2/4} / (2^{1/4} pi^{1/2}) \int e^{x w} e^{-x^2/2} f(x) dx
// as a numerical object, plus the growth estimates on Uf that drive the
// exponential decay of Hermite coefficients: the two hypothesis bounds, the
// sector estimate obtained from Phragmen-Lindelof, the optimized Cauchy
// coefficient bound, and the refined contour bound with its I_n / J_n pieces.
//
// Taylor coefficients c_n of Uf relate to Hermite coefficients through
// <f, phi_n> = sqrt(2^n n!) c_n. The series is indexed from n = 0.

#include <functional>

#include "hardy/core.hpp"
#include "hardy/gaussian_family.hpp"
#include "hardy/hermite_basis.hpp"
#include "hardy/quadrature.hpp"

namespace hardy {

/// Uf at a single point by trapezoidal quadrature on f's grid.
inline cplx bargmann_numeric(const SampledFunction& f, cplx w,
                             double edge_tolerance = default_edge_tolerance) {
    f.validate();
    const auto& g = f.grid;
    std::vector<cplx> integrand(static_cast<std::size_t>(g.num_points));
    for (int j = 0; j < g.num_points; ++j) {
        const double x = g.x(j);
        integrand[static_cast<std::size_t>(j)] =
            std::exp(x * w - 0.5 * x * x) * f.values[static_cast<std::size_t>(j)];
    }
    if (detail::edge_ratio(integrand) > edge_tolerance)
        throw DomainError("bargmann_numeric: integrand does not decay at the grid edges");
    cplx acc{};
    for (const auto& v : integrand) acc += v;
    static const double norm = 1.0 / (std::pow(2.0, 0.25) * std::sqrt(pi));
    return std::exp(-0.25 * w * w) * norm * g.spacing() * acc;
}

/// max over w of |U(\hat f)(w) - Uf(-i w)|.
inline double reflection_check(const SampledFunction& f, std::span<const cplx> ws) {
    const SampledFunction fhat = fourier_sampled(f);
    double worst = 0.0;
    for (cplx w : ws)
        worst = std::max(worst, std::abs(bargmann_numeric(fhat, w) - bargmann_numeric(f, -I * w)));
    return worst;
}

struct TaylorSeries {
    std::vector<LogComplex> coeffs;
    bool complete = false;  // coeffs hold the whole series (a polynomial)
};

inline TaylorSeries expansion_to_taylor(const HermiteExpansion& e) {
    TaylorSeries t;
    t.complete = true;
    t.coeffs.reserve(e.size());
    for (std::size_t n = 0; n < e.size(); ++n) {
        LogComplex c = LogComplex::from(e.coeffs[n]);
        if (!c.is_zero)
            c.log_mag -= 0.5 * (n * std::log(2.0) + detail::log_factorial(static_cast<double>(n)));
        t.coeffs.push_back(c);
    }
    return t;
}

/// Same as expansion_to_taylor, starting from log-form Hermite coefficients
/// that may be the head of an infinite series.
inline TaylorSeries log_expansion_to_taylor(const std::vector<LogComplex>& coeffs, bool complete = false) {
    TaylorSeries t{coeffs, complete};
    for (std::size_t n = 0; n < t.coeffs.size(); ++n)
        if (!t.coeffs[n].is_zero)
            t.coeffs[n].log_mag -= 0.5 * (n * std::log(2.0) + detail::log_factorial(static_cast<double>(n)));
    return t;
}

inline HermiteExpansion taylor_to_expansion(const TaylorSeries& t) {
    HermiteExpansion e;
    e.coeffs.reserve(t.coeffs.size());
    for (std::size_t n = 0; n < t.coeffs.size(); ++n) {
        LogComplex c = t.coeffs[n];
        if (!c.is_zero)
            c.log_mag += 0.5 * (n * std::log(2.0) + detail::log_factorial(static_cast<double>(n)));
        e.coeffs.push_back(c.value());
    }
    return e;
}

struct TaylorValue {
    cplx value{};
    bool truncated = false;  // tail estimate never fell below tolerance
    double tail_estimate = 0.0;
};

/// Sums c_n w^n until the geometric tail estimate from the last two nonzero
/// terms drops below 1e-14 of the partial sum.
inline TaylorValue evaluate_taylor(const TaylorSeries& t, cplx w, double rel_tol = 1e-14) {
    TaylorValue out;
    if (t.coeffs.empty()) return out;
    if (w == cplx{}) {
        out.value = t.coeffs.front().value();
        return out;
    }
    const double log_r = std::log(std::abs(w));
    const double arg_w = std::arg(w);
    double prev_mag = -1.0;
    std::size_t prev_n = 0;
    bool converged = false;
    double tail = std::numeric_limits<double>::infinity();
    for (std::size_t n = 0; n < t.coeffs.size(); ++n) {
        const auto& c = t.coeffs[n];
        if (c.is_zero) continue;
        const double lm = c.log_mag + n * log_r;
        const double mag = std::exp(lm);
        out.value += std::polar(mag, c.phase + n * arg_w);
        if (prev_mag > 0.0) {
            const double q = std::pow(mag / prev_mag, 1.0 / static_cast<double>(n - prev_n));
            tail = q < 1.0 ? mag * q / (1.0 - q) : std::numeric_limits<double>::infinity();
            if (tail <= rel_tol * std::abs(out.value)) {
                converged = true;
                break;
            }
        } else if (mag == 0.0) {
            tail = 0.0;
        }
        prev_mag = mag;
        prev_n = n;
    }
    out.truncated = !t.complete && !converged && tail > rel_tol * std::abs(out.value);
    out.tail_estimate = t.complete && !converged ? 0.0 : tail;
    return out;
}

/// Opening angles of the Phragmen-Lindelof sector for E(a) data.
struct SectorParams {
    double a = 0.5;
    double mu = 1.0 / 3.0;
    double theta0 = pi / 6;
    double theta1 = pi / 3;
    double C = 1.0;

    /// C sqrt(2 pi / (1 + a)): the common prefactor of all growth bounds.
    double prefactor() const { return C * std::sqrt(2.0 * pi / (1.0 + a)); }
};

inline double sector_theta0(double mu) {
    return 0.5 * std::atan(2.0 * std::sqrt(mu) / (1.0 - mu));
}

inline SectorParams sector_params(double a, double C = 1.0) {
    if (!(a > 0.0 && a < 1.0)) throw DomainError("sector_params: need 0 < a < 1");
    SectorParams s;
    s.a = a;
    s.mu = (1.0 - a) / (1.0 + a);
    s.theta0 = sector_theta0(s.mu);
    s.theta1 = pi / 2 - s.theta0;
    s.C = C;
    return s;
}

// Bounds implied by |f| <= C g_a alone, and by |\hat f| <= C g_a alone.
inline double hypothesis_bound_time(const SectorParams& s, cplx w) {
    const double r2 = std::norm(w), sn = std::sin(std::arg(w));
    return s.prefactor() * std::exp((s.mu + (1.0 - s.mu) * sn * sn) * r2 / 4.0);
}
inline double hypothesis_bound_frequency(const SectorParams& s, cplx w) {
    const double r2 = std::norm(w), cs = std::cos(std::arg(w));
    return s.prefactor() * std::exp((s.mu + (1.0 - s.mu) * cs * cs) * r2 / 4.0);
}

/// Crude bound valid in every quadrant: C sqrt(2pi/(1+a)) exp(sqrt(mu) |w|^2 / 4).
inline double quadrant_bound(const SectorParams& s, cplx w) {
    return s.prefactor() * std::exp(std::sqrt(s.mu) * std::norm(w) / 4.0);
}

/// arg w reduced to [0, pi/2) using the symmetry of the estimates.
inline double reduced_angle(cplx w) {
    double th = std::fmod(std::arg(w), pi / 2);
    if (th < 0.0) th += pi / 2;
    return th;
}

/// C sqrt(2pi/(1+a)) exp(sqrt(mu) sin(2 theta) r^2 / 4) for theta0 <= theta <= theta1.
inline double sector_bound(const SectorParams& s, cplx w) {
    const double th = reduced_angle(w);
    constexpr double slack = 1e-12;
    if (w != cplx{} && (th < s.theta0 - slack || th > s.theta1 + slack))
        throw DomainError("sector_bound: argument outside [theta0, theta1]; use quadrant_bound");
    return s.prefactor() * std::exp(std::sqrt(s.mu) * std::sin(2.0 * th) * std::norm(w) / 4.0);
}

/// F(w) = exp(i sqrt(mu) w^2 / 4) Uf(w), with Uf from its Taylor series.
inline TaylorValue pl_auxiliary(const SectorParams& s, const TaylorSeries& f_taylor, cplx w) {
    TaylorValue v = evaluate_taylor(f_taylor, w);
    v.value *= std::exp(I * std::sqrt(s.mu) * w * w / 4.0);
    return v;
}

/// log of C sqrt(2pi/(1+a)) (e sqrt(mu) / (2n))^{n/2}.
inline double cauchy_coeff_bound_log(const SectorParams& s, int n) {
    if (n < 1) throw DomainError("cauchy_coeff_bound: need n >= 1");
    return std::log(s.prefactor()) + 0.5 * n * (1.0 + 0.5 * std::log(s.mu) - std::log(2.0 * n));
}
inline double cauchy_coeff_bound(const SectorParams& s, int n) {
    return std::exp(cauchy_coeff_bound_log(s, n));
}

/// The star-shaped contour r_n(t) e^{it} and the resulting bound on |c_n|.
struct ContourBound {
    int n = 2;
    double mu = 1.0 / 3.0;
    double theta0 = 0.0;
    double log_I = 0.0;  // log I_n
    double log_J = 0.0;  // log J_n
    double log_bound = 0.0;

    double I() const { return std::exp(log_I); }
    double J() const { return std::exp(log_J); }
    double bound() const { return std::exp(log_bound); }

    double radius_inner(double t) const {
        const double s = std::sin(t);
        return std::sqrt((2.0 * n + 2.0) / (mu + (1.0 - mu) * s * s));
    }
    double radius_sector(double t) const {
        return std::sqrt((2.0 * n + 2.0) / (std::sqrt(mu) * std::sin(2.0 * t)));
    }
    /// r_n(t) on [0, 2pi): reflected about pi/4 and extended pi/2-periodically.
    double radius(double t) const {
        double tau = std::fmod(t, pi / 2);
        if (tau < 0.0) tau += pi / 2;
        if (tau > pi / 4) tau = pi / 2 - tau;
        return tau < theta0 ? radius_inner(tau) : radius_sector(tau);
    }
};

inline ContourBound thm22_contour(int n, double mu) {
    if (!(mu > 0.0 && mu < 1.0)) throw DomainError("thm22_contour: need 0 < mu < 1");
    if (n < 2) throw DomainError("thm22_contour: need n >= 2");
    ContourBound cb;
    cb.n = n;
    cb.mu = mu;
    cb.theta0 = sector_theta0(mu);
    const double p = 0.5 * (n - 2);
    constexpr double tol = 1e-12;

    // I_n = \int_0^{theta0} s(t)^p sqrt(mu^2 + (1-mu^2) sin^2 t) dt, s = mu + (1-mu) sin^2 t,
    // integrated with s normalized by its maximum s(theta0) = 2mu/(1+mu).
    const double s0 = 2.0 * mu / (1.0 + mu);
    auto fi = [&](double t) {
        const double sn = std::sin(t);
        const double s = mu + (1.0 - mu) * sn * sn;
        return std::pow(s / s0, p) * std::sqrt(mu * mu + (1.0 - mu * mu) * sn * sn);
    };
    const double i_scaled = detail::adaptive_simpson(fi, 0.0, cb.theta0, tol * std::sqrt(mu));
    cb.log_I = p * std::log(s0) + std::log(i_scaled);

    // J_n = mu^{n/4} \int_{theta0}^{pi/4} sin(2t)^p dt
    auto fj = [&](double t) { return std::pow(std::sin(2.0 * t), p); };
    const double j_scaled = detail::adaptive_simpson(fj, cb.theta0, pi / 4, tol);
    cb.log_J = 0.25 * n * std::log(mu) + std::log(j_scaled);

    const double a = (1.0 - mu) / (1.0 + mu);
    const double log_ij = detail::log_sum_exp({cb.log_I, cb.log_J});
    cb.log_bound = std::log(4.0 / pi) + 0.5 * std::log(2.0 * pi / (1.0 + a)) + 0.5 * (n + 1) -
                   0.5 * n * std::log(2.0 * n + 2.0) + log_ij;
    return cb;
}

// Closed upper estimates for I_n and J_n used as cross-checks of the quadrature.

/// theta0 (1+mu)/(2 sqrt(mu)) (2mu/(1+mu))^{n/2}
inline double in_closed_bound_log(int n, double mu) {
    return std::log(sector_theta0(mu) * (1.0 + mu) / (2.0 * std::sqrt(mu))) +
           0.5 * n * std::log(2.0 * mu / (1.0 + mu));
}
/// mu^{n/4} \int_0^{pi/4} sin(2t)^{(n-2)/2} dt = (sqrt(pi)/4) Gamma(n/4)/Gamma((n+2)/4) mu^{n/4}
inline double jn_gamma_bound_log(int n, double mu) {
    return std::log(std::sqrt(pi) / 4.0) + std::lgamma(0.25 * n) - std::lgamma(0.25 * (n + 2)) +
           0.25 * n * std::log(mu);
}
/// sqrt(6 pi)/4 n^{-1/2} mu^{n/4}; dominates the Gamma form only for n >= 3.
inline double jn_closed_bound_log(int n, double mu) {
    return std::log(std::sqrt(6.0 * pi) / 4.0) - 0.5 * std::log(static_cast<double>(n)) +
           0.25 * n * std::log(mu);
}

/// Contour bound on |c_n| for f in E(a) with constant C.
inline double thm22_coeff_bound_log(int n, double a, double C) {
    if (!(a > 0.0 && a < 1.0)) throw DomainError("thm22_coeff_bound: need 0 < a < 1");
    return std::log(C) + thm22_contour(n, (1.0 - a) / (1.0 + a)).log_bound;
}
inline double thm22_coeff_bound(int n, double a, double C) {
    return std::exp(thm22_coeff_bound_log(n, a, C));
}

}  // namespace hardy
