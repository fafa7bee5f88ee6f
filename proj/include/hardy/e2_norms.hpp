#pragma once

// Weighted L^2 norms
//   2 ||f||_a^2 = \int |f|^2 e^{a x^2} dm + \int |\hat f|^2 e^{a xi^2} dm
// the exact values ||phi_n||_a^2, the central binomial ratio
// Q_n = 2^{-2n} (2n)! / (n!)^2 with an explicit lower-bound certificate, and
// the resulting coefficient bounds for time-uniformly bounded evolutions.

#include "hardy/core.hpp"
#include "hardy/gaussian_family.hpp"
#include "hardy/hermite_basis.hpp"

namespace hardy {

namespace detail {

// \int |f|^2 e^{a x^2} dm on the grid. Throws if the weighted integrand has
// not decayed at the edges.
inline double weighted_energy(const SampledFunction& f, double a, double edge_tolerance) {
    const int n = f.grid.num_points;
    double sum = 0.0, peak = 0.0, edge = 0.0;
    for (int j = 0; j < n; ++j) {
        const double m = std::abs(f.values[static_cast<std::size_t>(j)]);
        if (m == 0.0) continue;
        const double x = f.grid.x(j);
        const double v = std::exp(2.0 * (std::log(m) + 0.5 * a * x * x));
        sum += v;
        peak = std::max(peak, v);
        if (j < 2 || j >= n - 2) edge = std::max(edge, v);
    }
    if (peak > 0.0 && edge > edge_tolerance * peak)
        throw DomainError("e2_norm: weighted integrand does not decay at the grid edges");
    return sum * f.grid.spacing() / sqrt_two_pi;
}

}  // namespace detail

inline constexpr double e2_edge_tolerance = 1e-14;

/// ||f||_a from samples of f and of its Fourier transform on the same grid.
inline double e2_norm(const SampledFunction& f, const SampledFunction& fhat, double a) {
    f.validate();
    fhat.validate();
    if (!(a >= 0.0)) throw DomainError("e2_norm: need a >= 0");
    const double e = detail::weighted_energy(f, a, e2_edge_tolerance) +
                     detail::weighted_energy(fhat, a, e2_edge_tolerance);
    return std::sqrt(0.5 * e);
}

/// ||f||_a with \hat f from fourier_sampled. The transform carries absolute
/// noise of order 1e-16 max|f|; this throws when that noise, weighted by
/// e^{a L^2}, is not negligible against the norm.
inline double e2_norm(const SampledFunction& f, double a) {
    const SampledFunction fhat = fourier_sampled(f);
    const double value = e2_norm(f, fhat, a);
    double peak = 0.0;
    for (const auto& v : fhat.values) peak = std::max(peak, std::abs(v));
    const double L = f.grid.half_width;
    const double noise = 1e-15 * peak;
    const double noise_energy = noise * noise * std::exp(a * L * L) * 2.0 * L / sqrt_two_pi;
    if (noise_energy > 1e-12 * value * value)
        throw DomainError("e2_norm: Fourier-side quadrature noise dominates the weight; "
                          "pass exact transform samples instead");
    return value;
}

/// ||e||_a for a finite Hermite expansion, with the exact transform (-i)^k phi_k.
inline double e2_norm(const HermiteExpansion& e, double a, const GridSpec& grid) {
    return e2_norm(synthesize(e, grid), synthesize(fourier_expansion(e), grid), a);
}

/// ||g||_a by quadrature, using the closed-form transform of g.
inline double e2_norm(const GeneralizedGaussian& g, double a, const GridSpec& grid) {
    return e2_norm(sample(grid, g), sample(grid, fourier_gaussian(g)), a);
}

/// Exact ||g||_a: each side contributes |A|^2 / sqrt(2 (Re b - a)).
inline double e2_norm_closed(const GeneralizedGaussian& g, double a) {
    const auto gh = fourier_gaussian(g);
    const double d1 = g.width.real() - a, d2 = gh.width.real() - a;
    if (!(d1 > 0.0 && d2 > 0.0)) throw DomainError("e2_norm_closed: g is not in E^2(a)");
    return std::sqrt(0.5 * (std::norm(g.amplitude) / std::sqrt(2.0 * d1) +
                            std::norm(gh.amplitude) / std::sqrt(2.0 * d2)));
}

/// log Q_n, Q_n = 2^{-2n} (2n)! / (n!)^2.
inline double log_Q(int n) {
    if (n < 0) throw DomainError("Q: need n >= 0");
    return detail::log_factorial(2.0 * n) - 2.0 * detail::log_factorial(n) - 2.0 * n * std::log(2.0);
}
inline double Q(int n) { return std::exp(log_Q(n)); }

/// log ||phi_n||_a^2 =
///   log[(1-a)^{-1/2} 2^{-2n} sum_k (2k)!(2(n-k))! / (k!(n-k)!)^2 mu^{-k}].
inline double phi_norm_closed_log(int n, double a) {
    if (n < 0) throw DomainError("phi_norm_closed: need n >= 0");
    if (!(a >= 0.0 && a < 1.0)) throw DomainError("phi_norm_closed: need 0 <= a < 1");
    const double mu = (1.0 - a) / (1.0 + a);
    std::vector<double> terms;
    terms.reserve(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k)
        terms.push_back(log_Q(k) + log_Q(n - k) - k * std::log(mu));
    return -0.5 * std::log1p(-a) + detail::log_sum_exp(std::move(terms));
}
inline double phi_norm_closed(int n, double a) { return std::exp(phi_norm_closed_log(n, a)); }

/// The single k = n term: (1-a)^{-1/2} Q_n mu^{-n} <= ||phi_n||_a^2.
inline double phi_norm_lower_log(int n, double a) {
    if (!(a >= 0.0 && a < 1.0)) throw DomainError("phi_norm_lower: need 0 <= a < 1");
    const double mu = (1.0 - a) / (1.0 + a);
    return -0.5 * std::log1p(-a) + log_Q(n) - n * std::log(mu);
}
inline double phi_norm_lower(int n, double a) { return std::exp(phi_norm_lower_log(n, a)); }

struct GenFuncCheck {
    double lhs_partial = 0.0;
    double rhs = 0.0;
};

/// sum_{k <= nmax} ||phi_k||_a^2 w^k against (1-a)^{-1/2} (1-w)^{-1/2} (1-w/mu)^{-1/2}.
inline GenFuncCheck gen_func_check(double a, double w, int nmax) {
    if (!(a > 0.0 && a < 1.0)) throw DomainError("gen_func_check: need 0 < a < 1");
    const double mu = (1.0 - a) / (1.0 + a);
    if (!(std::abs(w) < mu)) throw DomainError("gen_func_check: need |w| < mu");
    GenFuncCheck g;
    g.rhs = std::pow(1.0 - a, -0.5) * std::pow(1.0 - w, -0.5) * std::pow(1.0 - w / mu, -0.5);
    double sum = 0.0, comp = 0.0;
    for (int k = 0; k <= nmax; ++k) {
        const double term = w == 0.0 ? (k == 0 ? phi_norm_closed(0, a) : 0.0)
                                     : std::copysign(std::exp(phi_norm_closed_log(k, a) + k * std::log(std::abs(w))),
                                                     (w < 0.0 && k % 2 == 1) ? -1.0 : 1.0);
        const double y = term - comp;
        const double s = sum + y;
        comp = (s - sum) - y;
        sum = s;
    }
    g.lhs_partial = sum;
    return g;
}

/// Explicit constants for Q_n >= B_beta n^{-beta/2}, n >= 1.
struct Lemma41Certificate {
    double beta = 1.1;
    double delta = 0.0;  // log(1-x) >= -beta x on [0, delta]
    int m = 1;           // 1/(2k) <= delta for k > m
    double D_beta = 0.0; // sum_{k<=m} log(1 - 1/(2k))
    double B_proof = 0.0;  // e^{D_beta} m^{beta/2}; covers n >= m
    double B_beta = 0.0;   // min(B_proof, Q_n n^{beta/2} for n < m); covers n >= 1
    int validated_up_to = 0;
    bool valid = false;
};

/// Builds the certificate and checks Q_n n^{beta/2} >= B_beta for n = 1..check_n.
inline Lemma41Certificate lemma41_certificate(double beta, int check_n = 10000) {
    if (!(beta > 1.0)) throw DomainError("lemma41_certificate: need beta > 1");
    Lemma41Certificate c;
    c.beta = beta;

    // Largest candidate delta = i/1000 for which the inequality holds on 10^4 points of [0, delta].
    constexpr int candidates = 1000, samples = 10000;
    auto holds = [&](double d) {
        for (int i = 0; i <= samples; ++i) {
            const double x = d * i / samples;
            if (std::log1p(-x) < -beta * x) return false;
        }
        return true;
    };
    for (int i = candidates - 1; i >= 1; --i) {
        const double d = static_cast<double>(i) / candidates;
        if (holds(d)) {
            c.delta = d;
            break;
        }
    }
    if (c.delta == 0.0) throw DomainError("lemma41_certificate: no admissible delta found");

    c.m = std::max(1, static_cast<int>(std::ceil(1.0 / (2.0 * c.delta))) - 1);
    for (int k = 1; k <= c.m; ++k) c.D_beta += std::log1p(-1.0 / (2.0 * k));
    c.B_proof = std::exp(c.D_beta) * std::pow(static_cast<double>(c.m), beta / 2);

    // log Q_n accumulated as sum log(1 - 1/(2k)), independent of lgamma.
    double logq = 0.0;
    double small_n = std::numeric_limits<double>::infinity();
    std::vector<double> lq(static_cast<std::size_t>(check_n) + 1, 0.0);
    for (int n = 1; n <= check_n; ++n) {
        logq += std::log1p(-1.0 / (2.0 * n));
        lq[static_cast<std::size_t>(n)] = logq;
        if (n < c.m) small_n = std::min(small_n, std::exp(logq) * std::pow(double(n), beta / 2));
    }
    c.B_beta = std::min(c.B_proof, small_n);
    c.valid = true;
    for (int n = 1; n <= check_n; ++n) {
        if (lq[static_cast<std::size_t>(n)] + 0.5 * beta * std::log(double(n)) < std::log(c.B_beta)) {
            c.valid = false;
            break;
        }
    }
    c.validated_up_to = check_n;
    return c;
}

enum class Thm42Form { proof, statement };

/// (C / A_alpha) (1-a)^{1/4} k^{alpha/2} mu^{k/2} with A_alpha = sqrt(B_{2 alpha}).
/// The statement form omits the (1-a)^{1/4} factor.
inline double thm42_bound_log(int k, double a, double C, double alpha, const Lemma41Certificate& cert,
                              Thm42Form form = Thm42Form::proof) {
    if (!(alpha > 0.5)) throw DomainError("thm42_bound: need alpha > 1/2");
    if (k < 1) throw DomainError("thm42_bound: need k >= 1");
    if (!(a > 0.0 && a < 1.0)) throw DomainError("thm42_bound: need 0 < a < 1");
    if (std::abs(cert.beta - 2.0 * alpha) > 1e-12)
        throw DomainError("thm42_bound: certificate must be built with beta = 2 alpha");
    const double mu = (1.0 - a) / (1.0 + a);
    double v = std::log(C) - 0.5 * std::log(cert.B_beta) + 0.5 * alpha * std::log(double(k)) +
               0.5 * k * std::log(mu);
    if (form == Thm42Form::proof) v += 0.25 * std::log1p(-a);
    return v;
}
inline double thm42_bound(int k, double a, double C, double alpha, const Lemma41Certificate& cert,
                          Thm42Form form = Thm42Form::proof) {
    return std::exp(thm42_bound_log(k, a, C, alpha, cert, form));
}

/// For psi_0 in E(1) with constant 1: ||psi_0||_b <= 2^{-1/4} (1-b)^{-1/4}.
inline double e1_norm_bound_check(double b) {
    if (!(b >= 0.0 && b < 1.0)) throw DomainError("e1_norm_bound_check: need 0 <= b < 1");
    return std::pow(2.0, -0.25) * std::pow(1.0 - b, -0.25);
}

struct WeakConfinementParams {
    double N = 3.0;
    double K = 1.0;
    double beta = 1.0;

    double a() const { return std::tanh(beta); }
    double b() const { return std::tanh(N * beta); }
    void validate() const {
        if (!(N > 1.0 && K > 0.0 && beta > 0.0))
            throw DomainError("WeakConfinementParams: need N > 1, K > 0, beta > 0");
    }
};

struct ChainBound {
    double log_bound = 0.0;   // log[(K k / A) e^{beta((N-1)/2 - k)}]
    double log_precise = 0.0; // log[(K/A) (1-a)^{1/4} (1-b)^{-1/4} k mu_a^{k/2}]
    bool forced_zero = false; // bound -> 0 as beta -> infinity
};

/// Coefficient bound obtained by combining a hypothetical weak confinement
/// estimate ||psi_t||_{tanh beta} <= K ||psi_0||_{tanh(N beta)} with the
/// time-uniform coefficient bound at alpha = 2 (so k^{alpha/2} = k).
inline ChainBound weak_confinement_chain(const WeakConfinementParams& p, int k,
                                         const Lemma41Certificate& cert) {
    p.validate();
    if (k < 1) throw DomainError("weak_confinement_chain: need k >= 1");
    if (std::abs(cert.beta - 4.0) > 1e-12)
        throw DomainError("weak_confinement_chain: certificate must be built with beta = 4 (alpha = 2)");
    const double logA = 0.5 * std::log(cert.B_beta);
    ChainBound c;
    c.log_bound = std::log(p.K) + std::log(double(k)) - logA + p.beta * (0.5 * (p.N - 1.0) - k);
    // 1 - tanh(x) = 2 / (1 + e^{2x}), kept in log form for large beta
    auto log_one_minus_tanh = [](double x) { return std::log(2.0) - (2.0 * x + std::log1p(std::exp(-2.0 * x))); };
    c.log_precise = std::log(p.K) - logA + 0.25 * log_one_minus_tanh(p.beta) -
                    0.25 * log_one_minus_tanh(p.N * p.beta) + std::log(double(k)) - p.beta * k;
    c.forced_zero = k > 0.5 * (p.N - 1.0);
    return c;
}

}  // namespace hardy
