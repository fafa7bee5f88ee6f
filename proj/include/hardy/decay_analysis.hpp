#pragma once

// Decay bounds for Hermite coefficients of E(a) members, envelope scans of
// sampled functions, empirical rate fits, and a numerical classifier for the
// a >= 1 end of the Hardy trichotomy.

#include <Eigen/Dense>

#include <optional>
#include <utility>

#include "hardy/core.hpp"
#include "hardy/gaussian_family.hpp"
#include "hardy/hermite_basis.hpp"

namespace hardy {

/// a = tanh(2 alpha), mu = (1 - a)/(1 + a) = e^{-4 alpha}.
struct RateParams {
    double a = 0.5;
    double alpha = 0.0;
    double mu = 0.0;

    static RateParams from_a(double a) {
        if (!(a > 0.0 && a < 1.0)) throw DomainError("RateParams: need 0 < a < 1");
        return {a, 0.5 * std::atanh(a), (1.0 - a) / (1.0 + a)};
    }
    static RateParams from_alpha(double alpha) {
        if (!(alpha > 0.0)) throw DomainError("RateParams: need alpha > 0");
        return {std::tanh(2.0 * alpha), alpha, std::exp(-4.0 * alpha)};
    }
};

/// log of C sqrt(2 pi k! / (1 + a)) (e / k)^{k/2} mu^{k/4}, k >= 1.
inline double thm21_bound_log(int k, double a, double C) {
    if (k < 1) throw DomainError("thm21_bound: the bound is stated for k >= 1");
    if (!(a > 0.0 && a < 1.0)) throw DomainError("thm21_bound: need 0 < a < 1");
    if (!(C > 0.0)) throw DomainError("thm21_bound: need C > 0");
    const double mu = (1.0 - a) / (1.0 + a);
    return std::log(C) + 0.5 * (std::log(2.0 * pi / (1.0 + a)) + detail::log_factorial(k)) +
           0.5 * k * (1.0 - std::log(static_cast<double>(k))) + 0.25 * k * std::log(mu);
}
inline double thm21_bound(int k, double a, double C) { return std::exp(thm21_bound_log(k, a, C)); }

enum class RateVerdict { applies, endpoint, fails };

inline const char* to_string(RateVerdict v) {
    switch (v) {
        case RateVerdict::applies: return "applies";
        case RateVerdict::endpoint: return "endpoint";
        case RateVerdict::fails: return "fails";
    }
    return "?";
}

/// Whether E(a) membership gives <f, phi_k> = O(e^{-alpha k}) through the
/// non-endpoint estimate (tanh 2 alpha < a), or only at the endpoint.
inline RateVerdict ineq2_rate(double a, double alpha) {
    const double t = std::tanh(2.0 * alpha);
    if (std::abs(t - a) <= 1e-12) return RateVerdict::endpoint;
    return t < a ? RateVerdict::applies : RateVerdict::fails;
}

/// sup_{k >= 1} |c_k| k^{1/4} e^{alpha k}.
inline double thm22_rate_check(const std::vector<LogComplex>& coeffs, double alpha) {
    double best = 0.0;
    for (std::size_t k = 1; k < coeffs.size(); ++k) {
        if (coeffs[k].is_zero) continue;
        best = std::max(best, std::exp(coeffs[k].log_mag + 0.25 * std::log(double(k)) + alpha * k));
    }
    return best;
}
inline double thm22_rate_check(const HermiteExpansion& e, double alpha) {
    std::vector<LogComplex> lc;
    for (const auto& c : e.coeffs) lc.push_back(LogComplex::from(c));
    return thm22_rate_check(lc, alpha);
}

struct EnvelopeOptions {
    double noise_floor = 0.0;   // samples below noise_floor * max|f| count as zero
    double growth_tol = 1e-6;   // minimum relative growth across a tail to call it divergent
    double tail_fraction = 0.1;
};

/// sup_j |f(x_j)| e^{a x_j^2 / 2}, and whether the weighted values keep
/// increasing over the outer tail of the (non-negligible) support.
inline EnvelopeReport envelope_scan(const SampledFunction& f, double a,
                                    const EnvelopeOptions& opt = {}) {
    f.validate();
    const int n = f.grid.num_points;
    double peak = 0.0;
    for (const auto& v : f.values) peak = std::max(peak, std::abs(v));
    const double floor = opt.noise_floor * peak;

    std::vector<double> weighted(static_cast<std::size_t>(n), 0.0);
    int lo = n, hi = -1;
    for (int j = 0; j < n; ++j) {
        const double m = std::abs(f.values[static_cast<std::size_t>(j)]);
        if (m == 0.0 || m <= floor) continue;
        const double x = f.grid.x(j);
        weighted[static_cast<std::size_t>(j)] = std::exp(std::log(m) + 0.5 * a * x * x);
        lo = std::min(lo, j);
        hi = std::max(hi, j);
    }

    EnvelopeReport r;
    r.a = a;
    for (int j = 0; j < n; ++j) {
        if (weighted[static_cast<std::size_t>(j)] > r.constant) {
            r.constant = weighted[static_cast<std::size_t>(j)];
            r.argmax_x = f.grid.x(j);
        }
    }
    if (hi < lo) return r;

    const int tail = std::max(2, static_cast<int>(opt.tail_fraction * (hi - lo + 1)));
    auto increasing = [&](int start, int step) {
        // start = innermost tail index, walking outward by step
        double first = weighted[static_cast<std::size_t>(start)];
        double prev = first;
        for (int i = 1; i < tail; ++i) {
            const double cur = weighted[static_cast<std::size_t>(start + i * step)];
            if (!(cur >= prev)) return false;
            prev = cur;
        }
        return first > 0.0 && prev > (1.0 + opt.growth_tol) * first;
    };
    if (hi - lo + 1 >= 2 * tail)
        r.divergent = increasing(hi - tail + 1, +1) || increasing(lo + tail - 1, -1);
    return r;
}

/// log|c_k| ~ log_prefactor - alpha_hat k - power_hat log k
struct DecayFit {
    double alpha_hat = 0.0;
    double power_hat = 0.0;
    double log_prefactor = 0.0;
    double residual = 0.0;  // RMS of the log residuals
    std::pair<int, int> k_range{0, 0};
    int parity = -1;        // 0 even, 1 odd, -1 all indices
    int points = 0;
};

inline DecayFit decay_fit(const std::vector<LogComplex>& coeffs, std::pair<int, int> k_range) {
    constexpr double log_floor = -575.64627;  // log(1e-250)
    const int k0 = std::max(1, k_range.first);
    const int k1 = std::min(k_range.second, static_cast<int>(coeffs.size()) - 1);
    std::vector<int> usable[2];
    for (int k = k0; k <= k1; ++k) {
        const auto& c = coeffs[static_cast<std::size_t>(k)];
        if (!c.is_zero && c.log_mag > log_floor) usable[k % 2].push_back(k);
    }
    DecayFit fit;
    fit.k_range = {k0, k1};
    std::vector<int> ks;
    if (usable[0].empty() || usable[1].empty()) {
        fit.parity = usable[0].empty() ? 1 : 0;
        ks = usable[fit.parity];
    } else {
        for (int k = k0; k <= k1; ++k)
            if (!coeffs[static_cast<std::size_t>(k)].is_zero &&
                coeffs[static_cast<std::size_t>(k)].log_mag > log_floor)
                ks.push_back(k);
    }
    if (ks.size() < 6) throw FitError("decay_fit: fewer than 6 usable coefficients");

    Eigen::MatrixXd X(static_cast<Eigen::Index>(ks.size()), 3);
    Eigen::VectorXd y(static_cast<Eigen::Index>(ks.size()));
    for (std::size_t i = 0; i < ks.size(); ++i) {
        const auto r = static_cast<Eigen::Index>(i);
        const double k = ks[i];
        X(r, 0) = 1.0;
        X(r, 1) = -k;
        X(r, 2) = -std::log(k);
        y(r) = coeffs[static_cast<std::size_t>(ks[i])].log_mag;
    }
    const Eigen::Vector3d beta = X.colPivHouseholderQr().solve(y);
    fit.log_prefactor = beta(0);
    fit.alpha_hat = beta(1);
    fit.power_hat = beta(2);
    fit.residual = std::sqrt((X * beta - y).squaredNorm() / static_cast<double>(ks.size()));
    fit.points = static_cast<int>(ks.size());
    return fit;
}

inline DecayFit decay_fit(const HermiteExpansion& e, std::pair<int, int> k_range) {
    std::vector<LogComplex> lc;
    for (const auto& c : e.coeffs) lc.push_back(LogComplex::from(c));
    return decay_fit(lc, k_range);
}

struct HardyReport {
    double a = 1.0;
    bool member = false;
    double constant = 0.0;
    EnvelopeReport time_side;
    EnvelopeReport frequency_side;
    cplx coeff0{};                   // <f, phi_0>; no decay bound constrains it
    std::optional<double> residual;  // ||f - <f,phi_0> phi_0||, reported for a >= 1
};

/// Envelope scans of f and of its numerically computed Fourier transform at
/// parameter a. The transform carries quadrature noise near 1e-16, so its
/// scan ignores samples below 1e-10 of the peak.
inline HardyReport hardy_classify(const SampledFunction& f, double a) {
    HardyReport r;
    r.a = a;
    r.time_side = envelope_scan(f, a);
    EnvelopeOptions noisy;
    noisy.noise_floor = 1e-10;
    r.frequency_side = envelope_scan(fourier_sampled(f), a, noisy);
    r.member = !r.time_side.divergent && !r.frequency_side.divergent;
    r.constant = std::max(r.time_side.constant, r.frequency_side.constant);
    r.coeff0 = inner_product(f, 0);
    if (a >= 1.0) {
        SampledFunction rest = f;
        for (int j = 0; j < f.grid.num_points; ++j)
            rest.values[static_cast<std::size_t>(j)] -= r.coeff0 * eval_phi(0, f.grid.x(j));
        r.residual = l2_norm(rest);
    }
    return r;
}

}  // namespace hardy
