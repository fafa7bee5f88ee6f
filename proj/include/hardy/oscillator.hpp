#pragma once

// Evolution under (1/i) d/dt psi = H psi, H = -d^2/dx^2 + x^2, so that
// psi_t = e^{itH} psi_0 and phi_n picks up the phase e^{+i(2n+1)t}.

#include <optional>
#include <variant>

#include "hardy/core.hpp"
#include "hardy/decay_analysis.hpp"
#include "hardy/gaussian_family.hpp"
#include "hardy/hermite_basis.hpp"

namespace hardy {

struct EvolutionState {
    double t = 0.0;
    std::variant<HermiteExpansion, GeneralizedGaussian> rep;
};

inline HermiteExpansion evolve_expansion(const HermiteExpansion& e, double t) {
    HermiteExpansion out = e;
    for (std::size_t n = 0; n < out.coeffs.size(); ++n)
        out.coeffs[n] *= std::polar(1.0, (2.0 * static_cast<double>(n) + 1.0) * t);
    return out;
}

/// Closed-form flow of a generalized Gaussian. With z = (1-b)/(1+b) the
/// width follows z(t) = z e^{4it}, and
///   A(t) = A e^{it} sqrt(1 + z) / sqrt(1 + z(t)).
/// Both square roots are principal; 1 + z(t) stays in the right half-plane
/// because |z| < 1, so A(t) is continuous in t.
inline GeneralizedGaussian evolve_gaussian(const GeneralizedGaussian& g, double t) {
    g.validate();
    const cplx z = g.mobius();
    const cplx zt = z * std::polar(1.0, 4.0 * t);
    GeneralizedGaussian out;
    out.width = (1.0 - zt) / (1.0 + zt);
    out.amplitude = g.amplitude * std::polar(1.0, t) * std::sqrt(1.0 + z) / std::sqrt(1.0 + zt);
    if (!(out.width.real() > 0.0)) throw DomainError("evolve_gaussian: lost Re b > 0");
    return out;
}

inline EvolutionState evolve(const EvolutionState& s, double dt) {
    EvolutionState out{s.t + dt, s.rep};
    if (auto* e = std::get_if<HermiteExpansion>(&s.rep))
        out.rep = evolve_expansion(*e, dt);
    else
        out.rep = evolve_gaussian(std::get<GeneralizedGaussian>(s.rep), dt);
    return out;
}

/// Initial datum psi_0 of the explicit solution whose modulus is
/// (1+r^2)^{-1/4} g_{tanh 2beta} at t = 0 and a multiple of g_{tanh beta} at
/// t = -pi/8, with r = e^{-2 beta}. Its Mobius parameter is z = i r.
inline GeneralizedGaussian example33_state(double beta) {
    if (!(beta > 0.0)) throw DomainError("example33_state: need beta > 0");
    const double r = std::exp(-2.0 * beta);
    const cplx z = I * r;
    return {std::polar(1.0, pi / 8) / std::sqrt(1.0 + z), (1.0 - z) / (1.0 + z)};
}

/// Coefficient-wise deviation between F(psi_t) and e^{i pi/4} psi_{t - pi/4}.
inline double fourier_time_shift_check(const HermiteExpansion& e, double t) {
    const auto lhs = fourier_expansion(evolve_expansion(e, t));
    const auto rhs = evolve_expansion(e, t - pi / 4);
    const cplx phase = std::polar(1.0, pi / 4);
    double worst = 0.0;
    for (std::size_t n = 0; n < e.size(); ++n)
        worst = std::max(worst, std::abs(lhs.coeffs[n] - phase * rhs.coeffs[n]));
    return worst;
}

struct ConfinementParams {
    double beta = 0.5;
    double gamma = 0.45;
    double gamma_prime = 0.475;
    double r = 0.45 / 0.475;
    double C_const = 1.0;  // B in |<psi_0, phi_k>| <= B e^{-gamma' k}

    static ConfinementParams make(double beta, double gamma, double gamma_prime, double coeff_bound) {
        if (!(0.0 < gamma && gamma < gamma_prime && gamma_prime < beta))
            throw DomainError("ConfinementParams: need 0 < gamma < gamma' < beta");
        if (!(coeff_bound > 0.0)) throw DomainError("ConfinementParams: coefficient bound must be positive");
        return {beta, gamma, gamma_prime, gamma / gamma_prime, coeff_bound};
    }
};

/// Constant C with |psi_t(x)| <= C e^{-tanh(gamma) x^2 / 2} for all t.
///
/// Cauchy-Schwarz with exponents (1-r, r) splits sum |c_n| |phi_n(x)| into
/// (sum |c_n|^{2(1-r)})^{1/2} <= B^{1-r} (1 - e^{-2(gamma'-gamma)})^{-1/2} and
/// (sum |c_n|^{2r} phi_n^2)^{1/2} <= B^r 2^{1/4} (1 - e^{-4 gamma})^{-1/4} e^{-tanh(gamma) x^2/2}.
/// `loose` drops the square root on the first factor, which is looser.
struct ConfinementConstant {
    double mehler_factor = 0.0;
    double cs_factor = 0.0;
    double cs_factor_loose = 0.0;
    double sharp = 0.0;
    double loose = 0.0;
};

inline ConfinementConstant confinement_constant(const ConfinementParams& p) {
    if (!(0.0 < p.gamma && p.gamma < p.gamma_prime && p.gamma_prime < p.beta))
        throw DomainError("confinement_constant: need 0 < gamma < gamma' < beta");
    ConfinementConstant c;
    c.mehler_factor = std::pow(2.0, 0.25) * std::pow(1.0 - std::exp(-4.0 * p.gamma), -0.25);
    c.cs_factor_loose = 1.0 / (1.0 - std::exp(-2.0 * (p.gamma_prime - p.gamma)));
    c.cs_factor = std::sqrt(c.cs_factor_loose);
    c.sharp = p.C_const * c.cs_factor * c.mehler_factor;
    c.loose = p.C_const * c.cs_factor_loose * c.mehler_factor;
    return c;
}

/// Smallest B with |c_k| <= B e^{-rate k} over the given coefficients.
inline double coefficient_constant(const std::vector<LogComplex>& coeffs, double rate) {
    double best = 0.0;
    for (std::size_t k = 0; k < coeffs.size(); ++k)
        if (!coeffs[k].is_zero) best = std::max(best, std::exp(coeffs[k].log_mag + rate * k));
    return best;
}

/// n uniform times on [0, pi/2), one period of any Gaussian envelope.
inline std::vector<double> default_t_grid(int n = 64) {
    std::vector<double> ts(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) ts[static_cast<std::size_t>(i)] = (pi / 2) * i / n;
    return ts;
}

struct ConfinementSample {
    double t = 0.0;
    double time_constant = 0.0;
    double frequency_constant = 0.0;
    bool divergent = false;
};

struct ConfinementReport {
    double a = 0.0;  // tanh gamma
    double sup_constant = 0.0;
    double worst_t = 0.0;
    std::vector<double> argmax_ts;  // every t within 1e-12 (relative) of the sup
    std::vector<ConfinementSample> samples;
    std::optional<double> divergent_at;
    bool initial_member = false;  // psi_0 passes the E(tanh 2beta) scan
};

namespace detail {

inline std::pair<SampledFunction, SampledFunction> state_and_transform(const EvolutionState& s,
                                                                      const GridSpec& grid) {
    if (auto* e = std::get_if<HermiteExpansion>(&s.rep))
        return {synthesize(*e, grid), synthesize(fourier_expansion(*e), grid)};
    const auto& g = std::get<GeneralizedGaussian>(s.rep);
    return {sample(grid, g), sample(grid, fourier_gaussian(g))};
}

}  // namespace detail

/// Envelope constants of psi_t and \hat psi_t at a = tanh(gamma) over t_grid.
inline ConfinementReport confinement_check(const EvolutionState& psi0, double beta, double gamma,
                                           std::span<const double> t_grid,
                                           const GridSpec& grid = {}) {
    if (!(beta > 0.0 && gamma > 0.0)) throw DomainError("confinement_check: need beta, gamma > 0");
    ConfinementReport rep;
    rep.a = std::tanh(gamma);
    {
        const auto [f, fh] = detail::state_and_transform(psi0, grid);
        const double a0 = std::tanh(2.0 * beta);
        rep.initial_member = !envelope_scan(f, a0).divergent && !envelope_scan(fh, a0).divergent;
    }
    for (double t : t_grid) {
        const auto st = evolve(psi0, t);
        const auto [f, fh] = detail::state_and_transform(st, grid);
        const auto et = envelope_scan(f, rep.a);
        const auto ef = envelope_scan(fh, rep.a);
        ConfinementSample s{t, et.constant, ef.constant, et.divergent || ef.divergent};
        rep.samples.push_back(s);
        if (s.divergent && !rep.divergent_at) rep.divergent_at = t;
        const double c = std::max(s.time_constant, s.frequency_constant);
        if (rep.samples.size() == 1 || c > rep.sup_constant) {
            rep.sup_constant = c;
            rep.worst_t = t;
        }
    }
    for (const auto& s : rep.samples)
        if (std::max(s.time_constant, s.frequency_constant) >= rep.sup_constant * (1.0 - 1e-12))
            rep.argmax_ts.push_back(s.t);
    return rep;
}

struct ConjectureProbe {
    double sup_constant = 0.0;
    double sup_refined = 0.0;  // same scan on a grid with twice the points
    double change = 0.0;
    bool stabilized = false;   // |change| < 1e-6: evidence only
    ConfinementReport report;
};

/// Confinement scan at gamma = beta, repeated on a doubled t-grid.
inline ConjectureProbe conjecture32_probe(const EvolutionState& psi0, double beta,
                                          std::span<const double> t_grid, const GridSpec& grid = {}) {
    ConjectureProbe p;
    p.report = confinement_check(psi0, beta, beta, t_grid, grid);
    std::vector<double> refined;
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        refined.push_back(t_grid[i]);
        const double next = i + 1 < t_grid.size() ? t_grid[i + 1]
                                                  : t_grid[i] + (t_grid.size() > 1 ? t_grid[1] - t_grid[0] : 0.0);
        refined.push_back(0.5 * (t_grid[i] + next));
    }
    const auto fine = confinement_check(psi0, beta, beta, refined, grid);
    p.sup_constant = p.report.sup_constant;
    p.sup_refined = fine.sup_constant;
    p.change = std::abs(p.sup_refined - p.sup_constant);
    p.stabilized = !p.report.divergent_at && !fine.divergent_at && p.change < 1e-6;
    return p;
}

/// f_n = (1/2pi) \int_0^{2pi} psi_t e^{-int} dt by the trapezoid rule on
/// num_samples points. Equals <f, phi_k> phi_k for n = 2k+1 and zero otherwise.
inline HermiteExpansion time_average_projection(const HermiteExpansion& e, int n, int num_samples) {
    const long need = 2L * (2L * static_cast<long>(e.size()) + 1);
    if (num_samples <= need)
        throw DomainError("time_average_projection: need num_samples > 2(2 len + 1)");
    if (num_samples <= std::abs(static_cast<long>(n)) + 2L * static_cast<long>(e.size()) + 1)
        throw DomainError("time_average_projection: |n| too large for num_samples (aliasing)");
    HermiteExpansion out;
    out.coeffs.assign(e.size(), cplx{});
    for (int j = 0; j < num_samples; ++j) {
        const double t = 2.0 * pi * j / num_samples;
        const cplx w = std::polar(1.0, -static_cast<double>(n) * t);
        const auto et = evolve_expansion(e, t);
        for (std::size_t k = 0; k < e.size(); ++k) out.coeffs[k] += w * et.coeffs[k];
    }
    for (auto& c : out.coeffs) c /= static_cast<double>(num_samples);
    return out;
}

}  // namespace hardy
