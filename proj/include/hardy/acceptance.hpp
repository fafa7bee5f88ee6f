#pragma once

// End-to-end verification suite. Each criterion reports one measured value
// against a fixed threshold, with sub-checks listed in `detail`. Shared by the
// acceptance test binary and `verify-all` on the command line.

#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "hardy/bargmann.hpp"
#include "hardy/decay_analysis.hpp"
#include "hardy/e2_norms.hpp"
#include "hardy/gaussian_family.hpp"
#include "hardy/hermite_basis.hpp"
#include "hardy/oscillator.hpp"
#include "hardy/report.hpp"

namespace hardy::acceptance {

struct VerifyConfig {
    GridSpec grid{};
    int t_grid_size = 64;
};

struct CriterionResult {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double threshold = 0.0;
    std::string detail;
};

namespace detail {

class Detail {
public:
    bool ok = true;
    template <class T>
    Detail& check(bool cond, const std::string& what, T value) {
        ok = ok && cond;
        os_ << (os_.tellp() > 0 ? "; " : "") << what << "=" << report::format_double(double(value))
            << (cond ? "" : " FAIL");
        return *this;
    }
    std::string str() const { return os_.str(); }

private:
    std::ostringstream os_;
};

inline CriterionResult guarded(const std::string& name, double threshold,
                               const std::function<CriterionResult()>& body) {
    try {
        return body();
    } catch (const std::exception& ex) {
        return {name, false, std::numeric_limits<double>::quiet_NaN(), threshold,
                std::string("error: ") + ex.what()};
    }
}

inline SampledFunction phi_samples(int k, const GridSpec& g) {
    return sample(g, [k](double x) { return eval_phi(k, x); });
}

inline double abs_coeff(const std::vector<LogComplex>& c, int k) {
    return c[static_cast<std::size_t>(k)].is_zero ? 0.0 : std::exp(c[static_cast<std::size_t>(k)].log_mag);
}

// Uphi_k(w) is tiny for small |w| and large k, so relative accuracy needs |w| >~ 2.
inline std::vector<cplx> bargmann_probe_points() {
    std::vector<cplx> ws;
    for (int j = 0; j < 10; ++j) ws.push_back(std::polar(2.5 + 0.2 * j, 0.3 + 0.61 * j));
    return ws;
}

inline std::vector<cplx> reflection_probe_points() {
    std::vector<cplx> ws;
    for (int j = 0; j < 8; ++j) ws.push_back(std::polar(0.25 + 0.25 * j, 0.2 + 0.79 * j));
    return ws;
}

}  // namespace detail

inline CriterionResult normalization_pins(const VerifyConfig& cfg) {
    const std::string name = "1_normalization_pins";
    return detail::guarded(name, 1e-8, [&] {
        detail::Detail d;
        const double phi00 = std::abs(eval_phi(0, 0.0) - std::pow(2.0, 0.25));
        d.check(phi00 <= 1e-12, "phi0(0)_err", phi00);
        double worst = 0.0;
        for (int k = 0; k <= 20; ++k) {
            const auto f = detail::phi_samples(k, cfg.grid);
            for (cplx w : detail::bargmann_probe_points()) {
                const cplx want = std::pow(w, k) / std::sqrt(std::pow(2.0, k) * std::tgamma(k + 1.0));
                worst = std::max(worst, std::abs(bargmann_numeric(f, w) - want) / std::abs(want));
            }
        }
        d.check(worst <= 1e-8, "U_phi_k_max_rel_err", worst);
        return CriterionResult{name, d.ok, worst, 1e-8, d.str()};
    });
}

inline CriterionResult reflection_identity(const VerifyConfig& cfg) {
    const std::string name = "2_reflection_identity";
    return detail::guarded(name, 1e-8, [&] {
        const auto ws = detail::reflection_probe_points();
        double worst = 0.0;
        for (int k = 0; k <= 20; ++k) worst = std::max(worst, reflection_check(detail::phi_samples(k, cfg.grid), ws));
        worst = std::max(worst, reflection_check(sample(cfg.grid, GeneralizedGaussian::g(0.5)), ws));
        for (double alpha : {0.2, 0.27465, 0.5})
            worst = std::max(worst, reflection_check(sample(cfg.grid, endpoint_chirp(alpha)), ws));
        detail::Detail d;
        d.check(worst < 1e-8, "max_deviation", worst);
        return CriterionResult{name, d.ok, worst, 1e-8, d.str()};
    });
}

inline CriterionResult thm21_dominance(const VerifyConfig& cfg) {
    const std::string name = "3_thm21_bound_dominance";
    return detail::guarded(name, 1.0, [&] {
        struct Case { std::string label; GeneralizedGaussian g; double a; };
        std::vector<Case> cases;
        for (double a : {0.3, 0.5, 0.8}) cases.push_back({"g_" + report::format_double(a), GeneralizedGaussian::g(a), a});
        for (double alpha : {0.2, 0.27465, 0.5})
            cases.push_back({"chirp_alpha_" + report::format_double(alpha), endpoint_chirp(alpha), std::tanh(2.0 * alpha)});
        detail::Detail d;
        double worst = 0.0;
        int violations = 0;
        for (const auto& c : cases) {
            const auto rep = hardy_classify(sample(cfg.grid, c.g), c.a);
            d.check(rep.member, c.label + "_member", rep.constant);
            const auto coeffs = hermite_coeffs_gaussian_log(c.g, 60);
            for (int k = 1; k <= 60; ++k) {
                const double ratio = detail::abs_coeff(coeffs, k) / thm21_bound(k, c.a, rep.constant);
                worst = std::max(worst, ratio);
                if (ratio > 1.0) ++violations;
            }
        }
        d.check(violations == 0, "violations", violations);
        return CriterionResult{name, d.ok, worst, 1.0, d.str()};
    });
}

inline CriterionResult thm22_sharpness(const VerifyConfig&) {
    const std::string name = "4_thm22_endpoint_sharpness";
    return detail::guarded(name, 3.0, [&] {
        constexpr double alpha = 0.27465;
        const auto coeffs = hermite_coeffs_gaussian_log(endpoint_chirp(alpha), 200);
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (int m = 1; m <= 50; ++m) {
            const double s = detail::abs_coeff(coeffs, 2 * m) * std::pow(2.0 * m, 0.25) * std::exp(2.0 * alpha * m);
            lo = std::min(lo, s);
            hi = std::max(hi, s);
        }
        const auto fit = decay_fit(coeffs, {20, 200});
        detail::Detail d;
        d.check(lo > 0.0 && hi / lo < 3.0, "spread_C_over_c", hi / lo);
        d.check(std::abs(fit.alpha_hat - alpha) <= 1e-3, "alpha_hat", fit.alpha_hat);
        d.check(std::abs(fit.power_hat - 0.25) <= 0.05, "power_hat", fit.power_hat);
        return CriterionResult{name, d.ok, hi / lo, 3.0, d.str()};
    });
}

inline CriterionResult contour_machinery(const VerifyConfig&) {
    const std::string name = "5_contour_machinery";
    return detail::guarded(name, 0.1, [&] {
        detail::Detail d;
        const double mu = 1.0 / 3.0;
        double cont = 0.0;
        std::vector<double> ratios;
        for (int n : {10, 50, 200}) {
            const auto cb = thm22_contour(n, mu);
            const double ri = cb.radius_inner(cb.theta0), rs = cb.radius_sector(cb.theta0);
            cont = std::max(cont, std::abs(ri - rs) / rs);
            ratios.push_back(std::exp(cb.log_I - cb.log_J));
        }
        d.check(cont <= 1e-12, "continuity_rel_err", cont);
        d.check(ratios[0] > ratios[1] && ratios[1] > ratios[2], "I_over_J_n10", ratios[0]);
        d.check(true, "I_over_J_n50", ratios[1]);
        d.check(ratios[2] < 0.1, "I_over_J_n200", ratios[2]);

        constexpr double alpha = 0.27465;
        const double a = std::tanh(2.0 * alpha);
        const auto f = endpoint_chirp(alpha);
        const double C = e_membership(f, a).constant;
        const auto taylor = log_expansion_to_taylor(hermite_coeffs_gaussian_log(f, 100));
        double worst = 0.0;
        for (int n = 2; n <= 100; ++n) {
            const auto& c = taylor.coeffs[static_cast<std::size_t>(n)];
            if (c.is_zero) continue;
            worst = std::max(worst, std::exp(c.log_mag - thm22_coeff_bound_log(n, a, C)));
        }
        d.check(worst <= 1.0, "max_cn_over_bound", worst);
        return CriterionResult{name, d.ok, ratios[2], 0.1, d.str()};
    });
}

inline CriterionResult evolution(const VerifyConfig& cfg) {
    const std::string name = "6_evolution";
    return detail::guarded(name, 1e-8, [&] {
        detail::Detail d;
        const std::vector<GeneralizedGaussian> data = {example33_state(0.5), {cplx(0.8, 0.3), cplx(0.7, 0.4)}};
        const double times[] = {0.1, pi / 8, 1.0, 3.0};
        double agree = 0.0, unitary = 0.0, half_period = 0.0, shift = 0.0;
        for (const auto& g : data) {
            const auto e0 = analyze(sample(cfg.grid, g), 60);
            for (double t : times) {
                const auto spectral = evolve_expansion(e0, t);
                const auto closed = analyze(sample(cfg.grid, evolve_gaussian(g, t)), 60);
                for (std::size_t k = 0; k <= 60; ++k)
                    agree = std::max(agree, std::abs(spectral.coeffs[k] - closed.coeffs[k]));
                unitary = std::max(unitary, std::abs(spectral.norm() - e0.norm()));
                const auto later = evolve_expansion(e0, t + pi);
                for (std::size_t k = 0; k <= 60; ++k)
                    half_period = std::max(half_period, std::abs(later.coeffs[k] + spectral.coeffs[k]));
                shift = std::max(shift, fourier_time_shift_check(e0, t));
            }
        }
        d.check(agree <= 1e-8, "spectral_vs_closed", agree);
        d.check(unitary <= 1e-10, "unitarity", unitary);
        d.check(half_period <= 1e-12, "half_period_sign", half_period);
        d.check(shift < 1e-10, "fourier_time_shift", shift);
        return CriterionResult{name, d.ok, agree, 1e-8, d.str()};
    });
}

inline CriterionResult confinement(const VerifyConfig& cfg) {
    const std::string name = "7_confinement";
    return detail::guarded(name, 1.0, [&] {
        detail::Detail d;
        constexpr double beta = 0.5;
        const double r = std::exp(-2.0 * beta);
        const EvolutionState psi0{0.0, example33_state(beta)};
        const auto ts = default_t_grid(cfg.t_grid_size);

        const auto at_beta = confinement_check(psi0, beta, beta, ts, cfg.grid);
        d.check(!at_beta.divergent_at.has_value() && std::isfinite(at_beta.sup_constant), "sup_at_gamma_beta",
                at_beta.sup_constant);
        d.check(std::abs(at_beta.sup_constant - 1.0 / std::sqrt(1.0 - r)) <= 1e-8, "sup_vs_closed_form",
                std::abs(at_beta.sup_constant - 1.0 / std::sqrt(1.0 - r)));
        // -pi/8 mod pi/2
        const double target = 3.0 * pi / 8;
        double best_dist = std::numeric_limits<double>::infinity();
        double time_const_there = 0.0;
        for (double t : at_beta.argmax_ts) {
            const double dist = std::abs(std::remainder(t - target, pi / 2));
            if (dist < best_dist) {
                best_dist = dist;
                for (const auto& s : at_beta.samples)
                    if (s.t == t) time_const_there = s.time_constant;
            }
        }
        d.check(best_dist <= 1e-3, "argmax_distance_to_minus_pi_over_8", best_dist);
        const double c_closed = 1.0 / std::sqrt(1.0 + r);
        d.check(std::abs(time_const_there - c_closed) <= 1e-8, "time_envelope_const_err",
                std::abs(time_const_there - c_closed));
        {
            // at that time the modulus is exactly a multiple of g_{tanh beta}
            const auto g = evolve_gaussian(example33_state(beta), -pi / 8);
            d.check(std::abs(g.width.real() - std::tanh(beta)) <= 1e-12, "width_at_minus_pi_over_8",
                    g.width.real());
        }

        constexpr double gamma = 0.45, gamma_prime = 0.475;
        const auto coeffs = hermite_coeffs_gaussian_log(example33_state(beta), 400);
        const double B = coefficient_constant(coeffs, gamma_prime);
        const auto cc = confinement_constant(ConfinementParams::make(beta, gamma, gamma_prime, B));
        const auto at_gamma = confinement_check(psi0, beta, gamma, ts, cfg.grid);
        const double ratio = at_gamma.sup_constant / cc.sharp;
        d.check(!at_gamma.divergent_at.has_value(), "sup_at_gamma_0.45", at_gamma.sup_constant);
        d.check(ratio <= 1.0, "sup_over_C_gamma_gammaprime", ratio);
        return CriterionResult{name, d.ok, ratio, 1.0, d.str()};
    });
}

inline CriterionResult section4_identities(const VerifyConfig&) {
    const std::string name = "8_weighted_norm_identities";
    return detail::guarded(name, 1e-6, [&] {
        detail::Detail d;
        const GridSpec wide{28.0, 4096};
        double worst = 0.0;
        for (double a : {0.2, 0.5, 0.8})
            for (int n = 0; n <= 30; ++n) {
                const double quad = e2_norm(HermiteExpansion::unit(static_cast<std::size_t>(n), static_cast<std::size_t>(n) + 1), a, wide);
                worst = std::max(worst, hardy::detail::rel_err(quad * quad, phi_norm_closed(n, a)));
            }
        d.check(worst <= 1e-6, "closed_vs_quadrature_rel", worst);
        double gf = 0.0;
        for (auto [a, w] : {std::pair{0.5, 0.25}, std::pair{0.2, 0.5}}) {
            const auto g = gen_func_check(a, w, 400);
            gf = std::max(gf, std::abs(g.lhs_partial - g.rhs));
        }
        d.check(gf < 1e-8, "generating_function_err", gf);
        double collapse = 0.0;
        for (int n = 0; n <= 30; ++n) collapse = std::max(collapse, std::abs(phi_norm_closed(n, 0.0) - 1.0));
        d.check(collapse <= 1e-12, "a0_collapse_err", collapse);
        return CriterionResult{name, d.ok, worst, 1e-6, d.str()};
    });
}

inline CriterionResult lemma41(const VerifyConfig&) {
    const std::string name = "9_lemma41_certificate";
    return detail::guarded(name, 0.01, [&] {
        detail::Detail d;
        const auto cert = lemma41_certificate(1.1, 10000);
        d.check(cert.valid && cert.validated_up_to == 10000, "B_beta", cert.B_beta);
        const double wallis = Q(10000) * std::sqrt(pi * 10000.0);
        d.check(wallis >= 0.99 && wallis <= 1.01, "wallis", wallis);
        return CriterionResult{name, d.ok, std::abs(wallis - 1.0), 0.01, d.str()};
    });
}

inline CriterionResult thm42(const VerifyConfig& cfg) {
    const std::string name = "10_thm42_bound";
    return detail::guarded(name, 1.0, [&] {
        detail::Detail d;
        constexpr double beta = 0.5, alpha = 1.0;
        const double a = std::tanh(0.45);
        const auto psi0 = example33_state(beta);
        const GridSpec wide{32.0, 4096};
        double C = 0.0;
        for (double t : default_t_grid(cfg.t_grid_size)) C = std::max(C, e2_norm(evolve_gaussian(psi0, t), a, wide));
        d.check(std::isfinite(C), "C_sup_e2_norm", C);
        const auto cert = lemma41_certificate(2.0 * alpha);
        const auto coeffs = hermite_coeffs_gaussian_log(psi0, 200);
        double worst = 0.0;
        for (int k = 1; k <= 60; ++k)
            worst = std::max(worst, detail::abs_coeff(coeffs, k) / thm42_bound(k, a, C, alpha, cert));
        d.check(worst <= 1.0, "max_coeff_over_bound", worst);
        // endpoint rate: -log(mu)/2 at a = tanh(beta) equals beta
        const auto fit = decay_fit(coeffs, {20, 200});
        const double predicted = -0.5 * std::log((1.0 - std::tanh(beta)) / (1.0 + std::tanh(beta)));
        d.check(std::abs(fit.alpha_hat - predicted) <= 1e-3, "rate_hat", fit.alpha_hat);
        d.check(true, "rate_of_bound_at_a", -0.5 * std::log((1.0 - a) / (1.0 + a)));
        return CriterionResult{name, d.ok, worst, 1.0, d.str()};
    });
}

inline CriterionResult hardy_endpoint(const VerifyConfig& cfg) {
    const std::string name = "11_hardy_endpoint";
    return detail::guarded(name, 1e-8, [&] {
        detail::Detail d;
        const auto g1 = hardy_classify(sample(cfg.grid, GeneralizedGaussian::g(1.0)), 1.0);
        d.check(g1.member, "g1_member_constant", g1.constant);
        const double res = g1.residual.value_or(std::numeric_limits<double>::infinity());
        d.check(res < 1e-8, "g1_residual", res);
        const auto p2 = hardy_classify(detail::phi_samples(2, cfg.grid), 1.0);
        d.check(!p2.member && (p2.time_side.divergent || p2.frequency_side.divergent), "phi2_divergent", p2.constant);
        bool decreasing = true;
        for (int k = 1; k <= 60; ++k) {
            const double b1 = thm21_bound_log(k, 0.9, 1.0), b2 = thm21_bound_log(k, 0.99, 1.0),
                         b3 = thm21_bound_log(k, 0.999, 1.0);
            decreasing = decreasing && b1 > b2 && b2 > b3;
        }
        d.check(decreasing, "thm21_bound_k1_a0.999", thm21_bound(1, 0.999, 1.0));
        return CriterionResult{name, d.ok, res, 1e-8, d.str()};
    });
}

inline std::vector<CriterionResult> run_numeric(const VerifyConfig& cfg) {
    return {normalization_pins(cfg), reflection_identity(cfg), thm21_dominance(cfg), thm22_sharpness(cfg),
            contour_machinery(cfg),  evolution(cfg),           confinement(cfg),     section4_identities(cfg),
            lemma41(cfg),            thm42(cfg),               hardy_endpoint(cfg)};
}

inline report::Table criteria_table(const std::vector<CriterionResult>& results) {
    report::Table t;
    t.command = "verify-all";
    t.columns = {"name", "pass", "measured", "threshold", "detail"};
    bool all = true;
    for (const auto& r : results) {
        t.rows.push_back({r.name, r.pass, r.measured, r.threshold, r.detail});
        all = all && r.pass;
    }
    t.meta["all_pass"] = all;
    return t;
}

/// `criteria` array of {name, pass, measured, threshold, detail} plus all_pass.
inline std::string criteria_json(const std::vector<CriterionResult>& results) {
    nlohmann::ordered_json j;
    j["command"] = "verify-all";
    auto arr = nlohmann::ordered_json::array();
    bool all = true;
    for (const auto& r : results) {
        nlohmann::ordered_json c;
        c["name"] = r.name;
        c["pass"] = r.pass;
        c["measured"] = std::isfinite(r.measured) ? nlohmann::ordered_json(r.measured) : nlohmann::ordered_json(nullptr);
        c["threshold"] = r.threshold;
        c["detail"] = r.detail;
        arr.push_back(std::move(c));
        all = all && r.pass;
    }
    j["criteria"] = std::move(arr);
    j["all_pass"] = all;
    return j.dump(2) + "\n";
}

/// Criteria 1-11, then criterion 12: a second full run must render
/// byte-identically and everything must pass.
inline std::vector<CriterionResult> run_all(const VerifyConfig& cfg) {
    auto first = run_numeric(cfg);
    const auto second = run_numeric(cfg);
    const bool identical = criteria_json(first) == criteria_json(second) &&
                           report::to_csv(criteria_table(first)) == report::to_csv(criteria_table(second));
    bool all = true;
    for (const auto& r : first) all = all && r.pass;
    detail::Detail d;
    d.check(identical, "byte_identical_reruns", identical ? 1.0 : 0.0);
    d.check(all, "criteria_1_to_11_pass", all ? 1.0 : 0.0);
    first.push_back({"12_determinism_and_schema", d.ok, identical ? 0.0 : 1.0, 0.0, d.str()});
    return first;
}

}  // namespace hardy::acceptance
