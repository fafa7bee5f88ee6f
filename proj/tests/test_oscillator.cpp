#include <gtest/gtest.h>

#include "hardy/oscillator.hpp"

using namespace hardy;

namespace {

double max_diff(const HermiteExpansion& a, const HermiteExpansion& b) {
    double d = 0.0;
    for (std::size_t k = 0; k < std::min(a.size(), b.size()); ++k) d = std::max(d, std::abs(a.coeffs[k] - b.coeffs[k]));
    return d;
}

}  // namespace

TEST(Evolution, GaussianFlowMatchesSpectralFlow) {
    const GeneralizedGaussian g{cplx(0.9, -0.1), cplx(0.6, 0.5)};
    const auto e0 = hermite_coeffs_gaussian(g, 80);
    for (double t : {0.05, 0.7, pi / 3, 2.9, -1.1})
        EXPECT_LT(max_diff(hermite_coeffs_gaussian(evolve_gaussian(g, t), 80), evolve_expansion(e0, t)), 1e-13) << t;
}

TEST(Evolution, ClosedFormSolvesTheEquation) {
    // (1/i) d/dt psi = (-d^2/dx^2 + x^2) psi, checked by finite differences
    const auto g0 = example33_state(0.4);
    const double t = 0.3, dt = 1e-4, dx = 1e-3;
    const auto psi = [&](double s, double x) { return evolve_gaussian(g0, s)(x); };
    for (double x : {-1.2, 0.0, 0.5, 2.0}) {
        const cplx dpsi_dt = (psi(t + dt, x) - psi(t - dt, x)) / (2 * dt);
        const cplx lap = (psi(t, x + dx) - 2.0 * psi(t, x) + psi(t, x - dx)) / (dx * dx);
        const cplx h_psi = -lap + x * x * psi(t, x);
        EXPECT_NEAR(std::abs(dpsi_dt / I - h_psi), 0.0, 1e-5) << x;
    }
}

TEST(Evolution, GroupLawAndUnitarity) {
    HermiteExpansion e;
    for (int k = 0; k < 40; ++k) e.coeffs.emplace_back(std::exp(-0.1 * k), std::sin(k));
    const EvolutionState s{0.0, e};
    const auto two = evolve(evolve(s, 0.4), 1.1);
    const auto one = evolve(s, 1.5);
    EXPECT_DOUBLE_EQ(two.t, 1.5);
    EXPECT_LT(max_diff(std::get<HermiteExpansion>(two.rep), std::get<HermiteExpansion>(one.rep)), 1e-13);
    EXPECT_NEAR(std::get<HermiteExpansion>(one.rep).norm(), e.norm(), 1e-13);
}

TEST(Evolution, GaussianGroupLawAcrossBranchCuts) {
    const auto g = example33_state(0.3);
    auto step = g;
    for (int i = 0; i < 40; ++i) step = evolve_gaussian(step, 0.1);
    const auto direct = evolve_gaussian(g, 4.0);
    EXPECT_NEAR(std::abs(step.amplitude - direct.amplitude), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(step.width - direct.width), 0.0, 1e-12);
}

TEST(Evolution, HalfPeriodFlipsSign) {
    const auto g = example33_state(0.5);
    for (double t : {0.0, 0.3, 1.4}) {
        const auto a = evolve_gaussian(g, t), b = evolve_gaussian(g, t + pi);
        EXPECT_NEAR(std::abs(a.amplitude + b.amplitude), 0.0, 1e-14);
        EXPECT_NEAR(std::abs(a.width - b.width), 0.0, 1e-14);
    }
}

TEST(ExplicitFlow, ModulusAtDistinguishedTimes) {
    const double beta = 0.5, r = std::exp(-2 * beta);
    const auto g0 = example33_state(beta);
    EXPECT_NEAR(std::abs(g0.amplitude), std::pow(1 + r * r, -0.25), 1e-15);
    EXPECT_NEAR(g0.width.real(), std::tanh(2 * beta), 1e-15);
    const auto back = evolve_gaussian(g0, -pi / 8);
    EXPECT_NEAR(back.width.real(), std::tanh(beta), 1e-14);
    EXPECT_NEAR(back.width.imag(), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(back.amplitude), 1.0 / std::sqrt(1 + r), 1e-14);
    EXPECT_NEAR(std::abs(fourier_gaussian(back).amplitude), 1.0 / std::sqrt(1 - r), 1e-14);
    const auto fwd = evolve_gaussian(g0, pi / 8);
    EXPECT_NEAR(std::abs(fwd.amplitude), 1.0 / std::sqrt(1 - r), 1e-14);
    EXPECT_THROW(example33_state(0.0), DomainError);
}

TEST(FourierTimeShift, HoldsForArbitraryData) {
    HermiteExpansion e;
    for (int k = 0; k < 25; ++k) e.coeffs.emplace_back(1.0 / (k + 1), 0.3 * k);
    for (double t : {0.0, 0.2, 2.5}) EXPECT_LT(fourier_time_shift_check(e, t), 1e-13);
}

TEST(ConfinementConstant, SharpBelowLooseForm) {
    const auto c = confinement_constant(ConfinementParams::make(0.5, 0.45, 0.475, 2.0));
    EXPECT_LT(c.sharp, c.loose);
    EXPECT_NEAR(c.loose / c.sharp, c.cs_factor, 1e-12);
    EXPECT_NEAR(c.mehler_factor, std::pow(2.0, 0.25) * std::pow(1 - std::exp(-1.8), -0.25), 1e-15);
    EXPECT_THROW(ConfinementParams::make(0.5, 0.48, 0.47, 1.0), DomainError);
    EXPECT_THROW(ConfinementParams::make(0.5, 0.4, 0.45, 0.0), DomainError);
}

TEST(ConfinementConstant, PointwiseBoundOnFlow) {
    // |psi_t(x)| <= C e^{-tanh(gamma) x^2/2} directly on a grid of (t, x)
    const double beta = 0.5, gamma = 0.4, gp = 0.45;
    const auto g0 = example33_state(beta);
    const double B = coefficient_constant(hermite_coeffs_gaussian_log(g0, 400), gp);
    const double C = confinement_constant(ConfinementParams::make(beta, gamma, gp, B)).sharp;
    for (double t : default_t_grid(32))
        for (double x = -8; x <= 8; x += 0.25)
            EXPECT_LE(std::abs(evolve_gaussian(g0, t)(x)), C * std::exp(-std::tanh(gamma) * x * x / 2));
}

TEST(CoefficientConstant, SmallestRateConstant) {
    std::vector<LogComplex> lc = {LogComplex::from(1.0), LogComplex::from(0.5), LogComplex::zero(), LogComplex::from(0.1)};
    EXPECT_NEAR(coefficient_constant(lc, 0.5), std::max({1.0, 0.5 * std::exp(0.5), 0.1 * std::exp(1.5)}), 1e-15);
}

TEST(DefaultTGrid, ContainsDistinguishedTimes) {
    const auto ts = default_t_grid(64);
    ASSERT_EQ(ts.size(), 64u);
    EXPECT_DOUBLE_EQ(ts[16], pi / 8);
    EXPECT_DOUBLE_EQ(ts[48], 3 * pi / 8);
}

TEST(ConfinementCheck, SupAtEndpointGamma) {
    const double beta = 0.5, r = std::exp(-2 * beta);
    const auto rep = confinement_check({0.0, example33_state(beta)}, beta, beta, default_t_grid(64));
    EXPECT_FALSE(rep.divergent_at.has_value());
    EXPECT_TRUE(rep.initial_member);
    EXPECT_NEAR(rep.sup_constant, 1 / std::sqrt(1 - r), 1e-10);
    ASSERT_EQ(rep.argmax_ts.size(), 2u);
    EXPECT_DOUBLE_EQ(rep.argmax_ts[0], pi / 8);
    EXPECT_DOUBLE_EQ(rep.argmax_ts[1], 3 * pi / 8);
}

TEST(ConfinementCheck, DivergesPastEndpoint) {
    const auto rep = confinement_check({0.0, example33_state(0.5)}, 0.5, 0.6, default_t_grid(16));
    ASSERT_TRUE(rep.divergent_at.has_value());
}

TEST(ConfinementCheck, GroundStateIsStationary) {
    const auto rep = confinement_check({0.0, HermiteExpansion::unit(0, 1)}, 0.5, 0.3, default_t_grid(8));
    for (const auto& s : rep.samples) EXPECT_NEAR(s.time_constant, std::pow(2.0, 0.25), 1e-12);
}

TEST(ConjectureProbe, StableOnRefinement) {
    const auto p = conjecture32_probe({0.0, example33_state(0.5)}, 0.5, default_t_grid(32));
    EXPECT_TRUE(p.stabilized);
    EXPECT_LT(p.change, 1e-6);
}

TEST(TimeAverage, ProjectsOntoSingleMode) {
    HermiteExpansion e;
    for (int k = 0; k < 10; ++k) e.coeffs.emplace_back(k + 1.0, -0.5 * k);
    for (int k = 0; k < 10; ++k) {
        const auto p = time_average_projection(e, 2 * k + 1, 64);
        for (int j = 0; j < 10; ++j)
            EXPECT_NEAR(std::abs(p.coeffs[static_cast<std::size_t>(j)] - (j == k ? e.coeffs[static_cast<std::size_t>(k)] : cplx{})),
                        0.0, 1e-13);
    }
    const auto even = time_average_projection(e, 4, 64);
    for (const auto& c : even.coeffs) EXPECT_NEAR(std::abs(c), 0.0, 1e-13);
    EXPECT_THROW(time_average_projection(e, 1, 30), DomainError);
    EXPECT_THROW(time_average_projection(e, 60, 64), DomainError);
}
