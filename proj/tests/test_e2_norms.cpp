#include <gtest/gtest.h>

#include "hardy/e2_norms.hpp"
#include "hardy/oscillator.hpp"

using namespace hardy;

namespace {

// log Q_n as a running product of (1 - 1/(2k)), long double
long double log_q_product(int n) {
    long double s = 0.0L;
    for (int k = 1; k <= n; ++k) s += std::log1p(-1.0L / (2.0L * k));
    return s;
}

}  // namespace

TEST(E2Norm, GaussianClosedFormMatchesQuadrature) {
    const std::vector<GeneralizedGaussian> gs = {GeneralizedGaussian::g(0.8), {cplx(0.5, 0.5), cplx(0.9, 0.4)},
                                                 example33_state(0.5)};
    for (const auto& g : gs)
        for (double a : {0.0, 0.2, 0.4}) {
            const double closed = e2_norm_closed(g, a);
            EXPECT_NEAR(e2_norm(g, a, GridSpec{24.0, 4096}), closed, 1e-12 * closed);
        }
    // the numerically transformed route is only usable while e^{a L^2} stays moderate
    for (const auto& g : gs)
        for (double a : {0.0, 0.05})
            EXPECT_NEAR(e2_norm(sample(GridSpec{}, g), a), e2_norm_closed(g, a), 1e-10 * e2_norm_closed(g, a));
}

TEST(E2Norm, ZeroWeightIsL2Norm) {
    const auto g = GeneralizedGaussian{cplx(0.3, 0.4), cplx(1.2, -0.7)};
    const auto f = sample(GridSpec{}, g);
    EXPECT_NEAR(e2_norm(f, 0.0), l2_norm(f), 1e-13);
}

TEST(E2Norm, OutsideSpaceThrows) {
    EXPECT_THROW(e2_norm_closed(GeneralizedGaussian::g(0.3), 0.5), DomainError);
    EXPECT_THROW(e2_norm(GeneralizedGaussian::g(0.3), 0.5, GridSpec{}), DomainError);
}

TEST(E2Norm, NumericTransformRefusesLargeWeights) {
    const auto f = sample(GridSpec{}, GeneralizedGaussian::g(0.9));
    EXPECT_THROW(e2_norm(f, 0.8), DomainError);
    EXPECT_NO_THROW(e2_norm(GeneralizedGaussian::g(0.9), 0.8, GridSpec{28.0, 4096}));
}

TEST(Q, ProductFormAndWallis) {
    for (int n : {0, 1, 2, 7, 100, 5000}) EXPECT_NEAR(log_Q(n), static_cast<double>(log_q_product(n)), 1e-10) << n;
    EXPECT_DOUBLE_EQ(Q(1), 0.5);
    EXPECT_NEAR(Q(3), 0.3125, 1e-15);
    EXPECT_NEAR(Q(10000) * std::sqrt(pi * 10000), 1.0, 2e-5);
    EXPECT_THROW(log_Q(-1), DomainError);
}

TEST(PhiNorm, ClosedFormMatchesQuadrature) {
    const GridSpec wide{28.0, 4096};
    for (double a : {0.2, 0.5, 0.8})
        for (int n : {0, 1, 5, 17, 30}) {
            const double q = e2_norm(HermiteExpansion::unit(static_cast<std::size_t>(n), static_cast<std::size_t>(n) + 1), a, wide);
            EXPECT_NEAR(q * q, phi_norm_closed(n, a), 1e-9 * phi_norm_closed(n, a)) << "a=" << a << " n=" << n;
        }
}

TEST(PhiNorm, GroundStateAndCollapse) {
    for (double a : {0.1, 0.6}) EXPECT_NEAR(phi_norm_closed(0, a), 1.0 / std::sqrt(1 - a), 1e-14);
    for (int n = 0; n <= 30; ++n) EXPECT_NEAR(phi_norm_closed(n, 0.0), 1.0, 1e-13);
    EXPECT_THROW(phi_norm_closed(3, 1.0), DomainError);
}

TEST(PhiNorm, LowerBoundAndGrowthRate) {
    for (double a : {0.3, 0.7}) {
        const double mu = (1 - a) / (1 + a);
        for (int n = 0; n <= 200; n += 10) EXPECT_LE(phi_norm_lower_log(n, a), phi_norm_closed_log(n, a) + 1e-13);
        // ||phi_n||_a^2 grows like mu^{-n} up to polynomial factors
        const double rate = (phi_norm_closed_log(2000, a) - phi_norm_closed_log(1000, a)) / 1000;
        EXPECT_NEAR(rate, -std::log(mu), 1e-3);
    }
}

TEST(GenFunc, MatchesClosedForm) {
    for (auto [a, w] : {std::pair{0.5, 0.25}, std::pair{0.2, 0.5}, std::pair{0.6, -0.2}}) {
        const auto g = gen_func_check(a, w, 400);
        EXPECT_NEAR(g.lhs_partial, g.rhs, 1e-10 * g.rhs) << a << " " << w;
    }
    EXPECT_THROW(gen_func_check(0.5, 0.4, 10), DomainError);
}

TEST(Lemma41, CertificateForDefaultBeta) {
    const auto c = lemma41_certificate(1.1);
    EXPECT_TRUE(c.valid);
    EXPECT_EQ(c.validated_up_to, 10000);
    EXPECT_NEAR(c.delta, 0.176, 1e-15);
    EXPECT_EQ(c.m, 2);
    EXPECT_NEAR(c.B_proof, 0.375 * std::pow(2.0, 0.55), 1e-14);
    EXPECT_DOUBLE_EQ(c.B_beta, 0.5);
    for (int n = 1; n <= 10000; ++n)
        ASSERT_GE(static_cast<double>(log_q_product(n)) + 0.55 * std::log(double(n)), std::log(c.B_beta) - 1e-14) << n;
    EXPECT_THROW(lemma41_certificate(1.0), DomainError);
}

TEST(Lemma41, DeltaSatisfiesInequality) {
    for (double beta : {1.1, 1.5, 2.0, 4.0}) {
        const auto c = lemma41_certificate(beta, 2000);
        EXPECT_TRUE(c.valid);
        for (int i = 0; i <= 1000; ++i) {
            const double x = c.delta * i / 1000;
            EXPECT_GE(std::log1p(-x), -beta * x - 1e-15);
        }
        EXPECT_LE(1.0 / (2.0 * (c.m + 1)), c.delta + 1e-15);
    }
}

TEST(Thm42, FormsDifferByOneFactor) {
    const auto cert = lemma41_certificate(2.0);
    const double a = 0.4;
    for (int k : {1, 10, 60}) {
        const double p = thm42_bound_log(k, a, 1.5, 1.0, cert, Thm42Form::proof);
        const double s = thm42_bound_log(k, a, 1.5, 1.0, cert, Thm42Form::statement);
        EXPECT_NEAR(s - p, -0.25 * std::log1p(-a), 1e-14);
    }
    EXPECT_THROW(thm42_bound(1, a, 1.0, 0.5, lemma41_certificate(1.1)), DomainError);
    EXPECT_THROW(thm42_bound(1, a, 1.0, 1.0, lemma41_certificate(1.1)), DomainError);
    EXPECT_THROW(thm42_bound(0, a, 1.0, 1.0, cert), DomainError);
}

TEST(Thm42, DominatesFlowCoefficients) {
    const double beta = 0.5, a = std::tanh(0.45);
    const auto psi0 = example33_state(beta);
    double C = 0.0;
    for (double t : default_t_grid(16)) C = std::max(C, e2_norm_closed(evolve_gaussian(psi0, t), a));
    const auto cert = lemma41_certificate(2.0);
    const auto lc = hermite_coeffs_gaussian_log(psi0, 200);
    for (int k = 1; k <= 200; ++k)
        if (!lc[static_cast<std::size_t>(k)].is_zero) {
            EXPECT_LE(lc[static_cast<std::size_t>(k)].log_mag, thm42_bound_log(k, a, C, 1.0, cert)) << k;
        }
}

TEST(E1Bound, GroundStateNorm) {
    // g_1 is in E(1) with constant 1 and attains the bound
    for (double b : {0.0, 0.3, 0.9}) {
        const double exact = e2_norm_closed(GeneralizedGaussian::g(1.0), b);
        EXPECT_NEAR(exact, e1_norm_bound_check(b), 1e-14);
    }
    EXPECT_THROW(e1_norm_bound_check(1.0), DomainError);
}

TEST(WeakConfinementChain, DecaysForLargeBeta) {
    const auto cert = lemma41_certificate(4.0);
    WeakConfinementParams p{3.0, 2.0, 1.0};
    const auto small_k = weak_confinement_chain(p, 1, cert);
    EXPECT_FALSE(small_k.forced_zero);
    const auto big_k = weak_confinement_chain(p, 5, cert);
    EXPECT_TRUE(big_k.forced_zero);
    double prev = 1e300;
    for (double beta : {1.0, 5.0, 25.0}) {
        p.beta = beta;
        const auto c = weak_confinement_chain(p, 5, cert);
        EXPECT_LT(c.log_bound, prev);
        EXPECT_LE(c.log_precise, c.log_bound + 1e-12);
        prev = c.log_bound;
    }
    EXPECT_THROW(weak_confinement_chain(p, 5, lemma41_certificate(2.0)), DomainError);
    EXPECT_THROW(weak_confinement_chain({1.0, 1.0, 1.0}, 5, cert), DomainError);
}
