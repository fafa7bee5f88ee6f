#include <gtest/gtest.h>

#include "hardy/gaussian_family.hpp"
#include "oracles.hpp"

using namespace hardy;

TEST(GeneralizedGaussian, ValidatesWidth) {
    EXPECT_THROW((GeneralizedGaussian{1.0, cplx(0.0, 1.0)}).validate(), DomainError);
    EXPECT_THROW((GeneralizedGaussian{1.0, cplx(-0.5, 0.0)}).validate(), DomainError);
    EXPECT_NO_THROW((GeneralizedGaussian{1.0, cplx(0.1, -3.0)}).validate());
}

TEST(GeneralizedGaussian, MobiusParameter) {
    const GeneralizedGaussian g{1.0, cplx(0.3, 0.4)};
    const cplx z = g.mobius();
    EXPECT_NEAR(std::abs(z - (1.0 - g.width) / (1.0 + g.width)), 0.0, 1e-15);
    EXPECT_LT(std::abs(z), 1.0);
}

TEST(FourierGaussian, MatchesDirectSum) {
    const std::vector<GeneralizedGaussian> gs = {GeneralizedGaussian::g(0.5), {cplx(0.7, -0.2), cplx(0.9, 0.6)},
                                                 endpoint_chirp(0.3)};
    for (const auto& g : gs) {
        const auto gh = fourier_gaussian(g);
        const auto ref = oracle::gaussian({g.amplitude.real(), g.amplitude.imag()}, {g.width.real(), g.width.imag()});
        for (double xi : {0.0, 0.4, -1.3, 2.2}) {
            const auto r = oracle::fourier_direct(ref, xi, 24.0L, 8192);
            EXPECT_NEAR(std::abs(gh(xi) - cplx(double(r.real()), double(r.imag()))), 0.0, 1e-12) << "xi=" << xi;
        }
    }
}

TEST(FourierGaussian, GaMapsToInverseWidth) {
    const auto gh = fourier_gaussian(GeneralizedGaussian::g(0.25));
    EXPECT_NEAR(std::abs(gh.amplitude - 2.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(gh.width - 4.0), 0.0, 1e-15);
}

TEST(HermiteCoeffsGaussian, MatchesDirectSum) {
    const std::vector<GeneralizedGaussian> gs = {GeneralizedGaussian::g(0.5), {cplx(0.7, -0.2), cplx(0.9, 0.6)},
                                                 endpoint_chirp(0.27465)};
    for (const auto& g : gs) {
        const auto e = hermite_coeffs_gaussian(g, 40);
        const auto ref = oracle::gaussian({g.amplitude.real(), g.amplitude.imag()}, {g.width.real(), g.width.imag()});
        for (int k = 0; k <= 40; k += 2) {
            const auto r = oracle::hermite_coeff_direct(ref, k, 20.0L, 4096);
            EXPECT_NEAR(std::abs(e.coeffs[static_cast<std::size_t>(k)] - cplx(double(r.real()), double(r.imag()))), 0.0,
                        1e-12)
                << "k=" << k;
        }
    }
}

TEST(HermiteCoeffsGaussian, OddCoefficientsVanish) {
    const auto lc = hermite_coeffs_gaussian_log(endpoint_chirp(0.4), 101);
    for (std::size_t k = 1; k < lc.size(); k += 2) EXPECT_TRUE(lc[k].is_zero);
}

TEST(HermiteCoeffsGaussian, GroundStateIsDelta) {
    const auto e = hermite_coeffs_gaussian(GeneralizedGaussian::g(1.0), 20);
    EXPECT_NEAR(std::abs(e.coeffs[0] - std::pow(2.0, -0.25)), 0.0, 1e-15);
    for (std::size_t k = 1; k < e.size(); ++k) EXPECT_EQ(std::abs(e.coeffs[k]), 0.0);
}

TEST(HermiteCoeffsGaussian, LogFormReachesDeepIndices) {
    // |c_{2m}| ~ |z|^m / (pi m)^{1/4}, z = (1-b)/(1+b)
    const auto g = GeneralizedGaussian::g(0.2);
    const auto lc = hermite_coeffs_gaussian_log(g, 4000);
    const double z = 0.8 / 1.2;
    const double m = 2000;
    const double approx = 0.25 * std::log(2.0) - 0.5 * std::log(1.2) + m * std::log(z) - 0.25 * std::log(pi * m);
    EXPECT_NEAR(lc[4000].log_mag, approx, 1e-3);
}

TEST(BargmannGaussian, TaylorCoefficientsAgree) {
    // Uf(w) = P exp(lambda w^2) and Uf(w) = sum <f,phi_k> w^k / sqrt(2^k k!)
    const GeneralizedGaussian g{cplx(0.8, 0.1), cplx(0.7, 0.3)};
    const auto bg = bargmann_gaussian(g);
    const auto e = hermite_coeffs_gaussian(g, 80);
    for (cplx w : {cplx(0.5, 0.2), cplx(-1.0, 1.3), cplx(2.0, -0.4)}) {
        cplx series{};
        for (int k = 0; k <= 80; ++k)
            series += e.coeffs[static_cast<std::size_t>(k)] * std::pow(w, k) / std::sqrt(std::pow(2.0, k) * std::tgamma(k + 1.0));
        EXPECT_NEAR(std::abs(series - bg.prefactor * std::exp(bg.quad_coeff * w * w)), 0.0, 1e-12);
    }
}

TEST(Membership, ThresholdAtRealWidth) {
    const auto g = GeneralizedGaussian::g(0.5);
    const auto at = e_membership(g, 0.5);
    EXPECT_TRUE(at.member);
    EXPECT_NEAR(at.constant, std::sqrt(2.0), 1e-15);
    EXPECT_FALSE(e_membership(g, 0.51).member);
    EXPECT_FALSE(e_membership(GeneralizedGaussian::g(3.0), 0.5).member);
}

TEST(Membership, EndpointChirpSitsOnBothSides) {
    for (double alpha : {0.2, 0.5}) {
        const double a = std::tanh(2 * alpha);
        const auto f = endpoint_chirp(alpha);
        EXPECT_NEAR(f.width.real(), a, 1e-15);
        EXPECT_NEAR(fourier_gaussian(f).width.real(), a, 1e-14);
        EXPECT_NEAR(std::abs(f.mobius()), std::exp(-2 * alpha), 1e-14);
        const auto m = e_membership(f, a);
        EXPECT_TRUE(m.member);
        EXPECT_NEAR(m.constant, 1.0, 1e-14);
    }
}

TEST(EnvelopeConstant, ReportsAmplitude) {
    const GeneralizedGaussian g{cplx(0.6, 0.8), cplx(0.9, 0.2)};
    const auto r = envelope_constant(g, 0.4);
    EXPECT_FALSE(r.divergent);
    EXPECT_NEAR(r.constant, 1.0, 1e-15);
    EXPECT_TRUE(envelope_constant(g, 0.95).divergent);
}
