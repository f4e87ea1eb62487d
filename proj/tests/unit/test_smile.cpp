#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "lsv/smile.hpp"
#include "lsv/vix_mapping.hpp"

using namespace lsv;
using std::pow;
using std::sqrt;

namespace {

LsvModel pure_sv(VolOfVolKind kind, double sigma, double v0, double rho) {
    LsvModel m;
    m.v0 = v0;
    m.rho = rho;
    m.local_vol = ConstantLocalVol{};
    m.vol_of_vol = {kind, sigma, ZeroDrift{}};
    return m;
}

// Second, independent transcription of the VIX convexity numerator
// coefficients, written with pow() so that a typo in one copy cannot hide
// in the other.
std::array<double, 8> retyped_k(double a, double b, double c, double d, double p, double V) {
    std::array<double, 8> k{};
    k[0] = 256 * a * pow(b, 4) * pow(V, 3.5) * (b * b * c - 3 * a * c * c + 3 * a * b * d);
    k[1] = 128 * a * pow(b, 3) * p * pow(V, 3) * (15 * a * b * d - 12 * a * c * c + 5 * b * b * c);
    k[2] = 16 * b * b * pow(V, 2.5) *
           (12 * a * a * b * d * (9 * p * p + 1) + 24 * a * a * c * c * (1 - 4 * p * p) +
            4 * a * b * b * c * (15 * p * p - 2) + pow(b, 4) * (2 - 3 * p * p));
    k[3] = 16 * b * p * V * V *
           (6 * a * a * b * d * (7 * p * p + 3) + 6 * a * a * c * c * (4 - 8 * p * p) +
            4 * a * b * b * c * (8 * p * p + 3) - pow(b, 4) * p * p);
    k[4] = 4 * pow(V, 1.5) *
           (12 * a * a * b * d * p * p * (2 * p * p + 3) + 12 * a * a * c * c * p * p * (2 - 3 * p * p) +
            4 * a * b * b * c * (5 * pow(p, 4) + 12 * p * p + 6) - pow(b, 4) * (pow(p, 4) - 6 * p * p + 3));
    k[5] = 4 * p * V * (6 * a * a * d * p * p + 2 * a * b * c * (4 * p * p + 9) + pow(b, 3) * (p * p + 3));
    k[6] = sqrt(V) * (12 * a * c * p * p + b * b * (3 * p * p + 4));
    k[7] = b * p;
    return k;
}

}  // namespace

TEST(EuropeanSabrExpansion, Table1Rows) {
    const double expect[3][3] = {{0.316, -0.429, 0.133}, {0.316, -0.079, 0.520}, {0.316, 0.271, 0.133}};
    const double rhos[3] = {-0.7, 0.0, 0.7};
    for (int i = 0; i < 3; ++i) {
        SmileExpansion e = european_expansion_sabr_type(table1_model(rhos[i]));
        EXPECT_EQ(e.kind, SmileKind::EuropeanSabrType);
        EXPECT_NEAR(e.atm, expect[i][0], 5e-4);
        EXPECT_NEAR(e.skew, expect[i][1], 5e-4);
        EXPECT_NEAR(*e.convexity, expect[i][2], 5e-4);
    }
}

TEST(EuropeanSabrExpansion, PureStochasticVolSkew) {
    SmileExpansion e = european_expansion_sabr_type(pure_sv(VolOfVolKind::Lognormal, 1.4, 0.09, -0.6));
    EXPECT_NEAR(e.skew, 0.25 * -0.6 * 1.4, 1e-15);
}

TEST(EuropeanSabrExpansion, AtmIndependentOfRhoAndSigma) {
    LsvModel a = table1_model(-0.3), b = table1_model(0.9);
    b.vol_of_vol.sigma = 0.5;
    EXPECT_EQ(european_expansion_sabr_type(a).atm, european_expansion_sabr_type(b).atm);
}

TEST(EuropeanSabrExpansion, WrongKind) {
    EXPECT_THROW(european_expansion_sabr_type(pure_sv(VolOfVolKind::SquareRoot, 1, 0.04, 0)), std::invalid_argument);
    EXPECT_THROW(vix_expansion_sabr_type(pure_sv(VolOfVolKind::SquareRoot, 1, 0.04, 0)), std::invalid_argument);
    EXPECT_THROW(european_expansion_heston_type(table1_model(0)), std::invalid_argument);
    EXPECT_THROW(vix_expansion_heston_type(table1_model(0)), std::invalid_argument);
}

TEST(VixSabrExpansion, AtmAndSkewRows) {
    const double atm[3] = {1.116, 1.012, 0.896}, skew[3] = {0.054, 0.012, -0.053};
    const double rhos[3] = {-0.7, 0.0, 0.7};
    for (int i = 0; i < 3; ++i) {
        SmileExpansion e = vix_expansion_sabr_type(table1_model(rhos[i]));
        EXPECT_NEAR(e.atm, atm[i], 5e-4);
        EXPECT_NEAR(e.skew, skew[i], 5e-4);
    }
}

TEST(VixSabrExpansion, ConvexityFormula) {
    for (double rho : {-0.7, 0.0, 0.7}) {
        const double s = 2.0, v0 = 0.1;
        auto k = retyped_k(1.0, -0.5, 0.0, 1.0 / 6.0, rho, v0);
        double K = 0.0;
        for (int i = 0; i < 8; ++i) K += k[i] * pow(s, i);
        double d = s * s + 4 * -0.5 * rho * s * sqrt(v0) + 4 * 0.25 * v0;
        EXPECT_NEAR(*vix_expansion_sabr_type(table1_model(rho)).convexity, sqrt(v0) / 6.0 * K / pow(d, 3.5), 1e-14);
    }
}

TEST(VixSabrExpansion, DoubleEntryCoefficients) {
    for (auto p : {std::array<double, 6>{1.0, -0.5, 0.0, 1.0 / 6.0, -0.7, 0.1},
                   std::array<double, 6>{1.3, 0.4, -0.2, 0.15, 0.35, 0.06},
                   std::array<double, 6>{0.8, -1.1, 0.7, -0.3, 0.9, 0.5}}) {
        auto a = vix_convexity_coefficients(p[0], p[1], p[2], p[3], p[4], p[5]);
        auto b = retyped_k(p[0], p[1], p[2], p[3], p[4], p[5]);
        for (int i = 0; i < 8; ++i) EXPECT_NEAR(a[i], b[i], 1e-12 * (1 + std::abs(b[i]))) << "k" << i;
    }
}

TEST(VixSabrExpansion, PureStochasticVolLimit) {
    SmileExpansion e = vix_expansion_sabr_type(pure_sv(VolOfVolKind::Lognormal, 1.6, 0.05, 0.4));
    EXPECT_NEAR(e.atm, 0.8, 1e-15);
    EXPECT_NEAR(e.skew, 0.0, 1e-15);
}

TEST(VixSabrExpansion, AtmEvenUnderJointFlip) {
    LsvModel a = table1_model(0.6), b = table1_model(-0.6);
    b.local_vol = TanhLocalVol{1.0, 0.5, 0.0};
    EXPECT_NEAR(vix_expansion_sabr_type(a).atm, vix_expansion_sabr_type(b).atm, 1e-15);
}

TEST(VixAtmBounds, Examples) {
    VolBounds b = vix_atm_bounds(table1_model(0.0));
    EXPECT_NEAR(b.lower, 1.0 - 0.5 * sqrt(0.1), 1e-15);
    EXPECT_NEAR(b.upper, 1.0 + 0.5 * sqrt(0.1), 1e-15);
    for (double rho : {-0.7, 0.0, 0.7}) {
        double atm = vix_expansion_sabr_type(table1_model(rho)).atm;
        EXPECT_GT(atm, b.lower);
        EXPECT_LT(atm, b.upper);
    }
    VolBounds c = vix_atm_bounds(pure_sv(VolOfVolKind::Lognormal, 1.2, 0.1, 0.0));
    EXPECT_DOUBLE_EQ(c.lower, 0.6);
    EXPECT_DOUBLE_EQ(c.upper, 0.6);
}

TEST(EuropeanHestonExpansion, Examples) {
    SmileExpansion e = european_expansion_heston_type(pure_sv(VolOfVolKind::SquareRoot, 1.0, 0.04, 0.0));
    EXPECT_NEAR(e.atm, 0.2, 1e-15);
    EXPECT_NEAR(e.skew, 0.0, 1e-15);
    EXPECT_NEAR(*e.convexity, 2.0 / (48 * 0.008), 1e-12);
    // Known Heston expansion sqrt(V0)(1 + rho sigma k/(4V0) + (1 - 5/2 rho^2) sigma^2 k^2 / (24 V0^2)).
    SmileExpansion h = european_expansion_heston_type(pure_sv(VolOfVolKind::SquareRoot, 0.7, 0.09, -0.5));
    EXPECT_NEAR(h.skew, 0.3 * -0.5 * 0.7 / (4 * 0.09), 1e-14);
    EXPECT_NEAR(*h.convexity, 0.3 * (1 - 2.5 * 0.25) * 0.49 / (24 * 0.0081), 1e-14);
    EXPECT_EQ(h.kind, SmileKind::EuropeanHestonType);
}

TEST(VixHestonExpansion, PureStochasticVol) {
    const double s = 0.8, v0 = 0.04;
    SmileExpansion e = vix_expansion_heston_type(pure_sv(VolOfVolKind::SquareRoot, s, v0, 0.3));
    EXPECT_NEAR(e.atm, s / (2 * sqrt(v0)), 1e-14);
    EXPECT_NEAR(e.skew, -s / (4 * sqrt(v0)), 1e-14);
    EXPECT_FALSE(e.convexity.has_value());
    EXPECT_EQ(e.kind, SmileKind::VixHestonType);
    // Linear evaluation when convexity is unavailable.
    EXPECT_NEAR(e.evaluate(0.1), e.atm + 0.1 * e.skew, 1e-15);
}

TEST(VixHestonExpansion, MatchesSmileSeries) {
    const double s = 0.8, v0 = 0.04;
    SmileExpansion e = vix_expansion_heston_type(pure_sv(VolOfVolKind::SquareRoot, s, v0, 0.0));
    const double z = 1e-3, k = sqrt(v0) * std::exp(z);
    double smile = heston_vix_smile(0.0, 0.0, s, v0, 1.0, k);
    EXPECT_NEAR(smile, e.atm + e.skew * z, 1e-6);
}

TEST(MeanrevLognormalVixSmile, Examples) {
    EXPECT_NEAR(meanrev_lognormal_vix_smile(0.0, 0.04, 1.5, 0.04, 0.1, 0.3), 0.75, 1e-12);
    const double a = 2.0, b = 0.04, s = 1.5, v0 = 0.02, tau = 30.0 / 365.0;
    VixMapping m = vix_mapping(a, b, tau);
    const double f = sqrt(m.alpha * v0 + m.beta);
    double atm = 0.5 * s * m.alpha * v0 / (m.alpha * v0 + m.beta);
    EXPECT_NEAR(meanrev_lognormal_vix_smile(a, b, s, v0, tau, f), atm, 1e-12);
    double slope = 0.5 * s * m.beta / (m.alpha * v0 + m.beta);
    double h = 1e-4;
    double fd = (meanrev_lognormal_vix_smile(a, b, s, v0, tau, f * std::exp(h)) -
                 meanrev_lognormal_vix_smile(a, b, s, v0, tau, f * std::exp(-h))) / (2 * h);
    EXPECT_NEAR(fd, slope, 1e-6);
    EXPECT_EQ(meanrev_lognormal_vix_smile(a, b, s, v0, tau, 0.5 * sqrt(m.beta)), 0.0);
}

TEST(HestonVixSmile, Examples) {
    EXPECT_NEAR(heston_vix_smile(0.0, 0.0, 2.0, 1.0, 1.0, 1.0), 1.0, 1e-12);
    EXPECT_NEAR(heston_vix_smile(0.0, 0.0, 2.0, 1.0, 1.0, std::exp(0.5)), 0.5 / (std::exp(0.5) - 1), 1e-14);
    EXPECT_NEAR(heston_vix_smile(0.0, 0.0, 2.0, 1.0, 1.0, std::exp(0.5)), 0.770747, 1e-6);
    double z = 0.1;
    EXPECT_NEAR(heston_vix_smile(0.0, 0.0, 2.0, 1.0, 1.0, std::exp(z)), 1 - z / 2 + z * z / 12, 2e-6);
    VixMapping m = vix_mapping(2.0, 0.04, 0.1);
    EXPECT_THROW(heston_vix_smile(2.0, 0.04, 1.0, 0.04, 0.1, 0.5 * sqrt(m.beta)), std::domain_error);
}

TEST(HestonVixSmile, IdentityOnUnitInterval) {
    const double s = 0.9, v0 = 0.09;
    for (double z = -1.0; z <= 1.0; z += 0.125) {
        if (z == 0.0) continue;
        double expect = s / (2 * sqrt(v0)) * z / std::expm1(z);
        EXPECT_NEAR(heston_vix_smile(0.0, 0.0, s, v0, 0.5, sqrt(v0) * std::exp(z)), expect, 1e-12) << z;
    }
}

TEST(VixMapping, Examples) {
    VixMapping m = vix_mapping(1e-14, 0.04, 0.1);
    EXPECT_NEAR(m.alpha, 1.0, 1e-14);
    EXPECT_NEAR(m.beta, 0.0, 1e-14);
    VixMapping n = vix_mapping(2.0, 0.04, 30.0 / 365.0);
    const double x = 2.0 * 30.0 / 365.0;
    EXPECT_NEAR(n.alpha, (1 - std::exp(-x)) / x, 1e-15);
    EXPECT_NEAR(n.alpha, 0.92213, 1e-5);
    EXPECT_NEAR(n.beta, 0.04 * (1 - n.alpha), 1e-17);
    EXPECT_DOUBLE_EQ(constant_drift_factor(0.0, 0.5), 1.0);
    EXPECT_NEAR(constant_drift_factor(0.3, 0.5), std::expm1(0.15) / 0.15, 1e-15);
    EXPECT_THROW(vix_mapping(1.0, 0.04, 0.0), std::invalid_argument);
    EXPECT_NEAR(n.vix_squared(0.04), n.alpha * 0.04 + n.beta, 1e-16);
    EXPECT_NEAR(n.inverse(n.vix_squared(0.03)), 0.03, 1e-15);
}

TEST(AtmLimits, European) {
    EXPECT_NEAR(atm_price_limit_european(table1_model(0.0)), sqrt(0.1) / sqrt(2 * std::numbers::pi), 1e-15);
    EXPECT_NEAR(atm_price_limit_european(table1_model(0.0)), 0.12615, 1e-5);
    EXPECT_NEAR(atm_price_limit_european(pure_sv(VolOfVolKind::Lognormal, 1, 1, 0)), 0.39894, 1e-5);
    LsvModel m = table1_model(0.0);
    m.s0 = 50.0;
    EXPECT_NEAR(atm_price_limit_european(m), 50.0 * 0.126157, 1e-3);
}

TEST(AtmLimits, Vix) {
    const double c = 1.0 / sqrt(2 * std::numbers::pi);
    EXPECT_NEAR(atm_price_limit_vix(table1_model(0.0)), c * std::hypot(sqrt(0.1), 0.05), 1e-14);
    EXPECT_NEAR(atm_price_limit_vix(table1_model(0.0)), 0.1277, 5e-5);
    // Consistent with the Black ATM slope F sigma_ATM / sqrt(2 pi).
    EXPECT_NEAR(atm_price_limit_vix(table1_model(0.0)), sqrt(0.1) * 1.012 * c, 1e-4);
    EXPECT_NEAR(atm_price_limit_vix(pure_sv(VolOfVolKind::Lognormal, 1.5, 0.04, 0.3)), c * 0.75 * 0.2, 1e-15);
    EXPECT_NEAR(atm_price_limit_vix(table1_model(0.99999999)), c * std::abs(sqrt(0.1) - 0.05), 1e-8);
}
