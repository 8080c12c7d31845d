#include <gtest/gtest.h>

#include <cmath>

#include "mcs/counter_rng.hpp"
#include "mcs/spectrum.hpp"
#include "mcs/stability.hpp"
#include "oracles.hpp"

namespace {

using namespace mcs;

using oracle::random_psd;

TEST(FourierSymbols, ZeroModeIsOrigin) {
    const PdeCoefficients c{3.0, -2.0, 1.0, 0.4, 0.2, 2.0};
    const GridSpec g{7, 9, 0.1, 0.2, 0.5};
    const SpectralPoint pt = fourier_symbols(c, g, {0.5, 0.01}, {0, 0});
    EXPECT_EQ(pt, SpectralPoint{});
}

TEST(FourierSymbols, CheckerboardModeOfPureDiffusion) {
    const double h = 0.25;
    const PdeCoefficients c{0.0, 0.0, 1.0, 0.0, 0.0, 1.0};
    const GridSpec g{8, 8, h, h, 0.0};
    const SpectralPoint pt = fourier_symbols(c, g, {0.5, h * h}, {4, 4});
    EXPECT_EQ(pt.z0, Complex(0.0, 0.0));
    EXPECT_NEAR(pt.z1.real(), -4.0, 1e-15);
    EXPECT_NEAR(pt.z2.real(), -4.0, 1e-15);
    EXPECT_NEAR(pt.z1.imag(), 0.0, 1e-15);
}

TEST(FourierSymbols, QuarterAnglesWithMixedTerm) {
    const double h = 0.25;
    const PdeCoefficients c{0.0, 0.0, 1.0, 1.0, 1.0, 1.0};
    const GridSpec g{4, 4, h, h, 0.0};
    const SpectralPoint pt = fourier_symbols(c, g, {0.5, h * h}, {1, 1});
    EXPECT_NEAR(pt.z0.real(), -2.0, 1e-15);
    EXPECT_NEAR(pt.z1.real(), -2.0, 1e-15);
    EXPECT_NEAR(pt.z2.real(), -2.0, 1e-15);
    EXPECT_TRUE(stability::cone_condition(pt));
}

TEST(FourierSymbols, MixedSymbolIsReal) {
    const CounterRng rng(5);
    const PdeCoefficients c = random_psd(rng, 0);
    const GridSpec g{11, 6, 0.3, 0.07, -0.4};
    for (std::size_t k1 = 0; k1 < g.m1; ++k1) {
        for (std::size_t k2 = 0; k2 < g.m2; ++k2) {
            EXPECT_EQ(fourier_symbols(c, g, {0.5, 0.2}, {k1, k2}).z0.imag(), 0.0);
        }
    }
}

TEST(FourierSymbols, DirectionalSymbolsAreDecoupled) {
    const PdeCoefficients base{1.5, -0.5, 2.0, 0.3, 0.1, 0.7};
    PdeCoefficients other = base;
    other.d22 = 5.0;
    other.c2 = 9.0;
    other.d12 = -1.0;
    const GridSpec g{9, 10, 0.1, 0.3, 0.2};
    const SchemeParams p{0.5, 0.05};
    for (std::size_t k1 = 0; k1 < g.m1; ++k1) {
        const FourierMode m{k1, 3};
        EXPECT_EQ(fourier_symbols(base, g, p, m).z1, fourier_symbols(other, g, p, m).z1);
    }
    PdeCoefficients third = base;
    third.d11 = 0.1;
    third.c1 = -4.0;
    for (std::size_t k2 = 0; k2 < g.m2; ++k2) {
        const FourierMode m{2, k2};
        EXPECT_EQ(fourier_symbols(base, g, p, m).z2, fourier_symbols(third, g, p, m).z2);
    }
}

TEST(FourierSymbols, LinearInTimeStep) {
    const PdeCoefficients c{1.5, -0.5, 2.0, 0.3, 0.1, 0.7};
    const GridSpec g{9, 10, 0.1, 0.3, 0.2};
    for (std::size_t k1 = 0; k1 < g.m1; ++k1) {
        for (std::size_t k2 = 0; k2 < g.m2; ++k2) {
            const SpectralPoint a = fourier_symbols(c, g, {0.5, 0.013}, {k1, k2});
            const SpectralPoint b = fourier_symbols(c, g, {0.5, 0.026}, {k1, k2});
            EXPECT_EQ(2.0 * a.z0, b.z0);
            EXPECT_EQ(2.0 * a.z1, b.z1);
            EXPECT_EQ(2.0 * a.z2, b.z2);
        }
    }
}

TEST(ConeScan, IdentityDiffusion) {
    const PdeCoefficients c{0.0, 0.0, 1.0, 0.0, 0.0, 1.0};
    for (double dt : {1e-4, 1.0, 1e3}) {
        const ConeReport r = verify_cone_all_modes(c, {16, 12, 0.1, 0.05, 0.0}, {0.5, dt});
        EXPECT_GE(r.worst_margin, 0.0);
        EXPECT_LE(r.max_real_part, 0.0);
    }
}

TEST(ConeScan, DegenerateDiffusionIsSharp) {
    const PdeCoefficients c{0.0, 0.0, 1.0, 1.0, 1.0, 1.0};
    const ConeReport r = verify_cone_all_modes(c, {16, 16, 0.1, 0.1, 0.0}, {0.5, 0.37});
    EXPECT_EQ(r.worst_margin, 0.0);
    EXPECT_EQ(r.worst_mode, (FourierMode{0, 0}));
    EXPECT_GE(r.worst_nontrivial_margin, -1e-12);

    // with beta = +-1 the bound is also attained away from the zero mode
    for (double beta : {-1.0, 1.0}) {
        const ConeReport rb = verify_cone_all_modes(c, {16, 16, 0.1, 0.1, beta}, {0.5, 0.37});
        EXPECT_GE(rb.worst_margin, -1e-12) << beta;
        EXPECT_LE(std::abs(rb.worst_nontrivial_margin), 1e-10) << beta;
    }
}

TEST(ConeScan, PureConvection) {
    const PdeCoefficients c{2.0, -3.0, 0.0, 0.0, 0.0, 0.0};
    const GridSpec g{10, 10, 0.1, 0.1, 0.0};
    const ConeReport r = verify_cone_all_modes(c, g, {0.5, 0.1});
    EXPECT_EQ(r.worst_margin, 0.0);
    for (std::size_t k = 0; k < g.m1; ++k) {
        EXPECT_EQ(fourier_symbols(c, g, {0.5, 0.1}, {k, (3 * k) % 10}).z0, Complex(0.0, 0.0));
    }
}

TEST(ConeScan, RandomPositiveSemidefinite) {
    for (std::uint64_t s = 0; s < 500; ++s) {
        const CounterRng rng = CounterRng::stream(21, 0, s);
        const PdeCoefficients c = random_psd(rng, 0);
        const GridSpec g{3 + static_cast<std::size_t>(rng.bits(10) % 14),
                         3 + static_cast<std::size_t>(rng.bits(11) % 14),
                         0.01 + rng.uniform(12), 0.01 + rng.uniform(13),
                         2.0 * rng.uniform(14) - 1.0};
        const double dt = std::pow(10.0, 4.0 * rng.uniform(15) - 3.0);
        for (std::size_t k1 = 0; k1 < g.m1; ++k1) {
            for (std::size_t k2 = 0; k2 < g.m2; ++k2) {
                ASSERT_TRUE(stability::cone_condition(fourier_symbols(c, g, {0.5, dt}, {k1, k2}),
                                                      1e-12))
                    << s;
            }
        }
    }
}

TEST(Validation, RejectsBadInputs) {
    EXPECT_THROW((PdeCoefficients{0, 0, 1.0, 1.5, 1.5, 1.0}).validate(), DomainError);
    EXPECT_THROW((PdeCoefficients{0, 0, -0.1, 0.0, 0.0, 1.0}).validate(), DomainError);
    EXPECT_NO_THROW((PdeCoefficients{0, 0, 1.0, 1.0, 1.0, 1.0}).validate());
    EXPECT_THROW((GridSpec{2, 5, 0.1, 0.1, 0.0}).validate(), DomainError);
    EXPECT_THROW((GridSpec{5, 5, 0.1, 0.1, 1.5}).validate(), DomainError);
    EXPECT_THROW((GridSpec{5, 5, 0.0, 0.1, 0.0}).validate(), DomainError);
    EXPECT_THROW((SchemeParams{0.0, 1.0}).validate(), DomainError);
    EXPECT_THROW((SchemeParams{0.5, -1.0}).validate(), DomainError);
    EXPECT_THROW((FourierMode{5, 0}).validate(GridSpec{5, 5, 0.1, 0.1, 0.0}), DomainError);
}

}  // namespace
