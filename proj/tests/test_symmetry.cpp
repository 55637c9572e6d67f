#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "statecopy/symmetry.hpp"

using namespace statecopy;

TEST(HalfInteger, ArithmeticAndFormatting) {
    EXPECT_EQ(half(1) + half(1), HalfInteger(1));
    EXPECT_EQ((HalfInteger(2) - half(3)).twice(), 1);
    EXPECT_EQ(half(3).str(), "3/2");
    EXPECT_EQ(HalfInteger(-2).str(), "-2");
    EXPECT_DOUBLE_EQ(half(5).value(), 2.5);
}

TEST(Irrep, NegativeSpinRejected) {
    EXPECT_THROW(IrrepLabel(HalfInteger(-1)), std::invalid_argument);
    EXPECT_EQ(photon_irrep(), IrrepLabel(1, Parity::Odd));
}

TEST(Decompose, Examples) {
    const auto one_one = decompose_product(IrrepLabel(1), IrrepLabel(1));
    ASSERT_EQ(one_one.size(), 3u);
    EXPECT_EQ(one_one[0].j, HalfInteger(0));
    EXPECT_EQ(one_one[1].j, HalfInteger(1));
    EXPECT_EQ(one_one[2].j, HalfInteger(2));

    const auto spins = decompose_product(IrrepLabel(half(1)), IrrepLabel(half(1)));
    ASSERT_EQ(spins.size(), 2u);
    EXPECT_EQ(spins[0].j, HalfInteger(0));
    EXPECT_EQ(spins[1].j, HalfInteger(1));

    const auto p_photon = decompose_product(IrrepLabel(1, Parity::Odd), photon_irrep());
    for (const auto& irrep : p_photon) EXPECT_EQ(irrep.parity, Parity::Even);
    EXPECT_EQ(decompose_product(IrrepLabel(1, Parity::Odd), IrrepLabel(0)).front().parity, Parity::Unspecified);
}

TEST(Decompose, DimensionCount) {
    for (int a = 0; a <= 10; ++a)
        for (int b = 0; b <= 10; ++b) {
            int total = 0;
            for (const auto& irrep : decompose_product(IrrepLabel(half(a)), IrrepLabel(half(b)))) total += irrep.dimension();
            EXPECT_EQ(total, (a + 1) * (b + 1));
        }
}

TEST(Decompose, MultiplicityMatchesJSquaredSpectrum) {
    for (int a = 0; a <= 6; ++a)
        for (int b = 0; b <= 6; ++b) {
            const auto irreps = decompose_product(IrrepLabel(half(a)), IrrepLabel(half(b)));
            for (int tJ = 0; tJ <= a + b + 2; ++tJ) {
                int count = 0;
                for (const auto& irrep : irreps) count += irrep.j.twice() == tJ;
                EXPECT_EQ(count, oracle::multiplicity_by_diagonalization(a, b, tJ)) << a << " " << b << " " << tJ;
            }
        }
}

TEST(Contains, Examples) {
    const IrrepLabel s_even(0, Parity::Even), p_odd(1, Parity::Odd), d_even(2, Parity::Even);
    EXPECT_TRUE(contains(s_even, p_odd, photon_irrep()));
    EXPECT_FALSE(contains(s_even, s_even, photon_irrep()));
    EXPECT_FALSE(contains(s_even, d_even, photon_irrep()));
    EXPECT_TRUE(contains(p_odd, d_even, photon_irrep()));
    EXPECT_FALSE(contains(p_odd, p_odd, photon_irrep()));
    // Without parity the triangle rule alone decides.
    EXPECT_TRUE(contains(IrrepLabel(0), IrrepLabel(1), IrrepLabel(1)));
}

TEST(Contains, AgreesWithBruteForceTriangleScan) {
    for (int a = 0; a <= 8; ++a)
        for (int b = 0; b <= 8; ++b)
            for (int t = 0; t <= 18; ++t) {
                // Brute force: some product weight m1 + m2 reaches M = J, and the
                // J^2 spectrum contains J.
                const bool expected = oracle::multiplicity_by_diagonalization(a, b, t) > 0;
                EXPECT_EQ(contains(IrrepLabel(half(t)), IrrepLabel(half(a)), IrrepLabel(half(b))), expected)
                    << a << " " << b << " " << t;
            }
}

TEST(ContainsWeight, RequiresWeightConservationAndNonzeroCoefficient) {
    const IrrepLabel g(0, Parity::Even), e(1, Parity::Odd);
    EXPECT_TRUE(contains_weight(g, 0, e, 1, photon_irrep(), -1));
    EXPECT_FALSE(contains_weight(g, 0, e, 1, photon_irrep(), 0));
    // <1 0; 1 0 | 1 0> = 0 even though the weights add up.
    EXPECT_FALSE(contains_weight(IrrepLabel(1), 0, IrrepLabel(1), 0, IrrepLabel(1), 0));
    EXPECT_TRUE(contains_weight(IrrepLabel(2), 0, IrrepLabel(1), 0, IrrepLabel(1), 0));
}

TEST(ClebschGordan, KnownValues) {
    EXPECT_NEAR(clebsch_gordan(half(1), half(1), half(1), half(-1), 1, 0), 1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(clebsch_gordan(half(1), half(1), half(1), half(-1), 0, 0), 1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(clebsch_gordan(half(1), half(-1), half(1), half(1), 0, 0), -1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(clebsch_gordan(1, 1, 1, -1, 0, 0), 1.0 / std::sqrt(3.0), 1e-15);
    EXPECT_NEAR(clebsch_gordan(1, 0, 1, 0, 0, 0), -1.0 / std::sqrt(3.0), 1e-15);
    EXPECT_NEAR(clebsch_gordan(1, 1, 1, 1, 2, 2), 1.0, 1e-15);
    EXPECT_EQ(clebsch_gordan(1, 0, 1, 0, 1, 0), 0.0);
}

TEST(ClebschGordan, OutsideSupportIsZero) {
    EXPECT_EQ(clebsch_gordan(1, 1, 1, 0, 2, 0), 0.0);     // M != m1 + m2
    EXPECT_EQ(clebsch_gordan(1, 0, 1, 0, 3, 0), 0.0);     // triangle
    EXPECT_EQ(clebsch_gordan(1, 2, 1, -2, 2, 0), 0.0);    // |m| > j
    EXPECT_EQ(clebsch_gordan(1, 0, half(1), half(1), 1, half(1)), 0.0);  // integrality
    EXPECT_THROW(clebsch_gordan(21, 0, 1, 0, 21, 0), std::out_of_range);
}

TEST(ClebschGordan, MatchesDiagonalizationOracle) {
    for (int a = 0; a <= 6; ++a)
        for (int b = 0; b <= 6; ++b) {
            const auto ref = oracle::clebsch_gordan_by_diagonalization(a, b);
            for (const auto& [key, value] : ref) {
                const auto [tm1, tm2, tJ, tM] = key;
                const double got = clebsch_gordan(half(a), half(tm1), half(b), half(tm2), half(tJ), half(tM));
                EXPECT_NEAR(got, value, 1e-10) << a << " " << b << " " << tm1 << " " << tm2 << " " << tJ;
            }
        }
}

TEST(CGTable, OrthogonalityUpToThree) {
    for (int a = 0; a <= 6; ++a)
        for (int b = 0; b <= 6; ++b) {
            const CGTable t(half(a), half(b));
            EXPECT_LT(t.column_orthogonality_error(), 1e-12);
            EXPECT_LT(t.row_orthogonality_error(), 1e-12);
        }
}

TEST(CGTable, LargeSpinStaysOrthogonal) {
    const CGTable t(10, half(15));
    EXPECT_LT(t.column_orthogonality_error(), 1e-10);
    EXPECT_LT(t.row_orthogonality_error(), 1e-10);
}
