#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "statecopy/random.hpp"
#include "statecopy/state.hpp"

using namespace statecopy;

namespace {

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

void expect_amplitudes(const Ket& k, const std::vector<cplx>& ref, double tol = 1e-12) {
    ASSERT_EQ(k.dim(), ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) {
        EXPECT_NEAR(k[i].real(), ref[i].real(), tol) << "i=" << i;
        EXPECT_NEAR(k[i].imag(), ref[i].imag(), tol) << "i=" << i;
    }
}

}  // namespace

// ---------- Ket ----------

TEST(Ket, RejectsEmptyAndNormalizesZeroVectorWithError) {
    EXPECT_THROW(Ket("S", CVector(0)), ValidationError);
    EXPECT_THROW(Ket("S", {0.0, 0.0}).normalized(), ValidationError);
}

TEST(Ket, NormalizedHasUnitNorm) {
    const Ket k = Ket("S", {cplx(3, 0), cplx(0, 4)}).normalized();
    EXPECT_TRUE(k.is_normalized());
    EXPECT_NEAR(k.norm(), 1.0, 1e-15);
}

// ---------- tensor_product ----------

TEST(TensorProduct, BasisKroneckerOrdering) {
    expect_amplitudes(tensor_product(Ket("A", {1.0, 0.0}), Ket("B", {0.0, 1.0})), {0, 1, 0, 0});
    expect_amplitudes(tensor_product(Ket("A", {1.0, 0.0}), Ket("B", {1.0, 0.0})), {1, 0, 0, 0});
}

TEST(TensorProduct, UniformQubitSquared) {
    const Ket plus("S", {kInvSqrt2, kInvSqrt2});
    const Ket pp = tensor_product(plus, plus);
    expect_amplitudes(pp, {0.5, 0.5, 0.5, 0.5});
    EXPECT_NEAR(pp.norm(), 1.0, 1e-15);
}

TEST(TensorProduct, FirstFactorIsMajorIndex) {
    const Ket a("A", {1.0, 2.0, 3.0});
    const Ket b("B", {cplx(0, 1), 5.0});
    const Ket ab = tensor_product(a, b);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 2; ++j) EXPECT_EQ(ab[i * 2 + j], a[i] * b[j]);
}

TEST(TensorProduct, BilinearInFirstArgument) {
    StateRng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const Ket a = rng.ket(3), a2 = rng.ket(3), b = rng.ket(4);
        const cplx alpha = rng.complex_gaussian(), beta = rng.complex_gaussian();
        const Ket lhs = tensor_product(alpha * a + beta * a2, b);
        const Ket rhs = alpha * tensor_product(a, b) + beta * tensor_product(a2, b);
        EXPECT_LT(max_abs_diff(lhs, rhs), 1e-12);
    }
}

// ---------- inner_product / fidelity ----------

TEST(InnerProduct, Examples) {
    const Ket e0("S", {1.0, 0.0}), e1("S", {0.0, 1.0}), plus("S", {kInvSqrt2, kInvSqrt2});
    EXPECT_NEAR(std::abs(inner_product(e0, e0) - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(inner_product(e0, e1)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(inner_product(plus, e0) - kInvSqrt2), 0.0, 1e-15);
}

TEST(InnerProduct, ConjugatesFirstArgument) {
    const Ket a("S", {cplx(0, 1), 0.0}), b("S", {1.0, 0.0});
    EXPECT_EQ(inner_product(a, b), cplx(0, -1));
    EXPECT_EQ(inner_product(b, a), cplx(0, 1));
}

TEST(InnerProduct, DimensionMismatchThrows) {
    EXPECT_THROW(inner_product(Ket("S", {1.0}), Ket("S", {1.0, 0.0})), DimensionMismatch);
    EXPECT_THROW(fidelity(Ket("S", {1.0}), Ket("S", {1.0, 0.0})), DimensionMismatch);
}

TEST(Fidelity, Examples) {
    const Ket e0("S", {1.0, 0.0}), e1("S", {0.0, 1.0}), plus("S", {kInvSqrt2, kInvSqrt2});
    EXPECT_NEAR(fidelity(plus, plus), 1.0, 1e-15);
    EXPECT_NEAR(fidelity(e0, e1), 0.0, 1e-15);
    EXPECT_NEAR(fidelity(e0, plus), 0.5, 1e-15);
}

TEST(Fidelity, SymmetricAndPhaseInsensitive) {
    StateRng rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const Ket a = rng.ket(5), b = rng.ket(5);
        EXPECT_NEAR(fidelity(a, b), fidelity(b, a), 1e-14);
        const cplx phase = std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
        EXPECT_NEAR(fidelity(phase * a, b), fidelity(a, b), 1e-14);
        const double f = fidelity(a, b);
        EXPECT_GE(f, 0.0);
        EXPECT_LE(f, 1.0 + 1e-14);
    }
}

// ---------- apply ----------

TEST(Apply, IdentityAndSwap) {
    const Ket k("S", {cplx(0.6, 0.0), cplx(0.0, 0.8)});
    expect_amplitudes(apply(OperatorMatrix::identity(2), k), {k[0], k[1]});
    CMatrix x(2, 2);
    x << 0, 1, 1, 0;
    expect_amplitudes(apply(OperatorMatrix::unitary(x), Ket("S", {1.0, 0.0})), {0, 1});
}

TEST(Apply, DimensionMismatchThrows) {
    EXPECT_THROW(apply(OperatorMatrix::identity(3), Ket("S", {1.0, 0.0})), DimensionMismatch);
}

TEST(Apply, UnitaryPreservesNorm) {
    StateRng rng(21);
    for (std::size_t n = 1; n <= 8; ++n) {
        const OperatorMatrix u = rng.unitary(n);
        ASSERT_TRUE(u.flagged_unitary());
        for (int trial = 0; trial < 20; ++trial) EXPECT_NEAR(apply(u, rng.ket(n)).norm(), 1.0, 1e-10);
    }
}

// ---------- OperatorMatrix ----------

TEST(OperatorMatrix, CheckedFactoriesRejectViolations) {
    CMatrix m(2, 2);
    m << 1, 1, 0, 1;
    EXPECT_THROW(OperatorMatrix::unitary(m), ValidationError);
    EXPECT_THROW(OperatorMatrix::hermitian(m), ValidationError);
    CMatrix h(2, 2);
    h << 1, cplx(0, 1), cplx(0, -1), 2;
    EXPECT_TRUE(OperatorMatrix::hermitian(h).flagged_hermitian());
    EXPECT_FALSE(OperatorMatrix(h).flagged_hermitian());
}

TEST(OperatorMatrix, KronMatchesTensorProductOfKets) {
    StateRng rng(3);
    const OperatorMatrix a = rng.unitary(2), b = rng.unitary(3);
    const Ket x = rng.ket(2), y = rng.ket(3);
    EXPECT_LT(max_abs_diff(apply(kron(a, b), tensor_product(x, y)), tensor_product(apply(a, x), apply(b, y))), 1e-12);
}

// ---------- DensityMatrix / partial_trace ----------

TEST(DensityMatrix, ValidatesInvariants) {
    CMatrix bad_trace = CMatrix::Identity(2, 2);
    EXPECT_THROW(DensityMatrix{bad_trace}, ValidationError);
    CMatrix negative(2, 2);
    negative << 1.5, 0, 0, -0.5;
    EXPECT_THROW(DensityMatrix{negative}, ValidationError);
    CMatrix nonherm(2, 2);
    nonherm << 0.5, 0.1, 0.0, 0.5;
    EXPECT_THROW(DensityMatrix{nonherm}, ValidationError);
}

TEST(PartialTrace, ProductStateKeepA) {
    const Ket k = tensor_product(Ket("A", {1.0, 0.0}), Ket("B", {0.0, 1.0}));
    const DensityMatrix a = partial_trace(DensityMatrix::pure(k), 2, 2, Subsystem::A);
    EXPECT_LT(max_abs_diff(a.entries(), DensityMatrix::pure(Ket("A", {1.0, 0.0})).entries()), 1e-15);
}

TEST(PartialTrace, BellStateGivesMaximallyMixed) {
    const Ket bell("AB", {kInvSqrt2, 0.0, 0.0, kInvSqrt2});
    const DensityMatrix a = partial_trace(DensityMatrix::pure(bell), 2, 2, Subsystem::A);
    EXPECT_LT(max_abs_diff(a.entries(), DensityMatrix::maximally_mixed(2).entries()), 1e-15);
}

TEST(PartialTrace, SeparableMixtureKeepB) {
    // Hand contraction: rho_B[i][j] = sum_k rho[(k,i),(k,j)] = diag(1/2, 1/2).
    const std::vector<Ket> kets{Ket("AB", {1.0, 0.0, 0.0, 0.0}), Ket("AB", {0.0, 0.0, 0.0, 1.0})};
    const std::vector<double> w{0.5, 0.5};
    const DensityMatrix b = partial_trace(DensityMatrix::mixture(kets, w), 2, 2, Subsystem::B);
    CMatrix expected = CMatrix::Zero(2, 2);
    expected(0, 0) = 0.5;
    expected(1, 1) = 0.5;
    EXPECT_LT(max_abs_diff(b.entries(), expected), 1e-15);
}

TEST(PartialTrace, NonFactoringDimsThrow) {
    EXPECT_THROW(partial_trace(DensityMatrix::maximally_mixed(6), 4, 2, Subsystem::A), DimensionMismatch);
}

TEST(PartialTrace, RandomStatesGiveValidReducedStates) {
    StateRng rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t da = 1 + trial % 4, db = 1 + (trial / 4) % 4;
        const DensityMatrix rho = DensityMatrix::pure(rng.ket(da * db));
        for (auto keep : {Subsystem::A, Subsystem::B}) {
            const DensityMatrix r = partial_trace(rho, da, db, keep);  // constructor validates
            EXPECT_NEAR(std::abs(r.trace() - 1.0), 0.0, 1e-10);
            EXPECT_LT((r.entries() - r.entries().adjoint()).cwiseAbs().maxCoeff(), 1e-10);
        }
    }
}

// ---------- random ----------

TEST(StateRng, SeedIsDeterministic) {
    StateRng a(1234), b(1234), c(1235);
    const Ket x = a.ket(6), y = b.ket(6), z = c.ket(6);
    EXPECT_EQ(max_abs_diff(x, y), 0.0);
    EXPECT_GT(max_abs_diff(x, z), 0.0);
}

TEST(StateRng, FirstUniformMatchesReferenceEngine) {
    // mt19937_64 with the default seed 5489 produces 14514284786278117030 first.
    StateRng rng(5489);
    EXPECT_EQ(rng.uniform(), static_cast<double>(14514284786278117030ULL >> 11) * 0x1.0p-53);
}
