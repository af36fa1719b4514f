#include "ssbsim/qcore.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "ssbsim/measurement.hpp"
#include "test_util.hpp"

using namespace ssbsim;
using testutil::expect_ket_near;
using testutil::expect_matrix_near;

namespace {

constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;

Ket make_ket2(Cx a, Cx b) {
    Vec v(2);
    v << a, b;
    return Ket(std::move(v));
}

}  // namespace

TEST(ApplyOperator, IdentityLeavesStateUnchanged) {
    const Ket psi = make_ket2(Cx(0.6, 0.0), Cx(0.0, 0.8));
    const Ket out = apply_operator(Operator::identity(2), psi);
    expect_ket_near(out, psi.amps(), 0.0);
}

TEST(ApplyOperator, BalancedMeasurementUnitaryNeedsNoRenormalization) {
    const QubitAmplitudes amps = QubitAmplitudes::balanced();
    const Ket out = apply_operator(ssb_unitary(amps, 0), amps.ket());
    Vec expected(2);
    expected << Cx(1, 0), Cx(0, 0);
    expect_ket_near(out, expected, 1e-12);
    EXPECT_NEAR(out.norm(), 1.0, 1e-12);
}

TEST(ApplyOperator, ProjectorKeepsOneComponent) {
    const Ket psi = make_ket2(Cx(0.6, 0.0), Cx(0.48, 0.64));
    const Ket out = apply_operator(projector(0), psi);
    Vec expected(2);
    expected << Cx(0.6, 0.0), Cx(0, 0);
    expect_ket_near(out, expected, 0.0);
}

TEST(ApplyOperator, DimensionMismatchThrows) {
    EXPECT_THROW(apply_operator(Operator::identity(4), Ket::basis(2, 0)),
                 ContractViolation);
}

TEST(TensorProduct, BasisEmbedding) {
    const Ket out = tensor_product(Ket::basis(2, 0), Ket::basis(2, 1));
    Vec expected = Vec::Zero(4);
    expected(1) = Cx(1, 0);
    expect_ket_near(out, expected, 0.0);
}

TEST(TensorProduct, BuildsPsiPlus) {
    const Ket a = tensor_product(Ket::basis(2, 0), Ket::basis(2, 1));
    const Ket b = tensor_product(Ket::basis(2, 1), Ket::basis(2, 0));
    const Ket combined = Ket(kInvSqrt2 * (a.amps() + b.amps()));
    expect_ket_near(combined, bell_state(BellKind::PsiPlus).amps(), 1e-15);
}

TEST(TensorProduct, IdentityTimesIdentity) {
    const Operator out = tensor_product(Operator::identity(2), Operator::identity(2));
    expect_matrix_near(out.matrix(), Mat::Identity(4, 4), 0.0);
}

TEST(TensorProduct, EntriesMatchIndexFormula) {
    RandomStream rng(11, 0);
    for (int iter = 0; iter < 50; ++iter) {
        Mat a(2, 2);
        Mat b(2, 2);
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                a(i, j) = testutil::complex_gaussian(rng);
                b(i, j) = testutil::complex_gaussian(rng);
            }
        }
        const Operator prod = tensor_product(Operator(a), Operator(b));
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                for (int k = 0; k < 2; ++k) {
                    for (int l = 0; l < 2; ++l) {
                        const Cx expected = a(i, k) * b(j, l);
                        const Cx got = prod.matrix()(i * 2 + j, k * 2 + l);
                        EXPECT_EQ(got, expected);
                    }
                }
            }
        }
    }
}

TEST(Purity, PureState) {
    EXPECT_NEAR(purity(DensityMatrix::pure(Ket::basis(2, 0))), 1.0, 1e-15);
}

TEST(Purity, MaximallyMixedQubit) {
    const DensityMatrix rho = DensityMatrix::from_matrix(0.5 * Mat::Identity(2, 2));
    EXPECT_NEAR(purity(rho), 0.5, 1e-15);
}

TEST(Purity, DiagonalMixture) {
    Mat m = Mat::Zero(2, 2);
    m(0, 0) = Cx(0.36, 0);
    m(1, 1) = Cx(0.64, 0);
    const double oracle = 0.36 * 0.36 + 0.64 * 0.64;
    EXPECT_NEAR(oracle, 0.5392, 1e-15);
    EXPECT_NEAR(purity(DensityMatrix::from_matrix(m)), oracle, 1e-15);
}

TEST(FidelityPure, SelfFidelityIsOne) {
    RandomStream rng(3, 0);
    const Ket psi = testutil::random_unit_ket(rng, 4);
    EXPECT_NEAR(fidelity_pure(psi, DensityMatrix::pure(psi)), 1.0, 1e-12);
}

TEST(FidelityPure, OrthogonalIsZero) {
    EXPECT_NEAR(fidelity_pure(Ket::basis(2, 0), DensityMatrix::pure(Ket::basis(2, 1))),
                0.0, 1e-15);
}

TEST(FidelityPure, PsiPlusAgainstDephasedMixture) {
    // <Psi+|rho|Psi+> expanded by hand for rho = (|01><01| + |10><10|)/2:
    // each projector contributes |<Psi+|b>|^2 / 2 = 1/4, total 1/2.
    Mat mixed = Mat::Zero(4, 4);
    mixed(1, 1) = Cx(0.5, 0);
    mixed(2, 2) = Cx(0.5, 0);
    EXPECT_NEAR(fidelity_pure(bell_state(BellKind::PsiPlus),
                              DensityMatrix::from_matrix(mixed)),
                0.5, 1e-15);
}

TEST(FidelityPure, DimensionMismatchThrows) {
    EXPECT_THROW(
        fidelity_pure(Ket::basis(4, 0), DensityMatrix::pure(Ket::basis(2, 0))),
        ContractViolation);
}

TEST(AssertUnitary, MeasurementUnitariesPass) {
    RandomStream rng(7, 0);
    for (int i = 0; i < 1000; ++i) {
        const QubitAmplitudes amps = QubitAmplitudes::random(rng);
        EXPECT_TRUE(assert_unitary(ssb_unitary(amps, 0), 1e-12));
        EXPECT_TRUE(assert_unitary(ssb_unitary(amps, 1), 1e-12));
    }
}

TEST(AssertUnitary, ProjectorFails) {
    EXPECT_FALSE(assert_unitary(projector(0), 1e-12));
}

TEST(AssertUnitary, IdentityPasses) {
    EXPECT_TRUE(assert_unitary(Operator::identity(2), 1e-12));
}

TEST(AssertUnitary, NormPreservedWheneverCheckPasses) {
    RandomStream rng(19, 0);
    for (int i = 0; i < 200; ++i) {
        const Operator u = testutil::random_unitary(rng, 4);
        ASSERT_TRUE(assert_unitary(u, 1e-12));
        const Ket psi = testutil::random_unit_ket(rng, 4);
        EXPECT_NEAR(apply_operator(u, psi).norm(), 1.0, 1e-12);
    }
}

TEST(PurityProperty, OneExactlyForPrincipalEigenvectorReconstruction) {
    RandomStream rng(23, 0);
    for (int i = 0; i < 100; ++i) {
        const bool make_pure = i % 2 == 0;
        const DensityMatrix rho =
            make_pure ? DensityMatrix::pure(testutil::random_unit_ket(rng, 4))
                      : testutil::random_density(rng, 4);

        Eigen::SelfAdjointEigenSolver<Mat> solver(rho.matrix());
        const Vec principal = solver.eigenvectors().col(rho.dim() - 1);
        const Mat reconstructed = principal * principal.adjoint();
        const bool equals_outer = max_abs(rho.matrix() - reconstructed) <= 1e-10;
        const bool unit_purity = std::abs(purity(rho) - 1.0) <= 1e-12;
        EXPECT_EQ(unit_purity, equals_outer) << "iteration " << i;
        EXPECT_EQ(unit_purity, make_pure) << "iteration " << i;
    }
}

TEST(Invariance, GlobalPhaseOfTarget) {
    RandomStream rng(29, 0);
    for (int i = 0; i < 100; ++i) {
        const Ket psi = testutil::random_unit_ket(rng, 4);
        const DensityMatrix rho = testutil::random_density(rng, 4);
        const Cx phase = std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
        const Ket rotated = Ket(phase * psi.amps());
        EXPECT_NEAR(fidelity_pure(psi, rho), fidelity_pure(rotated, rho), 1e-12);
        EXPECT_NEAR(ray_fidelity(psi, rotated), 1.0, 1e-12);
    }
}

TEST(Invariance, PurityUnderUnitaryConjugation) {
    RandomStream rng(31, 0);
    for (int i = 0; i < 100; ++i) {
        const DensityMatrix rho = testutil::random_density(rng, 4);
        const Operator u = testutil::random_unitary(rng, 4);
        const DensityMatrix rotated = DensityMatrix::from_matrix(
            u.matrix() * rho.matrix() * u.matrix().adjoint());
        EXPECT_NEAR(purity(rotated), purity(rho), 1e-12);
    }
}

TEST(TraceDistance, BasicValues) {
    const DensityMatrix zero = DensityMatrix::pure(Ket::basis(2, 0));
    const DensityMatrix one = DensityMatrix::pure(Ket::basis(2, 1));
    EXPECT_NEAR(trace_distance(zero, zero), 0.0, 1e-15);
    EXPECT_NEAR(trace_distance(zero, one), 1.0, 1e-12);
}

TEST(DomainTypes, RejectNonFiniteEntries) {
    Vec v(2);
    v << Cx(std::numeric_limits<double>::quiet_NaN(), 0), Cx(0, 0);
    EXPECT_THROW(Ket{v}, ContractViolation);

    Mat m = Mat::Identity(2, 2);
    m(0, 1) = Cx(std::numeric_limits<double>::infinity(), 0);
    EXPECT_THROW(Operator{m}, ContractViolation);
}

TEST(DomainTypes, DensityMatrixInvariantsEnforced) {
    Mat not_hermitian = Mat::Identity(2, 2) * 0.5;
    not_hermitian(0, 1) = Cx(0.1, 0);
    EXPECT_THROW(DensityMatrix::from_matrix(not_hermitian), ContractViolation);

    EXPECT_THROW(DensityMatrix::from_matrix(Mat::Identity(2, 2)), ContractViolation);

    Mat indefinite = Mat::Zero(2, 2);
    indefinite(0, 0) = Cx(1.5, 0);
    indefinite(1, 1) = Cx(-0.5, 0);
    EXPECT_THROW(DensityMatrix::from_matrix(indefinite), ContractViolation);
}

TEST(DomainTypes, NormalizedLabel) {
    EXPECT_TRUE(QubitAmplitudes::balanced().ket().is_normalized());
    EXPECT_FALSE(make_ket2(Cx(1, 0), Cx(1, 0)).is_normalized());
    EXPECT_TRUE(make_ket2(Cx(1, 0), Cx(1, 0)).normalized().is_normalized());
    EXPECT_THROW(make_ket2(Cx(0, 0), Cx(0, 0)).normalized(), ContractViolation);
}
