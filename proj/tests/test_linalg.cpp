#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "support/oracles.hpp"
#include "wbell/linalg.hpp"

using namespace wbell;

namespace {

ComplexMatrix diag(std::initializer_list<double> d) {
    std::vector<cplx> c(d.begin(), d.end());
    return ComplexMatrix::diagonal(c);
}

} // namespace

TEST(ComplexMatrix, RejectsNonSquare) {
    EXPECT_THROW(ComplexMatrix(Eigen::MatrixXcd(2, 3)), DimensionError);
    EXPECT_THROW(ComplexMatrix(std::size_t{0}), DimensionError);
}

TEST(StateVector, NormalizesAndRejectsZero) {
    StateVector v{3.0, cplx(0, 4.0)};
    EXPECT_NEAR(v.eigen().norm(), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(v[0]), 0.6, 1e-15);
    EXPECT_THROW(StateVector({0.0, 0.0}), DomainError);
}

TEST(Kron, IdentityTimesIdentity) {
    EXPECT_EQ(max_abs_diff(kron(pauli_i(), pauli_i()), ComplexMatrix::identity(4)), 0.0);
}

TEST(Kron, ZZIsDiagonal) {
    EXPECT_EQ(max_abs_diff(kron(pauli_z(), pauli_z()), diag({1, -1, -1, 1})), 0.0);
}

TEST(Kron, XYSquaresToIdentity) {
    const auto xy = kron(pauli_x(), pauli_y());
    EXPECT_LE(max_abs_diff(xy * xy, ComplexMatrix::identity(4)), 1e-15);
}

TEST(Kron, EntryLayout) {
    std::mt19937_64 rng(11);
    const auto a = oracle::random_hermitian(2, rng);
    const auto b = oracle::random_hermitian(3, rng);
    const auto k = kron(a, b);
    ASSERT_EQ(k.dim(), 6u);
    for (std::size_t i1 = 0; i1 < 2; ++i1)
        for (std::size_t j1 = 0; j1 < 2; ++j1)
            for (std::size_t i2 = 0; i2 < 3; ++i2)
                for (std::size_t j2 = 0; j2 < 3; ++j2) EXPECT_EQ(k(i1 * 3 + i2, j1 * 3 + j2), a(i1, j1) * b(i2, j2));
}

TEST(Kron, Associative) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const auto a = oracle::random_hermitian(2, rng);
        const auto b = oracle::random_unitary(3, rng);
        const auto c = oracle::random_hermitian(2, rng);
        EXPECT_LE(max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))), 1e-12);
    }
}

TEST(PartialTrace, ProductState) {
    const auto rho = StateVector::basis(4, 0).projector();
    const auto r = partial_trace(rho, {2, 2}, {1});
    EXPECT_EQ(max_abs_diff(r, diag({1, 0})), 0.0);
}

TEST(PartialTrace, BellStateMarginalIsMaximallyMixed) {
    const double h = 1.0 / std::sqrt(2.0);
    const auto rho = StateVector{h, 0.0, 0.0, h}.projector();
    // direct index sum: (rho_B)_{ij} = sum_a rho_{(a,i),(a,j)}
    ComplexMatrix expect(2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) expect(i, j) = rho(i, j) + rho(2 + i, 2 + j);
    EXPECT_LE(max_abs_diff(expect, 0.5 * ComplexMatrix::identity(2)), 1e-15);
    EXPECT_LE(max_abs_diff(partial_trace(rho, {2, 2}, {1}), expect), 1e-15);
    EXPECT_LE(max_abs_diff(partial_trace(rho, {2, 2}, {0}), expect), 1e-15);
}

TEST(PartialTrace, KeepsSubsystemsInAscendingOrder) {
    std::mt19937_64 rng(5);
    const auto a = oracle::random_density(2, 2, rng);
    const auto b = oracle::random_density(3, 3, rng);
    const auto c = oracle::random_density(2, 1, rng);
    const auto abc = kron(kron(a, b), c);
    EXPECT_LE(max_abs_diff(partial_trace(abc, {2, 3, 2}, {0, 2}), kron(a, c)), 1e-12);
    EXPECT_LE(max_abs_diff(partial_trace(abc, {2, 3, 2}, {2, 0}), kron(a, c)), 1e-12);
    EXPECT_LE(max_abs_diff(partial_trace(abc, {2, 3, 2}, {1}), b), 1e-12);
}

TEST(PartialTrace, PreservesTrace) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const auto h = oracle::random_hermitian(12, rng);
        for (std::size_t keep : {0u, 1u, 2u}) {
            const std::size_t k[] = {keep};
            const std::size_t dims[] = {2, 3, 2};
            EXPECT_NEAR(std::abs(partial_trace(h, dims, k).trace() - h.trace()), 0.0, 1e-12);
        }
    }
}

TEST(PartialTrace, TracingEverythingGivesTheScalarTrace) {
    std::mt19937_64 rng(19);
    const auto h = oracle::random_hermitian(8, rng);
    const auto r = partial_trace(h, {2, 2, 2}, {});
    ASSERT_EQ(r.dim(), 1u);
    EXPECT_NEAR(std::abs(r(0, 0) - h.trace()), 0.0, 1e-12);
}

TEST(PartialTrace, Errors) {
    const auto rho = ComplexMatrix::identity(4);
    EXPECT_THROW(partial_trace(rho, {2, 3}, {0}), DimensionError);
    EXPECT_THROW(partial_trace(rho, {2, 2}, {2}), DimensionError);
    EXPECT_THROW(partial_trace(rho, {2, 2}, {0, 0}), DimensionError);
}

TEST(HermitianEigenvalues, Diagonal) {
    const auto ev = hermitian_eigenvalues(diag({3, 1, 2}));
    ASSERT_EQ(ev.size(), 3u);
    EXPECT_NEAR(ev[0], 3, 1e-14);
    EXPECT_NEAR(ev[1], 2, 1e-14);
    EXPECT_NEAR(ev[2], 1, 1e-14);
}

TEST(HermitianEigenvalues, PauliX) {
    const auto ev = hermitian_eigenvalues(pauli_x());
    EXPECT_NEAR(ev[0], 1, 1e-14);
    EXPECT_NEAR(ev[1], -1, 1e-14);
}

TEST(HermitianEigenvalues, OrthogonalGramMatchesCharacteristicPolynomial) {
    // T = diag(1,-1,1) is orthogonal, so T^T T = I.
    const std::array<std::array<double, 3>, 3> t{{{1, 0, 0}, {0, -1, 0}, {0, 0, 1}}};
    std::array<std::array<double, 3>, 3> g{};
    ComplexMatrix gm(3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            for (std::size_t k = 0; k < 3; ++k) g[i][j] += t[k][i] * t[k][j];
            gm(i, j) = g[i][j];
        }
    const auto oracle = oracle::symmetric3_eigenvalues(g);
    const auto ev = hermitian_eigenvalues(gm);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_NEAR(ev[i], 1.0, 1e-14);
        EXPECT_NEAR(ev[i], oracle[i], 1e-14);
    }
}

TEST(HermitianEigenvalues, RandomSymmetricMatchesCharacteristicPolynomial) {
    std::mt19937_64 rng(23);
    std::normal_distribution<double> gauss;
    for (int trial = 0; trial < 200; ++trial) {
        std::array<std::array<double, 3>, 3> a{};
        ComplexMatrix m(3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = i; j < 3; ++j) {
                a[i][j] = a[j][i] = gauss(rng);
                m(i, j) = m(j, i) = a[i][j];
            }
        const auto oracle = oracle::symmetric3_eigenvalues(a);
        const auto ev = hermitian_eigenvalues(m);
        for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(ev[i], oracle[i], 1e-10);
    }
}

TEST(HermitianEigenvalues, ReconstructsRandomMatricesUpTo64) {
    std::mt19937_64 rng(29);
    for (std::size_t dim : {1u, 2u, 5u, 8u, 16u, 33u, 64u}) {
        const auto h = oracle::random_hermitian(dim, rng);
        const auto es = hermitian_eigensystem(h);
        for (std::size_t i = 1; i < es.values.size(); ++i) EXPECT_GE(es.values[i - 1], es.values[i]);
        Eigen::VectorXd lam(static_cast<Eigen::Index>(dim));
        for (std::size_t i = 0; i < dim; ++i) lam(static_cast<Eigen::Index>(i)) = es.values[i];
        const Eigen::MatrixXcd rec = es.vectors * lam.asDiagonal() * es.vectors.adjoint();
        const double err = (h.eigen() - rec).norm();
        EXPECT_LE(err, 1e-9 * h.eigen().norm()) << "dim " << dim;
    }
}

TEST(HermitianEigenvalues, RejectsNonHermitian) {
    const ComplexMatrix m{{1.0, 1.0}, {0.0, 1.0}};
    EXPECT_THROW(hermitian_eigenvalues(m), DomainError);
    EXPECT_FALSE(is_hermitian(m));
}

TEST(Predicates, UnitaryAndPsd) {
    std::mt19937_64 rng(31);
    const auto u = oracle::random_unitary(8, rng);
    EXPECT_TRUE(is_unitary(u));
    EXPECT_LE((u.eigen().adjoint() * u.eigen() - Eigen::MatrixXcd::Identity(8, 8)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_TRUE(is_psd(oracle::random_density(8, 3, rng)));
    EXPECT_FALSE(is_psd(pauli_z()));
    EXPECT_FALSE(is_unitary(2.0 * pauli_x()));
}
