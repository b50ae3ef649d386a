#include <gtest/gtest.h>

#include <random>

#include "ffd/oracle.hpp"
#include "ffd/sector.hpp"
#include "util.hpp"

using namespace ffd;

namespace {

double max_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST(SectorBasis, FullModeReproducesKronecker) {
  std::mt19937_64 rng(2);
  for (auto [f, M] : test::small_cases(7)) {
    auto spec = test::random_spec(rng, f, M);
    auto basis = make_basis(spec, M, SectorBasis::Mode::full);
    std::size_t total = 0;
    for (int b = 0; b < basis->block_count(); ++b) total += basis->block_dim(b) * basis->multiplicity(b);
    EXPECT_EQ(total, basis->dim());
    for (int m = 1; m <= M; ++m) {
      auto h = make_h(m, M);
      EXPECT_LT(max_diff(DenseOp::pauli(basis, h).to_matrix(), kron_matrix(h)), 1e-13);
    }
    auto chi = make_chi(f, M);
    EXPECT_LT(max_diff(DenseOp::pauli(basis, chi).to_matrix(), kron_matrix(chi)), 1e-13);
    auto gate = make_gate(1, 0.7, M) * make_gate(M, 0.3, M);
    EXPECT_LT(max_diff(DenseOp::from_sum(basis, gate).to_matrix(), kron_matrix(gate)), 1e-13);
  }
}

TEST(SectorBasis, BlocksAreUnitary) {
  auto spec = CircuitSpec::homogeneous(Family::III, 6, 0.5);
  auto basis = make_basis(spec, 6, SectorBasis::Mode::full);
  Eigen::MatrixXcd all(basis->dim(), 0);
  for (int b = 0; b < basis->block_count(); ++b) {
    Eigen::MatrixXcd E = basis->block_isometry(b);
    Eigen::MatrixXcd joined(all.rows(), all.cols() + E.cols());
    joined << all, E;
    all = joined;
  }
  EXPECT_EQ(all.cols(), static_cast<Eigen::Index>(basis->dim()));
  EXPECT_LT(max_diff(all.adjoint() * all, Eigen::MatrixXcd::Identity(all.cols(), all.cols())), 1e-13);
}

TEST(SectorBasis, RepresentativeModeAgreesOnAlgebraElements) {
  std::mt19937_64 rng(8);
  for (auto [f, M] : {std::pair{Family::I, 5}, {Family::II, 6}, {Family::III, 6}}) {
    auto spec = test::random_spec(rng, f, M);
    auto full = make_basis(spec, M, SectorBasis::Mode::full);
    auto rep = make_basis(spec, M);
    DenseOp Vf = build_floquet(spec, full), Vr = build_floquet(spec, rep);
    EXPECT_NEAR(Vf.norm(), Vr.norm(), 1e-12);
    auto ef = Vf.eigenvalues(), er = Vr.eigenvalues();
    EXPECT_LT(multiset_distance(ef, er), 1e-10);
    DenseOp chi = DenseOp::pauli(rep, make_chi(f, M));
    EXPECT_LT((chi * chi - DenseOp(rep, 1.0)).norm(), 1e-14);
  }
}

TEST(SectorBasis, ExpectationMatchesDenseVector) {
  std::mt19937_64 rng(4);
  auto spec = test::random_spec(rng, Family::III, 6);
  auto basis = make_basis(spec, 6, SectorBasis::Mode::full);
  DenseOp V = build_floquet(spec, basis);
  auto psi = test::random_state(rng, 6).to_vector();
  Eigen::Map<Eigen::VectorXcd> v(psi.data(), static_cast<Eigen::Index>(psi.size()));
  cplx ref = v.dot(V.to_matrix() * v);
  EXPECT_LT(std::abs(V.expectation(psi) - ref), 1e-13);
}

TEST(DenseOp, ScalarAndAdjoint) {
  auto spec = CircuitSpec::homogeneous(Family::I, 4, 0.6);
  auto basis = make_basis(spec, 4);
  DenseOp s(basis, cplx(2.0, 1.0));
  EXPECT_NEAR(std::abs(s.scalar_part() - cplx(2.0, 1.0)), 0.0, 1e-15);
  EXPECT_NEAR(s.off_scalar_norm(), 0.0, 1e-15);
  DenseOp V = build_floquet(spec, basis);
  EXPECT_LT((V * V.adjoint() - DenseOp(basis, 1.0)).norm(), 1e-13);
  EXPECT_LT((V.times_pauli(make_h(2, 4)) - V * DenseOp::pauli(basis, make_h(2, 4))).norm(), 1e-14);
  EXPECT_LT((V.pauli_times(make_h(2, 4)) - DenseOp::pauli(basis, make_h(2, 4)) * V).norm(), 1e-14);
}

TEST(MultisetDistance, PairsNearestAndRejectsSizeMismatch) {
  std::vector<cplx> a{1.0, cplx(0, 1), -1.0}, b{-1.0, 1.0 + 1e-9, cplx(0, 1)};
  EXPECT_NEAR(multiset_distance(a, b), 1e-9, 1e-12);
  EXPECT_TRUE(std::isinf(multiset_distance(a, {1.0})));
  std::vector<cplx> c{1.0, 1.0, -1.0}, d{1.0, -1.0, -1.0};
  EXPECT_NEAR(multiset_distance(c, d), 2.0, 1e-15);
}
