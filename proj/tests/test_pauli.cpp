#include <gtest/gtest.h>

#include <random>

#include "ffd/error.hpp"
#include "ffd/pauli.hpp"
#include "ffd/sector.hpp"
#include "util.hpp"

using namespace ffd;

namespace {

PauliString random_string(std::mt19937_64& rng, int n) {
  PauliString p(n);
  for (int m = 1; m <= n; ++m) p.set_letter(m, static_cast<Letter>(rng() % 4));
  p.set_phase(static_cast<int>(rng() % 4));
  return p;
}

double max_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST(Pauli, SingleSiteProducts) {
  auto X = PauliString::from_letters("X"), Y = PauliString::from_letters("Y"), Z = PauliString::from_letters("Z");
  EXPECT_EQ(X * Y, Z.with_phase(1));
  EXPECT_EQ(Y * X, Z.with_phase(3));
  EXPECT_EQ(Y * Z, X.with_phase(1));
  EXPECT_EQ(Z * X, Y.with_phase(1));
  EXPECT_TRUE((X * X).is_identity());
  EXPECT_EQ((Y * Y).phase(), 0);
}

TEST(Pauli, LettersAndString) {
  auto p = PauliString::from_letters("XIZY", 2);
  EXPECT_EQ(p.size(), 4);
  EXPECT_EQ(p.letter(1), Letter::X);
  EXPECT_EQ(p.letter(2), Letter::I);
  EXPECT_EQ(p.letter(4), Letter::Y);
  EXPECT_EQ(p.weight(), 3);
  EXPECT_EQ(p.lowest_site(), 1);
  EXPECT_EQ(p.highest_site(), 4);
  EXPECT_EQ(p.count_y(), 1);
  EXPECT_EQ(p.to_string(), "-XIZY");
  EXPECT_THROW(PauliString::from_letters("XQ"), Error);
}

TEST(Pauli, ProductMatchesKroneckerProperty) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 1 + static_cast<int>(rng() % 6);
    auto p = random_string(rng, n), q = random_string(rng, n);
    EXPECT_LT(max_diff(kron_matrix(p * q), kron_matrix(p) * kron_matrix(q)), 1e-14) << p.to_string() << q.to_string();
    Eigen::MatrixXcd pq = kron_matrix(p) * kron_matrix(q), qp = kron_matrix(q) * kron_matrix(p);
    EXPECT_EQ(p.commutes_with(q), max_diff(pq, qp) < 1e-12);
  }
}

TEST(Pauli, WideStringsAcrossWords) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 60 + static_cast<int>(rng() % 100);
    auto p = random_string(rng, n), q = random_string(rng, n), r = random_string(rng, n);
    EXPECT_EQ((p * q) * r, p * (q * r));
    auto pp = p.with_phase(0) * p.with_phase(0);
    EXPECT_TRUE(pp.is_identity());
    EXPECT_EQ(pp.phase(), 0);
  }
}

TEST(Pauli, GeneratorSupport) {
  EXPECT_EQ(make_h(1, 5).to_string(), "+XIIII");
  EXPECT_EQ(make_h(2, 5).to_string(), "+ZXIII");
  EXPECT_EQ(make_h(4, 5).to_string(), "+IZZXI");
  EXPECT_EQ(make_chi(Family::I, 4).to_string(), "+IIIZ");
  EXPECT_EQ(make_chi(Family::III, 3).to_string(), "+IIZ");
  EXPECT_EQ(make_chi(Family::II, 4).to_string(), "+IIZZ");
}

TEST(Pauli, GeneratorAlgebraExact) {
  for (int n = 1; n <= 80; n += 7) {
    for (int a = 1; a <= n; ++a) {
      auto ha = make_h(a, n);
      EXPECT_TRUE((ha * ha).is_identity());
      EXPECT_EQ((ha * ha).phase(), 0);
      for (int b = 1; b <= n; ++b) {
        if (a == b) continue;
        bool near = std::abs(a - b) <= 2;
        EXPECT_EQ(ha.commutes_with(make_h(b, n)), !near) << a << ' ' << b;
      }
    }
  }
}

TEST(Pauli, ChiAnticommutesWithEdgeOnly) {
  for (int M = 3; M <= 12; ++M) {
    auto chi = make_chi(Family::I, M);
    for (int m = 1; m <= M; ++m) EXPECT_EQ(chi.commutes_with(make_h(m, M)), m != M) << M << ' ' << m;
    if (M % 2 == 0) {
      auto chi2 = make_chi(Family::II, M);
      for (int m = 1; m <= M; ++m) EXPECT_EQ(chi2.commutes_with(make_h(m, M)), m < M - 1);
    }
  }
}

TEST(OperatorSum, AlgebraAndPruning) {
  auto X = PauliString::from_letters("XI"), Z = PauliString::from_letters("ZI");
  OperatorSum a(X, 2.0);
  a.add(Z, cplx(0, 1));
  OperatorSum b = a * a;
  EXPECT_NEAR(std::abs(b.coefficient(PauliString(2)) - cplx(3.0)), 0.0, 1e-15);
  EXPECT_EQ(b.term_count(), 1u);
  EXPECT_NEAR(commutator(OperatorSum(X), OperatorSum(Z)).norm1(), 2.0, 1e-15);
  EXPECT_NEAR(anticommutator(OperatorSum(X), OperatorSum(Z)).norm1(), 0.0, 1e-15);
  OperatorSum c = a - a;
  c.prune();
  EXPECT_TRUE(c.is_zero());
  EXPECT_NEAR((a.adjoint() - OperatorSum(X, 2.0) - OperatorSum(Z, cplx(0, -1))).norm1(), 0.0, 1e-15);
}

TEST(OperatorSum, GateSquare) {
  for (int m = 1; m <= 6; ++m) {
    double phi = 0.3 * m;
    OperatorSum g = make_gate(m, phi, 6);
    OperatorSum target = OperatorSum::identity(6, std::cos(phi));
    target.add(make_h(m, 6), cplx(0, std::sin(phi)));
    EXPECT_LT((g * g - target).norm1(), 1e-15);
    EXPECT_LT((g * g.adjoint() - OperatorSum::identity(6)).norm1(), 1e-15);
  }
}

TEST(ProductState, ExpectationsMatchDense) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 1 + static_cast<int>(rng() % 6);
    auto psi = test::random_state(rng, n);
    auto p = random_string(rng, n);
    auto v = psi.to_vector();
    Eigen::Map<Eigen::VectorXcd> vec(v.data(), static_cast<Eigen::Index>(v.size()));
    cplx dense = vec.dot(kron_matrix(p) * vec);
    EXPECT_LT(std::abs(dense - expect_product(p, psi)), 1e-13);
    std::vector<cplx> out(v.size(), 0.0);
    apply_add(p, v, out);
    Eigen::VectorXcd ref = kron_matrix(p) * vec;
    for (std::size_t i = 0; i < v.size(); ++i) EXPECT_LT(std::abs(out[i] - ref[i]), 1e-14);
  }
}

TEST(ProductState, RejectsUnnormalized) {
  EXPECT_THROW(ProductState({{1.0, 0.5}}), Error);
  EXPECT_NO_THROW(ProductState::tilted(4, 0.3));
  EXPECT_NEAR(ProductState::plus(2).letter_expectation(1, Letter::X).real(), 1.0, 1e-15);
}

TEST(Circuit, FamilyConstraints) {
  EXPECT_TRUE(family_accepts(Family::I, 1));
  EXPECT_FALSE(family_accepts(Family::II, 7));
  EXPECT_FALSE(family_accepts(Family::III, 8));
  EXPECT_TRUE(family_accepts(Family::III, 150));
  EXPECT_THROW(CircuitSpec::homogeneous(Family::II, 7, 1.0), Error);
  EXPECT_THROW(CircuitSpec::make(Family::I, 3, {1.0, 1.0}), Error);
  EXPECT_THROW(CircuitSpec::homogeneous(Family::I, 3, 1.5707963267948966), Error);
  EXPECT_EQ(mode_count(12), 4);
  EXPECT_EQ(mode_count(150), 50);
  EXPECT_EQ(mode_count(3), 1);
  try {
    CircuitSpec::homogeneous(Family::III, 7, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::argument);
  }
}

TEST(Circuit, GateOrderIsAPermutation) {
  for (auto [f, M] : test::small_cases()) {
    auto spec = CircuitSpec::homogeneous(f, M, 0.4);
    auto order = spec.gate_order();
    std::sort(order.begin(), order.end());
    for (int m = 1; m <= M; ++m) EXPECT_EQ(order[m - 1], m);
  }
}
