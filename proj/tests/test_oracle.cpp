#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ffd/error.hpp"
#include "ffd/oracle.hpp"
#include "util.hpp"

using namespace ffd;

namespace {

void expect_pass(const Report& r, const std::string& label) {
  for (const Check& c : r.checks) {
    EXPECT_TRUE(c.pass()) << label << ": " << c.name << " residual=" << c.residual << " tol=" << c.tolerance;
  }
}

}  // namespace

TEST(Report, FoldKeepsWorstPerName) {
  Report a, b;
  a.add("x", 1e-12, 1e-10);
  a.add("y", 1e-11, 1e-10);
  b.add("x", 3e-12, 1e-10);
  b.add("y", 2e-13, 1e-10);
  b.add("z", 0.5, 1e-10);
  a.fold(b);
  ASSERT_EQ(a.checks.size(), 3u);
  EXPECT_EQ(a.checks[0].residual, 3e-12);
  EXPECT_EQ(a.checks[1].residual, 1e-11);
  EXPECT_FALSE(a.pass());
  EXPECT_EQ(a.max_residual(), 0.5);
}

TEST(Report, NanFails) {
  Report a, b;
  a.add("x", 1e-12, 1e-10);
  b.add("x", std::nan(""), 1e-10);
  a.fold(b);
  EXPECT_FALSE(a.pass());
}

TEST(Report, MergeAppends) {
  Report a, b;
  a.add("x", 0, 1);
  b.add("x", 0, 1);
  a.merge(b);
  EXPECT_EQ(a.checks.size(), 2u);
  EXPECT_TRUE(a.pass());
}

TEST(Oracle, GeneratorAlgebraExact) {
  std::mt19937_64 rng(31);
  for (auto [f, M] : test::small_cases()) {
    Report r = verify_generator_algebra(test::random_spec(rng, f, M));
    EXPECT_EQ(r.max_residual(), 0.0) << to_string(f) << ' ' << M;
  }
}

TEST(Oracle, CommutingFamilyAndChains) {
  std::mt19937_64 rng(32);
  for (auto [f, M] : test::small_cases(8)) {
    auto spec = test::random_spec(rng, f, M);
    auto wide = make_basis(spec, M + 2);
    cplx u = test::random_u(rng), v = test::random_u(rng);
    std::string label = std::string(to_string(f)) + " M=" + std::to_string(M);
    expect_pass(verify_commuting_family(spec, u, v, wide), label);
    expect_pass(verify_scalar_chains(spec, u, wide), label);
    expect_pass(verify_mode_identities(spec, u, v, make_basis(spec, M)), label);
  }
}

TEST(Oracle, FermionsDiagonalFormAndExpansion) {
  std::mt19937_64 rng(33);
  for (auto [f, M] : test::small_cases(9)) {
    auto spec = test::random_spec(rng, f, M);
    auto basis = make_basis(spec, M);
    auto sd = solve_spectrum(spec);
    Fermions fer = build_fermions(spec, sd, basis);
    std::vector<cplx> probes{test::random_u(rng), test::random_u(rng), test::random_u(rng)};
    std::string label = std::string(to_string(f)) + " M=" + std::to_string(M);
    expect_pass(verify_fermions(spec, sd, fer, basis, probes), label);
    expect_pass(verify_diagonal_form(spec, sd, fer, basis, probes), label);
    if (f == Family::III) {
      expect_pass(verify_chi_expansion(spec, sd, fer), label);
      EXPECT_NEAR(fer.c0_squared, sd.c0_squared, 1e-10) << label;
    } else {
      expect_pass(verify_charge(spec, basis), label);
    }
  }
}

TEST(Oracle, BrokenPhaseIsDetected) {
  auto spec = CircuitSpec::homogeneous(Family::III, 6, 0.7);
  auto basis = make_basis(spec, 6);
  auto sd = solve_spectrum(spec);
  sd.roots[0] *= 1.001;
  sd.pseudoenergies[0] = std::atan(1.0 / sd.roots[0]);
  Fermions fer = build_fermions(spec, sd, basis);
  std::vector<cplx> probes{cplx(0.3, 0.1)};
  EXPECT_FALSE(verify_diagonal_form(spec, sd, fer, basis, probes).pass());
}

TEST(Oracle, DenseLimit) {
  try {
    auto spec = CircuitSpec::homogeneous(Family::I, 13, 0.5);
    build_floquet(spec, make_basis(spec, 13));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::resource);
  }
  try {
    build_charge(CircuitSpec::homogeneous(Family::III, 6, 0.5));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::unsupported);
  }
}

TEST(Oracle, ChargeCommutesWithFloquet) {
  std::mt19937_64 rng(34);
  for (Family f : {Family::I, Family::II}) {
    for (int M : {4, 6, 8, 10}) {
      auto spec = test::random_spec(rng, f, M);
      auto basis = make_basis(spec, M);
      DenseOp H = DenseOp::from_sum(basis, build_charge(spec));
      DenseOp V = build_floquet(spec, basis);
      EXPECT_LT(commutator(H, V).norm(), 1e-10) << to_string(f) << ' ' << M;
      EXPECT_GT(H.off_scalar_norm(), 0.1);
    }
  }
}
