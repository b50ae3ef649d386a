#include <gtest/gtest.h>

#include <algorithm>
#include <chrono>
#include <functional>
#include <random>

#include "ffd/error.hpp"
#include "ffd/mpo.hpp"
#include "ffd/oracle.hpp"
#include "util.hpp"

using namespace ffd;

namespace {

std::vector<Selector> selectors(Family f) {
  if (f == Family::I) return {Selector::a, Selector::b, Selector::c};
  return {Selector::a, Selector::b, Selector::c, Selector::d};
}

double median_seconds(const std::function<void()>& fn, int reps) {
  std::vector<double> t;
  for (int r = 0; r < reps; ++r) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    t.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  std::sort(t.begin(), t.end());
  return t[t.size() / 2];
}

}  // namespace

TEST(OmegaChain, LocalizedMatchesDirectEvaluation) {
  std::mt19937_64 rng(21);
  for (auto [f, M] : test::small_cases(7)) {
    auto spec = test::random_spec(rng, f, M);
    cplx u = test::random_u(rng);
    for (Selector sel : selectors(f)) {
      auto chain = build_omega_chain(spec, u, sel);
      OperatorSum direct = evaluate(chain);
      OperatorSum local = evaluate(localize(chain));
      EXPECT_LT((direct - local).norm1(), 1e-12 * std::max(1.0, direct.norm1()))
          << to_string(f) << ' ' << M << ' ' << static_cast<int>(sel);
    }
  }
}

TEST(OmegaChain, MatchesOperatorRecursion) {
  std::mt19937_64 rng(22);
  for (auto [f, M] : {std::pair{Family::I, 4}, {Family::I, 6}, {Family::II, 4}, {Family::III, 3}, {Family::III, 6}}) {
    auto spec = test::random_spec(rng, f, M);
    cplx u = test::random_u(rng);
    auto basis = make_basis(spec, M + 2);
    TransferOps ops = build_abcd(spec, u, basis);
    std::vector<std::pair<Selector, const DenseOp*>> pairs{
        {Selector::a, &ops.A}, {Selector::b, &ops.B}, {Selector::c, &ops.C}};
    if (f != Family::I) pairs.emplace_back(Selector::d, &ops.D);
    for (auto [sel, ref] : pairs) {
      DenseOp chain = DenseOp::from_sum(basis, evaluate(build_omega_chain(spec, u, sel, M + 2)));
      EXPECT_LT((chain - *ref).norm(), 1e-12 * std::max(1.0, ref->norm()))
          << to_string(f) << ' ' << M << ' ' << static_cast<int>(sel);
    }
  }
}

TEST(OmegaChain, ZeroSpectralParameterGivesPhaseProduct) {
  auto spec = CircuitSpec::make(Family::III, 6, {0.3, 0.5, 0.7, 0.9, 1.1, 1.2});
  OperatorSum A = evaluate(build_omega_chain(spec, 0.0, Selector::a));
  double p = 1;
  for (int m = 1; m <= 6; ++m) p *= spec.x(m);
  OperatorSum ref = OperatorSum::identity(6, p);
  EXPECT_LT((A - ref).norm1(), 1e-14);
}

TEST(OmegaChain, RejectsBadArguments) {
  auto spec = CircuitSpec::homogeneous(Family::I, 4, 0.5);
  EXPECT_THROW(build_omega_chain(spec, 0.3, Selector::d), Error);
  EXPECT_THROW(build_omega_chain(spec, 0.3, Selector::b, 4), Error);
  EXPECT_THROW(parse_selector('e'), Error);
}

TEST(LocalMpo, BondDimensionBounded) {
  for (Family f : {Family::I, Family::II, Family::III}) {
    int bound = f == Family::I ? 4 : f == Family::II ? 7 : 14;
    for (int M : {6, 12, 60}) {
      auto spec = CircuitSpec::homogeneous(f, M, 1.0);
      auto mpo = localize(build_omega_chain(spec, cplx(0, 0.7), Selector::a));
      EXPECT_EQ(mpo.num_sites(), M);
      EXPECT_LE(mpo.max_bond(), bound) << to_string(f) << ' ' << M;
    }
  }
}

TEST(Sandwich, MatchesOperatorExpectation) {
  std::mt19937_64 rng(23);
  for (auto [f, M] : {std::pair{Family::I, 5}, {Family::II, 6}, {Family::III, 6}}) {
    auto spec = test::random_spec(rng, f, M);
    cplx u = test::random_u(rng), v = test::random_u(rng);
    auto L = build_omega_chain(spec, u, Selector::a);
    auto R = build_omega_chain(spec, v, Selector::a);
    auto chi = make_chi(f, M);
    auto psi = test::random_state(rng, M);
    cplx ref = expect_product(evaluate(L) * OperatorSum(chi) * evaluate(R), psi);
    cplx got = sandwich(localize(L), chi, localize(R), psi).value().to_std();
    EXPECT_LT(std::abs(got - ref), 1e-12 * std::max(1.0, std::abs(ref)));
  }
}

TEST(Sandwich, ExtendedAgreesWithStandard) {
  auto spec = CircuitSpec::homogeneous(Family::III, 30, 1.0);
  auto psi = ProductState::tilted(30, 0.39269908169872414);
  auto chi = make_chi(Family::III, 30);
  auto Ld = localize(build_omega_chain_t<double>(spec, Cx<double>(0.0, 0.8), Selector::a));
  auto Rd = localize(build_omega_chain_t<double>(spec, Cx<double>(0.0, -0.8), Selector::a));
  auto Lq = localize(build_omega_chain_t<DDouble>(spec, Cx<DDouble>(DDouble(0.0), DDouble(0.8)), Selector::a));
  auto Rq = localize(build_omega_chain_t<DDouble>(spec, Cx<DDouble>(DDouble(0.0), DDouble(-0.8)), Selector::a));
  auto a = sandwich(Ld, chi, Rd, psi);
  auto b = sandwich(Lq, chi, Rq, psi);
  EXPECT_NEAR(a.log_abs(), b.log_abs(), 1e-11);
  cplx ra = a.m.to_std() / std::abs(a.m.to_std()), rb = b.m.to_std() / std::abs(b.m.to_std());
  EXPECT_LT(std::abs(ra - rb), 1e-11);
}

TEST(Sandwich, RejectsMismatchedSizes) {
  auto spec = CircuitSpec::homogeneous(Family::I, 4, 0.5);
  auto L = localize(build_omega_chain(spec, 0.3, Selector::a));
  EXPECT_THROW(sandwich(L, make_chi(Family::I, 4), L, ProductState::plus(5)), Error);
}

TEST(ModeExpectation, MatchesDenseFermions) {
  std::mt19937_64 rng(24);
  for (auto [f, M] : {std::pair{Family::I, 4}, {Family::II, 6}, {Family::III, 6}, {Family::III, 9}}) {
    auto spec = test::random_spec(rng, f, M);
    auto sd = solve_spectrum(spec);
    auto basis = make_basis(spec, M, SectorBasis::Mode::full);
    Fermions fer = build_fermions(spec, sd, basis);
    auto psi = test::random_state(rng, M);
    auto vec = psi.to_vector();
    for (int s = -sd.S; s <= sd.S; ++s) {
      if (s == 0) continue;
      cplx dense = fer.mode(s).expectation(vec);
      cplx mpo = mode_expectation(spec, s, psi, sd);
      EXPECT_LT(std::abs(dense - mpo), 1e-10) << to_string(f) << ' ' << M << ' ' << s;
    }
    EXPECT_THROW(mode_expectation(spec, sd.S + 1, psi, sd), Error);
  }
}

TEST(FloquetApply, MatchesDenseFloquet) {
  std::mt19937_64 rng(25);
  for (auto [f, M] : test::small_cases(8)) {
    auto spec = test::random_spec(rng, f, M);
    auto basis = make_basis(spec, M, SectorBasis::Mode::full);
    Eigen::MatrixXcd V = build_floquet(spec, basis).to_matrix();
    auto psi = test::random_state(rng, M).to_vector();
    auto out = floquet_apply(spec, psi);
    Eigen::Map<Eigen::VectorXcd> in(psi.data(), static_cast<Eigen::Index>(psi.size()));
    Eigen::VectorXcd ref = V * in;
    double err = 0;
    for (std::size_t i = 0; i < out.size(); ++i) err = std::max(err, std::abs(out[i] - ref[i]));
    EXPECT_LT(err, 1e-13) << to_string(f) << ' ' << M;
  }
}

TEST(LocalMpo, ContractionCostLinearInM) {
  double prev = 0;
  for (int M : {30, 60, 120}) {
    auto spec = CircuitSpec::homogeneous(Family::III, M, 1.0);
    auto psi = ProductState::tilted(M, 0.39269908169872414);
    auto chi = make_chi(Family::III, M);
    double t = median_seconds(
        [&] {
          auto L = localize(build_omega_chain(spec, cplx(0, 0.8), Selector::a));
          auto R = localize(build_omega_chain(spec, cplx(0, -0.8), Selector::a));
          volatile double sink = sandwich(L, chi, R, psi).log_abs();
          (void)sink;
        },
        15);
    if (prev > 0) EXPECT_LE(t / prev, 2.5) << "M=" << M;
    prev = t;
  }
}
