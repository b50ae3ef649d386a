#include "ffd/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ffd/error.hpp"

namespace ffd {

void Report::add(std::string name, double residual, double tolerance) {
  checks.push_back({std::move(name), residual, tolerance});
}

bool Report::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass(); });
}

double Report::max_residual() const {
  double m = 0;
  for (const auto& c : checks) m = std::max(m, c.residual);
  return m;
}

void Report::merge(const Report& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

void Report::fold(const Report& other) {
  for (const auto& c : other.checks) {
    auto it = std::find_if(checks.begin(), checks.end(), [&](const Check& d) { return d.name == c.name; });
    if (it == checks.end()) {
      checks.push_back(c);
    } else if (!(it->residual >= c.residual)) {
      it->residual = c.residual;
    }
  }
}

namespace {

void guard(const CircuitSpec& spec) {
  spec.validate();
  if (spec.M > dense_max_M) {
    fail(ErrorCode::resource, "dense construction needs M <= " + std::to_string(dense_max_M) + ", got " +
                                  std::to_string(spec.M));
  }
}

PauliString chi_on(const CircuitSpec& spec, int n) {
  PauliString chi(n);
  chi.set_letter(spec.M, Letter::Z);
  if (spec.family == Family::II) chi.set_letter(spec.M - 1, Letter::Z);
  return chi;
}

DenseOp pauli(const BasisPtr& b, const PauliString& p, cplx a = 1.0) { return DenseOp::pauli(b, p, a); }

bool empty(const DenseOp& op) { return op.blocks().empty(); }

cplx eval(const PolyU2& p, cplx w) { return p(w); }

const cplx I(0.0, 1.0);

}  // namespace

BasisPtr make_basis(const CircuitSpec& spec, int num_sites, SectorBasis::Mode mode) {
  spec.validate();
  if (num_sites < spec.M) fail(ErrorCode::argument, "basis needs at least M sites");
  std::vector<PauliString> gens;
  for (int m = 1; m <= num_sites; ++m) gens.push_back(make_h(m, num_sites));
  gens.push_back(chi_on(spec, num_sites));
  return std::make_shared<const SectorBasis>(num_sites, std::move(gens), mode);
}

DenseOp build_floquet(const CircuitSpec& spec, const BasisPtr& basis) {
  guard(spec);
  const int n = basis->num_sites();
  std::vector<int> order = spec.gate_order();
  std::vector<int> seq(order.begin(), order.end());
  seq.insert(seq.end(), order.rbegin(), order.rend());
  DenseOp V(basis, 1.0);
  for (int m : seq) V = V.times(make_gate(m, spec.phi(m), n));
  return V;
}

TransferOps build_abcd(const CircuitSpec& spec, cplx u, const BasisPtr& basis) {
  guard(spec);
  const int n = basis->num_sites();
  if (n < spec.M) fail(ErrorCode::argument, "basis has fewer than M sites");
  auto h = [&](int m) { return make_h(m, n); };
  auto has = [&](int m) { return m <= n; };
  auto x = [&](int m) { return cplx(spec.x(m)); };
  auto y = [&](int m) { return cplx(spec.y(m)); };
  const cplx iu = I * u;

  DenseOp A(basis, 1.0), B, C, D;
  if (has(1)) B = pauli(basis, h(1), iu);
  if (has(2)) C = pauli(basis, h(2), iu);
  if (has(2)) D = pauli(basis, h(1) * h(2));
  TransferOps out;
  out.A_hist[0] = A;
  out.B_hist[0] = B;

  auto kappa_plus = [&](int m) {
    OperatorSum k = OperatorSum::identity(n, x(m));
    k.add(h(m), iu * y(m));
    return k;
  };
  auto kappa_minus = [&](int m) {
    OperatorSum k = OperatorSum::identity(n, u * x(m));
    k.add(h(m), -I * y(m));
    return k;
  };

  switch (spec.family) {
    case Family::I:
      for (int m = 1; m <= spec.M; ++m) {
        DenseOp nA = x(m) * A;
        if (y(m) != 0.0) nA += y(m) * B;
        DenseOp nC;
        if (has(m + 2)) nC = A.times_pauli(h(m + 2), iu);
        B = C;
        C = nC;
        A = nA;
        out.A_hist[m] = A;
        out.B_hist[m] = B;
      }
      D = DenseOp();
      break;
    case Family::II:
      for (int m = 2; m <= spec.M; m += 2) {
        DenseOp nA = x(m) * x(m - 1) * A + y(m - 1) * B + x(m - 1) * y(m) * C;
        DenseOp nB, nC, nD;
        if (has(m + 1)) nB = A.times_pauli(h(m + 1), iu);
        if (has(m + 2)) {
          nC = (x(m - 1) * A + x(m) * y(m - 1) * B + y(m - 1) * y(m) * D).times_pauli(h(m + 2), iu);
          nD = (x(m) * A + y(m) * C).times_pauli(h(m + 1) * h(m + 2));
        }
        A = nA;
        B = nB;
        C = nC;
        D = nD;
        out.A_hist[m] = A;
        out.B_hist[m] = B;
      }
      break;
    case Family::III:
      for (int m = 3; m <= spec.M; m += 3) {
        OperatorSum kp = kappa_plus(m), km = kappa_minus(m);
        DenseOp nA = (x(m - 1) * x(m - 2) * A).times(kp) + y(m - 2) * B + x(m - 2) * y(m - 1) * C;
        DenseOp nB, nC, nD;
        if (has(m + 1)) {
          nB = (u * x(m - 2) * A + (x(m - 1) * y(m - 2) * B).times(km) + u * y(m - 2) * y(m - 1) * D)
                   .times_pauli(h(m + 1), I);
        }
        if (has(m + 2)) {
          nC = (u * x(m - 1) * x(m - 2) * A + (y(m - 2) * B + x(m - 2) * y(m - 1) * C).times(km))
                   .times_pauli(h(m + 2), I);
          nD = ((x(m - 2) * A + y(m - 1) * y(m - 2) * D).times(kp) + y(m - 2) * x(m - 1) * B)
                   .times_pauli(h(m + 1) * h(m + 2));
        }
        A = nA;
        B = nB;
        C = nC;
        D = nD;
        out.A_hist[m] = A;
        out.B_hist[m] = B;
      }
      break;
  }
  out.A = A;
  out.B = B;
  out.C = C;
  out.D = D;
  return out;
}

Report verify_generator_algebra(const CircuitSpec& spec) {
  spec.validate();
  Report r{"generator algebra", {}};
  const int M = spec.M;
  std::vector<PauliString> h;
  for (int m = 1; m <= M; ++m) h.push_back(make_h(m, M));
  double sq = 0, rel = 0;
  for (int a = 1; a <= M; ++a) {
    PauliString s = h[a - 1] * h[a - 1];
    if (!s.is_identity() || s.phase() != 0) sq += 1;
    for (int b = a + 1; b <= M; ++b) {
      bool anti = (b - a == 1 || b - a == 2);
      if (h[a - 1].commutes_with(h[b - 1]) == anti) rel += 1;
    }
  }
  r.add("h_m^2 = 1", sq, 0.5);
  r.add("{h_m,h_n} = 0 for |m-n| <= 2, [h_m,h_n] = 0 beyond", rel, 0.5);

  PauliString chi = make_chi(spec.family, M);
  PauliString c2 = chi * chi;
  double bad = (!c2.is_identity() || c2.phase() != 0) ? 1 : 0;
  const int edge = spec.family == Family::II ? M - 1 : M;
  for (int m = 1; m <= M; ++m) {
    if (chi.commutes_with(h[m - 1]) == (m >= edge)) bad += 1;
  }
  r.add("chi^2 = 1, chi anticommutes with the edge generators only", bad, 0.5);

  double gate = 0;
  for (int m = 1; m <= M; ++m) {
    OperatorSum g = make_gate(m, spec.phi(m), M);
    OperatorSum target = OperatorSum::identity(M, spec.x(m));
    target.add(h[m - 1], cplx(0, spec.y(m)));
    gate = std::max(gate, (g * g - target).norm1());
  }
  r.add("g_m^2 = x_m + i y_m h_m", gate, 1e-14);
  return r;
}

Report verify_commuting_family(const CircuitSpec& spec, cplx u, cplx v, const BasisPtr& basis) {
  TransferOps U = build_abcd(spec, u, basis), W = build_abcd(spec, v, basis);
  if (!U.has_bcd() || empty(U.C)) fail(ErrorCode::argument, "commuting family check needs M + 2 sites");
  Report r{"commuting family", {}};
  const double tol = 1e-10;
  r.add("[A(u),A(v)]", commutator(U.A, W.A).norm(), tol);
  r.add("[B(u),B(v)]", commutator(U.B, W.B).norm(), tol);
  r.add("[C(u),C(v)]", commutator(U.C, W.C).norm(), tol);
  r.add("[A(u),B(v)] + [B(u),A(v)]", (commutator(U.A, W.B) + commutator(U.B, W.A)).norm(), tol);
  r.add("[A(u),C(v)] + [C(u),A(v)]", (commutator(U.A, W.C) + commutator(U.C, W.A)).norm(), tol);
  r.add("[B(u),C(v)] + [C(u),B(v)]", (commutator(U.B, W.C) + commutator(U.C, W.B)).norm(), tol);
  r.add("u{A(u),B(v)} - v{B(u),A(v)}", (u * anticommutator(U.A, W.B) - v * anticommutator(U.B, W.A)).norm(), tol);
  r.add("u{A(u),C(v)} - v{C(u),A(v)}", (u * anticommutator(U.A, W.C) - v * anticommutator(U.C, W.A)).norm(), tol);
  if (spec.family != Family::I) {
    r.add("[D(u),D(v)]", commutator(U.D, W.D).norm(), tol);
    r.add("{A(u),D(v)} - {D(u),A(v)}", (anticommutator(U.A, W.D) - anticommutator(U.D, W.A)).norm(), tol);
  }
  return r;
}

Report verify_scalar_chains(const CircuitSpec& spec, cplx u, const BasisPtr& basis) {
  TransferOps P = build_abcd(spec, u, basis), Q = build_abcd(spec, -u, basis);
  ScalarChains ch = build_calA(spec);
  const cplx w = u * u;
  Report r{"scalar chains", {}};
  const double tol = 1e-10;
  auto check = [&](const char* name, const DenseOp& a, const DenseOp& b, const PolyU2& p) {
    if (empty(a) || empty(b)) return;
    r.add(name, (a * b - DenseOp(basis, eval(p, w))).norm(), tol);
  };
  check("A(u)A(-u) - calA(u)", P.A, Q.A, ch.A);
  check("B(u)B(-u) - calB(u)", P.B, Q.B, ch.B);
  check("C(u)C(-u) - calC(u)", P.C, Q.C, ch.C);
  if (spec.family != Family::I) check("D(u)D(-u) - calD(u)", P.D, Q.D, ch.D);
  return r;
}

Fermions build_fermions(const CircuitSpec& spec, const SpectralData& spectral, const BasisPtr& basis) {
  guard(spec);
  const int S = spectral.S;
  const int n = basis->num_sites();
  DenseOp chi = pauli(basis, chi_on(spec, n));
  Fermions f;
  for (int k = 1; k <= S; ++k) {
    const double uk = spectral.u(k);
    const cplx N = spectral.norm(k).value();
    DenseOp Ap = build_abcd(spec, I * uk, basis).A;
    DenseOp Am = build_abcd(spec, -I * uk, basis).A;
    f.plus.push_back((Ap * chi * Am) * (1.0 / N));
    f.minus.push_back((Am * chi * Ap) * (1.0 / N));
  }

  // top v-coefficient of A(v) by discrete Fourier interpolation on the unit circle
  const int L = spec.M + 1;
  std::vector<DenseOp> coef(L, DenseOp(basis, 0.0));
  for (int l = 0; l < L; ++l) {
    const double ang = 2 * std::numbers::pi * l / L;
    DenseOp Av = build_abcd(spec, std::polar(1.0, ang), basis).A;
    for (int j = 0; j < L; ++j) coef[j] += Av * (std::polar(1.0, -ang * j) / static_cast<double>(L));
  }
  for (int j = S + 1; j < L; ++j) f.top_degree_residual = std::max(f.top_degree_residual, coef[j].norm());
  const DenseOp& a = coef[S];
  const cplx a2 = (a * a).scalar_part();
  f.Q = (chi + (a * chi * a) * (1.0 / a2)) * 0.5;
  DenseOp q2 = f.Q * f.Q;
  f.c0_squared = q2.scalar_part().real();
  f.q_square_residual = q2.off_scalar_norm();
  if (f.c0_squared > 1e-12) f.psi0 = f.Q * (1.0 / std::sqrt(f.c0_squared));
  return f;
}

Report verify_fermions(const CircuitSpec& spec, const SpectralData& spectral, const Fermions& f,
                       const BasisPtr& basis, const std::vector<cplx>& probes) {
  Report r{"fermions", {}};
  const int S = spectral.S;
  const double tol = 1e-8;
  double canon = 0;
  for (int s = -S; s <= S; ++s) {
    if (s == 0) continue;
    for (int t = s; t <= S; ++t) {
      if (t == 0) continue;
      DenseOp ac = anticommutator(f.mode(s), f.mode(t));
      if (s + t == 0) ac -= DenseOp(basis, 1.0);
      canon = std::max(canon, ac.norm());
    }
  }
  r.add("{Psi_k,Psi_l} = delta_{k+l,0}", canon, tol);

  std::vector<DenseOp> A;
  for (cplx u : probes) A.push_back(build_abcd(spec, u, basis).A);
  double shift = 0;
  for (int s = -S; s <= S; ++s) {
    if (s == 0) continue;
    const cplx ius = I * spectral.u(s);
    for (std::size_t p = 0; p < probes.size(); ++p) {
      const cplx u = probes[p];
      shift = std::max(shift, ((ius - u) * (A[p] * f.mode(s)) - (ius + u) * (f.mode(s) * A[p])).norm());
    }
  }
  r.add("(iu_k - u) A(u) Psi_k - (iu_k + u) Psi_k A(u)", shift, tol);

  if (spec.family == Family::III) {
    if (empty(f.psi0)) {
      r.add("Psi_0 exists (c0^2 > 0)", std::abs(f.c0_squared), 0.0);
      return r;
    }
    r.add("Q^2 scalar", f.q_square_residual, tol);
    r.add("Psi_0^2 = 1", (f.psi0 * f.psi0 - DenseOp(basis, 1.0)).norm(), tol);
    double comm = 0;
    for (const auto& a : A) comm = std::max(comm, commutator(f.psi0, a).norm());
    r.add("[Psi_0, A(v)]", comm, tol);
    double anti = 0;
    for (int s = -S; s <= S; ++s) {
      if (s != 0) anti = std::max(anti, anticommutator(f.psi0, f.mode(s)).norm());
    }
    r.add("{Psi_0, Psi_k}", anti, tol);
  }
  return r;
}

double multiset_distance(std::vector<cplx> a, std::vector<cplx> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  std::vector<char> used(b.size(), 0);
  double worst = 0;
  for (cplx z : a) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = 0;
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (used[i]) continue;
      double d = std::abs(b[i] - z);
      if (d < best) {
        best = d;
        bi = i;
      }
    }
    used[bi] = 1;
    worst = std::max(worst, best);
  }
  return worst;
}

Report verify_diagonal_form(const CircuitSpec& spec, const SpectralData& spectral, const Fermions& f,
                            const BasisPtr& basis, const std::vector<cplx>& probes) {
  Report r{"diagonal form", {}};
  const int S = spectral.S;
  double sgn = 1;
  for (int m = 1; m <= spec.M; ++m) sgn *= spec.x(m) < 0 ? -1.0 : 1.0;
  std::vector<DenseOp> P;
  for (int k = 1; k <= S; ++k) P.push_back(commutator(f.mode(k), f.mode(-k)));
  double prod_res = 0;
  for (cplx u : probes) {
    DenseOp rhs(basis, sgn);
    for (int k = 1; k <= S; ++k) {
      const double uk = spectral.u(k);
      rhs = rhs * ((DenseOp(basis, uk) - (I * u) * P[k - 1]) * (1.0 / std::sqrt(1 + uk * uk)));
    }
    prod_res = std::max(prod_res, (build_abcd(spec, u, basis).A - rhs).norm());
  }
  r.add("A(u) = sgn(prod x) prod_k (u_k - i u [Psi_k,Psi_-k]) / sqrt(1 + u_k^2)", prod_res, 1e-8);

  std::vector<cplx> dense = build_floquet(spec, basis).eigenvalues();
  std::vector<cplx> predicted;
  const std::size_t rep = std::size_t{1} << (basis->num_sites() - S);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << S); ++mask) {
    double phase = 0;
    for (int k = 1; k <= S; ++k) phase += ((mask >> (k - 1)) & 1 ? -1.0 : 1.0) * spectral.pseudoenergies[k - 1];
    cplx z = sgn * std::polar(1.0, -phase);
    for (std::size_t i = 0; i < rep; ++i) predicted.push_back(z);
  }
  r.add("spectrum of V = sgn(prod x) exp(-i sum sigma_k eps_k)", multiset_distance(dense, predicted), 1e-8);
  return r;
}

Report verify_chi_expansion(const CircuitSpec& spec, const SpectralData& spectral, const Fermions& f) {
  if (spec.family != Family::III) fail(ErrorCode::unsupported, "chi expansion coefficients exist for family III only");
  Report r{"chi expansion", {}};
  const BasisPtr& basis = f.Q.basis_ptr();
  DenseOp rest = pauli(basis, chi_on(spec, basis->num_sites())) - f.Q;
  for (int s = -spectral.S; s <= spectral.S; ++s) {
    if (s != 0) rest -= spectral.c(s) * f.mode(s);
  }
  r.add("chi - sum_s c_s Psi_s", rest.norm(), 1e-8);
  r.add("c0^2 from leading coefficients vs dense Q^2", std::abs(spectral.c0_squared - f.c0_squared), 1e-8);
  return r;
}

OperatorSum build_charge(const CircuitSpec& spec) {
  spec.validate();
  const int M = spec.M;
  auto x = [&](int m) { return spec.x(m); };
  auto y = [&](int m) { return spec.y(m); };
  OperatorSum H(M);
  switch (spec.family) {
    case Family::I:
      for (int m = 1; m <= M; ++m) H.add(make_h(m, M), y(m) / (x(m - 2) * x(m - 1) * x(m)));
      break;
    case Family::II:
      for (int m = 1; m <= M; ++m) {
        double b = m % 2 == 0 ? y(m) / (x(m - 2) * x(m)) : y(m) / (x(m - 2) * x(m - 1) * x(m) * x(m + 1));
        H.add(make_h(m, M), b);
      }
      for (int m = 1; m + 3 <= M; m += 2) {
        double b = y(m) * y(m + 1) * y(m + 3) / (x(m - 2) * x(m) * x(m + 1) * x(m + 3));
        H.add(make_h(m, M) * make_h(m + 1, M) * make_h(m + 3, M), b);
      }
      break;
    case Family::III:
      fail(ErrorCode::unsupported, "family III has no local first charge");
  }
  H.prune();
  return H;
}

Report verify_charge(const CircuitSpec& spec, const BasisPtr& basis) {
  Report r{"charge", {}};
  OperatorSum H = build_charge(spec);
  DenseOp V = build_floquet(spec, basis);
  DenseOp Hd = DenseOp::from_sum(basis, H);
  r.add(std::string("[H, V] family ") + std::string(to_string(spec.family)), commutator(Hd, V).norm(), 1e-10);
  return r;
}

Report verify_mode_identities(const CircuitSpec& spec, cplx u, cplx v, const BasisPtr& basis) {
  guard(spec);
  Report r{"mode identities", {}};
  const int M = spec.M;
  const int n = basis->num_sites();
  TransferOps U = build_abcd(spec, u, basis);
  DenseOp Av = build_abcd(spec, v, basis).A, Amv = build_abcd(spec, -v, basis).A;
  DenseOp chi = pauli(basis, chi_on(spec, n));
  DenseOp Psi = Av * chi * Amv;
  ScalarChains ch = build_calA(spec);
  const cplx w = v * v;
  auto calA = [&](int m) { return eval(ch.A_history.at(m), w); };
  const cplx aM = eval(ch.A, w);
  DenseOp lhs = u * anticommutator(U.A, Psi) - v * commutator(U.A, Psi);
  DenseOp rhs;
  cplx chi_psi;
  const double xM = spec.x(M), yM = spec.y(M);
  switch (spec.family) {
    case Family::I:
      rhs = (2.0 * aM) * ((u * xM) * U.A_hist.at(M - 1) + (v * yM) * U.B_hist.at(M - 1)) * chi;
      chi_psi = 2.0 * (-aM + 2 * xM * xM * calA(M - 1));
      break;
    case Family::II: {
      const double xx = spec.x(M - 1) * xM;
      rhs = (2.0 * aM) * (v * U.A + ((u - v) * xx) * U.A_hist.at(M - 2)) * chi;
      chi_psi = -2.0 * aM + (2 * xx) * (2 * xx) * calA(M - 2);
      break;
    }
    case Family::III: {
      const double X = spec.x(M - 2) * spec.x(M - 1) * yM;
      rhs = (2.0 * u * aM) * (U.A + (I * (v - u) * X) * U.A_hist.at(M - 3).times_pauli(make_h(M, n))) * chi;
      chi_psi = 2.0 * aM - (2.0 * v * X) * (2.0 * v * X) * calA(M - 3);
      break;
    }
  }
  r.add("u{A(u),Psi(v)} - v[A(u),Psi(v)]", (lhs - rhs).norm(), 1e-9);
  r.add("{chi,Psi(v)}", (anticommutator(chi, Psi) - DenseOp(basis, chi_psi)).norm(), 1e-9);
  return r;
}

}  // namespace ffd
