#include "ffd/mpo.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <map>
#include <tuple>

#include "ffd/error.hpp"

namespace ffd {

Selector parse_selector(char c) {
  switch (c) {
    case 'a': case 'A': return Selector::a;
    case 'b': case 'B': return Selector::b;
    case 'c': case 'C': return Selector::c;
    case 'd': case 'D': return Selector::d;
    default: fail(ErrorCode::argument, std::string("selector must be one of a,b,c,d, got '") + c + "'");
  }
}

namespace {

template <class T>
Cx<T> i_pow(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return Cx<T>(T(1.0), T(0.0));
    case 1: return Cx<T>(T(0.0), T(1.0));
    case 2: return Cx<T>(T(-1.0), T(0.0));
    default: return Cx<T>(T(0.0), T(-1.0));
  }
}

template <class T>
Term<T> scalar_term(int n, Cx<T> a) {
  return Term<T>{PauliString(n), a};
}

template <class T>
Term<T> h_term(int n, int m, Cx<T> a) {
  return Term<T>{make_h(m, n), a};
}

template <class T>
void push(std::vector<Term<T>>& cell, Term<T> t) {
  if (!is_zero(t.amp)) cell.push_back(std::move(t));
}

}  // namespace

template <class T>
OmegaChainT<T> build_omega_chain_t(const CircuitSpec& spec, Cx<T> u, Selector sel, int num_sites) {
  spec.validate();
  OmegaChainT<T> ch;
  ch.family = spec.family;
  ch.M = spec.M;
  ch.D = ancilla_dim(spec.family);
  ch.u = u;
  ch.selector = sel;
  if (spec.family == Family::I && sel == Selector::d) {
    fail(ErrorCode::argument, "selector d requires family II or III");
  }
  const int need = sel == Selector::a ? spec.M : spec.M + 2;
  const int n = num_sites == 0 ? need : num_sites;
  if (n < need) fail(ErrorCode::argument, "num_sites=" + std::to_string(n) + " below " + std::to_string(need));
  ch.num_sites = n;

  const Params<T> P = circuit_params<T>(spec);
  const Cx<T> one(T(1.0), T(0.0));
  const Cx<T> iu = Cx<T>(T(0.0), T(1.0)) * u;
  auto X = [&](int m) { return Cx<T>(P.x(m), T(0.0)); };
  auto Y = [&](int m) { return Cx<T>(P.y(m), T(0.0)); };
  const Cx<T> I1(T(0.0), T(1.0));

  for (int s : spec.step_sites()) {
    OmegaStep<T> st;
    st.site = s;
    st.mat.assign(ch.D, std::vector<std::vector<Term<T>>>(ch.D));
    auto& E = st.mat;
    auto sc = [&](int a, int b, Cx<T> v) { push(E[a][b], scalar_term(n, v)); };
    if (spec.family == Family::I) {
      st.row = {scalar_term(n, one), h_term(n, s, iu * Y(s)), scalar_term(n, one)};
      sc(0, 0, X(s));
      sc(0, 2, one);
      sc(1, 0, one);
      sc(2, 1, one);
    } else {
      const int s1 = s + 1;
      PauliString hh = make_h(s, n) * make_h(s1, n);
      st.row = {scalar_term(n, one), h_term(n, s, I1 * Y(s)), h_term(n, s1, I1 * Y(s1)),
                Term<T>{hh, Y(s) * Y(s1)}};
      if (spec.family == Family::II) {
        sc(0, 0, X(s) * X(s1));
        sc(0, 1, one);
        sc(0, 2, X(s));
        sc(0, 3, X(s1));
        sc(1, 0, u);
        sc(1, 2, u * X(s1));
        sc(2, 0, u * X(s));
        sc(2, 3, u);
        sc(3, 2, one);
      } else {
        const int s2 = s + 2;
        // kappa+ = x + iu y h, kappa- = u x - i y h, both on h_{s+2}
        auto kp = [&](int a, int b, Cx<T> f) {
          push(E[a][b], scalar_term(n, f * X(s2)));
          push(E[a][b], h_term(n, s2, f * iu * Y(s2)));
        };
        auto km = [&](int a, int b, Cx<T> f) {
          push(E[a][b], scalar_term(n, f * u * X(s2)));
          push(E[a][b], h_term(n, s2, -(f * I1 * Y(s2))));
        };
        kp(0, 0, X(s) * X(s1));
        sc(0, 1, X(s));
        sc(0, 2, X(s) * X(s1));
        kp(0, 3, X(s));
        sc(1, 0, u);
        km(1, 1, X(s1));
        km(1, 2, one);
        sc(1, 3, u * X(s1));
        sc(2, 0, u * X(s));
        km(2, 2, X(s));
        sc(3, 1, one);
        kp(3, 3, one);
      }
    }
    ch.steps.push_back(std::move(st));
  }

  const int M = spec.M;
  switch (sel) {
    case Selector::a: ch.trailing = scalar_term(n, one); break;
    case Selector::b: ch.trailing = h_term(n, M + 1, iu); break;
    case Selector::c: ch.trailing = h_term(n, M + 2, iu); break;
    case Selector::d: ch.trailing = Term<T>{make_h(M + 1, n) * make_h(M + 2, n), one}; break;
  }
  return ch;
}

OmegaChain build_omega_chain(const CircuitSpec& spec, cplx u, Selector sel, int num_sites) {
  return build_omega_chain_t<double>(spec, Cx<double>(u), sel, num_sites);
}

OperatorSum evaluate(const OmegaChain& ch) {
  const int n = ch.num_sites;
  auto op = [&](const Term<double>& t) { return OperatorSum(t.op, t.amp.to_std()); };
  std::vector<OperatorSum> v(ch.D, OperatorSum::identity(n));
  for (const auto& st : ch.steps) {
    std::vector<OperatorSum> w(ch.D, OperatorSum(n));
    for (int a = 0; a < ch.D; ++a) {
      OperatorSum left = v[a] * op(st.row[a]);
      for (int b = 0; b < ch.D; ++b) {
        for (const auto& t : st.mat[a][b]) w[b] += left * op(t);
      }
    }
    for (auto& x : w) x.prune();
    v = std::move(w);
  }
  OperatorSum r = v[static_cast<int>(ch.selector)] * op(ch.trailing);
  r.prune();
  return r;
}

template <class T>
LocalMpoT<T> localize(const OmegaChainT<T>& ch) {
  const int n = ch.num_sites;
  const int K = static_cast<int>(ch.steps.size());
  const int sel = static_cast<int>(ch.selector);
  struct Move {
    int next;
    PauliString op;
    Cx<T> amp;
  };
  auto row = [&](int k, int a) -> const Term<T>* {
    if (k <= K) return &ch.steps[k - 1].row[a];
    return a == sel ? &ch.trailing : nullptr;
  };

  // Decision 0 picks a_0; decision k picks a_k and a term of step k.
  std::vector<std::vector<std::vector<Move>>> moves(K + 1);
  moves[0].resize(1);
  for (int a = 0; a < ch.D; ++a) {
    const Term<T>* r = row(1, a);
    if (!is_zero(r->amp)) moves[0][0].push_back({a, r->op, r->amp});
  }
  for (int k = 1; k <= K; ++k) {
    moves[k].resize(ch.D);
    for (int a = 0; a < ch.D; ++a) {
      for (int b = 0; b < ch.D; ++b) {
        const Term<T>* r = row(k + 1, b);
        if (!r || is_zero(r->amp)) continue;
        for (const auto& t : ch.steps[k - 1].mat[a][b]) {
          moves[k][a].push_back({b, t.op * r->op, t.amp * r->amp});
        }
      }
    }
  }

  std::vector<int> dsite(K + 2, n);
  for (int k = K; k >= 0; --k) {
    int lo = INT_MAX;
    for (const auto& slot : moves[k]) {
      for (const auto& mv : slot) {
        if (!mv.op.is_identity()) lo = std::min(lo, mv.op.lowest_site());
      }
    }
    dsite[k] = std::max(1, std::min(lo, dsite[k + 1]));
  }

  using Key = std::tuple<int, std::vector<std::uint64_t>, std::vector<std::uint64_t>>;
  struct State {
    int a;
    PauliString pend;
  };
  using Tr = typename LocalMpoT<T>::Transition;

  LocalMpoT<T> mpo;
  mpo.sites.resize(n);
  std::vector<State> cur{{-1, PauliString(n)}};
  int next_decision = 0;
  for (int j = 1; j <= n; ++j) {
    std::map<Key, int> index;
    std::vector<State> out;
    std::map<std::tuple<int, int, int>, Cx<T>> acc;
    int first = next_decision;
    while (next_decision <= K && dsite[next_decision] == j) ++next_decision;
    for (int i = 0; i < static_cast<int>(cur.size()); ++i) {
      struct Branch {
        int a;
        PauliString op;
        Cx<T> amp;
      };
      std::vector<Branch> br{{cur[i].a, cur[i].pend, Cx<T>(T(1.0), T(0.0))}};
      for (int k = first; k < next_decision; ++k) {
        std::vector<Branch> nb;
        for (const auto& b : br) {
          for (const auto& mv : moves[k][k == 0 ? 0 : b.a]) {
            if (!mv.op.is_identity() && mv.op.lowest_site() < j) {
              fail(ErrorCode::consistency, "localize: decision " + std::to_string(k) + " touches a closed site");
            }
            nb.push_back({mv.next, b.op * mv.op, b.amp * mv.amp});
          }
        }
        br = std::move(nb);
      }
      for (auto& b : br) {
        Letter l = b.op.letter(j);
        Cx<T> amp = b.amp * i_pow<T>(b.op.phase());
        b.op.set_phase(0);
        b.op.set_letter(j, Letter::I);
        Key key{b.a, b.op.x_words(), b.op.z_words()};
        auto [it, fresh] = index.try_emplace(key, static_cast<int>(out.size()));
        if (fresh) out.push_back({b.a, b.op});
        auto [jt, f2] = acc.try_emplace({i, it->second, static_cast<int>(l)}, amp);
        if (!f2) jt->second += amp;
      }
    }
    auto& site = mpo.sites[j - 1];
    site.left_dim = static_cast<int>(cur.size());
    site.right_dim = static_cast<int>(out.size());
    for (const auto& [k, amp] : acc) {
      if (!is_zero(amp)) site.trans.push_back(Tr{std::get<0>(k), std::get<1>(k), static_cast<Letter>(std::get<2>(k)), amp});
    }
    cur = std::move(out);
  }
  if (cur.size() != 1 || cur[0].a != sel || !cur[0].pend.is_identity()) {
    fail(ErrorCode::consistency, "localize: chain does not close on the selected ancilla");
  }

  // Drop states that cannot reach the right boundary, then renumber.
  std::vector<std::vector<char>> alive(n + 1);
  alive[n].assign(1, 1);
  for (int j = n; j >= 1; --j) {
    const auto& site = mpo.sites[j - 1];
    alive[j - 1].assign(site.left_dim, 0);
    for (const auto& t : site.trans) {
      if (alive[j][t.r]) alive[j - 1][t.l] = 1;
    }
  }
  std::vector<std::vector<int>> remap(n + 1);
  for (int j = 0; j <= n; ++j) {
    int c = 0;
    for (char a : alive[j]) remap[j].push_back(a ? c++ : -1);
  }
  for (int j = 1; j <= n; ++j) {
    auto& site = mpo.sites[j - 1];
    std::vector<Tr> kept;
    for (auto t : site.trans) {
      t.l = remap[j - 1][t.l];
      t.r = remap[j][t.r];
      if (t.l >= 0 && t.r >= 0) kept.push_back(t);
    }
    site.trans = std::move(kept);
    site.left_dim = static_cast<int>(std::count(alive[j - 1].begin(), alive[j - 1].end(), 1));
    site.right_dim = static_cast<int>(std::count(alive[j].begin(), alive[j].end(), 1));
  }
  if (n > 0 && mpo.sites[0].left_dim != 1) {
    fail(ErrorCode::consistency, "localize: chain evaluates to zero");
  }
  return mpo;
}

}  // namespace ffd

namespace ffd {

OperatorSum evaluate(const LocalMpo& mpo) {
  const int n = mpo.num_sites();
  std::vector<OperatorSum> v{OperatorSum::identity(n)};
  for (int j = 1; j <= n; ++j) {
    const auto& site = mpo.sites[j - 1];
    std::vector<OperatorSum> w(site.right_dim, OperatorSum(n));
    for (const auto& t : site.trans) {
      w[t.r] += v[t.l] * OperatorSum(PauliString::single(n, j, t.letter), t.amp.to_std());
    }
    for (auto& x : w) x.prune();
    v = std::move(w);
  }
  return v.empty() ? OperatorSum(n) : v[0];
}

namespace {

struct LetterProduct {
  int phase;
  Letter letter;
};

LetterProduct letter_product(Letter a, Letter b) {
  PauliString p = PauliString::single(1, 1, a) * PauliString::single(1, 1, b);
  return {p.phase(), p.letter(1)};
}

template <class T>
Cx<T> site_expectation(const ProductState::Site& s, Letter l) {
  Cx<T> a(s[0]), b(s[1]);
  Cx<T> ab = conj(a) * b;
  switch (l) {
    case Letter::I: return Cx<T>(T(1.0), T(0.0));
    case Letter::X: return Cx<T>(ab.re + ab.re, T(0.0));
    case Letter::Y: return Cx<T>(ab.im + ab.im, T(0.0));
    default: return Cx<T>(norm(a) - norm(b), T(0.0));
  }
}

template <class T>
double max_abs(const std::vector<Cx<T>>& v) {
  double m = 0;
  for (const auto& z : v) m = std::max({m, std::abs(to_double(z.re)), std::abs(to_double(z.im))});
  return m;
}

}  // namespace

template <class T>
Scaled<Cx<T>> sandwich(const LocalMpoT<T>& L, const PauliString& mid, const LocalMpoT<T>& R,
                       const ProductState& psi) {
  const int n = L.num_sites();
  if (R.num_sites() != n || mid.size() != n || psi.size() != n) {
    fail(ErrorCode::argument, "sandwich: site counts differ");
  }
  std::vector<Cx<T>> env{Cx<T>(T(1.0), T(0.0))};
  long exponent = 0;
  for (int j = 1; j <= n; ++j) {
    const auto& ls = L.sites[j - 1];
    const auto& rs = R.sites[j - 1];
    const Letter c = mid.letter(j);
    Cx<T> tab[4][4];
    for (int a = 0; a < 4; ++a) {
      LetterProduct ac = letter_product(static_cast<Letter>(a), c);
      for (int b = 0; b < 4; ++b) {
        LetterProduct acb = letter_product(ac.letter, static_cast<Letter>(b));
        tab[a][b] = i_pow<T>(ac.phase + acb.phase) * site_expectation<T>(psi.site(j), acb.letter);
      }
    }
    const int dl = rs.left_dim, dr = rs.right_dim;
    std::vector<Cx<T>> next(static_cast<std::size_t>(ls.right_dim) * dr);
    for (const auto& t1 : ls.trans) {
      const Cx<T>* row = &env[static_cast<std::size_t>(t1.l) * dl];
      Cx<T>* out = &next[static_cast<std::size_t>(t1.r) * dr];
      const auto* tl = tab[static_cast<int>(t1.letter)];
      for (const auto& t2 : rs.trans) {
        const Cx<T>& e = row[t2.l];
        if (is_zero(e)) continue;
        out[t2.r] += e * (t1.amp * t2.amp * tl[static_cast<int>(t2.letter)]);
      }
    }
    double m = max_abs(next);
    if (m == 0.0) return Scaled<Cx<T>>{};
    int k = std::ilogb(m);
    for (auto& z : next) z = scale2(z, -k);
    exponent += k;
    env = std::move(next);
  }
  return Scaled<Cx<T>>{env[0], exponent};
}

namespace {

template <class T>
BigCx mode_numerator_t(const CircuitSpec& spec, T u, const ProductState& psi) {
  auto plus = localize(build_omega_chain_t<T>(spec, Cx<T>(T(0.0), u), Selector::a));
  auto minus = localize(build_omega_chain_t<T>(spec, Cx<T>(T(0.0), -u), Selector::a));
  Scaled<Cx<T>> f = sandwich(plus, make_chi(spec.family, spec.M), minus, psi);
  return BigCx{f.m.to_std(), f.e}.normalized();
}

}  // namespace

BigCx mode_numerator(const CircuitSpec& spec, int s, const ProductState& psi, const SpectralData& spectral) {
  if (s == 0 || std::abs(s) > spectral.S) {
    fail(ErrorCode::argument, "mode index " + std::to_string(s) + " outside +-1.." + std::to_string(spectral.S));
  }
  if (psi.size() != spec.M) fail(ErrorCode::argument, "product state has the wrong number of sites");
  if (spectral.precision == Precision::extended) return mode_numerator_t<DDouble>(spec, spectral.u_ext(s), psi);
  return mode_numerator_t<double>(spec, spectral.u(s), psi);
}

cplx mode_expectation(const CircuitSpec& spec, int s, const ProductState& psi, const SpectralData& spectral) {
  return (mode_numerator(spec, s, psi, spectral) / spectral.norm(s)).value();
}

std::vector<cplx> floquet_apply(const CircuitSpec& spec, std::span<const cplx> psi) {
  spec.validate();
  int n = 0;
  while ((std::size_t{1} << n) < psi.size()) ++n;
  if ((std::size_t{1} << n) != psi.size() || n < spec.M) {
    fail(ErrorCode::argument, "floquet_apply: state size is not 2^N with N >= M");
  }
  if (n > 24) fail(ErrorCode::resource, "floquet_apply: " + std::to_string(n) + " sites exceed the dense limit");
  std::vector<cplx> cur(psi.begin(), psi.end()), nxt(psi.size());
  std::vector<int> order = spec.gate_order();
  std::vector<int> seq(order.begin(), order.end());
  seq.insert(seq.end(), order.rbegin(), order.rend());
  for (int m : seq) {
    double c = std::cos(spec.phi(m) / 2), s = std::sin(spec.phi(m) / 2);
    for (std::size_t i = 0; i < cur.size(); ++i) nxt[i] = c * cur[i];
    apply_add(make_h(m, n), cur, nxt, cplx(0, s));
    std::swap(cur, nxt);
  }
  return cur;
}

template OmegaChainT<double> build_omega_chain_t(const CircuitSpec&, Cx<double>, Selector, int);
template OmegaChainT<DDouble> build_omega_chain_t(const CircuitSpec&, Cx<DDouble>, Selector, int);
template LocalMpoT<double> localize(const OmegaChainT<double>&);
template LocalMpoT<DDouble> localize(const OmegaChainT<DDouble>&);
template Scaled<Cx<double>> sandwich(const LocalMpoT<double>&, const PauliString&, const LocalMpoT<double>&,
                                     const ProductState&);
template Scaled<Cx<DDouble>> sandwich(const LocalMpoT<DDouble>&, const PauliString&, const LocalMpoT<DDouble>&,
                                      const ProductState&);

}  // namespace ffd
