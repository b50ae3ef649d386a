#include "ffd/spectrum.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <unsupported/Eigen/Polynomials>

#include "ffd/error.hpp"

namespace ffd {

std::string_view to_string(Precision p) { return p == Precision::standard ? "standard" : "extended"; }

Precision parse_precision(std::string_view text) {
  if (text == "standard") return Precision::standard;
  if (text == "extended") return Precision::extended;
  fail(ErrorCode::argument, "precision: expected standard or extended, got '" + std::string(text) + "'");
}

template <>
Params<double> circuit_params<double>(const CircuitSpec& spec) {
  Params<double> p;
  for (int m = 1; m <= spec.M; ++m) {
    p.xv.push_back(spec.x(m));
    p.yv.push_back(spec.y(m));
  }
  return p;
}

template <>
Params<DDouble> circuit_params<DDouble>(const CircuitSpec& spec) {
  Params<DDouble> p;
  for (int m = 1; m <= spec.M; ++m) {
    double c = spec.x(m), s = spec.y(m);
    DDouble X(c), Y(s);
    if (std::abs(s) <= std::abs(c)) {
      Y = sqrt(DDouble(1.0) - X * X);
      if (s < 0) Y = -Y;
    } else {
      X = sqrt(DDouble(1.0) - Y * Y);
      if (c < 0) X = -X;
    }
    p.xv.push_back(X);
    p.yv.push_back(Y);
  }
  return p;
}

namespace {

// One pass over the chain steps. R supplies the unit, multiplication by w and by (a + b w);
// visit(m, state) sees (A, B, C, D) after every step, starting at m = 0.
template <class T, class R, class Visit>
void run_chain(const CircuitSpec& spec, const Params<T>& P, const R& ring, Visit&& visit) {
  using V = typename R::Value;
  auto x2 = [&](int m) { return P.x(m) * P.x(m); };
  auto y2 = [&](int m) { return P.y(m) * P.y(m); };
  const V one = ring.one();
  std::array<V, 4> st{one, ring.times_w(one), ring.times_w(one), T(-1.0) * one};
  if (spec.family == Family::I) st[3] = T(0.0) * one;
  visit(0, st);
  auto& [A, B, C, D] = st;
  switch (spec.family) {
    case Family::I:
      for (int m = 1; m <= spec.M; ++m) {
        V nA = x2(m) * A + y2(m) * B;
        V nC = ring.times_w(A);
        B = C;
        C = nC;
        A = nA;
        visit(m, st);
      }
      break;
    case Family::II:
      for (int m = 2; m <= spec.M; m += 2) {
        V nA = (x2(m - 1) * x2(m)) * A + y2(m - 1) * B + (x2(m - 1) * y2(m)) * C;
        V nB = ring.times_w(A);
        V nC = ring.times_w(x2(m - 1) * A + (x2(m) * y2(m - 1)) * B + (-(y2(m) * y2(m - 1))) * D);
        V nD = (-x2(m)) * A + (-y2(m)) * C;
        A = nA, B = nB, C = nC, D = nD;
        visit(m, st);
      }
      break;
    case Family::III:
      for (int m = 3; m <= spec.M; m += 3) {
        T kp0 = x2(m), kp1 = y2(m);  // x^2 + w y^2
        T km0 = y2(m), km1 = x2(m);  // y^2 + w x^2
        V nA = (x2(m - 2) * x2(m - 1)) * ring.affine(A, kp0, kp1) + y2(m - 2) * B + (x2(m - 2) * y2(m - 1)) * C;
        V nB = ring.times_w(x2(m - 2) * A) + (y2(m - 2) * x2(m - 1)) * ring.affine(B, km0, km1) +
               ring.times_w((-(y2(m - 1) * y2(m - 2))) * D);
        V nC = ring.times_w((x2(m - 2) * x2(m - 1)) * A) +
               ring.affine(y2(m - 2) * B + (x2(m - 2) * y2(m - 1)) * C, km0, km1);
        V nD = ring.affine((-x2(m - 2)) * A + (y2(m - 2) * y2(m - 1)) * D, kp0, kp1) +
               (-(y2(m - 2) * x2(m - 1))) * B;
        A = nA, B = nB, C = nC, D = nD;
        visit(m, st);
      }
      break;
  }
}

template <class T>
struct PolyRing {
  using Value = Poly<T>;
  Value one() const { return Poly<T>{{T(1.0)}}; }
  Value times_w(const Value& p) const { return p.affine(T(0.0), T(1.0)); }
  Value affine(const Value& p, const T& a, const T& b) const { return p.affine(a, b); }
};

// Value and w-derivative at a fixed point.
template <class T>
struct Jet {
  Cx<T> v, d;
  friend Jet operator+(const Jet& a, const Jet& b) { return {a.v + b.v, a.d + b.d}; }
  friend Jet operator*(const T& s, const Jet& a) { return {s * a.v, s * a.d}; }
};

template <class T>
struct JetRing {
  using Value = Jet<T>;
  Cx<T> z;
  Value one() const { return {Cx<T>(T(1.0)), Cx<T>(T(0.0))}; }
  Value times_w(const Value& a) const { return {z * a.v, a.v + z * a.d}; }
  Value affine(const Value& a, const T& p, const T& q) const {
    Cx<T> k = Cx<T>(p) + q * z;
    return {k * a.v, q * a.v + k * a.d};
  }
};

template <class T>
double cx_magnitude(const Cx<T>& a) {
  return std::max(std::abs(to_double(a.re)), std::abs(to_double(a.im)));
}

}  // namespace

template <class T>
ChainPoint<T> evaluate_chain(const CircuitSpec& spec, const Params<T>& P, const Cx<T>& z) {
  ChainPoint<T> out;
  const int lower = spec.M - (spec.family == Family::I ? 1 : (spec.family == Family::II ? 2 : 3));
  long e = 0;
  run_chain(spec, P, JetRing<T>{z}, [&](int m, std::array<Jet<T>, 4>& st) {
    double mx = 0;
    for (const auto& j : st) mx = std::max({mx, cx_magnitude(j.v), cx_magnitude(j.d)});
    if (mx > 0 && std::isfinite(mx)) {
      int k = std::ilogb(mx);
      for (auto& j : st) j = {scale2(j.v, -k), scale2(j.d, -k)};
      e += k;
    }
    if (m == lower) {
      out.lower = Scaled<Cx<T>>{st[0].v, e}.normalized();
      Cx<T> r = is_zero(st[0].v) ? Cx<T>(T(0.0)) : z * st[0].d / st[0].v;
      out.lower_sensitivity = is_zero(st[0].v) ? std::numeric_limits<double>::infinity()
                                               : std::hypot(to_double(r.re), to_double(r.im));
    }
    if (m == spec.M) {
      out.value = Scaled<Cx<T>>{st[0].v, e}.normalized();
      out.derivative = Scaled<Cx<T>>{st[0].d, e}.normalized();
      out.ratio = is_zero(st[0].d) ? Cx<T>(T(0.0)) : st[0].v / st[0].d;
    }
  });
  return out;
}

template ChainPoint<double> evaluate_chain(const CircuitSpec&, const Params<double>&, const Cx<double>&);
template ChainPoint<DDouble> evaluate_chain(const CircuitSpec&, const Params<DDouble>&, const Cx<DDouble>&);

template <class T>
Chain<T> build_chain(const CircuitSpec& spec) {
  spec.validate();
  const Params<T> P = circuit_params<T>(spec);
  Chain<T> out;
  run_chain(spec, P, PolyRing<T>{}, [&](int m, std::array<Poly<T>, 4>& st) {
    out.A[m] = st[0];
    if (m == spec.M) {
      out.B = st[1];
      out.C = st[2];
      out.D = spec.family == Family::I ? Poly<T>{} : st[3];
    }
  });
  return out;
}

template Chain<double> build_chain<double>(const CircuitSpec&);
template Chain<DDouble> build_chain<DDouble>(const CircuitSpec&);

namespace {

template <class T>
T sum_coeffs(const Poly<T>& p) {
  T s(0.0);
  for (const auto& c : p.c) s += c;
  return s;
}

template <class T>
ScalarChains to_scalar(const Chain<T>& ch, Precision prec, int M) {
  ScalarChains r;
  r.precision = prec;
  r.A = ch.A.at(M).template cast<double>();
  r.B = ch.B.template cast<double>();
  r.C = ch.C.template cast<double>();
  r.D = ch.D.template cast<double>();
  for (const auto& [m, p] : ch.A) r.A_history[m] = p.template cast<double>();
  r.calA_at_one_minus_one = to_double(sum_coeffs(ch.A.at(M)) - T(1.0));
  return r;
}

template <class T>
constexpr double eps_of() {
  if constexpr (std::is_same_v<T, double>) return std::numeric_limits<double>::epsilon();
  else return DDouble::epsilon();
}

// P/P' at complex z without overflow.
template <class T>
Cx<T> newton_ratio(const Poly<T>& p, const Cx<T>& z) {
  const int S = p.degree();
  double az = std::max(std::abs(to_double(z.re)), std::abs(to_double(z.im)));
  if (az <= 1.0) {
    Cx<T> v(T(0.0)), d(T(0.0));
    for (int j = S; j >= 0; --j) {
      d = d * z + v;
      v = v * z + Cx<T>(p.c[j]);
    }
    return v / d;
  }
  Cx<T> iv = Cx<T>(T(1.0)) / z;
  Cx<T> q(T(0.0)), dq(T(0.0));
  for (int j = 0; j <= S; ++j) {
    dq = dq * iv + q;
    q = q * iv + Cx<T>(p.c[j]);
  }
  return z * q / (Cx<T>(T(static_cast<double>(S))) * q - iv * dq);
}

template <class T>
double rel_abs(const Cx<T>& a, const Cx<T>& b) {
  double na = std::hypot(to_double(a.re), to_double(a.im));
  double nb = std::hypot(to_double(b.re), to_double(b.im));
  return nb == 0 ? na : na / nb;
}

// Lower hull of (j, -log|p_j|) gives root magnitudes.
template <class T>
std::vector<Cx<T>> polygon_seeds(const Poly<T>& p) {
  const int S = p.degree();
  std::vector<double> lg(S + 1);
  for (int j = 0; j <= S; ++j) {
    double a = std::abs(to_double(p.c[j]));
    lg[j] = a > 0 ? std::log(a) : -1e300;
  }
  std::vector<int> hull;
  for (int j = 0; j <= S; ++j) {
    if (lg[j] < -1e299) continue;
    while (hull.size() >= 2) {
      int a = hull[hull.size() - 2], b = hull.back();
      if ((lg[b] - lg[a]) * (j - a) <= (lg[j] - lg[a]) * (b - a)) hull.pop_back();
      else break;
    }
    hull.push_back(j);
  }
  std::vector<Cx<T>> seeds;
  int count = 0;
  for (std::size_t h = 1; h < hull.size(); ++h) {
    int a = hull[h - 1], b = hull[h];
    double r = std::exp((lg[a] - lg[b]) / (b - a));
    for (int i = 0; i < b - a; ++i, ++count) {
      double ang = 2.0 * M_PI * (i + 0.5) / (b - a) + 0.4;
      seeds.emplace_back(T(-r * std::cos(ang * 0.25)), T(r * std::sin(ang)));
    }
  }
  return seeds;
}

template <class T, class F>
bool aberth(const F& ratio, std::vector<Cx<T>>& z) {
  const std::size_t S = z.size();
  const double tol = 64 * eps_of<T>();
  double prev = 1e300;
  int stall = 0;
  for (int it = 0; it < 600; ++it) {
    double worst = 0;
    for (std::size_t k = 0; k < S; ++k) {
      Cx<T> n = ratio(z[k]);
      if (!std::isfinite(to_double(n.re)) || !std::isfinite(to_double(n.im))) return false;
      if (is_zero(n)) continue;
      Cx<T> s(T(0.0));
      for (std::size_t j = 0; j < S; ++j)
        if (j != k) s += Cx<T>(T(1.0)) / (z[k] - z[j]);
      Cx<T> corr = n / (Cx<T>(T(1.0)) - n * s);
      z[k] -= corr;
      worst = std::max(worst, rel_abs(corr, z[k]));
    }
    if (worst < tol) return true;
    if (worst < 1e-6 && worst >= 0.5 * prev) {
      if (++stall >= 3) return true;
    } else {
      stall = 0;
    }
    prev = worst;
  }
  return prev < 1e-6;
}

template <class T>
Scaled<T> derivative_from_roots(const Poly<T>& p, const std::vector<T>& w, std::size_t k) {
  Scaled<T> d = Scaled<T>::from(p.leading());
  for (std::size_t j = 0; j < w.size(); ++j)
    if (j != k) d = d * Scaled<T>::from(w[k] - w[j]);
  return d;
}

}  // namespace

namespace {

// Seeds from the coefficients; every iteration evaluates P/P' through ratio(z).
template <class T, class F>
Roots<T> solve_roots(const Poly<T>& p_in, const F& ratio) {
  using std::abs;
  using std::sqrt;
  Poly<T> p = p_in;
  p.trim();
  const int S = p.degree();
  Roots<T> out;
  if (S < 1) fail(ErrorCode::spectral_structure, "polynomial has no finite roots (degree 0)");

  std::vector<Cx<T>> z;
  {
    Eigen::VectorXd coeffs(S + 1);
    for (int j = 0; j <= S; ++j) coeffs[j] = to_double(p.c[j]);
    Eigen::PolynomialSolver<double, Eigen::Dynamic> solver;
    solver.compute(coeffs);
    bool ok = true;
    for (Eigen::Index i = 0; i < solver.roots().size(); ++i) {
      auto r = solver.roots()[i];
      if (!std::isfinite(r.real()) || !std::isfinite(r.imag())) ok = false;
      z.emplace_back(T(r.real()), T(r.imag()));
    }
    // Nudge exact duplicates apart so the Aberth sums stay finite.
    for (std::size_t k = 0; k < z.size(); ++k)
      for (std::size_t j = 0; j < k; ++j)
        if (z[k].re == z[j].re && z[k].im == z[j].im) z[k].im = z[k].im + T(1e-3 * (1.0 + std::abs(to_double(z[k].re))));
    if (!ok || !aberth(ratio, z)) {
      z = polygon_seeds(p);
      if (!aberth(ratio, z)) fail(ErrorCode::spectral_structure, "root iteration did not converge");
    }
  }

  for (auto& r : z) {
    double re = to_double(r.re), im = to_double(r.im);
    double mag = std::hypot(re, im);
    if (std::abs(im) > 1e-8 * mag) {
      fail(ErrorCode::spectral_structure, "calA has a complex root in w = u^2 (imaginary part " + std::to_string(im) + ")");
    }
    if (re > -1e-8 * mag || mag == 0) {
      fail(ErrorCode::spectral_structure, "calA has a nonnegative root in w = u^2 (" + std::to_string(re) + ")");
    }
  }
  std::vector<T> w;
  for (auto& r : z) {
    // Final Newton step on the real axis.
    T wr = r.re;
    Cx<T> n = ratio(Cx<T>(wr));
    if (std::isfinite(to_double(n.re)) && std::abs(to_double(n.re)) < 1e-3 * std::abs(to_double(wr))) wr = wr - n.re;
    w.push_back(wr);
  }
  std::sort(w.begin(), w.end(), [](const T& a, const T& b) { return b < a; });  // descending w = ascending u
  for (const auto& wk : w) out.u.push_back(sqrt(-wk));
  for (std::size_t k = 1; k < out.u.size(); ++k) {
    double a = to_double(out.u[k - 1]), b = to_double(out.u[k]);
    if (b - a < 1e-8 * b) {
      fail(ErrorCode::degeneracy, "roots u_" + std::to_string(k) + " and u_" + std::to_string(k + 1) +
                                      " coincide within 1e-8 (" + std::to_string(a) + "); perturb the phases");
    }
  }
  for (std::size_t k = 0; k < w.size(); ++k) {
    PolyEval<T> ev = eval_scaled(p, w[k]);
    double back = std::exp((ev.value.log_abs()) - ev.magnitude_sum.log_abs());
    if (to_double(ev.value.m) == 0.0) back = 0.0;
    out.max_backward_error = std::max(out.max_backward_error, back);
    Scaled<T> d = derivative_from_roots(p, w, k);
    Scaled<T> aw = Scaled<T>::from(abs(w[k]));
    double cond = std::exp(ev.magnitude_sum.log_abs() - (aw * d).log_abs());
    out.max_condition = std::max(out.max_condition, cond);
  }
  if (out.max_backward_error > 1e-9) {
    fail(ErrorCode::consistency, "root backward error " + std::to_string(out.max_backward_error) + " exceeds 1e-9");
  }
  out.w = std::move(w);
  return out;
}

}  // namespace

template <class T>
Roots<T> find_roots_t(const Poly<T>& p) {
  Poly<T> q = p;
  q.trim();
  return solve_roots(q, [&](const Cx<T>& z) { return newton_ratio(q, z); });
}

template Roots<double> find_roots_t<double>(const Poly<double>&);
template Roots<DDouble> find_roots_t<DDouble>(const Poly<DDouble>&);

std::vector<double> find_roots(const PolyU2& p) { return find_roots_t(p).u; }

ScalarChains build_calA(const CircuitSpec& spec, Precision precision, bool escalate) {
  if (precision == Precision::standard) {
    Chain<double> ch = build_chain<double>(spec);
    ScalarChains r = to_scalar(ch, Precision::standard, spec.M);
    if (!escalate || std::abs(r.calA_at_one_minus_one) <= 1e-8) return r;
  }
  return to_scalar(build_chain<DDouble>(spec), Precision::extended, spec.M);
}

namespace {

int lower_offset(Family f) { return f == Family::I ? 1 : (f == Family::II ? 2 : 3); }

template <class T>
T from_ext(const DDouble& v) {
  if constexpr (std::is_same_v<T, double>) return to_double(v);
  else return v;
}

template <class T>
Poly<T> poly_from_ext(const Poly<DDouble>& p) {
  Poly<T> r;
  for (const auto& c : p.c) r.c.push_back(from_ext<T>(c));
  return r;
}

template <class T>
BigReal to_big(const Scaled<T>& s) {
  return BigReal{to_double(s.m), s.e}.normalized();
}

template <class T>
SpectralData solve_impl(const CircuitSpec& spec, Precision prec) {
  Chain<T> ch = build_chain<T>(spec);
  SpectralData d;
  d.family = spec.family;
  d.M = spec.M;
  d.phases = spec.phases;
  d.precision = prec;
  d.S = mode_count(spec.M);
  Poly<T> P = ch.A.at(spec.M);
  d.calA_at_one_minus_one = to_double(sum_coeffs(P) - T(1.0));
  P.trim();
  if (P.degree() != d.S) {
    fail(ErrorCode::spectral_structure, "calA_M has degree " + std::to_string(P.degree()) + ", expected S = " +
                                            std::to_string(d.S) + " (vanishing sin phi sends roots to infinity)");
  }
  const Params<T> par = circuit_params<T>(spec);
  Roots<T> roots = solve_roots(P, [&](const Cx<T>& z) { return evaluate_chain(spec, par, z).ratio; });
  d.max_backward_error = roots.max_backward_error;
  d.max_condition = roots.max_condition;
  [[maybe_unused]] Params<DDouble> ext;
  if constexpr (std::is_same_v<T, double>) ext = circuit_params<DDouble>(spec);
  auto real_part = [](const Scaled<Cx<T>>& v) { return BigReal{to_double(v.m.re), v.e}.normalized(); };
  for (std::size_t k = 0; k < roots.u.size(); ++k) {
    if constexpr (std::is_same_v<T, double>) d.roots_ext.emplace_back(roots.u[k]);
    else d.roots_ext.push_back(roots.u[k]);
    d.roots.push_back(to_double(roots.u[k]));
    d.pseudoenergies.push_back(std::atan(1.0 / d.roots.back()));
    ChainPoint<T> cp = evaluate_chain(spec, par, Cx<T>(roots.w[k]));
    d.dcalA.push_back(real_part(cp.derivative));
    d.lower_values.push_back(real_part(cp.lower));
    d.lower_sensitivity.push_back(cp.lower_sensitivity);
    // One extended-precision Newton step estimates the remaining root error.
    double step;
    if constexpr (std::is_same_v<T, double>) {
      step = to_double(evaluate_chain(spec, ext, Cx<DDouble>(DDouble(roots.w[k]))).ratio.re);
    } else {
      step = to_double(cp.ratio.re);
    }
    d.max_root_error = std::max(d.max_root_error, std::abs(step / to_double(roots.w[k])));
  }
  d.calA = P.template cast<DDouble>();
  d.lower_index = spec.M - lower_offset(spec.family);
  d.calA_lower = ch.A.at(d.lower_index).template cast<DDouble>();
  return d;
}

template <class T>
void normalizations_impl(const CircuitSpec& spec, SpectralData& d) {
  const Params<T> P = circuit_params<T>(spec);
  const int M = spec.M;
  d.norms.clear();
  for (int k = 0; k < d.S; ++k) {
    T u = from_ext<T>(d.roots_ext[k]);
    T pref(0.0);
    switch (spec.family) {
      case Family::I: pref = T(16.0) * u * u * P.x(M) * P.x(M); break;
      case Family::II: pref = T(16.0) * u * u * (P.x(M) * P.x(M - 1)) * (P.x(M) * P.x(M - 1)); break;
      case Family::III: {
        T X = P.x(M - 2) * P.x(M - 1) * P.y(M);
        pref = T(16.0) * (u * u) * (u * u) * X * X;
        break;
      }
    }
    // Relative uncertainty of the lower chain value from the root error and rounding.
    double uncertainty = d.lower_sensitivity[k] * std::max(M * eps_of<T>(), d.max_root_error);
    if (d.lower_values[k].m == 0.0 || !(uncertainty < 1e-6)) {
      fail(ErrorCode::degeneracy, "normalization N_" + std::to_string(k + 1) + " vanishes (lower chain shares the root)");
    }
    BigReal n2 = to_big(Scaled<T>::from(pref)) * d.lower_values[k] * d.dcalA[k];
    if (to_double(pref) == 0.0) fail(ErrorCode::degeneracy, "normalization prefactor vanishes");
    d.norms.push_back(sqrt(BigCx{std::complex<double>(n2.m, 0.0), n2.e}));
  }
}

template <class T>
void coefficients_impl(const CircuitSpec& spec, SpectralData& d) {
  const Params<T> P = circuit_params<T>(spec);
  const int M = spec.M;
  T X = P.x(M - 2) * P.x(M - 1) * P.y(M);
  Poly<T> low = poly_from_ext<T>(d.calA_lower);
  d.coefficients.clear();
  for (int k = 0; k < d.S; ++k) {
    T u = from_ext<T>(d.roots_ext[k]);
    BigReal num = to_big(Scaled<T>::from(T(4.0) * u * u * X * X)) * d.lower_values[k];
    BigCx c = BigCx{std::complex<double>(num.m, 0.0), num.e} / d.norms[k];
    d.coefficients.push_back(c.value());
  }
  Poly<T> top = poly_from_ext<T>(d.calA);
  T q = low.degree() == d.S - 1 ? low.leading() : T(0.0);
  T c0sq = T(1.0) - X * X * q / top.leading();
  d.c0_squared = to_double(c0sq);
  if (d.c0_squared < -1e-10) {
    fail(ErrorCode::spectral_structure, "c0^2 = " + std::to_string(d.c0_squared) + " is negative");
  }
  d.c0 = std::sqrt(std::max(0.0, d.c0_squared));
}

}  // namespace

void normalizations(const CircuitSpec& spec, SpectralData& data) {
  if (data.precision == Precision::extended) normalizations_impl<DDouble>(spec, data);
  else normalizations_impl<double>(spec, data);
}

void coefficients_III(const CircuitSpec& spec, SpectralData& data) {
  if (spec.family != Family::III) {
    fail(ErrorCode::unsupported, "expansion coefficients are only available for family III");
  }
  if (data.norms.size() != static_cast<std::size_t>(data.S)) normalizations(spec, data);
  if (data.precision == Precision::extended) coefficients_impl<DDouble>(spec, data);
  else coefficients_impl<double>(spec, data);
}

SpectralData solve_spectrum(const CircuitSpec& spec, Precision precision, bool escalate) {
  spec.validate();
  SpectralData d;
  bool done = false;
  if (precision == Precision::standard) {
    // Escalate when calA_M(1) drifts, when the roots cannot be resolved, or when an extended Newton
    // step moves a root by more than 1e-12.
    try {
      d = solve_impl<double>(spec, Precision::standard);
      done = !escalate || (std::abs(d.calA_at_one_minus_one) <= 1e-8 && d.max_root_error <= 1e-12);
      if (done) normalizations(spec, d);
    } catch (const Error& e) {
      if (!escalate || e.code() == ErrorCode::argument) throw;
    }
  }
  if (!done) {
    d = solve_impl<DDouble>(spec, Precision::extended);
    normalizations(spec, d);
  }
  if (spec.family == Family::III) coefficients_III(spec, d);
  return d;
}

std::complex<double> time_coefficient(std::complex<double> c, double u, int t) {
  std::complex<double> r = std::complex<double>(-1.0, u) / std::complex<double>(1.0, u);
  return c * std::polar(1.0, static_cast<double>(t) * std::arg(r));
}

}  // namespace ffd
