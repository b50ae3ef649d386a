#pragma once

#include <algorithm>
#include <cmath>
#include <type_traits>
#include <complex>
#include <vector>

#include "ffd/ddouble.hpp"

namespace ffd {

// Value m * 2^e with m kept near unit magnitude; survives products far outside double range.
template <class V>
struct Scaled {
  V m{};
  long e = 0;

  static Scaled from(V v) { return Scaled{v, 0}.normalized(); }

  Scaled normalized() const {
    double a = magnitude(m);
    if (a == 0.0 || !std::isfinite(a)) return *this;
    int k = std::ilogb(a);
    return Scaled{scale(m, -k), e + k};
  }
  friend Scaled operator*(const Scaled& a, const Scaled& b) { return Scaled{a.m * b.m, a.e + b.e}.normalized(); }
  friend Scaled operator/(const Scaled& a, const Scaled& b) { return Scaled{a.m / b.m, a.e - b.e}.normalized(); }
  double log_abs() const { return std::log(magnitude(m)) + static_cast<double>(e) * std::log(2.0); }
  V value() const { return scale(m, static_cast<int>(std::clamp(e, -100000L, 100000L))); }

 private:
  static double magnitude(double v) { return std::abs(v); }
  static double magnitude(DDouble v) { return std::abs(v.hi()); }
  static double magnitude(std::complex<double> v) { return std::max(std::abs(v.real()), std::abs(v.imag())); }
  template <class T>
  static double magnitude(const Cx<T>& v) {
    return std::max(std::abs(to_double(v.re)), std::abs(to_double(v.im)));
  }
  static double scale(double v, int k) { return std::ldexp(v, k); }
  static DDouble scale(DDouble v, int k) { return ldexp(v, k); }
  static std::complex<double> scale(std::complex<double> v, int k) {
    return {std::ldexp(v.real(), k), std::ldexp(v.imag(), k)};
  }
  template <class T>
  static Cx<T> scale(const Cx<T>& v, int k) { return scale2(v, k); }
};

using BigReal = Scaled<double>;
using BigCx = Scaled<std::complex<double>>;

// Principal square root.
inline BigCx sqrt(const BigCx& a) {
  BigCx r{a.m, a.e};
  if (r.e % 2 != 0) {
    r.m *= 2.0;
    r.e -= 1;
  }
  return BigCx{std::sqrt(r.m), r.e / 2}.normalized();
}

// Real polynomial in w = u^2, coefficient j multiplies w^j.
template <class T>
struct Poly {
  std::vector<T> c;

  int degree() const { return static_cast<int>(c.size()) - 1; }
  const T& leading() const { return c.back(); }

  template <class V>
  V operator()(const V& w) const {
    V acc = V(T(0.0));
    for (std::size_t j = c.size(); j-- > 0;) acc = acc * w + V(c[j]);
    return acc;
  }

  Poly derivative() const {
    Poly d;
    for (std::size_t j = 1; j < c.size(); ++j) d.c.push_back(c[j] * T(static_cast<double>(j)));
    if (d.c.empty()) d.c.push_back(T(0.0));
    return d;
  }

  // Drops leading coefficients with magnitude <= rel times the largest one; rel = 0 drops exact zeros only.
  void trim(double rel = 0.0) {
    double mx = 0;
    for (const auto& v : c) mx = std::max(mx, std::abs(to_double(v)));
    while (c.size() > 1 && std::abs(to_double(c.back())) <= rel * mx) c.pop_back();
  }

  Poly& operator+=(const Poly& o) {
    if (o.c.size() > c.size()) c.resize(o.c.size(), T(0.0));
    for (std::size_t j = 0; j < o.c.size(); ++j) c[j] += o.c[j];
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator*(const T& s, Poly a) {
    for (auto& v : a.c) v = v * s;
    return a;
  }
  // (a + b w) p
  Poly affine(const T& a, const T& b) const {
    Poly r;
    r.c.assign(c.size() + 1, T(0.0));
    for (std::size_t j = 0; j < c.size(); ++j) {
      r.c[j] += a * c[j];
      r.c[j + 1] += b * c[j];
    }
    return r;
  }

  template <class U>
  Poly<U> cast() const {
    Poly<U> r;
    for (const auto& v : c) {
      if constexpr (std::is_same_v<U, double>) r.c.push_back(to_double(v));
      else r.c.push_back(U(v));
    }
    return r;
  }
};

using PolyU2 = Poly<double>;

// P(w) as a scaled number together with the backward-error denominator sum |p_j||w|^j.
template <class T>
struct PolyEval {
  Scaled<T> value;
  Scaled<T> magnitude_sum;
};

// Overflow-safe evaluation at real w: direct Horner for |w| <= 1, reversed Horner in 1/w beyond.
template <class T>
PolyEval<T> eval_scaled(const Poly<T>& p, const T& w) {
  using std::abs;
  int S = p.degree();
  T aw = abs(w);
  if (to_double(aw) <= 1.0) {
    T v = T(0.0), s = T(0.0);
    for (int j = S; j >= 0; --j) {
      v = v * w + p.c[j];
      s = s * aw + abs(p.c[j]);
    }
    return {Scaled<T>::from(v), Scaled<T>::from(s)};
  }
  T iv = T(1.0) / w;
  T aiv = abs(iv);
  T v = T(0.0), s = T(0.0);
  for (int j = 0; j <= S; ++j) {
    v = v * iv + p.c[j];
    s = s * aiv + abs(p.c[j]);
  }
  Scaled<T> pw = Scaled<T>::from(T(1.0));
  Scaled<T> apw = Scaled<T>::from(T(1.0));
  Scaled<T> ws = Scaled<T>::from(w);
  Scaled<T> aws = Scaled<T>::from(aw);
  for (int j = 0; j < S; ++j) {
    pw = pw * ws;
    apw = apw * aws;
  }
  return {Scaled<T>::from(v) * pw, Scaled<T>::from(s) * apw};
}

}  // namespace ffd
