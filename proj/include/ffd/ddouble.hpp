#pragma once

#include <cmath>
#include <complex>
#include <limits>

namespace ffd {

// Unevaluated sum hi + lo with |lo| <= ulp(hi)/2.
class DDouble {
 public:
  constexpr DDouble() = default;
  constexpr DDouble(double x) : hi_(x), lo_(0.0) {}  // NOLINT
  constexpr DDouble(double hi, double lo) : hi_(hi), lo_(lo) {}

  constexpr double hi() const { return hi_; }
  constexpr double lo() const { return lo_; }
  explicit operator double() const { return hi_ + lo_; }

  friend DDouble operator-(DDouble a) { return {-a.hi_, -a.lo_}; }

  friend DDouble operator+(DDouble a, DDouble b) {
    double s, e, t, f;
    two_sum(a.hi_, b.hi_, s, e);
    two_sum(a.lo_, b.lo_, t, f);
    e += t;
    quick_two_sum(s, e, s, e);
    e += f;
    quick_two_sum(s, e, s, e);
    return {s, e};
  }
  friend DDouble operator+(DDouble a, double b) {
    double s, e;
    two_sum(a.hi_, b, s, e);
    e += a.lo_;
    quick_two_sum(s, e, s, e);
    return {s, e};
  }
  friend DDouble operator+(double a, DDouble b) { return b + a; }
  friend DDouble operator-(DDouble a, DDouble b) { return a + (-b); }
  friend DDouble operator-(DDouble a, double b) { return a + (-b); }
  friend DDouble operator-(double a, DDouble b) { return (-b) + a; }

  friend DDouble operator*(DDouble a, DDouble b) {
    double p, e;
    two_prod(a.hi_, b.hi_, p, e);
    e += a.hi_ * b.lo_ + a.lo_ * b.hi_;
    quick_two_sum(p, e, p, e);
    return {p, e};
  }
  friend DDouble operator*(DDouble a, double b) {
    double p, e;
    two_prod(a.hi_, b, p, e);
    e += a.lo_ * b;
    quick_two_sum(p, e, p, e);
    return {p, e};
  }
  friend DDouble operator*(double a, DDouble b) { return b * a; }

  friend DDouble operator/(DDouble a, DDouble b) {
    double q1 = a.hi_ / b.hi_;
    DDouble r = a - b * q1;
    double q2 = r.hi_ / b.hi_;
    r = r - b * q2;
    double q3 = r.hi_ / b.hi_;
    double s, e;
    quick_two_sum(q1, q2, s, e);
    return DDouble(s, e) + q3;
  }
  friend DDouble operator/(DDouble a, double b) { return a / DDouble(b); }
  friend DDouble operator/(double a, DDouble b) { return DDouble(a) / b; }

  DDouble& operator+=(DDouble b) { return *this = *this + b; }
  DDouble& operator-=(DDouble b) { return *this = *this - b; }
  DDouble& operator*=(DDouble b) { return *this = *this * b; }
  DDouble& operator/=(DDouble b) { return *this = *this / b; }

  friend bool operator==(DDouble a, DDouble b) { return a.hi_ == b.hi_ && a.lo_ == b.lo_; }
  friend bool operator<(DDouble a, DDouble b) { return a.hi_ < b.hi_ || (a.hi_ == b.hi_ && a.lo_ < b.lo_); }
  friend bool operator>(DDouble a, DDouble b) { return b < a; }
  friend bool operator<=(DDouble a, DDouble b) { return !(b < a); }
  friend bool operator>=(DDouble a, DDouble b) { return !(a < b); }

  friend DDouble abs(DDouble a) { return a.hi_ < 0 ? -a : a; }
  friend DDouble ldexp(DDouble a, int k) { return {std::ldexp(a.hi_, k), std::ldexp(a.lo_, k)}; }
  friend DDouble sqrt(DDouble a) {
    if (a.hi_ <= 0) return DDouble(std::sqrt(a.hi_));
    double x = 1.0 / std::sqrt(a.hi_);
    double ax = a.hi_ * x;
    DDouble r = DDouble(ax) + (a - DDouble(ax) * ax).hi_ * (x * 0.5);
    return r;
  }

  static constexpr double epsilon() { return 4.93038065763132e-32; }

 private:
  double hi_ = 0.0;
  double lo_ = 0.0;

  static void two_sum(double a, double b, double& s, double& e) {
    s = a + b;
    double bb = s - a;
    e = (a - (s - bb)) + (b - bb);
  }
  static void quick_two_sum(double a, double b, double& s, double& e) {
    s = a + b;
    e = b - (s - a);
  }
  static void two_prod(double a, double b, double& p, double& e) {
    p = a * b;
#if defined(__FMA__) || defined(__FMA4__)
    e = std::fma(a, b, -p);
#else
    constexpr double split = 134217729.0;
    double t = split * a;
    double ahi = t - (t - a);
    double alo = a - ahi;
    t = split * b;
    double bhi = t - (t - b);
    double blo = b - bhi;
    e = ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo;
#endif
  }
};

inline double to_double(double x) { return x; }
inline double to_double(DDouble x) { return static_cast<double>(x); }
inline int exponent_of(double x) { return x == 0.0 ? 0 : std::ilogb(x); }
inline int exponent_of(DDouble x) { return exponent_of(x.hi()); }

template <class T>
struct Cx {
  T re{}, im{};
  Cx() = default;
  Cx(T r) : re(r), im(0.0) {}  // NOLINT
  Cx(T r, T i) : re(r), im(i) {}
  Cx(std::complex<double> z) : re(z.real()), im(z.imag()) {}  // NOLINT

  friend Cx operator+(const Cx& a, const Cx& b) { return {a.re + b.re, a.im + b.im}; }
  friend Cx operator-(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
  friend Cx operator-(const Cx& a) { return {-a.re, -a.im}; }
  friend Cx operator*(const Cx& a, const Cx& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
  friend Cx operator*(const Cx& a, const T& s) { return {a.re * s, a.im * s}; }
  friend Cx operator*(const T& s, const Cx& a) { return {a.re * s, a.im * s}; }
  friend Cx operator/(const Cx& a, const Cx& b) {
    T d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }
  Cx& operator+=(const Cx& b) { re += b.re; im += b.im; return *this; }
  Cx& operator-=(const Cx& b) { re -= b.re; im -= b.im; return *this; }
  Cx& operator*=(const Cx& b) { return *this = *this * b; }

  friend Cx conj(const Cx& a) { return {a.re, -a.im}; }
  friend T norm(const Cx& a) { return a.re * a.re + a.im * a.im; }
  friend bool is_zero(const Cx& a) { return a.re == T(0.0) && a.im == T(0.0); }
  friend Cx scale2(const Cx& a, int k) {
    using std::ldexp;
    return {ldexp(a.re, k), ldexp(a.im, k)};
  }
  std::complex<double> to_std() const { return {to_double(re), to_double(im)}; }
};

}  // namespace ffd
