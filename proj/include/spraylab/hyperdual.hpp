#pragma once

// Hyper-dual numbers a + b·e1 + c·e2 + d·e1e2 with e1² = e2² = 0.
//
// Seeding e1 along one coordinate and e2 along another gives the exact first
// partials in the b/c parts and the exact mixed second partial in d. Nesting
// (HyperDual<HyperDual<double>>) yields exact fourth-order information, which
// the Finsler module needs for curvature of an induced spray.

#include <cmath>
#include <type_traits>
#include <vector>

namespace spraylab {

// Generic expressions call sqrt/exp/... unqualified for both double and hyper-dual arguments.
using std::cos;
using std::exp;
using std::log;
using std::pow;
using std::sin;
using std::sqrt;

template <class T>
struct HyperDual {
  T a{}, b{}, c{}, d{};

  HyperDual() = default;
  HyperDual(double v) : a(v), b(0.0), c(0.0), d(0.0) {}
  HyperDual(const T& v)
    requires(!std::is_same_v<T, double>)
      : a(v), b(0.0), c(0.0), d(0.0) {}
  HyperDual(T a_, T b_, T c_, T d_) : a(a_), b(b_), c(c_), d(d_) {}

  HyperDual& operator+=(const HyperDual& o) {
    a += o.a; b += o.b; c += o.c; d += o.d;
    return *this;
  }
  HyperDual& operator-=(const HyperDual& o) {
    a -= o.a; b -= o.b; c -= o.c; d -= o.d;
    return *this;
  }
  HyperDual& operator*=(const HyperDual& o) { return *this = *this * o; }
  HyperDual& operator/=(const HyperDual& o) { return *this = *this / o; }

  friend HyperDual operator-(const HyperDual& x) { return {-x.a, -x.b, -x.c, -x.d}; }
  friend HyperDual operator+(HyperDual x, const HyperDual& y) { return x += y; }
  friend HyperDual operator-(HyperDual x, const HyperDual& y) { return x -= y; }
  friend HyperDual operator*(const HyperDual& x, const HyperDual& y) {
    return {x.a * y.a, x.a * y.b + x.b * y.a, x.a * y.c + x.c * y.a,
            x.a * y.d + x.b * y.c + x.c * y.b + x.d * y.a};
  }
  friend HyperDual operator/(const HyperDual& x, const HyperDual& y) { return x * inverse(y); }

  friend HyperDual operator+(const HyperDual& x, double s) { return {x.a + s, x.b, x.c, x.d}; }
  friend HyperDual operator+(double s, const HyperDual& x) { return x + s; }
  friend HyperDual operator-(const HyperDual& x, double s) { return {x.a - s, x.b, x.c, x.d}; }
  friend HyperDual operator-(double s, const HyperDual& x) { return {s - x.a, -x.b, -x.c, -x.d}; }
  friend HyperDual operator*(const HyperDual& x, double s) { return {x.a * s, x.b * s, x.c * s, x.d * s}; }
  friend HyperDual operator*(double s, const HyperDual& x) { return x * s; }
  friend HyperDual operator/(const HyperDual& x, double s) { return x * (1.0 / s); }
  friend HyperDual operator/(double s, const HyperDual& x) { return s * inverse(x); }

  // Chain rule for a scalar function with value f0, derivative f1, second derivative f2 at a.
  static HyperDual chain(const HyperDual& x, const T& f0, const T& f1, const T& f2) {
    return {f0, f1 * x.b, f1 * x.c, f1 * x.d + f2 * x.b * x.c};
  }

  friend HyperDual inverse(const HyperDual& x) {
    T inv = T(1.0) / x.a;
    return chain(x, inv, -inv * inv, 2.0 * inv * inv * inv);
  }
};

inline double value_of(double v) { return v; }
template <class T>
double value_of(const HyperDual<T>& x) {
  return value_of(x.a);
}

template <class T>
bool operator<(const HyperDual<T>& x, double v) { return value_of(x) < v; }
template <class T>
bool operator>(const HyperDual<T>& x, double v) { return value_of(x) > v; }
template <class T>
bool operator<=(const HyperDual<T>& x, double v) { return value_of(x) <= v; }
template <class T>
bool operator>=(const HyperDual<T>& x, double v) { return value_of(x) >= v; }

template <class T>
HyperDual<T> sqrt(const HyperDual<T>& x) {
  using std::sqrt;
  T r = sqrt(x.a);
  T d1 = 0.5 / r;
  return HyperDual<T>::chain(x, r, d1, -0.5 * d1 / x.a);
}

template <class T>
HyperDual<T> exp(const HyperDual<T>& x) {
  using std::exp;
  T e = exp(x.a);
  return HyperDual<T>::chain(x, e, e, e);
}

template <class T>
HyperDual<T> log(const HyperDual<T>& x) {
  using std::log;
  T inv = T(1.0) / x.a;
  return HyperDual<T>::chain(x, log(x.a), inv, -inv * inv);
}

template <class T>
HyperDual<T> pow(const HyperDual<T>& x, double k) {
  using std::pow;
  return HyperDual<T>::chain(x, pow(x.a, k), k * pow(x.a, k - 1.0),
                             k * (k - 1.0) * pow(x.a, k - 2.0));
}

template <class T>
HyperDual<T> sin(const HyperDual<T>& x) {
  using std::cos;
  using std::sin;
  T sv = sin(x.a);
  return HyperDual<T>::chain(x, sv, cos(x.a), -sv);
}

template <class T>
HyperDual<T> cos(const HyperDual<T>& x) {
  using std::cos;
  using std::sin;
  T cv = cos(x.a);
  return HyperDual<T>::chain(x, cv, -sin(x.a), -cv);
}

using Dual1 = HyperDual<double>;
using Dual2 = HyperDual<Dual1>;

template <class T>
using DualVec = std::vector<T>;

}  // namespace spraylab
