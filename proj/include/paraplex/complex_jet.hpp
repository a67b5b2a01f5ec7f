#pragma once

// Complex numbers over a real ring (double or Jet2).

#include <complex>

#include "paraplex/jet.hpp"

namespace paraplex {

template <class T>
struct ComplexT {
  T re{};
  T im{};

  ComplexT() = default;
  ComplexT(const T& r) : re(r), im(0.0) {}  // NOLINT
  ComplexT(const T& r, const T& i) : re(r), im(i) {}
  template <class U = T, class = std::enable_if_t<!std::is_same_v<U, double>>>
  ComplexT(double r) : re(r), im(0.0) {}  // NOLINT
  ComplexT(std::complex<double> z) : re(z.real()), im(z.imag()) {}  // NOLINT

  std::complex<double> value() const { return {value_of(re), value_of(im)}; }
};

using ComplexJet = ComplexT<Jet2>;
using ComplexProgram = std::function<ComplexJet(const JetPoint&)>;

template <class T>
bool is_real(const ComplexT<T>& z) {
  return is_zero(z.im);
}

template <class T>
ComplexT<T> operator+(const ComplexT<T>& a, const ComplexT<T>& b) {
  return {a.re + b.re, a.im + b.im};
}
template <class T>
ComplexT<T> operator-(const ComplexT<T>& a, const ComplexT<T>& b) {
  return {a.re - b.re, a.im - b.im};
}
template <class T>
ComplexT<T> operator-(const ComplexT<T>& a) {
  return {-a.re, -a.im};
}
template <class T>
ComplexT<T> operator*(const ComplexT<T>& a, const ComplexT<T>& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
template <class T>
ComplexT<T> operator*(double s, const ComplexT<T>& a) {
  return {s * a.re, s * a.im};
}
template <class T>
ComplexT<T> operator*(const ComplexT<T>& a, double s) {
  return {s * a.re, s * a.im};
}
template <class T>
ComplexT<T> conj(const ComplexT<T>& a) {
  return {a.re, -a.im};
}
template <class T>
T abs2(const ComplexT<T>& a) {
  return a.re * a.re + a.im * a.im;
}
template <class T>
ComplexT<T> operator/(const ComplexT<T>& a, const ComplexT<T>& b) {
  if (is_real(b)) {
    if (std::abs(value_of(b.re)) < kJetDivisionFloor) throw Error(ErrorKind::DivisionByZero, "complex denominator vanishes");
    const T inv = T(1.0) / b.re;
    return {a.re * inv, a.im * inv};
  }
  const T d = abs2(b);
  if (std::abs(value_of(d)) < kJetDivisionFloor * kJetDivisionFloor)
    throw Error(ErrorKind::DivisionByZero, "complex denominator vanishes");
  const T inv = T(1.0) / d;
  return {(a.re * b.re + a.im * b.im) * inv, (a.im * b.re - a.re * b.im) * inv};
}
template <class T>
ComplexT<T>& operator+=(ComplexT<T>& a, const ComplexT<T>& b) {
  return a = a + b;
}
template <class T>
ComplexT<T>& operator-=(ComplexT<T>& a, const ComplexT<T>& b) {
  return a = a - b;
}
template <class T>
ComplexT<T>& operator*=(ComplexT<T>& a, const ComplexT<T>& b) {
  return a = a * b;
}

template <class T>
ComplexT<T> cexp(const ComplexT<T>& a) {
  using std::cos;
  using std::exp;
  using std::sin;
  if (is_real(a)) return ComplexT<T>(exp(a.re));
  const T e = exp(a.re);
  return {e * cos(a.im), e * sin(a.im)};
}

template <class T>
ComplexT<T> csin(const ComplexT<T>& a) {
  using std::cos;
  using std::cosh;
  using std::sin;
  using std::sinh;
  if (is_real(a)) return ComplexT<T>(sin(a.re));
  return {sin(a.re) * cosh(a.im), cos(a.re) * sinh(a.im)};
}

template <class T>
ComplexT<T> ccos(const ComplexT<T>& a) {
  using std::cos;
  using std::cosh;
  using std::sin;
  using std::sinh;
  if (is_real(a)) return ComplexT<T>(cos(a.re));
  return {cos(a.re) * cosh(a.im), -(sin(a.re) * sinh(a.im))};
}

// Principal branch. Real non-positive arguments raise DomainError.
template <class T>
ComplexT<T> clog(const ComplexT<T>& a) {
  using std::atan2;
  using std::log;
  if (is_real(a)) {
    if (value_of(a.re) <= 0.0) throw Error(ErrorKind::DomainError, "log of non-positive real");
    return ComplexT<T>(log(a.re));
  }
  return {0.5 * log(abs2(a)), atan2(a.im, a.re)};
}

template <class T>
ComplexT<T> csqrt(const ComplexT<T>& a) {
  using std::sqrt;
  if (is_real(a)) {
    if (value_of(a.re) <= 0.0) throw Error(ErrorKind::DomainError, "sqrt of non-positive real");
    return ComplexT<T>(sqrt(a.re));
  }
  return cexp(0.5 * clog(a));
}

template <class T>
ComplexT<T> cpow(const ComplexT<T>& base, const ComplexT<T>& e) {
  using std::pow;
  if (is_real(e)) {
    const T& er = e.re;
    const double ev = value_of(er);
    const bool constant_exponent = [&] {
      if constexpr (std::is_same_v<T, double>) return true;
      else return is_zero(er - T(ev));
    }();
    if (constant_exponent && ev == std::floor(ev) && std::abs(ev) <= 64.0) {
      const int n = static_cast<int>(std::abs(ev));
      ComplexT<T> r(T(1.0));
      ComplexT<T> b = base;
      for (int k = n; k > 0; k >>= 1) {
        if (k & 1) r = r * b;
        if (k > 1) b = b * b;
      }
      return ev < 0.0 ? ComplexT<T>(T(1.0)) / r : r;
    }
    if (constant_exponent && is_real(base)) return ComplexT<T>(pow(base.re, ev));
  }
  return cexp(e * clog(base));
}

// Wirtinger derivatives of a complex jet at order one, using the chart identification
// (x0, x1, x2, x3) = (Re Z1, Im Z1, Re Z2, Im Z2).
struct Wirtinger {
  std::complex<double> d1, db1, d2, db2;
};

inline Wirtinger wirtinger(const ComplexJet& f) {
  const std::complex<double> I(0.0, 1.0);
  auto dx = [&](int a) { return std::complex<double>(f.re.grad[a], f.im.grad[a]); };
  return {0.5 * (dx(0) - I * dx(1)), 0.5 * (dx(0) + I * dx(1)), 0.5 * (dx(2) - I * dx(3)),
          0.5 * (dx(2) + I * dx(3))};
}

inline std::complex<double> d1_db1(const ComplexJet& f) {
  return 0.25 * std::complex<double>(f.re.hess(0, 0) + f.re.hess(1, 1), f.im.hess(0, 0) + f.im.hess(1, 1));
}

inline std::complex<double> d2_db2(const ComplexJet& f) {
  return 0.25 * std::complex<double>(f.re.hess(2, 2) + f.re.hess(3, 3), f.im.hess(2, 2) + f.im.hess(3, 3));
}

}  // namespace paraplex
