#pragma once

// Second-order forward-mode jets over four real variables.

#include <array>
#include <cmath>
#include <functional>

#include "paraplex/errors.hpp"

namespace paraplex {

constexpr int kDim = 4;
constexpr double kJetDivisionFloor = 1e-14;

using Point = std::array<double, kDim>;

// Packed upper-triangular index of the symmetric Hessian.
constexpr std::array<int, 16> kHessIndex = {0, 1, 2, 3, 1, 4, 5, 6, 2, 5, 7, 8, 3, 6, 8, 9};

struct Jet2 {
  double value = 0.0;
  std::array<double, 4> grad{};
  std::array<double, 10> h{};

  Jet2() = default;
  Jet2(double v) : value(v) {}  // NOLINT: constants promote implicitly

  double hess(int i, int j) const { return h[kHessIndex[i * 4 + j]]; }
  double& hess_ref(int i, int j) { return h[kHessIndex[i * 4 + j]]; }

  bool is_zero() const {
    if (value != 0.0) return false;
    for (double g : grad)
      if (g != 0.0) return false;
    for (double x : h)
      if (x != 0.0) return false;
    return true;
  }
};

using JetPoint = std::array<Jet2, kDim>;
using ScalarProgram = std::function<Jet2(const JetPoint&)>;

inline Jet2 jet_seed(const Point& point, int axis) {
  if (axis < 0 || axis >= kDim) throw Error(ErrorKind::DomainError, "jet_seed axis out of range");
  Jet2 r(point[axis]);
  r.grad[axis] = 1.0;
  return r;
}

inline JetPoint seed_point(const Point& p) {
  JetPoint out;
  for (int a = 0; a < kDim; ++a) out[a] = jet_seed(p, a);
  return out;
}

inline JetPoint constant_point(const Point& p) {
  JetPoint out;
  for (int a = 0; a < kDim; ++a) out[a] = Jet2(p[a]);
  return out;
}

inline Jet2 jet_apply(const ScalarProgram& f, const Point& p) { return f(seed_point(p)); }

inline bool is_zero(double x) { return x == 0.0; }
inline bool is_zero(const Jet2& x) { return x.is_zero(); }

inline double value_of(double x) { return x; }
inline double value_of(const Jet2& x) { return x.value; }

// f(a) given f, f', f'' at a.value.
inline Jet2 chain(const Jet2& a, double f0, double f1, double f2) {
  Jet2 r(f0);
  for (int i = 0; i < 4; ++i) r.grad[i] = f1 * a.grad[i];
  int k = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j, ++k) r.h[k] = f1 * a.h[k] + f2 * a.grad[i] * a.grad[j];
  return r;
}

inline Jet2 operator+(const Jet2& a, const Jet2& b) {
  Jet2 r(a.value + b.value);
  for (int i = 0; i < 4; ++i) r.grad[i] = a.grad[i] + b.grad[i];
  for (int k = 0; k < 10; ++k) r.h[k] = a.h[k] + b.h[k];
  return r;
}

inline Jet2 operator-(const Jet2& a, const Jet2& b) {
  Jet2 r(a.value - b.value);
  for (int i = 0; i < 4; ++i) r.grad[i] = a.grad[i] - b.grad[i];
  for (int k = 0; k < 10; ++k) r.h[k] = a.h[k] - b.h[k];
  return r;
}

inline Jet2 operator-(const Jet2& a) {
  Jet2 r(-a.value);
  for (int i = 0; i < 4; ++i) r.grad[i] = -a.grad[i];
  for (int k = 0; k < 10; ++k) r.h[k] = -a.h[k];
  return r;
}

inline Jet2 operator*(const Jet2& a, const Jet2& b) {
  Jet2 r(a.value * b.value);
  for (int i = 0; i < 4; ++i) r.grad[i] = a.value * b.grad[i] + b.value * a.grad[i];
  int k = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j, ++k)
      r.h[k] = a.value * b.h[k] + b.value * a.h[k] + a.grad[i] * b.grad[j] + b.grad[i] * a.grad[j];
  return r;
}

inline Jet2 operator*(double s, const Jet2& a) {
  Jet2 r(s * a.value);
  for (int i = 0; i < 4; ++i) r.grad[i] = s * a.grad[i];
  for (int k = 0; k < 10; ++k) r.h[k] = s * a.h[k];
  return r;
}
inline Jet2 operator*(const Jet2& a, double s) { return s * a; }

inline Jet2 reciprocal(const Jet2& a) {
  if (std::abs(a.value) < kJetDivisionFloor) throw Error(ErrorKind::DivisionByZero, "jet denominator vanishes");
  const double inv = 1.0 / a.value;
  return chain(a, inv, -inv * inv, 2.0 * inv * inv * inv);
}

inline Jet2 operator/(const Jet2& a, const Jet2& b) { return a * reciprocal(b); }
inline Jet2 operator/(const Jet2& a, double s) {
  if (std::abs(s) < kJetDivisionFloor) throw Error(ErrorKind::DivisionByZero, "division by zero constant");
  return (1.0 / s) * a;
}

inline Jet2& operator+=(Jet2& a, const Jet2& b) { return a = a + b; }
inline Jet2& operator-=(Jet2& a, const Jet2& b) { return a = a - b; }
inline Jet2& operator*=(Jet2& a, const Jet2& b) { return a = a * b; }
inline Jet2& operator/=(Jet2& a, const Jet2& b) { return a = a / b; }

inline Jet2 sqrt(const Jet2& a) {
  if (a.value <= 0.0) throw Error(ErrorKind::DomainError, "sqrt of non-positive jet");
  const double s = std::sqrt(a.value);
  return chain(a, s, 0.5 / s, -0.25 / (s * a.value));
}

inline Jet2 exp(const Jet2& a) {
  const double e = std::exp(a.value);
  return chain(a, e, e, e);
}

inline Jet2 log(const Jet2& a) {
  if (a.value <= 0.0) throw Error(ErrorKind::DomainError, "log of non-positive jet");
  const double inv = 1.0 / a.value;
  return chain(a, std::log(a.value), inv, -inv * inv);
}

inline Jet2 sin(const Jet2& a) {
  const double s = std::sin(a.value), c = std::cos(a.value);
  return chain(a, s, c, -s);
}

inline Jet2 cos(const Jet2& a) {
  const double s = std::sin(a.value), c = std::cos(a.value);
  return chain(a, c, -s, -c);
}

inline Jet2 sinh(const Jet2& a) {
  const double s = std::sinh(a.value), c = std::cosh(a.value);
  return chain(a, s, c, s);
}

inline Jet2 cosh(const Jet2& a) {
  const double s = std::sinh(a.value), c = std::cosh(a.value);
  return chain(a, c, s, c);
}

inline Jet2 atan(const Jet2& a) {
  const double d = 1.0 / (1.0 + a.value * a.value);
  return chain(a, std::atan(a.value), d, -2.0 * a.value * d * d);
}

inline Jet2 atan2(const Jet2& y, const Jet2& x) {
  const double r2 = x.value * x.value + y.value * y.value;
  if (r2 < kJetDivisionFloor) throw Error(ErrorKind::DivisionByZero, "atan2 at the origin");
  // d atan2 = (x dy - y dx) / r2; second order via the product rule on that expression.
  Jet2 r(std::atan2(y.value, x.value));
  const double ax = -y.value / r2, ay = x.value / r2;
  for (int i = 0; i < 4; ++i) r.grad[i] = ax * x.grad[i] + ay * y.grad[i];
  const double r4 = r2 * r2;
  const double axx = 2.0 * x.value * y.value / r4;
  const double ayy = -axx;
  const double axy = (y.value * y.value - x.value * x.value) / r4;
  int k = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j, ++k)
      r.h[k] = ax * x.h[k] + ay * y.h[k] + axx * x.grad[i] * x.grad[j] + ayy * y.grad[i] * y.grad[j] +
               axy * (x.grad[i] * y.grad[j] + y.grad[i] * x.grad[j]);
  return r;
}

// Real power with a constant exponent; integer exponents are allowed at non-positive base.
inline Jet2 pow(const Jet2& a, double e) {
  const bool integral = e == std::floor(e);
  if (!integral && a.value <= 0.0) throw Error(ErrorKind::DomainError, "fractional power of non-positive jet");
  if (integral && e < 0.0 && std::abs(a.value) < kJetDivisionFloor)
    throw Error(ErrorKind::DivisionByZero, "negative power of zero");
  const double f0 = std::pow(a.value, e);
  const double f1 = e == 0.0 ? 0.0 : e * std::pow(a.value, e - 1.0);
  const double f2 = (e == 0.0 || e == 1.0) ? 0.0 : e * (e - 1.0) * std::pow(a.value, e - 2.0);
  return chain(a, f0, f1, f2);
}

inline Jet2 square(const Jet2& a) { return a * a; }

}  // namespace paraplex
