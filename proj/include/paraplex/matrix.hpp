#pragma once

// Dense 4x4 (and small square) matrices over double or Jet2.

#include <array>
#include <cmath>
#include <cstddef>

#include "paraplex/jet.hpp"

namespace paraplex {

template <class T, int N>
struct MatN {
  std::array<std::array<T, N>, N> m{};

  std::array<T, N>& operator[](int i) { return m[i]; }
  const std::array<T, N>& operator[](int i) const { return m[i]; }

  static MatN identity() {
    MatN r;
    for (int i = 0; i < N; ++i) r.m[i][i] = T(1.0);
    return r;
  }
  static MatN zero() {
    MatN r;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) r.m[i][j] = T(0.0);
    return r;
  }
};

template <class T>
using Matrix4 = MatN<T, 4>;
using Mat4 = Matrix4<double>;
using Mat6 = MatN<double, 6>;
using Vec4 = std::array<double, 4>;

template <class T, int N>
MatN<T, N> operator*(const MatN<T, N>& a, const MatN<T, N>& b) {
  MatN<T, N> r = MatN<T, N>::zero();
  for (int i = 0; i < N; ++i)
    for (int k = 0; k < N; ++k) {
      const T& aik = a.m[i][k];
      for (int j = 0; j < N; ++j) r.m[i][j] += aik * b.m[k][j];
    }
  return r;
}

template <class T, int N>
MatN<T, N> operator+(const MatN<T, N>& a, const MatN<T, N>& b) {
  MatN<T, N> r;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) r.m[i][j] = a.m[i][j] + b.m[i][j];
  return r;
}

template <class T, int N>
MatN<T, N> operator-(const MatN<T, N>& a, const MatN<T, N>& b) {
  MatN<T, N> r;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) r.m[i][j] = a.m[i][j] - b.m[i][j];
  return r;
}

template <class T, int N>
MatN<T, N> operator*(double s, const MatN<T, N>& a) {
  MatN<T, N> r;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) r.m[i][j] = s * a.m[i][j];
  return r;
}

template <int N>
MatN<Jet2, N> operator*(const Jet2& s, const MatN<Jet2, N>& a) {
  MatN<Jet2, N> r;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) r.m[i][j] = s * a.m[i][j];
  return r;
}

template <class T, int N>
MatN<T, N> transpose(const MatN<T, N>& a) {
  MatN<T, N> r;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) r.m[i][j] = a.m[j][i];
  return r;
}

template <class T, std::size_t M>
std::array<T, M> operator*(const MatN<T, static_cast<int>(M)>& a, const std::array<T, M>& v) {
  constexpr int N = static_cast<int>(M);
  std::array<T, M> r;
  for (int i = 0; i < N; ++i) {
    r[i] = T(0.0);
    for (int j = 0; j < N; ++j) r[i] += a.m[i][j] * v[j];
  }
  return r;
}

template <class T, int N>
T trace(const MatN<T, N>& a) {
  T t(0.0);
  for (int i = 0; i < N; ++i) t += a.m[i][i];
  return t;
}

template <int N>
double max_abs(const MatN<double, N>& a) {
  double r = 0.0;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) r = std::max(r, std::abs(a.m[i][j]));
  return r;
}

template <int N>
MatN<double, N> values(const MatN<Jet2, N>& a) {
  MatN<double, N> r;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) r.m[i][j] = a.m[i][j].value;
  return r;
}

template <class T>
T det(const Matrix4<T>& a) {
  const auto& m = a.m;
  const T s0 = m[0][0] * m[1][1] - m[1][0] * m[0][1];
  const T s1 = m[0][0] * m[1][2] - m[1][0] * m[0][2];
  const T s2 = m[0][0] * m[1][3] - m[1][0] * m[0][3];
  const T s3 = m[0][1] * m[1][2] - m[1][1] * m[0][2];
  const T s4 = m[0][1] * m[1][3] - m[1][1] * m[0][3];
  const T s5 = m[0][2] * m[1][3] - m[1][2] * m[0][3];
  const T c5 = m[2][2] * m[3][3] - m[3][2] * m[2][3];
  const T c4 = m[2][1] * m[3][3] - m[3][1] * m[2][3];
  const T c3 = m[2][1] * m[3][2] - m[3][1] * m[2][2];
  const T c2 = m[2][0] * m[3][3] - m[3][0] * m[2][3];
  const T c1 = m[2][0] * m[3][2] - m[3][0] * m[2][2];
  const T c0 = m[2][0] * m[3][1] - m[3][0] * m[2][1];
  return s0 * c5 - s1 * c4 + s2 * c3 + s3 * c2 - s4 * c1 + s5 * c0;
}

// Gauss-Jordan elimination with partial pivoting on values.
template <class T, int N>
MatN<T, N> inverse(const MatN<T, N>& a, double singular_floor = 1e-300) {
  MatN<T, N> w = a;
  MatN<T, N> r = MatN<T, N>::identity();
  for (int c = 0; c < N; ++c) {
    int piv = c;
    for (int i = c + 1; i < N; ++i)
      if (std::abs(value_of(w.m[i][c])) > std::abs(value_of(w.m[piv][c]))) piv = i;
    if (std::abs(value_of(w.m[piv][c])) <= singular_floor) throw Error(ErrorKind::SingularMatrix, "matrix is singular");
    std::swap(w.m[c], w.m[piv]);
    std::swap(r.m[c], r.m[piv]);
    const T inv = T(1.0) / w.m[c][c];
    for (int j = 0; j < N; ++j) {
      w.m[c][j] = w.m[c][j] * inv;
      r.m[c][j] = r.m[c][j] * inv;
    }
    for (int i = 0; i < N; ++i) {
      if (i == c) continue;
      const T f = w.m[i][c];
      if (is_zero(f)) continue;
      for (int j = 0; j < N; ++j) {
        w.m[i][j] = w.m[i][j] - f * w.m[c][j];
        r.m[i][j] = r.m[i][j] - f * r.m[c][j];
      }
    }
  }
  return r;
}

}  // namespace paraplex
