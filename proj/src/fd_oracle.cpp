#include "paraplex/fd_oracle.hpp"

namespace paraplex {

Vec4 fd_gradient(const RealFunction& f, const Point& p, double step) {
  Vec4 g{};
  for (int i = 0; i < kDim; ++i) {
    Point a = p, b = p;
    a[i] += step;
    b[i] -= step;
    g[i] = (f(a) - f(b)) / (2.0 * step);
  }
  return g;
}

Mat4 fd_hessian(const RealFunction& f, const Point& p, double step) {
  Mat4 h{};
  const double f0 = f(p);
  for (int i = 0; i < kDim; ++i) {
    Point a = p, b = p;
    a[i] += step;
    b[i] -= step;
    h[i][i] = (f(a) - 2.0 * f0 + f(b)) / (step * step);
    for (int j = i + 1; j < kDim; ++j) {
      Point pp = p, pm = p, mp = p, mm = p;
      pp[i] += step; pp[j] += step;
      pm[i] += step; pm[j] -= step;
      mp[i] -= step; mp[j] += step;
      mm[i] -= step; mm[j] -= step;
      h[i][j] = h[j][i] = (f(pp) - f(pm) - f(mp) + f(mm)) / (4.0 * step * step);
    }
  }
  return h;
}

FdResult fd_oracle(const RealFunction& f, const Point& p, double step) {
  if (!(step > 0.0)) throw Error(ErrorKind::DomainError, "finite-difference step must be positive");
  return {fd_gradient(f, p, step), fd_hessian(f, p, step)};
}

FdResult fd_oracle(const RealFunction& f, const Point& p) {
  return {fd_gradient(f, p, kFdGradStep), fd_hessian(f, p, kFdHessStep)};
}

RealFunction value_function(const ScalarProgram& f) {
  return [f](const Point& p) { return f(constant_point(p)).value; };
}

}  // namespace paraplex
