#include "paraplex/planefields.hpp"

#include <cmath>

namespace paraplex {

namespace {

using cplx = std::complex<double>;
constexpr double kSpanFloor = 1e-10;
constexpr double kDefiniteFloor = 1e-10;

Jet2 gdot(const Matrix4<Jet2>& g, const JetVector& a, const JetVector& b) {
  Jet2 s(0.0);
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k)
      if (!g[i][k].is_zero()) s += g[i][k] * (a[i] * b[k]);
  return s;
}

JetVector axpy(const JetVector& a, const Jet2& s, const JetVector& b) {
  JetVector r;
  for (int i = 0; i < 4; ++i) r[i] = a[i] + s * b[i];
  return r;
}

JetVector scale(const JetVector& a, const Jet2& s) {
  JetVector r;
  for (int i = 0; i < 4; ++i) r[i] = s * a[i];
  return r;
}

double euclid_wedge_norm(const JetVector& a, const JetVector& b) {
  double s = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int k = i + 1; k < 4; ++k) {
      const double w = a[i].value * b[k].value - a[k].value * b[i].value;
      s += w * w;
    }
  return std::sqrt(s);
}

struct FrameJets {
  std::array<JetVector, 4> E;  // e1, e2, ehat1, ehat2
  int sign = 1, sign_hat = 1;
};

// Gram-Schmidt of (v1, v2) with respect to g; the induced metric must be definite.
std::array<JetVector, 2> orthonormal_pair(const Matrix4<Jet2>& g, const JetVector& v1, const JetVector& v2, int& sign) {
  const Jet2 a = gdot(g, v1, v1), b = gdot(g, v1, v2), c = gdot(g, v2, v2);
  const double d = a.value * c.value - b.value * b.value;
  const double scale2 = std::max({std::abs(a.value), std::abs(c.value), 1e-300});
  if (d <= kDefiniteFloor * scale2 * scale2) throw Error(ErrorKind::IndefinitePlane, "induced metric on the plane is not definite");
  sign = a.value > 0 ? 1 : -1;
  const JetVector e1 = scale(v1, 1.0 / sqrt(double(sign) * a));
  const JetVector w = axpy(v2, -(double(sign) * gdot(g, v2, e1)), e1);
  const JetVector e2 = scale(w, 1.0 / sqrt(double(sign) * gdot(g, w, w)));
  return {e1, e2};
}

FrameJets frame_jets(const Matrix4<Jet2>& g, const std::array<JetVector, 2>& span) {
  if (euclid_wedge_norm(span[0], span[1]) < kSpanFloor) throw Error(ErrorKind::DegenerateSpan, "spanning vectors are dependent");
  FrameJets f;
  const auto e = orthonormal_pair(g, span[0], span[1], f.sign);
  f.E[0] = e[0];
  f.E[1] = e[1];
  // Project the coordinate vectors off P and keep the best-conditioned pair.
  std::array<JetVector, 4> w;
  for (int k = 0; k < 4; ++k) {
    JetVector d{};
    d[k] = Jet2(1.0);
    for (int a = 0; a < 2; ++a) d = axpy(d, -(double(f.sign) * gdot(g, d, e[a])), e[a]);
    w[k] = d;
  }
  int bk = -1, bl = -1;
  double best = 0.0;
  for (int k = 0; k < 4; ++k)
    for (int l = k + 1; l < 4; ++l) {
      const double a = gdot(g, w[k], w[k]).value, b = gdot(g, w[k], w[l]).value, c = gdot(g, w[l], w[l]).value;
      const double d = std::abs(a * c - b * b);
      if (d > best * (1.0 + 1e-12)) {
        best = d;
        bk = k;
        bl = l;
      }
    }
  if (bk < 0) throw Error(ErrorKind::DegenerateSpan, "orthogonal complement is degenerate");
  const auto h = orthonormal_pair(g, w[bk], w[bl], f.sign_hat);
  f.E[2] = h[0];
  f.E[3] = h[1];
  return f;
}

// Gam[m][n][a] = g(nabla_{E_m} E_n, E_a) for the real frame.
using Tensor3c = std::array<std::array<std::array<cplx, 4>, 4>, 4>;

Tensor3 frame_connection(const MetricField& g, const PlaneProgram& plane, const Point& p) {
  const JetPoint x = seed_point(p);
  const Matrix4<Jet2> gj = g.program(x);
  const FrameJets f = frame_jets(gj, plane(x));
  const Tensor3 chr = christoffels(metric_jet(gj));
  const Mat4 gv = values(gj);
  Tensor3 out{};
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) {
      Vec4 nab{};
      for (int k = 0; k < 4; ++k) {
        double s = 0.0;
        for (int i = 0; i < 4; ++i) {
          const double xi = f.E[m][i].value;
          double t = f.E[n][k].grad[i];
          for (int j = 0; j < 4; ++j) t += chr[k][i][j] * f.E[n][j].value;
          s += xi * t;
        }
        nab[k] = s;
      }
      for (int a = 0; a < 4; ++a) {
        double s = 0.0;
        for (int i = 0; i < 4; ++i)
          for (int k = 0; k < 4; ++k) s += gv[i][k] * nab[i] * f.E[a][k].value;
        out[m][n][a] = s;
      }
    }
  return out;
}

// Complex null frame: 0 = e+, 1 = e-, 2 = ehat+, 3 = ehat-.
Tensor3c null_connection(const Tensor3& gam) {
  const double r = 1.0 / std::sqrt(2.0);
  const cplx I(0, 1);
  cplx T[4][4] = {};
  T[0][0] = r;
  T[0][1] = -I * r;
  T[1][0] = r;
  T[1][1] = I * r;
  T[2][2] = r;
  T[2][3] = -I * r;
  T[3][2] = r;
  T[3][3] = I * r;
  Tensor3c out{};
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n)
      for (int a = 0; a < 4; ++a) {
        cplx s = 0.0;
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
              if (T[m][i] != 0.0 && T[n][j] != 0.0 && T[a][k] != 0.0) s += T[m][i] * T[n][j] * T[a][k] * gam[i][j][k];
        out[m][n][a] = s;
      }
  return out;
}

}  // namespace

double NPInvariants::max_modulus() const {
  double m = 0.0;
  for (const cplx& z : {lambda, rho, sigma_plus, sigma_minus, hat_lambda, hat_rho, hat_sigma_plus, hat_sigma_minus})
    m = std::max(m, std::abs(z));
  return m;
}

double SecondFundamentalForm::asymmetry() const {
  double m = 0.0;
  for (const auto& k : a) m = std::max(m, std::abs(k[0][1] - k[1][0]));
  return m;
}

AdaptedFrame adapted_frame(const MetricField& g, const PlaneProgram& plane, const Point& p) {
  const JetPoint x = constant_point(p);
  const FrameJets f = frame_jets(g.program(x), plane(x));
  AdaptedFrame out;
  for (int i = 0; i < 4; ++i) {
    out.e[0][i] = f.E[0][i].value;
    out.e[1][i] = f.E[1][i].value;
    out.ehat[0][i] = f.E[2][i].value;
    out.ehat[1][i] = f.E[3][i].value;
  }
  out.sign = f.sign;
  out.sign_hat = f.sign_hat;
  return out;
}

NPInvariants np_invariants(const MetricField& g, const PlaneProgram& plane, const Point& p) {
  const Tensor3 gam = frame_connection(g, plane, p);
  NPInvariants inv;
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n)
      for (int a = 0; a < 4; ++a) inv.antisymmetry_residual = std::max(inv.antisymmetry_residual, std::abs(gam[m][n][a] + gam[m][a][n]));
  const Tensor3c c = null_connection(gam);
  constexpr int P = 0, M = 1, HP = 2, HM = 3;
  inv.lambda = c[P][HP][M] - c[M][HP][P];
  inv.rho = c[P][HP][M] + c[M][HP][P];
  inv.sigma_plus = c[P][HP][P];
  inv.sigma_minus = c[M][HP][M];
  inv.hat_lambda = c[HP][P][HM] - c[HM][P][HP];
  inv.hat_rho = c[HP][P][HM] + c[HM][P][HP];
  inv.hat_sigma_plus = c[HP][P][HP];
  inv.hat_sigma_minus = c[HM][P][HM];
  return inv;
}

SecondFundamentalForm second_fundamental_form(const MetricField& g, const PlaneProgram& plane, const Point& p) {
  const Tensor3 gam = frame_connection(g, plane, p);
  SecondFundamentalForm s;
  s.sign_hat = adapted_frame(g, plane, p).sign_hat;
  for (int k = 0; k < 2; ++k)
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) s.a[k][a][b] = gam[a][b][2 + k];
  return s;
}

double leaf_gauss_curvature(const NPInvariants& inv) {
  return 0.5 * std::norm(inv.rho) - std::norm(inv.sigma_plus) - std::norm(inv.sigma_minus);
}

double leaf_gauss_curvature_printed(const NPInvariants& inv) {
  return std::norm(inv.rho) - std::norm(inv.sigma_plus) - std::norm(inv.sigma_minus);
}

double gauss_equation_curvature(const SecondFundamentalForm& sff, int sign) {
  // K = g(A11, A22) - g(A12, A12) divided by g(e1,e1) g(e2,e2); normal components carry sign_hat.
  double k = 0.0;
  for (const auto& a : sff.a) k += sff.sign_hat * (a[0][0] * a[1][1] - a[0][1] * a[0][1]);
  return k * sign * sign;
}

StructureField isometric_structure(const MetricField& g, const PlaneProgram& plane) {
  StructureField j;
  j.name = "j(P)";
  j.chart = g.chart;
  j.intended_square = 1;
  const MatrixProgram gp = g.program;
  j.program = [gp, plane](const JetPoint& x) {
    const Matrix4<Jet2> gj = gp(x);
    const FrameJets f = frame_jets(gj, plane(x));
    Matrix4<Jet2> m;
    for (int k = 0; k < 4; ++k) m[k][k] = Jet2(-1.0);
    for (int a = 0; a < 2; ++a) {
      JetVector lowered{};
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) lowered[r] += gj[r][c] * f.E[a][c];
      for (int k = 0; k < 4; ++k)
        for (int mm = 0; mm < 4; ++mm) m[k][mm] += (2.0 * f.sign) * (f.E[a][k] * lowered[mm]);
    }
    return m;
  };
  return j;
}

ParallelEquivalence parallel_equivalence_check(const MetricField& g, const PlaneProgram& plane,
                                               const std::vector<Point>& points, double tol) {
  ParallelEquivalence r;
  for (const Point& p : points) r.max_invariant = std::max(r.max_invariant, np_invariants(g, plane, p).max_modulus());
  r.parallel_residual = parallel_residual(g, isometric_structure(g, plane), points);
  r.invariants_vanish = r.max_invariant < tol;
  r.parallel = r.parallel_residual < tol;
  r.agree = r.invariants_vanish == r.parallel;
  return r;
}

PlaneProgram constant_plane(const Vec4& a, const Vec4& b) {
  return [a, b](const JetPoint&) {
    std::array<JetVector, 2> s;
    for (int i = 0; i < 4; ++i) {
      s[0][i] = Jet2(a[i]);
      s[1][i] = Jet2(b[i]);
    }
    return s;
  };
}

}  // namespace paraplex
