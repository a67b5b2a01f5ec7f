#include "paraplex/products.hpp"

#include <cmath>

namespace paraplex {

namespace {

constexpr double kFlagTol = 1e-8;

Matrix4<Jet2> rotation_block(const std::array<Jet2, 3>& h, int sign) {
  const Jet2 root = sqrt(h[0] * h[2] - h[1] * h[1]);
  Matrix4<Jet2> m;
  m[0][0] = (-sign) * h[1] / root;
  m[0][1] = (-sign) * h[2] / root;
  m[1][0] = sign * h[0] / root;
  m[1][1] = sign * h[1] / root;
  return m;
}

}  // namespace

SurfaceFactor constant_curvature_factor(double k) {
  SurfaceFactor f;
  f.name = "constant-curvature(" + std::to_string(k) + ")";
  f.metric = [k](const Jet2& u, const Jet2& v) {
    const Jet2 c = 4.0 * pow(1.0 + k * (u * u + v * v), -2.0);
    return std::array<Jet2, 3>{c, Jet2(0.0), c};
  };
  f.kappa = [k](double, double) { return k; };
  f.valid = [k](double u, double v) { return 1.0 + k * (u * u + v * v) > 1e-6; };
  return f;
}

SurfaceFactor conformal_factor(const std::string& name, std::function<Jet2(const Jet2&, const Jet2&)> lambda) {
  SurfaceFactor f;
  f.name = name;
  f.metric = [lambda](const Jet2& u, const Jet2& v) {
    const Jet2 c = exp(2.0 * lambda(u, v));
    return std::array<Jet2, 3>{c, Jet2(0.0), c};
  };
  f.kappa = [lambda](double u, double v) {
    const Jet2 l = lambda(jet_seed({u, v, 0, 0}, 0), jet_seed({u, v, 0, 0}, 1));
    return -std::exp(-2.0 * l.value) * (l.hess(0, 0) + l.hess(1, 1));
  };
  f.valid = [](double, double) { return true; };
  return f;
}

double gauss_curvature(const SurfaceFactor& f, double u, double v) {
  MetricField g;
  g.name = f.name + " x plane";
  g.program = [f](const JetPoint& x) {
    const auto h = f.metric(x[0], x[1]);
    Matrix4<Jet2> m;
    m[0][0] = h[0];
    m[0][1] = m[1][0] = h[1];
    m[1][1] = h[2];
    m[2][2] = m[3][3] = Jet2(1.0);
    return m;
  };
  return 0.5 * curvature(g, {u, v, 0.0, 0.0}).scalar;
}

ProductGeometry build_product(const SurfaceFactor& s1, const SurfaceFactor& s2, int eps) {
  ProductGeometry p;
  p.s1 = s1;
  p.s2 = s2;
  p.eps = eps;
  Chart chart;
  chart.name = "product";
  chart.bindings = ChartBindings::real({"u1", "v1", "u2", "v2"});
  chart.valid = [s1, s2](const Point& x) { return s1.valid(x[0], x[1]) && s2.valid(x[2], x[3]); };
  p.g.name = s1.name + (eps > 0 ? " + " : " - ") + s2.name;
  p.g.chart = chart;
  p.g.signature = eps > 0 ? Signature::Riemannian : Signature::Neutral;
  p.g.program = [s1, s2, eps](const JetPoint& x) {
    const auto a = s1.metric(x[0], x[1]);
    const auto b = s2.metric(x[2], x[3]);
    Matrix4<Jet2> m;
    m[0][0] = a[0];
    m[0][1] = m[1][0] = a[1];
    m[1][1] = a[2];
    m[2][2] = double(eps) * b[0];
    m[2][3] = m[3][2] = double(eps) * b[1];
    m[3][3] = double(eps) * b[2];
    return m;
  };
  auto structure = [&](const std::string& name, int sign2) {
    StructureField j;
    j.name = name;
    j.chart = chart;
    j.intended_square = -1;
    j.program = [s1, s2, sign2](const JetPoint& x) {
      const Matrix4<Jet2> a = rotation_block(s1.metric(x[0], x[1]), 1);
      const Matrix4<Jet2> b = rotation_block(s2.metric(x[2], x[3]), sign2);
      Matrix4<Jet2> m;
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) {
          m[r][c] = a[r][c];
          m[r + 2][c + 2] = b[r][c];
        }
      return m;
    };
    return j;
  };
  p.j1 = structure("J1", -1);
  p.j2 = structure("J2", 1);
  p.j = product_structure(p.j1, p.j2);
  p.j.name = "J";
  return p;
}

ClosedFormCurvature closed_form_curvature(double k1, double k2, int eps) {
  ClosedFormCurvature c;
  const double s = k1 + eps * k2, d = k1 - eps * k2;
  c.scalar = 2.0 * s;
  c.ricci_norm2 = 2.0 * (k1 * k1 + k2 * k2);
  c.einstein_norm2 = d * d;
  c.weyl_norm2 = 4.0 / 3.0 * s * s;
  c.weyl_norm2_paper = 2.0 / 3.0 * s * s;
  return c;
}

CorollaryReport corollary_check(double k1, double k2, int eps, const std::vector<Point>& points) {
  CorollaryReport r;
  r.k1 = k1;
  r.k2 = k2;
  r.eps = eps;
  const ProductGeometry same = build_product(constant_curvature_factor(k1), constant_curvature_factor(k2), eps);
  const ProductGeometry opposite = build_product(constant_curvature_factor(k1), constant_curvature_factor(k2), -eps);
  r.related_residual = std::abs(k1 + eps * k2);
  for (const Point& p : points) {
    const CurvaturePackage a = curvature(same.g, p);
    r.weyl_residual = std::max(r.weyl_residual, max_abs(a.weyl));
    r.scalar_residual = std::max(r.scalar_residual, std::abs(a.scalar));
    r.einstein_residual = std::max(r.einstein_residual, max_abs(curvature(opposite.g, p).einstein));
  }
  r.curvatures_related = r.related_residual < kFlagTol;
  r.conformally_scalar_flat = r.weyl_residual < kFlagTol && r.scalar_residual < kFlagTol;
  r.opposite_einstein = r.einstein_residual < kFlagTol;
  r.agree = r.curvatures_related == r.conformally_scalar_flat && r.conformally_scalar_flat == r.opposite_einstein;
  return r;
}

}  // namespace paraplex
