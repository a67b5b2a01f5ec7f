#include <cmath>

#include "doctest.h"
#include "paraplex/planefields.hpp"
#include "paraplex/products.hpp"
#include "paraplex/sampling.hpp"

using namespace paraplex;

namespace {

MetricField flat(const Mat4& m, Signature s) {
  MetricField g;
  g.name = "flat";
  g.program = constant_matrix(m);
  g.signature = s;
  return g;
}

Mat4 diag(double a, double b, double c, double d) {
  Mat4 m;
  m[0][0] = a;
  m[1][1] = b;
  m[2][2] = c;
  m[3][3] = d;
  return m;
}

// Tangent planes of the spheres |(x0, x1, x2)| = r inside the slices x3 = const.
PlaneProgram sphere_slices() {
  return [](const JetPoint& x) {
    std::array<JetVector, 2> s;
    s[0] = {-x[1], x[0], Jet2(0.0), Jet2(0.0)};
    s[1] = {-(x[2] * x[0]), -(x[2] * x[1]), x[0] * x[0] + x[1] * x[1], Jet2(0.0)};
    return s;
  };
}

// Tangent planes of the cylinders x0^2 + x1^2 = r^2 inside the slices x3 = const.
PlaneProgram cylinder_slices() {
  return [](const JetPoint& x) {
    std::array<JetVector, 2> s;
    s[0] = {-x[1], x[0], Jet2(0.0), Jet2(0.0)};
    s[1] = {Jet2(0.0), Jet2(0.0), Jet2(1.0), Jet2(0.0)};
    return s;
  };
}

// Tangent planes of the graphs x2 = f(x0, x1) + c inside the slices x3 = const.
PlaneProgram graph_slices() {
  return [](const JetPoint& x) {
    const Jet2 f0 = 0.6 * x[0] - 0.2 * x[1] + 0.3 * x[0] * x[0];
    const Jet2 f1 = -0.2 * x[0] + 1.0 * x[1];
    std::array<JetVector, 2> s;
    s[0] = {Jet2(1.0), Jet2(0.0), f0, Jet2(0.0)};
    s[1] = {Jet2(0.0), Jet2(1.0), f1, Jet2(0.0)};
    return s;
  };
}

// span(cos t d0 + sin t d2, d1) with t = 0.1 x0.
PlaneProgram tilted_plane() {
  return [](const JetPoint& x) {
    const Jet2 t = 0.1 * x[0];
    std::array<JetVector, 2> s;
    s[0] = {cos(t), Jet2(0.0), sin(t), Jet2(0.0)};
    s[1] = {Jet2(0.0), Jet2(1.0), Jet2(0.0), Jet2(0.0)};
    return s;
  };
}

Point on_sphere(Sampler& s, double r) {
  const double z = s.uniform(-0.8, 0.8), ph = s.uniform(0, 2 * M_PI);
  const double q = std::sqrt(1 - z * z);
  return {r * q * std::cos(ph), r * q * std::sin(ph), r * z, s.uniform(-1, 1)};
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::ConfigError;
}

const PlaneProgram kFirstFactor = constant_plane({1, 0, 0, 0}, {0, 1, 0, 0});

}  // namespace

TEST_CASE("adapted frames") {
  const AdaptedFrame f = adapted_frame(flat(Mat4::identity(), Signature::Riemannian), kFirstFactor, {0.1, 0.2, 0.3, 0.4});
  CHECK(f.e[0] == Vec4{1, 0, 0, 0});
  CHECK(f.e[1] == Vec4{0, 1, 0, 0});
  CHECK(f.ehat[0] == Vec4{0, 0, 1, 0});
  CHECK(f.ehat[1] == Vec4{0, 0, 0, 1});

  const SurfaceFactor sph = constant_curvature_factor(1.0);
  const MetricField g = build_product(sph, sph, -1).g;
  const Point p{0.2, -0.1, 0.3, 0.05};
  const AdaptedFrame h = adapted_frame(g, tilted_plane(), p);
  const Mat4 gv = g.value(p);
  const std::array<Vec4, 4> E = {h.e[0], h.e[1], h.ehat[0], h.ehat[1]};
  const int sg[4] = {h.sign, h.sign, h.sign_hat, h.sign_hat};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      double s = 0;
      for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) s += E[a][i] * gv[i][k] * E[b][k];
      CHECK(std::abs(s - (a == b ? sg[a] : 0)) < 1e-10);
    }
  CHECK(h.sign == 1);
  CHECK(h.sign_hat == -1);
}

TEST_CASE("null and degenerate planes are rejected") {
  const MetricField n = flat(diag(1, 1, -1, -1), Signature::Neutral);
  CHECK(kind_of([&] { adapted_frame(n, constant_plane({1, 0, 1, 0}, {0, 1, 0, 1}), {0, 0, 0, 0}); }) ==
        ErrorKind::IndefinitePlane);
  CHECK(kind_of([&] { adapted_frame(n, constant_plane({1, 0, 0, 0}, {0, 0, 1, 0}), {0, 0, 0, 0}); }) ==
        ErrorKind::IndefinitePlane);
  CHECK(kind_of([&] { adapted_frame(n, constant_plane({1, 2, 0, 0}, {2, 4, 0, 0}), {0, 0, 0, 0}); }) ==
        ErrorKind::DegenerateSpan);
}

TEST_CASE("factor planes of sphere products have vanishing invariants") {
  const SurfaceFactor sph = constant_curvature_factor(1.0), other = constant_curvature_factor(2.0);
  Sampler s(1);
  for (int eps : {1, -1}) {
    const MetricField g = build_product(sph, other, eps).g;
    for (int n = 0; n < 10; ++n) {
      const NPInvariants inv = np_invariants(g, kFirstFactor, s.point(-0.5, 0.5));
      CHECK(inv.max_modulus() < 1e-9);
      CHECK(inv.antisymmetry_residual < 1e-10);
    }
  }
}

TEST_CASE("sphere slices: integrable, curved leaves") {
  const MetricField g = flat(Mat4::identity(), Signature::Riemannian);
  Sampler s(2);
  for (double r : {1.0, 2.0})
    for (int n = 0; n < 10; ++n) {
      const Point p = on_sphere(s, r);
      const NPInvariants inv = np_invariants(g, sphere_slices(), p);
      CHECK(inv.antisymmetry_residual < 1e-10);
      CHECK(std::abs(inv.lambda) < 1e-12);
      CHECK(std::abs(inv.rho) > 1e-3);
      CHECK(std::abs(inv.sigma_plus) < 1e-12);
      CHECK(std::abs(inv.sigma_minus) < 1e-12);
      CHECK(std::abs(leaf_gauss_curvature(inv) - 1.0 / (r * r)) < 1e-10);
      CHECK(std::abs(leaf_gauss_curvature_printed(inv) - 2.0 / (r * r)) < 1e-10);
      const SecondFundamentalForm sff = second_fundamental_form(g, sphere_slices(), p);
      CHECK(std::abs(gauss_equation_curvature(sff, 1) - 1.0 / (r * r)) < 1e-10);
      CHECK(sff.asymmetry() < 1e-12);
    }
}

TEST_CASE("cylinder slices fix the shear coefficient") {
  const MetricField g = flat(Mat4::identity(), Signature::Riemannian);
  Sampler s(3);
  for (double r : {0.5, 1.5}) {
    const double t = s.uniform(0, 6);
    const Point p{r * std::cos(t), r * std::sin(t), s.uniform(-1, 1), s.uniform(-1, 1)};
    const NPInvariants inv = np_invariants(g, cylinder_slices(), p);
    CHECK(std::abs(leaf_gauss_curvature(inv)) < 1e-12);
    CHECK(std::abs(std::norm(inv.rho) - 0.5 / (r * r)) < 1e-12);
    CHECK(std::abs(std::norm(inv.sigma_plus) + std::norm(inv.sigma_minus) - 0.25 / (r * r)) < 1e-12);
  }
}

TEST_CASE("leaf curvature agrees with the Gauss equation on graphs") {
  const MetricField g = flat(Mat4::identity(), Signature::Riemannian);
  Sampler s(4);
  for (int n = 0; n < 20; ++n) {
    const Point p = s.point(-1, 1);
    const NPInvariants inv = np_invariants(g, graph_slices(), p);
    CHECK(std::abs(inv.lambda) < 1e-12);
    CHECK(std::abs(inv.sigma_plus) + std::abs(inv.sigma_minus) > 1e-3);
    CHECK(std::abs(leaf_gauss_curvature(inv) - gauss_equation_curvature(second_fundamental_form(g, graph_slices(), p), 1)) <
          1e-10);
  }
}

TEST_CASE("non-integrable plane fields have twist") {
  // span(d0 + x1 d2, d1): [X, Y] = -d2 leaves the plane.
  const PlaneProgram twisted = [](const JetPoint& x) {
    std::array<JetVector, 2> s;
    s[0] = {Jet2(1.0), Jet2(0.0), x[1], Jet2(0.0)};
    s[1] = {Jet2(0.0), Jet2(1.0), Jet2(0.0), Jet2(0.0)};
    return s;
  };
  const NPInvariants inv = np_invariants(flat(Mat4::identity(), Signature::Riemannian), twisted, {0.3, 0.2, 0.1, 0});
  CHECK(std::abs(inv.lambda) > 1e-2);
}

TEST_CASE("parallel iff all invariants vanish") {
  const SurfaceFactor sph = constant_curvature_factor(1.0);
  const SurfaceFactor bumpy =
      conformal_factor("bumpy", [](const Jet2& u, const Jet2& v) { return 0.3 * sin(u) * cos(2.0 * v); });
  Sampler s(5);
  std::vector<Point> pts;
  for (int n = 0; n < 5; ++n) pts.push_back(s.point(-0.5, 0.5));

  for (const MetricField& g : {build_product(sph, sph, 1).g, build_product(bumpy, sph, -1).g,
                               flat(Mat4::identity(), Signature::Riemannian)}) {
    const ParallelEquivalence r = parallel_equivalence_check(g, kFirstFactor, pts);
    CHECK(r.max_invariant < 1e-8);
    CHECK(r.parallel_residual < 1e-8);
    CHECK(r.agree);
  }
  std::vector<Point> sp;
  for (int n = 0; n < 5; ++n) sp.push_back(on_sphere(s, 1.5));
  const MetricField e = flat(Mat4::identity(), Signature::Riemannian);
  for (const auto& [g, plane, where] :
       std::vector<std::tuple<MetricField, PlaneProgram, std::vector<Point>>>{{build_product(sph, sph, 1).g, tilted_plane(), pts},
                                                                             {e, sphere_slices(), sp},
                                                                             {e, graph_slices(), pts}}) {
    const ParallelEquivalence r = parallel_equivalence_check(g, plane, where);
    CHECK(r.max_invariant > 1e-3);
    CHECK(r.parallel_residual > 1e-3);
    CHECK(r.agree);
  }
}

TEST_CASE("isometric structure of a plane field") {
  const SurfaceFactor sph = constant_curvature_factor(1.0);
  const MetricField g = build_product(sph, sph, -1).g;
  const StructureField j = isometric_structure(g, tilted_plane());
  const Point p{0.3, 0.1, -0.2, 0.4};
  const Mat4 jv = j.value(p);
  CHECK(max_abs(jv * jv - Mat4::identity()) < 1e-12);
  const StructureClassification c = classify(g.value(p), jv);
  CHECK(c.kind == StructureKind::Isometric);
}
