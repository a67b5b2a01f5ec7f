#include <cmath>
#include <complex>

#include "doctest.h"
#include "paraplex/linespace.hpp"
#include "paraplex/sampling.hpp"

using namespace paraplex;

namespace {

std::vector<Point> line_points(std::uint64_t seed, int n, double lo = -0.8, double hi = 0.8) {
  Sampler s(seed);
  std::vector<Point> out;
  for (int i = 0; i < n; ++i) out.push_back(s.point(lo, hi));
  return out;
}

LinePoint hemisphere_line(Sampler& s) {
  const double r = 0.9 * std::sqrt(s.unit());
  const double t = s.uniform(0, 2 * M_PI);
  return {std::polar(r, t), {s.uniform(-1, 1), s.uniform(-1, 1)}};
}

cplx dot(const CVec3& a, const CVec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

CVec3 conj(const CVec3& a) { return {std::conj(a[0]), std::conj(a[1]), std::conj(a[2])}; }

double dist(const CVec3& a, const CVec3& b) {
  double m = 0.0;
  for (int i = 0; i < 3; ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

CVec3 combo(cplx a, const CVec3& u, cplx b, const CVec3& v) {
  return {a * u[0] + b * v[0], a * u[1] + b * v[1], a * u[2] + b * v[2]};
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

}  // namespace

TEST_CASE("metric G at xi = 0 is 4 Im(conj(deta) dxi)") {
  const Mat4 g = metric_G().value({0, 0, 0.3, -0.7});
  Mat4 want;
  want[1][2] = want[2][1] = 2.0;
  want[0][3] = want[3][0] = -2.0;
  CHECK(max_abs(g - want) < 1e-15);
}

TEST_CASE("metric G is neutral, scalar flat, conformally flat and not Einstein") {
  const MetricField g = metric_G();
  for (const Point& p : line_points(1, 20)) {
    CHECK(signature_counts(g.value(p)) == std::pair<int, int>{2, 2});
    const CurvaturePackage c = curvature(g, p);
    CHECK(std::abs(c.scalar) < 1e-9);
    CHECK(max_abs(c.weyl) < 1e-9);
    CHECK(max_abs(c.einstein) > 1e-3);
  }
}

TEST_CASE("J0, J1, J2 form a commuting triple") {
  const LineStructures s = structures_J012();
  for (const Point& p : line_points(2, 20)) {
    const Mat4 j0 = s.j0.value(p), j1 = s.j1.value(p), j2 = s.j2.value(p);
    CHECK(max_abs(j0 * j0 + Mat4::identity()) < 1e-12);
    CHECK(max_abs(j1 * j1 - Mat4::identity()) < 1e-12);
    CHECK(max_abs(j2 * j2 + Mat4::identity()) < 1e-12);
    CHECK(max_abs(j0 * j1 - j1 * j0) < 1e-12);
    CHECK(max_abs(j2 - j0 * j1) < 1e-12);
  }
}

TEST_CASE("J1 at eta = 0 splits the xi and eta planes") {
  const Mat4 j1 = structures_J012().j1.value({0.4, -0.3, 0, 0});
  Mat4 want;
  want[0][0] = want[1][1] = 1;
  want[2][2] = want[3][3] = -1;
  CHECK(max_abs(j1 - want) == 0.0);
}

TEST_CASE("J0 is a G-isometry, J1 and J2 are anti-isometries") {
  const MetricField g = metric_G();
  const LineStructures s = structures_J012();
  for (const Point& p : line_points(3, 20)) {
    const Mat4 gv = g.value(p);
    const Mat4 j0 = s.j0.value(p), j1 = s.j1.value(p), j2 = s.j2.value(p);
    CHECK(max_abs(transpose(j0) * gv * j0 - gv) < 1e-10);
    CHECK(max_abs(transpose(j1) * gv * j1 + gv) < 1e-10);
    CHECK(max_abs(transpose(j2) * gv * j2 + gv) < 1e-10);
  }
  const Point p = LinePoint{0.5, {0.2, 0.1}}.chart();
  const EigenplanePair e = eigenplanes(s.j1.value(p));
  CHECK(e.plus.size() == 2);
  CHECK(e.minus.size() == 2);
  const StructureClassification c = classify(g.value(p), s.j1.value(p));
  CHECK(c.kind == StructureKind::AntiIsometric);
  CHECK(c.geometry == EigenplaneGeometry::TotallyNull);
  CHECK(classify(g.value(p), s.j0.value(p)).kind == StructureKind::Isometric);
  CHECK(classify(g.value(p), s.j2.value(p)).kind == StructureKind::AntiIsometric);
}

TEST_CASE("J0 and J2 are integrable, J1 is not") {
  const LineStructures s = structures_J012();
  for (const Point& p : line_points(4, 10)) {
    CHECK(max_abs(nijenhuis(s.j0, p)) < 1e-12);
    CHECK(max_abs(nijenhuis(s.j1, p)) > 1e-3);
    // The +i eigenbundle of J2 is span(d_xi + (c/2) d_eta, d_etabar) with c holomorphic in eta,
    // so the component formula for J2 is integrable.
    CHECK(max_abs(nijenhuis(s.j2, p)) < 1e-12);
  }
}

TEST_CASE("only J0 is parallel for G and for G-tilde") {
  const LineStructures s = structures_J012();
  const std::vector<Point> pts = line_points(5, 20);
  for (const MetricField& g : {metric_G(), metric_G_tilde()}) {
    CHECK(parallel_residual(g, s.j0, pts) < 1e-9);
    CHECK(parallel_residual(g, s.j1, pts) > 1e-3);
    CHECK(parallel_residual(g, s.j2, pts) > 1e-3);
  }
}

TEST_CASE("Omega0 and Omega1 are closed 2-forms") {
  for (const MatrixProgram& w : {omega0(), omega1()})
    for (const Point& p : line_points(6, 20)) {
      const Mat4 v = values(w(seed_point(p)));
      CHECK(max_abs(v + transpose(v)) < 1e-12);
      CHECK(max_abs(v) > 1e-3);
      CHECK(max_abs(exterior_derivative(w, p)) < 1e-9);
    }
}

TEST_CASE("G-tilde is neutral, scalar flat, conformally flat and isometric to G") {
  const MetricField gt = metric_G_tilde();
  const MetricField g = metric_G();
  const SmoothMap rot = map_rotate_eta();
  for (const Point& p : line_points(7, 20)) {
    const Mat4 v = gt.value(p);
    CHECK(max_abs(v - transpose(v)) < 1e-12);
    CHECK(signature_counts(v) == std::pair<int, int>{2, 2});
    const CurvaturePackage c = curvature(gt, p);
    CHECK(std::abs(c.scalar) < 1e-9);
    CHECK(max_abs(c.weyl) < 1e-9);
    CHECK(max_abs(pullback_metric(rot, gt, p) - g.value(p)) < 1e-12);
  }
}

TEST_CASE("phi on simple lines") {
  const auto axis = phi({0, 0}, 2.5);
  CHECK(axis == std::array<double, 3>{0, 0, 2.5});
  const auto eq = phi({1, 0}, 0.0);
  CHECK(std::abs(eq[0]) == 0.0);
  CHECK(std::abs(eq[1]) == 0.0);
  CHECK(std::abs(eq[2]) == 0.0);

  const LinePoint l{{0.3, -0.6}, {0.7, 0.2}};
  const auto a = phi(l, -0.4), b = phi(l, 1.1);
  const CVec3 e0 = line_frame(l.xi).e0;
  for (int k = 0; k < 3; ++k) CHECK(std::abs((b[k] - a[k]) / 1.5 - e0[k].real()) < 1e-14);
}

TEST_CASE("line frame is a real unit vector plus a conjugate null pair") {
  Sampler s(8);
  for (int n = 0; n < 20; ++n) {
    const LineFrame f = line_frame({s.uniform(-2, 2), s.uniform(-2, 2)});
    for (const cplx& c : f.e0) CHECK(c.imag() == 0.0);
    CHECK(std::abs(dot(f.e0, f.e0) - 1.0) < 1e-14);
    CHECK(std::abs(dot(f.e_plus, f.e_plus)) < 1e-14);
    CHECK(std::abs(dot(f.e_plus, f.e0)) < 1e-14);
    CHECK(std::abs(dot(f.e_plus, conj(f.e_plus)) - 1.0) < 1e-14);
    CHECK(dist(f.e_minus, conj(f.e_plus)) < 1e-15);
  }
}

TEST_CASE("pushforward of phi matches the frame decomposition") {
  const Pushforward o = phi_pushforward({0, 0}, 0.0);
  CHECK(dist(o.d_eta, combo(std::sqrt(2.0), o.frame.e_plus, 0.0, o.frame.e0)) < 1e-15);

  Sampler s(9);
  for (int n = 0; n < 50; ++n) {
    const LinePoint l{{s.uniform(-1.5, 1.5), s.uniform(-1.5, 1.5)}, {s.uniform(-2, 2), s.uniform(-2, 2)}};
    const double r = s.uniform(-3, 3);
    const Pushforward p = phi_pushforward(l, r);
    CHECK(dist(p.d_eta, combo(p.eta_plus, p.frame.e_plus, 0.0, p.frame.e0)) < 1e-9);
    CHECK(dist(p.d_xi, combo(p.xi_plus, p.frame.e_plus, p.xi_zero, p.frame.e0)) < 1e-9);
    CHECK(std::abs(dot(p.d_eta, p.frame.e0)) < 1e-12);
  }
}

TEST_CASE("reflection through the origin") {
  const LinePoint r = reflect_line({0.5, {0.2, 0.1}});
  CHECK(std::abs(r.xi - cplx(2, 0)) < 1e-15);
  CHECK(std::abs(r.eta - cplx(0.8, -0.4)) < 1e-15);
  CHECK(kind_of([] { reflect_line({0, {1, 0}}); }) == ErrorKind::PoleOfChart);

  Sampler s(10);
  for (int n = 0; n < 20; ++n) {
    const LinePoint l{{s.uniform(-2, 2), s.uniform(-2, 2)}, {s.uniform(-2, 2), s.uniform(-2, 2)}};
    const LinePoint back = reflect_line(reflect_line(l));
    CHECK(std::abs(back.xi - l.xi) < 1e-12);
    CHECK(std::abs(back.eta - l.eta) < 1e-12);
    const double t = s.uniform(-2, 2);
    const auto x = phi(l, t), y = phi(reflect_line(l), -t);
    CHECK(std::abs(y[0] + x[0]) < 1e-12);
    CHECK(std::abs(y[1] + x[1]) < 1e-12);
    CHECK(std::abs(y[2] - x[2]) < 1e-12);
  }
}

TEST_CASE("conformal coordinates") {
  const ConformalPoint o = to_conformal({0, 0});
  CHECK(o.z1 == cplx(0, 0));
  CHECK(o.z2 == cplx(0, 0));
  CHECK(kind_of([] { to_conformal({{0.6, 0.8}, 0}); }) == ErrorKind::OutsideHemisphere);
  CHECK(kind_of([] { to_conformal({2.0, 0}); }) == ErrorKind::OutsideHemisphere);

  Sampler s(11);
  for (int n = 0; n < 100; ++n) {
    const LinePoint l = hemisphere_line(s);
    const LinePoint back = from_conformal(to_conformal(l));
    CHECK(std::abs(back.xi - l.xi) < 1e-10);
    CHECK(std::abs(back.eta - l.eta) < 1e-10);
  }
}

TEST_CASE("conformal metric pulls back to a constant multiple of G") {
  // (1 + |Z1 - Z2|^2 / 4)^-1 (|dZ1|^2 - |dZ2|^2) pulls back to 4 G.
  const MetricField g = metric_G();
  const MetricField gc = metric_conformal_flat_form();
  const SmoothMap to = map_to_conformal();
  const SmoothMap from = map_from_conformal();
  Sampler s(12);
  for (int n = 0; n < 20; ++n) {
    const LinePoint l = hemisphere_line(s);
    CHECK(max_abs(pullback_metric(to, gc, l.chart()) - 4.0 * g.value(l.chart())) < 1e-10);
    const Point z = to_conformal(l).chart();
    CHECK(max_abs(4.0 * pullback_metric(from, g, z) - gc.value(z)) < 1e-10);
  }
}

TEST_CASE("conformal factor is harmonic for the split Laplacian") {
  Sampler s(13);
  for (int n = 0; n < 20; ++n) {
    const JetPoint z = seed_point(s.point(-2, 2));
    const ComplexJet w(linespace_conformal_factor(z));
    CHECK(std::abs(d1_db1(w) - d2_db2(w)) < 1e-10);
    CHECK(std::abs(d1_db1(w)) > 1e-4);
  }
}

TEST_CASE("scalar curvature is chart independent under conformal rescaling") {
  // h = e^{2f} G on the line chart and e^{2f} G_conf / 4 on the conformal chart.
  auto f = [](const JetPoint& z) { return 0.2 * sin(z[0] + 0.5 * z[3]) + 0.1 * cos(z[1] - z[2]); };
  MetricField hz;
  hz.name = "rescaled-conformal";
  hz.chart = conformal_chart();
  hz.signature = Signature::Neutral;
  const MetricField gc = metric_conformal_flat_form();
  hz.program = [gc, f](const JetPoint& z) { return (0.25 * exp(2.0 * f(z))) * gc.program(z); };
  MetricField hl;
  hl.name = "rescaled-line";
  hl.signature = Signature::Neutral;
  const MetricField g = metric_G();
  const SmoothMap to = map_to_conformal();
  hl.program = [g, f, to](const JetPoint& x) { return exp(2.0 * f(to.program(x))) * g.program(x); };
  Sampler s(14);
  for (int n = 0; n < 10; ++n) {
    const LinePoint l = hemisphere_line(s);
    const double a = curvature(hl, l.chart()).scalar;
    const double b = curvature(hz, to_conformal(l).chart()).scalar;
    CHECK(std::abs(a) > 1e-3);
    CHECK(std::abs(a - b) < 1e-8 * std::max(1.0, std::abs(a)));
  }
}

TEST_CASE("Pluecker coordinates") {
  const PlueckerSextet ax = pluecker({0, 0, 0}, {0, 0, -1});
  CHECK(ax.p == std::array<double, 3>{0, 0, 0});
  CHECK(ax.q == std::array<double, 3>{0, 0, 1});
  CHECK(conformal_from_pluecker(ax) == std::array<double, 4>{0, 0, 0, 0});
  CHECK(kind_of([] { pluecker({1, 2, 3}, {1, 2, 3}); }) == ErrorKind::DegenerateLine);
  CHECK(kind_of([] { conformal_from_pluecker(pluecker({0, 0, 1}, {1, 0, 1})); }) == ErrorKind::HorizontalLine);

  const PlueckerSextet px = pluecker({0.3, -1.2, 0.5}, {1.1, 0.4, -0.7});
  PlueckerSextet scaled = px;
  for (int i = 0; i < 3; ++i) {
    scaled.p[i] *= 3.7;
    scaled.q[i] *= 3.7;
  }
  const auto x = conformal_from_pluecker(px), y = conformal_from_pluecker(scaled);
  for (int i = 0; i < 4; ++i) CHECK(std::abs(x[i] - y[i]) < 1e-14);
  CHECK(std::abs(px.p[0] * px.q[0] + px.p[1] * px.q[1] + px.p[2] * px.q[2]) < 1e-14);
}

TEST_CASE("Pluecker route agrees with the conformal map") {
  Sampler s(15);
  for (int n = 0; n < 50; ++n) {
    const LinePoint l = hemisphere_line(s);
    const auto a = phi(l, s.uniform(-2, 2));
    const auto b = phi(l, s.uniform(3, 5));
    const LinePoint rebuilt = line_through(a, b);
    CHECK(std::abs(rebuilt.xi - l.xi) < 1e-9);
    CHECK(std::abs(rebuilt.eta - l.eta) < 1e-9);
    const auto x = conformal_from_pluecker(pluecker(a, b));
    const Point z = to_conformal(line_through(a, b)).chart();
    for (int i = 0; i < 4; ++i) CHECK(std::abs(x[i] - z[i]) < 1e-9);
  }
}
