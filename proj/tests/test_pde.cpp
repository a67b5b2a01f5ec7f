#include <cmath>

#include "doctest.h"
#include "paraplex/pde.hpp"
#include "paraplex/sampling.hpp"

using namespace paraplex;
using C = std::complex<double>;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::ConfigError;
}

ScalarProgram constant(double c) {
  return [c](const JetPoint&) { return Jet2(c); };
}
ComplexProgram constant_c(C c) {
  return [c](const JetPoint&) { return ComplexJet(c); };
}

// Conformal factors solving the ultrahyperbolic equation.
std::vector<ConformalFactor> flat_scalar_factors() {
  return {linespace_omega(),
          {"exp", [](const JetPoint& x) { return exp(0.3 * (x[0] + x[2])); }},
          {"bilinear", [](const JetPoint& x) { return 1.0 + 0.2 * x[0] * x[3]; }},
          {"quadric", [](const JetPoint& x) { return 1.0 + 0.1 * (x[0] * x[0] + x[2] * x[2]); }},
          constant_omega(1.5)};
}

ConformalFactor z1_norm() {
  return {"1+|Z1|^2", [](const JetPoint& x) { return 1.0 + x[0] * x[0] + x[1] * x[1]; }};
}

// Realification of a complex 2x2 matrix acting on (Z1, Z2) coefficients.
Mat4 realify(C a, C c, C b, C d) {
  const C m[2][2] = {{a, c}, {b, d}};
  Mat4 r;
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) {
      r[2 * i][2 * k] = m[i][k].real();
      r[2 * i][2 * k + 1] = -m[i][k].imag();
      r[2 * i + 1][2 * k] = m[i][k].imag();
      r[2 * i + 1][2 * k + 1] = m[i][k].real();
    }
  return r;
}

ScalarProgram modulus(const ComplexProgram& z) {
  return [z](const JetPoint& x) {
    const ComplexJet v = z(x);
    return sqrt(v.re * v.re + v.im * v.im);
  };
}
ScalarProgram argument(const ComplexProgram& z) {
  return [z](const JetPoint& x) {
    const ComplexJet v = z(x);
    return atan2(v.im, v.re);
  };
}

std::array<C, 4> random_slopes(Sampler& s, double scale) {
  std::array<C, 4> r;
  for (auto& c : r) c = {s.uniform(-scale, scale), s.uniform(-scale, scale)};
  return r;
}

}  // namespace

TEST_CASE("ultrahyperbolic operator") {
  Sampler s(1);
  CHECK(ultrahyperbolic_residual(constant_omega(), s.point(-1, 1)) == 0.0);
  for (int n = 0; n < 50; ++n) CHECK(ultrahyperbolic_residual(linespace_omega(), s.point(-2, 2)) < 1e-10);
  for (int n = 0; n < 10; ++n) CHECK(std::abs(ultrahyperbolic_residual(z1_norm(), s.point(-1, 1)) - 1.0) < 1e-12);
}

TEST_CASE("scalar curvature of a conformally flat neutral metric") {
  // S = -24 Omega^-3 (d1 d1bar - d2 d2bar) Omega.
  Sampler s(2);
  for (const ConformalFactor& f : {z1_norm(), ConformalFactor{"mixed", [](const JetPoint& x) {
                                                  return 2.0 + 0.3 * x[0] * x[0] - 0.1 * x[3] * x[3] + 0.2 * x[1];
                                                }}}) {
    const Point p = s.point(-0.5, 0.5);
    const ComplexJet w(f.omega(seed_point(p)));
    const double u = (d1_db1(w) - d2_db2(w)).real();
    const CurvaturePackage c = curvature(conformal_metric(f), p);
    CHECK(std::abs(c.scalar + 24.0 * u / std::pow(w.re.value, 3)) < 1e-9);
  }
  for (const ConformalFactor& f : flat_scalar_factors())
    CHECK(std::abs(curvature(conformal_metric(f), s.point(-0.5, 0.5)).scalar) < 1e-10);
}

TEST_CASE("alpha and beta structures match the closed forms") {
  Sampler s(3);
  for (int n = 0; n < 10; ++n) {
    const double t1 = s.uniform(0, 6.28), t2 = t1 + s.uniform(0.5, 5.5);
    const C e1 = std::polar(1.0, t1), e2 = std::polar(1.0, t2), d = e1 - e2;
    const Mat4 expect = realify(1.0 - 2.0 * e1 / d, 2.0 / d, (1.0 - (e1 + e2) / d) * e1, (e1 + e2) / d);
    const Point p = s.point(-1, 1);
    const Mat4 ja = anti_isometric_structure(NullFamily::Alpha, constant(t1), constant(t2)).value(p);
    CHECK(max_abs(ja - expect) < 1e-12);
    // beta: the same matrix on (Z1, Z2bar), i.e. conjugated by the flip of Im Z2.
    Mat4 flip = Mat4::identity();
    flip[3][3] = -1.0;
    const Mat4 jb = anti_isometric_structure(NullFamily::Beta, constant(t1), constant(t2)).value(p);
    CHECK(max_abs(jb - flip * expect * flip) < 1e-12);
    const Mat4 g = conformal_metric(linespace_omega()).value(p);
    for (const Mat4& j : {ja, jb}) {
      CHECK(max_abs(j * j - Mat4::identity()) < 1e-12);
      CHECK(classify(g, j).kind == StructureKind::AntiIsometric);
    }
  }
  CHECK(kind_of([] { anti_isometric_structure(NullFamily::Alpha, constant(0.3), constant(0.3)).value({0, 0, 0, 0}); }) ==
        ErrorKind::CoincidentPlanes);
  CHECK(kind_of([] { alpha_parallel_residual(constant_omega(), constant(1.0), constant(1.0), {0, 0, 0, 0}); }) ==
        ErrorKind::CoincidentPlanes);
}

TEST_CASE("anti-isometric systems: trivial and nonzero fixtures") {
  const Point p{0.1, -0.2, 0.3, 0.05};
  const MetricField flat = conformal_metric(constant_omega());
  for (NullFamily fam : {NullFamily::Alpha, NullFamily::Beta}) {
    const SystemResidual r = fam == NullFamily::Alpha ? alpha_parallel_residual(constant_omega(), constant(0), constant(M_PI), p)
                                                      : beta_parallel_residual(constant_omega(), constant(0), constant(M_PI), p);
    CHECK(r.equations.size() == 4);
    CHECK(r.max_modulus == 0.0);
    CHECK(parallel_residual(flat, anti_isometric_structure(fam, constant(0), constant(M_PI)), {p}) < 1e-14);

    // phi1 = Re Z1: |d1 e^{-i phi1}| = 1/2.
    const ScalarProgram u1 = [](const JetPoint& x) { return x[0]; };
    const SystemResidual q = fam == NullFamily::Alpha ? alpha_parallel_residual(constant_omega(), u1, constant(2.0), p)
                                                      : beta_parallel_residual(constant_omega(), u1, constant(2.0), p);
    CHECK(std::abs(q.max_modulus - 0.5) < 1e-14);
    CHECK(parallel_residual(flat, anti_isometric_structure(fam, u1, constant(2.0)), {p}) > 1e-3);

    const MetricField lines = conformal_metric(linespace_omega());
    const SystemResidual l = fam == NullFamily::Alpha ? alpha_parallel_residual(linespace_omega(), constant(0.4), constant(2.0), p)
                                                      : beta_parallel_residual(linespace_omega(), constant(0.4), constant(2.0), p);
    CHECK(l.max_modulus > 1e-3);
    CHECK(parallel_residual(lines, anti_isometric_structure(fam, constant(0.4), constant(2.0)), {p}) > 1e-3);
  }
}

TEST_CASE("anti-isometric systems agree with nabla j on fitted fixtures") {
  Sampler s(4);
  const std::vector<ConformalFactor> factors = {linespace_omega(), z1_norm(), flat_scalar_factors()[1]};
  for (NullFamily fam : {NullFamily::Alpha, NullFamily::Beta})
    for (const ConformalFactor& f : factors) {
      const Point p = s.point(-0.5, 0.5);
      const double t1 = s.uniform(0, 3), t2 = t1 + s.uniform(1, 2);
      const PointwiseAngles z = pointwise_parallel_angles(fam, f, t1, t2, p);
      CHECK(z.fit_residual < 1e-10);
      const SystemResidual r = fam == NullFamily::Alpha ? alpha_parallel_residual(f, z.phi1, z.phi2, p)
                                                        : beta_parallel_residual(f, z.phi1, z.phi2, p);
      CHECK(r.max_modulus < 1e-9);

      const ScalarProgram w1 = affine_scalar(t1, {0.3, -0.2, 0.1, 0.4}, p);
      const SystemResidual q = fam == NullFamily::Alpha ? alpha_parallel_residual(f, w1, z.phi2, p)
                                                        : beta_parallel_residual(f, w1, z.phi2, p);
      CHECK(q.max_modulus > 1e-3);
      CHECK(parallel_residual(conformal_metric(f), anti_isometric_structure(fam, w1, z.phi2), {p}) > 1e-3);
    }
}

TEST_CASE("graph structures are isometric") {
  Sampler s(5);
  for (int n = 0; n < 10; ++n) {
    const C a{s.uniform(-1.5, 1.5), s.uniform(-1.5, 1.5)}, b{s.uniform(-1, 1), s.uniform(-1, 1)};
    const Point p = s.point(-1, 1);
    const Mat4 j = isometric_graph_structure(constant_c(a), constant_c(b)).value(p);
    CHECK(max_abs(j * j - Mat4::identity()) < 1e-10);
    CHECK(classify(conformal_metric(linespace_omega()).value(p), j).kind == StructureKind::Isometric);
  }
  CHECK(kind_of([] { graph_invariants({1, 0}, {0, 1}); }) == ErrorKind::DegenerateStructure);
  // delta1 = 2: delta2 = 3 (1/2)^2 - (3/2)^2 = -3/2.
  CHECK(std::abs(graph_invariants({std::sqrt(3.0), 0}, {1, 0}).delta2 + 1.5) < 1e-12);
  // |a|^2 = 1, b = 0: delta2 = 0.
  CHECK(kind_of([] { graph_invariants({0, 1}, {0, 0}); }) == ErrorKind::DegenerateStructure);
}

TEST_CASE("isometric system: flat constants and the line-space factor") {
  const Point p{0.2, 0.1, -0.3, 0.4};
  const SystemResidual r = isometric_parallel_residual(constant_omega(), constant_c({0.7, 0.2}), constant_c({0.3, -0.4}), p);
  CHECK(r.equations.size() == 8);
  CHECK(r.max_modulus == 0.0);
  CHECK(parallel_residual(conformal_metric(constant_omega()),
                          isometric_graph_structure(constant_c({0.7, 0.2}), constant_c({0.3, -0.4})), {p}) < 1e-14);

  // alpha = 2, beta = 0: the second equation reads 2 d1 Omega + d2 Omega.
  const ConformalFactor f = linespace_omega();
  const SystemResidual q = isometric_parallel_residual(f, constant_c(2.0), constant_c(0.0), p);
  const Wirtinger w = wirtinger(ComplexJet(f.omega(seed_point(p))));
  CHECK(std::abs(q.equations[1] - (2.0 * w.d1 + w.d2)) < 1e-14);
  CHECK(std::abs(q.equations[1]) > 1e-3);
  CHECK(parallel_residual(conformal_metric(f), isometric_graph_structure(constant_c(2.0), constant_c(0.0)), {p}) > 1e-3);
}

TEST_CASE("isometric system agrees with nabla j on fitted fixtures") {
  Sampler s(6);
  const std::vector<ConformalFactor> factors = {linespace_omega(), z1_norm(), flat_scalar_factors()[1],
                                                flat_scalar_factors()[2], flat_scalar_factors()[3]};
  for (const ConformalFactor& f : factors) {
    const Point p = s.point(-0.5, 0.5);
    const C a{s.uniform(0.8, 1.5), s.uniform(-0.5, 0.5)}, b{s.uniform(-0.4, 0.4), s.uniform(-0.4, 0.4)};
    const PointwiseGraph z = pointwise_parallel_graph(f, a, b, p);
    CHECK(z.fit_residual < 1e-10);
    CHECK(isometric_parallel_residual(f, z.alpha, z.beta, p).max_modulus < 1e-9);

    const ComplexProgram a2 = affine_complex(a, random_slopes(s, 0.5), p);
    CHECK(isometric_parallel_residual(f, a2, z.beta, p).max_modulus > 1e-3);
    CHECK(parallel_residual(conformal_metric(f), isometric_graph_structure(a2, z.beta), {p}) > 1e-3);
  }
}

TEST_CASE("polar form") {
  Sampler s(7);
  const std::vector<ConformalFactor> factors = {linespace_omega(), z1_norm(), flat_scalar_factors()[2]};
  for (const ConformalFactor& f : factors)
    for (int n = 0; n < 4; ++n) {
      const Point p = s.point(-0.5, 0.5);
      const C a0{s.uniform(0.5, 1.5), s.uniform(-1, 1)}, b0{s.uniform(-0.5, 0.5), s.uniform(0.2, 0.6)};
      const ComplexProgram al = affine_complex(a0, random_slopes(s, 0.4), p);
      const ComplexProgram be = affine_complex(b0, random_slopes(s, 0.4), p);
      const SystemResidual iso = isometric_parallel_residual(f, al, be, p);
      const std::vector<C> predicted = polar_from_isometric(iso.equations, std::arg(a0), std::arg(b0));
      const SystemResidual pc =
          polar_parallel_residual(f, modulus(al), modulus(be), argument(al), argument(be), p, PolarForm::Corrected);
      const SystemResidual pp =
          polar_parallel_residual(f, modulus(al), modulus(be), argument(al), argument(be), p, PolarForm::Printed);
      for (int k = 0; k < 8; ++k) {
        CHECK(std::abs(pc.equations[k] - predicted[k]) < 1e-10);
        if (k < 7) CHECK(pp.equations[k] == pc.equations[k]);
      }
      // The printed last equation differs by 2 e^{-i phi} d1bar Omega.
      const Wirtinger w = wirtinger(ComplexJet(f.omega(seed_point(p))));
      CHECK(std::abs(pp.equations[7] - pc.equations[7] + 2.0 * std::polar(1.0, -std::arg(b0)) * w.db1) < 1e-12);
    }

  // On pointwise-parallel data the corrected polar system vanishes with the isometric one.
  for (const ConformalFactor& f : factors) {
    const Point p = s.point(-0.5, 0.5);
    const PointwiseGraph z = pointwise_parallel_graph(f, {1.1, 0.3}, {0.2, 0.25}, p);
    const SystemResidual pc =
        polar_parallel_residual(f, modulus(z.alpha), modulus(z.beta), argument(z.alpha), argument(z.beta), p);
    CHECK(pc.max_modulus < 1e-9);
  }
  CHECK(kind_of([] {
          polar_parallel_residual(constant_omega(), constant(1.0), constant(0.0), constant(0.0), constant(0.0), {0, 0, 0, 0});
        }) == ErrorKind::PolarDegeneracy);
}

TEST_CASE("flat constants: polar system vanishes and Omega is ultrahyperbolic") {
  Sampler s(8);
  double worst = 0.0;
  for (int n = 0; n < 20; ++n) {
    const Point p = s.point(-1, 1);
    worst = std::max(worst, polar_parallel_residual(constant_omega(), constant(0.8), constant(0.3), constant(0.4),
                                                    constant(-1.0), p)
                                .max_modulus);
    CHECK(ultrahyperbolic_residual(constant_omega(), p) < 1e-8);
  }
  CHECK(worst < 1e-9);
}
