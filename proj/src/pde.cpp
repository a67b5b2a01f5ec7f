#include "paraplex/pde.hpp"

#include <Eigen/Dense>
#include <algorithm>

#include "paraplex/linespace.hpp"

namespace paraplex {

namespace {

using C = std::complex<double>;
const C I(0.0, 1.0);

struct OmegaData {
  double value;
  Wirtinger d;
};

OmegaData omega_at(const ConformalFactor& f, const Point& p) {
  const Jet2 w = f.omega(seed_point(p));
  if (std::abs(w.value) <= kConformalFloor) throw Error(ErrorKind::SingularMetric, "conformal factor vanishes");
  return {w.value, wirtinger(ComplexJet(w))};
}

ComplexJet unit(const Jet2& angle) { return {cos(angle), sin(angle)}; }

// Real vectors 2 Re V and 2 Re(iV) for V = c1 d1 + c2 d2 + d2' d2bar.
std::array<std::array<Jet2, 4>, 2> realify(const ComplexJet& c2, const ComplexJet& d2) {
  const ComplexJet s = c2 + conj(d2);
  const ComplexJet t = ComplexJet(Jet2(0.0), Jet2(1.0)) * (c2 - conj(d2));
  return {{{Jet2(1.0), Jet2(0.0), s.re, s.im}, {Jet2(0.0), Jet2(1.0), t.re, t.im}}};
}

Matrix4<Jet2> from_planes(const std::array<std::array<Jet2, 4>, 2>& plus,
                          const std::array<std::array<Jet2, 4>, 2>& minus) {
  Matrix4<Jet2> m;
  for (int i = 0; i < 4; ++i) {
    m[i][0] = plus[0][i];
    m[i][1] = plus[1][i];
    m[i][2] = minus[0][i];
    m[i][3] = minus[1][i];
  }
  Matrix4<Jet2> d;
  d[0][0] = d[1][1] = Jet2(1.0);
  d[2][2] = d[3][3] = Jet2(-1.0);
  return m * d * inverse(m);
}

SystemResidual pack(std::vector<C> eqs) {
  SystemResidual r;
  r.equations = std::move(eqs);
  for (const C& e : r.equations) r.max_modulus = std::max(r.max_modulus, std::abs(e));
  return r;
}

SystemResidual null_residual(NullFamily family, const ConformalFactor& f, const ScalarProgram& phi1,
                             const ScalarProgram& phi2, const Point& p) {
  const JetPoint x = seed_point(p);
  const Jet2 om = f.omega(x);
  if (std::abs(om.value) <= kConformalFloor) throw Error(ErrorKind::SingularMetric, "conformal factor vanishes");
  const Wirtinger dw = wirtinger(ComplexJet(om));
  const Jet2 a1 = phi1(x), a2 = phi2(x);
  if (std::abs(std::polar(1.0, a1.value) - std::polar(1.0, a2.value)) <= kStructureFloor)
    throw Error(ErrorKind::CoincidentPlanes, "eigenplanes coincide");
  std::vector<C> eqs;
  for (const Jet2& a : {a1, a2}) {
    const Wirtinger q = wirtinger(ComplexJet(om) * unit(-a));
    if (family == NullFamily::Alpha) {
      eqs.push_back(q.d1 + dw.d2);
      eqs.push_back(q.db2 + dw.db1);
    } else {
      eqs.push_back(q.d1 + dw.db2);
      eqs.push_back(q.d2 + dw.db1);
    }
  }
  return pack(std::move(eqs));
}

std::vector<double> flatten(const Tensor3& t) {
  std::vector<double> v;
  v.reserve(64);
  for (const auto& a : t)
    for (const auto& b : a)
      for (double c : b) v.push_back(c);
  return v;
}

// Least-squares slopes s minimizing |r(s)| for r affine in s.
template <class Residual>
std::vector<double> fit_affine(int n, const Residual& r) {
  const std::vector<double> r0 = r(std::vector<double>(n, 0.0));
  Eigen::MatrixXd a(r0.size(), n);
  Eigen::VectorXd b(r0.size());
  for (std::size_t i = 0; i < r0.size(); ++i) b(i) = -r0[i];
  for (int k = 0; k < n; ++k) {
    std::vector<double> s(n, 0.0);
    s[k] = 1.0;
    const std::vector<double> rk = r(s);
    for (std::size_t i = 0; i < r0.size(); ++i) a(i, k) = rk[i] - r0[i];
  }
  const Eigen::VectorXd sol = a.completeOrthogonalDecomposition().solve(b);
  return {sol.data(), sol.data() + n};
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

ConformalFactor linespace_omega() {
  return {"linespace", [](const JetPoint& x) {
            const Jet2 u = x[0] - x[2], v = x[1] - x[3];
            return 1.0 / sqrt(1.0 + 0.25 * (u * u + v * v));
          }};
}

ConformalFactor constant_omega(double c) {
  return {"constant", [c](const JetPoint&) { return Jet2(c); }};
}

MetricField conformal_metric(const ConformalFactor& f) {
  MetricField g;
  g.name = "conformal:" + f.name;
  g.chart = conformal_chart();
  g.signature = Signature::Neutral;
  g.program = [om = f.omega](const JetPoint& x) {
    const Jet2 w = om(x);
    const Jet2 w2 = w * w;
    Matrix4<Jet2> r;
    r[0][0] = r[1][1] = w2;
    r[2][2] = r[3][3] = -w2;
    return r;
  };
  return g;
}

double ultrahyperbolic_residual(const ConformalFactor& f, const Point& p) {
  const ComplexJet w(f.omega(seed_point(p)));
  return std::abs(d1_db1(w) - d2_db2(w));
}

std::string_view to_string(NullFamily f) noexcept { return f == NullFamily::Alpha ? "alpha" : "beta"; }

StructureField anti_isometric_structure(NullFamily family, const ScalarProgram& phi1, const ScalarProgram& phi2) {
  StructureField j;
  j.name = std::string(to_string(family)) + "-structure";
  j.chart = conformal_chart();
  j.intended_square = 1;
  j.program = [family, phi1, phi2](const JetPoint& x) {
    const ComplexJet e1 = unit(phi1(x)), e2 = unit(phi2(x));
    if (std::abs(e1.value() - e2.value()) <= kStructureFloor)
      throw Error(ErrorKind::CoincidentPlanes, "eigenplanes coincide");
    const ComplexJet zero;
    if (family == NullFamily::Alpha) return from_planes(realify(e1, zero), realify(e2, zero));
    return from_planes(realify(zero, e1), realify(zero, e2));
  };
  return j;
}

SystemResidual alpha_parallel_residual(const ConformalFactor& f, const ScalarProgram& phi1, const ScalarProgram& phi2,
                                       const Point& p) {
  return null_residual(NullFamily::Alpha, f, phi1, phi2, p);
}

SystemResidual beta_parallel_residual(const ConformalFactor& f, const ScalarProgram& phi1, const ScalarProgram& phi2,
                                      const Point& p) {
  return null_residual(NullFamily::Beta, f, phi1, phi2, p);
}

GraphInvariants graph_invariants(C alpha, C beta) {
  GraphInvariants g;
  const double aa = std::norm(alpha), bb = std::norm(beta);
  g.delta1 = aa - bb;
  if (std::abs(g.delta1) <= kStructureFloor) throw Error(ErrorKind::DegenerateStructure, "delta1 vanishes");
  const double u = 1.0 - 1.0 / g.delta1, v = 1.0 + 1.0 / g.delta1;
  g.delta2 = aa * u * u - bb * v * v;
  if (std::abs(g.delta2) <= kStructureFloor) throw Error(ErrorKind::DegenerateStructure, "delta2 vanishes");
  return g;
}

StructureField isometric_graph_structure(const ComplexProgram& alpha, const ComplexProgram& beta) {
  StructureField j;
  j.name = "graph-structure";
  j.chart = conformal_chart();
  j.intended_square = 1;
  j.program = [alpha, beta](const JetPoint& x) {
    const ComplexJet a = alpha(x), b = beta(x);
    graph_invariants(a.value(), b.value());
    const Jet2 d1 = a.re * a.re + a.im * a.im - b.re * b.re - b.im * b.im;
    const ComplexJet inv(1.0 / d1);
    return from_planes(realify(a, conj(b)), realify(a * inv, -(conj(b) * inv)));
  };
  return j;
}

SystemResidual isometric_parallel_residual(const ConformalFactor& f, const ComplexProgram& alpha,
                                           const ComplexProgram& beta, const Point& p) {
  const OmegaData w = omega_at(f, p);
  const JetPoint x = seed_point(p);
  const ComplexJet aj = alpha(x), bj = beta(x);
  const C a = aj.value(), b = bj.value(), ac = std::conj(a), bc = std::conj(b);
  graph_invariants(a, b);
  const Wirtinger da = wirtinger(aj), dac = wirtinger(conj(aj)), db = wirtinger(bj), dbc = wirtinger(conj(bj));
  const double O = w.value;
  const C d1 = w.d.d1, db1 = w.d.db1, d2 = w.d.d2, db2 = w.d.db2;
  return pack({
      O * da.d1 - a * d1 - a * (a * d2 + bc * db2),
      O * dac.d1 + ac * d1 - ((b * bc - 1.0) * d2 + ac * bc * db2),
      O * da.d2 + a * d2 - ((b * bc - 1.0) * d1 + a * bc * db1),
      O * dac.d2 - ac * d2 - ac * (ac * d1 + bc * db1),
      O * db.d1 + b * d1 - (a * b * d2 + (a * ac - 1.0) * db2),
      O * dbc.d1 - bc * d1 - bc * (a * d2 + bc * db2),
      O * db.d2 + b * d2 - (ac * b * d1 + (a * ac - 1.0) * db1),
      O * dbc.d2 - bc * d2 - bc * (ac * d1 + bc * db1),
  });
}

SystemResidual polar_parallel_residual(const ConformalFactor& f, const ScalarProgram& a_p, const ScalarProgram& b_p,
                                       const ScalarProgram& theta_p, const ScalarProgram& phi_p, const Point& p,
                                       PolarForm form) {
  const OmegaData w = omega_at(f, p);
  const JetPoint x = seed_point(p);
  const Jet2 aj = a_p(x), bj = b_p(x), tj = theta_p(x), pj = phi_p(x);
  const double a = aj.value, b = bj.value;
  if (a <= kStructureFloor || b <= kStructureFloor) throw Error(ErrorKind::PolarDegeneracy, "a or b vanishes");
  const Wirtinger da = wirtinger(ComplexJet(aj)), dbw = wirtinger(ComplexJet(bj)), dt = wirtinger(ComplexJet(tj)),
                  dp = wirtinger(ComplexJet(pj));
  const double O = w.value;
  const C d1 = w.d.d1, db1 = w.d.db1, d2 = w.d.d2, db2 = w.d.db2;
  const C et = std::polar(1.0, tj.value), ep = std::polar(1.0, pj.value);
  const C emt = std::conj(et), emp = std::conj(ep);
  const double s = a * a + b * b - 1.0, m = a * a - b * b + 1.0, n = a * a - b * b - 1.0;
  const double last = form == PolarForm::Printed ? m : n;
  return pack({
      2.0 * O * da.d1 - (s * et * d2 + 2.0 * a * b * emp * db2),
      2.0 * O * dbw.d1 - (2.0 * a * b * et * d2 + s * emp * db2),
      2.0 * O * da.d2 - (s * emt * d1 + 2.0 * a * b * emp * db1),
      2.0 * O * dbw.d2 - (2.0 * a * b * emt * d1 + s * emp * db1),
      2.0 * a * I * O * dt.d1 - (2.0 * a * d1 + m * et * d2),
      2.0 * b * I * O * dp.d1 - (-2.0 * b * d1 + n * emp * db2),
      2.0 * a * I * O * dt.d2 - (-m * emt * d1 - 2.0 * a * d2),
      2.0 * b * I * O * dp.d2 - (last * emp * db1 - 2.0 * b * d2),
  });
}

std::vector<C> polar_from_isometric(const std::vector<C>& r, double theta, double phi) {
  if (r.size() != 8) throw Error(ErrorKind::DomainError, "expected eight residuals");
  const C et = std::polar(1.0, theta), ep = std::polar(1.0, phi);
  const C emt = std::conj(et), emp = std::conj(ep);
  return {emt * r[0] + et * r[1], emp * r[4] + ep * r[5], emt * r[2] + et * r[3], emp * r[6] + ep * r[7],
          emt * r[0] - et * r[1], emp * r[4] - ep * r[5], emt * r[2] - et * r[3], emp * r[6] - ep * r[7]};
}

ScalarProgram affine_scalar(double value, const Point& slope, const Point& p) {
  return [=](const JetPoint& x) {
    Jet2 r(value);
    for (int k = 0; k < 4; ++k) r += slope[k] * (x[k] - p[k]);
    return r;
  };
}

ComplexProgram affine_complex(C value, const std::array<C, 4>& slope, const Point& p) {
  return [=](const JetPoint& x) {
    ComplexJet r(value);
    for (int k = 0; k < 4; ++k) r = r + ComplexJet(slope[k]) * ComplexJet(x[k] - p[k]);
    return r;
  };
}

PointwiseAngles pointwise_parallel_angles(NullFamily family, const ConformalFactor& f, double phi1, double phi2,
                                          const Point& p) {
  const MetricField g = conformal_metric(f);
  auto build = [&](const std::vector<double>& s) {
    const ScalarProgram f1 = affine_scalar(phi1, {s[0], s[1], s[2], s[3]}, p);
    const ScalarProgram f2 = affine_scalar(phi2, {s[4], s[5], s[6], s[7]}, p);
    return std::pair{f1, f2};
  };
  auto residual = [&](const std::vector<double>& s) {
    const auto [f1, f2] = build(s);
    return flatten(covariant_derivative_endomorphism(g, anti_isometric_structure(family, f1, f2), p));
  };
  const std::vector<double> s = fit_affine(8, residual);
  const auto [f1, f2] = build(s);
  return {f1, f2, max_abs(residual(s))};
}

PointwiseGraph pointwise_parallel_graph(const ConformalFactor& f, C alpha, C beta, const Point& p) {
  const MetricField g = conformal_metric(f);
  auto build = [&](const std::vector<double>& s) {
    std::array<C, 4> sa, sb;
    for (int k = 0; k < 4; ++k) {
      sa[k] = {s[k], s[4 + k]};
      sb[k] = {s[8 + k], s[12 + k]};
    }
    return std::pair{affine_complex(alpha, sa, p), affine_complex(beta, sb, p)};
  };
  auto residual = [&](const std::vector<double>& s) {
    const auto [a, b] = build(s);
    return flatten(covariant_derivative_endomorphism(g, isometric_graph_structure(a, b), p));
  };
  const std::vector<double> s = fit_affine(16, residual);
  const auto [a, b] = build(s);
  return {a, b, max_abs(residual(s))};
}

}  // namespace paraplex
