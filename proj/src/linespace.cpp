#include "paraplex/linespace.hpp"

#include <cmath>

namespace paraplex {

namespace {

template <class T>
struct ConfPair {
  ComplexT<T> z1, z2;
};

template <class T>
ConfPair<T> to_conformal_t(const ComplexT<T>& xi, const ComplexT<T>& eta) {
  const T a = abs2(xi);
  const T den = 1.0 - a * a;
  if (std::abs(value_of(den)) < 1e-14) throw Error(ErrorKind::OutsideHemisphere, "|xi| = 1");
  const ComplexT<T> f(T(2.0) / den);
  const ComplexT<T> base = eta + xi * xi * conj(eta);
  const ComplexT<T> rot = ComplexT<T>(T(0.0), T(1.0)) * ComplexT<T>(1.0 + a) * xi;
  return {f * (base - rot), f * (base + rot)};
}

template <class T>
ConfPair<T> from_conformal_t(const ComplexT<T>& z1, const ComplexT<T>& z2) {
  using std::sqrt;
  const ComplexT<T> w = z1 - z2;
  const T d = 2.0 + sqrt(4.0 + abs2(w));
  const ComplexT<T> dd(d);
  const ComplexT<T> xi = ComplexT<T>(T(0.0), T(1.0)) * w / dd;
  const ComplexT<T> eta = (z1 + z2) / dd + w * ComplexT<T>(abs2(z1) - abs2(z2)) / ComplexT<T>(2.0 * d * d);
  return {xi, eta};
}

// Real tangent basis e_a expressed as (dxi, deta).
constexpr std::array<std::array<double, 4>, 4> kBasis = {{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}};

cplx dxi_of(int a) { return {kBasis[a][0], kBasis[a][1]}; }
cplx deta_of(int a) { return {kBasis[a][2], kBasis[a][3]}; }

// Real 4x4 matrix of (dxi, deta) -> (A dxi + B deta, C dxi + D deta).
Matrix4<Jet2> complex_linear(const ComplexJet& A, const ComplexJet& B, const ComplexJet& C, const ComplexJet& D) {
  Matrix4<Jet2> m;
  const ComplexJet* blocks[2][2] = {{&A, &B}, {&C, &D}};
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      const ComplexJet& z = *blocks[r][c];
      m[2 * r][2 * c] = z.re;
      m[2 * r][2 * c + 1] = -z.im;
      m[2 * r + 1][2 * c] = z.im;
      m[2 * r + 1][2 * c + 1] = z.re;
    }
  return m;
}

ComplexJet j1_coupling(const JetPoint& x) {
  const ComplexJet xi(x[0], x[1]), eta(x[2], x[3]);
  return ComplexJet(4.0) * conj(xi) * eta / ComplexJet(1.0 + abs2(xi));
}

CVec3 vec3(cplx A, cplx B, cplx C) {
  const cplx I(0, 1);
  return {0.5 * (A + B), 0.5 * (-I * A + I * B), C};
}

}  // namespace

Chart line_chart() {
  Chart c;
  c.name = "xi-eta";
  c.bindings.names = {{"xi", 0, 1}, {"eta", 2, 3}};
  return c;
}

Chart conformal_chart() {
  Chart c;
  c.name = "conformal";
  c.bindings = ChartBindings::complex_pair("Z1", "Z2");
  return c;
}

MetricField metric_G() {
  MetricField g;
  g.name = "linespace-G";
  g.chart = line_chart();
  g.signature = Signature::Neutral;
  // g_ab = 4 (1+|xi|^2)^-2 [ c_ab + m d_ab ] with c_ab = Im(conj(deta_a) dxi_b + conj(deta_b) dxi_a) / 2,
  // d_ab = Re(dxi_a conj(dxi_b)), m = 2 Im(conj(xi) eta) / (1 + |xi|^2).
  Mat4 c{}, d{};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      c[a][b] = 0.5 * (std::conj(deta_of(a)) * dxi_of(b) + std::conj(deta_of(b)) * dxi_of(a)).imag();
      d[a][b] = (dxi_of(a) * std::conj(dxi_of(b))).real();
    }
  g.program = [c, d](const JetPoint& x) {
    const ComplexJet xi(x[0], x[1]), eta(x[2], x[3]);
    const Jet2 q = 1.0 + abs2(xi);
    const Jet2 pre = 4.0 / (q * q);
    const Jet2 m = 2.0 * (conj(xi) * eta).im / q;
    Matrix4<Jet2> r;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        Jet2 e(c[a][b]);
        if (d[a][b] != 0.0) e = e + d[a][b] * m;
        r[a][b] = pre * e;
      }
    return r;
  };
  return g;
}

LineStructures structures_J012() {
  LineStructures s;
  const ComplexJet zero(0.0), one(1.0), I(Jet2(0.0), Jet2(1.0));
  s.j0.name = "J0";
  s.j0.chart = line_chart();
  s.j0.intended_square = -1;
  s.j0.program = [=](const JetPoint&) { return complex_linear(I, zero, zero, I); };
  s.j1.name = "J1";
  s.j1.chart = line_chart();
  s.j1.intended_square = 1;
  s.j1.program = [=](const JetPoint& x) { return complex_linear(one, zero, j1_coupling(x), -one); };
  s.j2.name = "J2";
  s.j2.chart = line_chart();
  s.j2.intended_square = -1;
  s.j2.program = [=](const JetPoint& x) { return complex_linear(I, zero, I * j1_coupling(x), -I); };
  return s;
}

MetricField metric_G_tilde() {
  const MetricField g = metric_G();
  const LineStructures s = structures_J012();
  MetricField t;
  t.name = "linespace-G-tilde";
  t.chart = line_chart();
  t.signature = Signature::Neutral;
  t.program = associated_form(g, s.j2);
  return t;
}

MetricField metric_conformal_flat_form() {
  MetricField g;
  g.name = "linespace-conformal";
  g.chart = conformal_chart();
  g.signature = Signature::Neutral;
  g.program = [](const JetPoint& x) {
    const Jet2 w = linespace_conformal_factor(x);
    const Jet2 w2 = w * w;
    Matrix4<Jet2> r;
    r[0][0] = r[1][1] = w2;
    r[2][2] = r[3][3] = -w2;
    return r;
  };
  return g;
}

Jet2 linespace_conformal_factor(const JetPoint& x) {
  const ComplexJet z1(x[0], x[1]), z2(x[2], x[3]);
  return pow(1.0 + 0.25 * abs2(z1 - z2), -0.5);
}

MatrixProgram omega0() { return associated_form(metric_G(), structures_J012().j0); }
MatrixProgram omega1() { return associated_form(metric_G(), structures_J012().j1); }

std::array<double, 3> phi(const LinePoint& line, double r) {
  const cplx xi = line.xi, eta = line.eta;
  const double a = std::norm(xi);
  const cplx z = 2.0 * (eta - xi * xi * std::conj(eta)) / ((1 + a) * (1 + a)) + 2.0 * xi / (1 + a) * r;
  const double x3 = -2.0 * (std::conj(xi) * eta + xi * std::conj(eta)).real() / ((1 + a) * (1 + a)) + (1 - a) / (1 + a) * r;
  return {z.real(), z.imag(), x3};
}

LineFrame line_frame(cplx xi) {
  const double a = std::norm(xi);
  const double s2 = std::sqrt(2.0);
  const cplx xb = std::conj(xi);
  LineFrame f;
  f.e0 = vec3(2.0 * xi / (1 + a), 2.0 * xb / (1 + a), (1 - a) / (1 + a));
  f.e_plus = vec3(s2 / (1 + a), -s2 * xb * xb / (1 + a), -s2 * xb / (1 + a));
  f.e_minus = vec3(-s2 * xi * xi / (1 + a), s2 / (1 + a), -s2 * xi / (1 + a));
  return f;
}

Pushforward phi_pushforward(const LinePoint& line, double r) {
  // Jets of Phi in the four line coordinates.
  const JetPoint x = seed_point(line.chart());
  const ComplexJet xi(x[0], x[1]), eta(x[2], x[3]);
  const Jet2 a = abs2(xi);
  const Jet2 q = 1.0 + a;
  const ComplexJet z = ComplexJet(2.0) * (eta - xi * xi * conj(eta)) / ComplexJet(q * q) +
                       ComplexJet(2.0 * r) * xi / ComplexJet(q);
  const Jet2 x3 = -2.0 * (conj(xi) * eta + xi * conj(eta)).re / (q * q) + r * (1.0 - a) / q;
  const std::array<Jet2, 3> comps = {z.re, z.im, x3};
  Pushforward out;
  const cplx I(0, 1);
  for (int k = 0; k < 3; ++k) {
    const auto& g = comps[k].grad;
    out.d_xi[k] = 0.5 * (g[0] - I * g[1]);
    out.d_eta[k] = 0.5 * (g[2] - I * g[3]);
  }
  out.frame = line_frame(line.xi);
  const double aa = std::norm(line.xi);
  out.xi_plus = (r - 2.0 * std::conj(line.xi) * line.eta / (1 + aa)) * std::sqrt(2.0) / (1 + aa);
  out.xi_zero = -2.0 * std::conj(line.eta) / ((1 + aa) * (1 + aa));
  out.eta_plus = std::sqrt(2.0) / (1 + aa);
  return out;
}

LinePoint reflect_line(const LinePoint& line) {
  if (std::abs(line.xi) < 1e-12) throw Error(ErrorKind::PoleOfChart, "xi = 0 maps off the chart");
  const cplx xb = std::conj(line.xi);
  return {1.0 / xb, std::conj(line.eta) / (xb * xb)};
}

ConformalPoint to_conformal(const LinePoint& line) {
  if (!(std::abs(line.xi) < 1.0)) throw Error(ErrorKind::OutsideHemisphere, "|xi| >= 1");
  const auto c = to_conformal_t<double>(ComplexT<double>(line.xi), ComplexT<double>(line.eta));
  return {c.z1.value(), c.z2.value()};
}

LinePoint from_conformal(const ConformalPoint& cp) {
  const auto c = from_conformal_t<double>(ComplexT<double>(cp.z1), ComplexT<double>(cp.z2));
  return {c.z1.value(), c.z2.value()};
}

PlueckerSextet pluecker(const std::array<double, 3>& s, const std::array<double, 3>& t) {
  if (s == t) throw Error(ErrorKind::DegenerateLine, "s = t");
  PlueckerSextet px;
  px.p = {s[1] * t[2] - t[1] * s[2], s[2] * t[0] - t[2] * s[0], s[0] * t[1] - t[0] * s[1]};
  px.q = {s[0] - t[0], s[1] - t[1], s[2] - t[2]};
  return px;
}

std::array<double, 4> conformal_from_pluecker(const PlueckerSextet& px) {
  const double q3 = px.q[2];
  const double scale = std::max({std::abs(px.q[0]), std::abs(px.q[1]), std::abs(px.q[2])});
  if (std::abs(q3) <= 1e-14 * std::max(scale, 1e-300)) throw Error(ErrorKind::HorizontalLine, "q3 = 0");
  const auto& p = px.p;
  const auto& q = px.q;
  return {(p[1] + q[1]) / q3, (-p[0] - q[0]) / q3, (p[1] - q[1]) / q3, (-p[0] + q[0]) / q3};
}

LinePoint line_through(const std::array<double, 3>& s, const std::array<double, 3>& t) {
  std::array<double, 3> d = {t[0] - s[0], t[1] - s[1], t[2] - s[2]};
  const double n = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
  if (n == 0.0) throw Error(ErrorKind::DegenerateLine, "s = t");
  for (double& x : d) x /= n;
  if (1.0 + d[2] < 1e-12) throw Error(ErrorKind::PoleOfChart, "direction is the south pole");
  const cplx xi = cplx(d[0], d[1]) / (1.0 + d[2]);
  const double sd = s[0] * d[0] + s[1] * d[1] + s[2] * d[2];
  const std::array<double, 3> c = {s[0] - sd * d[0], s[1] - sd * d[1], s[2] - sd * d[2]};
  const double a = std::norm(xi);
  const cplx A = cplx(c[0], c[1]) * (1 + a) * (1 + a) / 2.0;
  if (std::abs(1.0 - a * a) < 1e-14) throw Error(ErrorKind::HorizontalLine, "direction on the equator");
  return {xi, (A + xi * xi * std::conj(A)) / (1.0 - a * a)};
}

SmoothMap map_to_conformal() {
  SmoothMap m;
  m.name = "to_conformal";
  m.source = line_chart();
  m.source.valid = [](const Point& p) { return p[0] * p[0] + p[1] * p[1] < 1.0; };
  m.target = conformal_chart();
  m.program = [](const JetPoint& x) {
    const auto c = to_conformal_t<Jet2>(ComplexJet(x[0], x[1]), ComplexJet(x[2], x[3]));
    return JetPoint{c.z1.re, c.z1.im, c.z2.re, c.z2.im};
  };
  return m;
}

SmoothMap map_from_conformal() {
  SmoothMap m;
  m.name = "from_conformal";
  m.source = conformal_chart();
  m.target = line_chart();
  m.program = [](const JetPoint& x) {
    const auto c = from_conformal_t<Jet2>(ComplexJet(x[0], x[1]), ComplexJet(x[2], x[3]));
    return JetPoint{c.z1.re, c.z1.im, c.z2.re, c.z2.im};
  };
  return m;
}

SmoothMap map_rotate_eta() {
  SmoothMap m;
  m.name = "rotate_eta";
  m.source = line_chart();
  m.target = line_chart();
  m.program = [](const JetPoint& x) { return JetPoint{x[0], x[1], -x[3], x[2]}; };
  return m;
}

}  // namespace paraplex
