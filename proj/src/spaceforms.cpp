#include "paraplex/spaceforms.hpp"

#include <cmath>

namespace paraplex {

namespace {

constexpr int kPairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
constexpr double kPivotFloor = 1e-8;

template <class T>
using V4 = std::array<T, 4>;
using JetBivector = std::array<Jet2, 6>;

template <class T>
T inner(const Vec4& eta, const V4<T>& a, const V4<T>& b) {
  T s(0.0);
  for (int i = 0; i < 4; ++i) s += eta[i] * (a[i] * b[i]);
  return s;
}

template <class T>
V4<T> axpy(const V4<T>& a, const T& s, const V4<T>& b) {  // a + s b
  V4<T> r;
  for (int i = 0; i < 4; ++i) r[i] = a[i] + s * b[i];
  return r;
}

template <class T>
V4<T> scaled(const V4<T>& a, const T& s) {
  V4<T> r;
  for (int i = 0; i < 4; ++i) r[i] = s * a[i];
  return r;
}

template <class T>
std::array<T, 6> wedge(const V4<T>& a, const V4<T>& b) {
  std::array<T, 6> r;
  for (int I = 0; I < 6; ++I) r[I] = a[kPairs[I][0]] * b[kPairs[I][1]] - a[kPairs[I][1]] * b[kPairs[I][0]];
  return r;
}

JetBivector add(const JetBivector& a, const JetBivector& b, double sb = 1.0) {
  JetBivector r;
  for (int I = 0; I < 6; ++I) r[I] = a[I] + sb * b[I];
  return r;
}

// v_a T^{ab} with indices lowered by eta.
V4<Jet2> contract(const Vec4& eta, const V4<Jet2>& v, const JetBivector& t) {
  V4<Jet2> r{};
  for (int I = 0; I < 6; ++I) {
    const int i = kPairs[I][0], j = kPairs[I][1];
    r[j] += eta[i] * (v[i] * t[I]);
    r[i] -= eta[j] * (v[j] * t[I]);
  }
  return r;
}

// eps_{ijkl} over the permutations of {0,1,2,3}.
int levi_civita(int i, int j, int k, int l) {
  const int p[4] = {i, j, k, l};
  int sign = 1;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) {
      if (p[a] == p[b]) return 0;
      if (p[a] > p[b]) sign = -sign;
    }
  return sign;
}

struct Frame {
  V4<Jet2> x, y;
  std::array<V4<Jet2>, 4> dx, dy;
};

struct Embedded {
  Frame f;
  std::array<JetBivector, 4> dB;
  Matrix4<Jet2> G;
};

Vec4 unit(int i) {
  Vec4 e{};
  e[i] = 1.0;
  return e;
}

template <class T>
V4<T> lift(const Vec4& v) {
  V4<T> r;
  for (int i = 0; i < 4; ++i) r[i] = T(v[i]);
  return r;
}

Frame frame(const AmbientSignature& s, const JetPoint& u) {
  const Vec4 eta = ambient_diagonal(s.p);
  const auto ax = chart_axes(s);
  const Vec4 ea = unit(ax[0]), eb = unit(ax[1]), er = unit(ax[2]), es = unit(ax[3]);
  V4<Jet2> va = lift<Jet2>(ea), vb = lift<Jet2>(eb);
  for (int i = 0; i < 4; ++i) {
    va[i] += u[0] * er[i] + u[2] * es[i];
    vb[i] += u[1] * er[i] + u[3] * es[i];
  }
  const std::array<Vec4, 4> dva = {er, Vec4{}, es, Vec4{}};
  const std::array<Vec4, 4> dvb = {Vec4{}, er, Vec4{}, es};

  Frame f;
  const Jet2 n2 = inner(eta, va, va);
  if (n2.value <= kPivotFloor) throw Error(ErrorKind::ChartDegeneracy, "first chart vector is not spacelike");
  const Jet2 n = sqrt(n2);
  f.x = scaled(va, 1.0 / n);
  for (int a = 0; a < 4; ++a) {
    const V4<Jet2> d = lift<Jet2>(dva[a]);
    f.dx[a] = scaled(axpy(d, -inner(eta, d, f.x), f.x), 1.0 / n);
  }
  const Jet2 bx = inner(eta, vb, f.x);
  const V4<Jet2> yp = axpy(vb, -bx, f.x);
  const Jet2 m2 = s.epsilon * inner(eta, yp, yp);
  if (m2.value <= kPivotFloor) throw Error(ErrorKind::ChartDegeneracy, "second chart vector has the wrong causal type");
  const Jet2 m = sqrt(m2);
  f.y = scaled(yp, 1.0 / m);
  for (int a = 0; a < 4; ++a) {
    const V4<Jet2> d = lift<Jet2>(dvb[a]);
    V4<Jet2> dyp = axpy(d, -(inner(eta, d, f.x) + inner(eta, vb, f.dx[a])), f.x);
    dyp = axpy(dyp, -bx, f.dx[a]);
    f.dy[a] = scaled(axpy(dyp, -(s.epsilon * inner(eta, dyp, f.y)), f.y), 1.0 / m);
  }
  return f;
}

Jet2 bivector_inner(const Vec4& eta, const JetBivector& a, const JetBivector& b) {
  Jet2 r(0.0);
  for (int I = 0; I < 6; ++I) r += (eta[kPairs[I][0]] * eta[kPairs[I][1]]) * (a[I] * b[I]);
  return r;
}

Embedded embed(const AmbientSignature& s, const JetPoint& u) {
  Embedded e;
  e.f = frame(s, u);
  const Vec4 eta = ambient_diagonal(s.p);
  for (int a = 0; a < 4; ++a) e.dB[a] = add(wedge(e.f.dx[a], e.f.y), wedge(e.f.x, e.f.dy[a]));
  for (int a = 0; a < 4; ++a)
    for (int b = a; b < 4; ++b) e.G[a][b] = e.G[b][a] = bivector_inner(eta, e.dB[a], e.dB[b]);
  return e;
}

using BivectorOp = std::function<JetBivector(const JetBivector&)>;

// Coordinates of op(dB_m) in the basis dB_a, via the bivector Gram matrix.
Matrix4<Jet2> chart_matrix(const AmbientSignature& s, const Embedded& e, const BivectorOp& op) {
  const Vec4 eta = ambient_diagonal(s.p);
  if (std::abs(det(values(e.G))) < 1e-12) throw Error(ErrorKind::FrameDegeneracy, "tangent frame is degenerate");
  const Matrix4<Jet2> gi = inverse(e.G);
  Matrix4<Jet2> rhs;
  for (int m = 0; m < 4; ++m) {
    const JetBivector img = op(e.dB[m]);
    for (int a = 0; a < 4; ++a) rhs[a][m] = bivector_inner(eta, e.dB[a], img);
  }
  return gi * rhs;
}

V4<Jet2> rotate(const AmbientSignature& s, const Frame& f, const V4<Jet2>& X) {
  const Vec4 eta = ambient_diagonal(s.p);
  // Cross product, then the sign that makes det(x, y, X, JX) = <X, X>.
  const double sign = s.epsilon * ((s.p % 2 == 0) ? 1.0 : -1.0);
  V4<Jet2> r{};
  for (int a = 0; a < 4; ++a)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) {
          const int e = levi_civita(i, j, k, a);
          if (e != 0) r[a] += (sign * e * eta[a]) * (f.x[i] * f.y[j] * X[k]);
        }
  return r;
}

JetBivector op_J(const AmbientSignature& s, const Frame& f, const JetBivector& t) {
  const Vec4 eta = ambient_diagonal(s.p);
  const V4<Jet2> X = contract(eta, f.x, t);
  const V4<Jet2> Y = scaled(contract(eta, f.y, t), Jet2(double(s.epsilon)));
  return add(wedge(f.x, rotate(s, f, X)), wedge(f.y, rotate(s, f, Y)));
}

JetBivector op_Jp(const AmbientSignature& s, const Frame& f, const JetBivector& t) {
  const Vec4 eta = ambient_diagonal(s.p);
  const V4<Jet2> X = contract(eta, f.x, t);
  const V4<Jet2> Y = scaled(contract(eta, f.y, t), Jet2(double(s.epsilon)));
  return add(wedge(f.y, X), wedge(f.x, Y), -double(s.epsilon));
}

JetBivector op_star(const AmbientSignature& s, const JetBivector& t) {
  const Vec4 eta = ambient_diagonal(s.p);
  JetBivector g;
  for (int I = 0; I < 6; ++I) g[I] = (eta[kPairs[I][0]] * eta[kPairs[I][1]]) * t[I];
  return {g[5], -g[4], g[3], g[2], -g[1], g[0]};
}

void require_admissible(const AmbientSignature& s) {
  if (!admissible(s))
    throw Error(ErrorKind::NormalizationImpossible, "no oriented geodesic space for " + s.name());
}

Chart spaceform_chart(const AmbientSignature& s) {
  Chart c;
  c.name = "plane-chart " + s.name();
  c.bindings = ChartBindings::real({"u0", "u1", "u2", "u3"});
  c.valid = [s](const Point& u) {
    try {
      frame(s, constant_point(u));
      return true;
    } catch (const Error&) {
      return false;
    }
  };
  return c;
}

Table1Entry entry(int sq, StructureKind k) { return {sq, k}; }

}  // namespace

std::string AmbientSignature::name() const {
  return std::string("L") + (epsilon > 0 ? "+" : "-") + "(S^3_" + std::to_string(p) + ")";
}

const std::vector<AmbientSignature>& admissible_signatures() {
  static const std::vector<AmbientSignature> rows = {{0, 1}, {1, 1}, {1, -1}, {2, 1}, {2, -1}, {3, -1}};
  return rows;
}

bool admissible(const AmbientSignature& s) {
  for (const auto& r : admissible_signatures())
    if (r == s) return true;
  return false;
}

Vec4 ambient_diagonal(int p) {
  Vec4 e;
  for (int i = 0; i < 4; ++i) e[i] = i < p ? -1.0 : 1.0;
  return e;
}

std::array<int, 4> chart_axes(const AmbientSignature& s) {
  if (s.p < 0 || s.p > 4 || (s.epsilon != 1 && s.epsilon != -1))
    throw Error(ErrorKind::NormalizationImpossible, "signature out of range");
  const Vec4 eta = ambient_diagonal(s.p);
  std::vector<int> space, time;
  for (int i = 0; i < 4; ++i) (eta[i] > 0 ? space : time).push_back(i);
  if (space.empty()) throw Error(ErrorKind::NormalizationImpossible, "<x,x> = 1 has no solution");
  const int a = space[0];
  int b = -1;
  if (s.epsilon > 0) {
    if (space.size() < 2) throw Error(ErrorKind::NormalizationImpossible, "no spacelike unit y orthogonal to x");
    b = space[1];
  } else {
    if (time.empty()) throw Error(ErrorKind::NormalizationImpossible, "no timelike unit y");
    b = time[0];
  }
  std::array<int, 4> out{a, b, -1, -1};
  int k = 2;
  for (int i = 0; i < 4; ++i)
    if (i != a && i != b) out[k++] = i;
  return out;
}

Bivector OrientedPlanePoint::bivector() const { return wedge(x, y); }

OrientedPlanePoint chart_to_plane(const AmbientSignature& s, const Point& u) {
  chart_axes(s);
  const Frame f = frame(s, constant_point(u));
  OrientedPlanePoint o;
  o.u = u;
  for (int i = 0; i < 4; ++i) {
    o.x[i] = f.x[i].value;
    o.y[i] = f.y[i].value;
  }
  return o;
}

double pluecker_quadric(const Bivector& b) { return b[0] * b[5] - b[1] * b[4] + b[2] * b[3]; }

MetricField metric_Gp(const AmbientSignature& s) {
  require_admissible(s);
  MetricField g;
  g.name = "G_p " + s.name();
  g.chart = spaceform_chart(s);
  g.program = [s](const JetPoint& u) { return embed(s, u).G; };
  const auto counts = signature_counts(values(g.program(constant_point({0, 0, 0, 0}))));
  g.signature = counts == std::pair<int, int>{4, 0}   ? Signature::Riemannian
                : counts == std::pair<int, int>{0, 4} ? Signature::NegativeDefinite
                                                      : Signature::Neutral;
  return g;
}

SpaceformStructures structures_JJpJstar(const AmbientSignature& s) {
  require_admissible(s);
  SpaceformStructures out;
  const Chart chart = spaceform_chart(s);
  auto jmat = [s](const JetPoint& u) {
    const Embedded e = embed(s, u);
    return chart_matrix(s, e, [&](const JetBivector& t) { return op_J(s, e.f, t); });
  };
  auto jpmat = [s](const JetPoint& u) {
    const Embedded e = embed(s, u);
    return chart_matrix(s, e, [&](const JetBivector& t) { return op_Jp(s, e.f, t); });
  };
  const int jsq = (s.p == 1 || s.p == 2) ? -s.epsilon * (s.p == 1 ? -1 : 1) : -1;
  out.j = {"J", chart, jmat, jsq};
  out.jp = {"J'", chart, jpmat, -s.epsilon};
  out.jstar = {"J*", chart, [jmat, jpmat](const JetPoint& u) { return -1.0 * (jpmat(u) * jmat(u)); },
               (s.p % 2 == 0) ? 1 : -1};
  return out;
}

TangentHodge hodge_on_tangent(const AmbientSignature& s, const Point& u) {
  require_admissible(s);
  const Embedded e = embed(s, constant_point(u));
  const auto star = [&](const JetBivector& t) { return op_star(s, t); };
  TangentHodge h;
  h.star = values(chart_matrix(s, e, star));
  for (int m = 0; m < 4; ++m) {
    const JetBivector img = op_star(s, e.dB[m]);
    for (int I = 0; I < 6; ++I) {
      double rec = 0.0;
      for (int a = 0; a < 4; ++a) rec += h.star[a][m] * e.dB[a][I].value;
      h.leak = std::max(h.leak, std::abs(rec - img[I].value));
    }
  }
  return h;
}

MetricField metric_Gp_prime(const AmbientSignature& s, const std::vector<Point>& probes) {
  MetricField g = associated_metric(metric_Gp(s), structures_JJpJstar(s).jstar, probes);
  g.name = "G'_p " + s.name();
  return g;
}

std::array<Table1Entry, 3> table1_expected(const AmbientSignature& s) {
  require_admissible(s);
  const auto I = StructureKind::Isometric, A = StructureKind::AntiIsometric;
  const int C = -1, P = 1;
  if (s.p == 0 || (s.p == 2 && s.epsilon > 0)) return {entry(C, I), entry(C, I), entry(P, I)};
  if (s.p == 1 && s.epsilon > 0) return {entry(P, A), entry(C, I), entry(C, A)};
  if (s.p == 2) return {entry(P, A), entry(P, A), entry(P, I)};
  return {entry(C, I), entry(P, A), entry(C, A)};  // (1,-), (3,-)
}

Table1Row table1_verify(const AmbientSignature& s, const Point& u) {
  Table1Row row;
  row.sig = s;
  row.expected = table1_expected(s);
  const Mat4 g = metric_Gp(s).value(u);
  const SpaceformStructures st = structures_JJpJstar(s);
  const StructureField* js[3] = {&st.j, &st.jp, &st.jstar};
  for (int k = 0; k < 3; ++k) {
    const StructureClassification c = classify(g, js[k]->value(u));
    row.computed[k] = {c.square, c.kind};
  }
  row.match = row.computed == row.expected;
  return row;
}

std::string to_string(const Table1Entry& e) {
  const char* k = e.kind == StructureKind::Isometric ? "isometric" : e.kind == StructureKind::AntiIsometric ? "anti" : "neither";
  return std::string(e.square < 0 ? "complex/" : "para/") + k;
}

}  // namespace paraplex
