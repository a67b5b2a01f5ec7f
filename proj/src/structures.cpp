#include "paraplex/structures.hpp"

#include <algorithm>
#include <cmath>

namespace paraplex {

namespace {

double dot(const Vec4& a, const Vec4& b) {
  double s = 0.0;
  for (int i = 0; i < 4; ++i) s += a[i] * b[i];
  return s;
}

double gdot(const Mat4& g, const Vec4& a, const Vec4& b) {
  double s = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) s += a[i] * g[i][k] * b[k];
  return s;
}

// Column-pivoted modified Gram-Schmidt on the columns of m; returns an orthonormal basis of the
// column space (Euclidean inner product).
std::vector<Vec4> column_basis(const Mat4& m, double tol) {
  std::array<Vec4, 4> cols;
  for (int c = 0; c < 4; ++c)
    for (int r = 0; r < 4; ++r) cols[c][r] = m[r][c];
  std::array<bool, 4> used{};
  std::vector<Vec4> basis;
  for (int step = 0; step < 4; ++step) {
    int best = -1;
    double best_norm = tol;
    for (int c = 0; c < 4; ++c) {
      if (used[c]) continue;
      const double n = std::sqrt(dot(cols[c], cols[c]));
      if (n > best_norm) {
        best_norm = n;
        best = c;
      }
    }
    if (best < 0) break;
    used[best] = true;
    Vec4 q = cols[best];
    for (double& x : q) x /= best_norm;
    basis.push_back(q);
    for (int c = 0; c < 4; ++c) {
      if (used[c]) continue;
      const double a = dot(q, cols[c]);
      for (int r = 0; r < 4; ++r) cols[c][r] -= a * q[r];
    }
  }
  return basis;
}

double scale_of(const Mat4& m) { return std::max(1.0, max_abs(m)); }

}  // namespace

std::string_view to_string(StructureKind k) noexcept {
  switch (k) {
    case StructureKind::Isometric: return "isometric";
    case StructureKind::AntiIsometric: return "anti_isometric";
    case StructureKind::Neither: return "neither";
  }
  return "neither";
}

std::string_view to_string(EigenplaneGeometry k) noexcept {
  switch (k) {
    case EigenplaneGeometry::Orthogonal: return "orthogonal";
    case EigenplaneGeometry::TotallyNull: return "totally_null";
    case EigenplaneGeometry::Generic: return "generic";
    case EigenplaneGeometry::NotApplicable: return "not_applicable";
  }
  return "generic";
}

int square_sign(const Mat4& j, double tol) {
  const Mat4 j2 = j * j;
  const double s = scale_of(j) * scale_of(j);
  if (max_abs(j2 - Mat4::identity()) <= tol * s) return 1;
  if (max_abs(j2 + Mat4::identity()) <= tol * s) return -1;
  throw Error(ErrorKind::NotParacomplex, "j^2 is neither +id nor -id");
}

EigenplanePair eigenplanes(const Mat4& j) {
  const Mat4 j2 = j * j;
  if (max_abs(j2 - Mat4::identity()) > kAlgebraicTol * scale_of(j) * scale_of(j))
    throw Error(ErrorKind::NotParacomplex, "j^2 != id");
  const double tol = 1e-8 * scale_of(j);
  const std::vector<Vec4> bp = column_basis(0.5 * (Mat4::identity() + j), tol);
  const std::vector<Vec4> bm = column_basis(0.5 * (Mat4::identity() - j), tol);
  if (bp.size() != 2 || bm.size() != 2)
    throw Error(ErrorKind::NotParacomplex, "eigenspaces are not both 2-dimensional");
  EigenplanePair out;
  out.plus = {bp[0], bp[1]};
  out.minus = {bm[0], bm[1]};
  return out;
}

StructureClassification classify(const Mat4& g, const Mat4& j) {
  StructureClassification c;
  c.square = square_sign(j);
  const Mat4 pulled = transpose(j) * g * j;
  const double gs = scale_of(g);
  c.isometry_residual = max_abs(pulled - g);
  c.anti_isometry_residual = max_abs(pulled + g);
  const double tol = kAlgebraicTol * gs * scale_of(j) * scale_of(j);
  const bool iso_direct = c.isometry_residual < tol;
  const bool anti_direct = c.anti_isometry_residual < tol;

  if (c.square == -1) {
    c.kind = iso_direct ? StructureKind::Isometric : anti_direct ? StructureKind::AntiIsometric : StructureKind::Neither;
    return c;
  }

  const EigenplanePair e = eigenplanes(j);
  for (const Vec4& a : e.plus)
    for (const Vec4& b : e.minus) c.cross_residual = std::max(c.cross_residual, std::abs(gdot(g, a, b)));
  for (const auto* plane : {&e.plus, &e.minus})
    for (int a = 0; a < 2; ++a)
      for (int b = a; b < 2; ++b)
        c.null_residual = std::max(c.null_residual, std::abs(gdot(g, (*plane)[a], (*plane)[b])));
  const bool orthogonal = c.cross_residual < kAlgebraicTol * gs;
  const bool null = c.null_residual < kAlgebraicTol * gs;
  c.geometry = orthogonal ? EigenplaneGeometry::Orthogonal
               : null     ? EigenplaneGeometry::TotallyNull
                          : EigenplaneGeometry::Generic;
  c.kind = orthogonal ? StructureKind::Isometric : null ? StructureKind::AntiIsometric : StructureKind::Neither;
  if (orthogonal != iso_direct || null != anti_direct)
    throw Error(ErrorKind::NotParacomplex, "eigenplane and direct classifications disagree");
  return c;
}

MetricField associated_metric(const MetricField& g, const StructureField& j, const std::vector<Point>& probes) {
  MetricField out;
  out.name = g.name + "(" + j.name + ".,.)";
  out.chart = g.chart;
  out.orientation = g.orientation;
  const MatrixProgram gp = g.program, jp = j.program;
  out.program = [gp, jp](const JetPoint& x) {
    const Matrix4<Jet2> G = gp(x), J = jp(x);
    Matrix4<Jet2> r = G * J;
    // Symmetrize exactly; the probes below guarantee the antisymmetric part is negligible.
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) r[a][b] = r[b][a] = 0.5 * (r[a][b] + r[b][a]);
    return r;
  };
  std::pair<int, int> counts{0, 0};
  for (const Point& p : probes) {
    const Mat4 gv = g.value(p), jv = j.value(p);
    const Mat4 pulled = transpose(jv) * gv * jv;
    if (max_abs(pulled - gv) > 1e-9 * scale_of(gv))
      throw Error(ErrorKind::NotIsometric, "j is not g-isometric at a probe point");
    const Mat4 gj = gv * jv;
    if (max_abs(gj - transpose(gj)) > 1e-9 * scale_of(gv))
      throw Error(ErrorKind::NotIsometric, "g(j.,.) is not symmetric");
    counts = signature_counts(gj);
  }
  out.signature = counts == std::pair<int, int>{4, 0}   ? Signature::Riemannian
                  : counts == std::pair<int, int>{0, 4} ? Signature::NegativeDefinite
                  : counts == std::pair<int, int>{3, 1} || counts == std::pair<int, int>{1, 3}
                      ? Signature::Lorentz
                      : Signature::Neutral;
  return out;
}

MatrixProgram associated_form(const MetricField& g, const StructureField& j) {
  const MatrixProgram gp = g.program, jp = j.program;
  return [gp, jp](const JetPoint& x) { return transpose(jp(x)) * gp(x); };
}

Tensor3 exterior_derivative(const MatrixProgram& omega, const Point& p) {
  const Matrix4<Jet2> w = omega(seed_point(p));
  Tensor3 d{};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c) d[a][b][c] = w[b][c].grad[a] + w[c][a].grad[b] + w[a][b].grad[c];
  return d;
}

double parallel_residual(const MetricField& g, const StructureField& j, const std::vector<Point>& points) {
  double r = 0.0;
  for (const Point& p : points) r = std::max(r, max_abs(covariant_derivative_endomorphism(g, j, p)));
  return r;
}

StructureField product_structure(const StructureField& a, const StructureField& b) {
  StructureField out;
  out.name = a.name + b.name;
  out.chart = a.chart;
  const MatrixProgram ap = a.program, bp = b.program;
  out.program = [ap, bp](const JetPoint& x) { return ap(x) * bp(x); };
  out.intended_square = a.intended_square * b.intended_square;
  return out;
}

}  // namespace paraplex
