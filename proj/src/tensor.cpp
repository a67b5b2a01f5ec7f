#include "paraplex/tensor.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace paraplex {

namespace {

constexpr double kSingularDet = 1e-10;
constexpr double kSymmetryTol = 1e-10;

constexpr int kPairI[6] = {0, 0, 0, 1, 1, 2};
constexpr int kPairJ[6] = {1, 2, 3, 2, 3, 3};

// Index and orientation sign of the pair (a, b) in the bivector basis.
struct PairSlot {
  int index;
  double sign;
};

constexpr PairSlot pair_slot(int a, int b) {
  if (a == b) return {-1, 0.0};
  const bool flip = a > b;
  const int i = flip ? b : a, j = flip ? a : b;
  int idx = 0;
  for (int k = 0; k < 6; ++k)
    if (kPairI[k] == i && kPairJ[k] == j) idx = k;
  return {idx, flip ? -1.0 : 1.0};
}

double levi_civita(int i, int j, int k, int l) {
  const int p[4] = {i, j, k, l};
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b)
      if (p[a] == p[b]) return 0.0;
  int inv = 0;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b)
      if (p[a] > p[b]) ++inv;
  return inv % 2 ? -1.0 : 1.0;
}

Mat4 checked_inverse(const Mat4& g) {
  if (std::abs(det(g)) <= kSingularDet) throw Error(ErrorKind::SingularMetric, "|det g| <= 1e-10");
  return inverse(g);
}

}  // namespace

std::string_view to_string(Signature s) noexcept {
  switch (s) {
    case Signature::Riemannian: return "riemannian";
    case Signature::Neutral: return "neutral";
    case Signature::Lorentz: return "lorentz";
    case Signature::NegativeDefinite: return "negative_definite";
  }
  return "unknown";
}

Signature signature_from_string(std::string_view s) {
  if (s == "riemannian") return Signature::Riemannian;
  if (s == "neutral") return Signature::Neutral;
  if (s == "lorentz") return Signature::Lorentz;
  if (s == "negative_definite") return Signature::NegativeDefinite;
  throw Error(ErrorKind::ConfigError, "unknown signature tag '" + std::string(s) + "'");
}

Matrix4<Jet2> MetricField::jets(const Point& p) const {
  if (!chart.contains(p)) throw Error(ErrorKind::TargetOutsideChart, "point outside chart '" + chart.name + "'");
  Matrix4<Jet2> m = program(seed_point(p));
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (std::abs(m[i][j].value - m[j][i].value) > kSymmetryTol)
        throw Error(ErrorKind::SingularMetric, "metric program is not symmetric");
  if (std::abs(det(values(m))) <= kSingularDet) throw Error(ErrorKind::SingularMetric, "|det g| <= 1e-10");
  return m;
}

Mat4 MetricField::value(const Point& p) const { return values(jets(p)); }

Matrix4<Jet2> StructureField::jets(const Point& p) const {
  if (!chart.contains(p)) throw Error(ErrorKind::TargetOutsideChart, "point outside chart '" + chart.name + "'");
  return program(seed_point(p));
}

Mat4 StructureField::value(const Point& p) const { return values(jets(p)); }

MetricJet metric_jet(const Matrix4<Jet2>& g) {
  MetricJet mj;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const Jet2& e = g[i][j];
      mj.g[i][j] = e.value;
      for (int k = 0; k < 4; ++k) {
        mj.dg[k][i][j] = e.grad[k];
        for (int l = 0; l < 4; ++l) mj.ddg[k][l][i][j] = e.hess(k, l);
      }
    }
  return mj;
}

MetricJet metric_jet(const MetricField& g, const Point& p) { return metric_jet(g.jets(p)); }

Tensor3 christoffels(const MetricJet& mj) {
  const Mat4 gi = checked_inverse(mj.g);
  Tensor3 G{};
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        double s = 0.0;
        for (int l = 0; l < 4; ++l) s += gi[k][l] * (mj.dg[i][l][j] + mj.dg[j][l][i] - mj.dg[l][i][j]);
        G[k][i][j] = 0.5 * s;
      }
  return G;
}

Tensor3 christoffels(const MetricField& g, const Point& p) { return christoffels(metric_jet(g, p)); }

bool is_lorentz(const Mat4& g) { return det(g) < 0.0; }

Mat6 bivector_metric(const Mat4& g) {
  Mat6 r;
  for (int I = 0; I < 6; ++I)
    for (int K = 0; K < 6; ++K) {
      const int i = kPairI[I], j = kPairJ[I], k = kPairI[K], l = kPairJ[K];
      r[I][K] = g[i][k] * g[j][l] - g[i][l] * g[j][k];
    }
  return r;
}

Mat6 bivector_volume() {
  Mat6 r;
  for (int I = 0; I < 6; ++I)
    for (int K = 0; K < 6; ++K) r[I][K] = levi_civita(kPairI[I], kPairJ[I], kPairI[K], kPairJ[K]);
  return r;
}

Mat6 hodge_star(const Mat4& g, int orientation) {
  const double d = det(g);
  if (std::abs(d) <= kSingularDet) throw Error(ErrorKind::SingularMetric, "|det g| <= 1e-10");
  return (orientation / std::sqrt(std::abs(d))) * (bivector_volume() * bivector_metric(g));
}

Mat6 hodge_star(const MetricField& g, const Point& p) { return hodge_star(g.value(p), g.orientation); }

Mat6 to_bivector(const Tensor4& t) {
  Mat6 r;
  for (int I = 0; I < 6; ++I)
    for (int K = 0; K < 6; ++K) r[I][K] = t[kPairI[I]][kPairJ[I]][kPairI[K]][kPairJ[K]];
  return r;
}

double tensor_norm2(const Tensor4& t, const Mat4& gi) {
  Tensor4 a = t, b{};
  // Raise one slot at a time.
  for (int slot = 0; slot < 4; ++slot) {
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k)
          for (int l = 0; l < 4; ++l) {
            double s = 0.0;
            for (int m = 0; m < 4; ++m) {
              switch (slot) {
                case 0: s += gi[i][m] * a[m][j][k][l]; break;
                case 1: s += gi[j][m] * a[i][m][k][l]; break;
                case 2: s += gi[k][m] * a[i][j][m][l]; break;
                default: s += gi[l][m] * a[i][j][k][m]; break;
              }
            }
            b[i][j][k][l] = s;
          }
    a = b;
  }
  double n = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) n += t[i][j][k][l] * a[i][j][k][l];
  return n;
}

double tensor_norm2(const Mat4& t, const Mat4& gi) {
  const Mat4 a = gi * t * gi;
  double n = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) n += t[i][j] * a[i][j];
  return n;
}

namespace {

// |W|^2 = 4 tr(Gbi W Gbi W^T) for a pair-antisymmetric 4-tensor stored as a bivector matrix.
double bivector_norm2(const Mat6& w, const Mat6& gbi) {
  const Mat6 a = gbi * w * gbi;
  double n = 0.0;
  for (int I = 0; I < 6; ++I)
    for (int K = 0; K < 6; ++K) n += a[I][K] * w[I][K];
  return 4.0 * n;
}

std::pair<double, double> weyl_split_by_projection(const Tensor4& weyl, const Mat4& g, const Mat4& gi,
                                                   int orientation) {
  const Mat6 w = to_bivector(weyl);
  const Mat6 star = hodge_star(g, orientation);
  const Mat6 id = Mat6::identity();
  const Mat6 pp = 0.5 * (id + star);
  const Mat6 pm = 0.5 * (id - star);
  const Mat6 gbi = bivector_metric(gi);
  const Mat6 wp = transpose(pp) * w * pp;
  const Mat6 wm = transpose(pm) * w * pm;
  return {bivector_norm2(wp, gbi), bivector_norm2(wm, gbi)};
}

}  // namespace

CurvaturePackage curvature(const MetricJet& mj, int orientation) {
  CurvaturePackage out;
  const Mat4& g = mj.g;
  const Mat4 gi = checked_inverse(g);
  std::array<Mat4, 4> dgi;
  for (int k = 0; k < 4; ++k) dgi[k] = -1.0 * (gi * mj.dg[k] * gi);

  const Tensor3 G = christoffels(mj);
  out.christoffel = G;

  // dG[m][k][i][j] = d_m G^k_ij
  Tensor4 dG{};
  for (int m = 0; m < 4; ++m)
    for (int k = 0; k < 4; ++k)
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
          double s = 0.0;
          for (int l = 0; l < 4; ++l) {
            const double first = mj.dg[i][l][j] + mj.dg[j][l][i] - mj.dg[l][i][j];
            const double second = mj.ddg[m][i][l][j] + mj.ddg[m][j][l][i] - mj.ddg[m][l][i][j];
            s += dgi[m][k][l] * first + gi[k][l] * second;
          }
          dG[m][k][i][j] = 0.5 * s;
        }

  // Rup[l][i][j][k] = R^l_ijk
  Tensor4 Rup{};
  for (int l = 0; l < 4; ++l)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) {
          double s = dG[i][l][j][k] - dG[j][l][i][k];
          for (int m = 0; m < 4; ++m) s += G[l][i][m] * G[m][j][k] - G[l][j][m] * G[m][i][k];
          Rup[l][i][j][k] = s;
        }

  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
          double s = 0.0;
          for (int m = 0; m < 4; ++m) s += g[l][m] * Rup[m][i][j][k];
          out.riemann[i][j][k][l] = s;
        }

  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k) {
      double s = 0.0;
      for (int i = 0; i < 4; ++i) s += Rup[i][i][j][k];
      out.ricci[j][k] = s;
    }
  double S = 0.0;
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k) S += gi[j][k] * out.ricci[j][k];
  out.scalar = S;
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k) out.einstein[j][k] = out.ricci[j][k] - 0.25 * S * g[j][k];

  const Mat4& Ric = out.ricci;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
          const double kn = Ric[j][k] * g[i][l] - Ric[i][k] * g[j][l] + g[j][k] * Ric[i][l] - g[i][k] * Ric[j][l];
          const double gg = g[j][k] * g[i][l] - g[i][k] * g[j][l];
          out.weyl[i][j][k][l] = out.riemann[i][j][k][l] - 0.5 * kn + (S / 6.0) * gg;
        }

  out.weyl_norm2 = tensor_norm2(out.weyl, gi);
  out.ricci_norm2 = tensor_norm2(out.ricci, gi);
  out.einstein_norm2 = tensor_norm2(out.einstein, gi);
  if (!is_lorentz(g)) {
    const auto [wp, wm] = weyl_split_by_projection(out.weyl, g, gi, orientation);
    out.weyl_plus2 = wp;
    out.weyl_minus2 = wm;
    out.has_weyl_split = true;
  }
  return out;
}

CurvaturePackage curvature(const MetricField& g, const Point& p) { return curvature(metric_jet(g, p), g.orientation); }

CurvatureScalars curvature_scalars(const MetricJet& mj, int orientation) {
  const Mat4& g = mj.g;
  const double dg0 = det(g);
  if (std::abs(dg0) <= kSingularDet) throw Error(ErrorKind::SingularMetric, "|det g| <= 1e-10");
  const Mat4 gi = inverse(g);

  // First-kind symbols c1[a][b][c] = G_{a,bc} and second kind c2[e][b][c].
  double c1[4][4][4], c2[4][4][4];
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = b; c < 4; ++c) {
        const double v = 0.5 * (mj.dg[b][a][c] + mj.dg[c][a][b] - mj.dg[a][b][c]);
        c1[a][b][c] = c1[a][c][b] = v;
      }
  for (int e = 0; e < 4; ++e)
    for (int b = 0; b < 4; ++b)
      for (int c = b; c < 4; ++c) {
        double s = 0.0;
        for (int a = 0; a < 4; ++a) s += gi[e][a] * c1[a][b][c];
        c2[e][b][c] = c2[e][c][b] = s;
      }

  // R_ijkd = 1/2 (d_i d_k g_dj - d_i d_d g_jk - d_j d_k g_di + d_j d_d g_ik)
  //          - G_{l,id} G^l_jk + G_{l,jd} G^l_ik
  auto riem = [&](int i, int j, int k, int d) {
    double s = 0.5 * (mj.ddg[i][k][d][j] - mj.ddg[i][d][j][k] - mj.ddg[j][k][d][i] + mj.ddg[j][d][i][k]);
    for (int l = 0; l < 4; ++l) s += c1[l][j][d] * c2[l][i][k] - c1[l][i][d] * c2[l][j][k];
    return s;
  };
  Mat6 R;
  for (int I = 0; I < 6; ++I)
    for (int K = I; K < 6; ++K) R[I][K] = R[K][I] = riem(kPairI[I], kPairJ[I], kPairI[K], kPairJ[K]);

  // Full R_ijkd from the bivector matrix through a constant slot table.
  static constexpr auto kSlots = [] {
    std::array<PairSlot, 16> t{};
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) t[a * 4 + b] = pair_slot(a, b);
    return t;
  }();
  Mat4 Ric;
  for (int j = 0; j < 4; ++j)
    for (int k = j; k < 4; ++k) {
      double s = 0.0;
      for (int i = 0; i < 4; ++i) {
        const PairSlot a = kSlots[i * 4 + j];
        if (a.index < 0) continue;
        for (int d = 0; d < 4; ++d) {
          const PairSlot b = kSlots[k * 4 + d];
          if (b.index < 0) continue;
          s += gi[i][d] * a.sign * b.sign * R[a.index][b.index];
        }
      }
      Ric[j][k] = Ric[k][j] = s;
    }
  double S = 0.0;
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k) S += gi[j][k] * Ric[j][k];

  const Mat6 gb = bivector_metric(g);
  Mat6 W;
  for (int I = 0; I < 6; ++I)
    for (int K = 0; K < 6; ++K) {
      const int i = kPairI[I], j = kPairJ[I], k = kPairI[K], l = kPairJ[K];
      const double kn = Ric[i][k] * g[j][l] + g[i][k] * Ric[j][l] - Ric[i][l] * g[j][k] - g[i][l] * Ric[j][k];
      W[I][K] = R[I][K] + 0.5 * kn - (S / 6.0) * gb[I][K];
    }

  // Eps has one entry per row: 01<->23, 02<->13 (sign -1), 03<->12.
  static constexpr int kDual[6] = {5, 4, 3, 2, 1, 0};
  static constexpr double kDualSign[6] = {1, -1, 1, 1, -1, 1};
  const double vs = orientation / std::sqrt(std::abs(dg0));
  Mat6 star;
  for (int I = 0; I < 6; ++I)
    for (int K = 0; K < 6; ++K) star[I][K] = vs * kDualSign[I] * gb[kDual[I]][K];

  const Mat6 gbi = bivector_metric(gi);
  const Mat6 op = gbi * W;
  const Mat6 q = op * star;
  double tr2 = 0.0, trs = 0.0;
  for (int I = 0; I < 6; ++I)
    for (int K = 0; K < 6; ++K) {
      tr2 += op[I][K] * op[K][I];
      trs += op[I][K] * q[K][I];
    }

  CurvatureScalars out;
  out.scalar = S;
  out.ricci_norm2 = tensor_norm2(Ric, gi);
  out.einstein_norm2 = out.ricci_norm2 - 0.25 * S * S;
  out.weyl_norm2 = 4.0 * tr2;
  out.weyl_plus2 = 2.0 * (tr2 + trs);
  out.weyl_minus2 = 2.0 * (tr2 - trs);
  out.volume_density = std::sqrt(std::abs(dg0));
  return out;
}

std::pair<double, double> weyl_pm_norms(const MetricField& g, const Point& p) {
  const MetricJet mj = metric_jet(g, p);
  if (g.signature == Signature::Lorentz || is_lorentz(mj.g))
    throw Error(ErrorKind::UnsupportedSignature, "Weyl split is undefined for Lorentz signature");
  const CurvaturePackage c = curvature(mj, g.orientation);
  return {c.weyl_plus2, c.weyl_minus2};
}

Tensor3 covariant_derivative_endomorphism(const MetricField& g, const StructureField& j, const Point& p) {
  const Tensor3 G = christoffels(g, p);
  const Matrix4<Jet2> J = j.jets(p);
  Tensor3 out{};
  for (int l = 0; l < 4; ++l)
    for (int n = 0; n < 4; ++n)
      for (int m = 0; m < 4; ++m) {
        double s = J[n][m].grad[l];
        for (int k = 0; k < 4; ++k) s += -J[n][k].value * G[k][m][l] + J[k][m].value * G[n][k][l];
        out[l][n][m] = s;
      }
  return out;
}

Tensor3 nijenhuis(const StructureField& j, const Point& p) {
  const Matrix4<Jet2> J = j.jets(p);
  Tensor3 N{};
  for (int k = 0; k < 4; ++k)
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        double s = 0.0;
        for (int l = 0; l < 4; ++l) {
          s += J[l][a].value * J[k][b].grad[l] - J[l][b].value * J[k][a].grad[l];
          s -= J[k][l].value * (J[l][b].grad[a] - J[l][a].grad[b]);
        }
        N[k][a][b] = s;
      }
  return N;
}

Mat4 pullback_metric(const SmoothMap& phi, const MetricField& g, const Point& p) {
  if (!phi.source.contains(p)) throw Error(ErrorKind::TargetOutsideChart, "point outside source chart");
  const JetPoint y = phi.program(seed_point(p));
  Point q;
  for (int a = 0; a < 4; ++a) q[a] = y[a].value;
  if (!phi.target.contains(q) || !g.chart.contains(q))
    throw Error(ErrorKind::TargetOutsideChart, "image point outside target chart '" + g.chart.name + "'");
  const Mat4 gv = g.value(q);
  Mat4 Jm;
  for (int a = 0; a < 4; ++a)
    for (int m = 0; m < 4; ++m) Jm[a][m] = y[a].grad[m];
  return transpose(Jm) * gv * Jm;
}

std::pair<int, int> signature_counts(const Mat4& g) {
  Eigen::Matrix4d m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = 0.5 * (g[i][j] + g[j][i]);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(m, Eigen::EigenvaluesOnly);
  const auto ev = es.eigenvalues();
  const double scale = ev.cwiseAbs().maxCoeff();
  int pos = 0, neg = 0;
  for (int i = 0; i < 4; ++i) {
    if (ev(i) > 1e-12 * scale) ++pos;
    else if (ev(i) < -1e-12 * scale) ++neg;
  }
  return {pos, neg};
}

bool matches(Signature s, std::pair<int, int> c) {
  switch (s) {
    case Signature::Riemannian: return c.first == 4 && c.second == 0;
    case Signature::Neutral: return c.first == 2 && c.second == 2;
    case Signature::Lorentz: return c.first == 3 && c.second == 1;
    case Signature::NegativeDefinite: return c.first == 0 && c.second == 4;
  }
  return false;
}

double max_abs(const Tensor3& t) {
  double r = 0.0;
  for (const auto& a : t)
    for (const auto& b : a)
      for (double x : b) r = std::max(r, std::abs(x));
  return r;
}

double max_abs(const Tensor4& t) {
  double r = 0.0;
  for (const auto& a : t) r = std::max(r, max_abs(a));
  return r;
}

MatrixProgram constant_matrix(const Mat4& m) {
  return [m](const JetPoint&) {
    Matrix4<Jet2> r;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) r[i][j] = Jet2(m[i][j]);
    return r;
  };
}

MatrixProgram diagonal_metric(const std::array<ScalarProgram, 4>& d) {
  return [d](const JetPoint& x) {
    Matrix4<Jet2> r;
    for (int i = 0; i < 4; ++i) r[i][i] = d[i](x);
    return r;
  };
}

}  // namespace paraplex
