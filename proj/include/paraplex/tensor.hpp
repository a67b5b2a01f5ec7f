#pragma once

// Chart-based tensor calculus on 4-dimensional (pseudo-)Riemannian charts.
//
// Conventions: g[i][j] = g_ij, endomorphisms j[a][b] = j^a_b.
// R^l_ijk = d_i G^l_jk - d_j G^l_ik + G^l_im G^m_jk - G^l_jm G^m_ik, R_ijkl = g_lm R^m_ijk,
// Ric_jk = R^i_ijk. The unit sphere has positive scalar curvature.
// Bivector basis order: 01, 02, 03, 12, 13, 23.

#include <functional>
#include <string>
#include <utility>

#include "paraplex/expr.hpp"
#include "paraplex/matrix.hpp"

namespace paraplex {

enum class Signature { Riemannian, Neutral, Lorentz, NegativeDefinite };

std::string_view to_string(Signature s) noexcept;
Signature signature_from_string(std::string_view s);

struct Chart {
  std::string name = "chart";
  ChartBindings bindings = ChartBindings::real({"x0", "x1", "x2", "x3"});
  std::function<bool(const Point&)> valid;

  bool contains(const Point& p) const { return !valid || valid(p); }
};

using MatrixProgram = std::function<Matrix4<Jet2>(const JetPoint&)>;

struct MetricField {
  std::string name;
  Chart chart;
  MatrixProgram program;
  Signature signature = Signature::Riemannian;
  int orientation = 1;

  // Validated jet evaluation: chart membership, symmetry, |det| > 1e-10.
  Matrix4<Jet2> jets(const Point& p) const;
  Mat4 value(const Point& p) const;
};

struct StructureField {
  std::string name;
  Chart chart;
  MatrixProgram program;
  int intended_square = 1;

  Matrix4<Jet2> jets(const Point& p) const;
  Mat4 value(const Point& p) const;
};

using MapProgram = std::function<JetPoint(const JetPoint&)>;

struct SmoothMap {
  std::string name;
  Chart source;
  Chart target;
  MapProgram program;
};

using Tensor3 = std::array<std::array<std::array<double, 4>, 4>, 4>;
using Tensor4 = std::array<Tensor3, 4>;

struct MetricJet {
  Mat4 g;
  std::array<Mat4, 4> dg;                   // dg[k][i][j] = d_k g_ij
  std::array<std::array<Mat4, 4>, 4> ddg;   // ddg[k][l][i][j] = d_k d_l g_ij
};

MetricJet metric_jet(const Matrix4<Jet2>& g);
MetricJet metric_jet(const MetricField& g, const Point& p);

struct CurvaturePackage {
  Tensor3 christoffel{};  // christoffel[k][i][j] = G^k_ij
  Tensor4 riemann{};      // riemann[i][j][k][l] = R_ijkl
  Mat4 ricci{};
  double scalar = 0.0;
  Mat4 einstein{};
  Tensor4 weyl{};
  double weyl_norm2 = 0.0;
  double weyl_plus2 = 0.0;
  double weyl_minus2 = 0.0;
  bool has_weyl_split = false;
  double ricci_norm2 = 0.0;
  double einstein_norm2 = 0.0;
};

// Scalar invariants only, via the lowered-index bivector formulas. Used by quadrature.
struct CurvatureScalars {
  double scalar = 0.0;
  double ricci_norm2 = 0.0;
  double einstein_norm2 = 0.0;
  double weyl_norm2 = 0.0;
  double weyl_plus2 = 0.0;
  double weyl_minus2 = 0.0;
  double volume_density = 0.0;  // sqrt|det g|
};

Tensor3 christoffels(const MetricField& g, const Point& p);
Tensor3 christoffels(const MetricJet& mj);
CurvaturePackage curvature(const MetricField& g, const Point& p);
CurvaturePackage curvature(const MetricJet& mj, int orientation);
CurvatureScalars curvature_scalars(const MetricJet& mj, int orientation);

// Lorentz detection from det g < 0 on a nondegenerate metric.
bool is_lorentz(const Mat4& g);

Mat6 bivector_metric(const Mat4& g);  // Gb_IK = g_ik g_jl - g_il g_jk
Mat6 bivector_volume();               // Eps_IK = eps_ijkl
Mat6 hodge_star(const Mat4& g, int orientation);
Mat6 hodge_star(const MetricField& g, const Point& p);
Mat6 to_bivector(const Tensor4& t);  // T_IK = T_ijkl
double tensor_norm2(const Tensor4& t, const Mat4& ginv);
double tensor_norm2(const Mat4& t, const Mat4& ginv);
std::pair<double, double> weyl_pm_norms(const MetricField& g, const Point& p);

// out[l][n][m] = nabla_l j^n_m.
Tensor3 covariant_derivative_endomorphism(const MetricField& g, const StructureField& j, const Point& p);
// out[k][i][j] = N^k_ij.
Tensor3 nijenhuis(const StructureField& j, const Point& p);
Mat4 pullback_metric(const SmoothMap& phi, const MetricField& g, const Point& p);

// Eigenvalue sign counts (positive, negative) of a symmetric matrix.
std::pair<int, int> signature_counts(const Mat4& g);
bool matches(Signature s, std::pair<int, int> counts);

double max_abs(const Tensor3& t);
double max_abs(const Tensor4& t);

// Matrix-valued field helpers.
MatrixProgram constant_matrix(const Mat4& m);
MatrixProgram diagonal_metric(const std::array<ScalarProgram, 4>& d);

}  // namespace paraplex
