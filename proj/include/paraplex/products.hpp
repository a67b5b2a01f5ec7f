#pragma once

// Products of Riemannian surfaces with G_eps = g1 + eps g2 and the structures J1 = j1 + (-j2),
// J2 = j1 + j2, J = J1 J2.

#include <functional>
#include <string>

#include "paraplex/structures.hpp"

namespace paraplex {

struct SurfaceFactor {
  std::string name;
  // (E, F, G) of E du^2 + 2F du dv + G dv^2.
  std::function<std::array<Jet2, 3>(const Jet2& u, const Jet2& v)> metric;
  // Known Gauss curvature, empty when not known in closed form.
  std::function<double(double, double)> kappa;
  std::function<bool(double, double)> valid;
};

// 4 (1 + k (u^2 + v^2))^-2 (du^2 + dv^2); curvature k, disc r^2 < 1/|k| when k < 0.
SurfaceFactor constant_curvature_factor(double k);
// e^{2 lambda} (du^2 + dv^2) with curvature -e^{-2 lambda} (lambda_uu + lambda_vv) from jets.
SurfaceFactor conformal_factor(const std::string& name, std::function<Jet2(const Jet2&, const Jet2&)> lambda);

// Gauss curvature of a factor at (u, v), computed by the tensor engine on factor x flat plane.
double gauss_curvature(const SurfaceFactor& f, double u, double v);

struct ProductGeometry {
  SurfaceFactor s1, s2;
  int eps = 1;
  MetricField g;
  StructureField j1, j2, j;
};

ProductGeometry build_product(const SurfaceFactor& s1, const SurfaceFactor& s2, int eps);

struct ClosedFormCurvature {
  double scalar = 0.0;
  double ricci_norm2 = 0.0;
  double einstein_norm2 = 0.0;
  double weyl_norm2 = 0.0;        // full contraction: (4/3)(k1 + eps k2)^2
  double weyl_norm2_paper = 0.0;  // (2/3)(k1 + eps k2)^2 as printed
};

ClosedFormCurvature closed_form_curvature(double k1, double k2, int eps);

struct CorollaryReport {
  double k1 = 0.0, k2 = 0.0;
  int eps = 1;
  bool curvatures_related = false;  // k1 = -eps k2
  bool conformally_scalar_flat = false;  // G_eps
  bool opposite_einstein = false;        // G_-eps
  double related_residual = 0.0;
  double weyl_residual = 0.0;
  double scalar_residual = 0.0;
  double einstein_residual = 0.0;
  bool agree = false;
};

// Constant-curvature factors; residuals are maxima over the points.
CorollaryReport corollary_check(double k1, double k2, int eps, const std::vector<Point>& points);

}  // namespace paraplex
