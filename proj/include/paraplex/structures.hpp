#pragma once

// Almost (para)complex structures: eigenplanes, classification against a metric, associated
// metrics and forms, parallelism.

#include <vector>

#include "paraplex/tensor.hpp"

namespace paraplex {

constexpr double kAlgebraicTol = 1e-8;

struct EigenplanePair {
  std::array<Vec4, 2> plus{};
  std::array<Vec4, 2> minus{};
};

enum class StructureKind { Isometric, AntiIsometric, Neither };
enum class EigenplaneGeometry { Orthogonal, TotallyNull, Generic, NotApplicable };

std::string_view to_string(StructureKind k) noexcept;
std::string_view to_string(EigenplaneGeometry k) noexcept;

struct StructureClassification {
  int square = 1;  // +1 paracomplex, -1 complex
  StructureKind kind = StructureKind::Neither;
  EigenplaneGeometry geometry = EigenplaneGeometry::NotApplicable;
  double cross_residual = 0.0;  // max |g(P+, P-)| over basis pairs
  double null_residual = 0.0;   // max |g| restricted to P+ and to P-
  double isometry_residual = 0.0;      // max |g(j., j.) - g|
  double anti_isometry_residual = 0.0;  // max |g(j., j.) + g|
};

// +1 or -1 when j^2 = +-id to tolerance, otherwise NotParacomplex.
int square_sign(const Mat4& j, double tol = kAlgebraicTol);

EigenplanePair eigenplanes(const Mat4& j);

// Paracomplex j: eigenplane route, cross-checked against the direct residuals.
// Complex j: direct residuals only.
StructureClassification classify(const Mat4& g, const Mat4& j);

// g'_{mu nu} = g_{mu a} j^a_nu. Checked at the probe points: j must be g-isometric and g' symmetric.
MetricField associated_metric(const MetricField& g, const StructureField& j, const std::vector<Point>& probes);
// omega(X, Y) = g(jX, Y), i.e. omega_{mu nu} = j^a_mu g_{a nu}; no checks.
MatrixProgram associated_form(const MetricField& g, const StructureField& j);
// (d omega)_abc = d_a omega_bc + d_b omega_ca + d_c omega_ab.
Tensor3 exterior_derivative(const MatrixProgram& omega, const Point& p);

// Max over points of the largest |nabla_l j^n_m| component.
double parallel_residual(const MetricField& g, const StructureField& j, const std::vector<Point>& points);

StructureField product_structure(const StructureField& a, const StructureField& b);

}  // namespace paraplex
