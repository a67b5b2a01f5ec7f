#pragma once

// Parallel-structure PDE systems on conformally flat neutral charts
// g = Omega^2 (dZ1 dZ1bar - dZ2 dZ2bar), chart (Re Z1, Im Z1, Re Z2, Im Z2).

#include <complex>
#include <string>
#include <vector>

#include "paraplex/complex_jet.hpp"
#include "paraplex/structures.hpp"

namespace paraplex {

constexpr double kConformalFloor = 1e-8;
constexpr double kStructureFloor = 1e-8;

struct ConformalFactor {
  std::string name;
  ScalarProgram omega;
};

// (1 + |Z1 - Z2|^2 / 4)^(-1/2).
ConformalFactor linespace_omega();
ConformalFactor constant_omega(double c = 1.0);

MetricField conformal_metric(const ConformalFactor& f);

// Per-equation residuals (lhs - rhs) and their max modulus.
struct SystemResidual {
  std::vector<std::complex<double>> equations;
  double max_modulus = 0.0;
};

// |(d1 d1bar - d2 d2bar) Omega|.
double ultrahyperbolic_residual(const ConformalFactor& f, const Point& p);

enum class NullFamily { Alpha, Beta };
std::string_view to_string(NullFamily f) noexcept;

// +1 eigenplane spanned by d1 + e^{i phi1} d2 (alpha) or d1 + e^{i phi1} d2bar (beta), -1 by phi2.
// CoincidentPlanes where |e^{i phi1} - e^{i phi2}| <= 1e-8.
StructureField anti_isometric_structure(NullFamily family, const ScalarProgram& phi1, const ScalarProgram& phi2);

// Four equations per angle, ordered (phi1 first, phi1 second, phi2 first, phi2 second).
SystemResidual alpha_parallel_residual(const ConformalFactor& f, const ScalarProgram& phi1, const ScalarProgram& phi2,
                                       const Point& p);
SystemResidual beta_parallel_residual(const ConformalFactor& f, const ScalarProgram& phi1, const ScalarProgram& phi2,
                                      const Point& p);

struct GraphInvariants {
  double delta1 = 0.0;  // |alpha|^2 - |beta|^2
  double delta2 = 0.0;  // |alpha|^2 (1 - 1/delta1)^2 - |beta|^2 (1 + 1/delta1)^2
};
// DegenerateStructure when |delta1| or |delta2| <= 1e-8.
GraphInvariants graph_invariants(std::complex<double> alpha, std::complex<double> beta);

// +1 eigenplane spanned by d1 + alpha d2 + conj(beta) d2bar, -1 eigenplane its orthogonal complement
// spanned by d1 + (alpha/delta1) d2 - (conj(beta)/delta1) d2bar.
StructureField isometric_graph_structure(const ComplexProgram& alpha, const ComplexProgram& beta);

// The eight equations of the isometric system in (alpha, beta).
SystemResidual isometric_parallel_residual(const ConformalFactor& f, const ComplexProgram& alpha,
                                           const ComplexProgram& beta, const Point& p);

// Printed: the last equation with (a^2 - b^2 + 1); Corrected: (a^2 - b^2 - 1), which is what the
// isometric system implies.
enum class PolarForm { Printed, Corrected };

// alpha = a e^{i theta}, beta = b e^{i phi}. PolarDegeneracy when a or b <= 1e-8.
SystemResidual polar_parallel_residual(const ConformalFactor& f, const ScalarProgram& a, const ScalarProgram& b,
                                       const ScalarProgram& theta, const ScalarProgram& phi, const Point& p,
                                       PolarForm form = PolarForm::Corrected);

// The polar residuals predicted from the isometric residuals r1..r8 by
// P(2k-1)/P(k+4) = e^{-i t} r +- e^{i t} r' with t = theta for (alpha, alpha bar) pairs and phi for
// (beta, beta bar) pairs.
std::vector<std::complex<double>> polar_from_isometric(const std::vector<std::complex<double>>& r, double theta,
                                                       double phi);

// Fixtures: affine data through p whose first derivatives at p make j parallel at p, fitted by linear
// least squares on nabla j. The residual of the fit is returned in `fit_residual`.
struct PointwiseAngles {
  ScalarProgram phi1, phi2;
  double fit_residual = 0.0;
};
PointwiseAngles pointwise_parallel_angles(NullFamily family, const ConformalFactor& f, double phi1, double phi2,
                                          const Point& p);

struct PointwiseGraph {
  ComplexProgram alpha, beta;
  double fit_residual = 0.0;
};
PointwiseGraph pointwise_parallel_graph(const ConformalFactor& f, std::complex<double> alpha,
                                        std::complex<double> beta, const Point& p);

// Affine helpers: value + sum_k slope[k] (x_k - p_k).
ScalarProgram affine_scalar(double value, const Point& slope, const Point& p);
ComplexProgram affine_complex(std::complex<double> value, const std::array<std::complex<double>, 4>& slope,
                              const Point& p);

}  // namespace paraplex
