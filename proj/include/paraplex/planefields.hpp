#pragma once

// First-order invariants of definite 2-plane fields: adapted frames, connection coefficients in a
// double null complex frame, twist, divergence and shears, and the parallel test for the
// associated isometric paracomplex structure.

#include <complex>

#include "paraplex/structures.hpp"

namespace paraplex {

using JetVector = std::array<Jet2, 4>;
using Mat2Array = std::array<std::array<double, 2>, 2>;
// Two spanning vector fields of P, as differentiable programs.
using PlaneProgram = std::function<std::array<JetVector, 2>(const JetPoint&)>;

struct AdaptedFrame {
  std::array<Vec4, 2> e{};     // spans P
  std::array<Vec4, 2> ehat{};  // spans P^perp
  int sign = 1;                // g(e_a, e_a)
  int sign_hat = 1;            // g(ehat_a, ehat_a)
};

struct NPInvariants {
  std::complex<double> lambda, rho, sigma_plus, sigma_minus;
  std::complex<double> hat_lambda, hat_rho, hat_sigma_plus, hat_sigma_minus;
  double antisymmetry_residual = 0.0;  // max |Gamma_{mu nu alpha} + Gamma_{mu alpha nu}|

  double max_modulus() const;
};

// Normal-valued second fundamental form of P: a[k][a][b] = g(nabla_{e_a} e_b, ehat_k).
struct SecondFundamentalForm {
  std::array<Mat2Array, 2> a{};
  int sign_hat = 1;
  double asymmetry() const;
};

AdaptedFrame adapted_frame(const MetricField& g, const PlaneProgram& plane, const Point& p);
NPInvariants np_invariants(const MetricField& g, const PlaneProgram& plane, const Point& p);
SecondFundamentalForm second_fundamental_form(const MetricField& g, const PlaneProgram& plane, const Point& p);

// Leaf Gauss curvature in a flat ambient space: 1/2 |rho|^2 - |sigma+|^2 - |sigma-|^2.
double leaf_gauss_curvature(const NPInvariants& inv);
// |rho|^2 - |sigma+|^2 - |sigma-|^2 as printed.
double leaf_gauss_curvature_printed(const NPInvariants& inv);
// Gauss equation from the second fundamental form, flat ambient space.
double gauss_equation_curvature(const SecondFundamentalForm& sff, int sign);

// j = +1 on P, -1 on P^perp.
StructureField isometric_structure(const MetricField& g, const PlaneProgram& plane);

struct ParallelEquivalence {
  double max_invariant = 0.0;
  double parallel_residual = 0.0;
  bool invariants_vanish = false;
  bool parallel = false;
  bool agree = false;
};

ParallelEquivalence parallel_equivalence_check(const MetricField& g, const PlaneProgram& plane,
                                               const std::vector<Point>& points, double tol = 1e-8);

PlaneProgram constant_plane(const Vec4& a, const Vec4& b);

}  // namespace paraplex
