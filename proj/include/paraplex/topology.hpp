#pragma once

// Euler characteristic and signature: closed-form arithmetic for named manifolds and product-chart
// quadrature of the Chern-Gauss-Bonnet and signature integrands.

#include <functional>
#include <string>
#include <vector>

#include "paraplex/jet.hpp"

namespace paraplex {

enum class SurfaceKind { Sphere, Torus };

// A closed surface on one chart: Sphere uses (theta, phi) in (0, pi) x [0, 2 pi),
// Torus uses (u, v) in [0, 2 pi)^2.
struct ClosedSurface {
  std::string name;
  SurfaceKind kind = SurfaceKind::Sphere;
  // (E, F, G) of E du^2 + 2F du dv + G dv^2.
  std::function<std::array<Jet2, 3>(const Jet2& u, const Jet2& v)> metric;
  double area = 0.0;
};

ClosedSurface round_sphere(double radius = 1.0);
ClosedSurface flat_torus(double a = 1.0, double b = 1.0);
// (1 + c cos^2 theta) times the unit round metric; area 2 pi (2 + 2c/3).
ClosedSurface squashed_sphere(double c);

struct FactorNode {
  double u = 0.0, v = 0.0;
  double weight = 0.0;  // chart measure du dv
};

struct QuadratureGrid {
  ClosedSurface s1, s2;
  int eps = 1;  // g1 + eps g2
  int n = 0;    // nodes per axis per factor
  std::vector<FactorNode> nodes1, nodes2;
};

// Gauss-Legendre in cos(theta) and equispaced longitude on spheres, equispaced on tori.
// GridTooCoarse when n < 4.
QuadratureGrid make_grid(const ClosedSurface& s1, const ClosedSurface& s2, int eps, int n);

// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n);

struct IntegralEstimate {
  double chi = 0.0;
  double tau = 0.0;
  double volume = 0.0;
  double volume_expected = 0.0;
  long long nodes = 0;
};

// chi = (eps / 32 pi^2) Int |W|^2 - 2|Ric|^2 + (2/3) S^2, eps = -1 for neutral products;
// tau = (1 / 48 pi^2) Int |W+|^2 - |W-|^2. GridTooCoarse when the quadrature volume misses the
// analytic one by more than 1e-6 relative.
// Parallel over first-factor nodes; partial sums are combined pairwise in a fixed order, so the result
// does not depend on the thread count.
IntegralEstimate integrate(const QuadratureGrid& grid);
// Plain nested loops, one running sum.
IntegralEstimate integrate_serial(const QuadratureGrid& grid);

double cgb_estimate(const QuadratureGrid& grid);
double signature_estimate(const QuadratureGrid& grid);

struct ConvergenceRow {
  int n = 0;
  double chi = 0.0, tau = 0.0;
  double chi_error = 0.0, tau_error = 0.0;
};
std::vector<ConvergenceRow> convergence_table(const ClosedSurface& s1, const ClosedSurface& s2, int eps,
                                              const std::vector<int>& sizes, double chi_exact, double tau_exact);

struct TopologicalProfile {
  std::string name;
  int chi = 0;
  int tau = 0;
  bool einstein_known = false;  // an Einstein metric is known to exist (cited results)
};

TopologicalProfile k3_profile();
TopologicalProfile s2xs2_profile();
TopologicalProfile cp2_blowup_profile(int k);  // CP^2 # k CP^2bar

struct ObstructionReport {
  TopologicalProfile profile;
  bool hitchin_thorpe = false;        // chi >= 3 |tau| / 2
  bool neutral_congruences = false;   // chi + tau = chi - tau = 0 mod 4
  bool tau_vanishes = false;          // necessary for a parallel isometric structure on an Einstein metric
  // Einstein metric known, neutral congruences hold and tau != 0: an isometric almost paracomplex
  // structure exists but cannot be parallel.
  bool parallel_excluded = false;
};

ObstructionReport obstruction_report(const TopologicalProfile& p);

}  // namespace paraplex
