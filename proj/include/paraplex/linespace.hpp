#pragma once

// The space of oriented lines in R^3 on the chart (Re xi, Im xi, Re eta, Im eta).

#include <complex>

#include "paraplex/structures.hpp"

namespace paraplex {

using cplx = std::complex<double>;

struct LinePoint {
  cplx xi;
  cplx eta;

  Point chart() const { return {xi.real(), xi.imag(), eta.real(), eta.imag()}; }
  static LinePoint from_chart(const Point& p) { return {{p[0], p[1]}, {p[2], p[3]}}; }
};

struct ConformalPoint {
  cplx z1;
  cplx z2;

  Point chart() const { return {z1.real(), z1.imag(), z2.real(), z2.imag()}; }
  static ConformalPoint from_chart(const Point& p) { return {{p[0], p[1]}, {p[2], p[3]}}; }
};

struct PlueckerSextet {
  std::array<double, 3> p{};
  std::array<double, 3> q{};
};

using CVec3 = std::array<cplx, 3>;

struct LineFrame {
  CVec3 e0{};
  CVec3 e_plus{};
  CVec3 e_minus{};
};

struct Pushforward {
  LineFrame frame;
  CVec3 d_xi{};   // DPhi(d/dxi) from jets
  CVec3 d_eta{};  // DPhi(d/deta) from jets
  cplx xi_plus;   // closed-form coefficient of e+ in DPhi(d/dxi)
  cplx xi_zero;   // closed-form coefficient of e0 in DPhi(d/dxi)
  cplx eta_plus;  // closed-form coefficient of e+ in DPhi(d/deta)
};

Chart line_chart();
Chart conformal_chart();  // (Re Z1, Im Z1, Re Z2, Im Z2)

MetricField metric_G();
// G(J2 ., .).
MetricField metric_G_tilde();
// (1 + |Z1 - Z2|^2 / 4)^-1 (dZ1 dZ1bar - dZ2 dZ2bar) on the conformal chart.
MetricField metric_conformal_flat_form();

struct LineStructures {
  StructureField j0, j1, j2;
};
LineStructures structures_J012();

// Closed 2-forms G(J0 ., .) and G(J1 ., .).
MatrixProgram omega0();
MatrixProgram omega1();

std::array<double, 3> phi(const LinePoint& line, double r);
Pushforward phi_pushforward(const LinePoint& line, double r);
LineFrame line_frame(cplx xi);

LinePoint reflect_line(const LinePoint& line);

ConformalPoint to_conformal(const LinePoint& line);
LinePoint from_conformal(const ConformalPoint& cp);

PlueckerSextet pluecker(const std::array<double, 3>& s, const std::array<double, 3>& t);
std::array<double, 4> conformal_from_pluecker(const PlueckerSextet& px);
// Oriented line from s towards t.
LinePoint line_through(const std::array<double, 3>& s, const std::array<double, 3>& t);

SmoothMap map_to_conformal();
SmoothMap map_from_conformal();
// (xi, eta) -> (xi, i eta).
SmoothMap map_rotate_eta();

// Omega = (1 + |Z1 - Z2|^2 / 4)^(-1/2) over jets on the conformal chart.
Jet2 linespace_conformal_factor(const JetPoint& z);

}  // namespace paraplex
