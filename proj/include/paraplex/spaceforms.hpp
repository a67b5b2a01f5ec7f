#pragma once

// Spaces of oriented geodesics of the quadrics S^3_p in R^4_p, in the bivector model. Points are
// oriented planes x ^ y with <x,x> = 1, <y,y> = epsilon; the chart is an affine chart around a
// coordinate plane of the right causal type.

#include <string>

#include "paraplex/structures.hpp"

namespace paraplex {

struct AmbientSignature {
  int p = 0;        // number of negative directions in <.,.>_p
  int epsilon = 1;  // <y, y>_p

  std::string name() const;  // e.g. "L+(S^3_0)"
  bool operator==(const AmbientSignature&) const = default;
};

// The six rows (0,+), (1,+), (1,-), (2,+), (2,-), (3,-).
const std::vector<AmbientSignature>& admissible_signatures();
bool admissible(const AmbientSignature& s);
Vec4 ambient_diagonal(int p);  // (-1,..,-1, 1,..,1)

using Bivector = std::array<double, 6>;  // e12, e13, e14, e23, e24, e34

struct OrientedPlanePoint {
  Point u{};
  Vec4 x{};
  Vec4 y{};
  Bivector bivector() const;
};

// Columns e_a + u0 e_r + u2 e_s and e_b + u1 e_r + u3 e_s, then signed Gram-Schmidt. (a, b) is the
// first coordinate pair of the required causal type, (r, s) the remaining indices.
OrientedPlanePoint chart_to_plane(const AmbientSignature& s, const Point& u);
std::array<int, 4> chart_axes(const AmbientSignature& s);  // {a, b, r, s}

// <<B, B>> on the Pluecker quadric: B12 B34 - B13 B24 + B14 B23.
double pluecker_quadric(const Bivector& b);

MetricField metric_Gp(const AmbientSignature& s);

struct SpaceformStructures {
  StructureField j, jp, jstar;
};
// J X is fixed by det(x, y, X, J X) = <X, X>_p on (x ^ y)^perp; J' = y ^ X -+ x ^ Y; J* = -J' J.
SpaceformStructures structures_JJpJstar(const AmbientSignature& s);

// Hodge star of Lambda^2(R^4_p) restricted to the tangent space, in chart coordinates, and the
// residual of the restriction (how far * leaves the tangent space).
struct TangentHodge {
  Mat4 star{};
  double leak = 0.0;
};
TangentHodge hodge_on_tangent(const AmbientSignature& s, const Point& u);

// G_p(J* ., .) on rows where J* is isometric; NotIsometric otherwise.
MetricField metric_Gp_prime(const AmbientSignature& s, const std::vector<Point>& probes);

struct Table1Entry {
  int square = 1;  // +1 para, -1 complex
  StructureKind kind = StructureKind::Neither;
  bool operator==(const Table1Entry&) const = default;
};

struct Table1Row {
  AmbientSignature sig;
  std::array<Table1Entry, 3> expected{};  // J, J', J*
  std::array<Table1Entry, 3> computed{};
  bool match = false;
};

std::array<Table1Entry, 3> table1_expected(const AmbientSignature& s);
Table1Row table1_verify(const AmbientSignature& s, const Point& u);
std::string to_string(const Table1Entry& e);  // "complex/isometric", "para/anti"

}  // namespace paraplex
