#include "paraplex/verify.hpp"

#include <chrono>
#include <cmath>
#include <set>

#include "paraplex/fd_oracle.hpp"
#include "paraplex/linespace.hpp"
#include "paraplex/pde.hpp"
#include "paraplex/planefields.hpp"
#include "paraplex/products.hpp"
#include "paraplex/sampling.hpp"
#include "paraplex/spaceforms.hpp"
#include "paraplex/topology.hpp"

#ifndef PARAPLEX_VERSION
#define PARAPLEX_VERSION "0.0.0"
#endif

namespace paraplex {

namespace {

using C = std::complex<double>;

std::vector<Point> sample(std::uint64_t seed, int n, double lo, double hi) {
  Sampler s(seed);
  std::vector<Point> out;
  for (int i = 0; i < n; ++i) out.push_back(s.point(lo, hi));
  return out;
}

LinePoint hemisphere_line(Sampler& s) {
  const double r = 0.9 * std::sqrt(s.unit());
  const double t = s.uniform(0, 2 * M_PI);
  return {std::polar(r, t), {s.uniform(-1, 1), s.uniform(-1, 1)}};
}

MetricField flat_metric(const Mat4& m, Signature sig) {
  MetricField g;
  g.name = "flat";
  g.program = constant_matrix(m);
  g.signature = sig;
  return g;
}


double max_over(const std::vector<Point>& pts, const std::function<double(const Point&)>& f) {
  double m = 0.0;
  for (const Point& p : pts) m = std::max(m, f(p));
  return m;
}

double min_over(const std::vector<Point>& pts, const std::function<double(const Point&)>& f) {
  double m = INFINITY;
  for (const Point& p : pts) m = std::min(m, f(p));
  return m;
}

// ---------------------------------------------------------------- linespace

void linespace_suite(CheckSet& cs, std::uint64_t seed) {
  const MetricField g = metric_G();
  const std::vector<Point> pts = sample(seed, 20, -0.8, 0.8);

  int neutral = 0;
  double scalar = 0, weyl = 0;
  double einstein = INFINITY;
  for (const Point& p : pts) {
    if (signature_counts(g.value(p)) == std::pair<int, int>{2, 2}) ++neutral;
    const CurvaturePackage c = curvature(g, p);
    scalar = std::max(scalar, std::abs(c.scalar));
    weyl = std::max({weyl, std::abs(c.weyl_norm2), max_abs(c.weyl)});
    einstein = std::min(einstein, max_abs(c.einstein));
  }
  const std::string gk = "G is neutral, conformally flat, scalar flat and not Einstein";
  cs.holds("metric.signature", "signature (2,2) at all 20 points", gk, neutral == 20);
  cs.at_most("metric.scalar", "max |S(G)|", gk, scalar, 1e-8);
  cs.at_most("metric.weyl", "max |W(G)|^2 and max Weyl component", gk, weyl, 1e-8);
  cs.at_least("metric.einstein", "min over points of max |Ein(G)| component", gk, einstein, 1e-3);

  const LineStructures s = structures_J012();
  double sq0 = 0, sq1 = 0, sq2 = 0, comm = 0;
  bool pattern = true;
  for (const Point& p : pts) {
    const Mat4 j0 = s.j0.value(p), j1 = s.j1.value(p), j2 = s.j2.value(p), gv = g.value(p);
    sq0 = std::max(sq0, max_abs(j0 * j0 + Mat4::identity()));
    sq1 = std::max(sq1, max_abs(j1 * j1 - Mat4::identity()));
    sq2 = std::max(sq2, max_abs(j2 * j2 + Mat4::identity()));
    comm = std::max({comm, max_abs(j0 * j1 - j1 * j0), max_abs(j0 * j2 - j2 * j0), max_abs(j1 * j2 - j2 * j1)});
    pattern = pattern && classify(gv, j0).kind == StructureKind::Isometric &&
              classify(gv, j1).kind == StructureKind::AntiIsometric &&
              classify(gv, j2).kind == StructureKind::AntiIsometric;
  }
  const std::string triple = "J0, J1, J2 are commuting complex, paracomplex and complex structures";
  cs.at_most("structures.j0_square", "max |J0^2 + id|", triple, sq0, 1e-10);
  cs.at_most("structures.j1_square", "max |J1^2 - id|", triple, sq1, 1e-10);
  cs.at_most("structures.j2_square", "max |J2^2 + id|", triple, sq2, 1e-10);
  cs.at_most("structures.commute", "max pairwise commutator", triple, comm, 1e-10);
  cs.holds("structures.isometry_pattern", "J0 isometric, J1 and J2 anti-isometric at all points",
           "J0 is a G-isometry, J1 and J2 are anti-isometries", pattern);

  const std::string par = "J0 is parallel, J1 and J2 are not";
  cs.at_most("structures.j0_parallel", "max |nabla J0|", par, parallel_residual(g, s.j0, pts), 1e-9);
  cs.at_least("structures.j1_not_parallel", "min over points of max |nabla J1|", par,
              min_over(pts, [&](const Point& p) { return parallel_residual(g, s.j1, {p}); }), 1e-3);
  cs.at_least("structures.j2_not_parallel", "min over points of max |nabla J2|", par,
              min_over(pts, [&](const Point& p) { return parallel_residual(g, s.j2, {p}); }), 1e-3);

  const std::string integ = "J0 is integrable and J1 is not";
  cs.at_most("structures.j0_integrable", "max |N(J0)|", integ,
             max_over(pts, [&](const Point& p) { return max_abs(nijenhuis(s.j0, p)); }), 1e-9);
  cs.at_least("structures.j1_not_integrable", "min over points of max |N(J1)|", integ,
              min_over(pts, [&](const Point& p) { return max_abs(nijenhuis(s.j1, p)); }), 1e-3);
  cs.at_most("structures.j2_integrable", "max |N(J2)|; the +i eigenbundle is involutive",
             "J2 = J0 J1 with c holomorphic in eta", max_over(pts, [&](const Point& p) {
               return max_abs(nijenhuis(s.j2, p));
             }),
             1e-9);

  const std::string closed = "Omega0 and Omega1 are closed";
  cs.at_most("structures.omega0_closed", "max |d Omega0|", closed,
             max_over(pts, [](const Point& p) { return max_abs(exterior_derivative(omega0(), p)); }), 1e-9);
  cs.at_most("structures.omega1_closed", "max |d Omega1|", closed,
             max_over(pts, [](const Point& p) { return max_abs(exterior_derivative(omega1(), p)); }), 1e-9);

  const MetricField gt = metric_G_tilde();
  const SmoothMap rot = map_rotate_eta();
  cs.at_most("structures.g_tilde_pullback", "max |(xi, eta) -> (xi, i eta) pullback of G-tilde - G|",
             "G-tilde is isometric to G",
             max_over(pts, [&](const Point& p) { return max_abs(pullback_metric(rot, gt, p) - g.value(p)); }), 1e-10);

  // Conformal coordinates.
  Sampler sm(seed + 1);
  double roundtrip = 0.0, pull = 0.0;
  const MetricField gc = metric_conformal_flat_form();
  const SmoothMap to = map_to_conformal();
  for (int n = 0; n < 100; ++n) {
    const LinePoint l = hemisphere_line(sm);
    const LinePoint back = from_conformal(to_conformal(l));
    roundtrip = std::max({roundtrip, std::abs(back.xi - l.xi), std::abs(back.eta - l.eta)});
    if (n < 20) pull = std::max(pull, max_abs(pullback_metric(to, gc, l.chart()) - 4.0 * g.value(l.chart())));
  }
  cs.at_most("conformal.roundtrip", "max roundtrip error over 100 hemisphere lines",
             "the conformal coordinates invert on the upper hemisphere", roundtrip, 1e-10);
  cs.at_most("conformal.pullback", "max |pullback of the flat neutral form - 4 G|",
             "G is conformal to the flat neutral form", pull, 1e-9);

  const std::array<double, 4> axis = conformal_from_pluecker(pluecker({0, 0, 0}, {0, 0, -1}));
  const ConformalPoint axis_h = to_conformal(line_through({0, 0, 0}, {0, 0, 1}));
  double origin = std::abs(axis_h.z1) + std::abs(axis_h.z2);
  for (double x : axis) origin = std::max(origin, std::abs(x));
  cs.at_most("conformal.reflection_fixed_point", "distance of the x3-axis from the conformal origin",
             "the line fixed by reflection in the origin is the conformal origin", origin, 1e-15);

  double route = 0.0;
  for (int n = 0; n < 50; ++n) {
    const LinePoint l = hemisphere_line(sm);
    const auto a = phi(l, sm.uniform(-2, 2));
    const auto b = phi(l, sm.uniform(3, 5));
    const auto x = conformal_from_pluecker(pluecker(a, b));
    const Point z = to_conformal(line_through(a, b)).chart();
    for (int i = 0; i < 4; ++i) route = std::max(route, std::abs(x[i] - z[i]));
  }
  cs.at_most("conformal.pluecker_route", "max |Pluecker route - holomorphic route| over 50 lines",
             "Pluecker coordinates give the conformal coordinates", route, 1e-9);
}

// ---------------------------------------------------------------- geodesic spaces

void geodesic_suite(CheckSet& cs, std::uint64_t seed) {
  Table t{"table1", {"space", "J", "J'", "J*", "match"}, {}};
  const std::vector<Point> pts = sample(seed, 5, -0.3, 0.3);
  for (const AmbientSignature& s : admissible_signatures()) {
    const std::string row = "p" + std::to_string(s.p) + (s.epsilon > 0 ? "plus" : "minus");
    bool match = true;
    Table1Row last;
    for (const Point& u : pts) {
      last = table1_verify(s, u);
      match = match && last.match;
    }
    t.rows.push_back({s.name(), to_string(last.computed[0]), to_string(last.computed[1]), to_string(last.computed[2]),
                      match});
    cs.holds(row + ".table", "squares and isometry types of J, J', J* at 5 points match the table",
             "structure table for " + s.name(), match);

    const MetricField g = metric_Gp(s);
    const SpaceformStructures st = structures_JJpJstar(s);
    const std::string par = "J, J' and J* are parallel";
    cs.at_most(row + ".j_parallel", "max |nabla J|", par, parallel_residual(g, st.j, pts), 1e-8);
    cs.at_most(row + ".jp_parallel", "max |nabla J'|", par, parallel_residual(g, st.jp, pts), 1e-8);
    cs.at_most(row + ".jstar_parallel", "max |nabla J*|", par, parallel_residual(g, st.jstar, pts), 1e-8);

    double hodge = 0.0, leak = 0.0, einstein = 0.0;
    for (const Point& u : pts) {
      const TangentHodge h = hodge_on_tangent(s, u);
      hodge = std::max(hodge, max_abs(h.star - st.jstar.value(u)));
      leak = std::max(leak, h.leak);
      einstein = std::max(einstein, max_abs(curvature(g, u).einstein));
    }
    cs.at_most(row + ".hodge", "max |*|_T - J*| (orientation det(x, y, X, JX) = <X, X>)",
               "the Hodge star restricts to J* on the tangent space", std::max(hodge, leak), 1e-9);
    cs.at_most(row + ".einstein", "max |Ein(G_p)| component", "G_p is Einstein", einstein, 1e-8);

    if (s.p % 2 == 0) {
      const MetricField gp = metric_Gp_prime(s, pts);
      int neutral = 0;
      double flat = 0.0;
      for (const Point& u : pts) {
        if (signature_counts(gp.value(u)) == std::pair<int, int>{2, 2}) ++neutral;
        const CurvaturePackage c = curvature(gp, u);
        flat = std::max({flat, std::abs(c.scalar), std::abs(c.weyl_norm2), max_abs(c.weyl)});
      }
      const std::string a = "G'_p is neutral, scalar flat and conformally flat";
      cs.holds(row + ".gprime_neutral", "G'_p has signature (2,2) at all points", a, neutral == int(pts.size()));
      cs.at_most(row + ".gprime_flat", "max of |S|, |W|^2 and Weyl components for G'_p", a, flat, 1e-8);
    }
  }
  cs.tables().push_back(std::move(t));
}

// ---------------------------------------------------------------- products

void products_suite(CheckSet& cs, std::uint64_t seed) {
  const std::vector<Point> pts = sample(seed, 5, -0.5, 0.5);
  Table t{"weyl_factor", {"k1", "k2", "eps", "weyl_norm2", "printed_over_measured"}, {}};
  double lo = INFINITY, hi = -INFINITY;
  for (auto [k1, k2] : std::vector<std::pair<double, double>>{{1, 1}, {1, 0}, {1, 2}, {1, -1}})
    for (int eps : {1, -1}) {
      const ProductGeometry pg = build_product(constant_curvature_factor(k1), constant_curvature_factor(k2), eps);
      const ClosedFormCurvature want = closed_form_curvature(k1, k2, eps);
      double ds = 0, dr = 0, de = 0, dw = 0, w = 0;
      for (const Point& p : pts) {
        const CurvaturePackage c = curvature(pg.g, p);
        ds = std::max(ds, std::abs(c.scalar - want.scalar));
        dr = std::max(dr, std::abs(c.ricci_norm2 - want.ricci_norm2));
        de = std::max(de, std::abs(c.einstein_norm2 - want.einstein_norm2));
        dw = std::max(dw, std::abs(c.weyl_norm2 - want.weyl_norm2));
        w = c.weyl_norm2;
      }
      char name[64];
      std::snprintf(name, sizeof name, "k%g_%g_%s", k1, k2, eps > 0 ? "plus" : "minus");
      const std::string id(name);
      cs.at_most(id + ".scalar", "max |S - 2(k1 + eps k2)|", "S(G_eps) = 2(k1 + eps k2)", ds, 1e-7);
      cs.at_most(id + ".ricci_norm2", "max ||Ric|^2 - closed form|", "closed-form |Ric|^2", dr, 1e-7);
      cs.at_most(id + ".einstein_norm2", "max ||Ein|^2 - closed form|", "closed-form |Ein|^2", de, 1e-7);
      cs.at_most(id + ".weyl_norm2", "max ||W|^2 - (4/3)(k1 + eps k2)^2|", "|W|^2 is proportional to (k1 + eps k2)^2",
                 dw, 1e-7);
      if (w > 1e-6) {
        const double ratio = want.weyl_norm2_paper / w;
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
        t.rows.push_back({k1, k2, static_cast<long long>(eps), w, ratio});
      } else {
        t.rows.push_back({k1, k2, static_cast<long long>(eps), w, std::string("n/a")});
      }
    }
  cs.at_most("weyl_factor_spread", "spread of (2/3)(k1 + eps k2)^2 / |W|^2 over curved fixtures",
             "a single global Weyl-norm factor", hi - lo, 1e-8);
  cs.tables().push_back(std::move(t));

  const ProductGeometry plus = build_product(constant_curvature_factor(1.0), constant_curvature_factor(2.0), 1);
  const ProductGeometry minus = build_product(constant_curvature_factor(1.0), constant_curvature_factor(2.0), -1);
  cs.at_most("ricci_shared", "max |Ric(G+) - Ric(G-)| with k1 = 1, k2 = 2", "G+ and G- have the same Ricci tensor",
             max_over(pts, [&](const Point& p) { return max_abs(curvature(plus.g, p).ricci - curvature(minus.g, p).ricci); }),
             1e-8);

  const std::vector<Point> few = sample(seed + 1, 4, -0.5, 0.5);
  for (auto [k1, k2, eps] : std::vector<std::tuple<double, double, int>>{{1, 1, -1}, {1, 2, -1}, {1, -1, 1}}) {
    const CorollaryReport r = corollary_check(k1, k2, eps, few);
    char name[64];
    std::snprintf(name, sizeof name, "corollary.k%g_%g_%s", k1, k2, eps > 0 ? "plus" : "minus");
    cs.holds(name, "k1 = -eps k2, G_eps conformally flat and scalar flat, G_-eps Einstein agree",
             "three-way equivalence for products of constant curvature", r.agree);
  }
}

// ---------------------------------------------------------------- plane fields

PlaneProgram sphere_slices() {
  return [](const JetPoint& x) {
    std::array<JetVector, 2> s;
    s[0] = {-x[1], x[0], Jet2(0.0), Jet2(0.0)};
    s[1] = {-(x[2] * x[0]), -(x[2] * x[1]), x[0] * x[0] + x[1] * x[1], Jet2(0.0)};
    return s;
  };
}

PlaneProgram graph_slices() {
  return [](const JetPoint& x) {
    const Jet2 f0 = 0.6 * x[0] - 0.2 * x[1] + 0.3 * x[0] * x[0];
    const Jet2 f1 = -0.2 * x[0] + 1.0 * x[1];
    std::array<JetVector, 2> s;
    s[0] = {Jet2(1.0), Jet2(0.0), f0, Jet2(0.0)};
    s[1] = {Jet2(0.0), Jet2(1.0), f1, Jet2(0.0)};
    return s;
  };
}

PlaneProgram tilted_plane() {
  return [](const JetPoint& x) {
    const Jet2 t = 0.1 * x[0];
    std::array<JetVector, 2> s;
    s[0] = {cos(t), Jet2(0.0), sin(t), Jet2(0.0)};
    s[1] = {Jet2(0.0), Jet2(1.0), Jet2(0.0), Jet2(0.0)};
    return s;
  };
}

Point on_sphere(Sampler& s, double r) {
  const double z = s.uniform(-0.8, 0.8), ph = s.uniform(0, 2 * M_PI);
  const double q = std::sqrt(1 - z * z);
  return {r * q * std::cos(ph), r * q * std::sin(ph), r * z, s.uniform(-1, 1)};
}

void planefields_suite(CheckSet& cs, std::uint64_t seed) {
  const PlaneProgram first = constant_plane({1, 0, 0, 0}, {0, 1, 0, 0});
  const SurfaceFactor sph = constant_curvature_factor(1.0);
  const std::vector<Point> pts = sample(seed, 10, -0.5, 0.5);
  for (int eps : {1, -1}) {
    const MetricField g = build_product(sph, constant_curvature_factor(2.0), eps).g;
    double m = 0.0;
    for (const Point& p : pts) {
      const NPInvariants inv = np_invariants(g, first, p);
      m = std::max({m, inv.max_modulus(), inv.antisymmetry_residual});
    }
    cs.at_most(std::string("product_factor_plane.") + (eps > 0 ? "plus" : "minus"),
               "max modulus of the eight invariants of the first factor plane",
               "factor planes of a product are parallel", m, 1e-9);
  }

  const MetricField e = flat_metric(Mat4::identity(), Signature::Riemannian);
  Sampler s(seed + 1);
  for (double r : {1.0, 2.0}) {
    double dk = 0.0, dg = 0.0;
    for (int n = 0; n < 10; ++n) {
      const Point p = on_sphere(s, r);
      const NPInvariants inv = np_invariants(e, sphere_slices(), p);
      const double k = leaf_gauss_curvature(inv);
      dk = std::max(dk, std::abs(k - 1.0 / (r * r)));
      dg = std::max(dg, std::abs(k - gauss_equation_curvature(second_fundamental_form(e, sphere_slices(), p), 1)));
    }
    const std::string id = r == 1.0 ? "sphere_slices.r1" : "sphere_slices.r2";
    cs.at_most(id + ".kappa", "max |(1/2)|rho|^2 - |sigma+|^2 - |sigma-|^2 - 1/r^2|",
               "leaf Gauss curvature from the invariants", dk, 1e-6);
    cs.at_most(id + ".gauss_equation", "max |invariant curvature - Gauss equation curvature|",
               "leaf Gauss curvature from the invariants", dg, 1e-10);
  }

  const SurfaceFactor bumpy =
      conformal_factor("bumpy", [](const Jet2& u, const Jet2& v) { return 0.3 * sin(u) * cos(2.0 * v); });
  const std::vector<Point> few(pts.begin(), pts.begin() + 5);
  std::vector<Point> sp;
  for (int n = 0; n < 5; ++n) sp.push_back(on_sphere(s, 1.5));
  const std::string eq = "a plane field is parallel iff its invariants vanish";
  const std::vector<std::tuple<std::string, MetricField, PlaneProgram, std::vector<Point>, bool>> cases = {
      {"sphere_product", build_product(sph, sph, 1).g, first, few, true},
      {"bumpy_sphere_neutral", build_product(bumpy, sph, -1).g, first, few, true},
      {"flat", e, first, few, true},
      {"tilted", build_product(sph, sph, 1).g, tilted_plane(), few, false},
      {"sphere_slices", e, sphere_slices(), sp, false},
      {"graph_slices", e, graph_slices(), few, false}};
  for (const auto& [id, g, plane, where, zero] : cases) {
    const ParallelEquivalence r = parallel_equivalence_check(g, plane, where);
    if (zero) {
      cs.at_most("equivalence." + id + ".invariants", "max invariant modulus", eq, r.max_invariant, 1e-9);
      cs.at_most("equivalence." + id + ".nabla_j", "max |nabla j|", eq, r.parallel_residual, 1e-9);
    } else {
      cs.at_least("equivalence." + id + ".invariants", "max invariant modulus", eq, r.max_invariant, 1e-3);
      cs.at_least("equivalence." + id + ".nabla_j", "max |nabla j|", eq, r.parallel_residual, 1e-3);
    }
    cs.holds("equivalence." + id + ".agree", "both sides agree at every point", eq, r.agree);
  }
}

// ---------------------------------------------------------------- pde

ScalarProgram modulus(const ComplexProgram& z) {
  return [z](const JetPoint& x) {
    const ComplexJet v = z(x);
    return sqrt(v.re * v.re + v.im * v.im);
  };
}

ScalarProgram argument(const ComplexProgram& z) {
  return [z](const JetPoint& x) {
    const ComplexJet v = z(x);
    return atan2(v.im, v.re);
  };
}

std::array<C, 4> random_slopes(Sampler& s, double scale) {
  std::array<C, 4> r;
  for (auto& c : r) c = {s.uniform(-scale, scale), s.uniform(-scale, scale)};
  return r;
}

ConformalFactor factor_from_string(const std::string& src) {
  const ChartBindings b = conformal_chart().bindings;
  return {src, compile_real(parse(src, b.declared()), b)};
}

void pde_suite(CheckSet& cs, std::uint64_t seed, const std::vector<std::string>& sources) {
  Sampler s(seed);
  double uh = 0.0;
  for (int n = 0; n < 50; ++n) uh = std::max(uh, ultrahyperbolic_residual(linespace_omega(), s.point(-2, 2)));
  cs.at_most("ultrahyperbolic.linespace", "max |(d1 d1bar - d2 d2bar) Omega| over 50 points",
             "the line-space conformal factor is ultrahyperbolic-harmonic", uh, 1e-10);

  const std::string route = "the parallel systems vanish exactly when nabla j does";
  for (std::size_t fi = 0; fi < sources.size(); ++fi) {
    const ConformalFactor f = factor_from_string(sources[fi]);
    const MetricField g = conformal_metric(f);
    const std::string tag = "factor" + std::to_string(fi);

    for (NullFamily fam : {NullFamily::Alpha, NullFamily::Beta}) {
      const std::string fid = tag + "." + std::string(to_string(fam));
      const Point p = s.point(-0.5, 0.5);
      const double t1 = s.uniform(0, 3), t2 = t1 + s.uniform(1, 2);
      const PointwiseAngles z = pointwise_parallel_angles(fam, f, t1, t2, p);
      auto sys = [&](const ScalarProgram& a, const ScalarProgram& b) {
        return fam == NullFamily::Alpha ? alpha_parallel_residual(f, a, b, p) : beta_parallel_residual(f, a, b, p);
      };
      cs.at_most(fid + ".zero.system", "system residual on fitted parallel data", route, sys(z.phi1, z.phi2).max_modulus,
                 1e-9);
      cs.at_most(fid + ".zero.nabla_j", "max |nabla j| on fitted parallel data", route,
                 parallel_residual(g, anti_isometric_structure(fam, z.phi1, z.phi2), {p}), 1e-9);
      const ScalarProgram w1 = affine_scalar(t1, {0.3, -0.2, 0.1, 0.4}, p);
      cs.at_least(fid + ".nonzero.system", "system residual on perturbed data", route, sys(w1, z.phi2).max_modulus, 1e-3);
      cs.at_least(fid + ".nonzero.nabla_j", "max |nabla j| on perturbed data", route,
                  parallel_residual(g, anti_isometric_structure(fam, w1, z.phi2), {p}), 1e-3);
    }

    const Point p = s.point(-0.5, 0.5);
    const C a{s.uniform(0.8, 1.5), s.uniform(-0.5, 0.5)}, b{s.uniform(-0.4, 0.4), s.uniform(0.2, 0.4)};
    const PointwiseGraph z = pointwise_parallel_graph(f, a, b, p);
    const std::string iid = tag + ".isometric";
    cs.at_most(iid + ".zero.system", "isometric system residual on fitted parallel data", route,
               isometric_parallel_residual(f, z.alpha, z.beta, p).max_modulus, 1e-9);
    cs.at_most(iid + ".zero.nabla_j", "max |nabla j| on fitted parallel data", route,
               parallel_residual(g, isometric_graph_structure(z.alpha, z.beta), {p}), 1e-9);
    const ComplexProgram a2 = affine_complex(a, random_slopes(s, 0.5), p);
    cs.at_least(iid + ".nonzero.system", "isometric system residual on perturbed data", route,
                isometric_parallel_residual(f, a2, z.beta, p).max_modulus, 1e-3);
    cs.at_least(iid + ".nonzero.nabla_j", "max |nabla j| on perturbed data", route,
                parallel_residual(g, isometric_graph_structure(a2, z.beta), {p}), 1e-3);

    // Polar form against the isometric system on generic affine data.
    double polar = 0.0;
    for (int n = 0; n < 4; ++n) {
      const Point q = s.point(-0.5, 0.5);
      const C a0{s.uniform(0.5, 1.5), s.uniform(-1, 1)}, b0{s.uniform(-0.5, 0.5), s.uniform(0.2, 0.6)};
      const ComplexProgram al = affine_complex(a0, random_slopes(s, 0.4), q);
      const ComplexProgram be = affine_complex(b0, random_slopes(s, 0.4), q);
      const SystemResidual iso = isometric_parallel_residual(f, al, be, q);
      const std::vector<C> predicted = polar_from_isometric(iso.equations, std::arg(a0), std::arg(b0));
      const SystemResidual pc = polar_parallel_residual(f, modulus(al), modulus(be), argument(al), argument(be), q);
      for (int k = 0; k < 8; ++k) polar = std::max(polar, std::abs(pc.equations[k] - predicted[k]));
    }
    cs.at_most(tag + ".polar", "max |polar residual - mapped isometric residual| (last equation with a^2 - b^2 - 1)",
               "the polar system is equivalent to the complex system", polar, 1e-10);
  }
}

// ---------------------------------------------------------------- topology

void topology_suite(CheckSet& cs, int n) {
  const ClosedSurface sph = round_sphere();
  const std::string nodes = std::to_string(n) + "^2 nodes per factor";
  const IntegralEstimate plus = integrate(make_grid(sph, sph, 1, n));
  const std::string gb = "Chern-Gauss-Bonnet and signature integrals";
  cs.at_most("s2xs2_plus.chi", "|chi estimate - 4| on S2 x S2 with G+, " + nodes, gb, std::abs(plus.chi - 4.0), 1e-3);
  cs.at_most("s2xs2_plus.tau", "|tau estimate| on S2 x S2 with G+, " + nodes, gb, std::abs(plus.tau), 1e-3);
  const IntegralEstimate minus = integrate(make_grid(sph, sph, -1, 16));
  cs.at_most("s2xs2_minus.chi", "|chi estimate - 4| on S2 x S2 with G-, 16^2 nodes per factor", gb,
             std::abs(minus.chi - 4.0), 1e-3);
  cs.at_most("s2xs2_minus.tau", "|tau estimate| on S2 x S2 with G-, 16^2 nodes per factor", gb, std::abs(minus.tau),
             1e-3);
  const ClosedSurface t2 = flat_torus(1.0, 1.5);
  const IntegralEstimate torus = integrate(make_grid(t2, t2, 1, 8));
  cs.at_most("t4.chi", "|chi estimate| on the flat 4-torus", gb, std::abs(torus.chi), 1e-3);
  cs.at_most("t4.tau", "|tau estimate| on the flat 4-torus", gb, std::abs(torus.tau), 1e-3);

  const QuadratureGrid small = make_grid(squashed_sphere(0.4), sph, -1, 8);
  const IntegralEstimate par = integrate(small), ser = integrate_serial(small);
  cs.at_most("serial_reference", "|parallel - serial| for chi and tau at 8^2 nodes", "deterministic parallel reduction",
             std::max(std::abs(par.chi - ser.chi), std::abs(par.tau - ser.tau)), 1e-12);

  Table conv{"convergence_squashed_sphere", {"n", "chi", "tau", "chi_error", "tau_error"}, {}};
  for (const ConvergenceRow& r : convergence_table(squashed_sphere(0.4), sph, 1, {8, 16, 32}, 4.0, 0.0))
    conv.rows.push_back({static_cast<long long>(r.n), r.chi, r.tau, r.chi_error, r.tau_error});
  cs.at_most("convergence.chi", "chi error of the squashed sphere times S2 at 32^2 nodes", gb,
             std::get<double>(conv.rows.back()[3]), 1e-6);
  cs.tables().push_back(std::move(conv));

  const ObstructionReport k3 = obstruction_report(k3_profile());
  const std::string ob = "neutral congruences and the parallel obstruction";
  cs.holds("k3.invariants", "K3 has chi = 24, tau = 16", ob, k3.profile.chi == 24 && k3.profile.tau == 16);
  cs.holds("k3.congruences", "chi +- tau = 0 mod 4 on K3", ob, k3.neutral_congruences);
  cs.holds("k3.obstruction", "tau != 0 excludes a parallel structure on K3", ob, k3.parallel_excluded);

  Table cp2{"cp2_blowups", {"k", "chi", "tau", "hitchin_thorpe", "neutral_congruences", "parallel_excluded"}, {}};
  bool arithmetic = true, ht = true, neutral = true, flagged = true;
  for (int k = 0; k <= 9; ++k) {
    const ObstructionReport r = obstruction_report(cp2_blowup_profile(k));
    cp2.rows.push_back({static_cast<long long>(k), static_cast<long long>(r.profile.chi),
                        static_cast<long long>(r.profile.tau), r.hitchin_thorpe, r.neutral_congruences,
                        r.parallel_excluded});
    arithmetic = arithmetic && r.profile.chi == 3 + k && r.profile.tau == 1 - k;
    ht = ht && r.hitchin_thorpe;
    neutral = neutral && r.neutral_congruences == (k % 2 == 1);
    flagged = flagged && r.parallel_excluded == (k == 3 || k == 5 || k == 7);
  }
  ht = ht && !obstruction_report(cp2_blowup_profile(10)).hitchin_thorpe;
  cs.holds("cp2.invariants", "chi = 3 + k and tau = 1 - k for k = 0..9", ob, arithmetic);
  cs.holds("cp2.hitchin_thorpe", "Hitchin-Thorpe holds exactly for k <= 9", ob, ht);
  cs.holds("cp2.neutral", "neutral congruences hold iff k is odd", ob, neutral);
  cs.holds("cp2.obstruction", "obstruction flagged exactly for k = 3, 5, 7", ob, flagged);
  cs.tables().push_back(std::move(cp2));
}

// ---------------------------------------------------------------- engine

MetricField analytic_metric(std::array<double, 4> s, double amp) {
  MetricField g;
  g.name = "analytic";
  g.program = [s, amp](const JetPoint& x) {
    Matrix4<Jet2> m;
    for (int i = 0; i < 4; ++i)
      for (int j = i; j < 4; ++j) {
        Jet2 e = amp * sin(0.7 * x[i] + 0.3 * (j + 1) * x[j] + 0.1 * (i + 2 * j)) * cos(0.5 * x[(i + j) % 4]);
        if (i == j) e = e + s[i] + 0.2 * amp * x[(i + 1) % 4] * x[(i + 2) % 4];
        m[i][j] = m[j][i] = e;
      }
    return m;
  };
  g.signature = (s[2] < 0) ? Signature::Neutral : Signature::Riemannian;
  return g;
}

struct Fixture {
  MetricField g;
  std::vector<Point> points;
};

std::vector<Fixture> engine_fixtures(std::uint64_t seed) {
  std::vector<Fixture> f;
  f.push_back({metric_G(), sample(seed, 4, -0.8, 0.8)});
  f.push_back({metric_G_tilde(), sample(seed + 1, 4, -0.8, 0.8)});
  f.push_back({metric_conformal_flat_form(), sample(seed + 2, 4, -1, 1)});
  for (const AmbientSignature& s : admissible_signatures()) f.push_back({metric_Gp(s), sample(seed + 3, 3, -0.3, 0.3)});
  const SurfaceFactor sph = constant_curvature_factor(1.0);
  f.push_back({build_product(sph, constant_curvature_factor(2.0), 1).g, sample(seed + 4, 3, -0.5, 0.5)});
  f.push_back({build_product(sph, constant_curvature_factor(-1.0), -1).g, sample(seed + 5, 3, -0.5, 0.5)});
  for (const std::string& src : default_pde_factors())
    f.push_back({conformal_metric(factor_from_string(src)), sample(seed + 6, 3, -0.5, 0.5)});
  f.push_back({analytic_metric({1, 1.3, 1.1, 0.9}, 0.15), sample(seed + 7, 4, -1, 1)});
  f.push_back({analytic_metric({1, 1.3, -1.1, -0.9}, 0.15), sample(seed + 8, 4, -1, 1)});
  return f;
}

void engine_suite(CheckSet& cs, std::uint64_t seed) {
  double fd = 0.0, sym = 0.0, split = 0.0;
  for (const Fixture& fx : engine_fixtures(seed))
    for (const Point& p : fx.points) {
      const Matrix4<Jet2> jets = fx.g.jets(p);
      for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) {
          const MatrixProgram prog = fx.g.program;
          const RealFunction entry = [prog, i, j](const Point& x) { return prog(seed_point(x))[i][j].value; };
          const FdResult r = fd_oracle(entry, p);
          for (int a = 0; a < 4; ++a) {
            fd = std::max(fd, std::abs(jets[i][j].grad[a] - r.grad[a]));
            for (int b = 0; b < 4; ++b) fd = std::max(fd, std::abs(jets[i][j].hess(a, b) - r.hess[a][b]));
          }
        }
      const CurvaturePackage c = curvature(fx.g, p);
      const Tensor4& R = c.riemann;
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          for (int k = 0; k < 4; ++k)
            for (int l = 0; l < 4; ++l)
              sym = std::max({sym, std::abs(R[i][j][k][l] + R[j][i][k][l]), std::abs(R[i][j][k][l] + R[i][j][l][k]),
                              std::abs(R[i][j][k][l] - R[k][l][i][j]),
                              std::abs(R[i][j][k][l] + R[i][k][l][j] + R[i][l][j][k])});
      if (c.has_weyl_split)
        split = std::max(split, std::abs(c.weyl_plus2 + c.weyl_minus2 - c.weyl_norm2) / std::max(1.0, std::abs(c.weyl_norm2)));
    }
  cs.at_most("jet_vs_fd", "max |jet - central difference| over first and second derivatives of all metric entries",
             "jets agree with finite differences", fd, 1e-5);
  cs.at_most("riemann_symmetries", "max violation of pair antisymmetry, pair exchange and the first Bianchi identity",
             "algebraic symmetries of the Riemann tensor", sym, 1e-9);
  cs.at_most("weyl_split", "max ||W+|^2 + |W-|^2 - |W|^2| (relative above 1)", "the Weyl tensor splits", split, 1e-8);

  // Same conformal rescaling e^{2f} on both line-space charts.
  auto f = [](const JetPoint& z) { return 0.2 * sin(z[0] + 0.5 * z[3]) + 0.1 * cos(z[1] - z[2]); };
  MetricField hz;
  hz.name = "rescaled-conformal";
  hz.chart = conformal_chart();
  hz.signature = Signature::Neutral;
  const MetricField gc = metric_conformal_flat_form();
  hz.program = [gc, f](const JetPoint& z) { return (0.25 * exp(2.0 * f(z))) * gc.program(z); };
  MetricField hl;
  hl.name = "rescaled-line";
  hl.signature = Signature::Neutral;
  const MetricField g = metric_G();
  const SmoothMap to = map_to_conformal();
  hl.program = [g, f, to](const JetPoint& x) { return exp(2.0 * f(to.program(x))) * g.program(x); };
  Sampler s(seed + 9);
  double diff = 0.0, smallest = INFINITY;
  for (int n = 0; n < 10; ++n) {
    const LinePoint l = hemisphere_line(s);
    const double a = curvature(hl, l.chart()).scalar;
    const double b = curvature(hz, to_conformal(l).chart()).scalar;
    diff = std::max(diff, std::abs(a - b) / std::max(1.0, std::abs(a)));
    smallest = std::min(smallest, std::abs(a));
  }
  const std::string ci = "scalar curvature does not depend on the chart";
  cs.at_most("chart_independence", "max |S(line chart) - S(conformal chart)| for a rescaled G", ci, diff, 1e-9);
  cs.at_least("chart_independence_nontrivial", "min |S| of the rescaled metric", ci, smallest, 1e-3);
}

}  // namespace

std::string engine_version() { return PARAPLEX_VERSION; }

std::string_view to_string(CheckKind k) noexcept {
  switch (k) {
    case CheckKind::Upper:
      return "upper";
    case CheckKind::Lower:
      return "lower";
    case CheckKind::Exact:
      return "exact";
  }
  return "upper";
}

void CheckSet::at_most(const std::string& id, const std::string& description, const std::string& anchor,
                       double residual, double tolerance) {
  const double tol = tolerance * scale_;
  checks_.push_back({prefix_ + id, description, anchor, residual, residual, tol, residual <= tol, CheckKind::Upper});
}

void CheckSet::at_least(const std::string& id, const std::string& description, const std::string& anchor,
                        double measured, double threshold) {
  const double r = threshold - measured;
  checks_.push_back({prefix_ + id, description, anchor,
                     measured, r, 0.0, r < 0.0, CheckKind::Lower});
}

void CheckSet::holds(const std::string& id, const std::string& description, const std::string& anchor, bool ok) {
  checks_.push_back({prefix_ + id, description, anchor, ok ? 1.0 : 0.0, ok ? 0.0 : 1.0, 0.0, ok, CheckKind::Exact});
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"linespace", "geodesic-spaces", "products", "planefields",
                                                 "pde",       "topology",        "engine",   "all"};
  return names;
}

std::vector<std::string> default_pde_factors() {
  return {"1/(1+abs2(Z1-Z2)/4)^0.5", "1+abs2(Z1)", "exp(0.3*(re(Z1)+re(Z2)))"};
}

VerificationReport run_suite(const std::string& name, const SuiteOptions& options) {
  bool known = false;
  for (const std::string& n : suite_names()) known = known || n == name;
  if (!known) throw Error(ErrorKind::UnknownSuite, "unknown suite '" + name + "'");
  if (!(options.tolerance_scale > 0.0) || !std::isfinite(options.tolerance_scale))
    throw Error(ErrorKind::ConfigError, "tolerance scale must be positive and finite");

  const auto start = std::chrono::steady_clock::now();
  VerificationReport report;
  report.suite = name;
  report.engine_version = engine_version();
  report.seed = options.seed;
  report.tolerance_scale = options.tolerance_scale;

  const std::vector<std::string> factors = options.pde_factors.empty() ? default_pde_factors() : options.pde_factors;
  // Parse every factor before any evaluation.
  for (const std::string& src : factors) factor_from_string(src);

  auto run = [&](const std::string& suite) {
    CheckSet cs(suite + ".", options.tolerance_scale);
    if (suite == "linespace") linespace_suite(cs, options.seed);
    if (suite == "geodesic-spaces") geodesic_suite(cs, options.seed);
    if (suite == "products") products_suite(cs, options.seed);
    if (suite == "planefields") planefields_suite(cs, options.seed);
    if (suite == "pde") pde_suite(cs, options.seed, factors);
    if (suite == "topology") topology_suite(cs, options.topology_nodes);
    if (suite == "engine") engine_suite(cs, options.seed);
    for (Check& c : cs.checks()) report.checks.push_back(std::move(c));
    for (Table& t : cs.tables()) {
      t.id = suite + "." + t.id;
      report.tables.push_back(std::move(t));
    }
  };
  if (name == "all") {
    for (const std::string& n : suite_names())
      if (n != "all") run(n);
  } else {
    run(name);
  }

  std::set<std::string> ids;
  for (const Check& c : report.checks) {
    if (!ids.insert(c.id).second) throw Error(ErrorKind::ConfigError, "duplicate check id " + c.id);
    ++report.summary.total;
    ++(c.pass ? report.summary.passed : report.summary.failed);
  }
  report.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

// ---------------------------------------------------------------- built-in geometries

const std::vector<std::string>& builtin_geometry_names() {
  static const std::vector<std::string> names = {
      "linespace-G",         "linespace-G-tilde",   "linespace-conformal", "product-s2xs2-plus",
      "product-s2xs2-minus", "product-s2xh2-plus",  "product-s2xh2-minus", "spaceform-0plus",
      "spaceform-1plus",     "spaceform-1minus",    "spaceform-2plus",     "spaceform-2minus",
      "spaceform-3minus"};
  return names;
}

NamedGeometry builtin_geometry(const std::string& name) {
  if (name == "linespace-G") {
    const LineStructures s = structures_J012();
    return {metric_G(), {s.j0, s.j1, s.j2}, {0.3, 0.1, 0.2, -0.4}};
  }
  if (name == "linespace-G-tilde") {
    const LineStructures s = structures_J012();
    return {metric_G_tilde(), {s.j0, s.j1, s.j2}, {0.3, 0.1, 0.2, -0.4}};
  }
  if (name == "linespace-conformal") return {metric_conformal_flat_form(), {}, {0.3, 0.1, 0.2, -0.4}};
  const std::string product = "product-s2x";
  if (name.rfind(product, 0) == 0) {
    const std::string rest = name.substr(product.size());
    const double k2 = rest.rfind("s2", 0) == 0 ? 1.0 : rest.rfind("h2", 0) == 0 ? -1.0 : 0.0;
    const std::string sign = rest.size() > 3 ? rest.substr(3) : "";
    if (k2 != 0.0 && (sign == "plus" || sign == "minus")) {
      const ProductGeometry pg =
          build_product(constant_curvature_factor(1.0), constant_curvature_factor(k2), sign == "plus" ? 1 : -1);
      return {pg.g, {pg.j1, pg.j2, pg.j}, {0.1, 0.2, 0.3, 0.4}};
    }
  }
  for (const AmbientSignature& s : admissible_signatures()) {
    const std::string id = "spaceform-" + std::to_string(s.p) + (s.epsilon > 0 ? "plus" : "minus");
    if (name == id) {
      const SpaceformStructures st = structures_JJpJstar(s);
      return {metric_Gp(s), {st.j, st.jp, st.jstar}, {0.1, -0.05, 0.2, 0.15}};
    }
  }
  throw Error(ErrorKind::ConfigError, "unknown geometry '" + name + "'");
}

}  // namespace paraplex
