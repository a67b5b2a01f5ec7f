#include "doctest.h"
#include "paraplex/verify.hpp"

using namespace paraplex;

namespace {

SuiteOptions quick(std::uint64_t seed = 42) {
  SuiteOptions o;
  o.seed = seed;
  o.topology_nodes = 16;
  return o;
}

void require_pass(const VerificationReport& r) {
  for (const Check& c : r.checks) {
    INFO(c.id, " measured ", c.measured, " residual ", c.residual, " tolerance ", c.tolerance);
    CHECK(c.pass);
  }
  CHECK(r.summary.failed == 0);
  CHECK(r.summary.total == static_cast<int>(r.checks.size()));
}

}  // namespace

TEST_CASE("every suite passes") {
  for (const std::string& name : suite_names()) {
    if (name == "all") continue;
    INFO(name);
    const VerificationReport r = run_suite(name, quick());
    CHECK(r.summary.total > 0);
    require_pass(r);
    for (const Check& c : r.checks) CHECK(c.id.rfind(name + ".", 0) == 0);
  }
}

TEST_CASE("other seeds pass too") {
  for (const char* name : {"linespace", "pde", "planefields"}) require_pass(run_suite(name, quick(7)));
}

TEST_CASE("check encoding") {
  CheckSet cs("x.", 10.0);
  cs.at_most("a", "", "", 5e-9, 1e-9);
  cs.at_least("b", "", "", 0.5, 1e-3);
  cs.at_least("c", "", "", 1e-4, 1e-3);
  cs.holds("d", "", "", false);
  const auto& v = cs.checks();
  CHECK(v[0].pass);
  CHECK(v[0].tolerance == doctest::Approx(1e-8));
  CHECK(v[1].pass);
  CHECK(v[1].residual < 0);
  CHECK_FALSE(v[2].pass);
  CHECK(v[2].tolerance == 0.0);
  CHECK_FALSE(v[3].pass);
  CHECK(v[3].residual == 1.0);
  CHECK(v[0].id == "x.a");
}

TEST_CASE("a tighter tolerance scale fails checks") {
  SuiteOptions o = quick();
  o.tolerance_scale = 1e-12;
  CHECK(run_suite("products", o).summary.failed > 0);
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(run_suite("bogus", quick()), Error);
  try {
    run_suite("bogus", quick());
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnknownSuite);
  }
  SuiteOptions o = quick();
  o.tolerance_scale = 0.0;
  CHECK_THROWS_AS(run_suite("linespace", o), Error);
  o = quick();
  o.pde_factors = {"1+abs2(W)"};
  CHECK_THROWS_AS(run_suite("pde", o), Error);
}

TEST_CASE("reports are deterministic") {
  const VerificationReport a = run_suite("products", quick()), b = run_suite("products", quick());
  REQUIRE(a.checks.size() == b.checks.size());
  for (std::size_t i = 0; i < a.checks.size(); ++i) {
    CHECK(a.checks[i].id == b.checks[i].id);
    CHECK(a.checks[i].measured == b.checks[i].measured);
  }
}

TEST_CASE("built-in geometries") {
  for (const std::string& n : builtin_geometry_names()) {
    INFO(n);
    const NamedGeometry g = builtin_geometry(n);
    CHECK(std::abs(curvature(g.g, g.default_point).scalar) < 100.0);
  }
  CHECK(std::abs(curvature(builtin_geometry("linespace-G").g, {0.1, 0.2, 0.3, 0.4}).scalar) < 1e-9);
  CHECK(std::abs(curvature(builtin_geometry("product-s2xs2-minus").g, {0.1, 0.2, 0.3, 0.4}).weyl_norm2) < 1e-9);
  CHECK_THROWS_AS(builtin_geometry("nope"), Error);
}
