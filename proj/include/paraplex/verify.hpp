#pragma once

// Named verification suites. Each suite runs a fixed battery of checks on seeded sample points and
// returns a report; serialization lives in the command-line tool.

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "paraplex/structures.hpp"

namespace paraplex {

constexpr int kReportSchemaVersion = 1;

std::string engine_version();

enum class CheckKind {
  Upper,  // residual = measured, pass when residual <= tolerance
  Lower,  // residual = threshold - measured, tolerance 0
  Exact,  // boolean; residual 0 or 1, tolerance 0
};
std::string_view to_string(CheckKind k) noexcept;

struct Check {
  std::string id;
  std::string description;
  std::string anchor;  // the statement the check instantiates
  double measured = 0.0;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  CheckKind kind = CheckKind::Upper;
};

using Cell = std::variant<double, long long, std::string, bool>;

struct Table {
  std::string id;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct Summary {
  int total = 0;
  int passed = 0;
  int failed = 0;
};

struct VerificationReport {
  int schema_version = kReportSchemaVersion;
  std::string suite;
  std::string engine_version;
  std::uint64_t seed = 0;
  double tolerance_scale = 1.0;
  std::vector<Check> checks;
  std::vector<Table> tables;
  Summary summary;
  double wall_time_s = 0.0;

  bool all_pass() const { return summary.failed == 0; }
};

// Collects checks under a dotted id prefix. Upper-bound tolerances are multiplied by `scale`;
// lower bounds and exact checks are not.
class CheckSet {
 public:
  CheckSet(std::string prefix, double scale) : prefix_(std::move(prefix)), scale_(scale) {}

  void at_most(const std::string& id, const std::string& description, const std::string& anchor, double residual,
               double tolerance);
  void at_least(const std::string& id, const std::string& description, const std::string& anchor, double measured,
                double threshold);
  void holds(const std::string& id, const std::string& description, const std::string& anchor, bool ok);

  std::vector<Check>& checks() { return checks_; }
  std::vector<Table>& tables() { return tables_; }

 private:
  std::string prefix_;
  double scale_;
  std::vector<Check> checks_;
  std::vector<Table> tables_;
};

struct SuiteOptions {
  std::uint64_t seed = 42;
  double tolerance_scale = 1.0;
  // Conformal factors for the pde suite, exprlang over Z1, Z2. Empty means the built-in list.
  std::vector<std::string> pde_factors;
  int topology_nodes = 32;  // per axis per factor, Riemannian S2 x S2
};

// linespace, geodesic-spaces, products, planefields, pde, topology, engine, all.
const std::vector<std::string>& suite_names();
// UnknownSuite for other names; ConfigError for bad options.
VerificationReport run_suite(const std::string& name, const SuiteOptions& options);

std::vector<std::string> default_pde_factors();

// Built-in geometries for curvature queries.
struct NamedGeometry {
  MetricField g;
  std::vector<StructureField> structures;
  Point default_point{};
};
const std::vector<std::string>& builtin_geometry_names();
// ConfigError for unknown names.
NamedGeometry builtin_geometry(const std::string& name);

}  // namespace paraplex
