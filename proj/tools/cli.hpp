#pragma once

// JSON plumbing for the paraplex command-line tool.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "paraplex/verify.hpp"

namespace paraplex::cli {

using Json = nlohmann::ordered_json;

enum ExitCode { kPass = 0, kFail = 1, kUsage = 2, kIo = 3 };

// Bad arguments, schema violations, unknown names.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Library errors that mean the input was malformed rather than the mathematics failing.
bool is_usage_error(const Error& e);

// Pretty printer with every float written as %.17g; non-finite values become null. Arrays of
// scalars stay on one line.
std::string dump(const Json& j);

Json read_json_file(const std::string& path);  // IoError, UsageError on malformed JSON
void write_text_file(const std::string& path, const std::string& text);

Json to_json(const VerificationReport& r);

// Optional input for `verify --config`: {"pde_factors": [...], "topology_nodes": n}.
void apply_verify_config(const Json& j, SuiteOptions& o);

// kind: xi-eta->conformal, conformal->xi-eta, points->pluecker, pluecker->conformal; "-to-" may
// replace "->".
Json convert(const std::string& kind, const Json& payload);

using MatrixSource = std::array<std::array<std::string, 4>, 4>;

struct StructureSpec {
  std::string name;
  MatrixSource entries;
};

struct SamplerSpec {
  std::uint64_t seed = 0;
  int count = 0;
  double low = -0.5, high = 0.5;
};

struct GeometryConfig {
  std::string name = "config";
  std::string chart_type = "real";  // real or complex
  std::vector<std::string> names;   // 4 real names or 2 complex names
  std::optional<MatrixSource> metric;
  std::optional<std::string> conformal_factor;
  Signature signature = Signature::Riemannian;
  int orientation = 1;
  std::vector<StructureSpec> structures;
  std::vector<Point> points;
  std::optional<SamplerSpec> sampler;
};

// Validates keys and types and parses every expression. UsageError on any problem.
GeometryConfig parse_geometry_config(const Json& j);
NamedGeometry build_geometry(const GeometryConfig& c);
std::vector<Point> config_points(const GeometryConfig& c);

Point parse_point(const std::string& text);  // "a,b,c,d"

// Full curvature package and structure classification at each point.
Json curvature_report(const std::string& label, const NamedGeometry& g, const std::vector<Point>& points);

}  // namespace paraplex::cli
