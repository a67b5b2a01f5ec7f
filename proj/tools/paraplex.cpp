// paraplex: verification suites, coordinate conversion and curvature queries.
//
// Exit codes: 0 pass, 1 fail, 2 usage, 3 I/O.

#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "cli.hpp"

using namespace paraplex;
using namespace paraplex::cli;

namespace {

void emit(const Json& j, const std::string& out) {
  const std::string text = dump(j);
  if (out.empty() || out == "-")
    std::cout << text;
  else
    write_text_file(out, text);
}

int verify(const std::string& suite, std::uint64_t seed, double scale, const std::string& config, const std::string& out) {
  SuiteOptions o;
  o.seed = seed;
  o.tolerance_scale = scale;
  if (!config.empty()) apply_verify_config(read_json_file(config), o);
  const VerificationReport r = run_suite(suite, o);
  emit(to_json(r), out);
  std::cerr << "paraplex verify " << suite << ": " << r.summary.passed << "/" << r.summary.total << " checks pass";
  if (!r.all_pass()) {
    std::cerr << "; failed:";
    for (const Check& c : r.checks)
      if (!c.pass) std::cerr << " " << c.id;
  }
  std::cerr << "\n";
  return r.all_pass() ? kPass : kFail;
}

int curvature_cmd(const std::string& geometry, const std::vector<std::string>& point_args, const std::string& out) {
  std::vector<Point> points;
  for (const std::string& s : point_args) points.push_back(parse_point(s));
  NamedGeometry g;
  const std::vector<std::string>& names = builtin_geometry_names();
  if (std::find(names.begin(), names.end(), geometry) != names.end()) {
    g = builtin_geometry(geometry);
    if (points.empty()) points.push_back(g.default_point);
  } else if (geometry.find('/') != std::string::npos || geometry.ends_with(".json") || std::filesystem::exists(geometry)) {
    const GeometryConfig c = parse_geometry_config(read_json_file(geometry));
    g = build_geometry(c);
    if (points.empty()) points = config_points(c);
    if (points.empty()) throw UsageError("no evaluation point: pass --point or give points or a sampler in the config");
  } else {
    std::string list;
    for (const std::string& n : names) list += " " + n;
    throw UsageError("'" + geometry + "' is neither a built-in geometry nor a readable file; built-ins:" + list);
  }
  const Json report = curvature_report(geometry, g, points);
  emit(report, out);
  for (const Json& p : report["points"])
    if (!p["signature_matches"].get<bool>()) return kFail;
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"paraplex: curvature and structure verification for neutral 4-manifolds"};
  app.require_subcommand(1);
  app.set_version_flag("--version", engine_version());

  std::string suite, out, config, kind, in, geometry;
  std::uint64_t seed = 42;
  double scale = 1.0;
  std::vector<std::string> points;

  CLI::App* v = app.add_subcommand("verify", "run a named verification suite");
  v->add_option("--suite", suite, "linespace, geodesic-spaces, products, planefields, pde, topology, engine or all")
      ->required();
  v->add_option("--seed", seed, "sampling seed")->capture_default_str();
  v->add_option("--out", out, "report path, - for stdout");
  v->add_option("--tolerance-scale", scale, "multiplies all upper-bound tolerances")->capture_default_str();
  v->add_option("--config", config, "JSON with pde_factors and topology_nodes");

  CLI::App* c = app.add_subcommand("convert", "convert line coordinates");
  c->add_option("--kind", kind, "xi-eta->conformal, conformal->xi-eta, points->pluecker, pluecker->conformal")->required();
  c->add_option("--in", in, "payload JSON, - for stdin")->required();
  c->add_option("--out", out, "output path, - for stdout");

  CLI::App* q = app.add_subcommand("curvature", "curvature package at points");
  q->add_option("--geometry", geometry, "built-in name or geometry config JSON")->required();
  q->add_option("--point", points, "\"a,b,c,d\"; may repeat");
  q->add_option("--out", out, "output path, - for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*v) return verify(suite, seed, scale, config, out);
    if (*c) {
      emit(convert(kind, read_json_file(in)), out);
      return kPass;
    }
    return curvature_cmd(geometry, points, out);
  } catch (const UsageError& e) {
    std::cerr << "paraplex: " << e.what() << "\n";
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << "paraplex: " << e.what() << "\n";
    return kIo;
  } catch (const Error& e) {
    std::cerr << "paraplex: " << e.what() << "\n";
    return is_usage_error(e) ? kUsage : kFail;
  } catch (const Json::exception& e) {
    std::cerr << "paraplex: " << e.what() << "\n";
    return kUsage;
  }
}
