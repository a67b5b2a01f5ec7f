#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "paraplex/linespace.hpp"
#include "paraplex/sampling.hpp"

namespace paraplex::cli {

namespace {

std::string number(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool is_scalar(const Json& j) { return !j.is_array() && !j.is_object(); }

void write(const Json& j, int depth, std::string& out) {
  const std::string pad(2 * (depth + 1), ' '), close(2 * depth, ' ');
  switch (j.type()) {
    case Json::value_t::number_float:
      out += number(j.get<double>());
      return;
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      const bool flat = std::all_of(j.begin(), j.end(), is_scalar);
      out += flat ? "[" : "[\n";
      bool first = true;
      for (const Json& e : j) {
        if (!first) out += flat ? ", " : ",\n";
        first = false;
        if (!flat) out += pad;
        write(e, depth + 1, out);
      }
      out += flat ? "]" : "\n" + close + "]";
      return;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(k).dump() + ": ";
        write(v, depth + 1, out);
      }
      out += "\n" + close + "}";
      return;
    }
    default:
      out += j.dump();
  }
}

void reject_unknown(const Json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw UsageError(where + " must be an object");
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) throw UsageError("unknown key '" + k + "' in " + where);
}

template <std::size_t N>
std::array<double, N> numbers(const Json& j, const std::string& key) {
  if (!j.contains(key)) throw UsageError("missing key '" + key + "'");
  const Json& a = j.at(key);
  if (!a.is_array() || a.size() != N) throw UsageError("'" + key + "' must be an array of " + std::to_string(N) + " numbers");
  std::array<double, N> out{};
  for (std::size_t i = 0; i < N; ++i) {
    if (!a[i].is_number()) throw UsageError("'" + key + "' must contain numbers");
    out[i] = a[i].get<double>();
  }
  return out;
}

Json pair(cplx z) { return Json::array({z.real(), z.imag()}); }

Json matrix(const Mat4& m) {
  Json out = Json::array();
  for (int i = 0; i < 4; ++i) out.push_back(Json::array({m[i][0], m[i][1], m[i][2], m[i][3]}));
  return out;
}

Json tensor(const Tensor3& t) {
  Json out = Json::array();
  for (const auto& a : t) {
    Json m = Json::array();
    for (const auto& r : a) m.push_back(Json::array({r[0], r[1], r[2], r[3]}));
    out.push_back(m);
  }
  return out;
}

Json tensor(const Tensor4& t) {
  Json out = Json::array();
  for (const Tensor3& a : t) out.push_back(tensor(a));
  return out;
}

Json cell(const Cell& c) {
  return std::visit([](const auto& v) { return Json(v); }, c);
}

std::string canonical_kind(std::string kind) {
  const std::string to = "-to-";
  const auto at = kind.find(to);
  if (at != std::string::npos) kind.replace(at, to.size(), "->");
  return kind;
}

std::string expression(const Json& j, const std::string& where) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number()) return number(j.get<double>());
  throw UsageError(where + " must be a string or a number");
}

MatrixSource matrix_source(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 4) throw UsageError(where + " must be a 4x4 array");
  MatrixSource m;
  for (int i = 0; i < 4; ++i) {
    if (!j[i].is_array() || j[i].size() != 4) throw UsageError(where + " must be a 4x4 array");
    for (int k = 0; k < 4; ++k) m[i][k] = expression(j[i][k], where);
  }
  return m;
}

ChartBindings bindings_of(const GeometryConfig& c) {
  return c.chart_type == "complex" ? ChartBindings::complex_pair(c.names[0], c.names[1]) : ChartBindings::real(c.names);
}

Expr parse_entry(const std::string& src, const ChartBindings& b, const std::string& where) {
  try {
    return parse(src, b.declared());
  } catch (const Error& e) {
    throw UsageError(where + ": " + e.what());
  }
}

MatrixProgram matrix_program(const MatrixSource& src, const ChartBindings& b) {
  std::array<std::array<ScalarProgram, 4>, 4> f;
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) f[i][k] = compile_real(parse(src[i][k], b.declared()), b);
  return [f](const JetPoint& x) {
    Matrix4<Jet2> m;
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < 4; ++k) m[i][k] = f[i][k](x);
    return m;
  };
}

Mat4 flat_form(Signature s) {
  Mat4 m = Mat4::identity();
  if (s == Signature::Neutral) m[2][2] = m[3][3] = -1.0;
  if (s == Signature::Lorentz) m[3][3] = -1.0;
  if (s == Signature::NegativeDefinite) m = -1.0 * m;
  return m;
}

std::vector<std::string> coordinate_labels(const ChartBindings& b) {
  std::vector<std::string> out(4);
  for (const Binding& n : b.names) {
    if (n.im_axis < 0) {
      out[n.re_axis] = n.name;
    } else {
      out[n.re_axis] = "Re " + n.name;
      out[n.im_axis] = "Im " + n.name;
    }
  }
  return out;
}

}  // namespace

bool is_usage_error(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::SyntaxError:
    case ErrorKind::UnknownFunction:
    case ErrorKind::UnboundVariable:
    case ErrorKind::UnknownSuite:
    case ErrorKind::ConfigError:
      return true;
    default:
      return false;
  }
}

std::string dump(const Json& j) {
  std::string out;
  write(j, 0, out);
  out += "\n";
  return out;
}

Json read_json_file(const std::string& path) {
  std::string text;
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw UsageError("malformed JSON in " + path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("write failed for " + path);
}

Json to_json(const VerificationReport& r) {
  Json j;
  j["schema_version"] = r.schema_version;
  j["suite"] = r.suite;
  j["engine_version"] = r.engine_version;
  j["seed"] = r.seed;
  j["tolerance_scale"] = r.tolerance_scale;
  j["pass"] = r.all_pass();
  j["summary"] = {{"total", r.summary.total}, {"passed", r.summary.passed}, {"failed", r.summary.failed}};
  Json checks = Json::array();
  for (const Check& c : r.checks)
    checks.push_back({{"id", c.id},
                      {"description", c.description},
                      {"anchor", c.anchor},
                      {"kind", std::string(to_string(c.kind))},
                      {"measured", c.measured},
                      {"residual", c.residual},
                      {"tolerance", c.tolerance},
                      {"pass", c.pass}});
  j["checks"] = checks;
  Json tables = Json::array();
  for (const Table& t : r.tables) {
    Json rows = Json::array();
    for (const auto& row : t.rows) {
      Json jr = Json::array();
      for (const Cell& c : row) jr.push_back(cell(c));
      rows.push_back(jr);
    }
    tables.push_back({{"id", t.id}, {"columns", t.columns}, {"rows", rows}});
  }
  j["tables"] = tables;
  j["wall_time_s"] = r.wall_time_s;
  return j;
}

void apply_verify_config(const Json& j, SuiteOptions& o) {
  reject_unknown(j, {"pde_factors", "topology_nodes"}, "verify config");
  if (j.contains("pde_factors")) {
    const Json& f = j.at("pde_factors");
    if (!f.is_array() || f.empty()) throw UsageError("pde_factors must be a non-empty array of strings");
    o.pde_factors.clear();
    for (const Json& s : f) {
      if (!s.is_string()) throw UsageError("pde_factors must be a non-empty array of strings");
      o.pde_factors.push_back(s.get<std::string>());
    }
  }
  if (j.contains("topology_nodes")) {
    if (!j.at("topology_nodes").is_number_integer()) throw UsageError("topology_nodes must be an integer");
    o.topology_nodes = j.at("topology_nodes").get<int>();
  }
}

Json convert(const std::string& kind_in, const Json& payload) {
  const std::string kind = canonical_kind(kind_in);
  Json out;
  out["schema_version"] = kReportSchemaVersion;
  out["kind"] = kind;
  if (kind == "xi-eta->conformal") {
    reject_unknown(payload, {"xi", "eta"}, "payload");
    const auto xi = numbers<2>(payload, "xi"), eta = numbers<2>(payload, "eta");
    const LinePoint l{{xi[0], xi[1]}, {eta[0], eta[1]}};
    const ConformalPoint z = to_conformal(l);
    const LinePoint back = from_conformal(z);
    out["Z1"] = pair(z.z1);
    out["Z2"] = pair(z.z2);
    out["roundtrip_residual"] = std::max(std::abs(back.xi - l.xi), std::abs(back.eta - l.eta));
    return out;
  }
  if (kind == "conformal->xi-eta") {
    reject_unknown(payload, {"Z1", "Z2"}, "payload");
    const auto z1 = numbers<2>(payload, "Z1"), z2 = numbers<2>(payload, "Z2");
    const ConformalPoint z{{z1[0], z1[1]}, {z2[0], z2[1]}};
    const LinePoint l = from_conformal(z);
    const ConformalPoint back = to_conformal(l);
    out["xi"] = pair(l.xi);
    out["eta"] = pair(l.eta);
    out["roundtrip_residual"] = std::max(std::abs(back.z1 - z.z1), std::abs(back.z2 - z.z2));
    return out;
  }
  if (kind == "points->pluecker") {
    reject_unknown(payload, {"s", "t"}, "payload");
    const PlueckerSextet px = pluecker(numbers<3>(payload, "s"), numbers<3>(payload, "t"));
    out["p"] = px.p;
    out["q"] = px.q;
    out["quadric_residual"] = std::abs(px.p[0] * px.q[0] + px.p[1] * px.q[1] + px.p[2] * px.q[2]);
    return out;
  }
  if (kind == "pluecker->conformal") {
    reject_unknown(payload, {"p", "q", "s", "t"}, "payload");
    const bool points = payload.contains("s") || payload.contains("t");
    if (points == (payload.contains("p") || payload.contains("q")))
      throw UsageError("payload needs either p and q or two points s and t");
    const PlueckerSextet px =
        points ? pluecker(numbers<3>(payload, "s"), numbers<3>(payload, "t")) : PlueckerSextet{numbers<3>(payload, "p"), numbers<3>(payload, "q")};
    out["X"] = conformal_from_pluecker(px);
    return out;
  }
  throw UsageError("unknown conversion kind '" + kind_in + "'");
}

GeometryConfig parse_geometry_config(const Json& j) {
  reject_unknown(j, {"name", "chart", "metric", "conformal_factor", "signature", "orientation", "structures", "points",
                     "sampler"},
                 "geometry config");
  GeometryConfig c;
  if (j.contains("name")) {
    if (!j.at("name").is_string()) throw UsageError("name must be a string");
    c.name = j.at("name").get<std::string>();
  }
  if (j.contains("metric") == j.contains("conformal_factor"))
    throw UsageError("geometry config needs exactly one of metric and conformal_factor");

  if (j.contains("chart")) {
    const Json& ch = j.at("chart");
    reject_unknown(ch, {"type", "names"}, "chart");
    if (!ch.contains("type") || !ch.at("type").is_string()) throw UsageError("chart.type must be real or complex");
    c.chart_type = ch.at("type").get<std::string>();
    if (c.chart_type != "real" && c.chart_type != "complex") throw UsageError("chart.type must be real or complex");
    if (!ch.contains("names") || !ch.at("names").is_array()) throw UsageError("chart.names must be an array");
    for (const Json& n : ch.at("names")) {
      if (!n.is_string()) throw UsageError("chart.names must be strings");
      c.names.push_back(n.get<std::string>());
    }
    if (c.names.size() != (c.chart_type == "real" ? 4u : 2u))
      throw UsageError("chart.names needs 4 real or 2 complex names");
    if (std::set<std::string>(c.names.begin(), c.names.end()).size() != c.names.size())
      throw UsageError("chart.names must be distinct");
  } else if (j.contains("conformal_factor")) {
    c.chart_type = "complex";
    c.names = {"Z1", "Z2"};
  } else {
    c.names = {"x0", "x1", "x2", "x3"};
  }
  const ChartBindings b = bindings_of(c);

  if (!j.contains("signature") || !j.at("signature").is_string()) throw UsageError("signature tag is required");
  try {
    c.signature = signature_from_string(j.at("signature").get<std::string>());
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  if (j.contains("orientation")) {
    const Json& o = j.at("orientation");
    if (!o.is_number_integer() || (o.get<int>() != 1 && o.get<int>() != -1)) throw UsageError("orientation must be 1 or -1");
    c.orientation = o.get<int>();
  }

  if (j.contains("metric")) {
    c.metric = matrix_source(j.at("metric"), "metric");
    std::array<std::array<Expr, 4>, 4> e;
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < 4; ++k) e[i][k] = parse_entry((*c.metric)[i][k], b, "metric entry");
    for (int i = 0; i < 4; ++i)
      for (int k = i + 1; k < 4; ++k)
        if (e[i][k].print() != e[k][i].print()) throw UsageError("metric entries must be symmetric");
  } else {
    c.conformal_factor = expression(j.at("conformal_factor"), "conformal_factor");
    parse_entry(*c.conformal_factor, b, "conformal_factor");
  }

  if (j.contains("structures")) {
    const Json& ss = j.at("structures");
    if (!ss.is_array()) throw UsageError("structures must be an array");
    for (const Json& s : ss) {
      reject_unknown(s, {"name", "matrix"}, "structure");
      StructureSpec spec;
      spec.name = s.contains("name") && s.at("name").is_string() ? s.at("name").get<std::string>()
                                                                 : "j" + std::to_string(c.structures.size());
      if (!s.contains("matrix")) throw UsageError("structure needs a matrix");
      spec.entries = matrix_source(s.at("matrix"), "structure matrix");
      for (const auto& row : spec.entries)
        for (const std::string& src : row) parse_entry(src, b, "structure entry");
      c.structures.push_back(spec);
    }
  }

  if (j.contains("points")) {
    const Json& ps = j.at("points");
    if (!ps.is_array()) throw UsageError("points must be an array");
    for (const Json& p : ps) {
      if (!p.is_array() || p.size() != 4) throw UsageError("each point needs 4 numbers");
      Point q{};
      for (int i = 0; i < 4; ++i) {
        if (!p[i].is_number()) throw UsageError("each point needs 4 numbers");
        q[i] = p[i].get<double>();
      }
      c.points.push_back(q);
    }
  }
  if (j.contains("sampler")) {
    const Json& s = j.at("sampler");
    reject_unknown(s, {"seed", "count", "low", "high"}, "sampler");
    SamplerSpec sp;
    if (!s.contains("seed") || !s.at("seed").is_number_unsigned()) throw UsageError("sampler.seed must be a nonnegative integer");
    if (!s.contains("count") || !s.at("count").is_number_integer()) throw UsageError("sampler.count must be an integer");
    sp.seed = s.at("seed").get<std::uint64_t>();
    sp.count = s.at("count").get<int>();
    if (sp.count < 1 || sp.count > 10000) throw UsageError("sampler.count must be in 1..10000");
    if (s.contains("low")) sp.low = s.at("low").get<double>();
    if (s.contains("high")) sp.high = s.at("high").get<double>();
    if (!(sp.low < sp.high)) throw UsageError("sampler needs low < high");
    c.sampler = sp;
  }
  return c;
}

NamedGeometry build_geometry(const GeometryConfig& c) {
  const ChartBindings b = bindings_of(c);
  NamedGeometry out;
  MetricField& g = out.g;
  g.name = c.name;
  g.chart.name = c.name;
  g.chart.bindings = b;
  g.signature = c.signature;
  g.orientation = c.orientation;
  if (c.metric) {
    g.program = matrix_program(*c.metric, b);
  } else {
    const ScalarProgram omega = compile_real(parse(*c.conformal_factor, b.declared()), b);
    const Mat4 flat = flat_form(c.signature);
    g.program = [omega, flat](const JetPoint& x) {
      const Jet2 w = omega(x);
      const Jet2 w2 = w * w;
      Matrix4<Jet2> m;
      for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) m[i][k] = flat[i][k] == 0.0 ? Jet2(0.0) : flat[i][k] * w2;
      return m;
    };
  }
  for (const StructureSpec& s : c.structures) {
    StructureField f;
    f.name = s.name;
    f.chart = g.chart;
    f.program = matrix_program(s.entries, b);
    out.structures.push_back(f);
  }
  return out;
}

std::vector<Point> config_points(const GeometryConfig& c) {
  std::vector<Point> pts = c.points;
  if (c.sampler) {
    Sampler s(c.sampler->seed);
    for (int i = 0; i < c.sampler->count; ++i) pts.push_back(s.point(c.sampler->low, c.sampler->high));
  }
  return pts;
}

Point parse_point(const std::string& text) {
  Point p{};
  std::stringstream ss(text);
  std::string item;
  int n = 0;
  while (std::getline(ss, item, ',')) {
    if (n == 4) throw UsageError("point needs exactly 4 comma-separated numbers");
    std::size_t used = 0;
    try {
      p[n] = std::stod(item, &used);
    } catch (const std::exception&) {
      throw UsageError("cannot read '" + item + "' as a number");
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos) throw UsageError("cannot read '" + item + "' as a number");
    ++n;
  }
  if (n != 4) throw UsageError("point needs exactly 4 comma-separated numbers");
  return p;
}

Json curvature_report(const std::string& label, const NamedGeometry& g, const std::vector<Point>& points) {
  Json out;
  out["schema_version"] = kReportSchemaVersion;
  out["kind"] = "curvature";
  out["geometry"] = label;
  out["chart"] = {{"name", g.g.chart.name}, {"coordinates", coordinate_labels(g.g.chart.bindings)}};
  out["signature"] = std::string(to_string(g.g.signature));
  out["orientation"] = g.g.orientation;
  out["indices"] = {{"metric", "g_ij = metric[i][j]"},
                    {"christoffel", "Gamma^k_ij = christoffel[k][i][j]"},
                    {"riemann", "R_ijkl = riemann[i][j][k][l], R^l_ijk = d_i Gamma^l_jk - d_j Gamma^l_ik + ..., lowered on l"},
                    {"ricci", "Ric_jk = R^i_ijk"},
                    {"einstein", "E_ij = Ric_ij - (S/4) g_ij"},
                    {"weyl", "W_ijkl, all indices down"},
                    {"structures", "j^a_b = matrix[a][b]"}};
  Json pts = Json::array();
  for (const Point& p : points) {
    const Mat4 gv = g.g.value(p);
    const CurvaturePackage c = curvature(g.g, p);
    const auto counts = signature_counts(gv);
    Json e;
    e["point"] = p;
    e["metric"] = matrix(gv);
    e["signature_counts"] = {counts.first, counts.second};
    e["signature_matches"] = matches(g.g.signature, counts);
    e["scalar"] = c.scalar;
    e["ricci_norm2"] = c.ricci_norm2;
    e["einstein_norm2"] = c.einstein_norm2;
    e["weyl_norm2"] = c.weyl_norm2;
    e["weyl_plus2"] = c.has_weyl_split ? Json(c.weyl_plus2) : Json();
    e["weyl_minus2"] = c.has_weyl_split ? Json(c.weyl_minus2) : Json();
    e["christoffel"] = tensor(c.christoffel);
    e["riemann"] = tensor(c.riemann);
    e["ricci"] = matrix(c.ricci);
    e["einstein"] = matrix(c.einstein);
    e["weyl"] = tensor(c.weyl);
    Json ss = Json::array();
    for (const StructureField& s : g.structures) {
      Json js;
      js["name"] = s.name;
      try {
        const Mat4 jv = s.value(p);
        const StructureClassification k = classify(gv, jv);
        js["matrix"] = matrix(jv);
        js["square"] = k.square;
        js["kind"] = std::string(to_string(k.kind));
        js["eigenplanes"] = std::string(to_string(k.geometry));
        js["isometry_residual"] = k.isometry_residual;
        js["anti_isometry_residual"] = k.anti_isometry_residual;
        js["parallel_residual"] = parallel_residual(g.g, s, {p});
        js["nijenhuis_max"] = max_abs(nijenhuis(s, p));
      } catch (const Error& err) {
        js["error"] = err.what();
      }
      ss.push_back(js);
    }
    e["structures"] = ss;
    pts.push_back(e);
  }
  out["points"] = pts;
  return out;
}

}  // namespace paraplex::cli
