// SPDX-License-Identifier: Apache-2.0
//
// Batch experiment runner: named disk families, the three experiment
// commands, a key=value config file overridden by flags, and deterministic
// CSV/JSON outputs.
//
// Exit codes: 0 success, 2 validation error, 3 acceptance failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "holonomy/curves.hpp"
#include "holonomy/families.hpp"

using json = nlohmann::ordered_json;
using namespace holo;

namespace {

struct Options {
  int dim = 2;
  int depth = 3;
  std::string disk = "geodesic-disk";
  double radius = 0.8;
  double amplitude = 0.1;
  int frequency = 3;
  int axis = 3;
  double step = 1e-3;
  double tol = 1e-6;
  std::string out;
  unsigned seed = 7;
  int orientation = +1;
  std::vector<std::string> vertices;  // "dist,angle" polar pairs (triangle)
  bool corrupt_order = false;         // debug fault injection
};

// key=value config file; '#' comments; unknown keys rejected.
void load_config(const std::string& path, Options& o) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("config", "cannot open " + path);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw CLI::ValidationError("config", "expected key=value: " + line);
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key == "dim") o.dim = std::stoi(val);
    else if (key == "depth") o.depth = std::stoi(val);
    else if (key == "disk") o.disk = val;
    else if (key == "radius") o.radius = std::stod(val);
    else if (key == "amplitude") o.amplitude = std::stod(val);
    else if (key == "frequency") o.frequency = std::stoi(val);
    else if (key == "axis") o.axis = std::stoi(val);
    else if (key == "step") o.step = std::stod(val);
    else if (key == "tol") o.tol = std::stod(val);
    else if (key == "out") o.out = val;
    else if (key == "seed") o.seed = static_cast<unsigned>(std::stoul(val));
    else if (key == "orientation") o.orientation = std::stoi(val);
    else if (key == "vertex") o.vertices.push_back(val);
    else throw CLI::ValidationError("config", "unknown key: " + key);
  }
}

void validate(const Options& o) {
  if (o.dim < 2 || o.dim > 4)
    throw CLI::ValidationError("dim", "dimension must be in 2..4");
  if (o.depth < 0 || o.depth > 4)
    throw CLI::ValidationError("depth", "depth must be in 0..4");
  if (!(o.step > 0) || !(o.tol > 0))
    throw CLI::ValidationError("step/tol", "step and tol must be positive");
  if (o.orientation != 1 && o.orientation != -1)
    throw CLI::ValidationError("orientation", "orientation must be +1 or -1");
}

DiskEmbedding make_disk(const Options& o) {
  if (o.disk == "geodesic-disk") return geodesic_disk(o.dim, o.radius);
  if (o.disk == "tilted-geodesic-disk")
    return tilted_geodesic_disk(o.dim, o.radius, o.axis);
  if (o.disk == "bumped-disk")
    return bumped_disk(o.dim, o.radius, o.amplitude, o.frequency);
  if (o.disk.rfind("csv:", 0) == 0)
    return load_disk_csv(o.disk.substr(4), o.dim);
  throw CLI::ValidationError("disk", "unknown disk family: " + o.disk);
}

void emit(const Options& o, const json& report, const std::string& csv) {
  if (o.out.empty()) {
    std::cout << report.dump(2) << "\n";
    if (!csv.empty()) std::cerr << csv;
    return;
  }
  std::ofstream(o.out + ".json") << report.dump(2) << "\n";
  if (!csv.empty()) std::ofstream(o.out + ".csv") << csv;
}

// ---------------------------------------------------------------------------
// triangle-holonomy
// ---------------------------------------------------------------------------

HPoint polar_point(int dim, double dist, double angle) {
  Vec v = Vec::Zero(dim + 1);
  v(0) = std::cosh(dist);
  v(1) = std::sinh(dist) * std::cos(angle);
  v(2) = std::sinh(dist) * std::sin(angle);
  return HPoint(v, dim);
}

int cmd_triangle_holonomy(const Options& o) {
  std::vector<std::pair<double, double>> polar = {
      {0.0, 0.0}, {0.9, 0.2}, {0.7, 1.5}};
  if (!o.vertices.empty()) {
    if (o.vertices.size() != 3)
      throw CLI::ValidationError("vertex", "need exactly three vertices");
    polar.clear();
    for (const auto& s : o.vertices) {
      double d, a;
      if (std::sscanf(s.c_str(), "%lf,%lf", &d, &a) != 2)
        throw CLI::ValidationError("vertex", "expected dist,angle: " + s);
      polar.push_back({d, a});
    }
  }
  const HPoint p = polar_point(o.dim, polar[0].first, polar[0].second);
  const HPoint q = polar_point(o.dim, polar[1].first, polar[1].second);
  const HPoint r = polar_point(o.dim, polar[2].first, polar[2].second);
  const GeodesicTriangle tri =
      totally_geodesic_triangle(p, q, r, o.orientation);
  if (is_degenerate(p, q, r)) throw DomainError("degenerate triangle");
  const VertexAngles ang = vertex_angles(tri);
  const double area = triangle_area(tri);

  // Numeric holonomy of the boundary loop lifted from the section over p.
  PathHn loop;
  loop.dim = o.dim;
  if (o.orientation >= 0)
    loop.pts = {p, q, r, p};
  else
    loop.pts = {p, r, q, p};
  const GroupElement base = section(p);
  const GroupElement hol = holonomy(loop, base, o.step);

  // Closed form (two-dimensional slice only): Ψ(π − |α+β+γ|)^δ conjugated
  // to the fiber over p.
  json report;
  report["command"] = "triangle-holonomy";
  report["alpha"] = ang.alpha;
  report["beta"] = ang.beta;
  report["gamma"] = ang.gamma;
  report["area"] = area;
  report["holonomy"] = std::vector<std::vector<double>>();
  for (int i = 0; i <= o.dim; ++i) {
    std::vector<double> row;
    for (int j = 0; j <= o.dim; ++j) row.push_back(hol.mat(i, j));
    report["holonomy"].push_back(row);
  }
  double gap = -1.0;
  if (o.dim == 2) {
    // The fiber turns against the base loop: δ = −sign(α+β+γ).
    const int delta = (ang.alpha + ang.beta + ang.gamma) >= 0 ? -1 : +1;
    const GroupElement closed = Psi(delta * area);
    gap = (hol.mat - closed.mat).cwiseAbs().maxCoeff();
    report["delta"] = delta;
    report["closed_form_gap"] = gap;
  }
  emit(o, report, "");
  if (o.dim == 2 && gap > o.tol) return 3;
  return 0;
}

// ---------------------------------------------------------------------------
// subdivision-audit
// ---------------------------------------------------------------------------

int cmd_subdivision_audit(const Options& o) {
  json report;
  report["command"] = "subdivision-audit";
  report["orientation"] = o.orientation;
  report["levels"] = json::array();
  bool all_pass = true;
  for (int n = 0; n <= o.depth; ++n) {
    SubdivisionLevel lvl = build_level(n, o.orientation);
    if (o.corrupt_order && n == o.depth && lvl.entries.size() >= 2)
      std::swap(lvl.entries[0], lvl.entries[1]);
    const PropertyReport rep = verify_properties(lvl);
    json level;
    level["step"] = n;
    level["triangles"] = lvl.entries.size();
    level["p1"] = rep.p1;
    level["p2"] = rep.p2;
    level["p3"] = rep.p3;
    level["p4"] = rep.p4;
    level["violations"] = rep.violations;
    if (n == o.depth) {
      level["entries"] = json::array();
      for (const auto& e : lvl.entries) {
        json ent;
        ent["address"] = e.addr.to_string();
        ent["vertices"] = {{e.tri.v[0].x(), e.tri.v[0].y()},
                           {e.tri.v[1].x(), e.tri.v[1].y()},
                           {e.tri.v[2].x(), e.tri.v[2].y()}};
        ent["start"] = {e.tri.start.x(), e.tri.start.y()};
        ent["end"] = {e.tri.end.x(), e.tri.end.y()};
        level["entries"].push_back(ent);
      }
    }
    report["levels"].push_back(level);
    all_pass = all_pass && rep.pass();
  }
  report["pass"] = all_pass;
  emit(o, report, "");
  return all_pass ? 0 : 3;
}

// ---------------------------------------------------------------------------
// theorem
// ---------------------------------------------------------------------------

int cmd_theorem(const Options& o) {
  const DiskEmbedding phi = make_disk(o);
  json report;
  report["command"] = "theorem";
  report["disk"] = o.disk;
  report["dim"] = o.dim;
  report["radius"] = o.radius;
  report["rows"] = json::array();
  std::string csv =
      "n,fiber_length,pleated_area,disk_area,length_gap,area_gap_rel,"
      "boundary_holonomy_gap,cauchy_gap,max_direction_kink\n";
  bool ok = true;
  if (o.depth >= 1) {
    const auto rows = theorem_check(phi, o.depth, o.orientation, o.step);
    double prev_h = -1.0;
    for (const auto& r : rows) {
      json row;
      row["n"] = r.n;
      row["fiber_length"] = r.fiber_length;
      row["pleated_area"] = r.pleated_area;
      row["disk_area"] = r.disk_area_value;
      row["length_gap"] = r.length_gap;
      row["area_gap_rel"] = r.area_gap_rel;
      row["boundary_holonomy_gap"] = r.boundary_holonomy_gap;
      row["cauchy_gap"] = r.cauchy_gap;
      row["max_direction_kink"] = r.max_direction_kink;
      report["rows"].push_back(row);
      std::ostringstream line;
      line.precision(12);
      line << r.n << "," << r.fiber_length << "," << r.pleated_area << ","
           << r.disk_area_value << "," << r.length_gap << ","
           << r.area_gap_rel << "," << r.boundary_holonomy_gap << ","
           << r.cauchy_gap << "," << r.max_direction_kink << "\n";
      csv += line.str();
      // Acceptance thresholds of the final depth.
      if (r.length_gap > 1e-9) ok = false;
      if (prev_h >= 0.0 && r.boundary_holonomy_gap > prev_h) ok = false;
      prev_h = r.boundary_holonomy_gap;
      if (r.n == o.depth && o.depth >= 3) {
        if (r.area_gap_rel > 0.02) ok = false;
        if (r.boundary_holonomy_gap > 1e-2) ok = false;
      }
    }
  } else {
    // Depth 0: single-triangle data only (one pleated triangle, no grid).
    const SubdivisionLevel lvl = build_level(0, o.orientation);
    const auto& e = lvl.entries.front();
    const GeodesicTriangle tri = totally_geodesic_triangle(
        phi(e.tri.v[0].x(), e.tri.v[0].y()), phi(e.tri.v[1].x(), e.tri.v[1].y()),
        phi(e.tri.v[2].x(), e.tri.v[2].y()), o.orientation);
    report["single_triangle_area"] = triangle_area(tri);
  }
  report["pass"] = ok;
  emit(o, report, csv);
  return ok ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"horizontal-lift and holonomy experiments on embedded disks"};
  app.require_subcommand(1);
  Options o;
  std::string config_path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "key=value config file");
    sub->add_option("--dim", o.dim, "ambient hyperbolic dimension (2..4)");
    sub->add_option("--depth", o.depth, "subdivision depth (0..4)");
    sub->add_option("--disk", o.disk,
                    "disk family: geodesic-disk | tilted-geodesic-disk | "
                    "bumped-disk | csv:<path>");
    sub->add_option("--radius", o.radius, "disk radius");
    sub->add_option("--amplitude", o.amplitude, "bump amplitude");
    sub->add_option("--frequency", o.frequency, "bump angular frequency");
    sub->add_option("--axis", o.axis, "tilt axis (3..dim)");
    sub->add_option("--step", o.step, "integrator arc-length step");
    sub->add_option("--tol", o.tol, "acceptance tolerance");
    sub->add_option("--out", o.out, "output path prefix (.json/.csv)");
    sub->add_option("--seed", o.seed, "random seed");
    sub->add_option("--orientation", o.orientation, "+1 or -1");
  };

  CLI::App* tri = app.add_subcommand(
      "triangle-holonomy", "numeric vs. closed-form triangle holonomy");
  add_common(tri);
  tri->add_option("--vertex", o.vertices,
                  "triangle vertex as dist,angle (give three)");

  CLI::App* audit = app.add_subcommand(
      "subdivision-audit", "build subdivision levels and verify P1-P4");
  add_common(audit);
  audit->add_flag("--corrupt-order", o.corrupt_order,
                  "debug: swap two entries to exercise failure detection");

  CLI::App* thm = app.add_subcommand(
      "theorem", "fiber-curve length/area/holonomy convergence table");
  add_common(thm);

  // Apply the config file before parsing so that explicit flags override
  // it (bound options are written only when the flag is present).
  try {
    for (int i = 1; i + 1 < argc; ++i)
      if (std::string(argv[i]) == "--config") load_config(argv[i + 1], o);
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  CLI11_PARSE(app, argc, argv);

  try {
    validate(o);
    if (tri->parsed()) return cmd_triangle_holonomy(o);
    if (audit->parsed()) return cmd_subdivision_audit(o);
    if (thm->parsed()) return cmd_theorem(o);
    return 2;
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
