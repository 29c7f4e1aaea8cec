#pragma once

#include "hsurf/construction.hpp"
#include "hsurf/datum.hpp"
#include "hsurf/green.hpp"
#include "hsurf/reduced.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace hsurf::cli {

using nlohmann::json;

struct BubbleSpec {
  Point2 a = Point2::Zero();
  double lambda = 1.0;
  AngleTriple t;
};

// Everything a command needs; embedded verbatim in every report.
struct RunConfig {
  std::string command;
  json domain = {{"kind", "disk"}};
  json datum = {{"name", "zero"}};
  std::vector<BubbleSpec> bubbles;
  double epsilon = 0.0;
  json numerics = json::object();
  json outputs = json::object();
};

json to_json(const RunConfig& c);
// Throws InvalidInput naming the offending field.
RunConfig config_from_json(const json& j);
RunConfig load_config(const std::string& path);
bool operator==(const RunConfig& a, const RunConfig& b);

// {"kind": "disk" | "annulus" (rho, K) | "mobius" (a, b, c, d as [re, im]) |
//  "automorphism" (angle, b)}
DomainModel make_domain(const json& spec);
// {"name": "zero" | "linear" | "g_omega" (omega) | "G_k_omega" (omega, k, targets)}
DatumPtr make_datum(const json& spec);
Configuration make_configuration(const RunConfig& c);

json vec_json(const Eigen::VectorXd& v);
json mat_json(const Eigen::MatrixXd& m);
json point_json(const Point2& p);
// NaN and infinities become null.
json num(double v);

json read_json_file(const std::string& path);
void write_text(const std::string& path, const std::string& text);

struct Series {
  std::string label, color;
  std::vector<double> x, y;
};
// Self-contained polyline plot; log_y plots log10 y.
std::string curve_svg(const std::string& title, const std::string& xlabel,
                      const std::vector<Series>& series, bool log_y);
// Orthographic view of the unit spheres centered at c_j, targets marked.
std::string spheres_svg(const std::vector<Vec3>& centers, const std::vector<Vec3>& targets);

}  // namespace hsurf::cli
