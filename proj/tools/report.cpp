#include "report.hpp"

#include "hsurf/bubble.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace hsurf::cli {

namespace {

const json& field(const json& j, const std::string& ctx, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidInput(ctx + "." + key + ": missing");
  return j.at(key);
}

double number(const json& j, const std::string& ctx, const char* key) {
  const json& v = field(j, ctx, key);
  if (!v.is_number()) throw InvalidInput(ctx + "." + key + ": expected a number");
  return v.get<double>();
}

double number_or(const json& j, const std::string& ctx, const char* key, double fallback) {
  return j.contains(key) ? number(j, ctx, key) : fallback;
}

std::vector<double> numbers(const json& v, const std::string& ctx, std::size_t n) {
  if (!v.is_array() || v.size() != n)
    throw InvalidInput(ctx + ": expected an array of " + std::to_string(n) + " numbers");
  std::vector<double> out;
  for (const json& x : v) {
    if (!x.is_number()) throw InvalidInput(ctx + ": expected an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

cplx complex_field(const json& j, const std::string& ctx, const char* key) {
  const auto v = numbers(field(j, ctx, key), ctx + "." + key, 2);
  return {v[0], v[1]};
}

std::string text(const json& j, const std::string& ctx, const char* key) {
  const json& v = field(j, ctx, key);
  if (!v.is_string()) throw InvalidInput(ctx + "." + key + ": expected a string");
  return v.get<std::string>();
}

}  // namespace

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json vec_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(num(v[i]));
  return a;
}

json mat_json(const Eigen::MatrixXd& m) {
  json a = json::array();
  for (int i = 0; i < m.rows(); ++i) a.push_back(vec_json(m.row(i).transpose()));
  return a;
}

json point_json(const Point2& p) { return json::array({p.x(), p.y()}); }

json to_json(const RunConfig& c) {
  json b = json::array();
  for (const BubbleSpec& s : c.bubbles)
    b.push_back({{"a", point_json(s.a)},
                 {"lambda", s.lambda},
                 {"angles", json::array({s.t.theta, s.t.psi, s.t.phi})}});
  return {{"command", c.command}, {"domain", c.domain},     {"datum", c.datum},
          {"bubbles", b},         {"epsilon", c.epsilon},   {"numerics", c.numerics},
          {"outputs", c.outputs}};
}

RunConfig config_from_json(const json& j) {
  if (!j.is_object()) throw InvalidInput("config: expected a JSON object");
  RunConfig c;
  if (j.contains("command")) c.command = text(j, "config", "command");
  if (j.contains("domain")) c.domain = j.at("domain");
  if (j.contains("datum")) c.datum = j.at("datum");
  c.epsilon = number_or(j, "config", "epsilon", 0.0);
  if (j.contains("numerics")) c.numerics = j.at("numerics");
  if (j.contains("outputs")) c.outputs = j.at("outputs");
  if (j.contains("bubbles")) {
    const json& b = j.at("bubbles");
    if (!b.is_array()) throw InvalidInput("config.bubbles: expected an array");
    for (std::size_t i = 0; i < b.size(); ++i) {
      const std::string ctx = "config.bubbles[" + std::to_string(i) + "]";
      BubbleSpec s;
      const auto a = numbers(field(b[i], ctx, "a"), ctx + ".a", 2);
      s.a = Point2(a[0], a[1]);
      s.lambda = number(b[i], ctx, "lambda");
      if (b[i].contains("angles")) {
        const auto t = numbers(b[i].at("angles"), ctx + ".angles", 3);
        s.t = {t[0], t[1], t[2]};
      }
      c.bubbles.push_back(s);
    }
  }
  return c;
}

bool operator==(const RunConfig& a, const RunConfig& b) { return to_json(a) == to_json(b); }

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

RunConfig load_config(const std::string& path) { return config_from_json(read_json_file(path)); }

void write_text(const std::string& path, const std::string& body) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << body;
}

DomainModel make_domain(const json& spec) {
  const std::string kind = text(spec, "domain", "kind");
  const double tau0 = number_or(spec, "domain", "tau0", 0.05);
  if (kind == "disk") return DomainModel::disk(tau0);
  if (kind == "annulus")
    return DomainModel::annulus(number(spec, "domain", "rho"),
                                static_cast<int>(number_or(spec, "domain", "K", 0)), tau0);
  if (kind == "mobius")
    return DomainModel::simply_connected(
        mobius_map(complex_field(spec, "domain", "a"), complex_field(spec, "domain", "b"),
                   complex_field(spec, "domain", "c"), complex_field(spec, "domain", "d")),
        tau0);
  if (kind == "automorphism")
    return DomainModel::simply_connected(
        disk_automorphism(number(spec, "domain", "angle"), complex_field(spec, "domain", "b")), tau0);
  throw InvalidInput("domain.kind: unknown kind '" + kind + "'");
}

DatumPtr make_datum(const json& spec) {
  const std::string name = text(spec, "datum", "name");
  if (name == "zero") return make_zero_datum();
  if (name == "linear") return make_linear_datum();
  if (name == "g_omega") return make_g_omega(number(spec, "datum", "omega"));
  if (name == "G_k_omega") {
    ConstructionParams p;
    p.omega = number(spec, "datum", "omega");
    p.k = static_cast<int>(number(spec, "datum", "k"));
    if (spec.contains("targets")) {
      std::vector<Vec3> v;
      for (const json& t : spec.at("targets")) {
        const auto x = numbers(t, "datum.targets[]", 3);
        v.emplace_back(x[0], x[1], x[2]);
      }
      p.target = SphereConfig::from_centers(v);
    } else {
      p.target = SphereConfig::equally_spaced(p.k);
    }
    return build_G_k_omega(p);
  }
  throw InvalidInput("datum.name: unknown datum '" + name + "'");
}

Configuration make_configuration(const RunConfig& c) {
  Configuration out;
  out.epsilon = c.epsilon;
  if (c.numerics.contains("cbar")) out.cbar = number(c.numerics, "numerics", "cbar");
  for (const BubbleSpec& s : c.bubbles) out.bubbles.push_back({s.a, s.lambda, rotation_from_angles(s.t)});
  return out;
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

}  // namespace

std::string curve_svg(const std::string& title, const std::string& xlabel,
                      const std::vector<Series>& series, bool log_y) {
  const double W = 640, H = 400, l = 70, r = 20, t = 40, b = 50;
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  auto ty = [&](double y) { return log_y ? std::log10(y) : y; };
  for (const Series& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(ty(s.y[i]))) continue;
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, ty(s.y[i]));
      y1 = std::max(y1, ty(s.y[i]));
    }
  if (!(x1 > x0)) x1 = x0 + 1;
  if (!(y1 > y0)) y1 = y0 + 1;
  auto px = [&](double x) { return l + (x - x0) / (x1 - x0) * (W - l - r); };
  auto py = [&](double y) { return H - b - (ty(y) - y0) / (y1 - y0) * (H - t - b); };
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\">" << title << "</text>\n"
    << "<rect x=\"" << l << "\" y=\"" << t << "\" width=\"" << W - l - r << "\" height=\""
    << H - t - b << "\" fill=\"none\" stroke=\"black\"/>\n"
    << "<text x=\"" << W / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">" << xlabel
    << "</text>\n"
    << "<text x=\"" << l << "\" y=\"" << H - b + 16 << "\" text-anchor=\"middle\">" << fmt(x0)
    << "</text>\n<text x=\"" << W - r << "\" y=\"" << H - b + 16 << "\" text-anchor=\"middle\">"
    << fmt(x1) << "</text>\n"
    << "<text x=\"" << l - 6 << "\" y=\"" << H - b << "\" text-anchor=\"end\">"
    << (log_y ? "1e" : "") << fmt(y0) << "</text>\n<text x=\"" << l - 6 << "\" y=\"" << t + 10
    << "\" text-anchor=\"end\">" << (log_y ? "1e" : "") << fmt(y1) << "</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const Series& s = series[k];
    o << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i)
      if (std::isfinite(ty(s.y[i]))) o << px(s.x[i]) << "," << py(s.y[i]) << " ";
    o << "\"/>\n<text x=\"" << l + 10 << "\" y=\"" << t + 16 + 16 * k << "\" fill=\"" << s.color
      << "\">" << s.label << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

std::string spheres_svg(const std::vector<Vec3>& centers, const std::vector<Vec3>& targets) {
  const Vec3 view = Vec3(0.35, -0.45, 0.82).normalized();
  const Vec3 right = Vec3::UnitZ().cross(view).normalized();
  const Vec3 up = view.cross(right);
  const double S = 480, half = S / 2, scale = S / 4.6;
  auto px = [&](const Vec3& p) { return half + scale * p.dot(right); };
  auto py = [&](const Vec3& p) { return half - scale * p.dot(up); };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << S << "\" height=\"" << S
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  // Back to front along the view direction.
  std::vector<std::size_t> order(centers.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return centers[a].dot(view) < centers[b].dot(view); });
  for (std::size_t i : order) {
    const char* c = colors[i % 6];
    o << "<circle cx=\"" << px(centers[i]) << "\" cy=\"" << py(centers[i]) << "\" r=\"" << scale
      << "\" fill=\"" << c << "\" fill-opacity=\"0.25\" stroke=\"" << c << "\"/>\n"
      << "<circle cx=\"" << px(centers[i]) << "\" cy=\"" << py(centers[i])
      << "\" r=\"3\" fill=\"" << c << "\"/>\n";
  }
  for (const Vec3& t : targets)
    o << "<path d=\"M" << px(t) - 5 << "," << py(t) - 5 << " l10,10 m0,-10 l-10,10\" stroke=\"black\"/>\n";
  o << "<circle cx=\"" << half << "\" cy=\"" << half << "\" r=\"2.5\" fill=\"black\"/>\n"
    << "<text x=\"10\" y=\"20\">limiting spheres (dots: centers, crosses: targets)</text>\n</svg>\n";
  return o.str();
}

}  // namespace hsurf::cli
