#include "cli.hpp"
#include "report.hpp"

#include "hsurf/annulus.hpp"
#include "hsurf/bubble.hpp"
#include "hsurf/construction.hpp"
#include "hsurf/direct.hpp"
#include "hsurf/harmonics.hpp"
#include "hsurf/parallel.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <limits>
#include <sstream>

namespace hsurf::cli {

namespace {

struct Outcome {
  json result;
  bool pass = true;
  std::string summary;
};

// Relative paths land in $HSURF_OUT_DIR when it is set.
std::string resolve(const std::string& path) {
  if (path.empty()) return path;
  const char* dir = std::getenv("HSURF_OUT_DIR");
  if (!dir || !*dir || std::filesystem::path(path).is_absolute()) return path;
  return (std::filesystem::path(dir) / path).string();
}

std::string default_report(const std::string& command) {
  const char* dir = std::getenv("HSURF_OUT_DIR");
  if (!dir || !*dir) return "";
  return (std::filesystem::path(dir) / (command + ".json")).string();
}

json parse_spec(const std::string& s, const char* what) {
  if (s.empty()) throw InvalidInput(std::string(what) + ": empty");
  if (s.front() == '{') {
    try {
      return json::parse(s);
    } catch (const json::parse_error& e) {
      throw InvalidInput(std::string(what) + ": " + e.what());
    }
  }
  if (s == "disk") return {{"kind", "disk"}};
  if (s == "zero" || s == "linear") return {{"name", s}};
  return read_json_file(s);
}

Point2 parse_point(const std::string& s) {
  std::istringstream in(s);
  double x, y;
  char comma;
  if (!(in >> x >> comma >> y) || comma != ',' || !(in >> std::ws).eof())
    throw InvalidInput("--point: expected x,y, got '" + s + "'");
  return {x, y};
}

std::string fmt(double v) {
  std::ostringstream o;
  o.precision(10);
  o << v;
  return o.str();
}

// robin ---------------------------------------------------------------------

Outcome cmd_robin(const RunConfig& cfg) {
  const DomainModel d = make_domain(cfg.domain);
  Outcome out;
  json rows = json::array();
  double worst = 0.0;
  for (const BubbleSpec& b : cfg.bubbles) {
    const Point2 a = b.a;
    if (!d.contains(a)) throw InvalidInput("robin: point outside the domain");
    json row = {{"a", point_json(a)}};
    double ht, two;
    if (d.kind() == DomainModel::Kind::Annulus) {
      const double x = a.norm();
      ht = h_tilde_annulus(x, d.annulus_model());
      two = robin_exp_annulus(x, d.annulus_model());
    } else {
      const double H = regular_part(d, a, a);
      ht = h_tilde(d, a);
      two = 2 * std::exp(2 * H);
      row["H"] = H;
      row["grad_h_tilde"] = point_json(h_tilde_gradient(d, a));
    }
    const double rel = std::abs(ht - two) / ht;
    worst = std::max(worst, rel);
    row["h_tilde"] = ht;
    row["two_e2H"] = two;
    row["rel_diff"] = rel;
    rows.push_back(row);
  }
  out.pass = worst < 1e-10;
  out.result = {{"points", rows}, {"max_rel_diff", worst}, {"tolerance", 1e-10}};
  out.summary = "robin: " + std::to_string(rows.size()) + " points, max |H~ - 2e^{2H}|/H~ = " + fmt(worst);
  return out;
}

// annulus-compare -----------------------------------------------------------

Outcome cmd_annulus(const RunConfig& cfg) {
  const double rho = cfg.numerics.at("rho").get<double>();
  const int K = cfg.numerics.at("K").get<int>();
  const int grid = cfg.numerics.at("grid").get<int>();
  const AnnulusModel m = make_annulus(rho, K);
  const RadialCurve c = compare_scan(m, grid);
  Outcome out;
  const std::string csv = cfg.outputs.value("csv", "");
  if (!csv.empty()) {
    std::ostringstream o;
    o.precision(17);
    o << "# rho=" << rho << " K=" << m.K << " prefactor=included\n";
    o << "x,h_tilde,two_e2H\n";
    for (std::size_t i = 0; i < c.x.size(); ++i)
      o << c.x[i] << "," << c.h_tilde[i] << "," << c.two_e2H[i] << "\n";
    write_text(csv, o.str());
  }
  const std::string svg = cfg.outputs.value("svg", "");
  if (!svg.empty()) {
    std::vector<double> lx;
    for (double x : c.x) lx.push_back(std::log(x));
    write_text(svg, curve_svg("annulus rho = " + fmt(rho), "log x",
                              {{"H~", "#1f77b4", lx, c.h_tilde}, {"2 e^{2H}", "#d62728", lx, c.two_e2H}},
                              true));
  }
  const auto ch = critical_points_radial(RadialFunction::HTilde, m);
  const auto ce = critical_points_radial(RadialFunction::TwoE2H, m);
  double shift = ch.size() == ce.size() ? 0.0 : std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ch.size() && ch.size() == ce.size(); ++i)
    shift = std::max(shift, std::abs(ch[i] - ce[i]));
  out.result = {{"rho", rho},
                {"K", m.K},
                {"grid", grid},
                {"max_rel_diff", c.max_rel_diff},
                {"max_tail_bound", c.max_tail_bound},
                {"critical_log_x_h_tilde", ch},
                {"critical_log_x_two_e2H", ce},
                {"critical_shift", num(shift)}};
  out.summary = "annulus-compare: rho = " + fmt(rho) + ", K = " + std::to_string(m.K) +
                ", max rel diff = " + fmt(c.max_rel_diff) + ", critical points " +
                std::to_string(ch.size()) + " / " + std::to_string(ce.size());
  return out;
}

// energy-expand -------------------------------------------------------------

Outcome cmd_energy(const RunConfig& cfg) {
  const DomainModel d = make_domain(cfg.domain);
  const DatumPtr g = make_datum(cfg.datum);
  const Configuration c = make_configuration(cfg);
  const ReducedEnergyReport r = sigma_gradient(c, d, *g);
  Outcome out;
  json grads = json::array();
  for (const Vector6d& v : r.gradient) grads.push_back(vec_json(v));
  out.result = {{"value", r.value},
                {"modeled_energy", r.modeled_energy},
                {"modeled_energy_direct", r.modeled_energy_direct},
                {"gradient", grads},
                {"gradient_coordinates", {"x", "y", "lambda", "theta", "psi", "phi"}},
                {"diagnostics",
                 {{"e_tilde", r.diagnostics.e_tilde},
                  {"e_eps_lambda", r.diagnostics.e_eps_lambda},
                  {"e_pairs", r.diagnostics.e_pairs},
                  {"e_triples", r.diagnostics.e_triples}}}};
  out.summary = "energy-expand: Sigma = " + fmt(r.value) + " for " +
                std::to_string(c.bubbles.size()) + " bubble(s)";
  return out;
}

// reduce-critical -----------------------------------------------------------

Outcome cmd_reduce(const RunConfig& cfg) {
  const DomainModel d = make_domain(cfg.domain);
  const DatumPtr g = make_datum(cfg.datum);
  const Configuration c = make_configuration(cfg);
  Outcome out;
  json bubbles = json::array();
  for (const BubbleParams& b : c.bubbles) {
    json e = {{"a", point_json(b.center)}, {"h_tilde", h_tilde(d, b.center)}};
    const double dv = d_Rinv_g(*g, b.rotation, b.center);
    e["d_Rinv_g"] = dv;
    if (dv > 0 && c.epsilon > 0) e["optimal_lambda"] = optimal_lambda(c.epsilon, b.center, b.rotation, d, *g);
    if (!g->is_zero()) {
      const auto [plus, minus] = rotation_extremal_datum(*g, b.center);
      e["extremal_datum"] = {plus, minus};
      e["W"] = concentration_W(*g, d, b.center);
    }
    bubbles.push_back(e);
  }
  out.result["bubbles"] = bubbles;
  if (c.bubbles.size() == 2)
    out.result["two_bubble_extremal"] = two_bubble_extremal(c.bubbles[0].center, c.bubbles[1].center, d);
  const int scan = cfg.numerics.value("scan", 0);
  if (scan > 0 && !g->is_zero() && d.kind() == DomainModel::Kind::Disk) {
    // W on a polar grid of the disk; its maxima locate concentration points.
    double best = -1;
    Point2 arg = Point2::Zero();
    for (int i = 0; i < scan; ++i)
      for (int j = 0; j < 4 * scan; ++j) {
        const double r = (1 - d.tau0()) * (i + 0.5) / scan, t = 2 * kPi * j / (4 * scan);
        const Point2 p(r * std::cos(t), r * std::sin(t));
        double w;
        try {
          w = concentration_W(*g, d, p);
        } catch (const DegenerateDatum&) {
          continue;
        }
        if (w > best) {
          best = w;
          arg = p;
        }
      }
    out.result["W_scan"] = {{"max", best}, {"argmax", point_json(arg)}, {"n", scan}};
  }
  out.summary = "reduce-critical: " + std::to_string(c.bubbles.size()) + " bubble(s) analyzed";
  return out;
}

// construct-spheres ---------------------------------------------------------

json certificate_json(const Certificate& c) {
  return {{"pass", c.pass()},
          {"boundary_ok", c.boundary_ok},
          {"hessian_pd", c.hessian_pd},
          {"block_margin", c.block_margin},
          {"min_margin", c.min_margin},
          {"worst_block", c.worst_block},
          {"worst_sample", vec_json(c.worst_sample)},
          {"samples", c.samples},
          {"hessian_min_eig", c.hessian_min_eig},
          {"hessian_asymmetry", c.hessian_asymmetry}};
}

json critical_json(const CriticalResult& r, const ConstructionParams& p) {
  json bubbles = json::array();
  for (int j = 0; j < p.k; ++j) {
    const BubbleParams& b = r.config.bubbles[j];
    bubbles.push_back({{"a", point_json(b.center)},
                       {"lambda", b.scale},
                       {"rotation", mat_json(b.rotation)},
                       {"chi", vec_json(r.chi.segment<6>(6 * j))}});
  }
  return {{"bubbles", bubbles},
          {"grad_norm", r.grad_norm},
          {"iterations", r.iterations},
          {"trajectory", r.trajectory},
          {"certificate", certificate_json(r.certificate)}};
}

Outcome cmd_construct(const RunConfig& cfg, ConstructionParams p) {
  Outcome out;
  CriticalResult r;
  try {
    r = find_critical_configuration(p);
  } catch (const CertificateFailure& e) {
    out.pass = false;
    out.result = critical_json(e.result(), p);
    out.result["failure"] = e.what();
    out.summary = std::string("construct-spheres: ") + e.what();
    return out;
  } catch (const SearchFailure& e) {
    out.pass = false;
    out.result = {{"failure", e.what()}, {"trajectory", e.trajectory()}};
    out.summary = std::string("construct-spheres: ") + e.what();
    return out;
  }
  out.result = critical_json(r, p);
  const SphereConfig s = limiting_spheres(r.config);
  json centers = json::array();
  double dist = 0.0;
  for (int j = 0; j < p.k; ++j) {
    centers.push_back(vec_json(s.centers[j]));
    dist = std::max(dist, (s.centers[j] - p.target.centers[j]).norm());
  }
  out.result["sphere_centers"] = centers;
  out.result["max_center_distance"] = dist;
  const std::string svg = cfg.outputs.value("svg", "");
  if (!svg.empty()) write_text(svg, spheres_svg(s.centers, p.target.centers));
  out.pass = r.certificate.pass();
  out.summary = "construct-spheres: |grad| = " + fmt(r.grad_norm) + ", certificate " +
                (out.pass ? "pass" : "FAIL") + ", min margin " + fmt(r.certificate.min_margin) +
                ", max center distance " + fmt(dist);
  return out;
}

// kernel --------------------------------------------------------------------

Outcome cmd_kernel(const RunConfig& cfg) {
  const int nmax = cfg.numerics.at("nmax").get<int>();
  const double tol = cfg.numerics.at("tol").get<double>();
  if (nmax < 4) throw InvalidInput("--nmax: must be at least 4");
  Outcome out;
  json dims = json::object(), margins = json::object(), smax = json::object();
  int low = 0;
  bool ok = true;
  for (int n = 0; n <= nmax; ++n) {
    const KernelInfo k = kernel_info(n, tol);
    dims[std::to_string(n)] = k.dim;
    margins[std::to_string(n)] = num(k.margin);
    smax[std::to_string(n)] = k.sigma_max;
    if (n <= 3) low += k.dim;
    if (n == 0 && k.dim != 3) ok = false;
    if (n >= 4 && k.dim != 0) ok = false;
  }
  if (low != 9) ok = false;
  json bound = {{"value", appendix_bound()}};
  json admissible = json::object();
  for (int n = 1; n <= nmax; ++n) admissible[std::to_string(n)] = appendix_inequality_check(n);
  bound["admissible"] = admissible;
  if (!appendix_inequality_check(3) || appendix_inequality_check(4)) ok = false;
  json family = json::array();
  for (const KernelSample& s : kernel_family_members()) {
    const KernelResidual r = verify_polynomial_kernel(s);
    family.push_back({{"fd", r.fd}, {"exact", r.exact}});
    if (!(r.fd < 1e-6)) ok = false;
  }
  const SpectralGapReport sg = spectral_gap_check(nmax);
  json gap = {{"pass", sg.pass}, {"delta_value", sg.delta_value},
              {"max_kernel_value", sg.max_kernel_value}};
  json mins = json::array();
  for (double v : sg.min_nonkernel) mins.push_back(num(v));
  gap["min_nonkernel"] = mins;
  ok = ok && sg.pass;
  out.pass = ok;
  out.result = {{"dims", dims},
                {"total_low_degree", low},
                {"margins", margins},
                {"sigma_max", smax},
                {"bound", bound},
                {"polynomial_family_residuals", family},
                {"spectral_gap", gap}};
  out.summary = "kernel: dims n<=3 total " + std::to_string(low) + ", checks " + (ok ? "pass" : "FAIL");
  return out;
}

// validate ------------------------------------------------------------------

Resolution resolution_from(const json& n) {
  Resolution r;
  r.n_r = n.value("n_r", r.n_r);
  r.n_theta = n.value("n_theta", r.n_theta);
  r.panel_order = n.value("panel_order", r.panel_order);
  r.patch_theta = n.value("patch_theta", r.patch_theta);
  r.n_boundary = n.value("n_boundary", r.n_boundary);
  return r;
}

Outcome cmd_validate(const RunConfig& cfg) {
  const std::string suite = cfg.numerics.at("suite").get<std::string>();
  const auto lambdas = cfg.numerics.at("lambdas").get<std::vector<double>>();
  const double kappa = cfg.numerics.at("kappa").get<double>();
  const Resolution res = resolution_from(cfg.numerics);
  const DatumPtr g = make_datum(cfg.datum);
  Outcome out;
  if (suite == "one-bubble") {
    const BubbleSpec& b = cfg.bubbles.at(0);
    const OneBubbleReport r =
        validate_one_bubble_expansion(b.a, rotation_from_angles(b.t), lambdas, kappa, *g, res);
    json residuals = json::array();
    for (double v : r.residuals) residuals.push_back(v);
    out.result = {{"lambdas", r.lambdas},   {"energies", r.energies},
                  {"model", r.model},       {"residuals", residuals},
                  {"slopes", r.slopes},     {"c_inf", r.c_inf},
                  {"c_direct", r.c_direct}, {"c_reduced", r.c_reduced},
                  {"constant_ok", r.constant_ok}, {"slope_ok", r.slope_ok},
                  {"datum_quad", r.datum_quad}, {"datum_closed", r.datum_closed},
                  {"datum_rel_error", r.datum_rel_error}, {"datum_ok", r.datum_ok}};
    out.pass = r.pass();
    out.summary = "validate one-bubble: c_inf = " + fmt(r.c_inf) + " (4pi/3 = " + fmt(r.c_direct) +
                  "), " + (out.pass ? "pass" : "FAIL");
  } else if (suite == "pair") {
    const BubbleSpec &b1 = cfg.bubbles.at(0), &b2 = cfg.bubbles.at(1);
    const PairReport r = validate_pair_interaction(b1.a, b2.a, rotation_from_angles(b1.t),
                                                   rotation_from_angles(b2.t), lambdas, res);
    out.result = {{"lambdas", r.lambdas},
                  {"coef_quad", r.coef_quad},
                  {"coef_closed", r.coef_closed},
                  {"rel_error", r.rel_error},
                  {"coef_extrapolated", r.coef_extrapolated},
                  {"third_row_rel", r.third_row_rel},
                  {"diagonal_ok", r.diagonal_ok},
                  {"third_row_ok", r.third_row_ok}};
    out.pass = r.pass();
    out.summary = "validate pair: rel error at lambda = " + fmt(lambdas.back()) + " is " +
                  fmt(r.rel_error_last) + ", " + (out.pass ? "pass" : "FAIL");
  } else if (suite == "datum") {
    std::vector<BubbleParams> templ;
    for (const BubbleSpec& b : cfg.bubbles) templ.push_back({b.a, 1.0, rotation_from_angles(b.t)});
    const DatumCrossReport r = validate_datum_cross_term(templ, *g, lambdas, kappa, res);
    out.result = {{"eps", r.eps},           {"quad", r.quad},         {"closed", r.closed},
                  {"remainder", r.remainder}, {"slopes", r.slopes}, {"min_slope", r.min_slope},
                  {"pass", r.pass}};
    out.pass = r.pass;
    out.summary = "validate datum: min remainder slope " + fmt(r.min_slope) + ", " +
                  (out.pass ? "pass" : "FAIL");
  } else {
    throw InvalidInput("--suite: expected one-bubble, pair or datum");
  }
  return out;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"Bubble reduction toolkit for the H-surface equation"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json_out = false;
  int threads = 0;
  app.add_flag("--json", json_out, "Print the report as JSON on stdout");
  app.add_option("--threads", threads, "Worker cap (0: hardware concurrency)")->check(CLI::NonNegativeNumber);

  RunConfig cfg;
  std::string out_path, config_path, domain_spec = "disk", datum_spec, csv_path, svg_path, targets_path;
  std::vector<std::string> points;

  auto* robin = app.add_subcommand("robin", "H~ against 2 e^{2H} at points of a domain");
  robin->add_option("--domain", domain_spec, "disk, inline JSON or a JSON file");
  robin->add_option("--point", points, "x,y (repeatable)");
  robin->add_option("--config", config_path, "Run config supplying domain and bubble centers");
  robin->add_option("--out", out_path, "JSON report");

  double rho = 0;
  int K = 0, grid = 501;
  auto* ann = app.add_subcommand("annulus-compare", "H~ and 2 e^{2H} along the radial line of an annulus");
  ann->add_option("--rho", rho, "Annulus radius")->required()->check(CLI::PositiveNumber);
  ann->add_option("--k", K, "Deck pairs (0: automatic)")->check(CLI::NonNegativeNumber);
  ann->add_option("--grid", grid, "Grid points")->check(CLI::Range(16, 10000000));
  ann->add_option("--out", csv_path, "CSV curve");
  ann->add_option("--svg", svg_path, "SVG figure");
  std::string report_path;
  ann->add_option("--report", report_path, "JSON report");

  auto* energy = app.add_subcommand("energy-expand", "Reduced energy, gradient and error scales");
  energy->add_option("--config", config_path, "Run config")->required();
  energy->add_option("--out", out_path, "JSON report");

  int scan = 0;
  auto* reduce = app.add_subcommand("reduce-critical", "Critical scales, extremal rotations and W");
  reduce->add_option("--config", config_path, "Run config")->required();
  reduce->add_option("--scan", scan, "Polar grid size for the W scan (0: off)")->check(CLI::NonNegativeNumber);
  reduce->add_option("--out", out_path, "JSON report");

  ConstructionParams cp;
  cp.k = 3;
  auto* cons = app.add_subcommand("construct-spheres", "Critical configuration with degree certificate");
  cons->add_option("--k", cp.k, "Number of bubbles")->check(CLI::PositiveNumber);
  cons->add_option("--omega", cp.omega, "omega in (0, 1)");
  cons->add_option("--eps", cp.epsilon, "epsilon");
  cons->add_option("--mu", cp.mu, "Box size");
  cons->add_option("--targets", targets_path, "JSON list of unit vectors (default: equally spaced)");
  cons->add_option("--face-samples", cp.face_samples, "Samples per box edge");
  cons->add_option("--seed", cp.seed, "Seed of the random certificate contexts");
  cons->add_option("--out", out_path, "JSON report");
  cons->add_option("--svg", svg_path, "SVG of the limiting spheres");

  int nmax = 12;
  double tol = 1e-8;
  auto* kern = app.add_subcommand("kernel", "Kernel of the linearized operator by degree");
  kern->add_option("--nmax", nmax, "Largest degree")->check(CLI::Range(4, 60));
  kern->add_option("--tol", tol, "Relative singular value threshold")->check(CLI::PositiveNumber);
  kern->add_option("--out", out_path, "JSON report");

  std::string suite;
  std::vector<double> lambdas;
  double kappa = 1.0;
  Resolution res;
  auto* val = app.add_subcommand("validate", "Quadrature checks of the energy expansions");
  val->add_option("--suite", suite, "one-bubble, pair or datum")
      ->required()
      ->check(CLI::IsMember({"one-bubble", "pair", "datum"}));
  val->add_option("--lambdas", lambdas, "Increasing scales");
  val->add_option("--kappa", kappa, "eps = kappa/lambda");
  val->add_option("--datum", datum_spec, "zero, linear, inline JSON or a JSON file");
  val->add_option("--config", config_path, "Run config supplying bubbles and datum");
  val->add_option("--n-r", res.n_r);
  val->add_option("--n-theta", res.n_theta);
  val->add_option("--panel-order", res.panel_order);
  val->add_option("--patch-theta", res.patch_theta);
  val->add_option("--n-boundary", res.n_boundary);
  val->add_option("--out", out_path, "JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n" << app.help();
    return 1;
  }

  try {
    set_thread_cap(threads);
    Outcome out;
    if (!config_path.empty()) cfg = load_config(config_path);
    const std::string command = app.get_subcommands().front()->get_name();
    cfg.command = command;
    cfg.numerics["threads"] = threads;

    if (robin->parsed()) {
      if (config_path.empty() || robin->count("--domain")) cfg.domain = parse_spec(domain_spec, "--domain");
      for (const std::string& p : points) cfg.bubbles.push_back({parse_point(p), 1.0, {}});
      if (cfg.bubbles.empty())
        for (const Point2& p : {Point2(0, 0), Point2(0.5, 0), Point2(0.3, -0.4)})
          cfg.bubbles.push_back({p, 1.0, {}});
      if (!out_path.empty()) cfg.outputs["report"] = resolve(out_path);
      out = cmd_robin(cfg);
    } else if (ann->parsed()) {
      cfg.numerics.update({{"rho", rho}, {"K", K}, {"grid", grid}});
      if (!csv_path.empty()) cfg.outputs["csv"] = resolve(csv_path);
      if (!svg_path.empty()) cfg.outputs["svg"] = resolve(svg_path);
      if (!report_path.empty()) cfg.outputs["report"] = resolve(report_path);
      out = cmd_annulus(cfg);
    } else if (energy->parsed()) {
      if (!out_path.empty()) cfg.outputs["report"] = resolve(out_path);
      out = cmd_energy(cfg);
    } else if (reduce->parsed()) {
      cfg.numerics["scan"] = scan;
      if (!out_path.empty()) cfg.outputs["report"] = resolve(out_path);
      out = cmd_reduce(cfg);
    } else if (cons->parsed()) {
      if (targets_path.empty()) {
        cp.target = SphereConfig::equally_spaced(cp.k);
      } else {
        json t = read_json_file(targets_path);
        if (t.is_object() && t.contains("targets")) t = t.at("targets");
        std::vector<Vec3> v;
        for (const json& x : t) {
          const auto c = x.get<std::vector<double>>();
          if (c.size() != 3) throw InvalidInput("--targets: each entry needs 3 numbers");
          v.emplace_back(c[0], c[1], c[2]);
        }
        cp.target = SphereConfig::from_centers(v);
      }
      cp.validate();
      json targets = json::array();
      for (const Vec3& v : cp.target.centers) targets.push_back(vec_json(v));
      cfg.epsilon = cp.epsilon;
      cfg.datum = {{"name", "G_k_omega"}, {"omega", cp.omega}, {"k", cp.k}, {"targets", targets}};
      cfg.numerics.update({{"k", cp.k},
                           {"omega", cp.omega},
                           {"mu", cp.mu},
                           {"face_samples", cp.face_samples},
                           {"random_contexts", cp.random_contexts},
                           {"seed", cp.seed}});
      if (!out_path.empty()) cfg.outputs["report"] = resolve(out_path);
      if (!svg_path.empty()) cfg.outputs["svg"] = resolve(svg_path);
      out = cmd_construct(cfg, cp);
    } else if (kern->parsed()) {
      cfg.numerics.update({{"nmax", nmax}, {"tol", tol}});
      if (!out_path.empty()) cfg.outputs["report"] = resolve(out_path);
      out = cmd_kernel(cfg);
    } else if (val->parsed()) {
      if (lambdas.empty())
        lambdas = suite == "pair" ? std::vector<double>{20, 40, 80} : std::vector<double>{10, 20, 40, 80};
      if (!datum_spec.empty()) {
        cfg.datum = parse_spec(datum_spec, "--datum");
      } else if (config_path.empty()) {
        cfg.datum = suite == "datum" ? json{{"name", "g_omega"}, {"omega", 0.5}} : json{{"name", "zero"}};
      }
      if (cfg.bubbles.empty()) {
        if (suite == "one-bubble") cfg.bubbles = {{Point2(0, 0), 1.0, {}}};
        else cfg.bubbles = {{Point2(-0.3, 0), 1.0, {}}, {Point2(0.3, 0), 1.0, {}}};
      }
      cfg.numerics.update({{"suite", suite},
                           {"lambdas", lambdas},
                           {"kappa", kappa},
                           {"n_r", res.n_r},
                           {"n_theta", res.n_theta},
                           {"panel_order", res.panel_order},
                           {"patch_theta", res.patch_theta},
                           {"n_boundary", res.n_boundary}});
      if (!out_path.empty()) cfg.outputs["report"] = resolve(out_path);
      out = cmd_validate(cfg);
    }

    const json report = {{"config", to_json(cfg)}, {"pass", out.pass}, {"result", out.result}};
    std::string path = cfg.outputs.value("report", "");
    if (path.empty()) path = default_report(command);
    if (!path.empty()) write_text(path, report.dump(2) + "\n");
    if (json_out)
      std::cout << report.dump(2) << "\n";
    else
      std::cout << out.summary << "\n";
    return out.pass ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace hsurf::cli
