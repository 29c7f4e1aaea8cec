// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include "hsurf/annulus.hpp"
#include "hsurf/bubble.hpp"
#include "hsurf/construction.hpp"
#include "hsurf/direct.hpp"
#include "hsurf/harmonics.hpp"
#include "hsurf/reduced.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

using namespace hsurf;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) {
  char b[32];
  std::snprintf(b, sizeof b, "%.4g", v);
  return b;
}

Point2 random_in_disk(std::mt19937_64& rng, double r) {
  std::uniform_real_distribution<double> u(0, 1);
  const double s = r * std::sqrt(u(rng)), t = 2 * kPi * u(rng);
  return {s * std::cos(t), s * std::sin(t)};
}

Rotation3 random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0, 1);
  return Eigen::Quaterniond(n(rng), n(rng), n(rng), n(rng)).normalized().toRotationMatrix();
}

nlohmann::json golden(const char* name) {
  std::ifstream in(std::string(HSURF_GOLDEN_DIR) + "/" + name);
  if (!in) throw Error(std::string("missing golden file ") + name);
  return nlohmann::json::parse(in);
}

Verdict constants() {
  const double a0 = constant_A0(), z = identity_integral_zero();
  return {std::abs(a0 - kPi / 2) < 1e-9 && std::abs(z) < 1e-10,
          "|A0 - pi/2| = " + fmt(std::abs(a0 - kPi / 2)) + ", |identity integral| = " + fmt(std::abs(z))};
}

Verdict bubble_pde() {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> lam(0.5, 50), u(0, 1);
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const BubbleParams b{random_in_disk(rng, 0.9), lam(rng), random_rotation(rng)};
    // Half the points near the center, where the derivatives are largest.
    const Point2 x = u(rng) < 0.5 ? random_in_disk(rng, 1.0) : Point2(b.center + random_in_disk(rng, 3 / b.scale));
    worst = std::max(worst, bubble_pde_residual(b, x));
  }
  return {worst < 1e-8, "max residual " + fmt(worst) + " over 1000 samples"};
}

Verdict pohozaev() {
  std::mt19937_64 rng(102);
  std::uniform_real_distribution<double> u(-1, 1);
  double worst = 0;
  for (int i = 0; i < 100; ++i) {
    Eigen::Matrix<double, 3, 10> c;
    for (int r = 0; r < 3; ++r)
      for (int k = 0; k < 10; ++k) c(r, k) = u(rng);
    const double x = u(rng), y = u(rng);
    Eigen::Matrix<double, 10, 1> m, mx, my;
    m << 1, x, y, x * x, x * y, y * y, x * x * x, x * x * y, x * y * y, y * y * y;
    mx << 0, 1, 0, 2 * x, y, 0, 3 * x * x, 2 * x * y, y * y, 0;
    my << 0, 0, 1, 0, x, 2 * y, 0, x * x, 2 * x * y, 3 * y * y;
    worst = std::max(worst, std::abs(pohozaev_residual({c * m, c * mx, c * my}, {x, y})));
  }
  return {worst < 1e-12, "max residual " + fmt(worst) + " over 100 cubic fields"};
}

Verdict robin() {
  std::mt19937_64 rng(103);
  double worst = 0;
  const DomainModel disk = DomainModel::disk();
  for (int i = 0; i < 50; ++i) {
    const Point2 a = random_in_disk(rng, 0.95);
    worst = std::max(worst, std::abs(h_tilde(disk, a) - 2 * std::exp(2 * regular_part(disk, a, a))));
  }
  const DomainModel m =
      DomainModel::simply_connected(mobius_map(cplx(1, 0.2), cplx(-0.3, 0.1), cplx(0.1, -0.05), cplx(2, 0.3)));
  for (int i = 0; i < 20;) {
    const Point2 a = random_in_disk(rng, 2.0);
    if (!m.contains(a) || m.boundary_distance(a) < 0.05) continue;
    worst = std::max(worst, std::abs(h_tilde(m, a) - 2 * std::exp(2 * regular_part(m, a, a))));
    ++i;
  }
  return {worst < 1e-10, "max |H~ - 2e^{2H}| = " + fmt(worst) + " (50 disk, 20 Mobius points)"};
}

Verdict annulus() {
  const nlohmann::json g = golden("annulus.json");
  const RadialCurve e = compare_scan(make_annulus(std::exp(1.0), 100), 2001);
  const AnnulusModel wide = make_annulus(std::exp(3.5), 100);
  const RadialCurve w = compare_scan(wide, 2001);
  const double ge = g["e"]["max_rel_diff"], gw = g["log3.5"]["max_rel_diff"];
  const auto ch = critical_points_radial(RadialFunction::HTilde, wide);
  const auto ce = critical_points_radial(RadialFunction::TwoE2H, wide);
  const bool same = ch.size() == 1 && ce.size() == 1;
  const double shift = same ? std::abs(ch[0] - ce[0]) : 0.0;
  const bool gold = std::abs(e.max_rel_diff - ge) < 1e-6 * ge && std::abs(w.max_rel_diff - gw) < 1e-6 * gw && same &&
                    std::abs(ch[0] - g["log3.5"]["critical_h_tilde"][0].get<double>()) < 1e-8 &&
                    std::abs(ce[0] - g["log3.5"]["critical_two_e2H"][0].get<double>()) < 1e-8;
  const bool shape = e.max_rel_diff < 1e-3 && w.max_rel_diff > 0.1;
  return {gold && shape && shift > 1e-4,
          "max rel diff " + fmt(e.max_rel_diff) + " (rho = e) vs " + fmt(w.max_rel_diff) +
              " (log rho = 3.5), golden match " + (gold ? "yes" : "no") + ", critical shift " + fmt(shift)};
}

Verdict one_bubble() {
  const OneBubbleReport r =
      validate_one_bubble_expansion({0, 0}, Rotation3::Identity(), {10, 20, 40, 80}, 0.0, *make_zero_datum());
  const double slope = r.slopes.empty() ? 0.0 : *std::max_element(r.slopes.begin(), r.slopes.end());
  const double dc = std::abs(r.c_inf - 4 * kPi / 3);
  return {dc < 1e-3 && slope <= -2.2,
          "|c - 4pi/3| = " + fmt(dc) + ", worst residual slope " + fmt(slope)};
}

Verdict pair() {
  const PairReport r =
      validate_pair_interaction({-0.3, 0}, {0.3, 0}, Rotation3::Identity(), Rotation3::Identity(), {20, 40, 80});
  return {r.rel_error_last < 0.03 && r.third_row_rel < 0.10,
          "rel error at lambda = 80: " + fmt(r.rel_error_last) + ", third-row share " + fmt(r.third_row_rel)};
}

Verdict anchor() {
  const double w = 0.95, eps = 1e-3, q = 1 - w * w;
  ConstructionParams p;
  p.omega = w;
  p.epsilon = eps;
  p.target = SphereConfig::from_centers({Vec3(0, 0, -1)});
  const DatumPtr G = build_G_k_omega(p);
  const BoxTmu box = BoxTmu::make(p);
  const Eigen::VectorXd chi = box.anchor;
  const double grad = construction_gradient(p, *G, chi).norm();
  const Eigen::MatrixXd h = construction_hessian(p, *G, chi);
  const Matrix6d a = matrix_A(w, eps), model = 8 * (kPi / 2) * 2 * eps * eps / (q * q) * a;
  double worst = 0;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      worst = std::max(worst, std::abs(h(i, j) - model(i, j)) / std::sqrt(model(i, i) * model(j, j)));
  const double min_eig = Eigen::SelfAdjointEigenSolver<Matrix6d>(a).eigenvalues().minCoeff();
  return {grad < 1e-10 && worst < 1e-4 && min_eig > 0,
          "|grad| = " + fmt(grad) + ", Hessian rel deviation " + fmt(worst) + ", min eig A = " + fmt(min_eig)};
}

Verdict pipeline() {
  const nlohmann::json g = golden("construction_k3.json");
  ConstructionParams p;
  p.k = 3;
  p.omega = 0.95;
  p.epsilon = 1e-3;
  p.mu = 0.1;
  p.target = SphereConfig::equally_spaced(3);
  const CriticalResult r = find_critical_configuration(p);
  const BoxTmu box = BoxTmu::make(p);
  bool inside = true;
  for (int j = 0; j < 3; ++j) inside = inside && box.contains(r.chi.segment<6>(6 * j));
  const SphereConfig s = limiting_spheres(r.config);
  double dist = 0;
  for (int j = 0; j < 3; ++j) dist = std::max(dist, (s.centers[j] - p.target.centers[j]).norm());
  const double bound = g["center_distance_bound"];
  return {r.grad_norm < 1e-10 && inside && r.certificate.pass() && dist < bound,
          "|grad| = " + fmt(r.grad_norm) + ", min margin " + fmt(r.certificate.min_margin) + " over " +
              std::to_string(r.certificate.samples) + " samples, max center distance " + fmt(dist) + " (bound " +
              fmt(bound) + ")"};
}

Verdict kernel() {
  bool ok = kernel_dimension(0) == 3;
  int low = 0;
  std::ostringstream margins;
  for (int n = 0; n <= 12; ++n) {
    const KernelInfo k = kernel_info(n);
    if (n <= 3) low += k.dim;
    if (n >= 4) {
      ok = ok && k.dim == 0;
      if (n == 4 || n == 12) margins << " m" << n << "=" << fmt(k.margin);
    }
  }
  ok = ok && low == 9;
  double worst = 0;
  for (const KernelSample& s : kernel_family_members()) worst = std::max(worst, verify_polynomial_kernel(s).fd);
  ok = ok && worst < 1e-6 && appendix_inequality_check(3) && !appendix_inequality_check(4);
  return {ok, "dims n<=3 total " + std::to_string(low) + ", margins" + margins.str() +
                  ", family residual " + fmt(worst) + ", bound " + fmt(appendix_bound())};
}

Verdict gradient() {
  std::mt19937_64 rng(111);
  std::uniform_real_distribution<double> u(0, 1);
  const DatumPtr data[] = {make_zero_datum(), make_linear_datum(), make_g_omega(0.5)};
  const DomainModel doms[] = {DomainModel::disk(),
                              DomainModel::simply_connected(disk_automorphism(0.3, {0.1, -0.2}))};
  double worst = 0;
  for (int n = 0; n < 20; ++n) {
    Configuration c;
    c.epsilon = 0.05;
    while (static_cast<int>(c.bubbles.size()) < 1 + n % 3) {
      const Point2 p = random_in_disk(rng, 0.7);
      bool ok = true;
      for (const BubbleParams& b : c.bubbles) ok = ok && (b.center - p).norm() > 0.25;
      if (ok) c.bubbles.push_back({p, (0.5 + 2 * u(rng)) / c.epsilon, random_rotation(rng)});
    }
    const DomainModel& d = doms[n % 2];
    const BoundaryDatum& g = *data[n % 3];
    const ReducedEnergyReport r = sigma_gradient(c, d, g);
    for (std::size_t i = 0; i < c.bubbles.size(); ++i) {
      const double hp = 1e-5, hl = 1e-5 * c.bubbles[i].scale;
      for (int q = 0; q < 6; ++q) {
        auto at = [&](double s) {
          Configuration x = c;
          BubbleParams& b = x.bubbles[i];
          if (q < 2) b.center[q] += s * hp;
          if (q == 2) b.scale += s * hl;
          if (q >= 3) {
            AngleTriple t;
            (q == 3 ? t.theta : q == 4 ? t.psi : t.phi) += s * hp;
            b.rotation = rotation_relative(c.bubbles[i].rotation, t);
          }
          return sigma_total(x, d, g);
        };
        const double fd = (at(1) - at(-1)) / (2 * (q == 2 ? hl : hp));
        worst = std::max(worst, std::abs(r.gradient[i][q] - fd) / (1 + std::abs(r.gradient[i][q])));
      }
    }
  }
  return {worst < 1e-5, "max mixed error " + fmt(worst) + " over 20 configurations"};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double limit;  // seconds, 0: none
    std::function<Verdict()> run;
  };
  const Criterion all[] = {
      {"constants", 1, constants},
      {"bubble PDE", 5, bubble_pde},
      {"Pohozaev identity", 0, pohozaev},
      {"Robin consistency", 0, robin},
      {"annulus figures", 10, annulus},
      {"one-bubble expansion", 120, one_bubble},
      {"pairwise interaction", 120, pair},
      {"g_omega anchor Hessian", 0, anchor},
      {"three-sphere construction", 60, pipeline},
      {"linearized kernel", 30, kernel},
      {"gradient contract", 0, gradient},
  };
  int failed = 0, i = 0;
  for (const Criterion& c : all) {
    ++i;
    Verdict v;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double t = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = c.limit == 0 || t < c.limit;
    const bool pass = v.pass && in_time;
    failed += !pass;
    std::printf("%s %2d %s: %s; %.2f s%s\n", pass ? "PASS" : "FAIL", i, c.name, v.detail.c_str(), t,
                in_time ? "" : " (over time limit)");
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
