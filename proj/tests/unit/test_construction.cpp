#include "helpers.hpp"

#include "hsurf/bubble.hpp"
#include "hsurf/construction.hpp"

#include <doctest.h>
#include <json.hpp>

#include <fstream>

using namespace hsurf;
using hsurf::test::random_in_disk;
using hsurf::test::rel_err;

namespace {

const double A0 = kPi / 2;

nlohmann::json golden() {
  std::ifstream in(HSURF_GOLDEN_DIR "/construction_k3.json");
  REQUIRE(in.good());
  return nlohmann::json::parse(in);
}

ConstructionParams params(int k, double omega = 0.95) {
  ConstructionParams p;
  p.k = k;
  p.omega = omega;
  p.target = k == 1 ? SphereConfig::from_centers({Vec3(0, 0, -1)}) : SphereConfig::equally_spaced(k);
  return p;
}

// f_single in (x, y, lambda, theta, psi, phi) with R = rotation_from_angles(t).
double f_chart(double eps, const BoundaryDatum& g, const Vector6d& v) {
  const BubbleParams b{{v[0], v[1]}, v[2], rotation_from_angles({v[3], v[4], v[5]})};
  return f_single(eps, b, DomainModel::disk(), g);
}

}  // namespace

TEST_CASE("g_omega") {
  const double w = 0.7;
  CHECK(g_omega(w, {0, 0}).norm() == 0.0);
  CHECK((g_omega(w, {1, 0}) - Vec3(1 / (1 - w), 0, 0)).norm() < 1e-14);
  // Boundary values are the Kelvin datum (x - w, y)/((x - w)^2 + y^2).
  for (double t : {0.3, 1.7, 2.9, 4.4}) {
    const Point2 x(std::cos(t), std::sin(t));
    const double d = (x.x() - w) * (x.x() - w) + x.y() * x.y();
    CHECK((g_omega(w, x) - Vec3((x.x() - w) / d, x.y() / d, 0)).norm() < 1e-13);
  }
  const DatumPtr g = make_g_omega(w);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    const Point2 x = random_in_disk(rng, 0.95);
    const DatumJet j = g->jet(x);
    CHECK((j.v - g_omega(w, x)).norm() < 1e-12 * std::max(1.0, j.v.norm()));
    const double D = std::pow(1 - w * x.x(), 2) + w * w * x.y() * x.y();
    const double lhs = j.dx.squaredNorm() + j.dy.squaredNorm() + 2 * j.dx.cross(j.dy).norm();
    CHECK(rel_err(lhs, 4 / (D * D)) < 1e-12);
    // Harmonic: Richardson-extrapolated five-point Laplacian of the closed form.
    auto lap = [&](double h) {
      Vec3 l = -4 * g_omega(w, x);
      for (const Point2& e : {Point2(h, 0), Point2(-h, 0), Point2(0, h), Point2(0, -h)}) l += g_omega(w, x + e);
      return Vec3(l / (h * h));
    };
    CHECK(((4 * lap(1e-3) - lap(2e-3)) / 3).norm() < 1e-6 * std::max(1.0, 1 / (D * D)));
  }
}

TEST_CASE("d_{R^-1} g_omega") {
  const double w = 0.95, q = 1 - w * w;
  const AngleTriple anchor{kPi / 2, 0, 0};
  CHECK(rel_err(d_Rinv_g_omega(w, anchor, {w, 0}), 2 / (q * q)) < 1e-13);
  const DatumPtr g = make_g_omega(w);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-0.4, 0.4);
  for (int i = 0; i < 30; ++i) {
    const AngleTriple t{kPi / 2 + u(rng), u(rng), u(rng)};
    const Point2 x = random_in_disk(rng, 0.9);
    const Rotation3 R = rotation_from_angles(t);
    const double v = d_Rinv_g_omega(w, t, x);
    CHECK(std::abs(v - d_Rinv_g(*g, R, x)) < 1e-12 * std::max(1.0, std::abs(v)));
    CHECK(std::abs(v - d_R_g(*g, R.transpose(), x)) < 1e-12 * std::max(1.0, std::abs(v)));
  }
  // At the anchor rotation this is 2 d(g_omega)_1/dx, and the rotation is critical on y = 0.
  for (double x : {-0.5, 0.2, 0.9}) {
    CHECK(rel_err(d_Rinv_g_omega(w, anchor, {x, 0}), 2 * g->jet({x, 0}).dx[0]) < 1e-13);
    const double e = 1e-6;
    for (int c = 0; c < 3; ++c) {
      AngleTriple p = anchor, m = anchor;
      (c == 0 ? p.theta : c == 1 ? p.psi : p.phi) += e;
      (c == 0 ? m.theta : c == 1 ? m.psi : m.phi) -= e;
      const double d = (d_Rinv_g_omega(w, p, {x, 0}) - d_Rinv_g_omega(w, m, {x, 0})) / (2 * e);
      CHECK(std::abs(d) < 1e-8 * std::abs(d_Rinv_g_omega(w, anchor, {x, 0})));
    }
  }
}

TEST_CASE("matrix A") {
  const Matrix6d a = matrix_A(0.95, 1e-3);
  CHECK(a(3, 3) == 0.25);
  CHECK(a(4, 4) == 0.25);
  CHECK(a(5, 5) == 0.5);
  CHECK((a - a.transpose()).norm() == 0.0);
  for (double w : {0.5, 0.9, 0.99})
    for (double eps : {1e-2, 1e-3}) {
      const auto ev = Eigen::SelfAdjointEigenSolver<Matrix6d>(matrix_A(w, eps)).eigenvalues();
      CHECK(ev.minCoeff() > 0);
    }
  CHECK_THROWS_AS(matrix_A(1.0, 1e-3), InvalidInput);
  CHECK_THROWS_AS(matrix_A(0.5, 0), InvalidInput);
}

TEST_CASE("one-bubble anchor: gradient and Hessian") {
  const double w = 0.95, eps = 1e-3, q = 1 - w * w;
  const DatumPtr g = make_g_omega(w);
  Vector6d v0;
  v0 << w, 0, 2 / eps, kPi / 2, 0, 0;
  const Vector6d h(1e-4 * q, 1e-4 * q, 1e-4 / eps, 1e-4, 1e-4, 1e-4);

  // Second differences of f_single itself.
  Matrix6d fd;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      Vector6d ei = Vector6d::Zero(), ej = Vector6d::Zero();
      ei[i] = h[i];
      ej[j] = h[j];
      fd(i, j) = (f_chart(eps, *g, v0 + ei + ej) - f_chart(eps, *g, v0 + ei - ej) -
                  f_chart(eps, *g, v0 - ei + ej) + f_chart(eps, *g, v0 - ei - ej)) /
                 (4 * h[i] * h[j]);
    }
  const Matrix6d model = 8 * A0 * 2 * eps * eps / (q * q) * matrix_A(w, eps);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      CHECK(std::abs(fd(i, j) - model(i, j)) <= 1e-4 * std::sqrt(model(i, i) * model(j, j)));

  // The same through the construction's analytic gradient (k = 1 block chart).
  const ConstructionParams p = params(1);
  const DatumPtr G = build_G_k_omega(p);
  const BoxTmu box = BoxTmu::make(p);
  const Eigen::VectorXd chi = box.anchor;
  CHECK(construction_gradient(p, *G, chi).norm() < 1e-10);
  CHECK(std::abs(construction_energy(p, *G, chi) - f_chart(eps, *g, v0)) < 1e-15 * std::abs(f_chart(eps, *g, v0)) + 1e-20);
  const Eigen::MatrixXd hs = construction_hessian(p, *G, chi);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      CHECK(std::abs(hs(i, j) - model(i, j)) <= 1e-4 * std::sqrt(model(i, i) * model(j, j)));
}

TEST_CASE("G_k_omega") {
  const ConstructionParams p3 = params(3);
  const DatumPtr G = build_G_k_omega(p3);
  std::mt19937_64 rng(8);
  for (int i = 0; i < 100; ++i) {
    const Point2 x = random_in_disk(rng, 0.8);
    const DatumJet j = G->jet(x);
    CHECK((j.dxx + j.dyy).norm() < 1e-10 * std::max(1.0, j.dxx.norm()));
    auto lap = [&](double h) {
      Vec3 l = -4 * j.v;
      for (const Point2& e : {Point2(h, 0), Point2(-h, 0), Point2(0, h), Point2(0, -h)}) l += G->jet(x + e).v;
      return Vec3(l / (h * h));
    };
    CHECK(((4 * lap(1e-3) - lap(2e-3)) / 3).norm() < 1e-6 * std::max(1.0, j.dxx.norm()));
  }
  // k = 1 with the identity frame is g_omega.
  const DatumPtr G1 = build_G_k_omega(params(1));
  for (const Point2& x : {Point2(0.3, -0.2), Point2(-0.7, 0.1)}) CHECK((G1->jet(x).v - g_omega(0.95, x)).norm() < 1e-13);
  // Strong concentration: at p_j the j-th summand dominates the gradient.
  const double ratio = golden()["anchor_dominance_ratio"];
  for (int j = 1; j <= 3; ++j) {
    const double a = 2 * kPi * j / 3;
    const Point2 pj(0.95 * std::cos(a), 0.95 * std::sin(a));
    double mine = 0, other = 0;
    for (int i = 1; i <= 3; ++i) {
      const HolomorphicDatum one({{g_omega_fn(0.95), p3.target.aligning[i - 1], 2 * kPi * i / 3}}, "one");
      const DatumJet jj = one.jet(pj);
      const double m = std::sqrt(jj.dx.squaredNorm() + jj.dy.squaredNorm());
      (i == j ? mine : other) = i == j ? m : std::max(other, m);
    }
    CHECK(mine / other >= ratio * (1 - 1e-5));
  }
}

TEST_CASE("sphere configurations and boxes") {
  const SphereConfig s = SphereConfig::equally_spaced(5);
  CHECK(s.size() == 5);
  for (std::size_t j = 0; j < s.size(); ++j) {
    CHECK(std::abs(s.centers[j].norm() - 1) < 1e-10);
    CHECK((s.aligning[j] * Vec3(0, 0, -1) - s.centers[j]).norm() < 1e-10);
  }
  CHECK_THROWS_AS(SphereConfig::from_centers({Vec3(0, 0, -1.1)}), InvalidInput);
  CHECK_THROWS_AS(SphereConfig::equally_spaced(0), InvalidInput);

  const ConstructionParams p = params(1);
  const BoxTmu b = BoxTmu::make(p);
  CHECK(b.contains(b.anchor));
  CHECK(b.contains(b.anchor + 0.999 * b.half));
  CHECK(!b.contains(b.anchor + 1.01 * b.half));
  CHECK(b.half[0] == doctest::Approx(0.1 * (1 - 0.95 * 0.95)));
  CHECK(b.half[2] == doctest::Approx(0.1 / 1e-3));

  ConstructionParams bad = p;
  bad.k = 2;
  CHECK_THROWS_AS(bad.validate(), InvalidInput);
  bad = p;
  bad.omega = 1;
  CHECK_THROWS_AS(bad.validate(), InvalidInput);
  bad = p;
  bad.mu = 0;
  CHECK_THROWS_AS(bad.validate(), InvalidInput);
  bad = p;
  bad.face_samples = 1;
  CHECK_THROWS_AS(bad.validate(), InvalidInput);

  Configuration c;
  c.bubbles = {{{0, 0}, 10, Rotation3::Identity()}};
  const SphereConfig l = limiting_spheres(c);
  CHECK((l.centers[0] - Vec3(0, 0, -1)).norm() == 0.0);
}

TEST_CASE("k = 1 converges to the closed-form anchor") {
  const ConstructionParams p = params(1);
  const CriticalResult r = find_critical_configuration(p);
  const BoxTmu b = BoxTmu::make(p);
  CHECK(r.grad_norm < 1e-10);
  CHECK((r.chi - b.anchor).cwiseQuotient(b.half).cwiseAbs().maxCoeff() < 1e-8);
  CHECK((r.bubbles[0].center - Point2(0.95, 0)).norm() < 1e-8);
  CHECK(r.certificate.pass());
  // Solution, anchors and two random contexts; 5^5 samples per face.
  CHECK(r.certificate.samples == 4 * 12 * 3125);
}

TEST_CASE("k = 3 construction") {
  const nlohmann::json gold = golden();
  const ConstructionParams p = params(3);
  const CriticalResult r = find_critical_configuration(p);
  const BoxTmu b = BoxTmu::make(p);
  CHECK(r.grad_norm < 1e-10);
  for (int j = 0; j < 3; ++j) {
    const Vector6d c = r.chi.segment<6>(6 * j);
    CHECK(b.contains(c));
    for (int i = 0; i < 6; ++i) CHECK(std::abs(c[i] - gold["chi"][j][i].get<double>()) < 1e-8 * b.half[i]);
  }
  // The targets are symmetric under y -> -y, which swaps blocks 1 and 2 and fixes block 3.
  const Vector6d c1 = r.chi.segment<6>(0), c2 = r.chi.segment<6>(6), c3 = r.chi.segment<6>(12);
  CHECK(std::abs(c1[0] - c2[0]) < 1e-8 * b.half[0]);
  CHECK(std::abs(c1[1] + c2[1]) < 1e-8 * b.half[1]);
  CHECK(std::abs(c1[2] - c2[2]) < 1e-8 * b.half[2]);
  CHECK(std::abs(c1[3] + c2[3] - kPi) < 1e-8);
  CHECK(std::abs(c1[4] - c2[4]) < 1e-8);
  CHECK(std::abs(c1[5] + c2[5]) < 1e-8);
  CHECK(std::abs(c3[1]) < 1e-8 * b.half[1]);
  CHECK(std::abs(c3[3] - kPi / 2) < 1e-8);
  CHECK(std::abs(c3[5]) < 1e-8);

  const Certificate& cert = r.certificate;
  CHECK(cert.pass());
  CHECK(cert.min_margin > 0);
  CHECK(rel_err(cert.min_margin, gold["min_margin"].get<double>()) < 1e-4);
  for (double m : cert.block_margin) CHECK(m > 0);
  CHECK(cert.hessian_min_eig > 0);
  CHECK(cert.hessian_asymmetry < 1e-8);

  const SphereConfig s = limiting_spheres(r.config);
  double worst = 0;
  for (int j = 0; j < 3; ++j) {
    CHECK(std::abs(s.centers[j].norm() - 1) < 1e-10);
    worst = std::max(worst, (s.centers[j] - p.target.centers[j]).norm());
    for (int i = 0; i < 3; ++i) CHECK(std::abs(s.centers[j][i] - gold["centers"][j][i].get<double>()) < 1e-8);
  }
  CHECK(worst < gold["center_distance_bound"].get<double>());
  CHECK(rel_err(worst, gold["max_center_distance"].get<double>()) < 1e-4);
}

TEST_CASE("certificate margin shrinks as omega decreases") {
  double prev = 1e300;
  for (double w : {0.95, 0.75, 0.5}) {
    const CriticalResult r = find_critical_configuration(params(1, w));
    CHECK(r.certificate.min_margin > 0);
    CHECK(r.certificate.min_margin < prev);
    prev = r.certificate.min_margin;
  }
}
