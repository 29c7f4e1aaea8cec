#include "hsurf/construction.hpp"

#include "hsurf/bubble.hpp"
#include "hsurf/parallel.hpp"

#include <algorithm>
#include <random>

namespace hsurf {

Vec3 g_omega(double omega, const Point2& xi) {
  const double x = xi.x(), y = xi.y();
  const double den = (1 - omega * x) * (1 - omega * x) + omega * omega * y * y;
  return {(x - omega * (x * x + y * y)) / den, y / den, 0.0};
}

double d_Rinv_g_omega(double omega, const AngleTriple& t, const Point2& xi) {
  const Mat3 m = chart_matrix(t);
  const double x = xi.x(), y = xi.y();
  const double a = 1 - omega * x, b = omega * y;
  const double den = (a * a + b * b) * (a * a + b * b);
  // F' = 1/(a - i b)^2 = (a + i b)^2/|.|^4
  const double re = (a * a - b * b) / den, im = 2 * a * b / den;
  return (m(0, 0) + m(1, 1)) * re + (m(0, 1) - m(1, 0)) * im;
}

Matrix6d matrix_A(double omega, double eps) {
  if (!(omega > 0 && omega < 1) || !(eps > 0)) throw InvalidInput("matrix_A: need 0 < w < 1, eps > 0");
  const double q = 1 - omega * omega;
  Matrix6d a = Matrix6d::Zero();
  a(0, 0) = a(1, 1) = 1 / q + 3 * omega * omega / (q * q);
  a(2, 2) = eps * eps / 8;
  a(3, 3) = 0.25;
  a(4, 4) = 0.25;
  a(5, 5) = 0.5;
  a(0, 2) = a(2, 0) = -eps * omega / (2 * q);
  a(1, 5) = a(5, 1) = -omega / q;
  return a;
}

SphereConfig SphereConfig::from_centers(const std::vector<Vec3>& v) {
  SphereConfig s;
  for (const Vec3& c : v) {
    if (!(std::abs(c.norm() - 1) <= 1e-10)) throw InvalidInput("SphereConfig: center is not a unit vector");
    s.centers.push_back(c);
    s.aligning.push_back(rotation_aligning(c));
  }
  return s;
}

SphereConfig SphereConfig::equally_spaced(int k) {
  if (k < 1) throw InvalidInput("SphereConfig: k must be positive");
  std::vector<Vec3> v;
  for (int j = 1; j <= k; ++j) {
    const double a = 2 * kPi * j / k;
    v.emplace_back(std::cos(a), std::sin(a), 0.0);
  }
  return from_centers(v);
}

void ConstructionParams::validate() const {
  if (k < 1) throw InvalidInput("construction: k must be positive");
  if (!(omega > 0 && omega < 1)) throw InvalidInput("construction: omega must lie in (0, 1)");
  if (!(epsilon > 0)) throw InvalidInput("construction: epsilon must be positive");
  if (!(mu > 0 && mu < 1)) throw InvalidInput("construction: mu must lie in (0, 1)");
  if (static_cast<int>(target.size()) != k) throw InvalidInput("construction: need k target centers");
  if (face_samples < 2) throw InvalidInput("construction: face_samples must be at least 2");
  if (random_contexts < 0) throw InvalidInput("construction: random_contexts must be nonnegative");
}

BoxTmu BoxTmu::make(const ConstructionParams& p) {
  const double q = 1 - p.omega * p.omega;
  BoxTmu b;
  b.anchor << 0, 0, 2 / p.epsilon, kPi / 2, 0, 0;
  b.half << p.mu * q, p.mu * q, p.mu / p.epsilon, p.mu, p.mu, p.mu;
  return b;
}

bool BoxTmu::contains(const Vector6d& chi) const {
  return ((chi - anchor).cwiseAbs().array() <= half.array()).all();
}

DatumPtr build_G_k_omega(const ConstructionParams& p) {
  p.validate();
  std::vector<HolomorphicDatum::Term> terms;
  for (int j = 1; j <= p.k; ++j)
    terms.push_back({g_omega_fn(p.omega), p.target.aligning[j - 1], 2 * kPi * j / p.k});
  return std::make_shared<HolomorphicDatum>(std::move(terms), "G_k_omega");
}

namespace {

double block_angle(const ConstructionParams& p, int j) { return 2 * kPi * (j + 1) / p.k; }

Eigen::Matrix2d planar(double a) {
  Eigen::Matrix2d r;
  r << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
  return r;
}

std::vector<ChartedBubble> all_bubbles(const ConstructionParams& p, const Eigen::VectorXd& chi) {
  std::vector<ChartedBubble> b;
  for (int j = 0; j < p.k; ++j) b.push_back(block_bubble(p, j, chi.segment<6>(6 * j)));
  return b;
}

}  // namespace

ChartedBubble block_bubble(const ConstructionParams& p, int j, const Vector6d& chi) {
  const double a = block_angle(p, j);
  ChartedBubble b;
  b.center = planar(a) * Point2(p.omega + chi[0], chi[1]);
  b.scale = chi[2];
  b.chart.left = p.target.aligning[j];
  b.chart.t = {chi[3], chi[4], chi[5]};
  b.chart.right = rotation_about_z(-a);
  return b;
}

double construction_energy(const ConstructionParams& p, const BoundaryDatum& G,
                           const Eigen::VectorXd& chi) {
  return sigma_charted(p.epsilon, all_bubbles(p, chi), DomainModel::disk(), G);
}

Eigen::VectorXd construction_gradient(const ConstructionParams& p, const BoundaryDatum& G,
                                      const Eigen::VectorXd& chi) {
  const auto g = sigma_gradient_charted(p.epsilon, all_bubbles(p, chi), DomainModel::disk(), G);
  Eigen::VectorXd out(6 * p.k);
  for (int j = 0; j < p.k; ++j) {
    Vector6d gj = g[j];
    gj.head<2>() = planar(block_angle(p, j)).transpose() * g[j].head<2>();
    out.segment<6>(6 * j) = gj;
  }
  return out;
}

namespace {

Eigen::MatrixXd fd_hessian(const ConstructionParams& p, const BoundaryDatum& G,
                           const Eigen::VectorXd& chi, double* asymmetry) {
  const BoxTmu box = BoxTmu::make(p);
  const int n = 6 * p.k;
  Eigen::MatrixXd h(n, n);
  for (int i = 0; i < n; ++i) {
    const double s = 1e-4 * box.half[i % 6];
    Eigen::VectorXd xp = chi, xm = chi;
    xp[i] += s;
    xm[i] -= s;
    h.col(i) = (construction_gradient(p, G, xp) - construction_gradient(p, G, xm)) / (2 * s);
  }
  if (asymmetry) *asymmetry = (h - h.transpose()).norm() / std::max(h.norm(), 1e-300);
  return 0.5 * (h + h.transpose());
}

}  // namespace

Eigen::MatrixXd construction_hessian(const ConstructionParams& p, const BoundaryDatum& G,
                                     const Eigen::VectorXd& chi) {
  return fd_hessian(p, G, chi, nullptr);
}

Certificate certify(const ConstructionParams& p, const BoundaryDatum& G,
                    const Eigen::VectorXd& solution) {
  p.validate();
  const BoxTmu box = BoxTmu::make(p);
  const int n = p.face_samples;

  std::vector<Eigen::VectorXd> contexts{solution};
  Eigen::VectorXd anchors(6 * p.k);
  for (int j = 0; j < p.k; ++j) anchors.segment<6>(6 * j) = box.anchor;
  contexts.push_back(anchors);
  std::mt19937_64 rng(p.seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int r = 0; r < p.random_contexts; ++r) {
    Eigen::VectorXd c(6 * p.k);
    for (int i = 0; i < 6 * p.k; ++i) c[i] = box.anchor[i % 6] + box.half[i % 6] * unif(rng);
    contexts.push_back(c);
  }

  std::size_t per_face = 1;
  for (int i = 0; i < 5; ++i) per_face *= n;
  // One task per (context, block, face); faces are indexed by coordinate and side.
  const std::size_t n_tasks = contexts.size() * p.k * 12;
  struct FaceMin {
    double v = 1e300;
    Vector6d at = Vector6d::Zero();
  };
  std::vector<FaceMin> mins(n_tasks);
  parallel_for(n_tasks, [&](std::size_t task) {
    const std::size_t ctx = task / (p.k * 12);
    const int j = static_cast<int>((task / 12) % p.k);
    const int face = static_cast<int>(task % 12);
    const int coord = face / 2;
    const double side = face % 2 ? 1.0 : -1.0;
    Eigen::VectorXd chi = contexts[ctx];
    FaceMin m;
    for (std::size_t s = 0; s < per_face; ++s) {
      Vector6d y;
      std::size_t rem = s;
      for (int c = 0; c < 6; ++c) {
        if (c == coord) {
          y[c] = side;
          continue;
        }
        y[c] = -1.0 + 2.0 * static_cast<double>(rem % n) / (n - 1);
        rem /= n;
      }
      const Vector6d d = box.half.cwiseProduct(y);
      chi.segment<6>(6 * j) = box.anchor + d;
      const double v = construction_gradient(p, G, chi).segment<6>(6 * j).dot(d);
      if (v < m.v) m = {v, y};
    }
    mins[task] = m;
  });

  Certificate cert;
  cert.block_margin.assign(p.k, 1e300);
  cert.samples = n_tasks * per_face;
  cert.min_margin = 1e300;
  for (std::size_t task = 0; task < n_tasks; ++task) {
    const int j = static_cast<int>((task / 12) % p.k);
    cert.block_margin[j] = std::min(cert.block_margin[j], mins[task].v);
    if (mins[task].v < cert.min_margin) {
      cert.min_margin = mins[task].v;
      cert.worst_block = j;
      cert.worst_sample = mins[task].at;
    }
  }
  cert.boundary_ok = cert.min_margin > 0;

  const Eigen::MatrixXd h = fd_hessian(p, G, solution, &cert.hessian_asymmetry);
  cert.hessian_min_eig = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(h).eigenvalues().minCoeff();
  cert.hessian_pd = cert.hessian_min_eig > 0;
  return cert;
}

CriticalResult find_critical_configuration(const ConstructionParams& p) {
  p.validate();
  const DatumPtr G = build_G_k_omega(p);
  const BoxTmu box = BoxTmu::make(p);
  const int n = 6 * p.k;
  Eigen::VectorXd scale(n);
  for (int i = 0; i < n; ++i) scale[i] = box.half[i % 6];

  CriticalResult r;
  r.chi.resize(n);
  for (int j = 0; j < p.k; ++j) r.chi.segment<6>(6 * j) = box.anchor;
  Eigen::VectorXd g = construction_gradient(p, *G, r.chi);
  r.trajectory.push_back(g.norm());
  // Iterate past |grad| < 1e-10: the scale direction has a tiny curvature, so
  // the gradient norm alone does not pin the point. Stop on a negligible step.
  for (int it = 0; it < 60; ++it) {
    const Eigen::MatrixXd h = construction_hessian(p, *G, r.chi);
    const Eigen::VectorXd step = -h.fullPivLu().solve(g);
    double t = 1.0;
    Eigen::VectorXd x = r.chi + step, gx = construction_gradient(p, *G, x);
    while (!(gx.norm() < g.norm()) && t > 1e-6) {
      t *= 0.5;
      x = r.chi + t * step;
      gx = construction_gradient(p, *G, x);
    }
    const double rel_step = (t * step).cwiseQuotient(scale).cwiseAbs().maxCoeff();
    if (!(gx.norm() < g.norm())) break;
    r.chi = x;
    g = gx;
    r.trajectory.push_back(g.norm());
    r.iterations = it + 1;
    for (int j = 0; j < p.k; ++j)
      if (!box.contains(r.chi.segment<6>(6 * j)))
        throw SearchFailure("construction: Newton iterate left box " + std::to_string(j), r.trajectory);
    if (g.norm() < 1e-10 && rel_step < 1e-12) break;
  }
  r.grad_norm = g.norm();
  if (!(r.grad_norm < 1e-10)) throw SearchFailure("construction: Newton did not converge", r.trajectory);

  r.bubbles = all_bubbles(p, r.chi);
  r.config.epsilon = p.epsilon;
  for (const ChartedBubble& b : r.bubbles) r.config.bubbles.push_back(b.params());
  r.certificate = certify(p, *G, r.chi);
  if (!r.certificate.pass()) {
    const std::string what = r.certificate.boundary_ok
                                 ? "construction: Hessian is not positive definite"
                                 : "construction: boundary positivity fails on block " +
                                       std::to_string(r.certificate.worst_block);
    throw CertificateFailure(what, r);
  }
  return r;
}

SphereConfig limiting_spheres(const Configuration& c) {
  SphereConfig s;
  for (const BubbleParams& b : c.bubbles) {
    s.centers.push_back(b.rotation * Vec3(0, 0, -1));
    s.aligning.push_back(b.rotation);
  }
  return s;
}

}  // namespace hsurf
