#include "hsurf/reduced.hpp"

#include "hsurf/bubble.hpp"
#include "hsurf/so3_search.hpp"

#include <sstream>

namespace hsurf {

Rotation3 BubbleChart::rotation() const { return left * chart_matrix(t).transpose() * right; }

std::array<Mat3, 3> BubbleChart::rotation_derivatives() const {
  const auto dm = chart_matrix_derivatives(t);
  std::array<Mat3, 3> out;
  for (int k = 0; k < 3; ++k) out[k] = left * dm[k].transpose() * right;
  return out;
}

Vector6d ChartedBubble::coords() const {
  Vector6d v;
  v << center.x(), center.y(), scale, chart.t.theta, chart.t.psi, chart.t.phi;
  return v;
}

void ChartedBubble::set_coords(const Vector6d& v) {
  center = Point2(v[0], v[1]);
  scale = v[2];
  chart.t = {v[3], v[4], v[5]};
}

void validate_configuration(const Configuration& c, const DomainModel& d) {
  auto fail = [](const std::string& what) { throw InvalidConfiguration(what); };
  if (!(c.epsilon > 0)) fail("epsilon must be positive");
  if (!(c.cbar > 0)) fail("separation constant must be positive");
  if (c.bubbles.empty()) fail("configuration has no bubbles");
  const double lo = 1 / c.cbar;
  for (std::size_t i = 0; i < c.bubbles.size(); ++i) {
    const BubbleParams& b = c.bubbles[i];
    std::ostringstream tag;
    tag << "bubble " << i << ": ";
    if (!d.contains(b.center)) fail(tag.str() + "center outside the domain");
    if (d.boundary_distance(b.center) < lo) fail(tag.str() + "dist(p, boundary) < 1/cbar");
    if (!(b.scale > 0)) fail(tag.str() + "lambda must be positive");
    const double le = b.scale * c.epsilon;
    if (le < lo || le > c.cbar) fail(tag.str() + "lambda*eps outside [1/cbar, cbar]");
    if (!is_rotation(b.rotation, 1e-10)) fail(tag.str() + "rotation is not in SO(3)");
    for (std::size_t j = 0; j < i; ++j)
      if ((c.bubbles[j].center - b.center).norm() < lo) {
        std::ostringstream s;
        s << "bubbles " << j << " and " << i << ": dist(p_i, p_j) < 1/cbar";
        fail(s.str());
      }
  }
}

double d_R_g(const BoundaryDatum& g, const Rotation3& R, const Point2& a) {
  if (g.is_zero()) return 0.0;
  const DatumJet j = g.jet(a);
  return R.row(0).dot(j.dx) + R.row(1).dot(j.dy);
}

double d_Rinv_g(const BoundaryDatum& g, const Rotation3& R, const Point2& a) {
  return d_R_g(g, R.transpose(), a);
}

double f_single(double eps, const BubbleParams& b, const DomainModel& d, const BoundaryDatum& g) {
  const double lam = b.scale;
  return 8 * constant_A0() *
         (h_tilde(d, b.center) / (lam * lam) - eps / lam * d_Rinv_g(g, b.rotation, b.center));
}

namespace {

double pairing(const Mat3& r, const Eigen::Matrix2d& e) {
  return (r.topLeftCorner<2, 2>().array() * e.array()).sum();
}

void require_pair(const DomainModel& d, const Point2& pi, const Point2& pj) {
  if (d.kind() == DomainModel::Kind::Annulus)
    throw Unsupported("pair interaction needs Green derivatives, not available on the annulus");
  if ((pi - pj).norm() == 0.0) throw SingularInput("interaction_pair: coincident points");
}

}  // namespace

double interaction_pair(const Point2& pi, const Point2& pj, const Rotation3& Ri,
                        const Rotation3& Rj, const DomainModel& d) {
  require_pair(d, pi, pj);
  return -16 * constant_A0() * pairing(Ri.transpose() * Rj, green_grad_derivatives(d, pi, pj));
}

double interaction_pair_h(const Point2& pi, const Point2& pj, const Rotation3& Ri,
                          const Rotation3& Rj, const DomainModel& d) {
  require_pair(d, pi, pj);
  const Eigen::Matrix2d h = h_gradients(d, pi, pj);
  const Point2 s = pj - pi;
  const double n4 = s.squaredNorm() * s.squaredNorm();
  const double diag = (s.x() * s.x() - s.y() * s.y()) / n4, off = 2 * s.x() * s.y() / n4;
  Eigen::Matrix2d bracket;
  bracket << diag + h(0, 0), off + h(0, 1), off + h(1, 0), -diag + h(1, 1);
  return 16 * constant_A0() * pairing(Ri.transpose() * Rj, bracket);
}

ErrorScales error_scales(const Configuration& c) {
  ErrorScales e;
  const double eps = c.epsilon;
  const auto& b = c.bubbles;
  const std::size_t k = b.size();
  e.e_tilde = eps * eps;
  for (std::size_t i = 0; i < k; ++i) {
    const double l = b[i].scale;
    e.e_tilde += eps * std::abs(std::log(l)) / l;
    e.e_eps_lambda.push_back(eps * eps + eps / l);
    for (std::size_t j = 0; j < k; ++j)
      if (j != i) e.e_tilde += 1 / (l * b[j].scale);
    for (std::size_t j = i + 1; j < k; ++j) {
      const double m = b[j].scale;
      e.e_pairs += (std::log(l) + std::log(m)) *
                   (1 / (l * l * l) + 1 / (m * m * m) + 1 / (l * l * m) + 1 / (l * m * m));
      for (std::size_t q = j + 1; q < k; ++q) e.e_triples += 1 / (l * m * b[q].scale);
    }
  }
  return e;
}

namespace {

struct Eval {
  Point2 p;
  double lam;
  Rotation3 R;
  std::array<Mat3, 3> dR;
};

double sigma_core(double eps, const std::vector<Eval>& b, const DomainModel& d,
                  const BoundaryDatum& g, std::vector<Vector6d>* grad) {
  const double A0 = constant_A0();
  const std::size_t k = b.size();
  if (k > 1 && d.kind() == DomainModel::Kind::Annulus)
    throw Unsupported("multi-bubble functional needs Green derivatives, not available on the annulus");
  if (grad) grad->assign(k, Vector6d::Zero());
  double total = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const Eval& e = b[i];
    const double lam = e.lam;
    const double H = h_tilde(d, e.p);
    double dval = 0.0;
    DatumJet j;
    if (!g.is_zero()) {
      j = g.jet(e.p);
      dval = e.R.col(0).dot(j.dx) + e.R.col(1).dot(j.dy);
    }
    total += 8 * A0 * (H / (lam * lam) - eps / lam * dval);
    if (!grad) continue;
    Vector6d& G = (*grad)[i];
    const Point2 gH = h_tilde_gradient(d, e.p);
    const double ddx = e.R.col(0).dot(j.dxx) + e.R.col(1).dot(j.dxy);
    const double ddy = e.R.col(0).dot(j.dxy) + e.R.col(1).dot(j.dyy);
    G[0] += 8 * A0 * (gH.x() / (lam * lam) - eps / lam * ddx);
    G[1] += 8 * A0 * (gH.y() / (lam * lam) - eps / lam * ddy);
    G[2] += 8 * A0 * (-2 * H / (lam * lam * lam) + eps * dval / (lam * lam));
    for (int q = 0; q < 3; ++q)
      G[3 + q] += -8 * A0 * eps / lam * (e.dR[q].col(0).dot(j.dx) + e.dR[q].col(1).dot(j.dy));
  }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t m = i + 1; m < k; ++m) {
      const Eval &a = b[i], &c = b[m];
      if ((a.p - c.p).norm() == 0.0) throw SingularInput("sigma: coincident bubble centers");
      const double w = -16 * A0 / (a.lam * c.lam);
      const Mat3 Rij = a.R.transpose() * c.R;
      if (!grad) {
        total += w * pairing(Rij, green_grad_derivatives(d, a.p, c.p));
        continue;
      }
      const GreenGradJet J = green_grad_jet(d, a.p, c.p);
      const double term = w * pairing(Rij, J.E);
      total += term;
      Vector6d &Ga = (*grad)[i], &Gc = (*grad)[m];
      Ga[0] += w * pairing(Rij, J.dE_da1);
      Ga[1] += w * pairing(Rij, J.dE_da2);
      Gc[0] += w * pairing(Rij, J.dE_dx);
      Gc[1] += w * pairing(Rij, J.dE_dy);
      Ga[2] -= term / a.lam;
      Gc[2] -= term / c.lam;
      for (int q = 0; q < 3; ++q) {
        Ga[3 + q] += w * pairing(a.dR[q].transpose() * c.R, J.E);
        Gc[3 + q] += w * pairing(a.R.transpose() * c.dR[q], J.E);
      }
    }
  return total;
}

std::vector<Eval> from_charts(const std::vector<ChartedBubble>& b) {
  std::vector<Eval> out;
  for (const ChartedBubble& c : b)
    out.push_back({c.center, c.scale, c.chart.rotation(), c.chart.rotation_derivatives()});
  return out;
}

std::vector<Eval> from_config(const Configuration& c) {
  std::vector<ChartedBubble> ch;
  for (const BubbleParams& b : c.bubbles) {
    ChartedBubble x;
    x.center = b.center;
    x.scale = b.scale;
    x.chart.left = b.rotation;
    ch.push_back(x);
  }
  return from_charts(ch);
}

}  // namespace

double sigma_charted(double eps, const std::vector<ChartedBubble>& b, const DomainModel& d,
                     const BoundaryDatum& g) {
  return sigma_core(eps, from_charts(b), d, g, nullptr);
}

std::vector<Vector6d> sigma_gradient_charted(double eps, const std::vector<ChartedBubble>& b,
                                             const DomainModel& d, const BoundaryDatum& g) {
  std::vector<Vector6d> grad;
  sigma_core(eps, from_charts(b), d, g, &grad);
  return grad;
}

double sigma_total(const Configuration& c, const DomainModel& d, const BoundaryDatum& g) {
  validate_configuration(c, d);
  return sigma_core(c.epsilon, from_config(c), d, g, nullptr);
}

ReducedEnergyReport sigma_gradient(const Configuration& c, const DomainModel& d,
                                   const BoundaryDatum& g) {
  validate_configuration(c, d);
  ReducedEnergyReport r;
  r.value = sigma_core(c.epsilon, from_config(c), d, g, &r.gradient);
  const double k = static_cast<double>(c.bubbles.size());
  r.modeled_energy = 8 * k / 9 * constant_A0() + r.value;
  r.modeled_energy_direct = k * 4 * kPi / 3 + r.value;
  r.diagnostics = error_scales(c);
  return r;
}

double optimal_lambda(double eps, const Point2& a, const Rotation3& R, const DomainModel& d,
                      const BoundaryDatum& g) {
  if (!(eps > 0)) throw InvalidInput("optimal_lambda: eps must be positive");
  const double dv = d_Rinv_g(g, R, a);
  if (!(dv > 0)) throw NoCriticalScale("optimal_lambda: d_{R^-1} g(a) <= 0, no interior critical scale");
  return 2 / eps * h_tilde(d, a) / dv;
}

std::pair<double, double> rotation_extremal_datum(const BoundaryDatum& g, const Point2& a) {
  const DatumJet j = g.jet(a);
  Eigen::Matrix<double, 3, 2> B;
  B.col(0) = j.dx;
  B.col(1) = j.dy;
  const Eigen::Vector2d s = Eigen::JacobiSVD<Eigen::Matrix<double, 3, 2>>(B).singularValues();
  if (!(s[0] > 1e-14)) throw DegenerateDatum("rotation_extremal_datum: grad g(a) = 0");
  return {s[0] + s[1], s[0] - s[1]};
}

double concentration_W(const BoundaryDatum& g, const DomainModel& d, const Point2& a) {
  return rotation_extremal_datum(g, a).first / std::sqrt(h_tilde(d, a));
}

double two_bubble_extremal(const Point2& a, const Point2& b, const DomainModel& d) {
  require_pair(d, a, b);
  const Eigen::Matrix2d E = green_grad_derivatives(d, a, b);
  const Eigen::Vector2d s = Eigen::JacobiSVD<Eigen::Matrix2d>(E).singularValues();
  return -16 * constant_A0() * (s[0] + s[1]);
}

ExtremalRotation two_bubble_extremal_rotation(const Point2& a, const Point2& b,
                                              const DomainModel& d) {
  require_pair(d, a, b);
  const Eigen::Matrix2d E = green_grad_derivatives(d, a, b);
  const SO3Max m = so3_maximize([&](const Rotation3& r) { return pairing(r, E); });
  return {m.argmax, -16 * constant_A0() * m.value};
}

}  // namespace hsurf
