#include "hsurf/bubble.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>

namespace hsurf {

Vec3 stereographic(const Point2& xi) {
  const double r2 = xi.squaredNorm();
  const double s = 1.0 + r2;
  return {2 * xi.x() / s, 2 * xi.y() / s, (r2 - 1) / s};
}

Vec3 bubble_value(const BubbleParams& b, const Point2& xi) {
  return b.rotation * stereographic(b.scale * (xi - b.center));
}

namespace {

// Unrotated derivatives in local coordinates X = xi - a.
void local_derivatives(double lam, double x, double y, Vec3& dx, Vec3& dy) {
  const double l2 = lam * lam;
  const double s = 1 + l2 * (x * x + y * y);
  const double s2 = s * s;
  dx << 2 * lam * (1 + l2 * (y * y - x * x)) / s2, -4 * lam * l2 * x * y / s2, 4 * l2 * x / s2;
  dy << -4 * lam * l2 * x * y / s2, 2 * lam * (1 + l2 * (x * x - y * y)) / s2, 4 * l2 * y / s2;
}

}  // namespace

std::pair<Vec3, Vec3> bubble_derivatives(const BubbleParams& b, const Point2& xi) {
  Vec3 dx, dy;
  const Point2 X = xi - b.center;
  local_derivatives(b.scale, X.x(), X.y(), dx, dy);
  return {b.rotation * dx, b.rotation * dy};
}

BubbleSecond bubble_second_derivatives(const BubbleParams& b, const Point2& xi) {
  // delta = (2 lam X/s, 2 lam Y/s, 1 - 2/s), s = 1 + lam^2 |X|^2.
  const double lam = b.scale, l2 = lam * lam;
  const Point2 X = xi - b.center;
  const double x = X.x(), y = X.y();
  const double s = 1 + l2 * (x * x + y * y);
  const double sx = 2 * l2 * x, sy = 2 * l2 * y, sxx = 2 * l2, syy = 2 * l2;
  // second derivatives of q = 1/s
  const double q = 1 / s;
  const double qx = -sx * q * q, qy = -sy * q * q;
  const double qxx = 2 * sx * sx * q * q * q - sxx * q * q;
  const double qyy = 2 * sy * sy * q * q * q - syy * q * q;
  const double qxy = 2 * sx * sy * q * q * q;
  // (x q)'' etc.
  const double xq_xx = 2 * qx + x * qxx, xq_xy = qy + x * qxy, xq_yy = x * qyy;
  const double yq_xx = y * qxx, yq_xy = qx + y * qxy, yq_yy = 2 * qy + y * qyy;
  BubbleSecond out;
  out.xx << 2 * lam * xq_xx, 2 * lam * yq_xx, -2 * qxx;
  out.xy << 2 * lam * xq_xy, 2 * lam * yq_xy, -2 * qxy;
  out.yy << 2 * lam * xq_yy, 2 * lam * yq_yy, -2 * qyy;
  out.xx = b.rotation * out.xx;
  out.xy = b.rotation * out.xy;
  out.yy = b.rotation * out.yy;
  return out;
}

Vec3 bubble_laplacian(const BubbleParams& b, const Point2& xi) {
  const BubbleSecond d2 = bubble_second_derivatives(b, xi);
  return d2.xx + d2.yy;
}

Vec3 wedge_xy(const BubbleParams& b, const Point2& xi) {
  const double lam = b.scale, l2 = lam * lam;
  const Point2 X = xi - b.center;
  const double r2 = X.squaredNorm();
  const double s = 1 + l2 * r2;
  const double s3 = s * s * s;
  const Vec3 w(-8 * lam * l2 * X.x() / s3, -8 * lam * l2 * X.y() / s3, 4 * l2 * (1 - l2 * r2) / s3);
  return b.rotation * w;
}

FieldJet bubble_jet(const BubbleParams& b, const Point2& xi) {
  FieldJet j;
  j.value = bubble_value(b, xi);
  auto [dx, dy] = bubble_derivatives(b, xi);
  j.dx = dx;
  j.dy = dy;
  return j;
}

double bubble_pde_residual(const BubbleParams& b, const Point2& xi) {
  auto [dx, dy] = bubble_derivatives(b, xi);
  return (bubble_laplacian(b, xi) - 2 * dx.cross(dy)).norm();
}

QuadResult integrate_radial_plane(const std::function<double(double)>& f, double tol, double s0,
                                  double s1) {
  auto g = [&](double s) {
    if (s >= kPi / 2) return 0.0;
    const double c = std::cos(s);
    const double r = std::tan(s);
    return 2 * kPi * f(r) * r / (c * c);
  };
  QuadResult out;
  out.value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, s0, s1, 20, tol,
                                                                            &out.error);
  return out;
}

QuadResult integrate_plane(const std::function<double(const Point2&)>& f, double tol, int n_angle,
                           double alpha0, double alpha1) {
  QuadResult out;
  const double h = (alpha1 - alpha0) / n_angle;
  for (int j = 0; j < n_angle; ++j) {
    const double al = alpha0 + (j + 0.5) * h;
    const double ca = std::cos(al), sa = std::sin(al);
    auto g = [&](double s) {
      if (s >= kPi / 2) return 0.0;
      const double c = std::cos(s);
      const double r = std::tan(s);
      return f(Point2(r * ca, r * sa)) * r / (c * c);
    };
    double err = 0.0;
    const double v =
        boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, 0.0, kPi / 2, 20, tol, &err);
    out.value += h * v;
    out.error += h * err;
  }
  return out;
}

double a0_integrand(const Point2& xi) {
  const double r2 = xi.squaredNorm();
  const double s = 1 + r2;
  return r2 / (s * s * s);
}

double identity_integrand(const Point2& xi) {
  const double r2 = xi.squaredNorm();
  const double s = 1 + r2;
  return (1 - r2) / (s * s * s);
}

QuadResult constant_A0_quad(double tol) {
  return integrate_radial_plane([](double r) { return a0_integrand(Point2(r, 0)); }, tol);
}

QuadResult identity_integral_quad(double tol) {
  return integrate_radial_plane([](double r) { return identity_integrand(Point2(r, 0)); }, tol);
}

double constant_A0() {
  static const double value = [] {
    const QuadResult q = constant_A0_quad();
    if (q.error > 1e-10) throw QuadratureFailure("A0 quadrature did not converge", q.error);
    return q.value;
  }();
  return value;
}

double identity_integral_zero() {
  const QuadResult q = identity_integral_quad();
  if (q.error > 1e-10) throw QuadratureFailure("identity quadrature did not converge", q.error);
  return q.value;
}

double pohozaev_residual(const FieldJet& v, const Point2& xi) {
  const Vec3 w = v.dx.cross(v.dy);
  return (xi.x() * v.dx + xi.y() * v.dy).dot(w);
}

Mat3 skew(const Vec3& w) {
  Mat3 k;
  k << 0, -w.z(), w.y(), w.z(), 0, -w.x(), -w.y(), w.x(), 0;
  return k;
}

bool is_rotation(const Mat3& r, double tol) {
  const Mat3 e = r.transpose() * r - Mat3::Identity();
  return e.cwiseAbs().maxCoeff() <= tol && std::abs(r.determinant() - 1) <= tol;
}

Mat3 chart_matrix(const AngleTriple& t) {
  const double ct = std::cos(t.theta), st = std::sin(t.theta);
  const double cp = std::cos(t.psi), sp = std::sin(t.psi);
  const double cf = std::cos(t.phi), sf = std::sin(t.phi);
  Mat3 m;
  m << cp * cf - ct * sf * sp, cp * sf + ct * cf * sp, sp * st,
      -st * sf, st * cf, -ct,
      -sp * cf - ct * sf * cp, -sp * sf + ct * cf * cp, cp * st;
  return m;
}

std::array<Mat3, 3> chart_matrix_derivatives(const AngleTriple& t) {
  const double ct = std::cos(t.theta), st = std::sin(t.theta);
  const double cp = std::cos(t.psi), sp = std::sin(t.psi);
  const double cf = std::cos(t.phi), sf = std::sin(t.phi);
  std::array<Mat3, 3> d;
  d[0] << st * sf * sp, -st * cf * sp, sp * ct,
      -ct * sf, ct * cf, st,
      st * sf * cp, -st * cf * cp, cp * ct;
  d[1] << -sp * cf - ct * sf * cp, -sp * sf + ct * cf * cp, cp * st,
      0, 0, 0,
      -cp * cf + ct * sf * sp, -cp * sf - ct * cf * sp, -sp * st;
  d[2] << -cp * sf - ct * cf * sp, cp * cf - ct * sf * sp, 0,
      -st * cf, -st * sf, 0,
      sp * sf - ct * cf * cp, -sp * cf - ct * sf * cp, 0;
  return d;
}

Rotation3 rotation_from_angles(const AngleTriple& t) { return chart_matrix(t).transpose(); }

Rotation3 rotation_relative(const Rotation3& base, const AngleTriple& t) {
  return base * rotation_from_angles(t);
}

AngleTriple angles_from_rotation(const Rotation3& r) {
  const Mat3 m = r.transpose();
  AngleTriple t;
  t.theta = std::acos(std::clamp(-m(1, 2), -1.0, 1.0));
  t.phi = std::atan2(-m(1, 0), m(1, 1));
  t.psi = std::atan2(m(0, 2), m(2, 2));
  return t;
}

Rotation3 rotation_aligning(const Vec3& v) {
  const double n = v.norm();
  if (!std::isfinite(n) || std::abs(n - 1) > 1e-10)
    throw InvalidInput("rotation_aligning: target is not a unit vector");
  const Vec3 u = v / n;
  const Vec3 e(0, 0, -1);
  const double rho2 = u.x() * u.x() + u.y() * u.y();
  if (rho2 == 0.0 && u.z() > 0) {
    Mat3 r;
    r << 1, 0, 0, 0, -1, 0, 0, 0, -1;
    return r;
  }
  // R = I + K + K^2/(1 + c), c = e.u = -u_z; 1/(1+c) formed without cancellation.
  const double q = u.z() > 0 ? (1 + u.z()) / rho2 : 1 / (1 - u.z());
  const Mat3 k = skew(e.cross(u));
  return Mat3::Identity() + k + k * k * q;
}

Rotation3 rotation_about_z(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  Mat3 r;
  r << c, -s, 0, s, c, 0, 0, 0, 1;
  return r;
}

}  // namespace hsurf
