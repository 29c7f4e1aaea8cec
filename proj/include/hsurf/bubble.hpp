#pragma once

#include "hsurf/common.hpp"

#include <array>
#include <functional>
#include <utility>

namespace hsurf {

Vec3 stereographic(const Point2& xi);

Vec3 bubble_value(const BubbleParams& b, const Point2& xi);

// (d/dx, d/dy) of R pi(lambda (xi - a)).
std::pair<Vec3, Vec3> bubble_derivatives(const BubbleParams& b, const Point2& xi);

struct BubbleSecond {
  Vec3 xx, xy, yy;
};
BubbleSecond bubble_second_derivatives(const BubbleParams& b, const Point2& xi);
Vec3 bubble_laplacian(const BubbleParams& b, const Point2& xi);

Vec3 wedge_xy(const BubbleParams& b, const Point2& xi);

FieldJet bubble_jet(const BubbleParams& b, const Point2& xi);

// |Delta delta - 2 delta_x ^ delta_y| at xi.
double bubble_pde_residual(const BubbleParams& b, const Point2& xi);

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
};

// Integral over R^2 of a radial integrand f(r), via r = tan(s) and adaptive
// Gauss-Kronrod in s on [s0, s1] (default the whole half line).
QuadResult integrate_radial_plane(const std::function<double(double)>& f, double tol,
                                  double s0 = 0.0, double s1 = kPi / 2);

// Integral over R^2 of f(xi): adaptive Gauss-Kronrod in s, n_angle-point trapezoid
// on the angular sector [alpha0, alpha1).
QuadResult integrate_plane(const std::function<double(const Point2&)>& f, double tol, int n_angle,
                           double alpha0 = 0.0, double alpha1 = 2 * kPi);

double a0_integrand(const Point2& xi);
double identity_integrand(const Point2& xi);

QuadResult constant_A0_quad(double tol = 1e-13);
QuadResult identity_integral_quad(double tol = 1e-13);

// Closed values backed by the quadrature above; throw QuadratureFailure if
// the estimated error exceeds 1e-10.
double constant_A0();
double identity_integral_zero();

double pohozaev_residual(const FieldJet& v, const Point2& xi);

Mat3 skew(const Vec3& w);
bool is_rotation(const Mat3& r, double tol = 1e-12);

// M(t), the chart matrix; rotation_from_angles(t) is its inverse.
Mat3 chart_matrix(const AngleTriple& t);
std::array<Mat3, 3> chart_matrix_derivatives(const AngleTriple& t);
Rotation3 rotation_from_angles(const AngleTriple& t);

// R with R^{-1} base = M(t).
Rotation3 rotation_relative(const Rotation3& base, const AngleTriple& t);

// Local inverse of rotation_from_angles near (pi/2, 0, 0).
AngleTriple angles_from_rotation(const Rotation3& r);

Rotation3 rotation_aligning(const Vec3& v);

Rotation3 rotation_about_z(double angle);

}  // namespace hsurf
