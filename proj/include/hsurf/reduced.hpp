#pragma once

#include "hsurf/datum.hpp"
#include "hsurf/green.hpp"

#include <array>
#include <vector>

namespace hsurf {

using Vector6d = Eigen::Matrix<double, 6, 1>;

// R = left * M(t)^T * right. With right = I this is rotation_relative(left, t).
struct BubbleChart {
  Rotation3 left = Rotation3::Identity();
  AngleTriple t;
  Rotation3 right = Rotation3::Identity();

  Rotation3 rotation() const;
  std::array<Mat3, 3> rotation_derivatives() const;  // d/d(theta, psi, phi)
};

// Position, scale and chart of one bubble: the six reduced coordinates.
struct ChartedBubble {
  Point2 center = Point2::Zero();
  double scale = 1.0;
  BubbleChart chart;

  BubbleParams params() const { return {center, scale, chart.rotation()}; }
  Vector6d coords() const;  // (x, y, lambda, theta, psi, phi)
  void set_coords(const Vector6d& v);
};

struct Configuration {
  double epsilon = 0.0;
  std::vector<BubbleParams> bubbles;
  double cbar = 50.0;
};

// Throws InvalidConfiguration naming the violated bound.
void validate_configuration(const Configuration& c, const DomainModel& d);

// d_R g(a) = d/dx (R g)_1 + d/dy (R g)_2.
double d_R_g(const BoundaryDatum& g, const Rotation3& R, const Point2& a);
double d_Rinv_g(const BoundaryDatum& g, const Rotation3& R, const Point2& a);

double f_single(double eps, const BubbleParams& b, const DomainModel& d, const BoundaryDatum& g);

// -16 A0 <(R_i^T R_j)_{2x2}, E(p_i, p_j)>.
double interaction_pair(const Point2& pi, const Point2& pj, const Rotation3& Ri,
                        const Rotation3& Rj, const DomainModel& d);
// Same coefficient assembled from the singular parts and dh/dx, dh/dy.
double interaction_pair_h(const Point2& pi, const Point2& pj, const Rotation3& Ri,
                          const Rotation3& Rj, const DomainModel& d);

struct ErrorScales {
  double e_tilde = 0.0;                // eps^2 + sum eps |log lam|/lam + sum 1/(lam_i lam_j)
  std::vector<double> e_eps_lambda;    // eps^2 + eps/lam_i, per bubble
  double e_pairs = 0.0;                // sum over pairs of e(lam_i, lam_j)
  double e_triples = 0.0;              // sum 1/(lam_i lam_j lam_k)
};

struct ReducedEnergyReport {
  double value = 0.0;
  double modeled_energy = 0.0;         // 8k/9 A0 + value
  double modeled_energy_direct = 0.0;  // k 4pi/3 + value
  std::vector<Vector6d> gradient;      // per bubble: x, y, lambda, theta, psi, phi
  ErrorScales diagnostics;
};

ErrorScales error_scales(const Configuration& c);

double sigma_total(const Configuration& c, const DomainModel& d, const BoundaryDatum& g);
// Angle partials are taken in the chart centered at each bubble's rotation.
ReducedEnergyReport sigma_gradient(const Configuration& c, const DomainModel& d,
                                   const BoundaryDatum& g);

// Unvalidated evaluation in explicit charts; used by the construction.
double sigma_charted(double eps, const std::vector<ChartedBubble>& b, const DomainModel& d,
                     const BoundaryDatum& g);
std::vector<Vector6d> sigma_gradient_charted(double eps, const std::vector<ChartedBubble>& b,
                                             const DomainModel& d, const BoundaryDatum& g);

// lambda = (2/eps) H~(a)/d_{R^-1} g(a).
double optimal_lambda(double eps, const Point2& a, const Rotation3& R, const DomainModel& d,
                      const BoundaryDatum& g);

// (plus, minus) = sigma_1 +- sigma_2 of [g_x g_y], the extremal values of d_{R^-1} g.
std::pair<double, double> rotation_extremal_datum(const BoundaryDatum& g, const Point2& a);
double concentration_W(const BoundaryDatum& g, const DomainModel& d, const Point2& a);

// -16 A0 (sigma_1 + sigma_2)(E(a, b)): the interaction after extremizing R_a^T R_b.
double two_bubble_extremal(const Point2& a, const Point2& b, const DomainModel& d);

struct ExtremalRotation {
  Rotation3 relative;  // R_a^T R_b
  double value = 0.0;  // interaction coefficient at that rotation
};
// Same value by SO(3) search over the bracket of interaction_pair.
ExtremalRotation two_bubble_extremal_rotation(const Point2& a, const Point2& b,
                                              const DomainModel& d);

}  // namespace hsurf
