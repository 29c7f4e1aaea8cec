#pragma once

#include "hsurf/annulus.hpp"
#include "hsurf/common.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace hsurf {

// Holomorphic map f : Omega -> D with its first two derivatives.
struct ConformalMap {
  std::function<cplx(cplx)> f;
  std::function<cplx(cplx)> df;
  std::function<cplx(cplx)> d2f;
  std::string name = "custom";
  std::vector<cplx> coeffs;  // parameters for named maps, for reports
};

ConformalMap identity_map();
// f(z) = (a z + b)/(c z + d); Omega is the preimage of the unit disk.
ConformalMap mobius_map(cplx a, cplx b, cplx c, cplx d);
// f(z) = e^{i angle} (z - b)/(1 - conj(b) z), an automorphism of D.
ConformalMap disk_automorphism(double angle, cplx b);

class DomainModel {
 public:
  enum class Kind { Disk, SimplyConnected, Annulus };

  static DomainModel disk(double tau0 = 0.05);
  static DomainModel simply_connected(ConformalMap f, double tau0 = 0.05);
  static DomainModel annulus(double rho, int K = 0, double tau0 = 0.05);

  Kind kind() const { return kind_; }
  double tau0() const { return tau0_; }
  const ConformalMap& map() const;
  const AnnulusModel& annulus_model() const;

  bool contains(const Point2& p) const;
  // Disk: 1 - |p|. Annulus: metric distance. Simply connected: 1 - |f(p)|.
  double boundary_distance(const Point2& p) const;

 private:
  Kind kind_ = Kind::Disk;
  double tau0_ = 0.05;
  ConformalMap map_;
  AnnulusModel ann_;
};

std::string kind_name(DomainModel::Kind k);

double regular_part(const DomainModel& d, const Point2& a, const Point2& xi);
double green(const DomainModel& d, const Point2& a, const Point2& xi);

struct HFunctions {
  double h1 = 0, h2 = 0, h3 = 0;  // h3 is NaN outside the disk
};
HFunctions h_functions(const DomainModel& d, const Point2& a, const Point2& xi,
                       int n_poisson = 512);

// [[dh1/dx, dh1/dy], [dh2/dx, dh2/dy]] in xi.
Eigen::Matrix2d h_gradients(const DomainModel& d, const Point2& a, const Point2& xi);

double h_tilde(const DomainModel& d, const Point2& a);
Point2 h_tilde_gradient(const DomainModel& d, const Point2& a);

// E = [[dG1/dx, dG1/dy], [dG2/dx, dG2/dy]] at (a, b), G_i = dG/da_i.
Eigen::Matrix2d green_grad_derivatives(const DomainModel& d, const Point2& a, const Point2& b);

struct GreenGradJet {
  Eigen::Matrix2d E;
  Eigen::Matrix2d dE_da1, dE_da2;  // in the first point
  Eigen::Matrix2d dE_dx, dE_dy;    // in the second point
};
GreenGradJet green_grad_jet(const DomainModel& d, const Point2& a, const Point2& b);

// Values and derivatives up to second order of a harmonic R^3-valued map.
struct HarmonicJet {
  Vec3 v = Vec3::Zero();
  Vec3 dx = Vec3::Zero(), dy = Vec3::Zero();
  Vec3 dxx = Vec3::Zero(), dxy = Vec3::Zero(), dyy = Vec3::Zero();
};

using BoundaryMap = std::function<Vec3(double)>;

// Poisson-kernel trapezoid rule with n boundary nodes.
Vec3 harmonic_extension_disk(const BoundaryMap& boundary, const Point2& xi, int n);

// Band-limited extension: the first n/2 Fourier modes of the boundary samples,
// summed as c_0 + 2 Re sum c_m xi^m. Exact derivatives, accurate up to |xi| = 1.
class FourierExtension {
 public:
  FourierExtension() = default;
  FourierExtension(const BoundaryMap& boundary, int n);
  HarmonicJet jet(const Point2& xi) const;
  Vec3 value(const Point2& xi) const;
  int modes() const { return static_cast<int>(coef_.size()); }

 private:
  Vec3 c0_ = Vec3::Zero();
  std::vector<Eigen::Vector3cd> coef_;  // m = 1..M
};

// (phi, phi_approx): phi from the Poisson extension of delta on the circle,
// phi_approx = R (2/lam h1, 2/lam h2, 1 - 2/lam^2 h3).
std::pair<Vec3, Vec3> bubble_boundary_correction(const BubbleParams& b, const Point2& xi,
                                                 int n = 512);

// (harmonic radius e^{-H(a,a)}, hyperbolic radius).
std::pair<double, double> radii(const DomainModel& d, const Point2& a);

}  // namespace hsurf
