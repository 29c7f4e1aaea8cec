#pragma once

#include "hsurf/datum.hpp"
#include "hsurf/reduced.hpp"

#include <cstdint>
#include <vector>

namespace hsurf {

using Matrix6d = Eigen::Matrix<double, 6, 6>;

// (x - w|xi|^2, y, 0)/|1 - w xi|^2, the harmonic extension of 1/conj(xi - w).
Vec3 g_omega(double omega, const Point2& xi);

// d_{R^-1} g_omega for R = rotation_from_angles(t):
// (M00 + M11) Re F' + (M01 - M10) Im F', F' = 1/(1 - w xi)^2.
double d_Rinv_g_omega(double omega, const AngleTriple& t, const Point2& xi);

// The Hessian of the one-bubble energy at (w, 0, 2/eps, pi/2, 0, 0) is
// 8 A0 * 2 eps^2/(1 - w^2)^2 * matrix_A, coordinates (x, y, lambda, theta, psi, phi).
Matrix6d matrix_A(double omega, double eps);

struct SphereConfig {
  std::vector<Vec3> centers;         // unit vectors v_j
  std::vector<Rotation3> aligning;   // aligning[j] (0,0,-1) = v_j

  static SphereConfig from_centers(const std::vector<Vec3>& v);
  // v_j = (cos 2 pi j/k, sin 2 pi j/k, 0), j = 1..k.
  static SphereConfig equally_spaced(int k);
  std::size_t size() const { return centers.size(); }
};

struct ConstructionParams {
  int k = 1;
  double omega = 0.95;
  double epsilon = 1e-3;
  double mu = 0.1;
  SphereConfig target;
  int face_samples = 5;      // grid points per box edge on each face
  int random_contexts = 2;   // extra positions of the other blocks
  std::uint64_t seed = 1;

  void validate() const;
};

// Block coordinates chi = (u, v, lambda, theta, psi, phi). Bubble j sits at
// Rot(2 pi j/k) ((w, 0) + (u, v)) with rotation cal R_j M(t)^T Rot3_j, where
// Rot3_j rotates by -2 pi j/k about e3.
struct BoxTmu {
  Vector6d anchor;  // (0, 0, 2/eps, pi/2, 0, 0)
  Vector6d half;    // (mu q, mu q, mu/eps, mu, mu, mu), q = 1 - w^2

  static BoxTmu make(const ConstructionParams& p);
  bool contains(const Vector6d& chi) const;
};

DatumPtr build_G_k_omega(const ConstructionParams& p);

// The bubble of block j at block coordinates chi.
ChartedBubble block_bubble(const ConstructionParams& p, int j, const Vector6d& chi);

// Sigma and its gradient in block coordinates, all blocks stacked.
double construction_energy(const ConstructionParams& p, const BoundaryDatum& G,
                           const Eigen::VectorXd& chi);
Eigen::VectorXd construction_gradient(const ConstructionParams& p, const BoundaryDatum& G,
                                      const Eigen::VectorXd& chi);
// Central differences of the analytic gradient, symmetrized.
Eigen::MatrixXd construction_hessian(const ConstructionParams& p, const BoundaryDatum& G,
                                     const Eigen::VectorXd& chi);

struct Certificate {
  std::vector<double> block_margin;  // min <grad_j Sigma, chi_j - anchor> over samples
  double min_margin = 0.0;
  int worst_block = -1;
  Vector6d worst_sample = Vector6d::Zero();
  std::size_t samples = 0;
  double hessian_min_eig = 0.0;
  double hessian_asymmetry = 0.0;  // before symmetrization, relative
  bool boundary_ok = false, hessian_pd = false;
  bool pass() const { return boundary_ok && hessian_pd; }
};

// Boundary positivity on every face of every block box with the other blocks
// at the solution, at their anchors and at seeded random points, plus the
// Hessian test at the solution.
Certificate certify(const ConstructionParams& p, const BoundaryDatum& G,
                    const Eigen::VectorXd& solution);

struct CriticalResult {
  Configuration config;
  std::vector<ChartedBubble> bubbles;
  Eigen::VectorXd chi;             // stacked block coordinates
  double grad_norm = 0.0;
  int iterations = 0;
  std::vector<double> trajectory;  // |grad Sigma| per Newton iterate
  Certificate certificate;
};

class SearchFailure : public Error {
 public:
  SearchFailure(const std::string& what, std::vector<double> trajectory)
      : Error(what), trajectory_(std::move(trajectory)) {}
  const std::vector<double>& trajectory() const { return trajectory_; }

 private:
  std::vector<double> trajectory_;
};

class CertificateFailure : public Error {
 public:
  CertificateFailure(const std::string& what, CriticalResult r) : Error(what), result_(std::move(r)) {}
  const CriticalResult& result() const { return result_; }

 private:
  CriticalResult result_;
};

// Damped Newton from the box anchors on the 6k gradient. Throws SearchFailure on
// divergence or box exit and CertificateFailure if the certificate fails.
CriticalResult find_critical_configuration(const ConstructionParams& p);

// Centers R_j (0, 0, -1) of the limiting spheres.
SphereConfig limiting_spheres(const Configuration& c);

}  // namespace hsurf
