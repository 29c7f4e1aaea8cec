#pragma once

#include "hsurf/datum.hpp"
#include "hsurf/reduced.hpp"

#include <vector>

namespace hsurf {

struct Resolution {
  int n_r = 256;          // Gauss-Legendre nodes in r, global grid
  int n_theta = 512;      // trapezoid nodes in angle, global grid
  int panel_order = 24;   // Gauss-Legendre nodes per radial panel, bubble patches
  int patch_theta = 256;  // trapezoid nodes in angle, bubble patches
  int n_boundary = 512;   // boundary samples for the harmonic extension of delta

  Resolution doubled() const;
};

struct QuadNode {
  Point2 xi;
  double w;
};

// Partition of unity on D: a polar grid weighted by 1 - sum chi_i plus one
// polar patch per center weighted by chi_i. The patch radial panels start at
// 1/lambda_i and double outward.
std::vector<QuadNode> disk_quadrature(const std::vector<Point2>& centers,
                                      const std::vector<double>& scales, const Resolution& res);

// Fixed-order sum of w f over the nodes.
double integrate_nodes(const std::vector<QuadNode>& nodes,
                       const std::function<double(const Point2&)>& f);

// P delta = delta - phi, phi the band-limited harmonic extension of delta on the circle.
class ProjectedBubble {
 public:
  ProjectedBubble(const BubbleParams& b, int n_boundary);
  FieldJet jet(const Point2& xi) const;
  FieldJet phi(const Point2& xi) const;
  const BubbleParams& params() const { return b_; }

 private:
  BubbleParams b_;
  FourierExtension phi_;
};

struct FieldGrid {
  std::vector<QuadNode> nodes;
  std::vector<FieldJet> u;
  std::vector<Vec3> boundary_trace;  // u at 256 equally spaced boundary angles
  double max_boundary_trace() const;
};

FieldGrid build_projected_sum(const Configuration& c, const Resolution& res = {});

struct EnergyTerms {
  double dirichlet = 0.0;  // 1/2 int |grad u|^2
  double cubic = 0.0;      // 2/3 int u . (u_x ^ u_y)
  double linear = 0.0;     // eps int u . (u_x ^ g_y + g_x ^ u_y)
  double quadratic = 0.0;  // 2 eps^2 int u . (g_x ^ g_y)
  double total() const { return dirichlet + cubic + linear + quadratic; }
};

// Throws InvalidField when the boundary trace of u exceeds 1e-4.
EnergyTerms euler_terms(const FieldGrid& u, double eps, const BoundaryDatum& g);
double euler_functional(const FieldGrid& u, double eps, const BoundaryDatum& g);

struct ConvergedEnergy {
  EnergyTerms terms;
  double rel_change = 0.0;  // between the last two resolutions
  Resolution res;
};

// Doubles the resolution until the total changes by less than rel_tol (at
// most max_doublings times); throws QuadratureFailure otherwise.
ConvergedEnergy converged_energy(const Configuration& c, const BoundaryDatum& g,
                                 const Resolution& res = {}, double rel_tol = 1e-6,
                                 int max_doublings = 2);

struct OneBubbleReport {
  std::vector<double> lambdas, energies, model, residuals, slopes;
  double c_inf = 0.0;
  double c_direct = 4 * kPi / 3;
  double c_reduced = 0.0;  // 8 A0/9
  bool constant_ok = false, slope_ok = false;
  // Linear datum term against -8 A0 (eps/lambda) d_{R^-1} g(a), when g != 0.
  std::vector<double> datum_quad, datum_closed;
  double datum_rel_error = 0.0;
  bool datum_ok = true;
  bool pass() const { return constant_ok && slope_ok && datum_ok; }
};

// eps = kappa/lambda for each lambda.
OneBubbleReport validate_one_bubble_expansion(const Point2& a, const Rotation3& R,
                                              const std::vector<double>& lambdas, double kappa,
                                              const BoundaryDatum& g, const Resolution& res = {});

struct PairReport {
  std::vector<double> lambdas, coef_quad, rel_error;
  double coef_closed = 0.0;
  double coef_extrapolated = 0.0;  // Richardson in 1/lambda over the last two entries
  double rel_error_last = 0.0;
  // Third-row rotation R2 = [[1,0,0],[0,0,-1],[0,1,0]]: deviation from the
  // closed form, relative to the diagonal coefficient.
  double third_row_rel = 0.0;
  bool diagonal_ok = false, third_row_ok = false;
  bool pass() const { return diagonal_ok && third_row_ok; }
};

// 2 int P delta_2 . (delta_1x ^ delta_1y) times lambda_1 lambda_2, lambda_1 = lambda_2.
double pair_coefficient_quadrature(const BubbleParams& b1, const BubbleParams& b2,
                                   const Resolution& res = {});
PairReport validate_pair_interaction(const Point2& p1, const Point2& p2, const Rotation3& R1,
                                     const Rotation3& R2, const std::vector<double>& lambdas,
                                     const Resolution& res = {});

struct DatumCrossReport {
  std::vector<double> eps, quad, closed, remainder;
  std::vector<double> slopes;  // d log|remainder| / d log eps
  double min_slope = 0.0;
  bool pass = false;           // remainder o(eps^2): every slope >= 2.5
};

// Centers and rotations from templ; every scale is set to lambda.
DatumCrossReport validate_datum_cross_term(const std::vector<BubbleParams>& templ,
                                           const BoundaryDatum& g,
                                           const std::vector<double>& lambdas, double kappa,
                                           const Resolution& res = {});

}  // namespace hsurf
