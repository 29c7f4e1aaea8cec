#pragma once

#include "hsurf/common.hpp"

#include <vector>

namespace hsurf {

// P^k_n(x) with the (-1)^k phase, by upward recurrence in n at fixed k.
double legendre_p(int n, int k, double x);

struct NormConstants {
  double c = 0.0;  // ((2n+1)/4pi)^{1/2} ((n-k)!/(n+k)!)^{1/2}
  double d = 0.0;  // c_{n,k}/c_{n,k+1}; NaN for k = n
  double e = 0.0;  // (n-k)(n+k+1) c_{n,k}/c_{n,k-1}; NaN for k = 0
};
NormConstants norm_constants(int n, int k);

// Y_{n,k}(theta, phi) = c_{n,|k|} P^{|k|}_n(cos phi) e^{ik theta}; theta azimuth, phi polar.
cplx spherical_harmonic(int n, int k, double theta, double phi);

// Real basis of degree n: Y_0, sqrt2 Re Y_k, sqrt2 Im Y_k (k = 1..n).
struct RealHarmonic {
  int k = 0;
  bool sine = false;
};
std::vector<RealHarmonic> real_basis(int n);
// Value and (theta, phi) partials of a real basis function.
struct ScalarJet {
  double v = 0.0, dtheta = 0.0, dphi = 0.0;
};
ScalarJet real_harmonic(int n, const RealHarmonic& h, double theta, double phi);

// Gamma F = Lap F - (2/sin phi)(F_theta ^ delta_phi + delta_theta ^ F_phi) on
// degree-n vector harmonics, delta(theta, phi) = (sin phi cos theta, sin phi sin theta, cos phi).
// Index 3*b + a: component a of real basis function b.
struct HarmonicBlock {
  int n = 0;
  Eigen::MatrixXd gamma;
  std::vector<RealHarmonic> basis;
};

// Closed form: Gamma = -n(n+1) - 2 L.S, assembled from ladder actions.
HarmonicBlock gamma_block(int n);
// Same operator in the complex basis Y_{n,k} e_a.
Eigen::MatrixXcd gamma_block_complex(int n);
// Weak form of the defining formula by quadrature on S^2
// (Gauss-Legendre order 64 in cos phi, 128-point trapezoid in theta).
Eigen::MatrixXd gamma_block_quadrature(int n);
// max |<Gamma(Y e_a), Y' e_b>| over degree-n sources and degree-m targets.
double block_leakage(int n, int m);

// Singular values below tol * sigma_max count as zero.
int kernel_dimension(int n, double tol = 1e-8);
struct KernelInfo {
  int dim = 0;
  double sigma_max = 0.0;
  double margin = 0.0;  // smallest singular value above the threshold
};
KernelInfo kernel_info(int n, double tol = 1e-8);

// w = c + S X + (a'.X) X on the sphere, S = [[0, a, b], [-a, 0, g], [-b, -g, 0]].
struct KernelSample {
  Vec3 c = Vec3::Zero();
  double alpha = 0, beta = 0, gamma = 0;
  double alpha_p = 0, beta_p = 0, gamma_p = 0;
};
struct KernelResidual {
  double fd = 0.0;     // FD Laplacian, step 1e-4
  double exact = 0.0;  // chain rule through the bubble jet
};
// max |Lap w - 2(w_x ^ delta_y + delta_x ^ w_y)| over 100 seeded points, |xi| <= 2,
// for w pulled back through the stereographic bubble.
KernelResidual verify_polynomial_kernel(const KernelSample& s);
// The seven one-parameter members (c = e1 counted as the constant family).
std::vector<KernelSample> kernel_family_members();

struct SpectralGapReport {
  int n_max = 0;
  std::vector<int> kernel_dims;
  // Per degree: smallest eigenvalue of -Gamma/(n(n+1)) off the kernel and the
  // delta direction (NaN at n = 0).
  std::vector<double> min_nonkernel;
  double max_kernel_value = 0.0;  // |eigenvalue| on kernel directions
  double delta_value = 0.0;       // <-Gamma delta, delta>/<-Lap delta, delta>
  bool pass = false;
};
SpectralGapReport spectral_gap_check(int n_max);

// n + 1 <= (18 + sqrt 24)^{1/2}.
double appendix_bound();
bool appendix_inequality_check(int n);

}  // namespace hsurf
