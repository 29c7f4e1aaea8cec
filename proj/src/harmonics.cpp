#include "hsurf/harmonics.hpp"

#include "hsurf/bubble.hpp"
#include "hsurf/quadrature.hpp"

#include <algorithm>
#include <limits>
#include <random>

namespace hsurf {

double legendre_p(int n, int k, double x) {
  if (k < 0 || k > n) throw InvalidInput("legendre_p: need 0 <= k <= n");
  if (!(std::abs(x) <= 1)) throw InvalidInput("legendre_p: |x| > 1");
  const double s = std::sqrt((1 - x) * (1 + x));
  double pmm = 1.0, odd = 1.0;
  for (int i = 1; i <= k; ++i) {
    pmm *= -odd * s;
    odd += 2;
  }
  if (n == k) return pmm;
  double p0 = pmm, p1 = x * (2 * k + 1) * pmm;
  for (int l = k + 2; l <= n; ++l) {
    const double p2 = (x * (2 * l - 1) * p1 - (l + k - 1) * p0) / (l - k);
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

namespace {

double c_nk(int n, int k) {
  return std::sqrt((2 * n + 1) / (4 * kPi) *
                   std::exp(std::lgamma(n - k + 1.0) - std::lgamma(n + k + 1.0)));
}

// d/dphi of P^k_n(cos phi), from (1 - x^2) P' = (n + k) P^k_{n-1} - n x P^k_n.
double legendre_dphi(int n, int k, double phi) {
  const double x = std::cos(phi), s = std::sin(phi);
  const double prev = n - 1 >= k ? legendre_p(n - 1, k, x) : 0.0;
  return -((n + k) * prev - n * x * legendre_p(n, k, x)) / s;
}

}  // namespace

NormConstants norm_constants(int n, int k) {
  if (k < 0 || k > n) throw InvalidInput("norm_constants: need 0 <= k <= n");
  const double nan = std::numeric_limits<double>::quiet_NaN();
  NormConstants r;
  r.c = c_nk(n, k);
  r.d = k < n ? r.c / c_nk(n, k + 1) : nan;
  r.e = k > 0 ? (n - k) * (n + k + 1.0) * r.c / c_nk(n, k - 1) : nan;
  return r;
}

cplx spherical_harmonic(int n, int k, double theta, double phi) {
  const int a = std::abs(k);
  return c_nk(n, a) * legendre_p(n, a, std::cos(phi)) * std::polar(1.0, k * theta);
}

std::vector<RealHarmonic> real_basis(int n) {
  std::vector<RealHarmonic> b{{0, false}};
  for (int k = 1; k <= n; ++k) {
    b.push_back({k, false});
    b.push_back({k, true});
  }
  return b;
}

ScalarJet real_harmonic(int n, const RealHarmonic& h, double theta, double phi) {
  const double amp = (h.k == 0 ? 1.0 : std::sqrt(2.0)) * c_nk(n, h.k);
  const double p = legendre_p(n, h.k, std::cos(phi)), dp = legendre_dphi(n, h.k, phi);
  const double cs = std::cos(h.k * theta), sn = std::sin(h.k * theta);
  const double ang = h.sine ? sn : cs;
  const double dang = h.sine ? h.k * cs : -h.k * sn;
  return {amp * p * ang, amp * p * dang, amp * dp * ang};
}

namespace {

constexpr int kGaussOrder = 64;
constexpr int kTrapezoid = 128;

double levi(int a, int b, int c) { return 0.5 * (a - b) * (b - c) * (c - a); }

}  // namespace

Eigen::MatrixXcd gamma_block_complex(int n) {
  if (n < 0) throw InvalidInput("gamma_block: n must be nonnegative");
  const int m = 2 * n + 1;
  // Ladder actions in the basis Y_k, Y_{-k} = conj(Y_k); the signs for k < 0
  // come from that convention.
  Eigen::MatrixXcd lp = Eigen::MatrixXcd::Zero(m, m), lm = lp, lz = lp;
  for (int k = -n; k <= n; ++k) {
    lz(k + n, k + n) = k;
    if (k < n) lp(k + 1 + n, k + n) = (k >= 0 ? 1.0 : -1.0) * std::sqrt((n - k) * (n + k + 1.0));
    if (k > -n) lm(k - 1 + n, k + n) = (k >= 1 ? 1.0 : -1.0) * std::sqrt((n + k) * (n - k + 1.0));
  }
  const cplx I(0, 1);
  const Eigen::MatrixXcd lx = 0.5 * (lp + lm), ly = -0.5 * I * (lp - lm);
  const Eigen::MatrixXcd* L[3] = {&lx, &ly, &lz};
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(3 * m, 3 * m);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(m, m);
      for (int c = 0; c < 3; ++c)
        if (levi(a, b, c) != 0) v += -I * levi(a, b, c) * (*L[c]);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) g(3 * i + a, 3 * j + b) = -2.0 * v(i, j);
    }
  g.diagonal().array() -= n * (n + 1.0);
  return g;
}

HarmonicBlock gamma_block(int n) {
  const Eigen::MatrixXcd gc = gamma_block_complex(n);
  const int m = 2 * n + 1;
  HarmonicBlock blk;
  blk.n = n;
  blk.basis = real_basis(n);
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(m, m);
  const double r = 1 / std::sqrt(2.0);
  const cplx I(0, 1);
  for (int b = 0; b < m; ++b) {
    const RealHarmonic& h = blk.basis[b];
    if (h.k == 0) {
      u(n, b) = 1.0;
    } else if (!h.sine) {
      u(n + h.k, b) = r;
      u(n - h.k, b) = r;
    } else {
      u(n + h.k, b) = -I * r;
      u(n - h.k, b) = I * r;
    }
  }
  Eigen::MatrixXcd u3 = Eigen::MatrixXcd::Zero(3 * m, 3 * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int a = 0; a < 3; ++a) u3(3 * i + a, 3 * j + a) = u(i, j);
  const Eigen::MatrixXcd g = u3.adjoint() * gc * u3;
  if (g.imag().cwiseAbs().maxCoeff() > 1e-10 * std::max(1.0, g.real().cwiseAbs().maxCoeff()))
    throw Error("gamma_block: real form is not real");
  blk.gamma = g.real();
  return blk;
}

namespace {

struct SphereNode {
  double theta, phi, w;  // w includes the dx dtheta weights
};

std::vector<SphereNode> sphere_nodes() {
  const GaussRule& gr = gauss_legendre(kGaussOrder);
  std::vector<SphereNode> out;
  for (int i = 0; i < kGaussOrder; ++i)
    for (int j = 0; j < kTrapezoid; ++j)
      out.push_back({2 * kPi * j / kTrapezoid, std::acos(gr.nodes[i]),
                     gr.weights[i] * 2 * kPi / kTrapezoid});
  return out;
}

// <e_a' Y'_b', Gamma(e_a Y_b)>, weak form, degree n sources and degree m targets.
Eigen::MatrixXd quadrature_matrix(int n, int m) {
  const auto bn = real_basis(n), bm = real_basis(m);
  const int sn = static_cast<int>(bn.size()), sm = static_cast<int>(bm.size());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(3 * sm, 3 * sn);
  std::vector<ScalarJet> jn(sn), jm(sm);
  for (const SphereNode& q : sphere_nodes()) {
    const double s = std::sin(q.phi), c = std::cos(q.phi);
    const double ct = std::cos(q.theta), st = std::sin(q.theta);
    const Vec3 dphi(c * ct, c * st, -s), dtheta(-s * st, s * ct, 0);
    for (int b = 0; b < sn; ++b) jn[b] = real_harmonic(n, bn[b], q.theta, q.phi);
    for (int b = 0; b < sm; ++b) jm[b] = real_harmonic(m, bm[b], q.theta, q.phi);
    for (int b = 0; b < sn; ++b)
      for (int a = 0; a < 3; ++a) {
        const Vec3 e = Vec3::Unit(a);
        const Vec3 wedge = jn[b].dtheta * e.cross(dphi) + jn[b].dphi * dtheta.cross(e);
        for (int bb = 0; bb < sm; ++bb) {
          const double grad = jn[b].dphi * jm[bb].dphi + jn[b].dtheta * jm[bb].dtheta / (s * s);
          for (int aa = 0; aa < 3; ++aa) {
            double v = -2 / s * jm[bb].v * wedge[aa];
            if (aa == a) v -= grad;
            out(3 * bb + aa, 3 * b + a) += q.w * v;
          }
        }
      }
  }
  return out;
}

}  // namespace

Eigen::MatrixXd gamma_block_quadrature(int n) {
  if (n < 0) throw InvalidInput("gamma_block_quadrature: n must be nonnegative");
  return quadrature_matrix(n, n);
}

double block_leakage(int n, int m) {
  if (n < 0 || m < 0) throw InvalidInput("block_leakage: degrees must be nonnegative");
  return quadrature_matrix(n, m).cwiseAbs().maxCoeff();
}

KernelInfo kernel_info(int n, double tol) {
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(gamma_block(n).gamma).singularValues();
  KernelInfo k;
  k.sigma_max = sv.maxCoeff();
  k.margin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < sv.size(); ++i) {
    if (sv[i] < tol * k.sigma_max)
      ++k.dim;
    else
      k.margin = std::min(k.margin, sv[i]);
  }
  // n = 0: the whole block vanishes.
  if (k.sigma_max == 0.0) {
    k.dim = static_cast<int>(sv.size());
    k.margin = std::numeric_limits<double>::quiet_NaN();
  }
  return k;
}

int kernel_dimension(int n, double tol) { return kernel_info(n, tol).dim; }

namespace {

Vec3 W_value(const KernelSample& s, const Mat3& S, const Vec3& b, const Vec3& X) {
  return s.c + S * X + b.dot(X) * X;
}

double kernel_residual_exact(const KernelSample& s, const Point2& xi) {
  Mat3 S;
  S << 0, s.alpha, s.beta, -s.alpha, 0, s.gamma, -s.beta, -s.gamma, 0;
  const Vec3 b(s.alpha_p, s.beta_p, s.gamma_p);
  const BubbleParams unit;
  const FieldJet d = bubble_jet(unit, xi);
  const BubbleSecond d2 = bubble_second_derivatives(unit, xi);
  const Vec3& X = d.value;
  auto DW = [&](const Vec3& h) -> Vec3 { return S * h + b.dot(h) * X + b.dot(X) * h; };
  auto D2W = [&](const Vec3& h) -> Vec3 { return 2 * b.dot(h) * h; };
  const Vec3 wx = DW(d.dx), wy = DW(d.dy);
  const Vec3 lap = D2W(d.dx) + D2W(d.dy) + DW(d2.xx + d2.yy);
  return (lap - 2 * (wx.cross(d.dy) + d.dx.cross(wy))).norm();
}

double kernel_residual_fd(const KernelSample& s, const Point2& xi) {
  Mat3 S;
  S << 0, s.alpha, s.beta, -s.alpha, 0, s.gamma, -s.beta, -s.gamma, 0;
  const Vec3 b(s.alpha_p, s.beta_p, s.gamma_p);
  auto w = [&](const Point2& p) { return W_value(s, S, b, stereographic(p)); };
  const double h = 1e-4;
  const Point2 ex(h, 0), ey(0, h);
  const Vec3 w0 = w(xi);
  const Vec3 lap = (w(xi + ex) + w(xi - ex) + w(xi + ey) + w(xi - ey) - 4 * w0) / (h * h);
  const Vec3 wx = (w(xi + ex) - w(xi - ex)) / (2 * h), wy = (w(xi + ey) - w(xi - ey)) / (2 * h);
  const auto [dx, dy] = bubble_derivatives(BubbleParams{}, xi);
  return (lap - 2 * (wx.cross(dy) + dx.cross(wy))).norm();
}

}  // namespace

KernelResidual verify_polynomial_kernel(const KernelSample& s) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  KernelResidual r;
  for (int i = 0; i < 100; ++i) {
    const double rad = 2 * std::sqrt(u(rng)), ang = 2 * kPi * u(rng);
    const Point2 xi(rad * std::cos(ang), rad * std::sin(ang));
    r.exact = std::max(r.exact, kernel_residual_exact(s, xi));
    r.fd = std::max(r.fd, kernel_residual_fd(s, xi));
  }
  return r;
}

std::vector<KernelSample> kernel_family_members() {
  std::vector<KernelSample> out(7);
  out[0].c = Vec3(1, 0, 0);
  out[1].alpha = 1;
  out[2].beta = 1;
  out[3].gamma = 1;
  out[4].alpha_p = 1;
  out[5].beta_p = 1;
  out[6].gamma_p = 1;
  return out;
}

SpectralGapReport spectral_gap_check(int n_max) {
  if (n_max < 4) throw InvalidInput("spectral_gap_check: n_max must be at least 4");
  SpectralGapReport rep;
  rep.n_max = n_max;
  rep.pass = true;
  const auto nodes = sphere_nodes();
  for (int n = 0; n <= n_max; ++n) {
    const HarmonicBlock blk = gamma_block(n);
    const Eigen::MatrixXd q = -0.5 * (blk.gamma + blk.gamma.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(q);
    const Eigen::VectorXd ev = es.eigenvalues();
    const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());

    // Coefficients of delta = (x1, x2, x3) in this block, by quadrature.
    Eigen::VectorXd delta = Eigen::VectorXd::Zero(q.rows());
    for (const SphereNode& p : nodes) {
      const Vec3 x(std::sin(p.phi) * std::cos(p.theta), std::sin(p.phi) * std::sin(p.theta),
                   std::cos(p.phi));
      for (std::size_t b = 0; b < blk.basis.size(); ++b) {
        const double y = real_harmonic(n, blk.basis[b], p.theta, p.phi).v;
        for (int a = 0; a < 3; ++a) delta[3 * b + a] += p.w * x[a] * y;
      }
    }
    const bool has_delta = delta.norm() > 1e-8;
    if (has_delta)
      rep.delta_value = delta.dot(q * delta) / (n * (n + 1.0) * delta.squaredNorm());

    int dim = 0;
    double lo = std::numeric_limits<double>::infinity();
    for (int i = 0; i < ev.size(); ++i) {
      if (std::abs(ev[i]) < 1e-8 * scale) {
        ++dim;
        rep.max_kernel_value = std::max(rep.max_kernel_value, std::abs(ev[i]));
        continue;
      }
      if (has_delta && std::abs(es.eigenvectors().col(i).dot(delta)) > 0.5 * delta.norm()) continue;
      lo = std::min(lo, ev[i] / (n * (n + 1.0)));
    }
    if (n == 0) dim = static_cast<int>(ev.size());
    rep.kernel_dims.push_back(dim);
    rep.min_nonkernel.push_back(n == 0 ? std::numeric_limits<double>::quiet_NaN() : lo);
    if (n >= 1 && !(lo > 0)) rep.pass = false;
  }
  if (!(rep.delta_value < 0) || !(rep.max_kernel_value < 1e-8)) rep.pass = false;
  return rep;
}

double appendix_bound() { return std::sqrt(18 + std::sqrt(24.0)); }

bool appendix_inequality_check(int n) {
  if (n < 1) throw InvalidInput("appendix_inequality_check: n must be positive");
  return n + 1 <= appendix_bound();
}

}  // namespace hsurf
