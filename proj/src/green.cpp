#include "hsurf/green.hpp"

#include "hsurf/bubble.hpp"

#include <limits>

namespace hsurf {

ConformalMap identity_map() {
  ConformalMap m;
  m.f = [](cplx z) { return z; };
  m.df = [](cplx) { return cplx(1.0); };
  m.d2f = [](cplx) { return cplx(0.0); };
  m.name = "identity";
  return m;
}

ConformalMap mobius_map(cplx a, cplx b, cplx c, cplx d) {
  const cplx det = a * d - b * c;
  if (std::abs(det) < 1e-14) throw InvalidInput("mobius_map: degenerate coefficients");
  ConformalMap m;
  m.f = [=](cplx z) { return (a * z + b) / (c * z + d); };
  m.df = [=](cplx z) {
    const cplx w = c * z + d;
    return det / (w * w);
  };
  m.d2f = [=](cplx z) {
    const cplx w = c * z + d;
    return -2.0 * c * det / (w * w * w);
  };
  m.name = "mobius";
  m.coeffs = {a, b, c, d};
  return m;
}

ConformalMap disk_automorphism(double angle, cplx b) {
  if (std::abs(b) >= 1) throw InvalidInput("disk_automorphism: |b| must be below 1");
  const cplx e = std::polar(1.0, angle);
  ConformalMap m = mobius_map(e, -e * b, -std::conj(b), 1.0);
  m.name = "disk_automorphism";
  return m;
}

DomainModel DomainModel::disk(double tau0) {
  DomainModel d;
  d.kind_ = Kind::Disk;
  d.tau0_ = tau0;
  d.map_ = identity_map();
  return d;
}

DomainModel DomainModel::simply_connected(ConformalMap f, double tau0) {
  if (!f.f || !f.df || !f.d2f) throw InvalidInput("simply_connected: incomplete conformal map");
  DomainModel d;
  d.kind_ = Kind::SimplyConnected;
  d.tau0_ = tau0;
  d.map_ = std::move(f);
  return d;
}

DomainModel DomainModel::annulus(double rho, int K, double tau0) {
  DomainModel d;
  d.kind_ = Kind::Annulus;
  d.tau0_ = tau0;
  d.ann_ = make_annulus(rho, K);
  return d;
}

const ConformalMap& DomainModel::map() const {
  if (kind_ == Kind::Annulus) throw Unsupported("annulus has no conformal map to the disk");
  return map_;
}

const AnnulusModel& DomainModel::annulus_model() const {
  if (kind_ != Kind::Annulus) throw Unsupported("not an annulus");
  return ann_;
}

bool DomainModel::contains(const Point2& p) const {
  if (!p.allFinite()) return false;
  switch (kind_) {
    case Kind::Disk:
      return p.squaredNorm() < 1;
    case Kind::SimplyConnected: {
      const cplx w = map_.f(to_complex(p));
      return std::isfinite(w.real()) && std::isfinite(w.imag()) && std::norm(w) < 1;
    }
    case Kind::Annulus: {
      const double r = p.norm();
      return r > 1 / ann_.rho && r < ann_.rho;
    }
  }
  return false;
}

double DomainModel::boundary_distance(const Point2& p) const {
  switch (kind_) {
    case Kind::Disk:
      return 1 - p.norm();
    case Kind::SimplyConnected:
      return 1 - std::abs(map_.f(to_complex(p)));
    case Kind::Annulus: {
      const double r = p.norm();
      return std::min(r - 1 / ann_.rho, ann_.rho - r);
    }
  }
  return 0.0;
}

std::string kind_name(DomainModel::Kind k) {
  switch (k) {
    case DomainModel::Kind::Disk:
      return "disk";
    case DomainModel::Kind::SimplyConnected:
      return "simply_connected";
    case DomainModel::Kind::Annulus:
      return "annulus";
  }
  return "unknown";
}

namespace {

void require_inside(const DomainModel& d, const Point2& p, const char* what) {
  if (!d.contains(p)) throw InvalidInput(std::string(what) + ": point outside the domain");
}

void require_margin(const DomainModel& d, const Point2& a, const char* what) {
  require_inside(d, a, what);
  if (d.boundary_distance(a) < d.tau0())
    throw InvalidInput(std::string(what) + ": point closer to the boundary than tau0");
}

void require_map_domain(const DomainModel& d, const char* what) {
  if (d.kind() == DomainModel::Kind::Annulus)
    throw Unsupported(std::string(what) + ": not available on the annulus");
}

}  // namespace

double regular_part(const DomainModel& d, const Point2& a, const Point2& xi) {
  require_map_domain(d, "regular_part");
  require_inside(d, a, "regular_part");
  require_inside(d, xi, "regular_part");
  const cplx za = to_complex(a), z = to_complex(xi);
  if (d.kind() == DomainModel::Kind::Disk) return -std::log(std::abs(1.0 - std::conj(za) * z));
  const ConformalMap& m = d.map();
  const cplx fa = m.f(za), fz = m.f(z);
  const double tail = -std::log(std::abs(1.0 - fz * std::conj(fa)));
  if (std::abs(z - za) < 1e-6) return std::log(std::abs(m.df(0.5 * (za + z)))) + tail;
  return std::log(std::abs(fz - fa)) - std::log(std::abs(z - za)) + tail;
}

double green(const DomainModel& d, const Point2& a, const Point2& xi) {
  if ((a - xi).norm() == 0.0) throw SingularInput("green: coincident points");
  return -std::log((a - xi).norm()) - regular_part(d, a, xi);
}

namespace {

// h1 + i h2 as a complex number.
cplx h12(const DomainModel& d, cplx a, cplx z) {
  if (d.kind() == DomainModel::Kind::Disk) return z / (1.0 - std::conj(a) * z);
  const ConformalMap& m = d.map();
  const cplx fa = m.f(a), fz = m.f(z), dfa = m.df(a);
  cplx A;
  if (std::abs(z - a) < 1e-6)
    A = m.d2f(a) / (2.0 * dfa);
  else
    A = 1.0 / (z - a) - dfa / (fz - fa);
  const cplx B = fz * std::conj(dfa) / (1.0 - fz * std::conj(fa));
  return std::conj(A) + B;
}

}  // namespace

HFunctions h_functions(const DomainModel& d, const Point2& a, const Point2& xi, int n_poisson) {
  require_map_domain(d, "h_functions");
  require_margin(d, a, "h_functions");
  require_inside(d, xi, "h_functions");
  HFunctions h;
  const cplx v = h12(d, to_complex(a), to_complex(xi));
  h.h1 = v.real();
  h.h2 = v.imag();
  if (d.kind() == DomainModel::Kind::Disk) {
    auto datum = [&](double th) {
      const double r2 = (Point2(std::cos(th), std::sin(th)) - a).squaredNorm();
      return Vec3(1 / r2, 0, 0);
    };
    h.h3 = harmonic_extension_disk(datum, xi, n_poisson).x();
  } else {
    h.h3 = std::numeric_limits<double>::quiet_NaN();
  }
  return h;
}

Eigen::Matrix2d h_gradients(const DomainModel& d, const Point2& a, const Point2& xi) {
  require_map_domain(d, "h_gradients");
  require_inside(d, a, "h_gradients");
  require_inside(d, xi, "h_gradients");
  const cplx za = to_complex(a), z = to_complex(xi);
  cplx dx, dy;
  if (d.kind() == DomainModel::Kind::Disk) {
    const cplx w = 1.0 - std::conj(za) * z;
    dx = 1.0 / (w * w);
    dy = cplx(0, 1) * dx;
  } else {
    if (std::abs(z - za) < 1e-6)
      throw SingularInput("h_gradients: use h_tilde at coincidence on mapped domains");
    const ConformalMap& m = d.map();
    const cplx fa = m.f(za), fz = m.f(z), dfa = m.df(za), dfz = m.df(z);
    const cplx dl = fz - fa, D = 1.0 - fz * std::conj(fa);
    const cplx Ap = -1.0 / ((z - za) * (z - za)) + dfa * dfz / (dl * dl);
    const cplx Bp = std::conj(dfa) * dfz / (D * D);
    dx = std::conj(Ap) + Bp;
    dy = cplx(0, -1) * std::conj(Ap) + cplx(0, 1) * Bp;
  }
  Eigen::Matrix2d g;
  g << dx.real(), dy.real(), dx.imag(), dy.imag();
  return g;
}

double h_tilde(const DomainModel& d, const Point2& a) {
  require_inside(d, a, "h_tilde");
  switch (d.kind()) {
    case DomainModel::Kind::Disk: {
      const double q = 1 - a.squaredNorm();
      return 2 / (q * q);
    }
    case DomainModel::Kind::SimplyConnected: {
      const ConformalMap& m = d.map();
      const cplx z = to_complex(a);
      const double q = 1 - std::norm(m.f(z));
      return 2 * std::norm(m.df(z)) / (q * q);
    }
    case DomainModel::Kind::Annulus:
      return h_tilde_annulus(a.norm(), d.annulus_model());
  }
  return 0.0;
}

Point2 h_tilde_gradient(const DomainModel& d, const Point2& a) {
  require_inside(d, a, "h_tilde_gradient");
  switch (d.kind()) {
    case DomainModel::Kind::Disk: {
      const double q = 1 - a.squaredNorm();
      return 8 * a / (q * q * q);
    }
    case DomainModel::Kind::SimplyConnected: {
      const ConformalMap& m = d.map();
      const cplx z = to_complex(a);
      const cplx f = m.f(z), df = m.df(z), d2f = m.d2f(z);
      const double q = 1 - std::norm(f);
      const double ht = 2 * std::norm(df) / (q * q);
      // d/da of log H~ (Wirtinger), then grad = H~ (2 Re, -2 Im).
      const cplx du = d2f / df + 2.0 * df * std::conj(f) / q;
      return ht * Point2(2 * du.real(), -2 * du.imag());
    }
    case DomainModel::Kind::Annulus: {
      const double r = a.norm();
      return h_tilde_annulus_dlogx(r, d.annulus_model()) * a / (r * r);
    }
  }
  return Point2::Zero();
}

GreenGradJet green_grad_jet(const DomainModel& d, const Point2& a, const Point2& b) {
  require_map_domain(d, "green_grad_derivatives");
  require_inside(d, a, "green_grad_derivatives");
  require_inside(d, b, "green_grad_derivatives");
  if ((a - b).norm() == 0.0) throw SingularInput("green_grad_derivatives: coincident points");
  const ConformalMap& m = d.map();
  const cplx za = to_complex(a), zx = to_complex(b), I(0, 1);
  const cplx fa = m.f(za), fx = m.f(zx);
  const cplx dfa = m.df(za), dfx = m.df(zx), d2a = m.d2f(za), d2x = m.d2f(zx);
  const cplx dl = fx - fa, D = 1.0 - std::conj(fa) * fx;
  const cplx dl2 = dl * dl, dl3 = dl2 * dl, D2 = D * D, D3 = D2 * D;

  // G1 + i G2 = conj(f'(a)/(f(xi) - f(a))) - B with B' = conj(f'(a)) f'(xi)/D^2.
  const cplx Gp = -dfa * dfx / dl2;
  const cplx Bp = std::conj(dfa) * dfx / D2;
  const cplx X = std::conj(Gp) - Bp;
  const cplx Y = -I * std::conj(Gp) - I * Bp;

  const cplx Gp_a = -d2a * dfx / dl2 - 2.0 * dfa * dfa * dfx / dl3;
  const cplx Bp_abar = std::conj(d2a) * dfx / D2 + 2.0 * std::conj(dfa * dfa) * dfx * fx / D3;
  const cplx Gp_x = -dfa * d2x / dl2 + 2.0 * dfa * dfx * dfx / dl3;
  const cplx Bp_x = std::conj(dfa) * (d2x / D2 + 2.0 * dfx * dfx * std::conj(fa) / D3);

  // X and Y are antiholomorphic in a.
  const cplx X_abar = std::conj(Gp_a) - Bp_abar;
  const cplx Y_abar = -I * std::conj(Gp_a) - I * Bp_abar;
  const cplx X_xi = -Bp_x, X_xibar = std::conj(Gp_x);
  const cplx Y_xi = -I * Bp_x, Y_xibar = -I * std::conj(Gp_x);

  auto pack = [](cplx u, cplx v) {
    Eigen::Matrix2d e;
    e << u.real(), v.real(), u.imag(), v.imag();
    return e;
  };
  GreenGradJet j;
  j.E = pack(X, Y);
  j.dE_da1 = pack(X_abar, Y_abar);
  j.dE_da2 = pack(-I * X_abar, -I * Y_abar);
  j.dE_dx = pack(X_xi + X_xibar, Y_xi + Y_xibar);
  j.dE_dy = pack(I * (X_xi - X_xibar), I * (Y_xi - Y_xibar));
  return j;
}

Eigen::Matrix2d green_grad_derivatives(const DomainModel& d, const Point2& a, const Point2& b) {
  return green_grad_jet(d, a, b).E;
}

Vec3 harmonic_extension_disk(const BoundaryMap& boundary, const Point2& xi, int n) {
  if (!(xi.squaredNorm() < 1)) throw InvalidInput("harmonic_extension_disk: point not inside D");
  if (n < 1) throw InvalidInput("harmonic_extension_disk: order must be positive");
  const double r2 = xi.squaredNorm();
  Vec3 acc = Vec3::Zero();
  for (int j = 0; j < n; ++j) {
    const double th = 2 * kPi * j / n;
    const double w = (1 - r2) / (Point2(std::cos(th), std::sin(th)) - xi).squaredNorm();
    acc += w * boundary(th);
  }
  return acc / n;
}

FourierExtension::FourierExtension(const BoundaryMap& boundary, int n) {
  if (n < 4) throw InvalidInput("FourierExtension: need at least 4 samples");
  std::vector<Vec3> s(n);
  for (int j = 0; j < n; ++j) s[j] = boundary(2 * kPi * j / n);
  for (int j = 0; j < n; ++j) c0_ += s[j];
  c0_ /= n;
  const int M = n / 2 - 1;
  coef_.resize(M);
  for (int m = 1; m <= M; ++m) {
    Eigen::Vector3cd c = Eigen::Vector3cd::Zero();
    for (int j = 0; j < n; ++j) {
      const cplx e = std::polar(1.0, -2 * kPi * double((static_cast<long>(m) * j) % n) / n);
      c += e * s[j].cast<cplx>();
    }
    coef_[m - 1] = c / double(n);
  }
}

HarmonicJet FourierExtension::jet(const Point2& xi) const {
  // g = c0 + 2 Re H, H = sum_{m>=1} c_m xi^m.
  const cplx z = to_complex(xi);
  Eigen::Vector3cd h = Eigen::Vector3cd::Zero(), h1 = h, h2 = h;
  const int M = modes();
  // Horner for H, H', H''.
  for (int m = M; m >= 1; --m) {
    h2 = h2 * z + 2.0 * h1;
    h1 = h1 * z + h;
    h = h * z + coef_[m - 1];
  }
  h2 = h2 * z + 2.0 * h1;
  h1 = h1 * z + h;
  h = h * z;
  HarmonicJet j;
  j.v = c0_ + 2 * h.real();
  j.dx = 2 * h1.real();
  j.dy = -2 * h1.imag();
  j.dxx = 2 * h2.real();
  j.dxy = -2 * h2.imag();
  j.dyy = -j.dxx;
  return j;
}

Vec3 FourierExtension::value(const Point2& xi) const {
  const cplx z = to_complex(xi);
  Eigen::Vector3cd h = Eigen::Vector3cd::Zero();
  for (int m = modes(); m >= 1; --m) h = h * z + coef_[m - 1];
  h = h * z;
  return c0_ + 2 * h.real();
}

std::pair<Vec3, Vec3> bubble_boundary_correction(const BubbleParams& b, const Point2& xi, int n) {
  const DomainModel disk = DomainModel::disk();
  auto trace = [&](double th) { return bubble_value(b, Point2(std::cos(th), std::sin(th))); };
  const Vec3 phi = harmonic_extension_disk(trace, xi, n);
  const HFunctions h = h_functions(disk, b.center, xi, n);
  const double lam = b.scale;
  const Vec3 approx(2 / lam * h.h1, 2 / lam * h.h2, 1 - 2 / (lam * lam) * h.h3);
  return {phi, b.rotation * approx};
}

std::pair<double, double> radii(const DomainModel& d, const Point2& a) {
  require_inside(d, a, "radii");
  switch (d.kind()) {
    case DomainModel::Kind::Disk:
    case DomainModel::Kind::SimplyConnected: {
      const ConformalMap& m = d.map();
      const cplx z = to_complex(a);
      const double r_har = std::exp(-regular_part(d, a, a));
      // Hyperbolic radius pulled back by f.
      const double r_hyp = (1 - std::norm(m.f(z))) / std::abs(m.df(z));
      return {r_har, r_hyp};
    }
    case DomainModel::Kind::Annulus: {
      const double x = a.norm();
      const double r_har = std::sqrt(2 / robin_exp_annulus(x, d.annulus_model()));
      return {r_har, annulus_hyperbolic_radius(x, d.annulus_model().rho)};
    }
  }
  return {0.0, 0.0};
}

}  // namespace hsurf
