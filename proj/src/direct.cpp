#include "hsurf/direct.hpp"

#include "hsurf/bubble.hpp"
#include "hsurf/parallel.hpp"
#include "hsurf/quadrature.hpp"

#include <algorithm>

namespace hsurf {

Resolution Resolution::doubled() const {
  return {2 * n_r, 2 * n_theta, 2 * panel_order, 2 * patch_theta, 2 * n_boundary};
}

namespace {

double smooth_step(double t) {
  if (t <= 0) return 0.0;
  if (t >= 1) return 1.0;
  const double a = std::exp(-1 / t), b = std::exp(-1 / (1 - t));
  return a / (a + b);
}

struct Patch {
  Point2 c;
  double r0, r1;
  double chi(const Point2& xi) const { return smooth_step((r1 - (xi - c).norm()) / (r1 - r0)); }
};

std::vector<Patch> make_patches(const std::vector<Point2>& centers) {
  std::vector<Patch> out;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    double r1 = std::min(0.5, 0.5 * (1 - centers[i].norm()));
    for (std::size_t j = 0; j < centers.size(); ++j)
      if (j != i) r1 = std::min(r1, 0.45 * (centers[i] - centers[j]).norm());
    if (!(r1 > 0)) throw InvalidInput("disk_quadrature: center on the boundary or coincident centers");
    out.push_back({centers[i], 0.5 * r1, r1});
  }
  return out;
}

constexpr std::size_t kBlock = 4096;

// Fixed block partition, block sums reduced in order: independent of thread count.
double ordered_sum(std::size_t n, const std::function<double(std::size_t)>& term) {
  const std::size_t nb = (n + kBlock - 1) / kBlock;
  std::vector<double> part(nb, 0.0);
  parallel_for(nb, [&](std::size_t b) {
    double s = 0.0;
    const std::size_t end = std::min(n, (b + 1) * kBlock);
    for (std::size_t i = b * kBlock; i < end; ++i) s += term(i);
    part[b] = s;
  });
  double total = 0.0;
  for (double p : part) total += p;
  return total;
}

}  // namespace

std::vector<QuadNode> disk_quadrature(const std::vector<Point2>& centers,
                                      const std::vector<double>& scales, const Resolution& res) {
  if (centers.size() != scales.size()) throw InvalidInput("disk_quadrature: size mismatch");
  const std::vector<Patch> patches = make_patches(centers);
  auto outside_weight = [&](const Point2& xi) {
    double s = 1.0;
    for (const Patch& p : patches) s -= p.chi(xi);
    return s;
  };
  std::vector<QuadNode> nodes;
  const GaussRule gr = gauss_legendre(res.n_r, 0.0, 1.0);
  const double dth = 2 * kPi / res.n_theta;
  for (int i = 0; i < res.n_r; ++i) {
    const double r = gr.nodes[i];
    for (int j = 0; j < res.n_theta; ++j) {
      const double th = j * dth;
      const Point2 xi(r * std::cos(th), r * std::sin(th));
      const double w = outside_weight(xi);
      if (w > 0) nodes.push_back({xi, gr.weights[i] * r * dth * w});
    }
  }
  const double dph = 2 * kPi / res.patch_theta;
  for (std::size_t k = 0; k < patches.size(); ++k) {
    const Patch& p = patches[k];
    std::vector<double> edges{0.0};
    double e = 1 / scales[k];
    while (e < p.r1) {
      edges.push_back(e);
      e *= 2;
    }
    edges.push_back(p.r1);
    for (std::size_t m = 0; m + 1 < edges.size(); ++m) {
      const GaussRule pr = gauss_legendre(res.panel_order, edges[m], edges[m + 1]);
      for (int i = 0; i < res.panel_order; ++i) {
        const double r = pr.nodes[i];
        for (int j = 0; j < res.patch_theta; ++j) {
          const double th = (j + 0.5) * dph;
          const Point2 xi = p.c + r * Point2(std::cos(th), std::sin(th));
          const double w = p.chi(xi);
          if (w > 0) nodes.push_back({xi, pr.weights[i] * r * dph * w});
        }
      }
    }
  }
  return nodes;
}

double integrate_nodes(const std::vector<QuadNode>& nodes,
                       const std::function<double(const Point2&)>& f) {
  return ordered_sum(nodes.size(), [&](std::size_t i) { return nodes[i].w * f(nodes[i].xi); });
}

ProjectedBubble::ProjectedBubble(const BubbleParams& b, int n_boundary)
    : b_(b),
      phi_([&b](double th) { return bubble_value(b, Point2(std::cos(th), std::sin(th))); },
           n_boundary) {}

FieldJet ProjectedBubble::phi(const Point2& xi) const {
  const HarmonicJet h = phi_.jet(xi);
  FieldJet j;
  j.value = h.v;
  j.dx = h.dx;
  j.dy = h.dy;
  return j;
}

FieldJet ProjectedBubble::jet(const Point2& xi) const {
  FieldJet d = bubble_jet(b_, xi);
  const FieldJet p = phi(xi);
  d.value -= p.value;
  d.dx -= p.dx;
  d.dy -= p.dy;
  return d;
}

double FieldGrid::max_boundary_trace() const {
  double m = 0.0;
  for (const Vec3& v : boundary_trace) m = std::max(m, v.norm());
  return m;
}

FieldGrid build_projected_sum(const Configuration& c, const Resolution& res) {
  std::vector<Point2> centers;
  std::vector<double> scales;
  std::vector<ProjectedBubble> pb;
  for (const BubbleParams& b : c.bubbles) {
    if (!(b.center.norm() < 1)) throw InvalidInput("build_projected_sum: center outside D");
    centers.push_back(b.center);
    scales.push_back(b.scale);
    pb.emplace_back(b, res.n_boundary);
  }
  FieldGrid g;
  g.nodes = disk_quadrature(centers, scales, res);
  g.u.resize(g.nodes.size());
  auto sum_at = [&](const Point2& xi) {
    FieldJet s;
    for (const ProjectedBubble& p : pb) {
      const FieldJet j = p.jet(xi);
      s.value += j.value;
      s.dx += j.dx;
      s.dy += j.dy;
    }
    return s;
  };
  const std::size_t nb = (g.nodes.size() + kBlock - 1) / kBlock;
  parallel_for(nb, [&](std::size_t b) {
    const std::size_t end = std::min(g.nodes.size(), (b + 1) * kBlock);
    for (std::size_t i = b * kBlock; i < end; ++i) g.u[i] = sum_at(g.nodes[i].xi);
  });
  for (int j = 0; j < 256; ++j) {
    const double th = 2 * kPi * j / 256;
    g.boundary_trace.push_back(sum_at(Point2(std::cos(th), std::sin(th))).value);
  }
  return g;
}

EnergyTerms euler_terms(const FieldGrid& u, double eps, const BoundaryDatum& g) {
  if (u.max_boundary_trace() > 1e-4) throw InvalidField("euler_functional: u does not vanish on the boundary");
  const bool zero = g.is_zero();
  const std::size_t n = u.nodes.size();
  EnergyTerms t;
  t.dirichlet = ordered_sum(n, [&](std::size_t i) {
    return u.nodes[i].w * 0.5 * (u.u[i].dx.squaredNorm() + u.u[i].dy.squaredNorm());
  });
  t.cubic = ordered_sum(n, [&](std::size_t i) {
    return u.nodes[i].w * (2.0 / 3.0) * u.u[i].value.dot(u.u[i].dx.cross(u.u[i].dy));
  });
  if (zero || eps == 0.0) return t;
  std::vector<DatumJet> gj(n);
  parallel_for((n + kBlock - 1) / kBlock, [&](std::size_t b) {
    const std::size_t end = std::min(n, (b + 1) * kBlock);
    for (std::size_t i = b * kBlock; i < end; ++i) gj[i] = g.jet(u.nodes[i].xi);
  });
  t.linear = eps * ordered_sum(n, [&](std::size_t i) {
    const FieldJet& f = u.u[i];
    return u.nodes[i].w * f.value.dot(f.dx.cross(gj[i].dy) + gj[i].dx.cross(f.dy));
  });
  t.quadratic = 2 * eps * eps * ordered_sum(n, [&](std::size_t i) {
    return u.nodes[i].w * u.u[i].value.dot(gj[i].dx.cross(gj[i].dy));
  });
  return t;
}

double euler_functional(const FieldGrid& u, double eps, const BoundaryDatum& g) {
  return euler_terms(u, eps, g).total();
}

ConvergedEnergy converged_energy(const Configuration& c, const BoundaryDatum& g,
                                 const Resolution& res, double rel_tol, int max_doublings) {
  Resolution r = res;
  EnergyTerms prev = euler_terms(build_projected_sum(c, r), c.epsilon, g);
  double change = 0.0;
  for (int k = 0; k < max_doublings; ++k) {
    r = r.doubled();
    const EnergyTerms cur = euler_terms(build_projected_sum(c, r), c.epsilon, g);
    change = std::abs(cur.total() - prev.total()) / std::max(std::abs(cur.total()), 1e-300);
    prev = cur;
    if (change < rel_tol) return {cur, change, r};
  }
  throw QuadratureFailure("converged_energy: grid refinement did not settle", change);
}

namespace {

double loglog_slope(double x0, double y0, double x1, double y1) {
  return std::log(std::abs(y1) / std::abs(y0)) / std::log(x1 / x0);
}

}  // namespace

OneBubbleReport validate_one_bubble_expansion(const Point2& a, const Rotation3& R,
                                              const std::vector<double>& lambdas, double kappa,
                                              const BoundaryDatum& g, const Resolution& res) {
  if (lambdas.size() < 3) throw InvalidInput("validate_one_bubble_expansion: need 3 scales");
  if (!std::is_sorted(lambdas.begin(), lambdas.end()))
    throw InvalidInput("validate_one_bubble_expansion: scales must increase");
  const DomainModel disk = DomainModel::disk();
  OneBubbleReport rep;
  rep.lambdas = lambdas;
  rep.c_reduced = 8 * constant_A0() / 9;
  for (double lam : lambdas) {
    Configuration c;
    c.epsilon = kappa / lam;
    c.bubbles = {{a, lam, R}};
    const ConvergedEnergy e = converged_energy(c, g, res);
    const BubbleParams& b = c.bubbles[0];
    rep.energies.push_back(e.terms.total());
    rep.model.push_back(f_single(c.epsilon, b, disk, g));
    if (!g.is_zero()) {
      rep.datum_quad.push_back(e.terms.linear);
      rep.datum_closed.push_back(-8 * constant_A0() * c.epsilon / lam * d_Rinv_g(g, R, a));
    }
  }
  // c + b lambda^-p through the three largest scales (Aitken); p is left free
  // so the residual slopes below are measured, not imposed.
  const std::size_t n = lambdas.size();
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = rep.energies[i] - rep.model[i];
  const double r1 = lambdas[n - 2] / lambdas[n - 3], r2 = lambdas[n - 1] / lambdas[n - 2];
  if (std::abs(r1 - r2) > 1e-12 * r2)
    throw InvalidInput("validate_one_bubble_expansion: last three scales must be geometric");
  const double d1 = v[n - 2] - v[n - 3], d2 = v[n - 1] - v[n - 2];
  rep.c_inf = d2 == d1 ? v[n - 1] : v[n - 1] - d2 * d2 / (d2 - d1);
  rep.constant_ok = std::abs(rep.c_inf - rep.c_direct) < 1e-3;
  for (std::size_t i = 0; i < n; ++i) rep.residuals.push_back(v[i] - rep.c_inf);
  rep.slope_ok = true;
  for (std::size_t i = 0; i + 1 < lambdas.size(); ++i) {
    const double s = loglog_slope(lambdas[i], rep.residuals[i], lambdas[i + 1], rep.residuals[i + 1]);
    rep.slopes.push_back(s);
    if (!(s <= -2.2)) rep.slope_ok = false;
  }
  if (!g.is_zero()) {
    const double q = rep.datum_quad.back(), c = rep.datum_closed.back();
    rep.datum_rel_error = std::abs(q - c) / std::abs(c);
    rep.datum_ok = rep.datum_rel_error < 0.05;
  }
  return rep;
}

double pair_coefficient_quadrature(const BubbleParams& b1, const BubbleParams& b2,
                                   const Resolution& res) {
  const ProjectedBubble p2(b2, res.n_boundary);
  const auto nodes = disk_quadrature({b1.center, b2.center}, {b1.scale, b2.scale}, res);
  const double I = integrate_nodes(nodes, [&](const Point2& xi) {
    return 2 * p2.jet(xi).value.dot(wedge_xy(b1, xi));
  });
  return I * b1.scale * b2.scale;
}

PairReport validate_pair_interaction(const Point2& p1, const Point2& p2, const Rotation3& R1,
                                     const Rotation3& R2, const std::vector<double>& lambdas,
                                     const Resolution& res) {
  if (lambdas.size() < 2) throw InvalidInput("validate_pair_interaction: need 2 scales");
  const DomainModel disk = DomainModel::disk();
  PairReport rep;
  rep.lambdas = lambdas;
  rep.coef_closed = interaction_pair_h(p1, p2, R1, R2, disk);
  for (double lam : lambdas) {
    const double c = pair_coefficient_quadrature({p1, lam, R1}, {p2, lam, R2}, res);
    rep.coef_quad.push_back(c);
    rep.rel_error.push_back(std::abs(c - rep.coef_closed) / std::abs(rep.coef_closed));
  }
  const std::size_t n = lambdas.size();
  const double r = lambdas[n - 1] / lambdas[n - 2];
  rep.coef_extrapolated = (r * rep.coef_quad[n - 1] - rep.coef_quad[n - 2]) / (r - 1);
  rep.rel_error_last = rep.rel_error.back();
  rep.diagonal_ok = rep.rel_error_last < 0.03;

  Rotation3 T;
  T << 1, 0, 0, 0, 0, -1, 0, 1, 0;
  const Rotation3 R2t = R1 * T;
  const double lam = lambdas.back();
  const double ct = pair_coefficient_quadrature({p1, lam, R1}, {p2, lam, R2t}, res);
  rep.third_row_rel =
      std::abs(ct - interaction_pair_h(p1, p2, R1, R2t, disk)) / std::abs(rep.coef_closed);
  rep.third_row_ok = rep.third_row_rel < 0.1;
  return rep;
}

DatumCrossReport validate_datum_cross_term(const std::vector<BubbleParams>& templ,
                                           const BoundaryDatum& g,
                                           const std::vector<double>& lambdas, double kappa,
                                           const Resolution& res) {
  if (lambdas.size() < 2) throw InvalidInput("validate_datum_cross_term: need 2 scales");
  DatumCrossReport rep;
  for (double lam : lambdas) {
    Configuration c;
    c.epsilon = kappa / lam;
    c.bubbles = templ;
    double closed = 0.0;
    for (BubbleParams& b : c.bubbles) {
      b.scale = lam;
      closed += -8 * constant_A0() * c.epsilon / lam * d_Rinv_g(g, b.rotation, b.center);
    }
    const double quad = euler_terms(build_projected_sum(c, res), c.epsilon, g).linear;
    rep.eps.push_back(c.epsilon);
    rep.quad.push_back(quad);
    rep.closed.push_back(closed);
    rep.remainder.push_back(quad - closed);
  }
  rep.min_slope = 1e300;
  for (std::size_t i = 0; i + 1 < rep.eps.size(); ++i) {
    const double s = loglog_slope(rep.eps[i], rep.remainder[i], rep.eps[i + 1], rep.remainder[i + 1]);
    rep.slopes.push_back(s);
    rep.min_slope = std::min(rep.min_slope, s);
  }
  rep.pass = rep.min_slope >= 2.5;
  return rep;
}

}  // namespace hsurf
