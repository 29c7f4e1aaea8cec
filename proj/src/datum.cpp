#include "hsurf/datum.hpp"

namespace hsurf {

HolomorphicFn identity_fn() {
  return {[](cplx z) { return z; }, [](cplx) { return cplx(1.0); }, [](cplx) { return cplx(0.0); }};
}

HolomorphicFn g_omega_fn(double omega) {
  return {[omega](cplx z) { return z / (1.0 - omega * z); },
          [omega](cplx z) {
            const cplx w = 1.0 - omega * z;
            return 1.0 / (w * w);
          },
          [omega](cplx z) {
            const cplx w = 1.0 - omega * z;
            return 2.0 * omega / (w * w * w);
          }};
}

HolomorphicDatum::HolomorphicDatum(std::vector<Term> terms, std::string name)
    : terms_(std::move(terms)), name_(std::move(name)) {}

DatumJet HolomorphicDatum::jet(const Point2& xi) const {
  const cplx z = to_complex(xi);
  DatumJet j;
  for (const Term& t : terms_) {
    const cplx e = std::polar(1.0, -t.alpha);
    const cplx w = e * z;
    const cplx F = t.fn.f(w), F1 = e * t.fn.df(w), F2 = e * e * t.fn.d2f(w);
    const Vec3 v(F.real(), F.imag(), 0);
    const Vec3 dx(F1.real(), F1.imag(), 0), dy(-F1.imag(), F1.real(), 0);
    const Vec3 dxx(F2.real(), F2.imag(), 0), dxy(-F2.imag(), F2.real(), 0);
    j.v += t.outer * v;
    j.dx += t.outer * dx;
    j.dy += t.outer * dy;
    j.dxx += t.outer * dxx;
    j.dxy += t.outer * dxy;
    j.dyy -= t.outer * dxx;
  }
  return j;
}

Vec3 HolomorphicDatum::boundary(double theta) const {
  const cplx z = std::polar(1.0, theta);
  Vec3 v = Vec3::Zero();
  for (const Term& t : terms_) {
    const cplx F = t.fn.f(std::polar(1.0, -t.alpha) * z);
    v += t.outer * Vec3(F.real(), F.imag(), 0);
  }
  return v;
}

SampledDatum::SampledDatum(BoundaryMap boundary, int n, std::string name)
    : boundary_(std::move(boundary)), ext_(boundary_, n), name_(std::move(name)) {}

DatumPtr make_zero_datum() { return std::make_shared<ZeroDatum>(); }

DatumPtr make_linear_datum() {
  return std::make_shared<HolomorphicDatum>(
      std::vector<HolomorphicDatum::Term>{{identity_fn(), Rotation3::Identity(), 0.0}}, "linear");
}

DatumPtr make_g_omega(double omega) {
  if (!(omega > -1 && omega < 1)) throw InvalidInput("g_omega: omega must lie in (-1, 1)");
  return std::make_shared<HolomorphicDatum>(
      std::vector<HolomorphicDatum::Term>{{g_omega_fn(omega), Rotation3::Identity(), 0.0}},
      "g_omega");
}

}  // namespace hsurf
