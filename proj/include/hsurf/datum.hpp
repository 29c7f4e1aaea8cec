#pragma once

#include "hsurf/green.hpp"

#include <memory>
#include <string>
#include <vector>

namespace hsurf {

using DatumJet = HarmonicJet;

// Boundary values on the unit circle together with their harmonic extension.
class BoundaryDatum {
 public:
  virtual ~BoundaryDatum() = default;
  virtual DatumJet jet(const Point2& xi) const = 0;
  virtual Vec3 boundary(double theta) const = 0;
  virtual std::string name() const = 0;
  virtual bool is_zero() const { return false; }
};

using DatumPtr = std::shared_ptr<const BoundaryDatum>;

class ZeroDatum : public BoundaryDatum {
 public:
  DatumJet jet(const Point2&) const override { return {}; }
  Vec3 boundary(double) const override { return Vec3::Zero(); }
  std::string name() const override { return "zero"; }
  bool is_zero() const override { return true; }
};

// Holomorphic F with F, F', F''.
struct HolomorphicFn {
  std::function<cplx(cplx)> f, df, d2f;
};

HolomorphicFn identity_fn();
// F(z) = z/(1 - omega z): the extension of the Kelvin datum 1/conj(z - omega).
HolomorphicFn g_omega_fn(double omega);

// sum_j R_j (Re F_j(e^{-i alpha_j} xi), Im F_j(...), 0). Boundary values are the
// continuous extension of the closed form to |xi| = 1.
class HolomorphicDatum : public BoundaryDatum {
 public:
  struct Term {
    HolomorphicFn fn;
    Rotation3 outer = Rotation3::Identity();
    double alpha = 0.0;
  };
  HolomorphicDatum(std::vector<Term> terms, std::string name);
  DatumJet jet(const Point2& xi) const override;
  Vec3 boundary(double theta) const override;
  std::string name() const override { return name_; }
  const std::vector<Term>& terms() const { return terms_; }

 private:
  std::vector<Term> terms_;
  std::string name_;
};

// Band-limited harmonic extension of arbitrary boundary values.
class SampledDatum : public BoundaryDatum {
 public:
  SampledDatum(BoundaryMap boundary, int n, std::string name);
  DatumJet jet(const Point2& xi) const override { return ext_.jet(xi); }
  Vec3 boundary(double theta) const override { return boundary_(theta); }
  std::string name() const override { return name_; }

 private:
  BoundaryMap boundary_;
  FourierExtension ext_;
  std::string name_;
};

DatumPtr make_zero_datum();
DatumPtr make_linear_datum();  // g = (x, y, 0)
DatumPtr make_g_omega(double omega);

}  // namespace hsurf
