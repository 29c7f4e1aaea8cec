#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hsurf {

using Point2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Rotation3 = Eigen::Matrix3d;
using cplx = std::complex<double>;

constexpr double kPi = std::numbers::pi;

inline cplx to_complex(const Point2& p) { return {p.x(), p.y()}; }
inline Point2 to_point(cplx z) { return {z.real(), z.imag()}; }

// Rotation chart coordinates; (pi/2, 0, 0) is the identity.
struct AngleTriple {
  double theta = kPi / 2;
  double psi = 0.0;
  double phi = 0.0;
};

struct BubbleParams {
  Point2 center = Point2::Zero();
  double scale = 1.0;
  Rotation3 rotation = Rotation3::Identity();
};

// Value and first derivatives of a map R^2 -> R^3 at one point.
struct FieldJet {
  Vec3 value = Vec3::Zero();
  Vec3 dx = Vec3::Zero();
  Vec3 dy = Vec3::Zero();
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

class SingularInput : public Error {
 public:
  using Error::Error;
};

class Unsupported : public Error {
 public:
  using Error::Error;
};

class InvalidConfiguration : public Error {
 public:
  using Error::Error;
};

class DegenerateDatum : public Error {
 public:
  using Error::Error;
};

class NoCriticalScale : public Error {
 public:
  using Error::Error;
};

class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double bound) : Error(what), bound_(bound) {}
  double bound() const { return bound_; }

 private:
  double bound_;
};

class InvalidField : public Error {
 public:
  using Error::Error;
};

class QuadratureFailure : public Error {
 public:
  QuadratureFailure(const std::string& what, double achieved) : Error(what), achieved_(achieved) {}
  double achieved() const { return achieved_; }

 private:
  double achieved_;
};

inline Vec3 cross(const Vec3& a, const Vec3& b) { return a.cross(b); }

}  // namespace hsurf
