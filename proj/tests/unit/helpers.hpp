#pragma once

#include "hsurf/common.hpp"

#include <random>

namespace hsurf::test {

inline Rotation3 random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0, 1);
  Eigen::Quaterniond q(n(rng), n(rng), n(rng), n(rng));
  return q.normalized().toRotationMatrix();
}

inline Point2 random_in_disk(std::mt19937_64& rng, double r) {
  std::uniform_real_distribution<double> u(0, 1);
  const double s = r * std::sqrt(u(rng)), t = 2 * kPi * u(rng);
  return {s * std::cos(t), s * std::sin(t)};
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace hsurf::test
