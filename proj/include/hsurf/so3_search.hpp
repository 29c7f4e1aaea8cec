#pragma once

#include "hsurf/common.hpp"

#include <functional>

namespace hsurf {

struct SO3Max {
  Rotation3 argmax = Rotation3::Identity();
  double value = 0.0;
};

Rotation3 rotation_from_euler_zyz(double a, double b, double c);
Rotation3 rotation_exp(const Vec3& w);

// Maximize f over SO(3): grid^3 ZYZ Euler grid, then Nelder-Mead in a local
// rotation-vector chart from the best `refine` grid points.
SO3Max so3_maximize(const std::function<double(const Rotation3&)>& f, int grid = 32,
                    int refine = 50);

}  // namespace hsurf
