#pragma once

#include "hsurf/common.hpp"

#include <vector>

namespace hsurf {

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// n-point Gauss-Legendre rule on [-1, 1]. Cached per n.
const GaussRule& gauss_legendre(int n);

// Same rule mapped to [a, b].
GaussRule gauss_legendre(int n, double a, double b);

}  // namespace hsurf
