#include "hsurf/so3_search.hpp"

#include "hsurf/bubble.hpp"

#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <numeric>
#include <vector>

namespace hsurf {

Rotation3 rotation_from_euler_zyz(double a, double b, double c) {
  return Eigen::AngleAxisd(a, Vec3::UnitZ()).toRotationMatrix() *
         Eigen::AngleAxisd(b, Vec3::UnitY()).toRotationMatrix() *
         Eigen::AngleAxisd(c, Vec3::UnitZ()).toRotationMatrix();
}

Rotation3 rotation_exp(const Vec3& w) {
  const double th = w.norm();
  if (th < 1e-300) return Rotation3::Identity();
  return Eigen::AngleAxisd(th, w / th).toRotationMatrix();
}

namespace {

struct LocalProblem {
  const std::function<double(const Rotation3&)>* f;
  Rotation3 base;
};

double local_objective(const gsl_vector* x, void* params) {
  auto* p = static_cast<LocalProblem*>(params);
  const Vec3 w(gsl_vector_get(x, 0), gsl_vector_get(x, 1), gsl_vector_get(x, 2));
  return -(*p->f)(p->base * rotation_exp(w));
}

SO3Max refine_from(const std::function<double(const Rotation3&)>& f, const Rotation3& start,
                   double step) {
  LocalProblem prob{&f, start};
  SO3Max best{start, f(start)};
  // Restart around the improved point so the chart stays centered.
  for (int pass = 0; pass < 3; ++pass) {
    gsl_multimin_function fn{&local_objective, 3, &prob};
    gsl_vector* x = gsl_vector_calloc(3);
    gsl_vector* ss = gsl_vector_alloc(3);
    gsl_vector_set_all(ss, step);
    gsl_multimin_fminimizer* s =
        gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, 3);
    gsl_multimin_fminimizer_set(s, &fn, x, ss);
    for (int it = 0; it < 2000; ++it) {
      if (gsl_multimin_fminimizer_iterate(s)) break;
      if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(s), 1e-11) == GSL_SUCCESS) break;
    }
    const gsl_vector* xm = gsl_multimin_fminimizer_x(s);
    const Vec3 w(gsl_vector_get(xm, 0), gsl_vector_get(xm, 1), gsl_vector_get(xm, 2));
    const double v = -gsl_multimin_fminimizer_minimum(s);
    gsl_multimin_fminimizer_free(s);
    gsl_vector_free(ss);
    gsl_vector_free(x);
    if (v > best.value) {
      best.value = v;
      best.argmax = prob.base * rotation_exp(w);
    }
    prob.base = best.argmax;
    step *= 0.1;
  }
  return best;
}

}  // namespace

SO3Max so3_maximize(const std::function<double(const Rotation3&)>& f, int grid, int refine) {
  if (grid < 2 || refine < 1) throw InvalidInput("so3_maximize: bad grid or refine count");
  struct Sample {
    double v;
    Rotation3 r;
  };
  std::vector<Sample> samples;
  samples.reserve(static_cast<std::size_t>(grid) * grid * grid);
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j)
      for (int k = 0; k < grid; ++k) {
        const double a = 2 * kPi * i / grid, c = 2 * kPi * k / grid;
        const double b = kPi * (j + 0.5) / grid;
        const Rotation3 r = rotation_from_euler_zyz(a, b, c);
        samples.push_back({f(r), r});
      }
  const int n = std::min<int>(refine, samples.size());
  std::partial_sort(samples.begin(), samples.begin() + n, samples.end(),
                    [](const Sample& x, const Sample& y) { return x.v > y.v; });
  SO3Max best{samples[0].r, samples[0].v};
  const double step = 2 * kPi / grid;
  for (int i = 0; i < n; ++i) {
    const SO3Max r = refine_from(f, samples[i].r, step);
    if (r.value > best.value) best = r;
  }
  return best;
}

}  // namespace hsurf
