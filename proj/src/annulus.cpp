#include "hsurf/annulus.hpp"

#include <algorithm>

namespace hsurf {

namespace {

double deck_rate(double rho) { return kPi * kPi / std::log(rho); }

// sum_{k>K} 4 exp(-k q)
double tail_sum(int K, double q) { return 4 * std::exp(-(K + 1) * q) / (-std::expm1(-q)); }

void check_range(double x, double rho) {
  if (!(rho > 1)) throw InvalidInput("annulus: rho must exceed 1");
  if (!(x > 1 / rho && x < rho)) throw InvalidInput("annulus: x outside (1/rho, rho)");
}

template <class T>
struct Sums {
  T pref, wsum, zprod;
};

template <class T>
Sums<T> series(T s, const AnnulusModel& m) {
  const double L = m.log_rho();
  const T t = std::tan(kPi * s / (4 * L));
  const T c = std::cos(kPi * s / (2 * L));
  Sums<T> out;
  out.pref = kPi * kPi / (8 * L * L) / (c * c * std::exp(2.0 * s));
  out.wsum = T(0.0);
  out.zprod = T(1.0);
  const T t2 = t * t;
  const T a = (1.0 - t2) * (1.0 - t2);
  for (int k = 1; k <= m.K; ++k) {
    const double M = m.M(k), M2 = M * M;
    const T den = a + 4.0 * M2 * t2;
    out.wsum += m.one_minus_M2(k) * a * (a - 4.0 * M2 * t2) / (den * den);
    const T z = M2 * (1.0 + t2) * (1.0 + t2) / den;
    out.zprod *= z * z;
  }
  return out;
}

}  // namespace

double AnnulusModel::M(int k) const {
  const double e = std::exp(-k * deck_rate(rho));
  return -std::expm1(-k * deck_rate(rho)) / (1 + e);
}

double AnnulusModel::one_minus_M2(int k) const {
  const double e = std::exp(-k * deck_rate(rho));
  return 4 * e / ((1 + e) * (1 + e));
}

int default_truncation(double rho, double tol) {
  const double q = deck_rate(rho);
  int K = 1;
  while (tail_sum(K, q) >= tol) ++K;
  return K;
}

AnnulusModel make_annulus(double rho, int K) {
  if (!(rho > 1)) throw InvalidInput("annulus: rho must exceed 1");
  AnnulusModel m;
  m.rho = rho;
  m.K = K > 0 ? K : default_truncation(rho);
  return m;
}

double w_term(int k, double x, double rho) {
  check_range(x, rho);
  const AnnulusModel m{rho, 0};
  const double t = std::tan(kPi * std::log(x) / (4 * m.log_rho()));
  const double M2 = m.M(k) * m.M(k), t2 = t * t;
  const double a = (1 - t2) * (1 - t2), den = a + 4 * M2 * t2;
  return m.one_minus_M2(k) * a * (a - 4 * M2 * t2) / (den * den);
}

double z_term(int k, double x, double rho) {
  check_range(x, rho);
  const AnnulusModel m{rho, 0};
  const double t = std::tan(kPi * std::log(x) / (4 * m.log_rho()));
  const double M2 = m.M(k) * m.M(k), t2 = t * t;
  return M2 * (1 + t2) * (1 + t2) / ((1 - t2) * (1 - t2) + 4 * M2 * t2);
}

double w_term_printed(int k, double x, double rho) {
  check_range(x, rho);
  const AnnulusModel m{rho, 0};
  const double t = std::tan(kPi * std::log(x) / (4 * m.log_rho()));
  const double M2 = m.M(k) * m.M(k), t2 = t * t, om = m.one_minus_M2(k);
  const double a = (1 - t2) * (1 - t2), b = (1 - t2 * t2) * (1 - t2 * t2);
  const double den = b + 4 * M2 * t2;
  return om * om * a * (a - 4 * M2 * t2) / (den * den);
}

double z_term_printed(int k, double x, double rho) {
  check_range(x, rho);
  const AnnulusModel m{rho, 0};
  const double t = std::tan(kPi * std::log(x) / (4 * m.log_rho()));
  const double M2 = m.M(k) * m.M(k), t2 = t * t;
  return M2 * (1 + t2) * (1 + t2) / ((1 - t2 * t2) * (1 - t2 * t2) + 4 * M2 * t2);
}

double annulus_prefactor(double x, double rho) {
  check_range(x, rho);
  const double L = std::log(rho);
  const double c = std::cos(kPi * std::log(x) / (2 * L));
  return kPi * kPi / (8 * L * L) / (c * c * x * x);
}

double annulus_hyperbolic_radius(double x, double rho) {
  check_range(x, rho);
  const double L = std::log(rho);
  return x * (4 * L / kPi) * std::cos(kPi * std::log(x) / (2 * L));
}

SeriesValue h_tilde_annulus_series(double x, const AnnulusModel& m) {
  check_range(x, m.rho);
  const auto s = series<double>(std::log(x), m);
  SeriesValue v;
  v.value = s.pref * (1 + 2 * s.wsum);
  v.tail_bound = s.pref * 2 * tail_sum(m.K, deck_rate(m.rho));
  return v;
}

SeriesValue robin_exp_annulus_series(double x, const AnnulusModel& m) {
  check_range(x, m.rho);
  const auto s = series<double>(std::log(x), m);
  SeriesValue v;
  v.value = s.pref * s.zprod;
  // M^2 <= Z <= 1, so |log prod_{k>K} Z^2| <= 2 sum (1 - M^2)/M^2.
  const double MK = m.M(m.K + 1);
  const double T = 2 * tail_sum(m.K, deck_rate(m.rho)) / (MK * MK);
  v.tail_bound = v.value * std::expm1(T);
  return v;
}

double h_tilde_annulus(double x, const AnnulusModel& m, double rel_tol) {
  const SeriesValue v = h_tilde_annulus_series(x, m);
  if (v.tail_bound > rel_tol * v.value)
    throw AccuracyError("h_tilde_annulus: truncation tail exceeds tolerance", v.tail_bound);
  return v.value;
}

double robin_exp_annulus(double x, const AnnulusModel& m, double rel_tol) {
  const SeriesValue v = robin_exp_annulus_series(x, m);
  if (v.tail_bound > rel_tol * v.value)
    throw AccuracyError("robin_exp_annulus: truncation tail exceeds tolerance", v.tail_bound);
  return v.value;
}

namespace {
constexpr double kStep = 1e-30;
}

double h_tilde_annulus_dlogx(double x, const AnnulusModel& m) {
  check_range(x, m.rho);
  const auto s = series<cplx>(cplx(std::log(x), kStep), m);
  return (s.pref * (1.0 + 2.0 * s.wsum)).imag() / kStep;
}

double robin_exp_annulus_dlogx(double x, const AnnulusModel& m) {
  check_range(x, m.rho);
  const auto s = series<cplx>(cplx(std::log(x), kStep), m);
  return (s.pref * s.zprod).imag() / kStep;
}

RadialCurve compare_scan(const AnnulusModel& m, int n_grid) {
  if (n_grid < 16) throw InvalidInput("compare_scan: n_grid must be at least 16");
  RadialCurve c;
  c.rho = m.rho;
  c.K = m.K;
  const double L = m.log_rho();
  for (int i = 0; i < n_grid; ++i) {
    const double s = -L + 2 * L * (i + 1) / (n_grid + 1);
    const double x = std::exp(s);
    const SeriesValue h = h_tilde_annulus_series(x, m);
    const SeriesValue r = robin_exp_annulus_series(x, m);
    c.x.push_back(x);
    c.h_tilde.push_back(h.value);
    c.two_e2H.push_back(r.value);
    const double rd = std::abs(h.value - r.value) / h.value;
    c.rel_diff.push_back(rd);
    c.max_rel_diff = std::max(c.max_rel_diff, rd);
    c.max_tail_bound = std::max({c.max_tail_bound, h.tail_bound / h.value, r.tail_bound / r.value});
  }
  return c;
}

std::vector<double> critical_points_radial(RadialFunction which, const AnnulusModel& m,
                                           int n_scan) {
  if (h_tilde_annulus_series(1.0, m).tail_bound > 1e-10 * h_tilde_annulus_series(1.0, m).value)
    throw AccuracyError("critical_points_radial: series tail too large", 0.0);
  const double L = m.log_rho();
  auto deriv = [&](double s) {
    const double x = std::exp(s);
    return which == RadialFunction::HTilde ? h_tilde_annulus_dlogx(x, m)
                                           : robin_exp_annulus_dlogx(x, m);
  };
  // Not even in s: the 1/x^2 factor makes x^2 H~ the inversion-invariant
  // quantity. Scan the open interval (-L, L).
  std::vector<double> out;
  auto at = [&](int i) { return -L + 2 * L * i / n_scan; };
  double s0 = at(1), d0 = deriv(s0);
  for (int i = 2; i < n_scan; ++i) {
    const double s1 = at(i), d1 = deriv(s1);
    if (d0 == 0.0) {
      out.push_back(s0);
    } else if ((d0 < 0) != (d1 < 0) && d1 != 0.0) {
      double lo = s0, hi = s1, dlo = d0;
      while (hi - lo > 1e-11) {
        const double mid = 0.5 * (lo + hi), dm = deriv(mid);
        if ((dm < 0) == (dlo < 0)) {
          lo = mid;
          dlo = dm;
        } else {
          hi = mid;
        }
      }
      out.push_back(0.5 * (lo + hi));
    }
    s0 = s1;
    d0 = d1;
  }
  return out;
}

double covering_h_tilde(const std::vector<Deck>& decks, cplx z0, cplx fprime) {
  if (decks.empty()) throw InvalidInput("covering_h_tilde: empty deck list");
  const double q = 1 - std::norm(z0);
  cplx sum = 0.0;
  for (const Deck& d : decks) {
    const cplx den = 1.0 - d.value * std::conj(z0);
    const cplx term = d.deriv * q * q / (den * den);
    sum += term + std::conj(term);
  }
  return sum.real() / (std::norm(fprime) * q * q);
}

AnnulusCovering annulus_covering_data(const AnnulusModel& m, double x) {
  check_range(x, m.rho);
  const double L = m.log_rho();
  AnnulusCovering c;
  const double t = std::tan(kPi * std::log(x) / (4 * L));
  c.z0 = cplx(0, -t);
  const cplx inv_alpha(0, 2 * L / kPi);
  c.fprime = x * inv_alpha * 2.0 / (1.0 - c.z0 * c.z0);
  for (int k = -m.K; k <= m.K; ++k) {
    const double M = k < 0 ? -m.M(-k) : (k == 0 ? 0.0 : m.M(k));
    const double om = k == 0 ? 1.0 : m.one_minus_M2(std::abs(k));
    const cplx den = 1.0 + M * c.z0;
    c.decks.push_back({(c.z0 + M) / den, om / (den * den)});
  }
  return c;
}

}  // namespace hsurf
