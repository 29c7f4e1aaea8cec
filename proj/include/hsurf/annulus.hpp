#pragma once

#include "hsurf/common.hpp"

#include <utility>
#include <vector>

namespace hsurf {

// Round annulus 1/rho < |z| < rho, truncated at K deck pairs.
struct AnnulusModel {
  double rho = std::exp(1.0);
  int K = 0;

  double log_rho() const { return std::log(rho); }
  double M(int k) const;
  double one_minus_M2(int k) const;  // sech^2, no cancellation
};

// Smallest K with sum_{k>K} 4 exp(-k pi^2/log rho) below tol.
int default_truncation(double rho, double tol = 1e-14);
AnnulusModel make_annulus(double rho, int K = 0);

double w_term(int k, double x, double rho);
double z_term(int k, double x, double rho);
// The forms as typeset in the source display, kept for comparison only.
double w_term_printed(int k, double x, double rho);
double z_term_printed(int k, double x, double rho);

// pi^2/(8 log^2 rho) / (cos^2(pi log x/(2 log rho)) x^2) = 2/r_hyp^2.
double annulus_prefactor(double x, double rho);
double annulus_hyperbolic_radius(double x, double rho);

struct SeriesValue {
  double value = 0.0;
  double tail_bound = 0.0;  // absolute
};

SeriesValue h_tilde_annulus_series(double x, const AnnulusModel& m);
SeriesValue robin_exp_annulus_series(double x, const AnnulusModel& m);

// Throw AccuracyError when tail_bound > rel_tol * value.
double h_tilde_annulus(double x, const AnnulusModel& m, double rel_tol = 1e-10);
double robin_exp_annulus(double x, const AnnulusModel& m, double rel_tol = 1e-10);

// d/d(log x), term-wise (complex step on the truncated series).
double h_tilde_annulus_dlogx(double x, const AnnulusModel& m);
double robin_exp_annulus_dlogx(double x, const AnnulusModel& m);

struct RadialCurve {
  double rho = 0.0;
  int K = 0;
  bool prefactor_included = true;
  std::vector<double> x, h_tilde, two_e2H, rel_diff;
  double max_rel_diff = 0.0;  // max |H~ - 2e^{2H}|/H~, prefactor cancels; even in log x
  double max_tail_bound = 0.0;
};

// Grid log x_i = -L + 2L(i+1)/(n+1), i < n, symmetric under x -> 1/x.
RadialCurve compare_scan(const AnnulusModel& m, int n_grid);

enum class RadialFunction { HTilde, TwoE2H };

// Critical points in log x, sorted, from sign changes of the term-wise derivative
// on n_scan cells of (-log rho, log rho), bisected to 1e-11.
std::vector<double> critical_points_radial(RadialFunction which, const AnnulusModel& m,
                                           int n_scan = 4000);

struct Deck {
  cplx value;  // T_k(z0)
  cplx deriv;  // T_k'(z0)
};

double covering_h_tilde(const std::vector<Deck>& decks, cplx z0, cplx fprime);

struct AnnulusCovering {
  std::vector<Deck> decks;  // k = -K..K, identity included
  cplx z0;
  cplx fprime;
};
// Covering map f(z) = exp((2iL/pi) log((1+z)/(1-z))) with f(z0) = x.
AnnulusCovering annulus_covering_data(const AnnulusModel& m, double x);

}  // namespace hsurf
