#pragma once

#include <span>
#include <vector>

#include "macres/common.hpp"

namespace macres {

/// Random variable with a finite real support.
struct DiscreteRealVar {
  std::vector<double> values;
  std::vector<double> probs;

  DiscreteRealVar(std::vector<double> values_in, std::vector<double> probs_in);

  double mean() const;
  static DiscreteRealVar bernoulli(double p, double lo = 0.0, double hi = 1.0);
};

/// Exact distribution of the sum of independent variables, merging equal
/// support points. Throws BudgetError when the support grows past 1e6.
DiscreteRealVar sum_distribution(std::span<const DiscreteRealVar> vars);

struct TailCheck {
  double exact_tail = 0.0;
  double bound = 0.0;
  bool passed = false;
};

/// exp(-delta^2 mu / 3); the upper-tail bound for sums of independent [0,1]
/// variables with expected sum at most mu.
double hoeffding_bound(double mu, double delta);

/// Enumerates P(sum > mu(1+delta)) exactly and compares it to the bound.
/// Requires 0 < delta < 1, values in [0,1], and E[sum] <= mu.
TailCheck hoeffding_check(std::span<const DiscreteRealVar> vars, double mu,
                          double delta);

/// exp(-2 delta^2 / (chi n)); the bound for sums of n [0,1]-valued
/// variables partitioned into chi independent groups.
double janson_bound(std::size_t n, std::size_t chi, double delta);

/// Builds the dependent family of chi groups, each a shared copy of
/// `base_group` (so the total sum is chi times the base sum, variables
/// within a group independent), enumerates P(A >= E A + delta) exactly and
/// compares it to janson_bound(chi*|base|, chi, delta).
TailCheck janson_check(std::span<const DiscreteRealVar> base_group,
                       std::size_t chi, double delta);

/// Standard normal CDF, evaluated by adaptive numerical integration of the
/// density to absolute tolerance 1e-14.
double normal_cdf(double a);

/// Upper tail Q(a) = 1 - Phi(a).
double qfunc(double a);

/// Inverse of Q on (0,1), by bisection to absolute tolerance 1e-12.
double qfunc_inv(double p);

struct BerryEsseenCheck {
  double max_discrepancy = 0.0;
  double bound = 0.0;
  bool passed = false;
};

/// Exact CDF of the standardized n-fold sum of i.i.d. copies of `base`
/// (mean zero required), compared to Phi on the grid.
BerryEsseenCheck berry_esseen_check(const DiscreteRealVar& base, std::size_t n,
                                    std::span<const double> grid);

}  // namespace macres
