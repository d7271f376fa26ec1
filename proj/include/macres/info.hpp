#pragma once

#include <span>
#include <vector>

#include "macres/prob.hpp"

namespace macres {

// All information quantities are in nats. Sums over likelihood ratios run
// over the support of the denominator, and 0*log 0 = 0 throughout.

double entropy(std::span<const double> weights);
double entropy(const FiniteDistribution& p);
double entropy(const JointDistribution& j);

/// I(A;B) for disjoint axis groups of a joint distribution. Axes not in
/// either group are summed out first.
double mutual_information(const JointDistribution& j,
                          std::span<const std::size_t> axes_a,
                          std::span<const std::size_t> axes_b);

/// I(A;B|C); computed by explicit conditioning on each value of C and
/// convex combination. Zero-probability conditionals contribute nothing.
double conditional_mutual_information(const JointDistribution& j,
                                      std::span<const std::size_t> axes_a,
                                      std::span<const std::size_t> axes_b,
                                      std::span<const std::size_t> axes_c);

/// log r(b|a)/r(b) at a single point of the joint. The point must have
/// positive probability.
double information_density(const JointDistribution& j,
                           std::span<const std::size_t> point,
                           std::span<const std::size_t> axes_a,
                           std::span<const std::size_t> axes_b);

/// log r(b|a,c)/r(b|c) at a single point.
double conditional_information_density(const JointDistribution& j,
                                       std::span<const std::size_t> point,
                                       std::span<const std::size_t> axes_a,
                                       std::span<const std::size_t> axes_b,
                                       std::span<const std::size_t> axes_c);

/// Exact central moments of the (conditional) information density.
/// mean is the matching mutual information, variance the dispersion.
struct DensityMoments {
  double mean = 0.0;
  double variance = 0.0;
  double third_abs_central = 0.0;
};

/// Pass empty axes_c for the unconditional density.
DensityMoments density_moments(const JointDistribution& j,
                               std::span<const std::size_t> axes_a,
                               std::span<const std::size_t> axes_b,
                               std::span<const std::size_t> axes_c = {});

/// Order-alpha Renyi divergence, alpha > 0, alpha != 1. Returns +infinity
/// when the divergence is infinite (e.g. support violation for alpha > 1).
double renyi_divergence(const FiniteDistribution& p,
                        const FiniteDistribution& q, double alpha);

/// Direct sum p log(p/q); kept separate from renyi_divergence so the two
/// can cross-check each other.
double kl_divergence(const FiniteDistribution& p, const FiniteDistribution& q);

/// -(delta/2) log(delta / (2 * alphabet_size)), the entropy-difference
/// bound for distributions at variational distance delta <= 1/4.
double entropy_difference_bound(double delta, std::size_t alphabet_size);

struct EntropyContinuityCheck {
  bool passed = false;
  double distance = 0.0;
  double entropy_gap = 0.0;
  double bound = 0.0;
  double slack = 0.0;  // bound - entropy_gap
};

/// Checks |H(p)-H(q)| against the bound at delta = measured distance.
/// Requires the measured distance to be <= 1/4.
EntropyContinuityCheck check_entropy_continuity(const FiniteDistribution& p,
                                                const FiniteDistribution& q);

}  // namespace macres
