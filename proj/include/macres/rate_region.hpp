#pragma once

#include <optional>
#include <utility>

#include "macres/resolvability.hpp"

namespace macres {

/// Auxiliary distribution p_V plus per-v conditional input distributions,
/// with all derived functionals precomputed: per-v conditional mutual
/// informations, per-v output distributions, and their p_V-averages.
///
/// Membership certificates additionally satisfy the per-v output
/// constraint against the target (checked by verify_certificate); witnesses
/// built from codebooks satisfy the mixture-level distance bound instead.
struct RegionWitness {
  std::vector<double> p_v;
  std::vector<std::vector<double>> qx_given_v;
  std::vector<std::vector<double>> qy_given_v;

  std::vector<double> mi_joint_v, mi_x_v, mi_y_v;
  std::vector<std::vector<double>> output_v;

  double mi_joint = 0.0;  // I(X,Y;Z|V)
  double mi_x = 0.0;      // I(X;Z|V)
  double mi_y = 0.0;      // I(Y;Z|V)
  std::vector<double> mixture_output;
  double max_per_v_output_error = 0.0;  // over supported v, vs target
  double mixture_output_error = 0.0;

  std::size_t support_size() const;
};

RegionWitness make_witness(const Mac& mac, std::vector<double> p_v,
                           std::vector<std::vector<double>> qx_given_v,
                           std::vector<std::vector<double>> qy_given_v,
                           const FiniteDistribution& target_qz);

/// ((I(X;Z|Y), I(Y;Z)), (I(X;Z), I(Y;Z|X)))
std::pair<std::pair<double, double>, std::pair<double, double>> corner_points(
    const Mac& mac, const FiniteDistribution& qx, const FiniteDistribution& qy);

struct SearchConfig {
  std::size_t v_max = 3;
  std::size_t grid = 64;         // input-probability grid resolution
  double output_tol = 1e-6;      // per-v output constraint slack
  double margin = 1e-4;          // required strict margin on certification
  std::size_t refine_rounds = 6;
  std::size_t max_candidates = 48;  // Pareto-reduced mixing candidates
};

/// Inner (one-sided) membership search: returns a verified certificate or
/// nothing. A nullopt answer means "unknown", never "outside".
std::optional<RegionWitness> region_membership(const Mac& mac,
                                               const FiniteDistribution& qz,
                                               double rate1, double rate2,
                                               const SearchConfig& config = {});

/// Re-verifies a certificate from scratch: per-v output constraint and the
/// three rate inequalities with the stated margin.
bool verify_certificate(const Mac& mac, const RegionWitness& w,
                        const FiniteDistribution& qz, double rate1,
                        double rate2, double output_tol, double margin);

/// Single-letter witness extracted from a concrete codebook pair whose
/// measured gap is at most 1/4: V uniform over positions, per-position
/// empirical input marginals.
struct ConverseWitness {
  RegionWitness witness;
  double delta = 0.0;             // measured resolvability gap
  double penalty = 0.0;           // delta * log(delta / (2|Z|)), <= 0
  double realized_rate1 = 0.0, realized_rate2 = 0.0;
  bool ineq_sum = false, ineq_rate1 = false, ineq_rate2 = false;
  bool output_close = false;      // mixture output within delta of target

  bool all_hold() const {
    return ineq_sum && ineq_rate1 && ineq_rate2 && output_close;
  }
};

ConverseWitness converse_witness(const Mac& mac, const Codebook& c1,
                                 const Codebook& c2,
                                 const FiniteDistribution& qz);

/// Support reduction to at most |Z|+3 points preserving the three averaged
/// conditional mutual informations and the averaged output distribution
/// within 1e-9. Deterministic constructive elimination; failures raise.
RegionWitness reduce_auxiliary(const RegionWitness& w);

/// Checks that convex combinations of two certified rate pairs are
/// certified by the mixture witness.
struct ConvexityProbe {
  struct Entry {
    double lambda = 0.0;
    double rate1 = 0.0, rate2 = 0.0;
    bool certified = false;
  };
  std::vector<Entry> entries;
  bool all_certified = false;
};

ConvexityProbe convexity_probe(const Mac& mac, const FiniteDistribution& qz,
                               std::pair<double, double> rates_a,
                               std::pair<double, double> rates_b,
                               std::span<const double> lambdas,
                               const SearchConfig& config = {});

}  // namespace macres
