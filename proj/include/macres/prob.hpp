#pragma once

#include <span>
#include <string>
#include <vector>

#include "macres/common.hpp"

namespace macres {

using Symbol = std::string;
using Alphabet = std::vector<Symbol>;

/// Probability mass function over a labeled finite alphabet.
/// Weights must be nonnegative and sum to 1 within 1e-12; labels must be
/// distinct. Violations raise, nothing is silently renormalized.
class FiniteDistribution {
 public:
  FiniteDistribution(Alphabet labels, std::vector<double> weights);

  const Alphabet& labels() const { return labels_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }
  std::size_t index_of(const Symbol& s) const;
  bool same_alphabet(const FiniteDistribution& other) const {
    return labels_ == other.labels_;
  }

  static FiniteDistribution uniform(Alphabet labels);
  static FiniteDistribution point_mass(Alphabet labels, std::size_t at);

 private:
  Alphabet labels_;
  std::vector<double> weights_;
};

/// Probability tensor over a product of labeled finite alphabets,
/// row-major in axis order. Total mass 1 within `mass_tol` (1e-12 by
/// default; callers accumulating many terms may declare a looser bound).
class JointDistribution {
 public:
  JointDistribution(std::vector<Alphabet> axes, std::vector<double> weights,
                    double mass_tol = kMassTol);

  std::size_t rank() const { return axes_.size(); }
  const std::vector<Alphabet>& axes() const { return axes_; }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t size() const { return weights_.size(); }
  const std::vector<double>& weights() const { return weights_; }

  std::size_t flat_index(std::span<const std::size_t> idx) const;
  void unflatten(std::size_t flat, std::span<std::size_t> out) const;
  double at(std::span<const std::size_t> idx) const {
    return weights_[flat_index(idx)];
  }

  FiniteDistribution axis_marginal(std::size_t axis) const;

 private:
  std::vector<Alphabet> axes_;
  std::vector<std::size_t> dims_;
  std::vector<std::size_t> strides_;
  std::vector<double> weights_;
};

/// Half L1 distance. Both defining formulas, (1/2)sum|p-q| and
/// sum max(p-q,0), are evaluated and must agree within 1e-12.
double variational_distance(std::span<const double> p,
                            std::span<const double> q);
double variational_distance(const FiniteDistribution& p,
                            const FiniteDistribution& q);

/// Memoryless n-fold product of a base distribution.
JointDistribution product_extension(const FiniteDistribution& p,
                                    std::size_t n);

/// Product of independent factors, one axis per factor.
JointDistribution product_joint(const std::vector<FiniteDistribution>& factors);

/// Sums out all axes not in `keep`. `keep` must be a non-empty strictly
/// increasing list of axis indices; kept axes retain their order.
JointDistribution marginalize(const JointDistribution& j,
                              std::span<const std::size_t> keep);

/// Marginal weight table over a subset of axes (ascending order), without
/// constructing a JointDistribution. Returns the flattened table.
std::vector<double> marginal_table(const JointDistribution& j,
                                   std::span<const std::size_t> axes);

}  // namespace macres
