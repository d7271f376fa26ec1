#include "macres/prob.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace macres {

namespace {

void validate_weights(const std::vector<double>& w, double mass_tol,
                      const char* what) {
  double sum = 0.0;
  for (double x : w) {
    if (!(x >= 0.0)) {
      throw Error(std::string(what) + ": negative or NaN weight " +
                  std::to_string(x));
    }
    sum += x;
  }
  if (std::abs(sum - 1.0) > mass_tol) {
    throw Error(std::string(what) + ": weights sum to " + std::to_string(sum) +
                ", not 1 within tolerance");
  }
}

}  // namespace

FiniteDistribution::FiniteDistribution(Alphabet labels,
                                       std::vector<double> weights)
    : labels_(std::move(labels)), weights_(std::move(weights)) {
  if (labels_.empty() || labels_.size() != weights_.size()) {
    throw Error("FiniteDistribution: label/weight size mismatch");
  }
  std::set<Symbol> seen(labels_.begin(), labels_.end());
  if (seen.size() != labels_.size()) {
    throw Error("FiniteDistribution: duplicate labels");
  }
  validate_weights(weights_, kMassTol, "FiniteDistribution");
}

std::size_t FiniteDistribution::index_of(const Symbol& s) const {
  auto it = std::find(labels_.begin(), labels_.end(), s);
  if (it == labels_.end()) {
    throw Error("FiniteDistribution: unknown symbol '" + s + "'");
  }
  return static_cast<std::size_t>(it - labels_.begin());
}

FiniteDistribution FiniteDistribution::uniform(Alphabet labels) {
  const std::size_t k = labels.size();
  if (k == 0) throw Error("uniform: empty alphabet");
  return FiniteDistribution(std::move(labels),
                            std::vector<double>(k, 1.0 / static_cast<double>(k)));
}

FiniteDistribution FiniteDistribution::point_mass(Alphabet labels,
                                                  std::size_t at) {
  if (at >= labels.size()) throw Error("point_mass: index out of range");
  std::vector<double> w(labels.size(), 0.0);
  w[at] = 1.0;
  return FiniteDistribution(std::move(labels), std::move(w));
}

JointDistribution::JointDistribution(std::vector<Alphabet> axes,
                                     std::vector<double> weights,
                                     double mass_tol)
    : axes_(std::move(axes)), weights_(std::move(weights)) {
  if (axes_.empty()) throw Error("JointDistribution: no axes");
  dims_.reserve(axes_.size());
  std::size_t total = 1;
  for (const auto& a : axes_) {
    if (a.empty()) throw Error("JointDistribution: empty axis alphabet");
    dims_.push_back(a.size());
    if (total > enumeration_budget() / a.size()) {
      throw BudgetError("JointDistribution: support exceeds budget");
    }
    total *= a.size();
  }
  if (total != weights_.size()) {
    throw Error("JointDistribution: weight tensor size mismatch");
  }
  strides_.assign(axes_.size(), 1);
  for (std::size_t i = axes_.size(); i-- > 1;) {
    strides_[i - 1] = strides_[i] * dims_[i];
  }
  validate_weights(weights_, mass_tol, "JointDistribution");
}

std::size_t JointDistribution::flat_index(
    std::span<const std::size_t> idx) const {
  if (idx.size() != axes_.size()) {
    throw Error("JointDistribution: index rank mismatch");
  }
  std::size_t flat = 0;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] >= dims_[i]) throw Error("JointDistribution: index out of range");
    flat += idx[i] * strides_[i];
  }
  return flat;
}

void JointDistribution::unflatten(std::size_t flat,
                                  std::span<std::size_t> out) const {
  for (std::size_t i = 0; i < axes_.size(); ++i) {
    out[i] = (flat / strides_[i]) % dims_[i];
  }
}

FiniteDistribution JointDistribution::axis_marginal(std::size_t axis) const {
  const std::size_t keep[] = {axis};
  std::vector<double> w = marginal_table(*this, keep);
  return FiniteDistribution(axes_[axis], std::move(w));
}

double variational_distance(std::span<const double> p,
                            std::span<const double> q) {
  if (p.size() != q.size()) {
    throw Error("variational_distance: alphabet mismatch");
  }
  double half_l1 = 0.0;
  double pos_part = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double d = p[i] - q[i];
    half_l1 += std::abs(d);
    if (d > 0.0) pos_part += d;
  }
  half_l1 *= 0.5;
  if (std::abs(half_l1 - pos_part) > 1e-12) {
    throw Error("variational_distance: defining formulas disagree");
  }
  return half_l1;
}

double variational_distance(const FiniteDistribution& p,
                            const FiniteDistribution& q) {
  if (!p.same_alphabet(q)) {
    throw Error("variational_distance: alphabet mismatch");
  }
  return variational_distance(std::span<const double>(p.weights()),
                              std::span<const double>(q.weights()));
}

JointDistribution product_extension(const FiniteDistribution& p,
                                    std::size_t n) {
  if (n == 0) throw Error("product_extension: n must be positive");
  const std::size_t total = checked_pow(p.size(), n);
  std::vector<double> w(total);
  for (std::size_t flat = 0; flat < total; ++flat) {
    double prob = 1.0;
    std::size_t rest = flat;
    for (std::size_t k = 0; k < n; ++k) {
      prob *= p[rest % p.size()];
      rest /= p.size();
    }
    w[flat] = prob;
  }
  return JointDistribution(std::vector<Alphabet>(n, p.labels()), std::move(w));
}

JointDistribution product_joint(
    const std::vector<FiniteDistribution>& factors) {
  if (factors.empty()) throw Error("product_joint: no factors");
  std::vector<Alphabet> axes;
  std::size_t total = 1;
  for (const auto& f : factors) {
    axes.push_back(f.labels());
    if (total > enumeration_budget() / f.size()) {
      throw BudgetError("product_joint: support exceeds budget");
    }
    total *= f.size();
  }
  std::vector<double> w(total, 1.0);
  std::size_t stride = total;
  for (const auto& f : factors) {
    stride /= f.size();
    for (std::size_t flat = 0; flat < total; ++flat) {
      w[flat] *= f[(flat / stride) % f.size()];
    }
  }
  return JointDistribution(std::move(axes), std::move(w));
}

JointDistribution marginalize(const JointDistribution& j,
                              std::span<const std::size_t> keep) {
  if (keep.empty()) throw Error("marginalize: empty axis set");
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] >= j.rank()) throw Error("marginalize: axis out of range");
    if (i > 0 && keep[i] <= keep[i - 1]) {
      throw Error("marginalize: axes must be strictly increasing");
    }
  }
  std::vector<double> w = marginal_table(j, keep);
  std::vector<Alphabet> axes;
  for (std::size_t a : keep) axes.push_back(j.axes()[a]);
  return JointDistribution(std::move(axes), std::move(w));
}

std::vector<double> marginal_table(const JointDistribution& j,
                                   std::span<const std::size_t> axes) {
  std::size_t out_size = 1;
  for (std::size_t a : axes) out_size *= j.dims()[a];
  std::vector<double> out(out_size, 0.0);
  std::vector<std::size_t> idx(j.rank());
  for (std::size_t flat = 0; flat < j.size(); ++flat) {
    j.unflatten(flat, idx);
    std::size_t o = 0;
    for (std::size_t a : axes) o = o * j.dims()[a] + idx[a];
    out[o] += j.weights()[flat];
  }
  return out;
}

}  // namespace macres
