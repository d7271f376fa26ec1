#include "macres/info.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace macres {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Flattened marginal over an ascending axis subset plus the index mapping
// from a full-rank index to that marginal's flat index.
struct Group {
  std::vector<std::size_t> axes;
  std::vector<double> table;

  std::size_t flat(const JointDistribution& j,
                   std::span<const std::size_t> idx) const {
    std::size_t o = 0;
    for (std::size_t a : axes) o = o * j.dims()[a] + idx[a];
    return o;
  }
};

Group make_group(const JointDistribution& j,
                 std::span<const std::size_t> axes) {
  Group g;
  g.axes.assign(axes.begin(), axes.end());
  std::sort(g.axes.begin(), g.axes.end());
  for (std::size_t i = 0; i < g.axes.size(); ++i) {
    if (g.axes[i] >= j.rank()) throw Error("axis out of range");
    if (i > 0 && g.axes[i] == g.axes[i - 1]) throw Error("duplicate axis");
  }
  g.table = marginal_table(j, g.axes);
  return g;
}

std::vector<std::size_t> merged(std::span<const std::size_t> a,
                                std::span<const std::size_t> b) {
  std::vector<std::size_t> m(a.begin(), a.end());
  m.insert(m.end(), b.begin(), b.end());
  std::sort(m.begin(), m.end());
  for (std::size_t i = 1; i < m.size(); ++i) {
    if (m[i] == m[i - 1]) throw Error("axis groups must be disjoint");
  }
  return m;
}

// Iterates the support of the (a,b[,c]) marginal, calling f(weight, density).
template <typename F>
void for_each_density(const JointDistribution& j,
                      std::span<const std::size_t> axes_a,
                      std::span<const std::size_t> axes_b,
                      std::span<const std::size_t> axes_c, F&& f) {
  const bool conditional = !axes_c.empty();
  const auto ab = merged(axes_a, axes_b);
  const auto abc = conditional ? merged(ab, axes_c) : ab;

  // Density at a point of the abc-marginal:
  //   unconditional: log w_ab - log(w_a w_b)
  //   conditional:   log(w_abc w_c) - log(w_ac w_bc)
  Group g_all = make_group(j, abc);
  Group g_a = make_group(j, conditional ? merged(axes_a, axes_c)
                                        : std::vector<std::size_t>(
                                              axes_a.begin(), axes_a.end()));
  Group g_b = make_group(j, conditional ? merged(axes_b, axes_c)
                                        : std::vector<std::size_t>(
                                              axes_b.begin(), axes_b.end()));
  Group g_c;
  if (conditional) g_c = make_group(j, axes_c);

  std::vector<std::size_t> idx(j.rank());
  std::vector<bool> visited(g_all.table.size(), false);
  for (std::size_t flat = 0; flat < j.size(); ++flat) {
    j.unflatten(flat, idx);
    const std::size_t o = g_all.flat(j, idx);
    if (visited[o]) continue;
    visited[o] = true;
    const double w = g_all.table[o];
    if (w <= 0.0) continue;
    const double w_a = g_a.table[g_a.flat(j, idx)];
    const double w_b = g_b.table[g_b.flat(j, idx)];
    double dens;
    if (conditional) {
      const double w_c = g_c.table[g_c.flat(j, idx)];
      dens = std::log(w * w_c) - std::log(w_a * w_b);
    } else {
      dens = std::log(w) - std::log(w_a * w_b);
    }
    f(w, dens);
  }
}

}  // namespace

double entropy(std::span<const double> weights) {
  double h = 0.0;
  for (double w : weights) {
    if (w > 0.0) h -= w * std::log(w);
  }
  return h;
}

double entropy(const FiniteDistribution& p) {
  return entropy(std::span<const double>(p.weights()));
}

double entropy(const JointDistribution& j) {
  return entropy(std::span<const double>(j.weights()));
}

double mutual_information(const JointDistribution& j,
                          std::span<const std::size_t> axes_a,
                          std::span<const std::size_t> axes_b) {
  double mi = 0.0;
  for_each_density(j, axes_a, axes_b, {},
                   [&](double w, double dens) { mi += w * dens; });
  return mi;
}

double conditional_mutual_information(const JointDistribution& j,
                                      std::span<const std::size_t> axes_a,
                                      std::span<const std::size_t> axes_b,
                                      std::span<const std::size_t> axes_c) {
  if (axes_c.empty()) throw Error("conditioning axis set is empty");
  double mi = 0.0;
  for_each_density(j, axes_a, axes_b, axes_c,
                   [&](double w, double dens) { mi += w * dens; });
  return mi;
}

namespace {

double density_at(const JointDistribution& j,
                  std::span<const std::size_t> point,
                  std::span<const std::size_t> axes_a,
                  std::span<const std::size_t> axes_b,
                  std::span<const std::size_t> axes_c) {
  if (point.size() != j.rank()) throw Error("information_density: bad point");
  const bool conditional = !axes_c.empty();
  const auto ab = merged(axes_a, axes_b);
  const auto abc = conditional ? merged(ab, axes_c) : ab;
  Group g_all = make_group(j, abc);
  const double w_all = g_all.table[g_all.flat(j, point)];
  if (w_all <= 0.0) {
    throw Error("information_density: zero-probability point");
  }
  Group g_a = make_group(j, conditional ? merged(axes_a, axes_c)
                                        : std::vector<std::size_t>(
                                              axes_a.begin(), axes_a.end()));
  Group g_b = make_group(j, conditional ? merged(axes_b, axes_c)
                                        : std::vector<std::size_t>(
                                              axes_b.begin(), axes_b.end()));
  const double w_a = g_a.table[g_a.flat(j, point)];
  const double w_b = g_b.table[g_b.flat(j, point)];
  if (conditional) {
    Group g_c = make_group(j, axes_c);
    const double w_c = g_c.table[g_c.flat(j, point)];
    return std::log(w_all * w_c) - std::log(w_a * w_b);
  }
  return std::log(w_all) - std::log(w_a * w_b);
}

}  // namespace

double information_density(const JointDistribution& j,
                           std::span<const std::size_t> point,
                           std::span<const std::size_t> axes_a,
                           std::span<const std::size_t> axes_b) {
  return density_at(j, point, axes_a, axes_b, {});
}

double conditional_information_density(const JointDistribution& j,
                                       std::span<const std::size_t> point,
                                       std::span<const std::size_t> axes_a,
                                       std::span<const std::size_t> axes_b,
                                       std::span<const std::size_t> axes_c) {
  if (axes_c.empty()) throw Error("conditioning axis set is empty");
  return density_at(j, point, axes_a, axes_b, axes_c);
}

DensityMoments density_moments(const JointDistribution& j,
                               std::span<const std::size_t> axes_a,
                               std::span<const std::size_t> axes_b,
                               std::span<const std::size_t> axes_c) {
  double mean = 0.0;
  for_each_density(j, axes_a, axes_b, axes_c,
                   [&](double w, double dens) { mean += w * dens; });
  DensityMoments m;
  m.mean = mean;
  for_each_density(j, axes_a, axes_b, axes_c, [&](double w, double dens) {
    const double d = dens - mean;
    m.variance += w * d * d;
    m.third_abs_central += w * std::abs(d) * d * d;
  });
  return m;
}

double renyi_divergence(const FiniteDistribution& p,
                        const FiniteDistribution& q, double alpha) {
  if (!p.same_alphabet(q)) throw Error("renyi_divergence: alphabet mismatch");
  if (!(alpha > 0.0) || std::abs(alpha - 1.0) < 1e-12) {
    throw Error("renyi_divergence: alpha must be positive and != 1");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double pi = p[i], qi = q[i];
    if (pi <= 0.0) continue;
    if (qi <= 0.0) {
      if (alpha > 1.0) return kInf;
      continue;  // alpha < 1: q-null points carry q^(1-alpha) = 0
    }
    sum += std::pow(pi, alpha) * std::pow(qi, 1.0 - alpha);
  }
  if (sum <= 0.0) return kInf;
  return std::log(sum) / (alpha - 1.0);
}

double kl_divergence(const FiniteDistribution& p,
                     const FiniteDistribution& q) {
  if (!p.same_alphabet(q)) throw Error("kl_divergence: alphabet mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    if (q[i] <= 0.0) return kInf;
    d += p[i] * (std::log(p[i]) - std::log(q[i]));
  }
  return d;
}

double entropy_difference_bound(double delta, std::size_t alphabet_size) {
  if (delta == 0.0) return 0.0;
  if (!(delta > 0.0) || delta > 0.25) {
    throw Error("entropy_difference_bound: delta must lie in (0, 1/4]");
  }
  if (alphabet_size == 0) throw Error("entropy_difference_bound: empty alphabet");
  return -0.5 * delta *
         std::log(delta / (2.0 * static_cast<double>(alphabet_size)));
}

EntropyContinuityCheck check_entropy_continuity(const FiniteDistribution& p,
                                                const FiniteDistribution& q) {
  EntropyContinuityCheck r;
  r.distance = variational_distance(p, q);
  if (r.distance > 0.25) {
    throw Error("check_entropy_continuity: distance exceeds 1/4");
  }
  r.entropy_gap = std::abs(entropy(p) - entropy(q));
  r.bound = entropy_difference_bound(r.distance, p.size());
  r.slack = r.bound - r.entropy_gap;
  r.passed = r.entropy_gap <= r.bound + 1e-12;
  return r;
}

}  // namespace macres
