#include "macres/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace macres {

namespace {

constexpr std::size_t kConvolutionBudget = 1'000'000;
// Guard against floating-point drift when comparing support points to a
// threshold; fixture supports are spaced far wider than this.
constexpr double kTailEps = 1e-9;

}  // namespace

DiscreteRealVar::DiscreteRealVar(std::vector<double> values_in,
                                 std::vector<double> probs_in)
    : values(std::move(values_in)), probs(std::move(probs_in)) {
  if (values.empty() || values.size() != probs.size()) {
    throw Error("DiscreteRealVar: value/prob size mismatch");
  }
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) throw Error("DiscreteRealVar: negative probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kMassTol) {
    throw Error("DiscreteRealVar: probabilities sum to " + std::to_string(sum));
  }
}

double DiscreteRealVar::mean() const {
  double m = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) m += values[i] * probs[i];
  return m;
}

DiscreteRealVar DiscreteRealVar::bernoulli(double p, double lo, double hi) {
  return DiscreteRealVar({lo, hi}, {1.0 - p, p});
}

DiscreteRealVar sum_distribution(std::span<const DiscreteRealVar> vars) {
  if (vars.empty()) throw Error("sum_distribution: no variables");
  std::map<double, double> acc{{0.0, 1.0}};
  for (const auto& v : vars) {
    std::map<double, double> next;
    for (const auto& [val, pr] : acc) {
      for (std::size_t i = 0; i < v.values.size(); ++i) {
        if (v.probs[i] == 0.0) continue;
        next[val + v.values[i]] += pr * v.probs[i];
      }
    }
    if (next.size() > kConvolutionBudget) {
      throw BudgetError("sum_distribution: support exceeds convolution budget");
    }
    acc = std::move(next);
  }
  std::vector<double> values, probs;
  values.reserve(acc.size());
  probs.reserve(acc.size());
  for (const auto& [val, pr] : acc) {
    values.push_back(val);
    probs.push_back(pr);
  }
  return DiscreteRealVar(std::move(values), std::move(probs));
}

double hoeffding_bound(double mu, double delta) {
  if (!(delta > 0.0) || !(delta < 1.0)) {
    throw Error("hoeffding_bound: delta must lie in (0,1)");
  }
  if (!(mu >= 0.0)) throw Error("hoeffding_bound: mu must be nonnegative");
  return std::exp(-delta * delta * mu / 3.0);
}

TailCheck hoeffding_check(std::span<const DiscreteRealVar> vars, double mu,
                          double delta) {
  if (vars.size() > 20) {
    throw Error("hoeffding_check: enumeration limited to 20 variables");
  }
  double expected = 0.0;
  for (const auto& v : vars) {
    for (double x : v.values) {
      if (x < -kTailEps || x > 1.0 + kTailEps) {
        throw Error("hoeffding_check: values must lie in [0,1]");
      }
    }
    expected += v.mean();
  }
  if (expected > mu + 1e-12) {
    throw Error("hoeffding_check: mu is below the expected sum");
  }
  const DiscreteRealVar sum = sum_distribution(vars);
  const double threshold = mu * (1.0 + delta);
  TailCheck r;
  for (std::size_t i = 0; i < sum.values.size(); ++i) {
    if (sum.values[i] > threshold + kTailEps) r.exact_tail += sum.probs[i];
  }
  r.bound = hoeffding_bound(mu, delta);
  r.passed = r.exact_tail <= r.bound + 1e-12;
  return r;
}

double janson_bound(std::size_t n, std::size_t chi, double delta) {
  if (chi < 1) throw Error("janson_bound: chi must be >= 1");
  if (n < 1) throw Error("janson_bound: n must be >= 1");
  if (!(delta > 0.0)) throw Error("janson_bound: delta must be positive");
  return std::exp(-2.0 * delta * delta /
                  (static_cast<double>(chi) * static_cast<double>(n)));
}

TailCheck janson_check(std::span<const DiscreteRealVar> base_group,
                       std::size_t chi, double delta) {
  if (base_group.empty()) throw Error("janson_check: empty base group");
  for (const auto& v : base_group) {
    for (double x : v.values) {
      if (x < -kTailEps || x > 1.0 + kTailEps) {
        throw Error("janson_check: values must lie in [0,1]");
      }
    }
  }
  // A = chi * S with S the base-group sum; groups are identical copies, so
  // the partition into chi internally-independent sets is exact.
  const DiscreteRealVar s = sum_distribution(base_group);
  const double mean_a = static_cast<double>(chi) * s.mean();
  const double threshold_s = (mean_a + delta) / static_cast<double>(chi);
  TailCheck r;
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    if (s.values[i] >= threshold_s - kTailEps) r.exact_tail += s.probs[i];
  }
  r.bound = janson_bound(chi * base_group.size(), chi, delta);
  r.passed = r.exact_tail <= r.bound + 1e-12;
  return r;
}

namespace {

double normal_pdf(double x) {
  static const double inv_sqrt_2pi = 0.3989422804014327;
  return inv_sqrt_2pi * std::exp(-0.5 * x * x);
}

double adaptive_simpson(double a, double b, double fa, double fm, double fb,
                        double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = normal_pdf(lm), frm = normal_pdf(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol) {
    return left + right + (left + right - whole) / 15.0;
  }
  return adaptive_simpson(a, m, fa, flm, fm, left, tol * 0.5, depth - 1) +
         adaptive_simpson(m, b, fm, frm, fb, right, tol * 0.5, depth - 1);
}

double integrate_pdf(double a, double b) {
  const double fa = normal_pdf(a), fb = normal_pdf(b);
  const double m = 0.5 * (a + b);
  const double fm = normal_pdf(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(a, b, fa, fm, fb, whole, 1e-15, 48);
}

}  // namespace

double normal_cdf(double a) {
  if (std::isnan(a)) throw Error("normal_cdf: NaN argument");
  if (a < 0.0) return 1.0 - normal_cdf(-a);
  const double cap = std::min(a, 40.0);
  // integrate in unit-width panels so the adaptive error control applies
  // to comparable magnitudes across the whole range
  double integral = 0.0;
  double lo = 0.0;
  while (lo < cap) {
    const double hi = std::min(lo + 1.0, cap);
    integral += integrate_pdf(lo, hi);
    lo = hi;
  }
  return std::min(1.0, 0.5 + integral);
}

double qfunc(double a) { return 1.0 - normal_cdf(a); }

double qfunc_inv(double p) {
  if (!(p > 0.0) || !(p < 1.0)) {
    throw Error("qfunc_inv: p must lie in (0,1)");
  }
  double lo = -40.0, hi = 40.0;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (qfunc(mid) > p) {
      lo = mid;  // Q decreasing: value too high means mid is left of root
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

BerryEsseenCheck berry_esseen_check(const DiscreteRealVar& base, std::size_t n,
                                    std::span<const double> grid) {
  if (n == 0) throw Error("berry_esseen_check: n must be positive");
  if (std::abs(base.mean()) > 1e-12) {
    throw Error("berry_esseen_check: base distribution must have mean zero");
  }
  double sigma2 = 0.0, rho = 0.0;
  for (std::size_t i = 0; i < base.values.size(); ++i) {
    const double v = base.values[i], p = base.probs[i];
    sigma2 += p * v * v;
    rho += p * std::abs(v) * v * v;
  }
  if (sigma2 <= 0.0) throw Error("berry_esseen_check: zero variance");
  const double sigma = std::sqrt(sigma2);

  const std::vector<DiscreteRealVar> copies(n, base);
  const DiscreteRealVar sum = sum_distribution(copies);
  const double scale = sigma * std::sqrt(static_cast<double>(n));

  BerryEsseenCheck r;
  r.bound = rho / (sigma2 * sigma * std::sqrt(static_cast<double>(n)));
  for (double a : grid) {
    double cdf = 0.0;
    for (std::size_t i = 0; i < sum.values.size(); ++i) {
      if (sum.values[i] / scale <= a + kTailEps) cdf += sum.probs[i];
    }
    r.max_discrepancy =
        std::max(r.max_discrepancy, std::abs(cdf - normal_cdf(a)));
  }
  r.passed = r.max_discrepancy <= r.bound + 1e-12;
  return r;
}

}  // namespace macres
