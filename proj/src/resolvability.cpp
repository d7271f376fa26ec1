#include "macres/resolvability.hpp"

#include <algorithm>
#include <cmath>

#include "block_support.hpp"
#include "macres/bounds.hpp"
#include "macres/rng.hpp"

namespace macres {

using detail::kTypicalityEps;

Codebook::Codebook(Alphabet alphabet_in, std::size_t n_in, double rate,
                   std::vector<Word> words_in)
    : alphabet(std::move(alphabet_in)),
      n(n_in),
      nominal_rate(rate),
      words(std::move(words_in)) {
  if (n == 0) throw Error("Codebook: block length must be positive");
  if (words.empty()) throw Error("Codebook: at least one codeword required");
  for (const Word& w : words) {
    if (w.size() != n) throw Error("Codebook: codeword length mismatch");
    for (std::size_t s : w) {
      if (s >= alphabet.size()) throw Error("Codebook: symbol out of range");
    }
  }
}

double Codebook::realized_rate() const {
  return std::log(static_cast<double>(words.size())) /
         static_cast<double>(n);
}

std::size_t Codebook::word_count_for(std::size_t n, double rate) {
  if (rate < 0.0) throw Error("Codebook: rate must be nonnegative");
  const double count = std::exp(static_cast<double>(n) * rate);
  if (count > static_cast<double>(enumeration_budget())) {
    throw BudgetError("Codebook: word count exceeds budget");
  }
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(count)));
}

namespace {

Codebook sample_one(const FiniteDistribution& q, std::size_t n, double rate,
                    Rng& rng) {
  const std::size_t count = Codebook::word_count_for(n, rate);
  std::vector<Word> words(count, Word(n));
  for (auto& w : words) {
    for (std::size_t k = 0; k < n; ++k) w[k] = rng.sample(q.weights());
  }
  return Codebook(q.labels(), n, rate, std::move(words));
}

}  // namespace

std::pair<Codebook, Codebook> sample_codebooks(const FiniteDistribution& qx,
                                               const FiniteDistribution& qy,
                                               std::size_t n, double rate1,
                                               double rate2,
                                               std::uint64_t seed) {
  Rng rng1(derive_seed(seed, {1}));
  Rng rng2(derive_seed(seed, {2}));
  Codebook c1 = sample_one(qx, n, rate1, rng1);
  Codebook c2 = sample_one(qy, n, rate2, rng2);
  return {std::move(c1), std::move(c2)};
}

namespace {

std::vector<double> induced_output_vector(const Mac& mac, const Codebook& c1,
                                          const Codebook& c2) {
  if (c1.n != c2.n) throw Error("induced_output: block length mismatch");
  if (c1.alphabet != mac.x_alphabet() || c2.alphabet != mac.y_alphabet()) {
    throw Error("induced_output: codebook alphabet mismatch");
  }
  const std::size_t total = checked_pow(mac.nz(), c1.n);
  std::vector<double> acc(total, 0.0);
  const double weight =
      1.0 / (static_cast<double>(c1.count()) * static_cast<double>(c2.count()));
  for (const Word& xw : c1.words) {
    for (const Word& yw : c2.words) {
      detail::add_block_conditional(mac, xw, yw, weight, acc);
    }
  }
  return acc;
}

}  // namespace

JointDistribution induced_output(const Mac& mac, const Codebook& c1,
                                 const Codebook& c2) {
  std::vector<double> acc = induced_output_vector(mac, c1, c2);
  return JointDistribution(std::vector<Alphabet>(c1.n, mac.z_alphabet()),
                           std::move(acc), 1e-10);
}

double resolvability_gap(const Mac& mac, const Codebook& c1,
                         const Codebook& c2, const FiniteDistribution& qz) {
  if (qz.labels() != mac.z_alphabet()) {
    throw Error("resolvability_gap: output alphabet mismatch");
  }
  const std::vector<double> p = induced_output_vector(mac, c1, c2);
  std::vector<double> q(p.size());
  for (std::size_t flat = 0; flat < q.size(); ++flat) {
    q[flat] = detail::product_weight(qz.weights(), c1.n, flat);
  }
  return variational_distance(p, q);
}

TypicalitySplit typicality_split(const Mac& mac, const FiniteDistribution& qx,
                                 const FiniteDistribution& qy,
                                 const Codebook& c1, const Codebook& c2,
                                 double epsilon) {
  if (!(epsilon >= 0.0)) throw Error("typicality_split: epsilon must be >= 0");
  if (c1.n != c2.n) throw Error("typicality_split: block length mismatch");
  const std::size_t n = c1.n;
  const std::size_t nz = mac.nz();
  const std::size_t total = checked_pow(nz, n);
  const detail::DensityTables tables(mac, qx, qy);
  const double nd = static_cast<double>(n);
  const double thr1 =
      nd * (tables.summary.i_x_z_given_y + epsilon) + kTypicalityEps;
  const double thr2 = nd * (tables.summary.i_y_z + epsilon) + kTypicalityEps;
  const double pair_weight =
      1.0 / (static_cast<double>(c1.count()) * static_cast<double>(c2.count()));

  TypicalitySplit out;
  out.epsilon = epsilon;
  std::vector<std::size_t> zsym(n);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rest = flat;
    for (std::size_t k = n; k-- > 0;) {
      zsym[k] = rest % nz;
      rest /= nz;
    }
    const double q_target = detail::product_weight(tables.qz, n, flat);
    double induced = 0.0;
    double typical_ratio_sum = 0.0;
    for (const Word& yw : c2.words) {
      double dens2 = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        dens2 += tables.d_y[yw[k] * nz + zsym[k]];
      }
      const bool atyp2 = !(dens2 <= thr2);
      for (const Word& xw : c1.words) {
        double lik = 1.0;
        for (std::size_t k = 0; k < n; ++k) {
          lik *= mac.q(xw[k], yw[k], zsym[k]);
          if (lik == 0.0) break;
        }
        if (lik == 0.0) continue;
        const double w = pair_weight * lik;
        induced += w;
        double dens1 = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          dens1 += tables.d_x_cond_y[(xw[k] * mac.ny() + yw[k]) * nz + zsym[k]];
        }
        const bool atyp1 = !(dens1 <= thr1);
        if (atyp1) out.p_atyp1 += w;
        if (atyp2) out.p_atyp2 += w;
        if (!atyp1 && !atyp2 && q_target > 0.0) {
          typical_ratio_sum += w / q_target;
        }
      }
    }
    if (q_target > 0.0) {
      out.typical_excess += q_target * std::max(typical_ratio_sum - 1.0, 0.0);
    }
    out.gap += std::max(induced - q_target, 0.0);
  }
  if (out.gap > out.bound() + 1e-12) {
    throw Error("typicality_split: decomposition bound violated");
  }
  return out;
}

std::vector<GapReport> concentration_experiment(
    const Mac& mac, const FiniteDistribution& qx, const FiniteDistribution& qy,
    double rate1, double rate2, std::span<const std::size_t> n_list,
    std::size_t trials, double gamma1, std::uint64_t seed) {
  if (trials == 0) throw Error("concentration_experiment: trials must be > 0");
  const FiniteDistribution qz = output_distribution(mac, qx, qy);
  std::vector<GapReport> reports;
  for (std::size_t n : n_list) {
    (void)checked_pow(mac.nz(), n);
    GapReport rep;
    rep.n = n;
    rep.seed = seed;
    rep.rate1 = rate1;
    rep.rate2 = rate2;
    rep.gamma1 = gamma1;
    rep.threshold = std::exp(-gamma1 * static_cast<double>(n));
    rep.gaps.resize(trials);
    for (std::size_t t = 0; t < trials; ++t) {
      const std::uint64_t trial_seed = derive_seed(seed, {n, t});
      auto [c1, c2] = sample_codebooks(qx, qy, n, rate1, rate2, trial_seed);
      rep.gaps[t] = resolvability_gap(mac, c1, c2, qz);
      if (t == 0) {
        rep.realized_rate1 = c1.realized_rate();
        rep.realized_rate2 = c2.realized_rate();
      }
    }
    std::vector<double> sorted = rep.gaps;
    std::sort(sorted.begin(), sorted.end());
    auto quantile = [&](double q) {
      const double pos = q * static_cast<double>(sorted.size() - 1);
      const std::size_t lo = static_cast<std::size_t>(pos);
      const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
      const double frac = pos - static_cast<double>(lo);
      return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
    };
    rep.median = quantile(0.5);
    rep.q25 = quantile(0.25);
    rep.q75 = quantile(0.75);
    rep.min = sorted.front();
    rep.max = sorted.back();
    std::size_t exceed = 0;
    for (double g : rep.gaps) {
      if (g > rep.threshold) ++exceed;
    }
    rep.exceedance_fraction =
        static_cast<double>(exceed) / static_cast<double>(trials);
    reports.push_back(std::move(rep));
  }
  return reports;
}

std::size_t TimeSharingSplit::split_point(std::size_t n) const {
  return static_cast<std::size_t>(
      std::ceil(lambda_hat * static_cast<double>(n)));
}

TimeSharingSplit time_sharing_split(const Mac& mac,
                                    const FiniteDistribution& qx,
                                    const FiniteDistribution& qy, double rate1,
                                    double rate2) {
  const ChannelSummary s = channel_summary(mac, qx, qy);
  if (!(rate1 > s.i_x_z) || !(rate2 > s.i_y_z) ||
      !(rate1 + rate2 > s.i_xy_z)) {
    throw Error("time_sharing_split: rates must strictly dominate I(X;Z), "
                "I(Y;Z) and I(X,Y;Z)");
  }
  TimeSharingSplit out;
  if (rate1 > s.i_x_z_given_y) {
    out.kind = TimeSharingSplit::Kind::corner1_direct;
    return out;
  }
  if (rate2 > s.i_y_z_given_x) {
    out.kind = TimeSharingSplit::Kind::corner2_direct;
    return out;
  }
  // r1(lambda) decreases from I(X;Z|Y) to I(X;Z); r2(lambda) increases
  // from I(Y;Z) to I(Y;Z|X).
  auto r1_of = [&](double lam) {
    return lam * s.i_x_z + (1.0 - lam) * s.i_x_z_given_y;
  };
  auto r2_of = [&](double lam) {
    return lam * s.i_y_z_given_x + (1.0 - lam) * s.i_y_z;
  };
  out.kind = TimeSharingSplit::Kind::split;
  out.lambda1 = (s.i_x_z_given_y - rate1) / (s.i_x_z_given_y - s.i_x_z);
  out.lambda2 = (rate2 - s.i_y_z) / (s.i_y_z_given_x - s.i_y_z);
  if (!(out.lambda1 < out.lambda2)) {
    throw Error("time_sharing_split: no interior parameter exists");
  }
  out.lambda_hat = 0.5 * (out.lambda1 + out.lambda2);
  out.r1_at_hat = r1_of(out.lambda_hat);
  out.r2_at_hat = r2_of(out.lambda_hat);
  if (!(rate1 > out.r1_at_hat) || !(rate2 > out.r2_at_hat)) {
    throw Error("time_sharing_split: selected parameter fails the rate check");
  }
  return out;
}

SecondOrderSchedule second_order_schedule(const Mac& mac,
                                          const FiniteDistribution& qx,
                                          const FiniteDistribution& qy,
                                          double epsilon, double c, double d,
                                          std::size_t n, int corner) {
  if (!(epsilon > 0.0) || !(epsilon < 1.0)) {
    throw Error("second_order_schedule: epsilon must lie in (0,1)");
  }
  if (!(c > 1.0)) throw Error("second_order_schedule: c must exceed 1");
  if (!(d > 0.0) || !(d < c - 1.0)) {
    throw Error("second_order_schedule: d must lie in (0, c-1)");
  }
  if (corner != 1 && corner != 2) {
    throw Error("second_order_schedule: corner must be 1 or 2");
  }
  if (n == 0) throw Error("second_order_schedule: n must be positive");

  const JointDistribution j = induced_joint(mac, qx, qy);
  const std::size_t ax[] = {0}, ay[] = {1}, az[] = {2};
  DensityMoments m1, m2;
  if (corner == 1) {
    m1 = density_moments(j, ax, az, ay);  // i(X;Z|Y)
    m2 = density_moments(j, ay, az);      // i(Y;Z)
  } else {
    m1 = density_moments(j, ax, az);      // i(X;Z)
    m2 = density_moments(j, ay, az, ax);  // i(Y;Z|X)
  }

  SecondOrderSchedule out;
  out.n = n;
  out.epsilon = epsilon;
  out.c = c;
  out.d = d;
  out.corner = corner;
  out.i1 = m1.mean;
  out.i2 = m2.mean;
  out.v1 = m1.variance;
  out.v2 = m2.variance;
  out.t1 = m1.third_abs_central;
  out.t2 = m2.third_abs_central;

  const double nd = static_cast<double>(n);
  const double qinv = qfunc_inv(epsilon);
  const double log_term = c * std::log(nd) / nd;
  out.r1 = m1.mean + std::sqrt(m1.variance / nd) * qinv + log_term;
  out.r2 = m2.mean + std::sqrt(m2.variance / nd) * qinv + log_term;

  auto eps_tilde = [&](const DensityMoments& m) {
    if (m.variance < 1e-15) return 0.0;  // constant density never exceeds
    const double shift = d * std::log(nd) / std::sqrt(nd * m.variance);
    return qfunc(qinv + shift) +
           m.third_abs_central / (std::pow(m.variance, 1.5) * std::sqrt(nd));
  };
  out.eps_tilde_1 = eps_tilde(m1);
  out.eps_tilde_2 = eps_tilde(m2);
  return out;
}

}  // namespace macres
