#include "macres/wiretap.hpp"

#include <algorithm>
#include <cmath>

#include "block_support.hpp"
#include "macres/rng.hpp"

namespace macres {

using detail::kTypicalityEps;

WiretapCodebook::WiretapCodebook(Alphabet alphabet_in, std::size_t n_in,
                                 double info_rate_in, double rand_rate_in,
                                 std::size_t message_count_in,
                                 std::size_t rand_count_in,
                                 std::vector<Word> words_in)
    : alphabet(std::move(alphabet_in)),
      n(n_in),
      info_rate(info_rate_in),
      rand_rate(rand_rate_in),
      message_count(message_count_in),
      rand_count(rand_count_in),
      words(std::move(words_in)) {
  if (n == 0) throw Error("WiretapCodebook: block length must be positive");
  if (message_count == 0 || rand_count == 0) {
    throw Error("WiretapCodebook: empty index set");
  }
  if (words.size() != message_count * rand_count) {
    throw Error("WiretapCodebook: word table size mismatch");
  }
  for (const Word& w : words) {
    if (w.size() != n) throw Error("WiretapCodebook: codeword length mismatch");
    for (std::size_t s : w) {
      if (s >= alphabet.size()) {
        throw Error("WiretapCodebook: symbol out of range");
      }
    }
  }
}

double WiretapCodebook::realized_info_rate() const {
  return std::log(static_cast<double>(message_count)) / static_cast<double>(n);
}

double WiretapCodebook::realized_rand_rate() const {
  return std::log(static_cast<double>(rand_count)) / static_cast<double>(n);
}

namespace {

WiretapCodebook sample_one(const FiniteDistribution& q, std::size_t n,
                           double info_rate, double rand_rate, Rng& rng) {
  const std::size_t messages = Codebook::word_count_for(n, info_rate);
  const std::size_t rands = Codebook::word_count_for(n, rand_rate);
  if (messages > enumeration_budget() / rands) {
    throw BudgetError("sample_wiretap_codebooks: word table exceeds budget");
  }
  std::vector<Word> words(messages * rands, Word(n));
  for (auto& w : words) {
    for (std::size_t k = 0; k < n; ++k) w[k] = rng.sample(q.weights());
  }
  return WiretapCodebook(q.labels(), n, info_rate, rand_rate, messages, rands,
                         std::move(words));
}

}  // namespace

std::pair<WiretapCodebook, WiretapCodebook> sample_wiretap_codebooks(
    const FiniteDistribution& qx, const FiniteDistribution& qy, std::size_t n,
    double rate1, double rand_rate1, double rate2, double rand_rate2,
    std::uint64_t seed) {
  Rng rng1(derive_seed(seed, {1}));
  Rng rng2(derive_seed(seed, {2}));
  WiretapCodebook c1 = sample_one(qx, n, rate1, rand_rate1, rng1);
  WiretapCodebook c2 = sample_one(qy, n, rate2, rand_rate2, rng2);
  return {std::move(c1), std::move(c2)};
}

std::vector<double> tap_output_vector(const WiretapMac& wmac,
                                      const WiretapCodebook& c1,
                                      const WiretapCodebook& c2,
                                      std::size_t m1, std::size_t m2) {
  if (c1.n != c2.n) throw Error("tap_output_vector: block length mismatch");
  if (m1 >= c1.message_count || m2 >= c2.message_count) {
    throw Error("tap_output_vector: message index out of range");
  }
  const std::size_t total = checked_pow(wmac.tap.nz(), c1.n);
  std::vector<double> acc(total, 0.0);
  const double weight = 1.0 / (static_cast<double>(c1.rand_count) *
                               static_cast<double>(c2.rand_count));
  for (std::size_t l1 = 0; l1 < c1.rand_count; ++l1) {
    for (std::size_t l2 = 0; l2 < c2.rand_count; ++l2) {
      detail::add_block_conditional(wmac.tap, c1.word(m1, l1), c2.word(m2, l2),
                                    weight, acc);
    }
  }
  return acc;
}

JointDistribution tap_output_distribution(const WiretapMac& wmac,
                                          const WiretapCodebook& c1,
                                          const WiretapCodebook& c2,
                                          std::size_t m1, std::size_t m2) {
  std::vector<double> acc = tap_output_vector(wmac, c1, c2, m1, m2);
  return JointDistribution(
      std::vector<Alphabet>(c1.n, wmac.tap.z_alphabet()), std::move(acc),
      1e-10);
}

struct JointTypicalityDecoder::Impl {
  detail::DensityTables tables;
  Impl(const Mac& legit, const FiniteDistribution& qx,
       const FiniteDistribution& qy)
      : tables(legit, qx, qy) {}
};

JointTypicalityDecoder::JointTypicalityDecoder(const Mac& legit,
                                               const FiniteDistribution& qx,
                                               const FiniteDistribution& qy,
                                               double epsilon)
    : impl_(std::make_unique<Impl>(legit, qx, qy)), epsilon_(epsilon) {
  if (!(epsilon > 0.0)) {
    throw Error("JointTypicalityDecoder: epsilon must be positive");
  }
}

JointTypicalityDecoder::~JointTypicalityDecoder() = default;
JointTypicalityDecoder::JointTypicalityDecoder(JointTypicalityDecoder&&) noexcept =
    default;

std::array<std::size_t, 4> JointTypicalityDecoder::decode(
    const WiretapCodebook& c1, const WiretapCodebook& c2,
    const Word& zword) const {
  const auto& t = impl_->tables;
  const std::size_t n = zword.size();
  if (c1.n != n || c2.n != n) {
    throw Error("JointTypicalityDecoder: block length mismatch");
  }
  const double nd = static_cast<double>(n);
  const double thr1 =
      nd * (t.summary.i_x_z_given_y - epsilon_) - kTypicalityEps;
  const double thr2 =
      nd * (t.summary.i_y_z_given_x - epsilon_) - kTypicalityEps;
  const double thr3 = nd * (t.summary.i_xy_z - epsilon_) - kTypicalityEps;
  const std::size_t nz = t.nz;
  const std::size_t ny = t.ny;

  std::array<std::size_t, 4> found{0, 0, 0, 0};
  std::size_t hits = 0;
  for (std::size_t m1 = 0; m1 < c1.message_count && hits < 2; ++m1) {
    for (std::size_t l1 = 0; l1 < c1.rand_count && hits < 2; ++l1) {
      const Word& xw = c1.word(m1, l1);
      for (std::size_t m2 = 0; m2 < c2.message_count && hits < 2; ++m2) {
        for (std::size_t l2 = 0; l2 < c2.rand_count && hits < 2; ++l2) {
          const Word& yw = c2.word(m2, l2);
          double d1 = 0.0, d2 = 0.0, d3 = 0.0;
          for (std::size_t k = 0; k < n; ++k) {
            const std::size_t i = (xw[k] * ny + yw[k]) * nz + zword[k];
            d1 += t.d_x_cond_y[i];
            d2 += t.d_y_cond_x[i];
            d3 += t.d_xy[i];
          }
          if (d1 >= thr1 && d2 >= thr2 && d3 >= thr3) {
            found = {m1, l1, m2, l2};
            ++hits;
          }
        }
      }
    }
  }
  if (hits != 1) return {0, 0, 0, 0};
  return found;
}

namespace {

std::size_t tuple_count(const WiretapCodebook& c1, const WiretapCodebook& c2) {
  return c1.message_count * c1.rand_count * c2.message_count * c2.rand_count;
}

void check_exact_budget(std::size_t alphabet_pow, std::size_t tuples,
                        const char* what) {
  if (alphabet_pow > enumeration_budget() / std::max<std::size_t>(tuples, 1)) {
    throw BudgetError(std::string(what) +
                      ": exact enumeration exceeds the budget; use the Monte "
                      "Carlo path");
  }
}

}  // namespace

ErrorEstimate average_error(const Mac& legit, const FiniteDistribution& qx,
                            const FiniteDistribution& qy,
                            const WiretapCodebook& c1,
                            const WiretapCodebook& c2, double epsilon,
                            ErrorMode mode, std::size_t trials,
                            std::uint64_t seed) {
  const JointTypicalityDecoder decoder(legit, qx, qy, epsilon);
  const std::size_t n = c1.n;
  ErrorEstimate est;
  if (mode == ErrorMode::exact) {
    const std::size_t total = checked_pow(legit.nz(), n);
    check_exact_budget(total, tuple_count(c1, c2), "average_error");
    // E = 1 - (1/T) sum_z q(z | decoded tuple's words)
    double correct_mass = 0.0;
    Word zword(n);
    for (std::size_t flat = 0; flat < total; ++flat) {
      std::size_t rest = flat;
      for (std::size_t k = n; k-- > 0;) {
        zword[k] = rest % legit.nz();
        rest /= legit.nz();
      }
      const auto [m1, l1, m2, l2] = decoder.decode(c1, c2, zword);
      correct_mass +=
          block_likelihood(legit, c1.word(m1, l1), c2.word(m2, l2), zword);
    }
    est.value = 1.0 - correct_mass / static_cast<double>(tuple_count(c1, c2));
    est.exact = true;
    return est;
  }
  if (trials == 0) throw Error("average_error: trials must be positive");
  Rng rng(derive_seed(seed, {0x4d43ULL}));
  std::size_t errors = 0;
  Word zword(n);
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t m1 = static_cast<std::size_t>(rng.uniform() *
                                                    c1.message_count) %
                           c1.message_count;
    const std::size_t l1 =
        static_cast<std::size_t>(rng.uniform() * c1.rand_count) % c1.rand_count;
    const std::size_t m2 = static_cast<std::size_t>(rng.uniform() *
                                                    c2.message_count) %
                           c2.message_count;
    const std::size_t l2 =
        static_cast<std::size_t>(rng.uniform() * c2.rand_count) % c2.rand_count;
    const Word& xw = c1.word(m1, l1);
    const Word& yw = c2.word(m2, l2);
    for (std::size_t k = 0; k < n; ++k) {
      zword[k] = rng.sample(legit.row(xw[k], yw[k]));
    }
    const auto decoded = decoder.decode(c1, c2, zword);
    if (decoded != std::array<std::size_t, 4>{m1, l1, m2, l2}) ++errors;
  }
  const double p = static_cast<double>(errors) / static_cast<double>(trials);
  est.value = p;
  est.half_width = 1.96 * std::sqrt(std::max(p * (1.0 - p), 0.0) /
                                    static_cast<double>(trials));
  est.exact = false;
  return est;
}

double distinguishing_security_gap(const WiretapMac& wmac,
                                   const WiretapCodebook& c1,
                                   const WiretapCodebook& c2) {
  const std::size_t total = checked_pow(wmac.tap.nz(), c1.n);
  check_exact_budget(total, tuple_count(c1, c2), "distinguishing_security_gap");
  std::vector<std::vector<double>> outs;
  outs.reserve(c1.message_count * c2.message_count);
  for (std::size_t m1 = 0; m1 < c1.message_count; ++m1) {
    for (std::size_t m2 = 0; m2 < c2.message_count; ++m2) {
      outs.push_back(tap_output_vector(wmac, c1, c2, m1, m2));
    }
  }
  double gap = 0.0;
  for (std::size_t i = 0; i < outs.size(); ++i) {
    for (std::size_t j = i + 1; j < outs.size(); ++j) {
      gap = std::max(gap, variational_distance(outs[i], outs[j]));
    }
  }
  return gap;
}

namespace {

// All set partitions of {0..k-1} as restricted growth strings.
void enumerate_partitions(
    std::size_t k,
    const std::function<void(const std::vector<std::vector<std::size_t>>&)>&
        f) {
  std::vector<std::size_t> assign(k, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i,
                                                          std::size_t blocks) {
    if (i == k) {
      std::vector<std::vector<std::size_t>> parts(blocks);
      for (std::size_t e = 0; e < k; ++e) parts[assign[e]].push_back(e);
      f(parts);
      return;
    }
    for (std::size_t b = 0; b <= blocks; ++b) {
      assign[i] = b;
      rec(i + 1, std::max(blocks, b + 1));
    }
  };
  rec(0, 0);
}

void enumerate_priors(std::size_t k, const SsSearchConfig& cfg,
                      const std::function<void(const std::vector<double>&)>& f) {
  if (cfg.include_subset_priors) {
    for (std::size_t mask = 1; mask < (1ULL << k); ++mask) {
      std::vector<double> prior(k, 0.0);
      const double w = 1.0 / static_cast<double>(__builtin_popcountll(mask));
      for (std::size_t e = 0; e < k; ++e) {
        if (mask & (1ULL << e)) prior[e] = w;
      }
      f(prior);
    }
  }
  if (k <= 4 && cfg.simplex_steps > 0) {
    const std::size_t s = cfg.simplex_steps;
    std::vector<std::size_t> cells(k, 0);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i,
                                                            std::size_t left) {
      if (i + 1 == k) {
        cells[i] = left;
        std::vector<double> prior(k);
        for (std::size_t e = 0; e < k; ++e) {
          prior[e] = static_cast<double>(cells[e]) / static_cast<double>(s);
        }
        f(prior);
        return;
      }
      for (std::size_t c = 0; c <= left; ++c) {
        cells[i] = c;
        rec(i + 1, left - c);
      }
    };
    rec(0, s);
  }
}

double partition_prior_advantage(
    const std::vector<std::vector<double>>& tap_by_message,
    const std::vector<std::vector<std::size_t>>& partition,
    const std::vector<double>& prior, std::size_t* guess_block) {
  const std::size_t zn = tap_by_message.front().size();
  // best blind guess
  double guess = -1.0;
  std::size_t guess_idx = 0;
  for (std::size_t b = 0; b < partition.size(); ++b) {
    double mass = 0.0;
    for (std::size_t m : partition[b]) mass += prior[m];
    if (mass > guess + 1e-15) {
      guess = mass;
      guess_idx = b;
    }
  }
  // optimal decoder: per output word, the block with largest joint mass
  double hit = 0.0;
  for (std::size_t z = 0; z < zn; ++z) {
    double best = 0.0;
    for (const auto& block : partition) {
      double mass = 0.0;
      for (std::size_t m : block) {
        mass += prior[m] * tap_by_message[m][z];
      }
      best = std::max(best, mass);
    }
    hit += best;
  }
  if (guess_block) *guess_block = guess_idx;
  return hit - guess;
}

}  // namespace

SsCertificate semantic_security_advantage(const WiretapMac& wmac,
                                          const WiretapCodebook& c1,
                                          const WiretapCodebook& c2,
                                          const SsSearchConfig& config) {
  const std::size_t k = c1.message_count * c2.message_count;
  if (k > 5) {
    throw Error("semantic_security_advantage: message set too large for "
                "partition enumeration (|M| <= 5)");
  }
  std::vector<std::vector<double>> tap_by_message;
  tap_by_message.reserve(k);
  for (std::size_t m1 = 0; m1 < c1.message_count; ++m1) {
    for (std::size_t m2 = 0; m2 < c2.message_count; ++m2) {
      tap_by_message.push_back(tap_output_vector(wmac, c1, c2, m1, m2));
    }
  }
  SsCertificate best;
  best.advantage = 0.0;
  enumerate_partitions(k, [&](const std::vector<std::vector<std::size_t>>& parts) {
    enumerate_priors(k, config, [&](const std::vector<double>& prior) {
      std::size_t guess = 0;
      const double adv =
          partition_prior_advantage(tap_by_message, parts, prior, &guess);
      if (adv > best.advantage) {
        best.advantage = adv;
        best.partition = parts;
        best.prior = prior;
        best.guess_block = guess;
      }
    });
  });
  return best;
}

IdCheck identification_attack_check(
    const WiretapMac& wmac, const WiretapCodebook& c1,
    const WiretapCodebook& c2, std::size_t m_flat, std::size_t m_hat_flat,
    const std::function<bool(std::size_t)>& decoder_says_m) {
  const std::size_t k = c1.message_count * c2.message_count;
  if (m_flat >= k || m_hat_flat >= k || m_flat == m_hat_flat) {
    throw Error("identification_attack_check: bad message pair");
  }
  const auto split = [&](std::size_t flat) {
    return std::pair<std::size_t, std::size_t>{flat / c2.message_count,
                                               flat % c2.message_count};
  };
  const auto [a1, a2] = split(m_flat);
  const auto [b1, b2] = split(m_hat_flat);
  const std::vector<double> tap_m = tap_output_vector(wmac, c1, c2, a1, a2);
  const std::vector<double> tap_hat = tap_output_vector(wmac, c1, c2, b1, b2);

  IdCheck r;
  for (std::size_t z = 0; z < tap_m.size(); ++z) {
    if (!decoder_says_m(z)) r.e1 += tap_m[z];
    if (decoder_says_m(z)) r.e2 += tap_hat[z];
  }
  // best advantage for partition {{m}, rest} under the uniform two-point
  // prior: the optimal decoder picks the larger posterior mass pointwise
  double hit = 0.0;
  for (std::size_t z = 0; z < tap_m.size(); ++z) {
    hit += std::max(0.5 * tap_m[z], 0.5 * tap_hat[z]);
  }
  r.delta = hit - 0.5;
  r.slack = r.e1 + r.e2 - (1.0 - 2.0 * r.delta);
  r.passed = r.slack >= -1e-12;
  return r;
}

namespace {

WiretapRateQuantities quantities_for_inputs(const WiretapMac& wmac,
                                            const FiniteDistribution& qx,
                                            const FiniteDistribution& qy) {
  const ChannelSummary tap = channel_summary(wmac.tap, qx, qy);
  const ChannelSummary legit = channel_summary(wmac.legit, qx, qy);
  WiretapRateQuantities q;
  q.tap_x = tap.i_x_z;
  q.tap_y = tap.i_y_z;
  q.tap_xy = tap.i_xy_z;
  q.legit_x_given_y = legit.i_x_z_given_y;
  q.legit_y_given_x = legit.i_y_z_given_x;
  q.legit_xy = legit.i_xy_z;
  return q;
}

}  // namespace

WiretapRateQuantities wiretap_quantities(const WiretapMac& wmac,
                                         const FiniteDistribution& qx,
                                         const FiniteDistribution& qy) {
  return quantities_for_inputs(wmac, qx, qy);
}

WiretapRateQuantities wiretap_quantities(const WiretapMac& wmac,
                                         const RegionWitness& witness) {
  WiretapRateQuantities q;
  for (std::size_t v = 0; v < witness.p_v.size(); ++v) {
    if (witness.p_v[v] <= 0.0) continue;
    const FiniteDistribution qx(wmac.legit.x_alphabet(),
                                witness.qx_given_v[v]);
    const FiniteDistribution qy(wmac.legit.y_alphabet(),
                                witness.qy_given_v[v]);
    const WiretapRateQuantities qv = quantities_for_inputs(wmac, qx, qy);
    const double w = witness.p_v[v];
    q.tap_x += w * qv.tap_x;
    q.tap_y += w * qv.tap_y;
    q.tap_xy += w * qv.tap_xy;
    q.legit_x_given_y += w * qv.legit_x_given_y;
    q.legit_y_given_x += w * qv.legit_y_given_x;
    q.legit_xy += w * qv.legit_xy;
  }
  return q;
}

RandomnessRates choose_randomness_rates(const WiretapRateQuantities& q,
                                        double rate1, double rate2) {
  if (rate1 < 0.0 || rate2 < 0.0) {
    throw Error("choose_randomness_rates: rates must be nonnegative");
  }
  auto diagnose = [&]() {
    std::string msg;
    if (!(q.tap_x < q.legit_x_given_y - rate1)) {
      msg += " I(X;Ztap|V) < I(X;Zlegit|Y,V) - R1 fails;";
    }
    if (!(q.tap_y < q.legit_y_given_x - rate2)) {
      msg += " I(Y;Ztap|V) < I(Y;Zlegit|X,V) - R2 fails;";
    }
    if (!(q.tap_xy < q.legit_xy - (rate1 + rate2))) {
      msg += " I(X,Y;Ztap|V) < I(X,Y;Zlegit|V) - R1 - R2 fails;";
    }
    if (msg.empty()) msg = " (numerically empty interval)";
    return msg;
  };

  RandomnessRates r;
  const double a1 = q.tap_x;
  const double a2 = -q.legit_y_given_x + rate2 + q.tap_xy;
  const double b1 = q.legit_x_given_y - rate1;
  const double b2 = -q.tap_y + q.legit_xy - (rate1 + rate2);
  r.l1_lo = std::max(a1, a2);
  r.l1_hi = std::min(b1, b2);
  if (!(r.l1_lo < r.l1_hi)) {
    throw Error("choose_randomness_rates: empty interval for L1:" + diagnose());
  }
  r.l1 = 0.5 * (r.l1_lo + r.l1_hi);

  const double c1 = q.tap_xy - r.l1;
  const double c2 = q.tap_y;
  const double d1 = q.legit_y_given_x - rate2;
  const double d2 = q.legit_xy - r.l1 - (rate1 + rate2);
  r.l2_lo = std::max(c1, c2);
  r.l2_hi = std::min(d1, d2);
  if (!(r.l2_lo < r.l2_hi)) {
    throw Error("choose_randomness_rates: empty interval for L2:" + diagnose());
  }
  r.l2 = 0.5 * (r.l2_lo + r.l2_hi);

  const bool chain1 = q.tap_x < r.l1 && r.l1 < q.legit_x_given_y - rate1;
  const bool chain2 = q.tap_y < r.l2 && r.l2 < q.legit_y_given_x - rate2;
  const bool chain3 = q.tap_xy < r.l1 + r.l2 &&
                      r.l1 + r.l2 < q.legit_xy - (rate1 + rate2);
  if (!chain1 || !chain2 || !chain3) {
    throw Error("choose_randomness_rates: sandwich chains failed to verify");
  }
  return r;
}

namespace {

double tap_point_prob(const WiretapMac& wmac, const WiretapCodebook& c1,
                      const WiretapCodebook& c2, std::size_t m1,
                      std::size_t m2, const Word& z) {
  double sum = 0.0;
  for (std::size_t l1 = 0; l1 < c1.rand_count; ++l1) {
    for (std::size_t l2 = 0; l2 < c2.rand_count; ++l2) {
      sum += block_likelihood(wmac.tap, c1.word(m1, l1), c2.word(m2, l2), z);
    }
  }
  return sum / (static_cast<double>(c1.rand_count) *
                static_cast<double>(c2.rand_count));
}

// tvd(p_i, p_j) = E_{z ~ p_i} (1 - p_j(z)/p_i(z))^+ ; the sampled z always
// has p_i(z) > 0. Returns the max estimate over ordered message pairs.
double monte_carlo_ds_gap(const WiretapMac& wmac, const WiretapCodebook& c1,
                          const WiretapCodebook& c2, std::size_t samples,
                          std::uint64_t seed) {
  if (samples == 0) throw Error("monte_carlo_ds_gap: samples must be > 0");
  Rng rng(seed);
  const std::size_t n = c1.n;
  Word z(n);
  double gap = 0.0;
  for (std::size_t i1 = 0; i1 < c1.message_count; ++i1) {
    for (std::size_t i2 = 0; i2 < c2.message_count; ++i2) {
      for (std::size_t j1 = 0; j1 < c1.message_count; ++j1) {
        for (std::size_t j2 = 0; j2 < c2.message_count; ++j2) {
          if (i1 == j1 && i2 == j2) continue;
          double acc = 0.0;
          for (std::size_t s = 0; s < samples; ++s) {
            const std::size_t l1 =
                static_cast<std::size_t>(rng.uniform() * c1.rand_count) %
                c1.rand_count;
            const std::size_t l2 =
                static_cast<std::size_t>(rng.uniform() * c2.rand_count) %
                c2.rand_count;
            const Word& xw = c1.word(i1, l1);
            const Word& yw = c2.word(i2, l2);
            for (std::size_t k = 0; k < n; ++k) {
              z[k] = rng.sample(wmac.tap.row(xw[k], yw[k]));
            }
            const double pi = tap_point_prob(wmac, c1, c2, i1, i2, z);
            const double pj = tap_point_prob(wmac, c1, c2, j1, j2, z);
            acc += std::max(1.0 - pj / pi, 0.0);
          }
          gap = std::max(gap, acc / static_cast<double>(samples));
        }
      }
    }
  }
  return gap;
}

}  // namespace

std::vector<SecurityReport> secrecy_experiment(
    const WiretapMac& wmac, const FiniteDistribution& qx,
    const FiniteDistribution& qy, double rate1, double rate2,
    std::span<const std::size_t> n_list, std::size_t trials, double epsilon,
    double gamma1, std::uint64_t seed, std::size_t mc_samples) {
  if (trials == 0) throw Error("secrecy_experiment: trials must be > 0");
  const WiretapRateQuantities q = wiretap_quantities(wmac, qx, qy);
  const RandomnessRates rr = choose_randomness_rates(q, rate1, rate2);
  double eps = epsilon;
  if (!(eps > 0.0)) {
    const double margin1 = q.legit_x_given_y - (rate1 + rr.l1);
    const double margin2 = q.legit_y_given_x - (rate2 + rr.l2);
    const double margin3 = q.legit_xy - (rate1 + rr.l1 + rate2 + rr.l2);
    eps = 0.5 * std::min({margin1, margin2, margin3});
    if (!(eps > 0.0)) {
      throw Error("secrecy_experiment: decoding margins are not positive");
    }
  }

  std::vector<SecurityReport> reports;
  for (std::size_t n : n_list) {
    SecurityReport rep;
    rep.n = n;
    rep.seed = seed;
    rep.rate1 = rate1;
    rep.rate2 = rate2;
    rep.l1 = rr.l1;
    rep.l2 = rr.l2;
    rep.epsilon = eps;
    rep.gamma1 = gamma1;
    rep.ds_threshold = std::exp(-gamma1 * static_cast<double>(n));
    rep.err_threshold = rep.ds_threshold;
    rep.ds_gaps.resize(trials);
    rep.decode_errors.resize(trials);
    for (std::size_t t = 0; t < trials; ++t) {
      const std::uint64_t trial_seed = derive_seed(seed, {n, t});
      auto [c1, c2] = sample_wiretap_codebooks(qx, qy, n, rate1, rr.l1, rate2,
                                               rr.l2, trial_seed);
      // distinguishing security gap
      bool exact_ds = true;
      try {
        rep.ds_gaps[t] = distinguishing_security_gap(wmac, c1, c2);
      } catch (const BudgetError&) {
        exact_ds = false;
        rep.ds_gaps[t] = monte_carlo_ds_gap(wmac, c1, c2, mc_samples,
                                            derive_seed(trial_seed, {7}));
      }
      rep.ds_exact = rep.ds_exact && exact_ds;
      // decoding error
      const double pow_legit = std::pow(static_cast<double>(wmac.legit.nz()),
                                        static_cast<double>(n));
      const double tuples =
          static_cast<double>(c1.message_count) * c1.rand_count *
          c2.message_count * c2.rand_count;
      const bool exact_err =
          pow_legit * tuples <= static_cast<double>(enumeration_budget());
      const ErrorEstimate ee = average_error(
          wmac.legit, qx, qy, c1, c2, eps,
          exact_err ? ErrorMode::exact : ErrorMode::monte_carlo, mc_samples,
          derive_seed(trial_seed, {9}));
      rep.decode_errors[t] = ee.value;
      rep.err_exact = rep.err_exact && ee.exact;
    }
    auto median_of = [](std::vector<double> v) {
      std::sort(v.begin(), v.end());
      const std::size_t k = v.size();
      return k % 2 == 1 ? v[k / 2] : 0.5 * (v[k / 2 - 1] + v[k / 2]);
    };
    rep.ds_median = median_of(rep.ds_gaps);
    rep.err_median = median_of(rep.decode_errors);
    std::size_t ds_bad = 0, err_bad = 0;
    for (std::size_t t = 0; t < trials; ++t) {
      if (rep.ds_gaps[t] > rep.ds_threshold) ++ds_bad;
      if (rep.decode_errors[t] > rep.err_threshold) ++err_bad;
    }
    rep.ds_bad_fraction = static_cast<double>(ds_bad) / trials;
    rep.err_bad_fraction = static_cast<double>(err_bad) / trials;
    reports.push_back(std::move(rep));
  }
  return reports;
}

}  // namespace macres
