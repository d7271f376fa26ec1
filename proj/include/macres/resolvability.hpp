#pragma once

#include <cstdint>
#include <utility>

#include "macres/mac.hpp"

namespace macres {

/// Indexed family of length-n input words over one alphabet.
/// word count = round(exp(n * rate)), at least 1; reports work with the
/// realized rate log(count)/n.
struct Codebook {
  Alphabet alphabet;
  std::size_t n = 0;
  double nominal_rate = 0.0;
  std::vector<Word> words;

  Codebook(Alphabet alphabet_in, std::size_t n_in, double rate,
           std::vector<Word> words_in);

  std::size_t count() const { return words.size(); }
  double realized_rate() const;

  static std::size_t word_count_for(std::size_t n, double rate);
};

/// Draws the two codebooks i.i.d. per symbol from qx and qy. Deterministic
/// function of the seed.
std::pair<Codebook, Codebook> sample_codebooks(const FiniteDistribution& qx,
                                               const FiniteDistribution& qy,
                                               std::size_t n, double rate1,
                                               double rate2,
                                               std::uint64_t seed);

/// p(z^n) = (1/(M1 M2)) sum_{m1,m2} q(z^n | c1[m1], c2[m2]) over Z^n.
JointDistribution induced_output(const Mac& mac, const Codebook& c1,
                                 const Codebook& c2);

/// Variational distance between the codebook-induced output and the n-fold
/// product of qz.
double resolvability_gap(const Mac& mac, const Codebook& c1,
                         const Codebook& c2, const FiniteDistribution& qz);

/// Exact three-term decomposition of the gap: mass of the first atypical
/// set, mass of the second, and the typical excess term. The decomposition
/// upper-bounds the gap for any epsilon.
struct TypicalitySplit {
  double p_atyp1 = 0.0;
  double p_atyp2 = 0.0;
  double typical_excess = 0.0;
  double gap = 0.0;
  double epsilon = 0.0;

  double bound() const { return p_atyp1 + p_atyp2 + typical_excess; }
};

TypicalitySplit typicality_split(const Mac& mac, const FiniteDistribution& qx,
                                 const FiniteDistribution& qy,
                                 const Codebook& c1, const Codebook& c2,
                                 double epsilon);

/// Seeded gap statistics for one block length.
struct GapReport {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  double rate1 = 0.0, rate2 = 0.0;
  double realized_rate1 = 0.0, realized_rate2 = 0.0;
  double gamma1 = 0.0;
  double threshold = 0.0;  // exp(-gamma1 * n)
  std::vector<double> gaps;  // per trial, in trial order
  double exceedance_fraction = 0.0;
  double median = 0.0, q25 = 0.0, q75 = 0.0;
  double min = 0.0, max = 0.0;
};

/// Independently seeded codebook draws per (n, trial); the per-trial
/// stream depends only on (seed, n, trial), never on evaluation order.
std::vector<GapReport> concentration_experiment(
    const Mac& mac, const FiniteDistribution& qx, const FiniteDistribution& qy,
    double rate1, double rate2, std::span<const std::size_t> n_list,
    std::size_t trials, double gamma1, std::uint64_t seed);

/// Time-sharing parameter selection for rate pairs strictly inside the
/// three-inequality region but below both single-corner conditions.
struct TimeSharingSplit {
  enum class Kind { corner1_direct, corner2_direct, split };
  Kind kind = Kind::split;
  double lambda1 = 0.0, lambda2 = 0.0, lambda_hat = 0.0;
  double r1_at_hat = 0.0, r2_at_hat = 0.0;

  /// First sub-block length when a block of length n is split.
  std::size_t split_point(std::size_t n) const;
};

TimeSharingSplit time_sharing_split(const Mac& mac,
                                    const FiniteDistribution& qx,
                                    const FiniteDistribution& qy, double rate1,
                                    double rate2);

/// Rates as a function of n at one of the two corner points, with the
/// finite-n atypicality predictions eps_tilde.
struct SecondOrderSchedule {
  std::size_t n = 0;
  double epsilon = 0.0, c = 0.0, d = 0.0;
  int corner = 1;  // 1 or 2
  double r1 = 0.0, r2 = 0.0;
  double eps_tilde_1 = 0.0, eps_tilde_2 = 0.0;
  double i1 = 0.0, i2 = 0.0;  // first-order terms
  double v1 = 0.0, v2 = 0.0;  // dispersions
  double t1 = 0.0, t2 = 0.0;  // absolute third central moments
};

SecondOrderSchedule second_order_schedule(const Mac& mac,
                                          const FiniteDistribution& qx,
                                          const FiniteDistribution& qy,
                                          double epsilon, double c, double d,
                                          std::size_t n, int corner);

}  // namespace macres
