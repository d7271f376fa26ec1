#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>

#include "macres/rate_region.hpp"

namespace macres {

/// Codebook indexed by (message, local randomness): word(m, l) is the
/// transmitted block for message m when the transmitter draws l.
struct WiretapCodebook {
  Alphabet alphabet;
  std::size_t n = 0;
  double info_rate = 0.0;
  double rand_rate = 0.0;
  std::size_t message_count = 0;
  std::size_t rand_count = 0;
  std::vector<Word> words;  // index m * rand_count + l

  WiretapCodebook(Alphabet alphabet_in, std::size_t n_in, double info_rate_in,
                  double rand_rate_in, std::size_t message_count_in,
                  std::size_t rand_count_in, std::vector<Word> words_in);

  const Word& word(std::size_t m, std::size_t l) const {
    return words[m * rand_count + l];
  }
  double realized_info_rate() const;
  double realized_rand_rate() const;
};

std::pair<WiretapCodebook, WiretapCodebook> sample_wiretap_codebooks(
    const FiniteDistribution& qx, const FiniteDistribution& qy, std::size_t n,
    double rate1, double rand_rate1, double rate2, double rand_rate2,
    std::uint64_t seed);

/// Wiretapper's output distribution for fixed messages, averaged over the
/// local randomness indices. Flat vector over tap-Z^n (row-major).
std::vector<double> tap_output_vector(const WiretapMac& wmac,
                                      const WiretapCodebook& c1,
                                      const WiretapCodebook& c2,
                                      std::size_t m1, std::size_t m2);

JointDistribution tap_output_distribution(const WiretapMac& wmac,
                                          const WiretapCodebook& c1,
                                          const WiretapCodebook& c2,
                                          std::size_t m1, std::size_t m2);

/// Joint typicality decoder over the legitimate channel: a tuple qualifies
/// when all three block information densities reach n(I - epsilon); the
/// decoder returns the unique qualifying (m1, l1, m2, l2) and falls back to
/// (0,0,0,0) when none or several qualify.
class JointTypicalityDecoder {
 public:
  JointTypicalityDecoder(const Mac& legit, const FiniteDistribution& qx,
                         const FiniteDistribution& qy, double epsilon);
  ~JointTypicalityDecoder();
  JointTypicalityDecoder(JointTypicalityDecoder&&) noexcept;

  std::array<std::size_t, 4> decode(const WiretapCodebook& c1,
                                    const WiretapCodebook& c2,
                                    const Word& zword) const;

  double epsilon() const { return epsilon_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  double epsilon_;
};

enum class ErrorMode { exact, monte_carlo };

struct ErrorEstimate {
  double value = 0.0;
  double half_width = 0.0;  // 95% normal CI half width (monte_carlo only)
  bool exact = true;
};

/// Average probability that the decoder misses the transmitted
/// (m1, l1, m2, l2) tuple, uniform over tuples and channel noise.
ErrorEstimate average_error(const Mac& legit, const FiniteDistribution& qx,
                            const FiniteDistribution& qy,
                            const WiretapCodebook& c1,
                            const WiretapCodebook& c2, double epsilon,
                            ErrorMode mode, std::size_t trials,
                            std::uint64_t seed);

/// Max over message pairs of the variational distance between tap output
/// distributions (exact enumeration).
double distinguishing_security_gap(const WiretapMac& wmac,
                                   const WiretapCodebook& c1,
                                   const WiretapCodebook& c2);

struct SsSearchConfig {
  std::size_t simplex_steps = 16;  // prior grid for |M| <= 4
  bool include_subset_priors = true;
};

/// Best adversary advantage found over all message-set partitions, the
/// configured prior family, the pointwise posterior-argmax decoder and the
/// prior-argmax guess. A lower bound on the supremum, with certificate.
struct SsCertificate {
  double advantage = 0.0;
  std::vector<std::vector<std::size_t>> partition;  // blocks of flat indices
  std::vector<double> prior;
  std::size_t guess_block = 0;
};

SsCertificate semantic_security_advantage(const WiretapMac& wmac,
                                          const WiretapCodebook& c1,
                                          const WiretapCodebook& c2,
                                          const SsSearchConfig& config = {});

/// Error pair of the two-sided identification attack for a supplied binary
/// decoder (decoder(z) == true means "guess message m"). delta is the best
/// advantage for the partition {{m}, rest} under the uniform two-point
/// prior on {m, m_hat}; E1 + E2 >= 1 - 2 delta must hold.
struct IdCheck {
  double e1 = 0.0, e2 = 0.0;
  double delta = 0.0;
  double slack = 0.0;  // e1 + e2 - (1 - 2 delta)
  bool passed = false;
};

IdCheck identification_attack_check(
    const WiretapMac& wmac, const WiretapCodebook& c1,
    const WiretapCodebook& c2, std::size_t m_flat, std::size_t m_hat_flat,
    const std::function<bool(std::size_t)>& decoder_says_m);

/// The six conditional mutual informations the randomness-rate selection
/// needs, in nats.
struct WiretapRateQuantities {
  double tap_x = 0.0;            // I(X; Ztap | V)
  double tap_y = 0.0;            // I(Y; Ztap | V)
  double tap_xy = 0.0;           // I(X,Y; Ztap | V)
  double legit_x_given_y = 0.0;  // I(X; Zlegit | Y, V)
  double legit_y_given_x = 0.0;  // I(Y; Zlegit | X, V)
  double legit_xy = 0.0;         // I(X,Y; Zlegit | V)
};

/// Constant auxiliary (no time sharing).
WiretapRateQuantities wiretap_quantities(const WiretapMac& wmac,
                                         const FiniteDistribution& qx,
                                         const FiniteDistribution& qy);

/// Mixture-averaged over a region witness's per-v input pairs.
WiretapRateQuantities wiretap_quantities(const WiretapMac& wmac,
                                         const RegionWitness& witness);

/// Midpoint selection inside the two nested admissible intervals. Raises
/// with a diagnostic naming every violated rate condition when an interval
/// is empty. The three sandwich chains are asserted on return.
struct RandomnessRates {
  double l1 = 0.0, l2 = 0.0;
  double l1_lo = 0.0, l1_hi = 0.0;
  double l2_lo = 0.0, l2_hi = 0.0;
};

RandomnessRates choose_randomness_rates(const WiretapRateQuantities& q,
                                        double rate1, double rate2);

/// Seeded end-to-end secrecy statistics for one block length.
struct SecurityReport {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  double rate1 = 0.0, rate2 = 0.0;
  double l1 = 0.0, l2 = 0.0;
  double epsilon = 0.0;
  double gamma1 = 0.0;
  double ds_threshold = 0.0;   // exp(-gamma1 n)
  double err_threshold = 0.0;  // exp(-gamma1 n)
  std::vector<double> ds_gaps;
  std::vector<double> decode_errors;
  double ds_bad_fraction = 0.0;
  double err_bad_fraction = 0.0;
  double ds_median = 0.0;
  double err_median = 0.0;
  bool ds_exact = true;
  bool err_exact = true;
};

/// epsilon <= 0 selects the default (half the minimum decoding-rate
/// margin); mc_samples drives the Monte Carlo fallbacks past the exact
/// enumeration budget.
std::vector<SecurityReport> secrecy_experiment(
    const WiretapMac& wmac, const FiniteDistribution& qx,
    const FiniteDistribution& qy, double rate1, double rate2,
    std::span<const std::size_t> n_list, std::size_t trials, double epsilon,
    double gamma1, std::uint64_t seed, std::size_t mc_samples = 1000);

}  // namespace macres
