#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>

namespace macres {

// SplitMix64 step; used both as a stream generator seed scrambler and to
// derive independent per-trial streams from (master seed, path indices).
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Derives a stream seed from a master seed and a path of indices
/// (e.g. {block length, trial}). The derivation is a keyed hash chain, so
/// streams are independent of evaluation order and of each other.
inline std::uint64_t derive_seed(std::uint64_t master,
                                 std::initializer_list<std::uint64_t> path) {
  std::uint64_t s = master ^ 0x6a09e667f3bcc909ULL;
  (void)splitmix64(s);
  for (std::uint64_t p : path) {
    s ^= p + 0x9e3779b97f4a7c15ULL;
    (void)splitmix64(s);
  }
  return splitmix64(s);
}

/// Deterministic random stream. Doubles are produced from the top 53 bits
/// of the underlying mt19937_64 output, so sequences are identical across
/// standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  /// Samples an index from a weight vector (weights sum to ~1).
  std::size_t sample(std::span<const double> weights) {
    const double u = uniform();
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      acc += weights[i];
      if (u < acc) return i;
    }
    return weights.size() - 1;
  }

  std::uint64_t bits() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace macres
