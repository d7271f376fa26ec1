#pragma once

#include <filesystem>
#include <span>
#include <variant>
#include <vector>

#include "macres/prob.hpp"

namespace macres {

using Word = std::vector<std::size_t>;

/// Discrete memoryless multiple-access channel: finite input alphabets X
/// and Y, output alphabet Z, and a transition kernel q(z|x,y).
/// Each (x,y) row must sum to 1 within 1e-9; rows inside that tolerance
/// are rescaled exactly to mass 1 (the correction is logged).
class Mac {
 public:
  Mac(std::string name, Alphabet x_alphabet, Alphabet y_alphabet,
      Alphabet z_alphabet, std::vector<double> transition /* [x][y][z] */);

  const std::string& name() const { return name_; }
  const Alphabet& x_alphabet() const { return x_; }
  const Alphabet& y_alphabet() const { return y_; }
  const Alphabet& z_alphabet() const { return z_; }
  std::size_t nx() const { return x_.size(); }
  std::size_t ny() const { return y_.size(); }
  std::size_t nz() const { return z_.size(); }

  double q(std::size_t x, std::size_t y, std::size_t z) const {
    return t_[(x * y_.size() + y) * z_.size() + z];
  }
  std::span<const double> row(std::size_t x, std::size_t y) const {
    return {t_.data() + (x * y_.size() + y) * z_.size(), z_.size()};
  }

 private:
  std::string name_;
  Alphabet x_, y_, z_;
  std::vector<double> t_;
};

/// Legitimate-receiver channel and wiretapper channel sharing inputs.
struct WiretapMac {
  Mac legit;
  Mac tap;

  WiretapMac(Mac legit_in, Mac tap_in);
};

using Channel = std::variant<Mac, WiretapMac>;

/// q_Z(z) = sum_x sum_y qx(x) qy(y) q(z|x,y)
FiniteDistribution output_distribution(const Mac& mac,
                                       const FiniteDistribution& qx,
                                       const FiniteDistribution& qy);

/// The joint q_{X,Y,Z} induced by independent inputs.
JointDistribution induced_joint(const Mac& mac, const FiniteDistribution& qx,
                                const FiniteDistribution& qy);

/// prod_k q(z_k | x_k, y_k) for equal-length words of symbol indices.
double block_likelihood(const Mac& mac, std::span<const std::size_t> xword,
                        std::span<const std::size_t> yword,
                        std::span<const std::size_t> zword);

/// Loads a channel spec file (JSON). Single-channel files carry
/// {name, x_alphabet, y_alphabet, z_alphabet, transition}; wiretap files
/// carry `legit` and `tap` sub-objects sharing the input alphabets.
Channel load_channel(const std::filesystem::path& path);

Mac require_mac(const Channel& c);
WiretapMac require_wiretap(const Channel& c);

/// Five standard single-letter summaries of a channel under independent
/// inputs, in nats.
struct ChannelSummary {
  double i_xy_z = 0.0;      // I(X,Y;Z)
  double i_x_z = 0.0;       // I(X;Z)
  double i_y_z = 0.0;       // I(Y;Z)
  double i_x_z_given_y = 0.0;
  double i_y_z_given_x = 0.0;
};

ChannelSummary channel_summary(const Mac& mac, const FiniteDistribution& qx,
                               const FiniteDistribution& qy);

}  // namespace macres
