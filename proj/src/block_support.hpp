#pragma once

// Internal helpers shared by the resolvability and wiretap translation
// units: per-symbol density tables and the block-conditional accumulator.

#include <cmath>
#include <limits>
#include <vector>

#include "macres/info.hpp"
#include "macres/mac.hpp"

namespace macres::detail {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
// Slack added to typicality thresholds so exactly-on-threshold densities
// (constant-density channels) land on the typical side.
inline constexpr double kTypicalityEps = 1e-9;

inline double log_ratio(double num, double den) {
  if (num <= 0.0) return -kInf;
  if (den <= 0.0) return kInf;
  return std::log(num) - std::log(den);
}

/// Single-letter conditional outputs and information densities for a
/// channel under independent inputs.
struct DensityTables {
  std::size_t nx, ny, nz;
  std::vector<double> qz;            // [z]
  std::vector<double> qz_given_y;    // [y][z]
  std::vector<double> qz_given_x;    // [x][z]
  std::vector<double> d_x_cond_y;    // [x][y][z]  log q(z|x,y)/q(z|y)
  std::vector<double> d_y_cond_x;    // [x][y][z]  log q(z|x,y)/q(z|x)
  std::vector<double> d_xy;          // [x][y][z]  log q(z|x,y)/q_z(z)
  std::vector<double> d_y;           // [y][z]     log q(z|y)/q_z(z)
  std::vector<double> d_x;           // [x][z]     log q(z|x)/q_z(z)
  ChannelSummary summary;

  DensityTables(const Mac& mac, const FiniteDistribution& qx,
                const FiniteDistribution& qy)
      : nx(mac.nx()), ny(mac.ny()), nz(mac.nz()) {
    qz.assign(nz, 0.0);
    qz_given_y.assign(ny * nz, 0.0);
    qz_given_x.assign(nx * nz, 0.0);
    for (std::size_t x = 0; x < nx; ++x) {
      for (std::size_t y = 0; y < ny; ++y) {
        for (std::size_t z = 0; z < nz; ++z) {
          const double p = mac.q(x, y, z);
          qz[z] += qx[x] * qy[y] * p;
          qz_given_y[y * nz + z] += qx[x] * p;
          qz_given_x[x * nz + z] += qy[y] * p;
        }
      }
    }
    d_x_cond_y.assign(nx * ny * nz, 0.0);
    d_y_cond_x.assign(nx * ny * nz, 0.0);
    d_xy.assign(nx * ny * nz, 0.0);
    d_y.assign(ny * nz, 0.0);
    d_x.assign(nx * nz, 0.0);
    for (std::size_t x = 0; x < nx; ++x) {
      for (std::size_t y = 0; y < ny; ++y) {
        for (std::size_t z = 0; z < nz; ++z) {
          const std::size_t i = (x * ny + y) * nz + z;
          const double p = mac.q(x, y, z);
          d_x_cond_y[i] = log_ratio(p, qz_given_y[y * nz + z]);
          d_y_cond_x[i] = log_ratio(p, qz_given_x[x * nz + z]);
          d_xy[i] = log_ratio(p, qz[z]);
        }
      }
    }
    for (std::size_t y = 0; y < ny; ++y) {
      for (std::size_t z = 0; z < nz; ++z) {
        d_y[y * nz + z] = log_ratio(qz_given_y[y * nz + z], qz[z]);
      }
    }
    for (std::size_t x = 0; x < nx; ++x) {
      for (std::size_t z = 0; z < nz; ++z) {
        d_x[x * nz + z] = log_ratio(qz_given_x[x * nz + z], qz[z]);
      }
    }
    summary = channel_summary(mac, qx, qy);
  }
};

inline void add_block_rec(const Mac& mac, const Word& xw, const Word& yw,
                          std::size_t k, std::size_t flat, double prob,
                          std::vector<double>& acc) {
  if (k == xw.size()) {
    acc[flat] += prob;
    return;
  }
  const std::size_t nz = mac.nz();
  for (std::size_t z = 0; z < nz; ++z) {
    const double p = mac.q(xw[k], yw[k], z);
    if (p == 0.0) continue;
    add_block_rec(mac, xw, yw, k + 1, flat * nz + z, prob * p, acc);
  }
}

/// Adds weight * q(z^n | xword, yword) into acc (size nz^n, row-major in
/// position order), skipping zero-probability branches.
inline void add_block_conditional(const Mac& mac, const Word& xword,
                                  const Word& yword, double weight,
                                  std::vector<double>& acc) {
  add_block_rec(mac, xword, yword, 0, 0, weight, acc);
}

/// Product-target probability of the flat index under base weights.
inline double product_weight(std::span<const double> base, std::size_t n,
                             std::size_t flat) {
  double p = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    p *= base[flat % base.size()];
    flat /= base.size();
  }
  return p;
}

}  // namespace macres::detail
