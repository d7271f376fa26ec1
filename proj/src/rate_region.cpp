#include "macres/rate_region.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "macres/info.hpp"

namespace macres {

namespace {

void check_simplex(const std::vector<double>& p, const char* what) {
  double sum = 0.0;
  for (double x : p) {
    if (!(x >= 0.0)) throw Error(std::string(what) + ": negative entry");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw Error(std::string(what) + ": entries sum to " + std::to_string(sum));
  }
}

std::vector<double> per_v_output(const Mac& mac, const std::vector<double>& qx,
                                 const std::vector<double>& qy) {
  std::vector<double> out(mac.nz(), 0.0);
  for (std::size_t x = 0; x < mac.nx(); ++x) {
    for (std::size_t y = 0; y < mac.ny(); ++y) {
      const double w = qx[x] * qy[y];
      if (w == 0.0) continue;
      for (std::size_t z = 0; z < mac.nz(); ++z) out[z] += w * mac.q(x, y, z);
    }
  }
  return out;
}

struct MiTriple {
  double joint = 0.0, x = 0.0, y = 0.0;
};

MiTriple per_v_mis(const Mac& mac, const std::vector<double>& qx,
                   const std::vector<double>& qy) {
  const FiniteDistribution fx(mac.x_alphabet(), qx);
  const FiniteDistribution fy(mac.y_alphabet(), qy);
  const JointDistribution j = induced_joint(mac, fx, fy);
  const std::size_t ax[] = {0}, ay[] = {1}, az[] = {2};
  const std::size_t axy[] = {0, 1};
  MiTriple t;
  t.joint = mutual_information(j, axy, az);
  t.x = mutual_information(j, ax, az);
  t.y = mutual_information(j, ay, az);
  return t;
}

}  // namespace

std::size_t RegionWitness::support_size() const {
  std::size_t s = 0;
  for (double p : p_v) {
    if (p > 0.0) ++s;
  }
  return s;
}

RegionWitness make_witness(const Mac& mac, std::vector<double> p_v,
                           std::vector<std::vector<double>> qx_given_v,
                           std::vector<std::vector<double>> qy_given_v,
                           const FiniteDistribution& target_qz) {
  if (p_v.empty() || p_v.size() != qx_given_v.size() ||
      p_v.size() != qy_given_v.size()) {
    throw Error("make_witness: size mismatch");
  }
  if (target_qz.labels() != mac.z_alphabet()) {
    throw Error("make_witness: target output alphabet mismatch");
  }
  check_simplex(p_v, "make_witness: p_v");
  for (const auto& q : qx_given_v) {
    if (q.size() != mac.nx()) throw Error("make_witness: qx|v size mismatch");
    check_simplex(q, "make_witness: qx|v");
  }
  for (const auto& q : qy_given_v) {
    if (q.size() != mac.ny()) throw Error("make_witness: qy|v size mismatch");
    check_simplex(q, "make_witness: qy|v");
  }

  RegionWitness w;
  w.p_v = std::move(p_v);
  w.qx_given_v = std::move(qx_given_v);
  w.qy_given_v = std::move(qy_given_v);
  const std::size_t s = w.p_v.size();
  w.mi_joint_v.resize(s);
  w.mi_x_v.resize(s);
  w.mi_y_v.resize(s);
  w.output_v.resize(s);
  w.mixture_output.assign(mac.nz(), 0.0);
  for (std::size_t v = 0; v < s; ++v) {
    const MiTriple t = per_v_mis(mac, w.qx_given_v[v], w.qy_given_v[v]);
    w.mi_joint_v[v] = t.joint;
    w.mi_x_v[v] = t.x;
    w.mi_y_v[v] = t.y;
    w.output_v[v] = per_v_output(mac, w.qx_given_v[v], w.qy_given_v[v]);
    w.mi_joint += w.p_v[v] * t.joint;
    w.mi_x += w.p_v[v] * t.x;
    w.mi_y += w.p_v[v] * t.y;
    for (std::size_t z = 0; z < mac.nz(); ++z) {
      w.mixture_output[z] += w.p_v[v] * w.output_v[v][z];
    }
    if (w.p_v[v] > 0.0) {
      w.max_per_v_output_error =
          std::max(w.max_per_v_output_error,
                   variational_distance(w.output_v[v], target_qz.weights()));
    }
  }
  w.mixture_output_error =
      variational_distance(w.mixture_output, target_qz.weights());
  return w;
}

std::pair<std::pair<double, double>, std::pair<double, double>> corner_points(
    const Mac& mac, const FiniteDistribution& qx,
    const FiniteDistribution& qy) {
  const ChannelSummary s = channel_summary(mac, qx, qy);
  return {{s.i_x_z_given_y, s.i_y_z}, {s.i_x_z, s.i_y_z_given_x}};
}

namespace {

// One grid behavior: an input pair reproducing the target output.
struct Behavior {
  std::vector<double> qx, qy;
  MiTriple mi;
  double output_error = 0.0;
};

// Enumerates simplex grid points with k cells summing to `steps`.
void enumerate_simplex(std::size_t k, std::size_t steps,
                       std::vector<std::size_t>& cur,
                       const std::function<void(const std::vector<std::size_t>&)>& f) {
  if (cur.size() + 1 == k) {
    cur.push_back(steps);
    f(cur);
    cur.pop_back();
    return;
  }
  for (std::size_t i = 0; i <= steps; ++i) {
    cur.push_back(i);
    enumerate_simplex(k, steps - i, cur, f);
    cur.pop_back();
  }
}

std::vector<std::vector<double>> simplex_grid(std::size_t k,
                                              std::size_t steps) {
  std::vector<std::vector<double>> pts;
  std::vector<std::size_t> cur;
  enumerate_simplex(k, steps, cur, [&](const std::vector<std::size_t>& c) {
    std::vector<double> p(k);
    for (std::size_t i = 0; i < k; ++i) {
      p[i] = static_cast<double>(c[i]) / static_cast<double>(steps);
    }
    pts.push_back(std::move(p));
  });
  return pts;
}

double output_error(const Mac& mac, const std::vector<double>& qx,
                    const std::vector<double>& qy,
                    const FiniteDistribution& target) {
  return variational_distance(per_v_output(mac, qx, qy), target.weights());
}

// Local refinement: shrink a box around (qx,qy), keeping the pair with the
// smallest output error. Coordinates are clamped to the simplex by
// renormalizing nonnegative perturbations.
std::pair<std::vector<double>, std::vector<double>> refine_pair(
    const Mac& mac, std::vector<double> qx, std::vector<double> qy,
    const FiniteDistribution& target, double radius, std::size_t rounds) {
  auto perturb = [](const std::vector<double>& base, double r,
                    std::size_t idx, double step) {
    std::vector<double> p = base;
    p[idx] = std::max(0.0, p[idx] + step * r);
    double sum = 0.0;
    for (double v : p) sum += v;
    if (sum <= 0.0) return base;
    for (double& v : p) v /= sum;
    return p;
  };
  double best = output_error(mac, qx, qy, target);
  for (std::size_t round = 0; round < rounds; ++round) {
    bool improved = true;
    while (improved) {
      improved = false;
      for (std::size_t side = 0; side < 2; ++side) {
        auto& vec = side == 0 ? qx : qy;
        for (std::size_t i = 0; i < vec.size(); ++i) {
          for (double step : {-1.0, -0.5, 0.5, 1.0}) {
            auto cand = perturb(vec, radius, i, step);
            const double err = side == 0 ? output_error(mac, cand, qy, target)
                                         : output_error(mac, qx, cand, target);
            if (err < best - 1e-15) {
              best = err;
              vec = cand;
              improved = true;
            }
          }
        }
      }
    }
    radius *= 0.25;
    if (best <= 1e-9) break;
  }
  return {std::move(qx), std::move(qy)};
}

std::vector<Behavior> collect_behaviors(const Mac& mac,
                                        const FiniteDistribution& qz,
                                        const SearchConfig& cfg) {
  if (mac.nx() + mac.ny() > 8) {
    throw BudgetError("region_membership: input alphabets too large for the "
                      "grid search");
  }
  const auto gx = simplex_grid(mac.nx(), cfg.grid);
  const auto gy = simplex_grid(mac.ny(), cfg.grid);
  const double coarse_tol =
      std::max(cfg.output_tol, 2.0 / static_cast<double>(cfg.grid));
  std::vector<Behavior> feasible;
  for (const auto& qx : gx) {
    for (const auto& qy : gy) {
      if (output_error(mac, qx, qy, qz) > coarse_tol) continue;
      auto [rx, ry] = refine_pair(mac, qx, qy, qz,
                                  1.0 / static_cast<double>(cfg.grid),
                                  cfg.refine_rounds);
      const double err = output_error(mac, rx, ry, qz);
      if (err > cfg.output_tol) continue;
      Behavior b;
      b.qx = std::move(rx);
      b.qy = std::move(ry);
      b.output_error = err;
      b.mi = per_v_mis(mac, b.qx, b.qy);
      feasible.push_back(std::move(b));
    }
  }
  // Keep the Pareto-minimal triples; dominated behaviors never help.
  std::vector<Behavior> pareto;
  for (auto& b : feasible) {
    bool dominated = false;
    for (const auto& p : pareto) {
      if (p.mi.joint <= b.mi.joint + 1e-12 && p.mi.x <= b.mi.x + 1e-12 &&
          p.mi.y <= b.mi.y + 1e-12) {
        dominated = true;
        break;
      }
    }
    if (dominated) continue;
    std::erase_if(pareto, [&](const Behavior& p) {
      return b.mi.joint <= p.mi.joint + 1e-12 && b.mi.x <= p.mi.x + 1e-12 &&
             b.mi.y <= p.mi.y + 1e-12;
    });
    pareto.push_back(std::move(b));
  }
  if (pareto.size() > cfg.max_candidates) {
    // Prefer extremes of each coordinate, then fill arbitrarily.
    std::sort(pareto.begin(), pareto.end(), [](const auto& a, const auto& b) {
      return a.mi.joint < b.mi.joint;
    });
    pareto.resize(cfg.max_candidates);
  }
  return pareto;
}

bool mix_ok(const std::vector<const Behavior*>& sel,
            const std::vector<double>& wts, double r1, double r2,
            double margin) {
  double mj = 0.0, mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < sel.size(); ++i) {
    mj += wts[i] * sel[i]->mi.joint;
    mx += wts[i] * sel[i]->mi.x;
    my += wts[i] * sel[i]->mi.y;
  }
  return mx < r1 - margin && my < r2 - margin && mj < r1 + r2 - margin;
}

std::optional<RegionWitness> build_witness(
    const Mac& mac, const FiniteDistribution& qz,
    const std::vector<const Behavior*>& sel, const std::vector<double>& wts,
    double r1, double r2, const SearchConfig& cfg) {
  std::vector<double> p_v;
  std::vector<std::vector<double>> qxv, qyv;
  for (std::size_t i = 0; i < sel.size(); ++i) {
    if (wts[i] <= 0.0) continue;
    p_v.push_back(wts[i]);
    qxv.push_back(sel[i]->qx);
    qyv.push_back(sel[i]->qy);
  }
  RegionWitness w = make_witness(mac, std::move(p_v), std::move(qxv),
                                 std::move(qyv), qz);
  if (!verify_certificate(mac, w, qz, r1, r2, cfg.output_tol, cfg.margin)) {
    return std::nullopt;
  }
  return w;
}

}  // namespace

std::optional<RegionWitness> region_membership(const Mac& mac,
                                               const FiniteDistribution& qz,
                                               double rate1, double rate2,
                                               const SearchConfig& config) {
  if (qz.labels() != mac.z_alphabet()) {
    throw Error("region_membership: output alphabet mismatch");
  }
  const std::vector<Behavior> cands = collect_behaviors(mac, qz, config);
  if (cands.empty()) return std::nullopt;

  // |V| = 1
  for (const auto& b : cands) {
    if (mix_ok({&b}, {1.0}, rate1, rate2, config.margin)) {
      auto w = build_witness(mac, qz, {&b}, {1.0}, rate1, rate2, config);
      if (w) return w;
    }
  }
  if (config.v_max < 2) return std::nullopt;

  // |V| = 2, lambda on a 1/grid lattice
  const std::size_t steps = config.grid;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    for (std::size_t j = i + 1; j < cands.size(); ++j) {
      for (std::size_t t = 1; t < steps; ++t) {
        const double lam = static_cast<double>(t) / static_cast<double>(steps);
        const std::vector<const Behavior*> sel{&cands[i], &cands[j]};
        const std::vector<double> wts{lam, 1.0 - lam};
        if (mix_ok(sel, wts, rate1, rate2, config.margin)) {
          auto w = build_witness(mac, qz, sel, wts, rate1, rate2, config);
          if (w) return w;
        }
      }
    }
  }
  if (config.v_max < 3) return std::nullopt;

  // |V| = 3, coarser weight lattice
  const std::size_t s3 = 16;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    for (std::size_t j = i + 1; j < cands.size(); ++j) {
      for (std::size_t k = j + 1; k < cands.size(); ++k) {
        for (std::size_t a = 1; a < s3; ++a) {
          for (std::size_t b = 1; a + b < s3; ++b) {
            const double wa = static_cast<double>(a) / s3;
            const double wb = static_cast<double>(b) / s3;
            const std::vector<const Behavior*> sel{&cands[i], &cands[j],
                                                   &cands[k]};
            const std::vector<double> wts{wa, wb, 1.0 - wa - wb};
            if (mix_ok(sel, wts, rate1, rate2, config.margin)) {
              auto w = build_witness(mac, qz, sel, wts, rate1, rate2, config);
              if (w) return w;
            }
          }
        }
      }
    }
  }
  return std::nullopt;
}

bool verify_certificate(const Mac& mac, const RegionWitness& w,
                        const FiniteDistribution& qz, double rate1,
                        double rate2, double output_tol, double margin) {
  RegionWitness fresh =
      make_witness(mac, w.p_v, w.qx_given_v, w.qy_given_v, qz);
  if (fresh.max_per_v_output_error > output_tol) return false;
  return fresh.mi_x < rate1 - margin && fresh.mi_y < rate2 - margin &&
         fresh.mi_joint < rate1 + rate2 - margin;
}

ConverseWitness converse_witness(const Mac& mac, const Codebook& c1,
                                 const Codebook& c2,
                                 const FiniteDistribution& qz) {
  if (c1.n != c2.n) throw Error("converse_witness: block length mismatch");
  const std::size_t n = c1.n;
  ConverseWitness out;
  out.delta = resolvability_gap(mac, c1, c2, qz);
  if (out.delta > 0.25) {
    throw Error("converse_witness: measured gap " + std::to_string(out.delta) +
                " exceeds 1/4");
  }
  std::vector<double> p_v(n, 1.0 / static_cast<double>(n));
  std::vector<std::vector<double>> qxv(n, std::vector<double>(mac.nx(), 0.0));
  std::vector<std::vector<double>> qyv(n, std::vector<double>(mac.ny(), 0.0));
  for (std::size_t k = 0; k < n; ++k) {
    for (const Word& w : c1.words) {
      qxv[k][w[k]] += 1.0 / static_cast<double>(c1.count());
    }
    for (const Word& w : c2.words) {
      qyv[k][w[k]] += 1.0 / static_cast<double>(c2.count());
    }
  }
  out.witness = make_witness(mac, std::move(p_v), std::move(qxv),
                             std::move(qyv), qz);
  out.penalty = out.delta == 0.0
                    ? 0.0
                    : out.delta * std::log(out.delta /
                                           (2.0 * static_cast<double>(mac.nz())));
  out.realized_rate1 = c1.realized_rate();
  out.realized_rate2 = c2.realized_rate();
  const double tol = 1e-12;
  out.ineq_sum = out.witness.mi_joint + out.penalty <=
                 out.realized_rate1 + out.realized_rate2 + tol;
  out.ineq_rate1 = out.witness.mi_x + out.penalty <= out.realized_rate1 + tol;
  out.ineq_rate2 = out.witness.mi_y + out.penalty <= out.realized_rate2 + tol;
  out.output_close = out.witness.mixture_output_error <= out.delta + tol;
  return out;
}

namespace {

// Deterministic null-space vector of an r x s matrix (row-major), or empty
// if the matrix has full column rank under the tolerance.
std::vector<double> kernel_vector(std::vector<double> m, std::size_t rows,
                                  std::size_t cols) {
  std::vector<std::size_t> pivot_of_col(cols, SIZE_MAX);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t best = SIZE_MAX;
    double best_abs = 1e-9;
    for (std::size_t r = rank; r < rows; ++r) {
      const double a = std::abs(m[r * cols + c]);
      if (a > best_abs) {
        best_abs = a;
        best = r;
      }
    }
    if (best == SIZE_MAX) continue;
    for (std::size_t k = 0; k < cols; ++k) {
      std::swap(m[rank * cols + k], m[best * cols + k]);
    }
    const double piv = m[rank * cols + c];
    for (std::size_t k = 0; k < cols; ++k) m[rank * cols + k] /= piv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank) continue;
      const double f = m[r * cols + c];
      if (f == 0.0) continue;
      for (std::size_t k = 0; k < cols; ++k) {
        m[r * cols + k] -= f * m[rank * cols + k];
      }
    }
    pivot_of_col[c] = rank;
    ++rank;
  }
  std::size_t free_col = SIZE_MAX;
  for (std::size_t c = 0; c < cols; ++c) {
    if (pivot_of_col[c] == SIZE_MAX) {
      free_col = c;
      break;
    }
  }
  if (free_col == SIZE_MAX) return {};
  std::vector<double> u(cols, 0.0);
  u[free_col] = 1.0;
  for (std::size_t c = 0; c < cols; ++c) {
    if (pivot_of_col[c] != SIZE_MAX) {
      u[c] = -m[pivot_of_col[c] * cols + free_col];
    }
  }
  return u;
}

}  // namespace

RegionWitness reduce_auxiliary(const RegionWitness& w) {
  const std::size_t nz = w.output_v.empty() ? 0 : w.output_v.front().size();
  const std::size_t target_support = nz + 3;

  // Collapse exact duplicates first, carrying per-v functionals along
  // (reweighting p_V never changes them).
  std::vector<double> p_v;
  std::vector<std::vector<double>> qxv, qyv, outs;
  std::vector<double> mi_j, mi_x, mi_y;
  auto close = [](const std::vector<double>& a, const std::vector<double>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (std::abs(a[i] - b[i]) > 1e-12) return false;
    }
    return true;
  };
  for (std::size_t v = 0; v < w.p_v.size(); ++v) {
    if (w.p_v[v] <= 0.0) continue;
    bool merged = false;
    for (std::size_t u = 0; u < p_v.size(); ++u) {
      if (close(qxv[u], w.qx_given_v[v]) && close(qyv[u], w.qy_given_v[v])) {
        p_v[u] += w.p_v[v];
        merged = true;
        break;
      }
    }
    if (!merged) {
      p_v.push_back(w.p_v[v]);
      qxv.push_back(w.qx_given_v[v]);
      qyv.push_back(w.qy_given_v[v]);
      outs.push_back(w.output_v[v]);
      mi_j.push_back(w.mi_joint_v[v]);
      mi_x.push_back(w.mi_x_v[v]);
      mi_y.push_back(w.mi_y_v[v]);
    }
  }

  while (p_v.size() > target_support) {
    const std::size_t s = p_v.size();
    const std::size_t rows = nz + 4;
    std::vector<double> m(rows * s);
    for (std::size_t v = 0; v < s; ++v) {
      m[0 * s + v] = mi_x[v];
      m[1 * s + v] = mi_y[v];
      m[2 * s + v] = mi_j[v];
      for (std::size_t z = 0; z < nz; ++z) {
        m[(3 + z) * s + v] = outs[v][z];
      }
      m[(3 + nz) * s + v] = 1.0;
    }
    std::vector<double> u = kernel_vector(std::move(m), rows, s);
    if (u.empty()) {
      throw Error("reduce_auxiliary: no kernel direction found at support " +
                  std::to_string(s));
    }
    // Move along +u until the first coordinate hits zero (smallest index on
    // ties); flip the direction if +u has no decreasing coordinate.
    auto pick = [&](double sign) {
      double t = -1.0;
      std::size_t idx = SIZE_MAX;
      for (std::size_t v = 0; v < s; ++v) {
        const double uv = sign * u[v];
        if (uv < -1e-15) {
          const double cand = p_v[v] / (-uv);
          if (idx == SIZE_MAX || cand < t - 1e-18) {
            t = cand;
            idx = v;
          }
        }
      }
      return std::pair<double, std::size_t>{t, idx};
    };
    auto [t_pos, idx_pos] = pick(1.0);
    double sign = 1.0;
    double t = t_pos;
    std::size_t drop = idx_pos;
    if (drop == SIZE_MAX) {
      auto [t_neg, idx_neg] = pick(-1.0);
      sign = -1.0;
      t = t_neg;
      drop = idx_neg;
    }
    if (drop == SIZE_MAX) {
      throw Error("reduce_auxiliary: kernel direction has no sign change");
    }
    for (std::size_t v = 0; v < s; ++v) {
      p_v[v] = std::max(0.0, p_v[v] + t * sign * u[v]);
    }
    p_v[drop] = 0.0;
    // compact
    std::vector<double> np;
    std::vector<std::vector<double>> nqx, nqy, nouts;
    std::vector<double> nmj, nmx, nmy;
    for (std::size_t v = 0; v < s; ++v) {
      if (p_v[v] <= 0.0) continue;
      np.push_back(p_v[v]);
      nqx.push_back(qxv[v]);
      nqy.push_back(qyv[v]);
      nouts.push_back(outs[v]);
      nmj.push_back(mi_j[v]);
      nmx.push_back(mi_x[v]);
      nmy.push_back(mi_y[v]);
    }
    p_v = std::move(np);
    qxv = std::move(nqx);
    qyv = std::move(nqy);
    outs = std::move(nouts);
    mi_j = std::move(nmj);
    mi_x = std::move(nmx);
    mi_y = std::move(nmy);
  }

  // Renormalize away accumulated drift before rebuilding.
  double mass = 0.0;
  for (double p : p_v) mass += p;
  if (std::abs(mass - 1.0) > 1e-6) {
    throw Error("reduce_auxiliary: probability mass drifted to " +
                std::to_string(mass));
  }
  for (double& p : p_v) p /= mass;

  RegionWitness reduced;
  reduced.p_v = p_v;
  reduced.qx_given_v = qxv;
  reduced.qy_given_v = qyv;
  reduced.mi_joint_v = mi_j;
  reduced.mi_x_v = mi_x;
  reduced.mi_y_v = mi_y;
  reduced.output_v = outs;
  reduced.mixture_output.assign(nz, 0.0);
  for (std::size_t v = 0; v < p_v.size(); ++v) {
    reduced.mi_joint += p_v[v] * mi_j[v];
    reduced.mi_x += p_v[v] * mi_x[v];
    reduced.mi_y += p_v[v] * mi_y[v];
    for (std::size_t z = 0; z < nz; ++z) {
      reduced.mixture_output[z] += p_v[v] * outs[v][z];
    }
  }

  const double tol = 1e-9;
  bool ok = std::abs(reduced.mi_joint - w.mi_joint) <= tol &&
            std::abs(reduced.mi_x - w.mi_x) <= tol &&
            std::abs(reduced.mi_y - w.mi_y) <= tol;
  for (std::size_t z = 0; ok && z < nz; ++z) {
    ok = std::abs(reduced.mixture_output[z] - w.mixture_output[z]) <= tol;
  }
  if (!ok) {
    throw Error("reduce_auxiliary: preserved functionals drifted beyond 1e-9");
  }
  if (reduced.p_v.size() > target_support) {
    throw Error("reduce_auxiliary: support still exceeds |Z|+3");
  }
  return reduced;
}

ConvexityProbe convexity_probe(const Mac& mac, const FiniteDistribution& qz,
                               std::pair<double, double> rates_a,
                               std::pair<double, double> rates_b,
                               std::span<const double> lambdas,
                               const SearchConfig& config) {
  auto wa = region_membership(mac, qz, rates_a.first, rates_a.second, config);
  auto wb = region_membership(mac, qz, rates_b.first, rates_b.second, config);
  if (!wa || !wb) {
    throw Error("convexity_probe: both endpoint rate pairs must be certified");
  }
  ConvexityProbe probe;
  probe.all_certified = true;
  for (double lam : lambdas) {
    if (!(lam >= 0.0) || !(lam <= 1.0)) {
      throw Error("convexity_probe: lambda out of [0,1]");
    }
    ConvexityProbe::Entry e;
    e.lambda = lam;
    e.rate1 = lam * rates_a.first + (1.0 - lam) * rates_b.first;
    e.rate2 = lam * rates_a.second + (1.0 - lam) * rates_b.second;
    // Mixture witness: concatenate the endpoint auxiliaries.
    std::vector<double> p_v;
    std::vector<std::vector<double>> qxv, qyv;
    auto add = [&](const RegionWitness& w, double weight) {
      for (std::size_t v = 0; v < w.p_v.size(); ++v) {
        if (weight * w.p_v[v] == 0.0) continue;
        p_v.push_back(weight * w.p_v[v]);
        qxv.push_back(w.qx_given_v[v]);
        qyv.push_back(w.qy_given_v[v]);
      }
    };
    add(*wa, lam);
    add(*wb, 1.0 - lam);
    RegionWitness mix = make_witness(mac, p_v, qxv, qyv, qz);
    e.certified = verify_certificate(mac, mix, qz, e.rate1, e.rate2,
                                     config.output_tol, config.margin);
    probe.all_certified = probe.all_certified && e.certified;
    probe.entries.push_back(e);
  }
  return probe;
}

}  // namespace macres
