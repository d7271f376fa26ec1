// Experiment harness: loads channel files, runs seeded experiments and
// writes deterministic CSV reports plus a manifest per output file.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "macres/bounds.hpp"
#include "macres/csv.hpp"
#include "macres/info.hpp"
#include "macres/rate_region.hpp"
#include "macres/wiretap.hpp"

namespace {

using namespace macres;

std::vector<double> parse_doubles(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(std::stod(tok));
  }
  if (out.empty()) throw Error("expected a comma-separated number list");
  return out;
}

std::vector<std::size_t> parse_sizes(const std::string& csv) {
  std::vector<std::size_t> out;
  for (double v : parse_doubles(csv)) {
    if (v < 1 || v != static_cast<std::size_t>(v)) {
      throw Error("expected positive integers in list");
    }
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

FiniteDistribution input_dist(const Alphabet& alphabet,
                              const std::string& flag) {
  if (flag.empty()) return FiniteDistribution::uniform(alphabet);
  return FiniteDistribution(alphabet, parse_doubles(flag));
}

void write_manifest(const std::string& out_path, const std::string& command,
                    const nlohmann::json& params) {
  nlohmann::json doc;
  doc["version"] = version_string();
  doc["command"] = command;
  doc["params"] = params;
  std::ofstream f(out_path + ".manifest.json", std::ios::binary);
  f << doc.dump(2) << "\n";
}

struct CommonArgs {
  std::string channel;
  std::string qx, qy;
  std::string out;
};

int run_info(const CommonArgs& a) {
  const Channel ch = load_channel(a.channel);
  auto describe = [&](const Mac& mac, const std::string& tag) {
    const FiniteDistribution qx = input_dist(mac.x_alphabet(), a.qx);
    const FiniteDistribution qy = input_dist(mac.y_alphabet(), a.qy);
    const ChannelSummary s = channel_summary(mac, qx, qy);
    const auto corners = corner_points(mac, qx, qy);
    const JointDistribution j = induced_joint(mac, qx, qy);
    const std::size_t ax[] = {0}, ay[] = {1}, az[] = {2};
    const DensityMoments m1 = density_moments(j, ax, az, ay);
    const DensityMoments m2 = density_moments(j, ay, az);
    const FiniteDistribution qz = output_distribution(mac, qx, qy);
    std::cout << "channel " << tag << " (" << mac.name() << "): |X|=" << mac.nx()
              << " |Y|=" << mac.ny() << " |Z|=" << mac.nz() << "\n";
    std::cout << "  output q_Z:";
    for (double p : qz.weights()) std::cout << " " << format_sig(p);
    std::cout << "\n";
    std::cout << "  I(X,Y;Z) = " << format_sig(s.i_xy_z) << " nats\n";
    std::cout << "  I(X;Z) = " << format_sig(s.i_x_z)
              << "  I(Y;Z) = " << format_sig(s.i_y_z) << " nats\n";
    std::cout << "  I(X;Z|Y) = " << format_sig(s.i_x_z_given_y)
              << "  I(Y;Z|X) = " << format_sig(s.i_y_z_given_x) << " nats\n";
    std::cout << "  corners: (" << format_sig(corners.first.first) << ", "
              << format_sig(corners.first.second) << ") / ("
              << format_sig(corners.second.first) << ", "
              << format_sig(corners.second.second) << ") nats\n";
    std::cout << "  dispersion V[i(X;Z|Y)] = " << format_sig(m1.variance)
              << " nats^2, V[i(Y;Z)] = " << format_sig(m2.variance)
              << " nats^2\n";
  };
  if (const Mac* mac = std::get_if<Mac>(&ch)) {
    describe(*mac, "mac");
  } else {
    const WiretapMac& w = std::get<WiretapMac>(ch);
    describe(w.legit, "legit");
    describe(w.tap, "tap");
  }
  return 0;
}

int run_region(const CommonArgs& a, const std::string& rates,
               const std::string& qz_flag) {
  const Mac mac = require_mac(load_channel(a.channel));
  const auto r = parse_doubles(rates);
  if (r.size() != 2) throw Error("--rates expects R1,R2");
  const FiniteDistribution qx = input_dist(mac.x_alphabet(), a.qx);
  const FiniteDistribution qy = input_dist(mac.y_alphabet(), a.qy);
  const FiniteDistribution qz = qz_flag.empty()
                                    ? output_distribution(mac, qx, qy)
                                    : FiniteDistribution(mac.z_alphabet(),
                                                         parse_doubles(qz_flag));
  const auto witness = region_membership(mac, qz, r[0], r[1]);
  if (!witness) {
    std::cout << "unknown (no certificate found on the search grid)\n";
    return 0;
  }
  std::cout << "certified: |V|=" << witness->p_v.size()
            << " I(X;Z|V)=" << format_sig(witness->mi_x)
            << " I(Y;Z|V)=" << format_sig(witness->mi_y)
            << " I(X,Y;Z|V)=" << format_sig(witness->mi_joint)
            << " nats, output error=" << format_sig(witness->max_per_v_output_error)
            << "\n";
  if (!a.out.empty()) {
    nlohmann::json doc;
    doc["p_v"] = witness->p_v;
    doc["qx_given_v"] = witness->qx_given_v;
    doc["qy_given_v"] = witness->qy_given_v;
    doc["mi_x_nats"] = witness->mi_x;
    doc["mi_y_nats"] = witness->mi_y;
    doc["mi_joint_nats"] = witness->mi_joint;
    doc["max_per_v_output_error"] = witness->max_per_v_output_error;
    std::ofstream f(a.out, std::ios::binary);
    f << doc.dump(2) << "\n";
    nlohmann::json params;
    params["channel"] = a.channel;
    params["rates_nats"] = r;
    write_manifest(a.out, "region", params);
  }
  return 0;
}

int run_resolve(const CommonArgs& a, const std::string& rates,
                const std::string& ns, std::size_t trials, double gamma1,
                std::uint64_t seed) {
  const Mac mac = require_mac(load_channel(a.channel));
  const auto r = parse_doubles(rates);
  if (r.size() != 2) throw Error("--rates expects R1,R2");
  const auto n_list = parse_sizes(ns);
  const FiniteDistribution qx = input_dist(mac.x_alphabet(), a.qx);
  const FiniteDistribution qy = input_dist(mac.y_alphabet(), a.qy);
  const auto reports = concentration_experiment(mac, qx, qy, r[0], r[1],
                                                n_list, trials, gamma1, seed);
  std::ofstream f(a.out, std::ios::binary);
  if (!f) throw Error("cannot open output file: " + a.out);
  CsvWriter csv(f);
  csv.header({"n", "trial", "gap", "realized_rate1_nats",
              "realized_rate2_nats"});
  for (const auto& rep : reports) {
    for (std::size_t t = 0; t < rep.gaps.size(); ++t) {
      csv.row({static_cast<unsigned long long>(rep.n),
               static_cast<unsigned long long>(t), rep.gaps[t],
               rep.realized_rate1, rep.realized_rate2});
    }
  }
  nlohmann::json params;
  params["channel"] = a.channel;
  params["rates_nats"] = r;
  params["n_list"] = n_list;
  params["trials"] = trials;
  params["gamma1"] = gamma1;
  params["seed"] = seed;
  write_manifest(a.out, "resolve", params);
  for (const auto& rep : reports) {
    std::cout << "n=" << rep.n << " median=" << format_sig(rep.median)
              << " exceedance=" << format_sig(rep.exceedance_fraction)
              << " threshold=" << format_sig(rep.threshold) << "\n";
  }
  return 0;
}

int run_second_order(const CommonArgs& a, double epsilon, double c, double d,
                     const std::string& ns, int corner) {
  const Mac mac = require_mac(load_channel(a.channel));
  const auto n_list = parse_sizes(ns);
  const FiniteDistribution qx = input_dist(mac.x_alphabet(), a.qx);
  const FiniteDistribution qy = input_dist(mac.y_alphabet(), a.qy);
  std::ofstream f;
  std::unique_ptr<CsvWriter> csv;
  if (!a.out.empty()) {
    f.open(a.out, std::ios::binary);
    if (!f) throw Error("cannot open output file: " + a.out);
    csv = std::make_unique<CsvWriter>(f);
    csv->header({"n", "corner", "rate1_nats", "rate2_nats", "eps_tilde_1",
                 "eps_tilde_2", "v1_nats2", "v2_nats2"});
  }
  for (std::size_t n : n_list) {
    const SecondOrderSchedule s =
        second_order_schedule(mac, qx, qy, epsilon, c, d, n, corner);
    std::cout << "n=" << n << " R1=" << format_sig(s.r1)
              << " R2=" << format_sig(s.r2)
              << " eps_tilde=(" << format_sig(s.eps_tilde_1) << ", "
              << format_sig(s.eps_tilde_2) << ")\n";
    if (csv) {
      csv->row({static_cast<unsigned long long>(n),
                static_cast<long long>(corner), s.r1, s.r2, s.eps_tilde_1,
                s.eps_tilde_2, s.v1, s.v2});
    }
  }
  if (!a.out.empty()) {
    nlohmann::json params;
    params["channel"] = a.channel;
    params["epsilon"] = epsilon;
    params["c"] = c;
    params["d"] = d;
    params["corner"] = corner;
    params["n_list"] = n_list;
    write_manifest(a.out, "second-order", params);
  }
  return 0;
}

int run_secrecy(const CommonArgs& a, const std::string& rates,
                const std::string& ns, std::size_t trials, double epsilon,
                double gamma1, std::uint64_t seed) {
  const WiretapMac wmac = require_wiretap(load_channel(a.channel));
  const auto r = parse_doubles(rates);
  if (r.size() != 2) throw Error("--rates expects R1,R2");
  const auto n_list = parse_sizes(ns);
  const FiniteDistribution qx = input_dist(wmac.legit.x_alphabet(), a.qx);
  const FiniteDistribution qy = input_dist(wmac.legit.y_alphabet(), a.qy);
  const auto reports = secrecy_experiment(wmac, qx, qy, r[0], r[1], n_list,
                                          trials, epsilon, gamma1, seed);
  std::ofstream f(a.out, std::ios::binary);
  if (!f) throw Error("cannot open output file: " + a.out);
  CsvWriter csv(f);
  csv.header({"n", "trial", "ds_gap", "decode_error", "l1_nats", "l2_nats"});
  for (const auto& rep : reports) {
    for (std::size_t t = 0; t < rep.ds_gaps.size(); ++t) {
      csv.row({static_cast<unsigned long long>(rep.n),
               static_cast<unsigned long long>(t), rep.ds_gaps[t],
               rep.decode_errors[t], rep.l1, rep.l2});
    }
  }
  nlohmann::json params;
  params["channel"] = a.channel;
  params["rates_nats"] = r;
  params["n_list"] = n_list;
  params["trials"] = trials;
  params["epsilon"] = epsilon;
  params["gamma1"] = gamma1;
  params["seed"] = seed;
  write_manifest(a.out, "secrecy", params);
  for (const auto& rep : reports) {
    std::cout << "n=" << rep.n << " median ds=" << format_sig(rep.ds_median)
              << " median err=" << format_sig(rep.err_median)
              << " bad fractions=(" << format_sig(rep.ds_bad_fraction) << ", "
              << format_sig(rep.err_bad_fraction) << ")\n";
  }
  return 0;
}

int run_bounds_check() {
  struct Case {
    std::string name;
    bool passed;
    std::string detail;
  };
  std::vector<Case> cases;
  auto add = [&](const std::string& name, const TailCheck& c) {
    cases.push_back({name, c.passed,
                     "tail=" + format_sig(c.exact_tail) +
                         " bound=" + format_sig(c.bound)});
  };

  for (std::size_t n : {5, 10, 20}) {
    for (double p : {0.2, 0.5}) {
      std::vector<DiscreteRealVar> vars(n, DiscreteRealVar::bernoulli(p));
      const double mu = static_cast<double>(n) * p;
      for (double delta : {0.25, 0.5, 0.9}) {
        add("hoeffding n=" + std::to_string(n) + " p=" + format_sig(p) +
                " delta=" + format_sig(delta),
            hoeffding_check(vars, mu, delta));
      }
    }
  }
  for (std::size_t base : {2, 4}) {
    for (std::size_t chi : {1, 2}) {
      std::vector<DiscreteRealVar> vars(base, DiscreteRealVar::bernoulli(0.5));
      for (double delta : {0.5, 1.0}) {
        add("janson base=" + std::to_string(base) +
                " chi=" + std::to_string(chi) + " delta=" + format_sig(delta),
            janson_check(vars, chi, delta));
      }
    }
  }
  for (std::size_t n : {1, 4, 16, 64}) {
    const DiscreteRealVar centered({-0.5, 0.5}, {0.5, 0.5});
    std::vector<double> grid;
    for (double a = -4.0; a <= 4.0; a += 0.125) grid.push_back(a);
    const BerryEsseenCheck c = berry_esseen_check(centered, n, grid);
    cases.push_back({"berry-esseen n=" + std::to_string(n), c.passed,
                     "max=" + format_sig(c.max_discrepancy) +
                         " bound=" + format_sig(c.bound)});
  }
  {
    bool ok = true;
    for (double p : {0.9, 0.5, 0.158655, 0.05, 0.01, 1e-4}) {
      ok = ok && std::abs(qfunc(qfunc_inv(p)) - p) <= 1e-10;
    }
    cases.push_back({"qfunc round-trip", ok, "tol=1e-10"});
  }

  bool all = true;
  for (const auto& c : cases) {
    std::cout << (c.passed ? "PASS" : "FAIL") << "  " << c.name << "  ("
              << c.detail << ")\n";
    all = all && c.passed;
  }
  std::cout << (all ? "all bounds checks passed" : "BOUNDS CHECKS FAILED")
            << "\n";
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"channel resolvability and wiretap security laboratory"};
  app.require_subcommand(1);

  CommonArgs info_args, region_args, resolve_args, so_args, secrecy_args;
  std::string rates, ns, qz_flag;
  std::string so_ns, secrecy_rates, secrecy_ns;
  std::size_t trials = 50, secrecy_trials = 20;
  double gamma1 = 0.05, secrecy_gamma1 = 0.05;
  std::uint64_t seed = 1, secrecy_seed = 1;
  double epsilon = 0.05, c_const = 2.0, d_const = 0.0, secrecy_epsilon = 0.0;
  int corner = 1;

  auto add_common = [](CLI::App* cmd, CommonArgs& a, bool need_out) {
    cmd->add_option("--channel", a.channel, "channel spec file (JSON)")
        ->required();
    cmd->add_option("--qx", a.qx, "input distribution on X (default uniform)");
    cmd->add_option("--qy", a.qy, "input distribution on Y (default uniform)");
    auto* out = cmd->add_option("--out", a.out, "output file");
    if (need_out) out->required();
  };

  CLI::App* info = app.add_subcommand("info", "channel summaries and corners");
  add_common(info, info_args, false);

  CLI::App* region = app.add_subcommand("region", "rate-region membership");
  add_common(region, region_args, false);
  region->add_option("--rates", rates, "R1,R2 in nats")->required();
  region->add_option("--qz", qz_flag, "target output (default channel output)");

  CLI::App* resolve = app.add_subcommand("resolve", "concentration experiment");
  add_common(resolve, resolve_args, true);
  std::string resolve_rates;
  resolve->add_option("--rates", resolve_rates, "R1,R2 in nats")->required();
  resolve->add_option("--n", ns, "block length list, e.g. 2,4,6")->required();
  resolve->add_option("--trials", trials, "trials per block length");
  resolve->add_option("--gamma1", gamma1, "exceedance exponent");
  resolve->add_option("--seed", seed, "master seed")->required();

  CLI::App* so = app.add_subcommand("second-order", "corner-rate schedules");
  add_common(so, so_args, false);
  so->add_option("--epsilon", epsilon, "target epsilon in (0,1)")->required();
  so->add_option("--c", c_const, "log-term constant, > 1");
  so->add_option("--d", d_const, "shift constant in (0, c-1); default (c-1)/2");
  so->add_option("--n", so_ns, "block length list")->required();
  so->add_option("--corner", corner, "corner point, 1 or 2");

  CLI::App* secrecy = app.add_subcommand("secrecy", "wiretap experiments");
  add_common(secrecy, secrecy_args, true);
  secrecy->add_option("--rates", secrecy_rates, "R1,R2 in nats")->required();
  secrecy->add_option("--n", secrecy_ns, "block length list")->required();
  secrecy->add_option("--trials", secrecy_trials, "trials per block length");
  secrecy->add_option("--epsilon", secrecy_epsilon,
                      "decoder epsilon (default: half min margin)");
  secrecy->add_option("--gamma1", secrecy_gamma1, "bad-pair exponent");
  secrecy->add_option("--seed", secrecy_seed, "master seed")->required();

  app.add_subcommand("bounds-check", "run the concentration-bound oracles");

  CLI11_PARSE(app, argc, argv);

  try {
    if (info->parsed()) return run_info(info_args);
    if (region->parsed()) return run_region(region_args, rates, qz_flag);
    if (resolve->parsed()) {
      return run_resolve(resolve_args, resolve_rates, ns, trials, gamma1, seed);
    }
    if (so->parsed()) {
      if (d_const <= 0.0) d_const = 0.5 * (c_const - 1.0);
      return run_second_order(so_args, epsilon, c_const, d_const, so_ns,
                              corner);
    }
    if (secrecy->parsed()) {
      return run_secrecy(secrecy_args, secrecy_rates, secrecy_ns,
                         secrecy_trials, secrecy_epsilon, secrecy_gamma1,
                         secrecy_seed);
    }
    return run_bounds_check();
  } catch (const macres::BudgetError& e) {
    std::cerr << "budget error: " << e.what() << "\n";
    return 3;
  } catch (const macres::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
