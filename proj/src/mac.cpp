#include "macres/mac.hpp"

#include "macres/info.hpp"

#include <cmath>
#include <fstream>
#include <iostream>

#include <json.hpp>

namespace macres {

Mac::Mac(std::string name, Alphabet x_alphabet, Alphabet y_alphabet,
         Alphabet z_alphabet, std::vector<double> transition)
    : name_(std::move(name)),
      x_(std::move(x_alphabet)),
      y_(std::move(y_alphabet)),
      z_(std::move(z_alphabet)),
      t_(std::move(transition)) {
  if (x_.empty() || y_.empty() || z_.empty()) {
    throw Error("Mac: empty alphabet");
  }
  if (t_.size() != x_.size() * y_.size() * z_.size()) {
    throw Error("Mac: transition tensor size mismatch");
  }
  for (std::size_t x = 0; x < x_.size(); ++x) {
    for (std::size_t y = 0; y < y_.size(); ++y) {
      double sum = 0.0;
      for (std::size_t z = 0; z < z_.size(); ++z) {
        const double p = q(x, y, z);
        if (!(p >= 0.0)) {
          throw Error("Mac '" + name_ + "': negative transition entry at row (" +
                      std::to_string(x) + "," + std::to_string(y) + ")");
        }
        sum += p;
      }
      if (std::abs(sum - 1.0) > kRowSumTol) {
        throw Error("Mac '" + name_ + "': row (" + std::to_string(x) + "," +
                    std::to_string(y) + ") sums to " + std::to_string(sum));
      }
      if (sum != 1.0) {
        for (std::size_t z = 0; z < z_.size(); ++z) {
          t_[(x * y_.size() + y) * z_.size() + z] /= sum;
        }
        std::clog << "macres: channel '" << name_ << "' row (" << x << "," << y
                  << ") rescaled by " << (1.0 / sum) << "\n";
      }
    }
  }
}

WiretapMac::WiretapMac(Mac legit_in, Mac tap_in)
    : legit(std::move(legit_in)), tap(std::move(tap_in)) {
  if (legit.x_alphabet() != tap.x_alphabet() ||
      legit.y_alphabet() != tap.y_alphabet()) {
    throw Error("WiretapMac: legit and tap channels must share input alphabets");
  }
}

FiniteDistribution output_distribution(const Mac& mac,
                                       const FiniteDistribution& qx,
                                       const FiniteDistribution& qy) {
  if (qx.labels() != mac.x_alphabet() || qy.labels() != mac.y_alphabet()) {
    throw Error("output_distribution: input alphabet mismatch");
  }
  std::vector<double> qz(mac.nz(), 0.0);
  for (std::size_t x = 0; x < mac.nx(); ++x) {
    for (std::size_t y = 0; y < mac.ny(); ++y) {
      const double w = qx[x] * qy[y];
      if (w == 0.0) continue;
      for (std::size_t z = 0; z < mac.nz(); ++z) {
        qz[z] += w * mac.q(x, y, z);
      }
    }
  }
  return FiniteDistribution(mac.z_alphabet(), std::move(qz));
}

JointDistribution induced_joint(const Mac& mac, const FiniteDistribution& qx,
                                const FiniteDistribution& qy) {
  if (qx.labels() != mac.x_alphabet() || qy.labels() != mac.y_alphabet()) {
    throw Error("induced_joint: input alphabet mismatch");
  }
  std::vector<double> w(mac.nx() * mac.ny() * mac.nz());
  std::size_t i = 0;
  for (std::size_t x = 0; x < mac.nx(); ++x) {
    for (std::size_t y = 0; y < mac.ny(); ++y) {
      for (std::size_t z = 0; z < mac.nz(); ++z) {
        w[i++] = qx[x] * qy[y] * mac.q(x, y, z);
      }
    }
  }
  return JointDistribution(
      {mac.x_alphabet(), mac.y_alphabet(), mac.z_alphabet()}, std::move(w));
}

double block_likelihood(const Mac& mac, std::span<const std::size_t> xword,
                        std::span<const std::size_t> yword,
                        std::span<const std::size_t> zword) {
  if (xword.size() != yword.size() || xword.size() != zword.size()) {
    throw Error("block_likelihood: word length mismatch");
  }
  double p = 1.0;
  for (std::size_t k = 0; k < xword.size(); ++k) {
    p *= mac.q(xword[k], yword[k], zword[k]);
    if (p == 0.0) return 0.0;
  }
  return p;
}

namespace {

Alphabet parse_alphabet(const nlohmann::json& arr, const std::string& key) {
  if (!arr.is_array() || arr.empty()) {
    throw Error("channel file: '" + key + "' must be a non-empty array");
  }
  Alphabet a;
  for (const auto& s : arr) {
    if (s.is_string()) {
      a.push_back(s.get<std::string>());
    } else {
      a.push_back(s.dump());
    }
  }
  return a;
}

Mac parse_mac(const nlohmann::json& doc, const std::string& fallback_name) {
  const std::string name = doc.value("name", fallback_name);
  Alphabet x = parse_alphabet(doc.at("x_alphabet"), "x_alphabet");
  Alphabet y = parse_alphabet(doc.at("y_alphabet"), "y_alphabet");
  Alphabet z = parse_alphabet(doc.at("z_alphabet"), "z_alphabet");
  const auto& t = doc.at("transition");
  if (!t.is_array() || t.size() != x.size()) {
    throw Error("channel file: transition must have one block per x symbol");
  }
  std::vector<double> tr;
  tr.reserve(x.size() * y.size() * z.size());
  for (std::size_t xi = 0; xi < x.size(); ++xi) {
    const auto& rows = t[xi];
    if (!rows.is_array() || rows.size() != y.size()) {
      throw Error("channel file: transition[" + std::to_string(xi) +
                  "] must have one row per y symbol");
    }
    for (std::size_t yi = 0; yi < y.size(); ++yi) {
      const auto& row = rows[yi];
      if (!row.is_array() || row.size() != z.size()) {
        throw Error("channel file: transition[" + std::to_string(xi) + "][" +
                    std::to_string(yi) + "] must have one entry per z symbol");
      }
      for (const auto& p : row) tr.push_back(p.get<double>());
    }
  }
  return Mac(name, std::move(x), std::move(y), std::move(z), std::move(tr));
}

}  // namespace

Channel load_channel(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open channel file: " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error("channel file parse error: " + std::string(e.what()));
  }
  try {
    if (doc.contains("legit") && doc.contains("tap")) {
      const std::string name = doc.value("name", path.stem().string());
      Mac legit = parse_mac(doc.at("legit"), name + ".legit");
      Mac tap = parse_mac(doc.at("tap"), name + ".tap");
      return WiretapMac(std::move(legit), std::move(tap));
    }
    return parse_mac(doc, path.stem().string());
  } catch (const nlohmann::json::exception& e) {
    throw Error("channel file schema error: " + std::string(e.what()));
  }
}

Mac require_mac(const Channel& c) {
  if (const Mac* m = std::get_if<Mac>(&c)) return *m;
  return std::get<WiretapMac>(c).legit;
}

WiretapMac require_wiretap(const Channel& c) {
  if (const WiretapMac* w = std::get_if<WiretapMac>(&c)) return *w;
  throw Error("expected a wiretap channel file with legit/tap sections");
}

ChannelSummary channel_summary(const Mac& mac, const FiniteDistribution& qx,
                               const FiniteDistribution& qy) {
  const JointDistribution j = induced_joint(mac, qx, qy);
  const std::size_t ax[] = {0}, ay[] = {1}, az[] = {2};
  const std::size_t axy[] = {0, 1};
  ChannelSummary s;
  s.i_xy_z = mutual_information(j, axy, az);
  s.i_x_z = mutual_information(j, ax, az);
  s.i_y_z = mutual_information(j, ay, az);
  s.i_x_z_given_y = conditional_mutual_information(j, ax, az, ay);
  s.i_y_z_given_x = conditional_mutual_information(j, ay, az, ax);
  return s;
}

}  // namespace macres
