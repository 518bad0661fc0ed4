#include "xdof/channel.hpp"

#include <algorithm>
#include <sstream>

#include "xdof/allocation.hpp"
#include "xdof/error.hpp"

namespace xdof {
namespace {

std::vector<int> parse_int_list(const std::string& text, std::size_t expected, const char* what) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      int v = std::stoi(item, &pos);
      if (pos != item.size()) throw InvalidInput("");
      out.push_back(v);
    } catch (const std::exception&) {
      throw InvalidInput(std::string(what) + ": cannot parse '" + text + "'");
    }
  }
  if (out.size() != expected) {
    throw InvalidInput(std::string(what) + ": expected " + std::to_string(expected) +
                       " comma-separated integers, got '" + text + "'");
  }
  return out;
}

constexpr std::uint64_t kLinkStream[4] = {11, 12, 21, 22};

}  // namespace

void AntennaConfig::validate() const {
  if (M1 < 1 || M2 < 1 || N1 < 1 || N2 < 1) {
    throw InvalidInput("AntennaConfig: all antenna counts must be >= 1, got " + str());
  }
}

std::string AntennaConfig::str() const {
  return std::to_string(M1) + "," + std::to_string(M2) + "," + std::to_string(N1) + "," +
         std::to_string(N2);
}

AntennaConfig AntennaConfig::parse(const std::string& text) {
  auto v = parse_int_list(text, 4, "AntennaConfig");
  AntennaConfig cfg{v[0], v[1], v[2], v[3]};
  cfg.validate();
  return cfg;
}

RankProfile RankProfile::full(const AntennaConfig& cfg) {
  RankProfile p;
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j) p.at(i, j) = std::min(cfg.rx(i), cfg.tx(j));
  return p;
}

void RankProfile::validate(const AntennaConfig& cfg) const {
  for (int i = 1; i <= 2; ++i) {
    for (int j = 1; j <= 2; ++j) {
      int cap = std::min(cfg.rx(i), cfg.tx(j));
      if (at(i, j) < 0 || at(i, j) > cap) {
        throw InvalidInput("RankProfile: r" + std::to_string(i) + std::to_string(j) + " = " +
                           std::to_string(at(i, j)) + " outside [0, " + std::to_string(cap) + "]");
      }
    }
  }
}

bool RankProfile::is_full(const AntennaConfig& cfg) const { return *this == full(cfg); }

RankProfile RankProfile::transposed() const {
  RankProfile p;
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j) p.at(j, i) = at(i, j);
  return p;
}

std::string RankProfile::str() const {
  return std::to_string(r[0]) + "," + std::to_string(r[1]) + "," + std::to_string(r[2]) + "," +
         std::to_string(r[3]);
}

RankProfile RankProfile::parse(const std::string& text) {
  auto v = parse_int_list(text, 4, "RankProfile");
  RankProfile p;
  std::copy(v.begin(), v.end(), p.r.begin());
  return p;
}

void ChannelSet::validate(const TolerancePolicy& pol) const {
  config.validate();
  profile.validate(config);
  for (int i = 1; i <= 2; ++i) {
    for (int j = 1; j <= 2; ++j) {
      const CMatrix& m = h(i, j);
      if (m.rows() != config.rx(i) || m.cols() != config.tx(j)) {
        throw InvalidInput("ChannelSet: H" + std::to_string(i) + std::to_string(j) +
                           " has wrong dimensions");
      }
      require_finite(m, "ChannelSet");
      if (numerical_rank(m, pol) != profile.at(i, j)) {
        throw InvalidInput("ChannelSet: rank of H" + std::to_string(i) + std::to_string(j) +
                           " does not match the profile");
      }
    }
  }
}

ChannelSet generate_full_rank(const AntennaConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  ChannelSet ch;
  ch.config = cfg;
  ch.profile = RankProfile::full(cfg);
  for (int i = 1; i <= 2; ++i) {
    for (int j = 1; j <= 2; ++j) {
      RandomStream rng(seed, kLinkStream[2 * (i - 1) + (j - 1)]);
      ch.h(i, j) = rng.complex_gaussian_matrix(cfg.rx(i), cfg.tx(j));
    }
  }
  return ch;
}

ChannelSet generate_rank_deficient(const AntennaConfig& cfg, const RankProfile& profile,
                                   std::uint64_t seed) {
  cfg.validate();
  profile.validate(cfg);
  ChannelSet ch;
  ch.config = cfg;
  ch.profile = profile;
  for (int i = 1; i <= 2; ++i) {
    for (int j = 1; j <= 2; ++j) {
      const int r = profile.at(i, j);
      if (r == 0) {
        ch.h(i, j) = CMatrix::Zero(cfg.rx(i), cfg.tx(j));
        continue;
      }
      RandomStream rng(seed, kLinkStream[2 * (i - 1) + (j - 1)]);
      CMatrix left = rng.complex_gaussian_matrix(cfg.rx(i), r);
      CMatrix right = rng.complex_gaussian_matrix(r, cfg.tx(j));
      ch.h(i, j) = left * right;
    }
  }
  return ch;
}

RMatrix acs_embed(const CMatrix& h) {
  const Eigen::Index n = h.rows(), m = h.cols();
  RMatrix out(2 * n, 2 * m);
  out.topLeftCorner(n, m) = h.real();
  out.topRightCorner(n, m) = -h.imag();
  out.bottomLeftCorner(n, m) = h.imag();
  out.bottomRightCorner(n, m) = h.real();
  return out;
}

RMatrix kron_identity(int T, const RMatrix& m) {
  RMatrix out = RMatrix::Zero(T * m.rows(), T * m.cols());
  for (int t = 0; t < T; ++t) out.block(t * m.rows(), t * m.cols(), m.rows(), m.cols()) = m;
  return out;
}

ExtendedChannelSet extend_constant(const ChannelSet& channels, int T) {
  if (T < 1) throw InvalidInput("extend_constant: T must be >= 1");
  ExtendedChannelSet ext;
  ext.config = channels.config;
  ext.T = T;
  ext.mode = ExtensionMode::kConstant;
  for (int k = 0; k < 4; ++k) ext.H[k] = kron_identity(T, acs_embed(channels.H[k]));
  return ext;
}

ExtendedChannelSet extend_time_varying(const std::vector<ChannelSet>& snapshots) {
  if (snapshots.empty()) throw InvalidInput("extend_time_varying: no snapshots");
  const AntennaConfig cfg = snapshots.front().config;
  for (const auto& s : snapshots) {
    if (!(s.config == cfg)) throw InvalidInput("extend_time_varying: snapshots differ in config");
  }
  const int T = static_cast<int>(snapshots.size());
  ExtendedChannelSet ext;
  ext.config = cfg;
  ext.T = T;
  ext.mode = ExtensionMode::kTimeVarying;
  for (int k = 0; k < 4; ++k) {
    const Eigen::Index rows = 2 * snapshots.front().H[k].rows();
    const Eigen::Index cols = 2 * snapshots.front().H[k].cols();
    ext.H[k] = RMatrix::Zero(T * rows, T * cols);
    for (int t = 0; t < T; ++t) ext.H[k].block(t * rows, t * cols, rows, cols) = acs_embed(snapshots[t].H[k]);
  }
  return ext;
}

ChannelSet reciprocal(const ChannelSet& channels) {
  ChannelSet out;
  out.config = channels.config.reciprocal();
  out.profile = channels.profile.transposed();
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j) out.h(j, i) = channels.h(i, j).transpose();
  return out;
}

ExtendedChannelSet reciprocal(const ExtendedChannelSet& ext) {
  ExtendedChannelSet out;
  out.config = ext.config.reciprocal();
  out.T = ext.T;
  out.mode = ext.mode;
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j) out.H[message_index(j, i)] = ext.h(i, j).transpose();
  return out;
}

}  // namespace xdof
