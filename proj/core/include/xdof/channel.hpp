// Two-user MIMO X channel instances: generation, real (ACS) embedding,
// symbol extension, and the reciprocal network.
//
// Link (i, j) connects transmitter j to receiver i; H_ij is N_i x M_j.
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "xdof/numerics.hpp"

namespace xdof {

struct AntennaConfig {
  int M1 = 1, M2 = 1;  // transmit antennas
  int N1 = 1, N2 = 1;  // receive antennas

  int tx(int j) const { return j == 1 ? M1 : M2; }
  int rx(int i) const { return i == 1 ? N1 : N2; }

  // Throws InvalidInput unless every count is >= 1.
  void validate() const;
  // Transmitters and receivers swap roles: (N1, N2, M1, M2).
  AntennaConfig reciprocal() const { return {N1, N2, M1, M2}; }
  // "M1,M2,N1,N2"
  std::string str() const;
  static AntennaConfig parse(const std::string& text);

  friend bool operator==(const AntennaConfig&, const AntennaConfig&) = default;
};

// Per-link channel ranks r_ij (receiver i, transmitter j).
struct RankProfile {
  std::array<int, 4> r{};  // order 11, 12, 21, 22

  int at(int i, int j) const { return r[2 * (i - 1) + (j - 1)]; }
  int& at(int i, int j) { return r[2 * (i - 1) + (j - 1)]; }

  static RankProfile full(const AntennaConfig& cfg);
  // 0 <= r_ij <= min(N_i, M_j); throws InvalidInput otherwise.
  void validate(const AntennaConfig& cfg) const;
  bool is_full(const AntennaConfig& cfg) const;
  // Ranks of the reciprocal network: r'_ji = r_ij.
  RankProfile transposed() const;
  std::string str() const;
  // "r11,r12,r21,r22"
  static RankProfile parse(const std::string& text);

  friend bool operator==(const RankProfile&, const RankProfile&) = default;
};

struct ChannelSet {
  AntennaConfig config;
  RankProfile profile;
  std::array<CMatrix, 4> H;  // order 11, 12, 21, 22

  const CMatrix& h(int i, int j) const { return H[2 * (i - 1) + (j - 1)]; }
  CMatrix& h(int i, int j) { return H[2 * (i - 1) + (j - 1)]; }

  // Checks shapes, finiteness and that numerical ranks match the profile.
  void validate(const TolerancePolicy& pol = {}) const;
};

enum class ExtensionMode { kConstant, kTimeVarying };

struct ExtendedChannelSet {
  AntennaConfig config;
  int T = 1;
  ExtensionMode mode = ExtensionMode::kConstant;
  std::array<RMatrix, 4> H;  // 2T N_i x 2T M_j each; order 11, 12, 21, 22

  const RMatrix& h(int i, int j) const { return H[2 * (i - 1) + (j - 1)]; }
};

// i.i.d. CN(0,1) entries; link (i,j) draws from substream (seed, link index).
ChannelSet generate_full_rank(const AntennaConfig& cfg, std::uint64_t seed);

// H_ij = A_ij B_ij with Gaussian N_i x r_ij and r_ij x M_j factors; r_ij = 0
// yields an explicit zero matrix.
ChannelSet generate_rank_deficient(const AntennaConfig& cfg, const RankProfile& profile,
                                   std::uint64_t seed);

// Real embedding [[Re, -Im], [Im, Re]] of a complex matrix.
RMatrix acs_embed(const CMatrix& h);

// Constant-channel T-symbol extension: I_T ⊗ acs_embed(H_ij).
ExtendedChannelSet extend_constant(const ChannelSet& channels, int T);

// Time-varying extension: block-diagonal of acs_embed(H_ij(t)), t = 1..T.
ExtendedChannelSet extend_time_varying(const std::vector<ChannelSet>& snapshots);

// Reverses the link direction: config becomes (N1, N2, M1, M2) and
// H'_ji = H_ij^T (plain transpose).
ChannelSet reciprocal(const ChannelSet& channels);

// Reciprocal of an extended network in the real domain: H'_ji = H_ij^T.
// The real embedding of a complex transpose differs from this by the sign
// change diag(I, -I) on each side, so transferred filters are verified
// against this form.
ExtendedChannelSet reciprocal(const ExtendedChannelSet& ext);

// Kronecker product I_T ⊗ m.
RMatrix kron_identity(int T, const RMatrix& m);

}  // namespace xdof
