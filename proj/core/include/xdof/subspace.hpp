// Joint decomposition of channel pairs into overlapped, non-overlapping and
// null-steering subspaces, and the extended transmit bases built on them.
#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "xdof/channel.hpp"
#include "xdof/numerics.hpp"

namespace xdof {

// A = W C_A U_A^H and B = W C_B U_B^H for A (p x m), B (p x n).
//
// Column layout: W = [W_nov_b | W_ov | W_nov_a] (v_B + s + v_A = q columns),
// U_A = [U_A^ov | U_A^nov | U_A^ns] (s + v_A + phi_A = m columns) and
// U_B = [U_B^ov | U_B^nov | U_B^ns]. C_A has Γ_A in the (ov, ov) block and
// I in the (nov_a, nov) block; C_B has I in (nov_b, nov) and Γ_B in
// (ov, ov). Hence C_A C_A^H + C_B C_B^H = I_q.
struct GsvdFactors {
  CMatrix W;
  CMatrix C_A, C_B;
  CMatrix U_A, U_B;
  Eigen::VectorXd gamma;  // ascending, in (0, 1)
  Eigen::VectorXd sigma;  // sqrt(1 - gamma^2)
  int q = 0, s = 0, v_A = 0, v_B = 0, phi_A = 0, phi_B = 0;
  int r_A = 0, r_B = 0;

  CMatrix U_A_ov() const { return U_A.leftCols(s); }
  CMatrix U_A_ns() const { return U_A.rightCols(phi_A); }
  CMatrix U_B_ov() const { return U_B.leftCols(s); }
  CMatrix U_B_ns() const { return U_B.rightCols(phi_B); }
  CMatrix W_ov() const { return W.middleCols(v_B, s); }
};

GsvdFactors gsvd(const CMatrix& A, const CMatrix& B, const TolerancePolicy& pol = {});

// Paired preimages of the overlap at receiver k:
// H_k1 * omega1.col(l) == H_k2 * omega2.col(l) for every l.
struct OverlapPairBasis {
  CMatrix omega1;  // M1 x s_k
  CMatrix omega2;  // M2 x s_k
  int s_k = 0;
  int target_receiver = 0;  // receiver k where the two images coincide

  const CMatrix& omega(int j) const { return j == 1 ? omega1 : omega2; }
};

OverlapPairBasis overlap_pair_basis(const CMatrix& H_k1, const CMatrix& H_k2,
                                    const TolerancePolicy& pol = {}, int target_receiver = 0);

// Orthonormal basis of null(H_kj): transmissions from j unseen by k.
struct NullSteerBasis {
  CMatrix psi;  // M_j x phi_kj
  int phi_kj = 0;
  int blocked_receiver = 0;
};

NullSteerBasis null_steer_basis(const CMatrix& H_kj, const TolerancePolicy& pol = {},
                                int blocked_receiver = 0);

struct EmbeddedBases {
  RMatrix omega_tilde;  // 2 M_j x 2 s_k
  RMatrix psi_tilde;    // 2 M_j x 2 phi_kj
  RMatrix psi_hat;      // I_T ⊗ psi_tilde
};

// Real embedding of transmitter j's overlap directions and null-steering
// basis, plus the T-fold block-diagonal null-steering basis.
EmbeddedBases embed_bases(const OverlapPairBasis& omega, int j, const NullSteerBasis& psi, int T);

// Random square mixers, mixer(i, n) for target receiver i and extension n,
// each 2 s x 2 s where s is the overlap dimension used by messages to i.
struct MixerSet {
  std::array<std::vector<RMatrix>, 2> mixers;
  std::uint64_t seed = 0;

  const RMatrix& mixer(int i, int n) const { return mixers[i - 1][n]; }
  int T() const { return static_cast<int>(mixers[0].size()); }
};

// Entries uniform on [-1, 1]; each mixer is redrawn until its smallest
// singular value exceeds min_sv and it differs from all earlier mixers.
MixerSet make_mixers(std::array<int, 2> s_for_target, int T, std::uint64_t seed,
                     double min_sv = 1e-6);

// Vertical stack of omega_tilde * mixer(i, n) for n = 1..T. Both
// transmitters serving receiver i share the mixers, so pairs stay aligned.
RMatrix build_extended_overlap(const RMatrix& omega_tilde, const MixerSet& mixers, int target_receiver);

// Bases on the 2T-sized extended matrices directly (time-varying channels).
struct ExtendedSubspaces {
  std::array<RMatrix, 2> omega1;  // indexed by receiver k - 1
  std::array<RMatrix, 2> omega2;
  std::array<int, 2> s{};
  std::array<RMatrix, 4> psi;  // index 2(k-1) + (j-1)
  std::array<int, 4> phi{};

  const RMatrix& omega(int k, int j) const { return j == 1 ? omega1[k - 1] : omega2[k - 1]; }
  const RMatrix& psi_at(int k, int j) const { return psi[2 * (k - 1) + (j - 1)]; }
};

ExtendedSubspaces time_varying_bases(const ExtendedChannelSet& ext, const TolerancePolicy& pol = {});

// Real-valued overlap pair (same contract as overlap_pair_basis).
void real_overlap_pair(const RMatrix& H_k1, const RMatrix& H_k2, const TolerancePolicy& pol,
                       RMatrix& omega1, RMatrix& omega2);

}  // namespace xdof
