// Precoder / receiver synthesis for a stream allocation and numerical
// verification of the linear feasibility conditions.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "xdof/allocation.hpp"
#include "xdof/channel.hpp"
#include "xdof/numerics.hpp"
#include "xdof/subspace.hpp"

namespace xdof {

// Extended transmit bases per message (index 2(i-1) + (j-1)): the stacked
// mixer form of the overlap basis and the Kronecker null-steering basis.
struct MessageBases {
  int T = 1;
  std::array<RMatrix, 4> omega_hat;  // 2T M_j x 2 s_k
  std::array<RMatrix, 4> psi_hat;    // 2T M_j x 2T phi_kj
  MixerSet mixers;
};

// Bases for the constant T-symbol extension of the given channels. Message
// ij aligns at receiver k != i, so its overlap basis comes from the pair
// (H_k1, H_k2) and its null-steering basis from H_kj.
MessageBases constant_bases(const ChannelSet& channels, int T, std::uint64_t mixer_seed,
                            const TolerancePolicy& pol = {});

// Bases computed directly on the (possibly time-varying) extended channels.
// The extended overlap is often the whole space, where its orthonormal
// basis is coordinate-aligned; each overlap pair is therefore multiplied by
// a random square mixer shared by both transmitters serving the receiver,
// and each null-steering basis by its own random rotation, so prefix
// selection does not concentrate streams in a few channel uses.
MessageBases extended_bases(const ExtendedChannelSet& ext, std::uint64_t mixer_seed,
                            const TolerancePolicy& pol = {});

struct PrecoderSet {
  AntennaConfig config;
  StreamAllocation allocation;
  std::array<RMatrix, 4> V;  // 2T M_j x d_ia
  std::array<RMatrix, 4> Z;  // 2T M_j x d_ns
};

struct ReceiverSet {
  std::array<RMatrix, 4> L;  // d_ia x 2T N_i
  std::array<RMatrix, 4> F;  // d_ns x 2T N_i
};

// Prefix-column selection; infeasible-allocation when a count exceeds the
// available basis columns.
PrecoderSet build_precoders(const MessageBases& bases, const AntennaConfig& cfg,
                            const StreamAllocation& alloc);

// Each filter block spans part of the left null space of everything else
// received at its receiver, choosing the directions that best capture its
// own signal. feasibility-failure when the null space is too small.
ReceiverSet build_receivers(const ExtendedChannelSet& ext, const PrecoderSet& pre,
                            const TolerancePolicy& pol = {});

struct SignalSpaceMatrix {
  int receiver = 1;
  RMatrix G;
  std::vector<std::pair<std::string, int>> blocks;  // label, column count
};

// Desired IA images, desired null-steering images, then the wider of the
// two aligned interference images.
SignalSpaceMatrix assemble_G(int receiver, const ExtendedChannelSet& ext, const PrecoderSet& pre);

struct VerifyOptions {
  double min_sv = 1e-6;          // threshold on column-normalized G
  bool require_alignment = true;  // interference span containment
};

struct VerificationReport {
  std::uint64_t seed = 0;
  double max_zero_forcing_residual = 0.0;
  double max_alignment_residual = 0.0;
  std::array<double, 2> min_G_singular_value{1.0, 1.0};
  std::array<bool, 4> decode_rank_ok{true, true, true, true};
  Rational achieved_dof;
  bool passed = false;
  std::string failure;  // empty when passed
};

VerificationReport verify_feasibility(const ExtendedChannelSet& ext, const PrecoderSet& pre,
                                      const ReceiverSet& rec, const TolerancePolicy& pol = {},
                                      const VerifyOptions& options = {});

// Filters for the reciprocal network: transmit filters are the transposed
// receive filters and vice versa, with messages relabeled.
std::pair<PrecoderSet, ReceiverSet> reciprocal_transfer(const PrecoderSet& pre,
                                                        const ReceiverSet& rec);

struct DesignOutcome {
  ExtendedChannelSet ext;  // network the final design is verified on
  PrecoderSet precoders;
  ReceiverSet receivers;
  VerificationReport report;
};

// Builds and verifies a design for one channel draw. Allocations on the
// reciprocal side are designed on the reciprocal network and transferred;
// the verified network is then the real-embedded transpose of the
// reciprocal extension.
DesignOutcome design_and_verify(const ChannelSet& channels, const StreamAllocation& alloc,
                                std::uint64_t mixer_seed, const TolerancePolicy& pol = {},
                                const VerifyOptions& options = {});

// Same on an already extended (typically time-varying) network, with bases
// computed on the extended matrices; no mixers are involved. Reciprocal-side
// allocations are designed on reciprocal(ext) and verified on ext.
DesignOutcome design_and_verify(const ExtendedChannelSet& ext, const StreamAllocation& alloc,
                                std::uint64_t mixer_seed, const TolerancePolicy& pol = {},
                                const VerifyOptions& options = {});

// Draws a channel (full rank or the given profile) from `seed` and runs
// design_and_verify; construction failures (infeasible allocations,
// missing receive dimensions) become failing reports. In
// time-varying mode one snapshot per symbol is drawn.
VerificationReport verify_trial(const AntennaConfig& cfg, const RankProfile& ranks,
                                const StreamAllocation& alloc, std::uint64_t seed,
                                const TolerancePolicy& pol = {}, const VerifyOptions& options = {},
                                ExtensionMode mode = ExtensionMode::kConstant);

// The matrix D = [Phi_A T_t, Phi_B T_t] stacked over t = 1..T, where the
// 2N x 2s blocks Phi hold |h| U(phase) rotation blocks and T_t are i.i.d.
// Gaussian 2s x d. With `phase_difference` set, Phi_B uses the phases of
// Phi_A shifted by that amount.
RMatrix lemma16_matrix(int N, int s, int T, int d, std::uint64_t seed,
                       std::optional<double> phase_difference = std::nullopt);

// Whether lemma16_matrix has full column rank (normalized min singular
// value above min_sv).
bool lemma16_check(int N, int s, int T, int d, std::uint64_t seed,
                   std::optional<double> phase_difference = std::nullopt, double min_sv = 1e-6);

}  // namespace xdof
