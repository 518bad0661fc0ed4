// Integer programs for symbol-stream allocation, an exact branch-and-bound
// solver, symbol-extension / reciprocity sweeps and inner-region caps.
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "xdof/allocation.hpp"
#include "xdof/bounds.hpp"
#include "xdof/channel.hpp"
#include "xdof/rational.hpp"

namespace xdof {

// Generic subspace dimensions derived from antenna counts and link ranks.
struct SubspaceDims {
  std::array<int, 2> s{};    // overlap dimension at receiver k (index k - 1)
  std::array<int, 4> phi{};  // null-steering dimension, index 2(k-1) + (j-1)

  int s_at(int k) const { return s[k - 1]; }
  int phi_at(int k, int j) const { return phi[2 * (k - 1) + (j - 1)]; }
};

// s_k = r_k1 + r_k2 - min(N_k, r_k1 + r_k2), phi_kj = M_j - r_kj.
SubspaceDims generic_dims(const AntennaConfig& cfg, const RankProfile& ranks);
SubspaceDims generic_dims(const AntennaConfig& cfg);

// A stream slot that an ILP variable feeds: message index and stream kind.
struct IlpSlot {
  int message = 0;
  bool null_steer = false;
};

struct IlpVariable {
  std::string name;
  int ub = 0;
  std::vector<IlpSlot> slots;  // more than one slot = tied variables
};

struct IlpRow {
  std::vector<int> coef;  // one entry per variable, all >= 0
  long long rhs = 0;
  std::string label;
};

struct IlpProblem {
  std::string kind;  // "P0", "P1", "PX21", "PX12"
  AntennaConfig config;
  int T = 1;
  Side side = Side::kOriginal;
  std::vector<IlpVariable> vars;
  std::vector<IlpRow> rows;
  std::array<Rational, 4> weights{1, 1, 1, 1};  // per-message weight factors
  // Row groups used to strengthen the search bound (indices into rows).
  std::vector<std::vector<int>> bound_families;

  // Integer objective coefficients, scaled by the common denominator of the
  // weights; the weighted DoF of x is dot(c, x) / (scale * 2T).
  std::vector<long long> objective(long long* scale = nullptr) const;
  bool feasible(const std::vector<int>& x) const;
  StreamAllocation to_allocation(const std::vector<int>& x) const;
  Rational weighted_dof(const std::vector<int>& x) const;
  void validate() const;
};

struct SolverStats {
  long long nodes = 0;
  double seconds = 0.0;
};

struct AllocationResult {
  StreamAllocation best;
  std::vector<int> x;  // raw variable values of the generating problem
  Rational dof;        // weighted objective value
  std::array<Rational, 4> per_message_dof{};
  SolverStats stats;
};

// Weighted-sum program with IA alignment rows at each receiver, transmitter
// dimension rows, IA caps 2 s_k and null-steering caps 2 T phi_kj. Masked
// messages are removed from the program.
IlpProblem build_p0(const AntennaConfig& cfg, const SubspaceDims& dims, int T,
                    const std::array<Rational, 4>& weights = {1, 1, 1, 1},
                    const MessageMask& mask = MessageMask::x());

// build_p0 plus the per-message rank caps d_ia + d_ns <= 2 T rank(H_ij).
IlpProblem build_p1(const AntennaConfig& cfg, const SubspaceDims& dims, const RankProfile& ranks,
                    int T, const std::array<Rational, 4>& weights = {1, 1, 1, 1},
                    const MessageMask& mask = MessageMask::x());

// Tied-variable program for the X channel without message 21: variables
// d1 (= d11_ia = d12_ia), d2 (= d22_ia), d11_ns, d12_ns, d22_ns.
IlpProblem build_px21(const AntennaConfig& cfg, const SubspaceDims& dims, int T);

// Tied-variable program for the reciprocal of the above (message 12 absent),
// stated on the reciprocal configuration: variables d1 (= d11_ia),
// d2 (= d21_ia = d22_ia), d21_ns, d22_ns.
IlpProblem build_px12(const AntennaConfig& cfg, int T);

// Exact maximizer; ties are broken towards the lexicographically smallest
// variable tuple in problem order.
AllocationResult solve_ilp(const IlpProblem& problem);

struct SweepOptions {
  int T_max = 6;
  bool use_reciprocal = true;
};

// Best weighted DoF over T in [1, T_max] and both network sides. The
// reciprocal side is solved on the swapped configuration with transposed
// ranks and relabeled back; later candidates must strictly improve.
AllocationResult sweep_best(const AntennaConfig& cfg, const RankProfile& ranks,
                            const MessageMask& mask, const std::array<Rational, 4>& weights,
                            const SweepOptions& options = {});

struct InnerRegionCaps {
  int T = 1;
  Side side = Side::kOriginal;
  std::array<int, 4> ia_cap{};
  std::array<int, 4> ns_cap{};
  std::array<int, 4> rank_cap{};
  // Sum constraints over per-message DoF; empty for full-rank channels.
  std::vector<DofConstraint> sum_rows;
};

// Per-message caps of the achievable region. The reciprocal side is built
// operationally: original-side caps of the swapped network, relabeled.
InnerRegionCaps inner_region_bounds(const AntennaConfig& cfg, const RankProfile& ranks, int T,
                                    Side side);

// The reciprocal-side caps exactly as the closed-form region writes them,
// kept for comparison against the operational construction.
InnerRegionCaps literal_reciprocal_caps(const AntennaConfig& cfg, const RankProfile& ranks, int T);

struct GapEntry {
  std::array<Rational, 4> weights{};
  Rational outer;
  Rational inner;
  Rational gap;  // (outer - inner) / outer, 0 when outer is 0
};

struct GapReport {
  AntennaConfig config;
  std::vector<GapEntry> entries;
  Rational max_gap;
};

// Compares the weighted outer-bound LP with the best weighted allocation.
GapReport conjecture_probe(const AntennaConfig& cfg,
                           const std::vector<std::array<Rational, 4>>& weight_samples,
                           int T_max);

// Random integer weight vectors in [0, max_weight]^4, never all zero.
std::vector<std::array<Rational, 4>> sample_weights(int count, std::uint64_t seed,
                                                    int max_weight = 4);

}  // namespace xdof
