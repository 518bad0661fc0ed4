// Exact DoF outer bounds for the two-user MIMO X and Z channels, and the
// closed-form totals for symmetric rank-deficient channels.
#pragma once

#include <array>
#include <string>
#include <vector>

#include "xdof/channel.hpp"
#include "xdof/rational.hpp"

namespace xdof {

// Per-message DoF in message order 11, 12, 21, 22.
using DoFPoint = std::array<Rational, 4>;

// a · d <= b with integer coefficients; d >= 0 is implied.
struct DofConstraint {
  std::array<long long, 4> a{};
  long long b = 0;
  std::string label;
};

struct DofRegion {
  std::vector<DofConstraint> constraints;

  bool contains(const DoFPoint& d) const;
};

// Z channel with message ij removed: d_ij = 0 (written as d_ij <= 0), the
// three-message sum bounded by max(N_k, M_q) with k != i, q != j, and the
// four single-node constraints d11+d12 <= N1, d11+d21 <= M1,
// d21+d22 <= N2, d12+d22 <= M2.
DofRegion z_outer_region(const AntennaConfig& cfg, int i, int j);

// X channel: four three-message sums bounded by max(N_i, M_j) terms plus
// the four single-node constraints.
DofRegion x_outer_region(const AntennaConfig& cfg);

struct WeightedOptimum {
  Rational value;
  DoFPoint argmax;  // a vertex of the region
};

// Exact maximum of weights · d over the region (rational simplex).
// Weights must be >= 0 and not all zero.
WeightedOptimum lp_max_weighted(const DofRegion& region, const std::array<Rational, 4>& weights);

// Closed-form total-DoF outer bound of the Z channel without message ij:
// min(M1+M2, N_k) if M_q < N_k, else min(N1+N2, M_q) (k != i, q != j).
Rational z_total_outer(const AntennaConfig& cfg, int i, int j);

// Closed-form total-DoF outer bound of the X channel, with
// e_ij = max(M_i, N_j): the minimum of M1+M2, N1+N2,
// (e11+e12+M2)/2, (e21+e22+M1)/2, (e11+e21+N2)/2, (e12+e22+N1)/2 and
// (e11+e12+e21+e22)/3.
Rational x_total_outer(const AntennaConfig& cfg);

enum class RankFamily { kX, kIC, kBC };

// Total DoF with M antennas at every node, direct-link rank r_d and
// cross-link rank r_c.
Rational closed_form_rank_deficient(RankFamily family, int M, int r_c, int r_d);

}  // namespace xdof
