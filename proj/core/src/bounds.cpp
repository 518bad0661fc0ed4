#include "xdof/bounds.hpp"

#include <algorithm>

#include "xdof/allocation.hpp"
#include "xdof/error.hpp"
#include "xdof/lp.hpp"

namespace xdof {
namespace {

void add_node_constraints(const AntennaConfig& cfg, DofRegion& region) {
  region.constraints.push_back({{1, 1, 0, 0}, cfg.N1, "rx1"});
  region.constraints.push_back({{1, 0, 1, 0}, cfg.M1, "tx1"});
  region.constraints.push_back({{0, 0, 1, 1}, cfg.N2, "rx2"});
  region.constraints.push_back({{0, 1, 0, 1}, cfg.M2, "tx2"});
}

}  // namespace

bool DofRegion::contains(const DoFPoint& d) const {
  for (const auto& v : d) {
    if (v.sign() < 0) return false;
  }
  for (const auto& c : constraints) {
    Rational lhs = 0;
    for (int m = 0; m < 4; ++m) lhs += Rational(c.a[m]) * d[m];
    if (lhs > Rational(c.b)) return false;
  }
  return true;
}

DofRegion z_outer_region(const AntennaConfig& cfg, int i, int j) {
  cfg.validate();
  if ((i != 1 && i != 2) || (j != 1 && j != 2)) throw InvalidInput("z_outer_region: bad message index");
  DofRegion region;
  const int removed = message_index(i, j);
  DofConstraint zero;
  zero.a[removed] = 1;
  zero.b = 0;
  zero.label = "removed";
  region.constraints.push_back(zero);
  const int k = 3 - i, q = 3 - j;
  DofConstraint sum{{1, 1, 1, 1}, std::max(cfg.rx(k), cfg.tx(q)), "sum"};
  sum.a[removed] = 0;
  region.constraints.push_back(sum);
  add_node_constraints(cfg, region);
  return region;
}

DofRegion x_outer_region(const AntennaConfig& cfg) {
  cfg.validate();
  DofRegion region;
  region.constraints.push_back({{1, 1, 1, 0}, std::max(cfg.N1, cfg.M1), "no22"});
  region.constraints.push_back({{1, 1, 0, 1}, std::max(cfg.N1, cfg.M2), "no21"});
  region.constraints.push_back({{1, 0, 1, 1}, std::max(cfg.N2, cfg.M1), "no12"});
  region.constraints.push_back({{0, 1, 1, 1}, std::max(cfg.N2, cfg.M2), "no11"});
  add_node_constraints(cfg, region);
  return region;
}

WeightedOptimum lp_max_weighted(const DofRegion& region, const std::array<Rational, 4>& weights) {
  bool any = false;
  for (const auto& w : weights) {
    if (w.sign() < 0) throw InvalidInput("lp_max_weighted: weights must be >= 0");
    any = any || !w.is_zero();
  }
  if (!any) throw InvalidInput("lp_max_weighted: weights must not all be zero");
  LpProblem lp;
  for (const auto& c : region.constraints) {
    if (c.b < 0) throw InvalidInput("lp_max_weighted: region excludes the origin");
    std::vector<Rational> row(4);
    for (int m = 0; m < 4; ++m) row[m] = Rational(c.a[m]);
    lp.A.push_back(std::move(row));
    lp.b.push_back(Rational(c.b));
  }
  lp.c.assign(weights.begin(), weights.end());
  LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::kOptimal) throw InvalidInput("lp_max_weighted: region is unbounded");
  WeightedOptimum out;
  out.value = sol.value;
  for (int m = 0; m < 4; ++m) out.argmax[m] = sol.x[m];
  return out;
}

Rational z_total_outer(const AntennaConfig& cfg, int i, int j) {
  cfg.validate();
  const int k = 3 - i, q = 3 - j;
  if (cfg.tx(q) < cfg.rx(k)) return std::min(cfg.M1 + cfg.M2, cfg.rx(k));
  return std::min(cfg.N1 + cfg.N2, cfg.tx(q));
}

Rational x_total_outer(const AntennaConfig& cfg) {
  cfg.validate();
  auto e = [&](int i, int j) { return std::max(cfg.tx(i), cfg.rx(j)); };
  return min_of({Rational(cfg.M1 + cfg.M2), Rational(cfg.N1 + cfg.N2),
                 Rational(e(1, 1) + e(1, 2) + cfg.M2, 2), Rational(e(2, 1) + e(2, 2) + cfg.M1, 2),
                 Rational(e(1, 1) + e(2, 1) + cfg.N2, 2), Rational(e(1, 2) + e(2, 2) + cfg.N1, 2),
                 Rational(e(1, 1) + e(1, 2) + e(2, 1) + e(2, 2), 3)});
}

Rational closed_form_rank_deficient(RankFamily family, int M, int r_c, int r_d) {
  if (M < 1 || r_c < 0 || r_d < 0 || r_c > M || r_d > M) {
    throw InvalidInput("closed_form_rank_deficient: need M >= 1 and 0 <= r_c, r_d <= M");
  }
  const int sum = r_c + r_d;
  switch (family) {
    case RankFamily::kX:
      if (sum >= M) return Rational(4, 3) * (Rational(2 * M) - Rational(sum, 2));
      return 2 * sum;
    case RankFamily::kIC:
      if (sum >= M && 2 * r_d + r_c >= 2 * M) return 2 * M - r_c;
      return 2 * r_d;
    case RankFamily::kBC:
      return sum >= M ? M : sum;
  }
  throw InvalidInput("closed_form_rank_deficient: unknown family");
}

}  // namespace xdof
