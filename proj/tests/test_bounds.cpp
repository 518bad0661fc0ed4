#include "doctest.h"
#include "oracles.hpp"
#include "xdof/bounds.hpp"
#include "xdof/error.hpp"

using namespace xdof;

namespace {

const std::array<Rational, 4> kUnit{1, 1, 1, 1};

std::vector<AntennaConfig> grid(int lo, int hi) {
  std::vector<AntennaConfig> out;
  for (int a = lo; a <= hi; ++a)
    for (int b = lo; b <= hi; ++b)
      for (int c = lo; c <= hi; ++c)
        for (int d = lo; d <= hi; ++d) out.push_back({a, b, c, d});
  return out;
}

}  // namespace

TEST_CASE("outer regions have the documented constraints") {
  const DofRegion x = x_outer_region({3, 3, 3, 3});
  CHECK(x.constraints.size() == 8);
  const DofRegion z = z_outer_region({1, 2, 3, 4}, 2, 1);
  CHECK(z.constraints.size() == 6);
  DoFPoint ok{Rational(1), Rational(1), Rational(0), Rational(1)};
  CHECK(z.contains(ok));
  DoFPoint bad{Rational(0), Rational(0), Rational(1, 2), Rational(0)};
  CHECK_FALSE(z.contains(bad));  // message 21 is absent
  const DoFPoint one{Rational(1), Rational(1), Rational(1), Rational(1)};
  CHECK(x.contains(one));
  const DoFPoint too_much{Rational(2), Rational(2), Rational(0), Rational(0)};
  CHECK_FALSE(x.contains(too_much));
}

TEST_CASE("weighted outer-bound LP examples") {
  CHECK(lp_max_weighted(x_outer_region({3, 3, 3, 3}), kUnit).value == Rational(4));
  CHECK(lp_max_weighted(x_outer_region({1, 1, 1, 1}), kUnit).value == Rational(4, 3));
  CHECK(lp_max_weighted(z_outer_region({3, 3, 3, 3}, 2, 1), kUnit).value == Rational(3));
  const WeightedOptimum w = lp_max_weighted(x_outer_region({2, 2, 5, 5}), kUnit);
  CHECK(w.value == Rational(4));
  CHECK(x_outer_region({2, 2, 5, 5}).contains(w.argmax));
  // Single-message weights reduce to the point-to-point cap min(N_i, M_j).
  const std::array<Rational, 4> only12{0, 1, 0, 0};
  CHECK(lp_max_weighted(x_outer_region({2, 5, 3, 4}), only12).value == Rational(3));
  CHECK_THROWS_AS(lp_max_weighted(x_outer_region({1, 1, 1, 1}), {0, 0, 0, 0}), InvalidInput);
  CHECK_THROWS_AS(lp_max_weighted(x_outer_region({1, 1, 1, 1}), {-1, 1, 1, 1}), InvalidInput);
}

TEST_CASE("closed-form X total equals the region optimum") {
  for (const AntennaConfig& cfg : grid(1, 6)) {
    const DofRegion region = x_outer_region(cfg);
    const Rational closed = x_total_outer(cfg);
    CHECK(closed == lp_max_weighted(region, kUnit).value);
  }
  // The vertex-enumeration oracle on a subgrid.
  for (const AntennaConfig& cfg : grid(1, 3)) {
    CHECK(x_total_outer(cfg) == oracle::vertex_lp(x_outer_region(cfg), kUnit));
  }
}

TEST_CASE("closed-form Z totals equal the region optimum") {
  for (const AntennaConfig& cfg : grid(1, 5)) {
    for (int i = 1; i <= 2; ++i)
      for (int j = 1; j <= 2; ++j) {
        CHECK(z_total_outer(cfg, i, j) == lp_max_weighted(z_outer_region(cfg, i, j), kUnit).value);
      }
  }
  for (const AntennaConfig& cfg : grid(1, 3)) {
    CHECK(z_total_outer(cfg, 1, 2) == oracle::vertex_lp(z_outer_region(cfg, 1, 2), kUnit));
  }
}

TEST_CASE("weighted LP matches vertex enumeration with random weights") {
  RandomStream rng(12, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const AntennaConfig cfg{rng.uniform_int(1, 5), rng.uniform_int(1, 5), rng.uniform_int(1, 5),
                            rng.uniform_int(1, 5)};
    std::array<Rational, 4> w;
    for (auto& x : w) x = Rational(rng.uniform_int(0, 4));
    w[rng.uniform_int(0, 3)] = Rational(rng.uniform_int(1, 4));
    CHECK(lp_max_weighted(x_outer_region(cfg), w).value == oracle::vertex_lp(x_outer_region(cfg), w));
  }
}

TEST_CASE("outer bounds are symmetric under reciprocity") {
  for (const AntennaConfig& cfg : grid(1, 4)) {
    CHECK(x_total_outer(cfg) == x_total_outer(cfg.reciprocal()));
  }
}

TEST_CASE("rank-deficient closed forms") {
  CHECK(closed_form_rank_deficient(RankFamily::kX, 4, 2, 2) == Rational(8));
  CHECK(closed_form_rank_deficient(RankFamily::kIC, 3, 2, 2) == Rational(4));
  CHECK(closed_form_rank_deficient(RankFamily::kBC, 3, 1, 1) == Rational(2));
  CHECK(closed_form_rank_deficient(RankFamily::kX, 3, 0, 0) == Rational(0));
  // The two X branches agree where they meet.
  for (int M = 1; M <= 8; ++M) {
    for (int rc = 0; rc <= M; ++rc) {
      const int rd = M - rc;
      CHECK(closed_form_rank_deficient(RankFamily::kX, M, rc, rd) == Rational(2 * M));
    }
  }
  // Full-rank X with M everywhere gives 4M/3.
  CHECK(closed_form_rank_deficient(RankFamily::kX, 3, 3, 3) == x_total_outer({3, 3, 3, 3}));
  CHECK_THROWS_AS(closed_form_rank_deficient(RankFamily::kX, 3, 4, 0), InvalidInput);
  CHECK_THROWS_AS(closed_form_rank_deficient(RankFamily::kIC, 0, 0, 0), InvalidInput);
}
