#include <cmath>

#include "doctest.h"
#include "xdof/allocator.hpp"
#include "xdof/error.hpp"
#include "xdof/synthesis.hpp"

using namespace xdof;

namespace {

StreamAllocation make_alloc(int T, std::array<int, 4> ia, std::array<int, 4> ns,
                            Side side = Side::kOriginal) {
  StreamAllocation a;
  a.T = T;
  a.ia = ia;
  a.ns = ns;
  a.side = side;
  return a;
}

int passes(const AntennaConfig& cfg, const StreamAllocation& alloc, int trials,
           ExtensionMode mode = ExtensionMode::kConstant) {
  int ok = 0;
  for (int k = 1; k <= trials; ++k) {
    const VerificationReport r = verify_trial(cfg, RankProfile::full(cfg), alloc, k, {}, {}, mode);
    if (r.passed) ++ok;
    else MESSAGE("seed " << k << ": " << r.failure);
  }
  return ok;
}

}  // namespace

TEST_CASE("precoder dimensions") {
  const AntennaConfig cfg{3, 3, 3, 3};
  const ChannelSet ch = generate_full_rank(cfg, 1);
  const MessageBases bases = constant_bases(ch, 3, 7);
  CHECK(bases.T == 3);
  CHECK(bases.omega_hat[0].rows() == 18);
  CHECK(bases.omega_hat[0].cols() == 6);
  const PrecoderSet pre = build_precoders(bases, cfg, make_alloc(3, {6, 6, 6, 6}, {0, 0, 0, 0}));
  for (int m = 0; m < 4; ++m) {
    CHECK(pre.V[m].rows() == 18);
    CHECK(pre.V[m].cols() == 6);
    CHECK(pre.Z[m].cols() == 0);
  }
  CHECK_THROWS_AS(build_precoders(bases, cfg, make_alloc(3, {7, 6, 6, 6}, {0, 0, 0, 0})),
                  InfeasibleAllocation);
  CHECK_THROWS_AS(build_precoders(bases, cfg, make_alloc(3, {0, 0, 0, 0}, {1, 0, 0, 0})),
                  InfeasibleAllocation);
}

TEST_CASE("aligned interference images coincide") {
  const AntennaConfig cfg{3, 3, 3, 3};
  const ChannelSet ch = generate_full_rank(cfg, 2);
  const ExtendedChannelSet ext = extend_constant(ch, 3);
  const MessageBases bases = constant_bases(ch, 3, 9);
  const PrecoderSet pre = build_precoders(bases, cfg, make_alloc(3, {6, 6, 6, 6}, {0, 0, 0, 0}));
  // Messages 21 and 22 align at receiver 1.
  const RMatrix a = ext.h(1, 1) * pre.V[2], b = ext.h(1, 2) * pre.V[3];
  CHECK((a - b).norm() <= 1e-8 * a.norm());
}

TEST_CASE("signal-space matrix layout") {
  const AntennaConfig cfg{4, 4, 3, 3};
  const ChannelSet ch = generate_full_rank(cfg, 3);
  const ExtendedChannelSet ext = extend_constant(ch, 3);
  const PrecoderSet pre = build_precoders(constant_bases(ch, 3, 4), cfg,
                                          make_alloc(3, {6, 6, 0, 6}, {0, 0, 0, 6}));
  const SignalSpaceMatrix g1 = assemble_G(1, ext, pre);
  CHECK(g1.G.rows() == 18);
  CHECK(g1.G.cols() == 6 + 6 + 6);  // own IA streams plus the wider aligned image
  int total = 0;
  for (const auto& [label, count] : g1.blocks) total += count;
  CHECK(total == g1.G.cols());
  const SignalSpaceMatrix g2 = assemble_G(2, ext, pre);
  CHECK(g2.G.cols() == 6 + 6 + 6);
}

TEST_CASE("verification on symmetric designs") {
  CHECK(passes({3, 3, 3, 3}, make_alloc(3, {6, 6, 6, 6}, {0, 0, 0, 0}), 5) == 5);
  CHECK(passes({6, 6, 3, 3}, make_alloc(1, {0, 0, 0, 0}, {3, 3, 3, 3}), 5) == 5);
  CHECK(passes({4, 4, 3, 3}, make_alloc(3, {6, 6, 0, 6}, {0, 0, 0, 6}), 5) == 5);
  CHECK(passes({7, 7, 3, 3}, make_alloc(1, {0, 0, 0, 0}, {6, 0, 0, 6}), 5) == 5);
  const VerificationReport r =
      verify_trial({3, 3, 3, 3}, RankProfile::full({3, 3, 3, 3}), make_alloc(3, {6, 6, 6, 6}, {0, 0, 0, 0}), 11);
  CHECK(r.seed == 11);
  CHECK(r.achieved_dof == Rational(4));
  CHECK(r.max_zero_forcing_residual <= 1e-8);
  CHECK(r.min_G_singular_value[0] > 1e-6);
  CHECK(r.failure.empty());
}

TEST_CASE("verification through the reciprocal network") {
  const AntennaConfig cfg{2, 2, 5, 5};
  const AllocationResult best = sweep_best(cfg, RankProfile::full(cfg), MessageMask::x(), {1, 1, 1, 1});
  REQUIRE(best.best.side == Side::kReciprocal);
  CHECK(passes(cfg, best.best, 5) == 5);
  // The same counts on the original side have no subspace to live in.
  StreamAllocation original = best.best;
  original.side = Side::kOriginal;
  const VerificationReport r = verify_trial(cfg, RankProfile::full(cfg), original, 1);
  CHECK_FALSE(r.passed);
  CHECK_FALSE(r.failure.empty());
}

TEST_CASE("over-allocation is reported, not thrown") {
  const VerificationReport r = verify_trial({3, 3, 3, 3}, RankProfile::full({3, 3, 3, 3}),
                                            make_alloc(1, {3, 3, 3, 3}, {0, 0, 0, 0}), 1);
  CHECK_FALSE(r.passed);
  CHECK_FALSE(r.failure.empty());
}

TEST_CASE("interference-channel mask with rank-deficient cross links") {
  const AntennaConfig cfg{3, 3, 3, 3};
  const RankProfile ranks = RankProfile::parse("3,0,0,3");
  const AllocationResult best = sweep_best(cfg, ranks, MessageMask::ic(), {1, 1, 1, 1});
  CHECK(best.dof == Rational(6));
  CHECK(best.best.ia[0] + best.best.ia[3] == 0);
  for (int k = 1; k <= 5; ++k) {
    const VerificationReport r = verify_trial(cfg, ranks, best.best, k);
    CHECK(r.passed);
    CHECK(r.achieved_dof == best.dof);
  }
}

TEST_CASE("reciprocal transfer") {
  const AntennaConfig cfg{5, 5, 2, 2};
  const ChannelSet ch = generate_full_rank(cfg, 5);
  const DesignOutcome d = design_and_verify(ch, make_alloc(1, {0, 0, 0, 0}, {2, 2, 2, 2}), 3);
  REQUIRE(d.report.passed);
  const auto [pre, rec] = reciprocal_transfer(d.precoders, d.receivers);
  CHECK(pre.config == cfg.reciprocal());
  CHECK(pre.allocation == d.precoders.allocation.relabeled_reciprocal());
  for (int m = 0; m < 4; ++m) {
    const int rm = reciprocal_message(m);
    CHECK(numerical_rank(pre.Z[rm]) == numerical_rank(d.receivers.F[m]));
  }
  const VerificationReport r = verify_feasibility(reciprocal(d.ext), pre, rec);
  CHECK(r.passed);
  const auto [pre2, rec2] = reciprocal_transfer(pre, rec);
  for (int m = 0; m < 4; ++m) {
    CHECK(pre2.Z[m] == d.precoders.Z[m]);
    CHECK(rec2.F[m] == d.receivers.F[m]);
  }
}

TEST_CASE("time-varying extension designs") {
  CHECK(passes({3, 3, 3, 3}, make_alloc(3, {6, 6, 6, 6}, {0, 0, 0, 0}), 3, ExtensionMode::kTimeVarying) == 3);
  CHECK(passes({6, 6, 3, 3}, make_alloc(2, {0, 0, 0, 0}, {6, 6, 6, 6}), 3, ExtensionMode::kTimeVarying) == 3);
}

TEST_CASE("stacked phase matrix") {
  const RMatrix D = lemma16_matrix(2, 1, 3, 4, 1);
  CHECK(D.rows() == 12);
  CHECK(D.cols() == 8);
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    CHECK(lemma16_check(2, 1, 3, 4, seed));
    CHECK(lemma16_check(1, 1, 1, 1, seed));
  }
  CHECK_FALSE(lemma16_check(1, 1, 1, 1, 1, 0.0));
  CHECK_FALSE(lemma16_check(1, 1, 1, 1, 2, M_PI));
  CHECK(lemma16_check(1, 1, 1, 1, 3, M_PI / 2));
}
