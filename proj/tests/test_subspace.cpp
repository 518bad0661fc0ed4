#include "doctest.h"
#include "oracles.hpp"
#include "xdof/channel.hpp"
#include "xdof/error.hpp"
#include "xdof/subspace.hpp"

using namespace xdof;

namespace {

void check_gsvd_invariants(const CMatrix& A, const CMatrix& B) {
  const GsvdFactors f = gsvd(A, B);
  const double scale = std::max(A.norm(), B.norm());
  CHECK((f.W * f.C_A * f.U_A.adjoint() - A).norm() <= 1e-8 * scale);
  CHECK((f.W * f.C_B * f.U_B.adjoint() - B).norm() <= 1e-8 * scale);
  CHECK(orthonormality_defect(f.U_A) < 1e-10);
  CHECK(orthonormality_defect(f.U_B) < 1e-10);
  const CMatrix sum = f.C_A * f.C_A.adjoint() + f.C_B * f.C_B.adjoint();
  CHECK((sum - CMatrix::Identity(f.q, f.q)).norm() < 1e-10);
  CHECK(numerical_rank(f.W) == f.q);
  CHECK(f.r_A == numerical_rank(A));
  CHECK(f.r_B == numerical_rank(B));
  CHECK(f.phi_A == A.cols() - f.r_A);
  CHECK(f.phi_B == B.cols() - f.r_B);
  CHECK(f.s + f.v_A == f.r_A);
  CHECK(f.s + f.v_B == f.r_B);
  CHECK(f.v_B + f.s + f.v_A == f.q);
  CMatrix cat(A.rows(), A.cols() + B.cols());
  cat << A, B;
  CHECK(f.q == numerical_rank(cat));
  CHECK(f.s == f.r_A + f.r_B - f.q);
  for (int l = 0; l < f.s; ++l) {
    CHECK(f.gamma(l) > 0.0);
    CHECK(f.gamma(l) < 1.0);
    CHECK(std::abs(f.gamma(l) * f.gamma(l) + f.sigma(l) * f.sigma(l) - 1.0) < 1e-12);
    if (l > 0) CHECK(f.gamma(l) >= f.gamma(l - 1));
  }
  if (f.phi_A > 0) CHECK((A * f.U_A_ns()).norm() <= 1e-8 * scale);
  if (f.phi_B > 0) CHECK((B * f.U_B_ns()).norm() <= 1e-8 * scale);
  // The overlap segment of W lies in both column spaces.
  if (f.s > 0) {
    const CMatrix qa = column_space_basis(A), qb = column_space_basis(B);
    const CMatrix w = f.W_ov();
    CHECK((w - qa * (qa.adjoint() * w)).norm() <= 1e-8 * w.norm());
    CHECK((w - qb * (qb.adjoint() * w)).norm() <= 1e-8 * w.norm());
  }
}

}  // namespace

TEST_CASE("joint decomposition of identity pair") {
  const CMatrix id = CMatrix::Identity(2, 2);
  const GsvdFactors f = gsvd(id, id);
  CHECK(f.q == 2);
  CHECK(f.s == 2);
  CHECK(f.v_A == 0);
  CHECK(f.phi_A == 0);
  check_gsvd_invariants(id, id);
}

TEST_CASE("joint decomposition of random 3x2 pair") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    RandomStream rng(seed, 20);
    const CMatrix A = rng.complex_gaussian_matrix(3, 2);
    const CMatrix B = rng.complex_gaussian_matrix(3, 2);
    const GsvdFactors f = gsvd(A, B);
    CHECK(f.s == 1);
    CHECK(f.v_A == 1);
    CHECK(f.v_B == 1);
    CHECK(f.q == 3);
    check_gsvd_invariants(A, B);
  }
}

TEST_CASE("joint decomposition with a zero column") {
  RandomStream rng(3, 21);
  CMatrix A = rng.complex_gaussian_matrix(3, 2);
  A.col(1).setZero();
  const CMatrix B = rng.complex_gaussian_matrix(3, 2);
  const GsvdFactors f = gsvd(A, B);
  CHECK(f.phi_A == 1);
  CHECK(f.r_A == 1);
  check_gsvd_invariants(A, B);
}

TEST_CASE("joint decomposition reconstruction on random shapes") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    RandomStream rng(seed, 22);
    const int p = rng.uniform_int(1, 5), m = rng.uniform_int(1, 5), n = rng.uniform_int(1, 5);
    const int ra = rng.uniform_int(0, std::min(p, m)), rb = rng.uniform_int(0, std::min(p, n));
    const CMatrix A = rng.complex_gaussian_matrix(p, ra) * rng.complex_gaussian_matrix(ra, m);
    const CMatrix B = rng.complex_gaussian_matrix(p, rb) * rng.complex_gaussian_matrix(rb, n);
    if (ra + rb == 0) continue;
    check_gsvd_invariants(A, B);
  }
}

TEST_CASE("overlap pair dimensions") {
  struct Case { int N, M1, M2, s; };
  for (const Case c : {Case{3, 3, 3, 3}, Case{3, 2, 2, 1}, Case{6, 3, 3, 0}, Case{2, 5, 5, 2},
                       Case{4, 3, 3, 2}}) {
    RandomStream rng(c.N * 100 + c.M1, 23);
    const CMatrix h1 = rng.complex_gaussian_matrix(c.N, c.M1);
    const CMatrix h2 = rng.complex_gaussian_matrix(c.N, c.M2);
    const OverlapPairBasis o = overlap_pair_basis(h1, h2, {}, 2);
    CHECK(o.s_k == c.s);
    CHECK(o.target_receiver == 2);
    CHECK(o.omega1.cols() == c.s);
    CHECK(o.omega2.cols() == c.s);
    if (c.s > 0) {
      CHECK((h1 * o.omega1 - h2 * o.omega2).norm() <= 1e-8 * (h1 * o.omega1).norm());
      CHECK(numerical_rank(CMatrix(h1 * o.omega1)) == c.s);
    }
  }
}

TEST_CASE("null steering dimensions") {
  struct Case { int N, M, phi; };
  for (const Case c : {Case{3, 6, 3}, Case{3, 3, 0}, Case{3, 5, 2}, Case{4, 1, 0}}) {
    RandomStream rng(c.N * 10 + c.M, 24);
    const CMatrix h = rng.complex_gaussian_matrix(c.N, c.M);
    const NullSteerBasis ns = null_steer_basis(h, {}, 1);
    CHECK(ns.phi_kj == c.phi);
    CHECK(ns.psi.rows() == c.M);
    if (c.phi > 0) {
      CHECK((h * ns.psi).norm() < 1e-10 * h.norm());
      CHECK(orthonormality_defect(ns.psi) < 1e-12);
    }
  }
  // A rank-one 3x4 link leaves three null directions.
  RandomStream rng(5, 25);
  const CMatrix low = rng.complex_gaussian_matrix(3, 1) * rng.complex_gaussian_matrix(1, 4);
  CHECK(null_steer_basis(low).phi_kj == 3);
}

TEST_CASE("embedded bases and mixers") {
  RandomStream rng(6, 26);
  const CMatrix h1 = rng.complex_gaussian_matrix(3, 3), h2 = rng.complex_gaussian_matrix(3, 3);
  const OverlapPairBasis o = overlap_pair_basis(h1, h2, {}, 2);
  const CMatrix h3 = rng.complex_gaussian_matrix(2, 3);
  const NullSteerBasis ns = null_steer_basis(h3, {}, 2);
  const EmbeddedBases e = embed_bases(o, 1, ns, 3);
  CHECK(e.omega_tilde.rows() == 6);
  CHECK(e.omega_tilde.cols() == 6);
  CHECK(e.omega_tilde == acs_embed(o.omega1));
  CHECK(e.psi_tilde.cols() == 2);
  CHECK(e.psi_hat.rows() == 18);
  CHECK(e.psi_hat.cols() == 6);
  CHECK(e.psi_hat == kron_identity(3, e.psi_tilde));

  const MixerSet mx = make_mixers({3, 1}, 4, 99);
  CHECK(mx.T() == 4);
  for (int n = 0; n < 4; ++n) {
    CHECK(mx.mixer(1, n).rows() == 6);
    CHECK(mx.mixer(2, n).rows() == 2);
    CHECK(min_singular_value(mx.mixer(1, n)) > 1e-6);
    CHECK(mx.mixer(1, n).cwiseAbs().maxCoeff() <= 1.0);
    for (int m = 0; m < n; ++m) CHECK(mx.mixer(1, n) != mx.mixer(1, m));
  }
  CHECK(make_mixers({3, 1}, 4, 99).mixer(1, 2) == mx.mixer(1, 2));

  // Both transmitters serving receiver 1 share the mixers, so the stacked
  // images stay paired at the overlap receiver.
  const MixerSet m2 = make_mixers({3, 3}, 3, 5);
  const RMatrix w1 = build_extended_overlap(acs_embed(o.omega1), m2, 1);
  const RMatrix w2 = build_extended_overlap(acs_embed(o.omega2), m2, 1);
  CHECK(w1.rows() == 18);
  CHECK(w1.cols() == 6);
  const RMatrix img1 = kron_identity(3, acs_embed(h1)) * w1;
  const RMatrix img2 = kron_identity(3, acs_embed(h2)) * w2;
  CHECK((img1 - img2).norm() <= 1e-8 * img1.norm());
}

TEST_CASE("time-varying bases") {
  const AntennaConfig cfg{3, 3, 2, 2};
  std::vector<ChannelSet> snaps;
  for (int t = 0; t < 2; ++t) snaps.push_back(generate_full_rank(cfg, 30 + t));
  const ExtendedChannelSet ext = extend_time_varying(snaps);
  const ExtendedSubspaces sub = time_varying_bases(ext);
  // Per slot: s = 2 + 2 - 2 = 2 complex dimensions, 4 real, over 2 slots.
  CHECK(sub.s[0] == 8);
  CHECK(sub.s[1] == 8);
  for (int k = 1; k <= 2; ++k) {
    const RMatrix a = ext.h(k, 1) * sub.omega(k, 1), b = ext.h(k, 2) * sub.omega(k, 2);
    CHECK((a - b).norm() <= 1e-8 * a.norm());
    for (int j = 1; j <= 2; ++j) {
      CHECK(sub.phi[2 * (k - 1) + (j - 1)] == 4);
      CHECK((ext.h(k, j) * sub.psi_at(k, j)).norm() < 1e-9 * ext.h(k, j).norm());
    }
  }
}
