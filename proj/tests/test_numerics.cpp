#include <cmath>
#include <limits>

#include "doctest.h"
#include "oracles.hpp"
#include "xdof/error.hpp"
#include "xdof/numerics.hpp"

using namespace xdof;

TEST_CASE("numerical rank") {
  CHECK(numerical_rank(RMatrix(RMatrix::Identity(3, 3))) == 3);
  CHECK(numerical_rank(RMatrix(RMatrix::Zero(2, 4))) == 0);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    RandomStream rng(seed, 0);
    const RMatrix m = rng.gaussian_matrix(4, 2) * rng.gaussian_matrix(2, 5);
    CHECK(numerical_rank(m) == 2);
    CHECK(oracle::minor_rank(m) == 2);
  }
  RandomStream rng(3, 0);
  const CMatrix c = rng.complex_gaussian_matrix(5, 3) * rng.complex_gaussian_matrix(3, 6);
  CHECK(numerical_rank(c) == 3);
  RMatrix bad = RMatrix::Identity(2, 2);
  bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(numerical_rank(bad), InvalidInput);
  CHECK_THROWS_AS(numerical_rank(RMatrix(0, 3)), InvalidInput);
}

TEST_CASE("tolerance policy validation") {
  TolerancePolicy ok;
  CHECK_NOTHROW(ok.validate());
  TolerancePolicy bad;
  bad.rank_rel_tol = 0.0;
  CHECK_THROWS_AS(bad.validate(), InvalidInput);
  bad.rank_rel_tol = 1e-10;
  bad.residual_tol = 2.0;
  CHECK_THROWS_AS(bad.validate(), InvalidInput);
}

TEST_CASE("null space basis") {
  CHECK(null_space_basis(RMatrix(RMatrix::Identity(3, 3))).cols() == 0);
  RMatrix row(1, 2);
  row << 1, 0;
  const RMatrix e = null_space_basis(row);
  REQUIRE(e.cols() == 1);
  CHECK(std::abs(std::abs(e(1, 0)) - 1.0) < 1e-12);
  CHECK(std::abs(e(0, 0)) < 1e-12);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    RandomStream rng(seed, 1);
    const RMatrix m = rng.gaussian_matrix(2, 4);
    const RMatrix n = null_space_basis(m);
    REQUIRE(n.cols() == 2);
    CHECK((m * n).norm() <= 1e-8 * m.norm());
    CHECK(orthonormality_defect(n) < 1e-12);
    const CMatrix cm = rng.complex_gaussian_matrix(3, 5);
    const CMatrix cn = null_space_basis(cm);
    REQUIRE(cn.cols() == 2);
    CHECK((cm * cn).norm() <= 1e-8 * cm.norm());
  }
}

TEST_CASE("left null space basis") {
  RandomStream rng(9, 2);
  const RMatrix m = rng.gaussian_matrix(5, 2);
  const RMatrix u = left_null_space_basis(m);
  REQUIRE(u.cols() == 3);
  CHECK((u.transpose() * m).norm() < 1e-10);
  CHECK(orthonormality_defect(u) < 1e-12);
}

TEST_CASE("column space basis") {
  const RMatrix id = RMatrix::Identity(3, 3);
  const RMatrix q = column_space_basis(id);
  CHECK(q.cols() == 3);
  CHECK((oracle::projector(q) - id).norm() < 1e-12);
  CHECK(column_space_basis(RMatrix(RMatrix::Zero(3, 2))).cols() == 0);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    RandomStream rng(seed, 3);
    const RMatrix a = rng.gaussian_matrix(4, 2);
    const RMatrix m = a * rng.gaussian_matrix(2, 4);
    const RMatrix b = column_space_basis(m);
    REQUIRE(b.cols() == 2);
    // Projector comparison against the range of the left factor.
    const RMatrix pa = a * (a.transpose() * a).inverse() * a.transpose();
    CHECK((oracle::projector(b) - pa).norm() < 1e-9);
  }
}

TEST_CASE("subspace intersection") {
  const RMatrix id = RMatrix::Identity(3, 3);
  CHECK(subspace_intersection(id, id).cols() == 3);
  RMatrix e1(2, 1), e2(2, 1);
  e1 << 1, 0;
  e2 << 0, 1;
  CHECK(subspace_intersection(e1, e2).cols() == 0);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    RandomStream rng(seed, 4);
    const RMatrix qa = column_space_basis(rng.gaussian_matrix(3, 2));
    const RMatrix qb = column_space_basis(rng.gaussian_matrix(3, 2));
    RMatrix cat(3, 4);
    cat << qa, qb;
    const int expected = 2 + 2 - numerical_rank(cat);
    const RMatrix x = subspace_intersection(qa, qb);
    REQUIRE(x.cols() == expected);
    CHECK(orthonormality_defect(x) < 1e-10);
    CHECK((x - oracle::projector(qa) * x).norm() < 1e-8);
    CHECK((x - oracle::projector(qb) * x).norm() < 1e-8);
  }
  RMatrix skew(2, 1);
  skew << 1, 1;
  CHECK_THROWS_AS(subspace_intersection(skew, e2), InvalidInput);
}

TEST_CASE("least squares") {
  const RMatrix id = RMatrix::Identity(3, 3);
  RandomStream rng(5, 5);
  const RMatrix rhs = rng.gaussian_matrix(3, 2);
  CHECK((least_squares_solve(id, rhs) - rhs).norm() < 1e-12);
  const RMatrix tall = rng.gaussian_matrix(6, 3);
  const RMatrix x0 = rng.gaussian_matrix(3, 2);
  CHECK((least_squares_solve(tall, tall * x0) - x0).norm() < 1e-9);
  // Rank-deficient: the residual is the projection of rhs onto the
  // complement of the range.
  const RMatrix a = rng.gaussian_matrix(5, 2);
  const RMatrix m = a * rng.gaussian_matrix(2, 4);
  const RMatrix b = rng.gaussian_matrix(5, 1);
  const RMatrix x = least_squares_solve(m, b);
  const RMatrix q = column_space_basis(a);
  const RMatrix expected = b - oracle::projector(q) * b;
  CHECK(((b - m * x) - expected).norm() < 1e-9);
  // Minimum norm: the solution lies in the row space.
  const RMatrix n = null_space_basis(m);
  CHECK((n.transpose() * x).norm() < 1e-9);
}

TEST_CASE("singular values and norms") {
  CHECK(min_singular_value(RMatrix(RMatrix::Identity(4, 4))) == doctest::Approx(1.0));
  CHECK(min_singular_value(RMatrix(RMatrix::Zero(3, 3))) == doctest::Approx(0.0));
  RandomStream rng(6, 6);
  const RMatrix q = column_space_basis(rng.gaussian_matrix(5, 3));
  CHECK(min_singular_value(q) == doctest::Approx(1.0));
  CHECK(spectral_norm(q) == doctest::Approx(1.0));
  RMatrix d = RMatrix::Zero(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = -5.0;
  CHECK(spectral_norm(d) == doctest::Approx(5.0));
}

TEST_CASE("random streams are reproducible and independent") {
  RandomStream a(42, 7), b(42, 7), c(42, 8);
  const RMatrix ma = a.gaussian_matrix(3, 3), mb = b.gaussian_matrix(3, 3), mc = c.gaussian_matrix(3, 3);
  CHECK(ma == mb);
  CHECK(ma != mc);
  RandomStream u(1, 1);
  for (int k = 0; k < 1000; ++k) {
    const double v = u.uniform(-1.0, 1.0);
    CHECK(v >= -1.0);
    CHECK(v <= 1.0);
    const int i = u.uniform_int(2, 4);
    CHECK(i >= 2);
    CHECK(i <= 4);
  }
  CHECK(derive_seed(1, 2) != derive_seed(2, 1));
  CHECK(derive_seed(1, 2) == derive_seed(1, 2));
}
