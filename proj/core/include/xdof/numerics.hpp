// Dense matrix kernel: tolerance-aware rank, orthonormal bases of null and
// column spaces, subspace intersection via principal angles, and
// minimum-norm least squares. Every decision is driven by one SVD.
#pragma once

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace xdof {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;

struct TolerancePolicy {
  // Singular values at or below rank_rel_tol * sigma_max count as zero.
  double rank_rel_tol = 1e-10;
  // Residual checks pass when relative error <= residual_tol.
  double residual_tol = 1e-8;

  // Throws InvalidInput unless both values lie in (0, 1).
  void validate() const;
};

// Number of singular values strictly above rank_rel_tol * sigma_max (0 for
// the zero matrix). Throws InvalidInput on empty or non-finite input.
int numerical_rank(const RMatrix& m, const TolerancePolicy& pol = {});
int numerical_rank(const CMatrix& m, const TolerancePolicy& pol = {});

// Orthonormal basis of the right null space; cols(m) - rank(m) columns.
RMatrix null_space_basis(const RMatrix& m, const TolerancePolicy& pol = {});
CMatrix null_space_basis(const CMatrix& m, const TolerancePolicy& pol = {});

// Orthonormal basis of the left null space (columns u with u^H m = 0).
RMatrix left_null_space_basis(const RMatrix& m, const TolerancePolicy& pol = {});
CMatrix left_null_space_basis(const CMatrix& m, const TolerancePolicy& pol = {});

// Orthonormal basis of range(m); rank(m) columns.
RMatrix column_space_basis(const RMatrix& m, const TolerancePolicy& pol = {});
CMatrix column_space_basis(const CMatrix& m, const TolerancePolicy& pol = {});

// Orthonormal basis of range(qa) ∩ range(qb). Inputs must have orthonormal
// columns (checked against residual_tol). Directions whose principal-angle
// cosine is >= 1 - rank_rel_tol form the intersection; they are returned in
// decreasing-cosine order with a lexicographic tie-break on sign-normalized
// coordinates.
RMatrix subspace_intersection(const RMatrix& qa, const RMatrix& qb, const TolerancePolicy& pol = {});
CMatrix subspace_intersection(const CMatrix& qa, const CMatrix& qb, const TolerancePolicy& pol = {});

// Minimum-norm least-squares solution X of m X ≈ rhs (pseudo-inverse with
// the rank threshold of pol).
RMatrix least_squares_solve(const RMatrix& m, const RMatrix& rhs, const TolerancePolicy& pol = {});
CMatrix least_squares_solve(const CMatrix& m, const CMatrix& rhs, const TolerancePolicy& pol = {});

// Smallest of the cols(m) singular values, counting missing ones (cols >
// rows) as zero. Throws InvalidInput when m has no columns.
double min_singular_value(const RMatrix& m);
double min_singular_value(const CMatrix& m);

// Largest singular value (spectral norm); 0 for empty matrices.
double spectral_norm(const RMatrix& m);
double spectral_norm(const CMatrix& m);

// ||q^H q - I||_max, the orthonormality defect of the columns of q.
double orthonormality_defect(const RMatrix& q);
double orthonormality_defect(const CMatrix& q);

// Throws InvalidInput if any entry is NaN or infinite.
void require_finite(const RMatrix& m, const char* what);
void require_finite(const CMatrix& m, const char* what);

// Reproducible random substreams. A stream is fully determined by
// (seed, stream id), so drawing from one stream never perturbs another.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream);

  double uniform(double lo, double hi);
  double gaussian();
  // Circularly-symmetric complex Gaussian with unit variance.
  Complex complex_gaussian();
  std::uint64_t next_u64();
  int uniform_int(int lo, int hi);  // inclusive bounds

  RMatrix gaussian_matrix(int rows, int cols);
  CMatrix complex_gaussian_matrix(int rows, int cols);
  RMatrix uniform_matrix(int rows, int cols, double lo, double hi);

 private:
  std::mt19937_64 engine_;
};

// Mixes (seed, stream) into a well-spread 64-bit value (splitmix64).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace xdof
