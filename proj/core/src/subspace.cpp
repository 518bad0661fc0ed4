#include "xdof/subspace.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "xdof/error.hpp"

namespace xdof {
namespace {

CMatrix concat_cols(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows(), a.cols() + b.cols());
  out << a, b;
  return out;
}

// Orthonormal basis of range(basis) minus the span of `remove` (whose
// columns are orthonormal and contained in range(basis)).
CMatrix complement_within(const CMatrix& basis, const CMatrix& remove, const TolerancePolicy& pol) {
  CMatrix residual = basis;
  if (remove.cols() > 0) residual -= remove * (remove.adjoint() * basis);
  if (residual.cols() == 0) return CMatrix(basis.rows(), 0);
  // Columns of residual all have norm <= 1; use an absolute threshold
  // relative to the unit scale of the input basis.
  Eigen::BDCSVD<CMatrix> svd(residual, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double threshold = std::sqrt(pol.rank_rel_tol);
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) r += sv(i) > threshold ? 1 : 0;
  return svd.matrixU().leftCols(r);
}

}  // namespace

GsvdFactors gsvd(const CMatrix& A, const CMatrix& B, const TolerancePolicy& pol) {
  if (A.rows() != B.rows()) throw InvalidInput("gsvd: A and B must have the same row count");
  if (A.size() == 0 || B.size() == 0) throw InvalidInput("gsvd: empty input");
  require_finite(A, "gsvd");
  require_finite(B, "gsvd");
  const int p = static_cast<int>(A.rows());
  const int m = static_cast<int>(A.cols());
  const int n = static_cast<int>(B.cols());

  GsvdFactors f;
  const CMatrix Qa = column_space_basis(A, pol);
  const CMatrix Qb = column_space_basis(B, pol);
  f.r_A = static_cast<int>(Qa.cols());
  f.r_B = static_cast<int>(Qb.cols());
  const CMatrix C = subspace_intersection(Qa, Qb, pol);
  f.s = static_cast<int>(C.cols());
  f.q = f.r_A + f.r_B - f.s;
  f.v_A = f.q - f.r_B;
  f.v_B = f.q - f.r_A;
  f.phi_A = m - f.r_A;
  f.phi_B = n - f.r_B;
  (void)p;

  // Minimum-norm preimages of the common directions lie in the row spaces.
  const CMatrix X = least_squares_solve(A, C, pol);
  const CMatrix Y = least_squares_solve(B, C, pol);

  CMatrix U_A_ov(m, f.s), U_B_ov(n, f.s), W_ov(A.rows(), f.s);
  f.gamma.resize(f.s);
  f.sigma.resize(f.s);
  if (f.s > 0) {
    // Simultaneously diagonalize X^H X and Y^H Y: P^H X^H X P = I and
    // P^H Y^H Y P = Λ. Then A (X P) = C P and B (Y P Λ^{-1/2}) = C P Λ^{-1/2}.
    const CMatrix gx = X.adjoint() * X;
    const CMatrix gy = Y.adjoint() * Y;
    Eigen::LLT<CMatrix> llt(gx);
    if (llt.info() != Eigen::Success) throw FeasibilityFailure("gsvd: overlap Gram matrix not positive definite");
    const CMatrix L = llt.matrixL();
    CMatrix Linv = L.triangularView<Eigen::Lower>().solve(CMatrix::Identity(f.s, f.s));
    CMatrix Mmat = Linv * gy * Linv.adjoint();
    Mmat = 0.5 * (Mmat + Mmat.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<CMatrix> es(Mmat);
    // Eigenvalues ascending; gamma^2 = λ / (1 + λ) is increasing in λ.
    const CMatrix P = Linv.adjoint() * es.eigenvectors();
    const Eigen::VectorXd lambda = es.eigenvalues();
    for (int l = 0; l < f.s; ++l) {
      const double lam = std::max(lambda(l), 0.0);
      f.gamma(l) = std::sqrt(lam / (1.0 + lam));
      f.sigma(l) = std::sqrt(1.0 / (1.0 + lam));
    }
    U_A_ov = X * P;
    const CMatrix YP = Y * P;
    for (int l = 0; l < f.s; ++l) {
      const double lam = std::max(lambda(l), 0.0);
      U_B_ov.col(l) = YP.col(l) / std::sqrt(lam);
      W_ov.col(l) = (C * P.col(l)) / f.gamma(l);
    }
  }

  const CMatrix rowA = column_space_basis(CMatrix(A.adjoint()), pol);
  const CMatrix rowB = column_space_basis(CMatrix(B.adjoint()), pol);
  const CMatrix U_A_nov = complement_within(rowA, U_A_ov, pol);
  const CMatrix U_B_nov = complement_within(rowB, U_B_ov, pol);
  if (U_A_nov.cols() != f.v_A || U_B_nov.cols() != f.v_B) {
    throw FeasibilityFailure("gsvd: inconsistent subspace dimensions (ill-conditioned input)");
  }
  const CMatrix U_A_ns = null_space_basis(A, pol);
  const CMatrix U_B_ns = null_space_basis(B, pol);

  f.U_A.resize(m, m);
  f.U_A << U_A_ov, U_A_nov, U_A_ns;
  f.U_B.resize(n, n);
  f.U_B << U_B_ov, U_B_nov, U_B_ns;

  const CMatrix W_nov_a = A * U_A_nov;
  const CMatrix W_nov_b = B * U_B_nov;
  f.W.resize(A.rows(), f.q);
  f.W << W_nov_b, W_ov, W_nov_a;

  f.C_A = CMatrix::Zero(f.q, m);
  f.C_B = CMatrix::Zero(f.q, n);
  for (int l = 0; l < f.s; ++l) {
    f.C_A(f.v_B + l, l) = f.gamma(l);
    f.C_B(f.v_B + l, l) = f.sigma(l);
  }
  for (int l = 0; l < f.v_A; ++l) f.C_A(f.v_B + f.s + l, f.s + l) = 1.0;
  for (int l = 0; l < f.v_B; ++l) f.C_B(l, f.s + l) = 1.0;
  return f;
}

OverlapPairBasis overlap_pair_basis(const CMatrix& H_k1, const CMatrix& H_k2,
                                    const TolerancePolicy& pol, int target_receiver) {
  if (H_k1.rows() != H_k2.rows()) throw InvalidInput("overlap_pair_basis: row counts differ");
  OverlapPairBasis out;
  out.target_receiver = target_receiver;
  const CMatrix C = subspace_intersection(column_space_basis(H_k1, pol), column_space_basis(H_k2, pol), pol);
  out.s_k = static_cast<int>(C.cols());
  out.omega1 = least_squares_solve(H_k1, C, pol);
  out.omega2 = least_squares_solve(H_k2, C, pol);
  return out;
}

NullSteerBasis null_steer_basis(const CMatrix& H_kj, const TolerancePolicy& pol, int blocked_receiver) {
  NullSteerBasis out;
  out.blocked_receiver = blocked_receiver;
  out.psi = null_space_basis(H_kj, pol);
  out.phi_kj = static_cast<int>(out.psi.cols());
  return out;
}

EmbeddedBases embed_bases(const OverlapPairBasis& omega, int j, const NullSteerBasis& psi, int T) {
  if (j != 1 && j != 2) throw InvalidInput("embed_bases: transmitter index must be 1 or 2");
  if (T < 1) throw InvalidInput("embed_bases: T must be >= 1");
  EmbeddedBases out;
  out.omega_tilde = acs_embed(omega.omega(j));
  out.psi_tilde = acs_embed(psi.psi);
  out.psi_hat = kron_identity(T, out.psi_tilde);
  return out;
}

MixerSet make_mixers(std::array<int, 2> s_for_target, int T, std::uint64_t seed, double min_sv) {
  if (T < 1) throw InvalidInput("make_mixers: T must be >= 1");
  MixerSet out;
  out.seed = seed;
  for (int i = 1; i <= 2; ++i) {
    const int dim = 2 * s_for_target[i - 1];
    if (dim < 0) throw InvalidInput("make_mixers: negative overlap dimension");
    RandomStream rng(seed, 1000 + i);
    for (int n = 0; n < T; ++n) {
      RMatrix m;
      while (true) {
        m = rng.uniform_matrix(dim, dim, -1.0, 1.0);
        if (dim == 0) break;
        if (min_singular_value(m) <= min_sv) continue;
        bool distinct = true;
        for (const auto& prev : out.mixers[i - 1]) distinct = distinct && !(prev == m);
        if (i == 2 && n < static_cast<int>(out.mixers[0].size()) && out.mixers[0][n].rows() == dim) {
          distinct = distinct && !(out.mixers[0][n] == m);
        }
        if (distinct) break;
      }
      out.mixers[i - 1].push_back(std::move(m));
    }
  }
  return out;
}

RMatrix build_extended_overlap(const RMatrix& omega_tilde, const MixerSet& mixers, int target_receiver) {
  if (target_receiver != 1 && target_receiver != 2) {
    throw InvalidInput("build_extended_overlap: receiver index must be 1 or 2");
  }
  const int T = mixers.T();
  const Eigen::Index rows = omega_tilde.rows();
  const Eigen::Index cols = omega_tilde.cols();
  RMatrix out(T * rows, cols);
  for (int n = 0; n < T; ++n) {
    const RMatrix& mix = mixers.mixer(target_receiver, n);
    if (mix.rows() != cols) throw InvalidInput("build_extended_overlap: mixer size mismatch");
    out.middleRows(n * rows, rows) = omega_tilde * mix;
  }
  return out;
}

void real_overlap_pair(const RMatrix& H_k1, const RMatrix& H_k2, const TolerancePolicy& pol,
                       RMatrix& omega1, RMatrix& omega2) {
  if (H_k1.rows() != H_k2.rows()) throw InvalidInput("real_overlap_pair: row counts differ");
  const RMatrix C = subspace_intersection(column_space_basis(H_k1, pol), column_space_basis(H_k2, pol), pol);
  omega1 = least_squares_solve(H_k1, C, pol);
  omega2 = least_squares_solve(H_k2, C, pol);
}

ExtendedSubspaces time_varying_bases(const ExtendedChannelSet& ext, const TolerancePolicy& pol) {
  ExtendedSubspaces out;
  for (int k = 1; k <= 2; ++k) {
    real_overlap_pair(ext.h(k, 1), ext.h(k, 2), pol, out.omega1[k - 1], out.omega2[k - 1]);
    out.s[k - 1] = static_cast<int>(out.omega1[k - 1].cols());
    for (int j = 1; j <= 2; ++j) {
      out.psi[2 * (k - 1) + (j - 1)] = null_space_basis(ext.h(k, j), pol);
      out.phi[2 * (k - 1) + (j - 1)] = static_cast<int>(out.psi[2 * (k - 1) + (j - 1)].cols());
    }
  }
  return out;
}

}  // namespace xdof
