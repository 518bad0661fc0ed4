#include "xdof/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "xdof/error.hpp"

namespace xdof {
namespace {

template <class Mat>
using SvdOf = Eigen::BDCSVD<Mat>;

template <class Mat>
void check_input(const Mat& m, const char* what) {
  if (m.size() == 0) throw InvalidInput(std::string(what) + ": empty matrix");
  require_finite(m, what);
}

template <class Vec>
int rank_from_values(const Vec& sv, double rel_tol) {
  if (sv.size() == 0 || sv(0) <= 0.0) return 0;
  const double threshold = rel_tol * sv(0);
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) r += sv(i) > threshold ? 1 : 0;
  return r;
}

template <class Mat>
int rank_impl(const Mat& m, const TolerancePolicy& pol) {
  check_input(m, "numerical_rank");
  SvdOf<Mat> svd(m);
  return rank_from_values(svd.singularValues(), pol.rank_rel_tol);
}

template <class Mat>
Mat null_space_impl(const Mat& m, const TolerancePolicy& pol) {
  check_input(m, "null_space_basis");
  SvdOf<Mat> svd(m, Eigen::ComputeFullV);
  const int r = rank_from_values(svd.singularValues(), pol.rank_rel_tol);
  return svd.matrixV().rightCols(m.cols() - r);
}

template <class Mat>
Mat left_null_space_impl(const Mat& m, const TolerancePolicy& pol) {
  if (m.rows() == 0) return Mat(0, 0);
  if (m.cols() == 0) return Mat::Identity(m.rows(), m.rows());
  require_finite(m, "left_null_space_basis");
  SvdOf<Mat> svd(m, Eigen::ComputeFullU);
  const int r = rank_from_values(svd.singularValues(), pol.rank_rel_tol);
  return svd.matrixU().rightCols(m.rows() - r);
}

template <class Mat>
Mat column_space_impl(const Mat& m, const TolerancePolicy& pol) {
  if (m.cols() == 0) return Mat(m.rows(), 0);
  check_input(m, "column_space_basis");
  SvdOf<Mat> svd(m, Eigen::ComputeThinU);
  const int r = rank_from_values(svd.singularValues(), pol.rank_rel_tol);
  return svd.matrixU().leftCols(r);
}

// Rotates a column so its first entry of (near-)maximal magnitude is real
// and positive. Makes sign/phase-ambiguous basis vectors canonical.
template <class Vec>
void normalize_phase(Vec&& v) {
  using Scalar = typename std::decay_t<Vec>::Scalar;
  double vmax = v.cwiseAbs().maxCoeff();
  if (vmax == 0.0) return;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) >= 0.5 * vmax) {
      Scalar phase = v(i) / Scalar(std::abs(v(i)));
      v /= phase;
      return;
    }
  }
}

template <class Scalar>
bool lex_less(const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& a,
              const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& b, double tol) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    double ar = std::real(a(i)), br = std::real(b(i));
    if (std::abs(ar - br) > tol) return ar > br;
    double ai = std::imag(a(i)), bi = std::imag(b(i));
    if (std::abs(ai - bi) > tol) return ai > bi;
  }
  return false;
}

template <class Mat>
Mat intersection_impl(const Mat& qa, const Mat& qb, const TolerancePolicy& pol) {
  using Scalar = typename Mat::Scalar;
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  if (qa.rows() != qb.rows()) throw InvalidInput("subspace_intersection: row counts differ");
  if (qa.cols() == 0 || qb.cols() == 0) return Mat(qa.rows(), 0);
  require_finite(qa, "subspace_intersection");
  require_finite(qb, "subspace_intersection");
  if (orthonormality_defect(qa) > pol.residual_tol || orthonormality_defect(qb) > pol.residual_tol) {
    throw InvalidInput("subspace_intersection: inputs must have orthonormal columns");
  }
  Mat cross = qa.adjoint() * qb;
  SvdOf<Mat> svd(cross, Eigen::ComputeFullU);
  const auto& cosines = svd.singularValues();
  int s = 0;
  while (s < cosines.size() && cosines(s) >= 1.0 - pol.rank_rel_tol) ++s;
  Mat basis = qa * svd.matrixU().leftCols(s);
  // qa * U is orthonormal already; only fix each column's sign/phase.
  for (int c = 0; c < s; ++c) normalize_phase(basis.col(c));
  // Stable order: decreasing cosine, ties broken lexicographically.
  std::vector<int> order(s);
  std::iota(order.begin(), order.end(), 0);
  const double tie = std::sqrt(pol.rank_rel_tol);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (std::abs(cosines(a) - cosines(b)) > pol.rank_rel_tol) return cosines(a) > cosines(b);
    Vec va = basis.col(a), vb = basis.col(b);
    return lex_less<Scalar>(va, vb, tie);
  });
  Mat out(qa.rows(), s);
  for (int c = 0; c < s; ++c) out.col(c) = basis.col(order[c]);
  return out;
}

template <class Mat>
Mat least_squares_impl(const Mat& m, const Mat& rhs, const TolerancePolicy& pol) {
  if (m.rows() != rhs.rows()) throw InvalidInput("least_squares_solve: row counts differ");
  if (m.cols() == 0) return Mat(0, rhs.cols());
  if (rhs.cols() == 0) return Mat(m.cols(), 0);
  require_finite(m, "least_squares_solve");
  require_finite(rhs, "least_squares_solve");
  SvdOf<Mat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const int r = rank_from_values(sv, pol.rank_rel_tol);
  Mat utb = svd.matrixU().leftCols(r).adjoint() * rhs;
  for (int i = 0; i < r; ++i) utb.row(i) /= sv(i);
  return svd.matrixV().leftCols(r) * utb;
}

template <class Mat>
double min_sv_impl(const Mat& m) {
  if (m.cols() == 0) throw InvalidInput("min_singular_value: matrix has no columns");
  if (m.rows() < m.cols()) return 0.0;
  require_finite(m, "min_singular_value");
  SvdOf<Mat> svd(m);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

template <class Mat>
double norm_impl(const Mat& m) {
  if (m.size() == 0) return 0.0;
  SvdOf<Mat> svd(m);
  return svd.singularValues()(0);
}

template <class Mat>
double defect_impl(const Mat& q) {
  if (q.cols() == 0) return 0.0;
  Mat g = q.adjoint() * q;
  g -= Mat::Identity(q.cols(), q.cols());
  return g.cwiseAbs().maxCoeff();
}

}  // namespace

void TolerancePolicy::validate() const {
  auto ok = [](double v) { return std::isfinite(v) && v > 0.0 && v < 1.0; };
  if (!ok(rank_rel_tol) || !ok(residual_tol)) {
    throw InvalidInput("TolerancePolicy: tolerances must lie strictly between 0 and 1");
  }
}

void require_finite(const RMatrix& m, const char* what) {
  if (!m.allFinite()) throw InvalidInput(std::string(what) + ": non-finite entry");
}
void require_finite(const CMatrix& m, const char* what) {
  if (!m.real().allFinite() || !m.imag().allFinite()) {
    throw InvalidInput(std::string(what) + ": non-finite entry");
  }
}

int numerical_rank(const RMatrix& m, const TolerancePolicy& pol) { return rank_impl(m, pol); }
int numerical_rank(const CMatrix& m, const TolerancePolicy& pol) { return rank_impl(m, pol); }

RMatrix null_space_basis(const RMatrix& m, const TolerancePolicy& pol) { return null_space_impl(m, pol); }
CMatrix null_space_basis(const CMatrix& m, const TolerancePolicy& pol) { return null_space_impl(m, pol); }

RMatrix left_null_space_basis(const RMatrix& m, const TolerancePolicy& pol) {
  return left_null_space_impl(m, pol);
}
CMatrix left_null_space_basis(const CMatrix& m, const TolerancePolicy& pol) {
  return left_null_space_impl(m, pol);
}

RMatrix column_space_basis(const RMatrix& m, const TolerancePolicy& pol) { return column_space_impl(m, pol); }
CMatrix column_space_basis(const CMatrix& m, const TolerancePolicy& pol) { return column_space_impl(m, pol); }

RMatrix subspace_intersection(const RMatrix& qa, const RMatrix& qb, const TolerancePolicy& pol) {
  return intersection_impl(qa, qb, pol);
}
CMatrix subspace_intersection(const CMatrix& qa, const CMatrix& qb, const TolerancePolicy& pol) {
  return intersection_impl(qa, qb, pol);
}

RMatrix least_squares_solve(const RMatrix& m, const RMatrix& rhs, const TolerancePolicy& pol) {
  return least_squares_impl(m, rhs, pol);
}
CMatrix least_squares_solve(const CMatrix& m, const CMatrix& rhs, const TolerancePolicy& pol) {
  return least_squares_impl(m, rhs, pol);
}

double min_singular_value(const RMatrix& m) { return min_sv_impl(m); }
double min_singular_value(const CMatrix& m) { return min_sv_impl(m); }

double spectral_norm(const RMatrix& m) { return norm_impl(m); }
double spectral_norm(const CMatrix& m) { return norm_impl(m); }

double orthonormality_defect(const RMatrix& q) { return defect_impl(q); }
double orthonormality_defect(const CMatrix& q) { return defect_impl(q); }

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed ^ (0x9E3779B97F4A7C15ULL * (stream + 1));
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream)
    : engine_(derive_seed(seed, stream)) {}

std::uint64_t RandomStream::next_u64() { return engine_(); }

double RandomStream::uniform(double lo, double hi) {
  // 53-bit mantissa from one engine draw; portable across standard libraries.
  double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

int RandomStream::uniform_int(int lo, int hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(engine_() % span);
}

double RandomStream::gaussian() {
  // Box-Muller on two portable uniforms.
  double u1 = uniform(0.0, 1.0);
  double u2 = uniform(0.0, 1.0);
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

Complex RandomStream::complex_gaussian() {
  const double scale = std::sqrt(0.5);
  double re = gaussian();
  double im = gaussian();
  return {scale * re, scale * im};
}

RMatrix RandomStream::gaussian_matrix(int rows, int cols) {
  RMatrix m(rows, cols);
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) m(r, c) = gaussian();
  return m;
}

CMatrix RandomStream::complex_gaussian_matrix(int rows, int cols) {
  CMatrix m(rows, cols);
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) m(r, c) = complex_gaussian();
  return m;
}

RMatrix RandomStream::uniform_matrix(int rows, int cols, double lo, double hi) {
  RMatrix m(rows, cols);
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) m(r, c) = uniform(lo, hi);
  return m;
}

}  // namespace xdof
