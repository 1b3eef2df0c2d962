#ifndef HDX_LINALG_HPP
#define HDX_LINALG_HPP

// Weighted-inner-product linear algebra on dense Eigen expressions.
// A matrix B : R^V -> R^U acts on functions, rows indexed by U, columns by V;
// the measures pu, pv define <f,g>_u = sum pu f g.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace hdx::la {

template <class Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

// B*(y,x) = B(x,y) pu(x) / pv(y)
template <class DB, class DU, class DV>
Mat<typename DB::Scalar> adjoint(const Eigen::MatrixBase<DB>& B, const Eigen::MatrixBase<DU>& pu,
                                 const Eigen::MatrixBase<DV>& pv) {
  return pv.cwiseInverse().asDiagonal() * B.transpose() * pu.asDiagonal();
}

// D_u^{1/2} B D_v^{-1/2}; its Euclidean spectrum is the weighted one.
template <class DB, class DU, class DV>
Mat<typename DB::Scalar> symmetrized(const Eigen::MatrixBase<DB>& B, const Eigen::MatrixBase<DU>& pu,
                                     const Eigen::MatrixBase<DV>& pv) {
  return pu.cwiseSqrt().asDiagonal() * B * pv.cwiseSqrt().cwiseInverse().asDiagonal();
}

// Descending.
template <class DB, class DU, class DV>
Vec<typename DB::Scalar> singular_values(const Eigen::MatrixBase<DB>& B, const Eigen::MatrixBase<DU>& pu,
                                         const Eigen::MatrixBase<DV>& pv) {
  Mat<typename DB::Scalar> S = symmetrized(B, pu, pv);
  if (S.size() == 0) return Vec<typename DB::Scalar>();
  Eigen::JacobiSVD<Mat<typename DB::Scalar>> svd(S);
  return svd.singularValues();
}

// Descending eigenvalues of an operator self-adjoint under pi.
template <class DB, class DP>
Vec<typename DB::Scalar> self_adjoint_eigenvalues(const Eigen::MatrixBase<DB>& B,
                                                  const Eigen::MatrixBase<DP>& pi) {
  Mat<typename DB::Scalar> S = symmetrized(B, pi, pi);
  S = (S + S.transpose()).eval() / 2;
  Eigen::SelfAdjointEigenSolver<Mat<typename DB::Scalar>> es(S, Eigen::EigenvaluesOnly);
  Vec<typename DB::Scalar> ev = es.eigenvalues().reverse();
  return ev;
}

template <class DF, class DG, class DP>
typename DF::Scalar inner(const Eigen::MatrixBase<DF>& f, const Eigen::MatrixBase<DG>& g,
                          const Eigen::MatrixBase<DP>& pi) {
  return (f.cwiseProduct(g)).dot(pi);
}

template <class DF, class DP>
typename DF::Scalar norm(const Eigen::MatrixBase<DF>& f, const Eigen::MatrixBase<DP>& pi) {
  return std::sqrt(std::max<typename DF::Scalar>(inner(f, f, pi), 0));
}

// Columns of A spanning a subspace -> pi-orthonormal basis of their span.
// Rank cut at rel_tol times the largest singular value.
template <class DA, class DP>
Mat<typename DA::Scalar> orthonormal_basis(const Eigen::MatrixBase<DA>& A, const Eigen::MatrixBase<DP>& pi,
                                           double rel_tol = 1e-9) {
  using S = typename DA::Scalar;
  if (A.cols() == 0) return Mat<S>(A.rows(), 0);
  Vec<S> sq = pi.cwiseSqrt();
  Mat<S> W = sq.asDiagonal() * A;
  Eigen::JacobiSVD<Mat<S>> svd(W, Eigen::ComputeThinU);
  const Vec<S>& sv = svd.singularValues();
  Eigen::Index r = 0;
  const S top = sv.size() ? sv[0] : S(0);
  while (r < sv.size() && sv[r] > rel_tol * top && top > 0) ++r;
  return sq.cwiseInverse().asDiagonal() * svd.matrixU().leftCols(r);
}

}  // namespace hdx::la

#endif  // HDX_LINALG_HPP
