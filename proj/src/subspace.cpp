#include "hdx/subspace.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "hdx/linalg.hpp"

namespace hdx {

namespace {

void same_ambient(const WeightedSubspace& U, const WeightedSubspace& V) {
  if (U.ambient_measure.size() != V.ambient_measure.size() ||
      (U.ambient_measure - V.ambient_measure).cwiseAbs().maxCoeff() > 1e-12)
    throw Error(ErrorCode::MeasureMismatch, "subspaces live in different inner-product spaces");
}

// Euclidean coordinates: columns become orthonormal in the plain dot product.
Matrix euclid(const WeightedSubspace& U) { return U.ambient_measure.cwiseSqrt().asDiagonal() * U.basis; }

WeightedSubspace from_euclid(const Vector& pi, const Matrix& E) {
  return {pi, pi.cwiseSqrt().cwiseInverse().asDiagonal() * E};
}

Matrix deflate(const Matrix& A, const Matrix& W) {
  if (A.cols() == 0) return A;
  Matrix R = A - W * (W.transpose() * A);
  if (R.cols() == 0) return R;
  Eigen::JacobiSVD<Matrix> svd(R, Eigen::ComputeThinU);
  const Vector& sv = svd.singularValues();
  Eigen::Index r = 0;
  // A has orthonormal columns, so the scale of R is at most one.
  while (r < sv.size() && sv[r] > 1e-9) ++r;
  return svd.matrixU().leftCols(r);
}

}  // namespace

WeightedSubspace subspace_U(const WeightedComplex& X, const SideSet& I) {
  const SideSet rest = complement(X, I);
  Distribution m = marginal(X, rest);
  Matrix B = Matrix::Zero(static_cast<Eigen::Index>(X.num_facets()), static_cast<Eigen::Index>(m.size()));
  for (std::size_t k = 0; k < X.num_facets(); ++k) {
    int c = m.find(X.facets()[k].restrict(rest));
    B(static_cast<Eigen::Index>(k), c) = 1.0 / std::sqrt(m.mass[c]);
  }
  return {X.pi(), B};
}

WeightedSubspace subspace_intersection(const WeightedSubspace& U, const WeightedSubspace& V, double cos_tol) {
  same_ambient(U, V);
  const Matrix A = euclid(U), B = euclid(V);
  if (A.cols() == 0 || B.cols() == 0) return {U.ambient_measure, Matrix(U.basis.rows(), 0)};
  Eigen::JacobiSVD<Matrix> svd(A.transpose() * B, Eigen::ComputeThinU);
  const Vector& c = svd.singularValues();
  Eigen::Index r = 0;
  while (r < c.size() && c[r] >= 1.0 - cos_tol) ++r;
  Matrix W = A * svd.matrixU().leftCols(r);
  if (r > 0) {
    Eigen::HouseholderQR<Matrix> qr(W);
    W = qr.householderQ() * Matrix::Identity(W.rows(), r);
  }
  return from_euclid(U.ambient_measure, W);
}

double subspace_cosine(const WeightedSubspace& U, const WeightedSubspace& V) {
  same_ambient(U, V);
  const Matrix W = euclid(subspace_intersection(U, V));
  const Matrix A = deflate(euclid(U), W), B = deflate(euclid(V), W);
  if (A.cols() == 0 || B.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(A.transpose() * B);
  return std::min(1.0, svd.singularValues()[0]);
}

double subspace_distance(const WeightedSubspace& U, const WeightedSubspace& V) {
  same_ambient(U, V);
  const Matrix A = euclid(U), B = euclid(V);
  Matrix D = A * A.transpose() - B * B.transpose();
  if (D.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(D, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

Matrix projector(const WeightedSubspace& U) {
  return U.basis * U.basis.transpose() * U.ambient_measure.asDiagonal();
}

}  // namespace hdx
