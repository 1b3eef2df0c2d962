#ifndef HDX_SUBSPACE_HPP
#define HDX_SUBSPACE_HPP

#include "hdx/complex.hpp"

namespace hdx {

// Subspace of functions on facets; columns of basis are pi-orthonormal.
struct WeightedSubspace {
  Vector ambient_measure;
  Matrix basis;

  Eigen::Index dim() const { return basis.cols(); }
};

// span of indicators of {facets extending alpha} for alpha over the faces of type I^c.
WeightedSubspace subspace_U(const WeightedComplex& X, const SideSet& I);
WeightedSubspace subspace_intersection(const WeightedSubspace& U, const WeightedSubspace& V,
                                       double cos_tol = 1e-9);
// Largest correlation after removing the common part U ∩ V from both sides.
double subspace_cosine(const WeightedSubspace& U, const WeightedSubspace& V);
// Spectral norm of the difference of the orthogonal projectors.
double subspace_distance(const WeightedSubspace& U, const WeightedSubspace& V);
// pi-orthogonal projector acting on functions: P f = sum_b b <b, f>_pi.
Matrix projector(const WeightedSubspace& U);

}  // namespace hdx

#endif  // HDX_SUBSPACE_HPP
