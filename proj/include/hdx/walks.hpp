#ifndef HDX_WALKS_HPP
#define HDX_WALKS_HPP

#include <vector>

#include "hdx/complex.hpp"

namespace hdx {

// Rows index domain states, columns codomain states.
struct MarkovOperator {
  Matrix matrix;
  std::vector<Face> domain_states;
  std::vector<Face> codomain_states;
  Vector domain_measure;
  Vector codomain_measure;
  bool row_stochastic = true;

  Eigen::Index rows() const { return matrix.rows(); }
  Eigen::Index cols() const { return matrix.cols(); }
  // Throws MeasureMismatch if rows do not sum to one or the measures are inconsistent.
  void check(double tol = 1e-10) const;
};

MarkovOperator compose(const MarkovOperator& A, const MarkovOperator& B);

// Resample side i given all other coordinates.
MarkovOperator update_operator(const WeightedComplex& X, int side);
// Resample the coordinates outside `keep` given those in `keep`.
MarkovOperator conditional_resample(const WeightedComplex& X, const SideSet& keep);
MarkovOperator down_up_walk(const WeightedComplex& X);
MarkovOperator sequential_sweep(const WeightedComplex& X, const std::vector<int>& order);
MarkovOperator colored_walk(const WeightedComplex& X, const Face& alpha, const SideSet& I,
                            const SideSet& J);
MarkovOperator link_walk(const WeightedComplex& X, const Face& alpha);
// Not stochastic; measures are the vertex distribution of the link.
MarkovOperator influence_matrix(const WeightedComplex& X, const Face& alpha);
// Projection onto functions constant on each side of the link.
Matrix side_average_projector(const WeightedComplex& X, const Face& alpha);
// One column per remaining side: m-1 on that side, -1 elsewhere.
Matrix phi_vectors(const WeightedComplex& X, const Face& alpha);
MarkovOperator down_operator(const WeightedComplex& X, int level);

std::vector<int> canonical_order(const WeightedComplex& X);
void check_order(const WeightedComplex& X, const std::vector<int>& order);

}  // namespace hdx

#endif  // HDX_WALKS_HPP
