#ifndef HDX_SPECTRA_HPP
#define HDX_SPECTRA_HPP

#include <map>
#include <utility>
#include <vector>

#include "hdx/complex.hpp"
#include "hdx/walks.hpp"

namespace hdx {

// Throws ZeroMassState if a measure has a zero entry.
MarkovOperator weighted_adjoint(const MarkovOperator& M);

// Descending weighted singular values.
Vector singular_values(const MarkovOperator& M);
// Second weighted singular value; 0 when either side has one state.
// Throws MeasureMismatch when the attached measures are inconsistent.
double sigma2(const MarkovOperator& M);
// Second largest eigenvalue of an operator self-adjoint under its measure.
double second_eigenvalue(const MarkovOperator& M);
double max_eigenvalue(const MarkovOperator& M);

double gap_sweep(const WeightedComplex& X, const std::vector<int>& order);
// 1 - lambda_2(P_GD); a single-facet complex has gap 1.
double gap_glauber(const WeightedComplex& X);

// gamma_0 .. gamma_{n-2}.
std::vector<double> gamma_params(const WeightedComplex& X);
// Worst second eigenvalue over all links of faces up to rank n-2; < 1 iff every link graph is connected.
bool is_link_connected(const WeightedComplex& X, double tol = 1e-9);

struct WorstPinning {
  double value = 0.0;
  Face pinning;
};

WorstPinning eps_param_detail(const WeightedComplex& X, const SideSet& I, const SideSet& J);
double eps_param(const WeightedComplex& X, const SideSet& I, const SideSet& J);
// eps_0 .. eps_{n-2}.
std::vector<double> eps_product_profile(const WeightedComplex& X);
// (i,j) with i<j -> worst sigma_2 of the single-side colored walk over pinnings of the rest.
std::map<std::pair<int, int>, double> eps_pairwise(const WeightedComplex& X);

}  // namespace hdx

#endif  // HDX_SPECTRA_HPP
