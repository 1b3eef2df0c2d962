#include "hdx/spectra.hpp"

#include <algorithm>
#include <limits>

#include "hdx/linalg.hpp"

namespace hdx {

MarkovOperator weighted_adjoint(const MarkovOperator& M) {
  if ((M.domain_measure.array() <= 0).any() || (M.codomain_measure.array() <= 0).any())
    throw Error(ErrorCode::ZeroMassState, "adjoint needs strictly positive measures");
  MarkovOperator out;
  out.matrix = la::adjoint(M.matrix, M.domain_measure, M.codomain_measure);
  out.domain_states = M.codomain_states;
  out.codomain_states = M.domain_states;
  out.domain_measure = M.codomain_measure;
  out.codomain_measure = M.domain_measure;
  out.row_stochastic = M.row_stochastic;
  return out;
}

Vector singular_values(const MarkovOperator& M) {
  if ((M.domain_measure.array() <= 0).any() || (M.codomain_measure.array() <= 0).any())
    throw Error(ErrorCode::ZeroMassState, "singular values need strictly positive measures");
  return la::singular_values(M.matrix, M.domain_measure, M.codomain_measure);
}

double sigma2(const MarkovOperator& M) {
  M.check(1e-9);
  if (M.rows() <= 1 || M.cols() <= 1) return 0.0;
  return singular_values(M)[1];
}

double second_eigenvalue(const MarkovOperator& M) {
  if (M.rows() <= 1) return -std::numeric_limits<double>::infinity();
  return la::self_adjoint_eigenvalues(M.matrix, M.domain_measure)[1];
}

double max_eigenvalue(const MarkovOperator& M) {
  if (M.rows() == 0) return 0.0;
  return la::self_adjoint_eigenvalues(M.matrix, M.domain_measure)[0];
}

double gap_sweep(const WeightedComplex& X, const std::vector<int>& order) {
  return 1.0 - sigma2(sequential_sweep(X, order));
}

double gap_glauber(const WeightedComplex& X) {
  if (X.num_facets() <= 1) return 1.0;
  return 1.0 - second_eigenvalue(down_up_walk(X));
}

std::vector<double> gamma_params(const WeightedComplex& X) {
  std::vector<double> gamma;
  for (int i = 0; i + 2 <= X.n(); ++i) {
    double worst = -std::numeric_limits<double>::infinity();
    for (const Face& a : faces_of_rank(X, i)) worst = std::max(worst, second_eigenvalue(link_walk(X, a)));
    gamma.push_back(worst);
  }
  return gamma;
}

bool is_link_connected(const WeightedComplex& X, double tol) {
  for (double g : gamma_params(X))
    if (!(g < 1.0 - tol)) return false;
  return true;
}

WorstPinning eps_param_detail(const WeightedComplex& X, const SideSet& I, const SideSet& J) {
  SideSet both = I;
  both.insert(both.end(), J.begin(), J.end());
  std::sort(both.begin(), both.end());
  if (std::adjacent_find(both.begin(), both.end()) != both.end())
    throw Error(ErrorCode::OverlappingColorSets, "color sets overlap");
  WorstPinning w;
  w.value = -1.0;
  for (const Face& a : faces_of_type(X, complement(X, both))) {
    double s = sigma2(colored_walk(X, a, I, J));
    if (s > w.value) {
      w.value = s;
      w.pinning = a;
    }
  }
  return w;
}

double eps_param(const WeightedComplex& X, const SideSet& I, const SideSet& J) {
  return eps_param_detail(X, I, J).value;
}

std::vector<double> eps_product_profile(const WeightedComplex& X) {
  std::vector<double> eps;
  for (int l = 0; l + 2 <= X.n(); ++l) {
    double worst = 0.0;
    for (const Face& a : faces_of_rank(X, l)) {
      const SideSet rest = remaining_sides(X, a);
      for (std::size_t p = 0; p < rest.size(); ++p)
        for (std::size_t q = p + 1; q < rest.size(); ++q)
          worst = std::max(worst, sigma2(colored_walk(X, a, {rest[p]}, {rest[q]})));
    }
    eps.push_back(worst);
  }
  return eps;
}

std::map<std::pair<int, int>, double> eps_pairwise(const WeightedComplex& X) {
  std::map<std::pair<int, int>, double> out;
  const SideSet& s = X.side_labels();
  for (std::size_t p = 0; p < s.size(); ++p)
    for (std::size_t q = p + 1; q < s.size(); ++q) out[{s[p], s[q]}] = eps_param(X, {s[p]}, {s[q]});
  return out;
}

}  // namespace hdx
