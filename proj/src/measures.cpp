#include "hdx/measures.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace hdx {

double kl_divergence(const Vector& mu, const Vector& nu) {
  if (mu.size() != nu.size()) throw Error(ErrorCode::DomainMismatch, "measures on different spaces");
  double d = 0.0;
  for (Eigen::Index k = 0; k < mu.size(); ++k) {
    const double p = mu[k], q = nu[k];
    if (p > 0.0) {
      if (!(q > 0.0)) throw Error(ErrorCode::SupportViolation, "mu charges a state outside supp(nu)");
      // termwise nonnegative form
      d += p * std::log(p / q) - p + q;
    } else {
      d += q;
    }
  }
  return std::max(d, 0.0);
}

double kl_divergence(const Distribution& mu, const Distribution& nu) {
  std::map<Face, std::pair<double, double>> joint;
  for (std::size_t k = 0; k < mu.size(); ++k) joint[mu.states[k]].first += mu.mass[static_cast<Eigen::Index>(k)];
  for (std::size_t k = 0; k < nu.size(); ++k) joint[nu.states[k]].second += nu.mass[static_cast<Eigen::Index>(k)];
  Vector a(static_cast<Eigen::Index>(joint.size())), b(static_cast<Eigen::Index>(joint.size()));
  Eigen::Index k = 0;
  for (const auto& [f, pq] : joint) {
    a[k] = pq.first;
    b[k] = pq.second;
    ++k;
  }
  return kl_divergence(a, b);
}

ChainRuleTerms chain_rule_decomposition(const WeightedComplex& X, const Vector& mu, const Vector& nu,
                                        const SideSet& S) {
  Distribution muS = marginal(X, mu, S), nuS = marginal(X, nu, S);
  ChainRuleTerms t;
  t.marginal_term = kl_divergence(muS, nuS);
  SideSet sorted = S;
  std::sort(sorted.begin(), sorted.end());
  std::map<Face, std::vector<Eigen::Index>> groups;
  for (std::size_t k = 0; k < X.num_facets(); ++k)
    groups[X.facets()[k].restrict(sorted)].push_back(static_cast<Eigen::Index>(k));
  for (const auto& [key, members] : groups) {
    const double m = muS.at(key);
    if (!(m > 0.0)) continue;
    const double q = nuS.at(key);
    if (!(q > 0.0)) throw Error(ErrorCode::SupportViolation, "mu charges a pinning outside supp(nu)");
    Vector a(static_cast<Eigen::Index>(members.size())), b(static_cast<Eigen::Index>(members.size()));
    for (std::size_t k = 0; k < members.size(); ++k) {
      a[static_cast<Eigen::Index>(k)] = mu[members[k]] / m;
      b[static_cast<Eigen::Index>(k)] = nu[members[k]] / q;
    }
    t.conditional_term += m * kl_divergence(a, b);
  }
  return t;
}

Vector push_forward(const Vector& mu, const MarkovOperator& M) {
  if (mu.size() != M.rows()) throw Error(ErrorCode::DomainMismatch, "measure does not live on the operator domain");
  return M.matrix.transpose() * mu;
}

Distribution push_forward(const Distribution& mu, const MarkovOperator& M) {
  if (mu.states != M.domain_states)
    throw Error(ErrorCode::DomainMismatch, "measure does not live on the operator domain");
  return {M.codomain_states, push_forward(mu.mass, M)};
}

}  // namespace hdx
