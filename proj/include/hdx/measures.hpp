#ifndef HDX_MEASURES_HPP
#define HDX_MEASURES_HPP

#include <utility>

#include "hdx/complex.hpp"
#include "hdx/walks.hpp"

namespace hdx {

// Natural log. Throws SupportViolation if mu charges a state nu does not.
double kl_divergence(const Vector& mu, const Vector& nu);
// States are matched by face; a state absent from nu counts as zero mass.
double kl_divergence(const Distribution& mu, const Distribution& nu);

struct ChainRuleTerms {
  double marginal_term = 0.0;
  double conditional_term = 0.0;
  double total() const { return marginal_term + conditional_term; }
};

// mu, nu are measures on the facets of X.
ChainRuleTerms chain_rule_decomposition(const WeightedComplex& X, const Vector& mu, const Vector& nu,
                                        const SideSet& S);

Vector push_forward(const Vector& mu, const MarkovOperator& M);
Distribution push_forward(const Distribution& mu, const MarkovOperator& M);

}  // namespace hdx

#endif  // HDX_MEASURES_HPP
