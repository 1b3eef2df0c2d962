#ifndef HDX_CONTRACTION_HPP
#define HDX_CONTRACTION_HPP

#include <cstdint>
#include <functional>
#include <string>

#include "hdx/complex.hpp"
#include "hdx/walks.hpp"

namespace hdx {

struct ContractionSearch {
  double grid_step = 0.01;
  int max_grid_states = 4;
  int restarts = 12;
  int iterations = 250;
  std::uint64_t seed = 20240601;
};

// kappa_hat is attained by an explicit candidate, hence a lower bound on the true supremum.
struct ContractionEstimate {
  double kappa_hat = 0.0;
  Vector argmax;
  std::string method;  // "grid" or "ascent"
};

// Visits every point of the simplex on k states with coordinates in multiples of 1/steps.
void for_each_grid_point(int k, int steps, const std::function<void(const Vector&)>& visit);

// sup over mu of D(mu C || out) / D(mu || in), skipping mu with D(mu || in) <= 1e-14.
ContractionEstimate sup_contraction_ratio(const Matrix& C, const Vector& in, const Vector& out,
                                          const ContractionSearch& search = {});

struct EtaEstimate {
  double kappa_hat = 0.0;
  double eta_hat = 1.0;
  Face worst_pinning;
  std::string method;
  int largest_simplex = 0;
  // kappa_hat <= kappa, so eta_hat >= eta.
  static constexpr const char* direction = "kappa_hat<=kappa";
};

EtaEstimate eta_param_estimate(const WeightedComplex& X, const SideSet& I, const SideSet& J,
                               const ContractionSearch& search = {});

// Lower bound on kappa(P) for a square pi-stationary operator.
ContractionEstimate entropy_contraction_estimate(const MarkovOperator& P, const ContractionSearch& search = {});

}  // namespace hdx

#endif  // HDX_CONTRACTION_HPP
