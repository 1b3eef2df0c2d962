#ifndef HDX_SAMPLER_HPP
#define HDX_SAMPLER_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "hdx/complex.hpp"
#include "hdx/rng.hpp"

namespace hdx {

// Sequential sweep over facet indices with precomputed conditional tables.
class SweepSampler {
 public:
  SweepSampler(const WeightedComplex& X, std::vector<int> order);

  int step(int facet, Rng& rng) const;
  int update(int facet, std::size_t position, Rng& rng) const;
  std::size_t num_facets() const { return num_facets_; }
  const std::vector<int>& order() const { return order_; }

 private:
  struct Table {
    std::vector<int> group_of;                 // facet -> group
    std::vector<std::vector<int>> members;     // group -> facets
    std::vector<std::vector<double>> cumulative;
  };
  std::vector<int> order_;
  std::size_t num_facets_ = 0;
  std::vector<Table> tables_;
};

Face sweep_step(const WeightedComplex& X, const std::vector<int>& order, const Face& state, Rng& rng);

struct TvdPoint {
  int t = 0;
  double estimate = 0.0;  // max over starts of the empirical l1 distance to pi
  double ci_low = 0.0;
  double ci_high = 0.0;
};

// Empirical distribution of the chain after t sweeps, per start facet: rows = starts.
// Chain c from start x draws from stream x * chains + c of the master seed.
std::vector<Matrix> empirical_distributions(const WeightedComplex& X, const std::vector<int>& order, int max_t,
                                            int chains, std::uint64_t seed);

std::vector<TvdPoint> tvd_curve(const WeightedComplex& X, const std::vector<int>& order, int max_t, int chains,
                                std::uint64_t seed);
double empirical_tvd(const WeightedComplex& X, const std::vector<int>& order, int t, int chains, std::uint64_t seed);

struct MixingEstimate {
  int t = 0;
  std::vector<TvdPoint> curve;
};

// Smallest t whose l1 confidence band reaches eps_target. Throws BudgetExceeded past max_t.
MixingEstimate empirical_mixing_time(const WeightedComplex& X, const std::vector<int>& order, double eps_target,
                                     std::uint64_t seed, int chains = 20000, int max_t = 200);

// CSV: step,facet
void write_trajectory_csv(const WeightedComplex& X, const std::vector<int>& order, const Face& start, int steps,
                          std::uint64_t seed, std::ostream& os);
// CSV: t,estimate,ci_low,ci_high
void write_tvd_csv(const std::vector<TvdPoint>& curve, std::ostream& os);

}  // namespace hdx

#endif  // HDX_SAMPLER_HPP
