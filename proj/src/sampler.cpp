#include "hdx/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>

#include "hdx/io.hpp"
#include "hdx/walks.hpp"

namespace hdx {

SweepSampler::SweepSampler(const WeightedComplex& X, std::vector<int> order)
    : order_(std::move(order)), num_facets_(X.num_facets()) {
  check_order(X, order_);
  for (int side : order_) {
    SideSet keep;
    for (int s : X.side_labels())
      if (s != side) keep.push_back(s);
    Table tab;
    tab.group_of.resize(num_facets_);
    std::map<Face, int> ids;
    for (std::size_t k = 0; k < num_facets_; ++k) {
      auto [it, fresh] = ids.emplace(X.facets()[k].restrict(keep), static_cast<int>(tab.members.size()));
      if (fresh) tab.members.emplace_back();
      tab.group_of[k] = it->second;
      tab.members[static_cast<std::size_t>(it->second)].push_back(static_cast<int>(k));
    }
    for (const auto& m : tab.members) {
      std::vector<double> cum;
      double acc = 0.0;
      for (int f : m) cum.push_back(acc += X.pi()[f]);
      for (double& c : cum) c /= acc;
      cum.back() = 1.0;
      tab.cumulative.push_back(std::move(cum));
    }
    tables_.push_back(std::move(tab));
  }
}

int SweepSampler::update(int facet, std::size_t position, Rng& rng) const {
  const Table& tab = tables_[position];
  const auto g = static_cast<std::size_t>(tab.group_of[static_cast<std::size_t>(facet)]);
  const auto& cum = tab.cumulative[g];
  if (cum.size() == 1) return tab.members[g][0];
  const double u = rng.uniform();
  const auto k = static_cast<std::size_t>(std::upper_bound(cum.begin(), cum.end(), u) - cum.begin());
  return tab.members[g][std::min(k, cum.size() - 1)];
}

int SweepSampler::step(int facet, Rng& rng) const {
  for (std::size_t p = 0; p < tables_.size(); ++p) facet = update(facet, p, rng);
  return facet;
}

Face sweep_step(const WeightedComplex& X, const std::vector<int>& order, const Face& state, Rng& rng) {
  const int k = X.index_of(state);
  if (k < 0) throw Error(ErrorCode::FaceNotInComplex, "state " + state.label() + " is not a facet");
  SweepSampler s(X, order);
  return X.facets()[static_cast<std::size_t>(s.step(k, rng))];
}

std::vector<Matrix> empirical_distributions(const WeightedComplex& X, const std::vector<int>& order, int max_t,
                                            int chains, std::uint64_t seed) {
  if (chains < 1 || max_t < 0) throw Error(ErrorCode::InvalidArgument, "need chains >= 1 and steps >= 0");
  SweepSampler sampler(X, order);
  const auto N = static_cast<Eigen::Index>(X.num_facets());
  std::vector<Matrix> dist(static_cast<std::size_t>(max_t) + 1, Matrix::Zero(N, N));
  for (Eigen::Index x = 0; x < N; ++x)
    for (int c = 0; c < chains; ++c) {
      Rng rng(seed, static_cast<std::uint64_t>(x) * static_cast<std::uint64_t>(chains) + static_cast<std::uint64_t>(c));
      int state = static_cast<int>(x);
      dist[0](x, state) += 1.0;
      for (int t = 1; t <= max_t; ++t) {
        state = sampler.step(state, rng);
        dist[static_cast<std::size_t>(t)](x, state) += 1.0;
      }
    }
  for (auto& d : dist) d /= chains;
  return dist;
}

std::vector<TvdPoint> tvd_curve(const WeightedComplex& X, const std::vector<int>& order, int max_t, int chains,
                                std::uint64_t seed) {
  const auto dist = empirical_distributions(X, order, max_t, chains, seed);
  const Vector& pi = X.pi();
  std::vector<TvdPoint> curve;
  for (int t = 0; t <= max_t; ++t) {
    const Matrix& d = dist[static_cast<std::size_t>(t)];
    TvdPoint p;
    p.t = t;
    p.ci_low = 0.0;
    for (Eigen::Index x = 0; x < d.rows(); ++x) {
      const double l1 = (d.row(x).transpose() - pi).cwiseAbs().sum();
      const double hw = 2.0 * (d.row(x).array() * (1.0 - d.row(x).array()) / chains).sqrt().sum();
      p.estimate = std::max(p.estimate, l1);
      p.ci_low = std::max(p.ci_low, l1 - hw);
      p.ci_high = std::max(p.ci_high, l1 + hw);
    }
    curve.push_back(p);
  }
  return curve;
}

double empirical_tvd(const WeightedComplex& X, const std::vector<int>& order, int t, int chains, std::uint64_t seed) {
  return tvd_curve(X, order, t, chains, seed).back().estimate;
}

MixingEstimate empirical_mixing_time(const WeightedComplex& X, const std::vector<int>& order, double eps_target,
                                     std::uint64_t seed, int chains, int max_t) {
  if (!(eps_target > 0.0 && eps_target < 1.0)) throw Error(ErrorCode::InvalidArgument, "target must lie in (0,1)");
  // Streams are fixed per chain, so a longer horizon extends the shorter curve unchanged.
  for (int horizon = std::min(8, max_t);; horizon = std::min(2 * horizon, max_t)) {
    MixingEstimate est;
    est.curve = tvd_curve(X, order, horizon, chains, seed);
    for (const auto& p : est.curve)
      if (p.ci_low <= eps_target) {
        est.t = p.t;
        est.curve.resize(static_cast<std::size_t>(p.t) + 1);
        return est;
      }
    if (horizon >= max_t) break;
  }
  throw Error(ErrorCode::BudgetExceeded, "no mixing within " + std::to_string(max_t) + " sweeps");
}

void write_trajectory_csv(const WeightedComplex& X, const std::vector<int>& order, const Face& start, int steps,
                          std::uint64_t seed, std::ostream& os) {
  int state = X.index_of(start);
  if (state < 0) throw Error(ErrorCode::FaceNotInComplex, "start " + start.label() + " is not a facet");
  SweepSampler sampler(X, order);
  Rng rng(seed, 0);
  os << "step,facet\n";
  os << 0 << ',' << X.facets()[static_cast<std::size_t>(state)].label() << '\n';
  for (int t = 1; t <= steps; ++t) {
    state = sampler.step(state, rng);
    os << t << ',' << X.facets()[static_cast<std::size_t>(state)].label() << '\n';
  }
}

void write_tvd_csv(const std::vector<TvdPoint>& curve, std::ostream& os) {
  os << "t,estimate,ci_low,ci_high\n";
  for (const auto& p : curve)
    os << p.t << ',' << format_double(p.estimate) << ',' << format_double(p.ci_low) << ',' << format_double(p.ci_high)
       << '\n';
}

}  // namespace hdx
