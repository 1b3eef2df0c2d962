#include "hdx/contraction.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "hdx/linalg.hpp"
#include "hdx/measures.hpp"
#include "hdx/spectra.hpp"

namespace hdx {

namespace {

constexpr double kMinDivergence = 1e-14;
constexpr Eigen::Index kMaxPolishStates = 48;

struct RatioProblem {
  const Matrix& C;
  const Vector& in;
  const Vector& out;

  // Returns -1 when the denominator is degenerate.
  double ratio(const Vector& mu) const {
    const double den = kl_divergence(mu, in);
    if (den <= kMinDivergence) return -1.0;
    return kl_divergence(Vector(C.transpose() * mu), out) / den;
  }
};

void grid_rec(int k, int pos, int left, double step, Vector& mu, const std::function<void(const Vector&)>& visit) {
  if (pos == k - 1) {
    mu[pos] = left * step;
    visit(mu);
    return;
  }
  for (int c = 0; c <= left; ++c) {
    mu[pos] = c * step;
    grid_rec(k, pos + 1, left - c, step, mu, visit);
  }
}

Vector softmax(const Vector& theta) {
  Vector e = (theta.array() - theta.maxCoeff()).exp();
  return e / e.sum();
}

// Gradient ascent on the ratio in softmax coordinates with an adaptive step.
double ascend(const RatioProblem& p, Vector theta, int iterations, Vector& best_mu) {
  Vector mu = softmax(theta);
  double r = p.ratio(mu);
  double step = 1.0;
  for (int it = 0; it < iterations && step > 1e-10; ++it) {
    if (r < 0) break;
    const Vector pushed = p.C.transpose() * mu;
    const double den = kl_divergence(mu, p.in);
    const double num = kl_divergence(pushed, p.out);
    Vector gn = p.C * ((pushed.array() / p.out.array()).log() + 1.0).matrix();
    Vector gd = ((mu.array() / p.in.array()).log() + 1.0).matrix();
    Vector g = (gn * den - gd * num) / (den * den);
    Vector gt = mu.cwiseProduct(g.array().matrix() - Vector::Constant(g.size(), mu.dot(g)));
    const double gnorm = gt.norm();
    if (!(gnorm > 1e-14)) break;
    Vector cand_theta = theta + step * gt / gnorm;
    Vector cand = softmax(cand_theta);
    double rc = p.ratio(cand);
    if (rc > r) {
      theta = std::move(cand_theta);
      mu = std::move(cand);
      r = rc;
      step *= 1.5;
    } else {
      step *= 0.5;
    }
  }
  best_mu = mu;
  return r;
}

// Moves mass between pairs of states; unlike the softmax ascent this reaches faces of the simplex.
double polish(const RatioProblem& p, Vector& mu, double r, int rounds) {
  const auto k = mu.size();
  double delta = 0.25;
  for (int round = 0; round < rounds && delta > 1e-9; ++round) {
    bool improved = false;
    for (Eigen::Index from = 0; from < k; ++from) {
      if (mu[from] <= 0.0) continue;
      for (Eigen::Index to = 0; to < k; ++to) {
        if (to == from) continue;
        const double amount = std::min(delta, mu[from]);
        Vector cand = mu;
        cand[from] -= amount;
        cand[to] += amount;
        const double rc = p.ratio(cand);
        if (rc > r) {
          mu = std::move(cand);
          r = rc;
          improved = true;
          if (mu[from] <= 0.0) break;
        }
      }
    }
    if (!improved) delta *= 0.5;
  }
  return r;
}

}  // namespace

void for_each_grid_point(int k, int steps, const std::function<void(const Vector&)>& visit) {
  if (k <= 0) return;
  Vector mu(k);
  grid_rec(k, 0, steps, 1.0 / steps, mu, visit);
}

ContractionEstimate sup_contraction_ratio(const Matrix& C, const Vector& in, const Vector& out,
                                          const ContractionSearch& search) {
  RatioProblem p{C, in, out};
  ContractionEstimate est;
  const auto k = static_cast<int>(in.size());
  est.argmax = in;
  if (k <= 1) {
    est.method = "trivial";
    return est;
  }
  auto consider = [&](const Vector& mu) {
    double r = p.ratio(mu);
    if (r > est.kappa_hat) {
      est.kappa_hat = r;
      est.argmax = mu;
    }
  };
  for (int x = 0; x < k; ++x) consider(Vector::Unit(k, x));
  const Vector point_best = est.argmax;

  // Near-stationary limit of the ratio equals sigma_2^2; it is a valid lower bound on the sup.
  if (out.size() > 1) {
    Vector sv = la::singular_values(C, in, out);
    if (sv.size() > 1 && sv[1] * sv[1] > est.kappa_hat) {
      est.kappa_hat = sv[1] * sv[1];
      est.argmax = in;
    }
  }

  if (k <= search.max_grid_states) {
    est.method = "grid";
    const int steps = static_cast<int>(std::lround(1.0 / search.grid_step));
    for_each_grid_point(k, steps, consider);
    return est;
  }

  est.method = "ascent";
  std::mt19937_64 rng(search.seed);
  std::exponential_distribution<double> expo(1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const Vector log_in = in.array().log().matrix();
  for (int r = 0; r < search.restarts; ++r) {
    Vector theta(k);
    if (r < k && r < search.restarts / 2) {
      theta = log_in;
      theta[r] += 6.0;
    } else if (r % 3 == 0) {
      for (int x = 0; x < k; ++x) theta[x] = log_in[x] + 0.1 * gauss(rng);
    } else {
      for (int x = 0; x < k; ++x) theta[x] = std::log(expo(rng) + 1e-300);
    }
    Vector mu;
    double val = ascend(p, theta, search.iterations, mu);
    if (val >= 0 && k <= kMaxPolishStates) val = polish(p, mu, val, search.iterations);
    if (val > est.kappa_hat) {
      est.kappa_hat = val;
      est.argmax = mu;
    }
  }
  if (k <= kMaxPolishStates) {
    Vector mu = point_best;
    const double val = polish(p, mu, p.ratio(mu), search.iterations);
    if (val > est.kappa_hat) {
      est.kappa_hat = val;
      est.argmax = mu;
    }
  }
  return est;
}

EtaEstimate eta_param_estimate(const WeightedComplex& X, const SideSet& I, const SideSet& J,
                               const ContractionSearch& search) {
  SideSet both = I;
  both.insert(both.end(), J.begin(), J.end());
  std::sort(both.begin(), both.end());
  if (std::adjacent_find(both.begin(), both.end()) != both.end())
    throw Error(ErrorCode::OverlappingColorSets, "color sets overlap");
  EtaEstimate est;
  est.method = "grid";
  for (const Face& a : faces_of_type(X, complement(X, both))) {
    MarkovOperator C = colored_walk(X, a, I, J);
    ContractionEstimate c = sup_contraction_ratio(C.matrix, C.domain_measure, C.codomain_measure, search);
    est.largest_simplex = std::max(est.largest_simplex, static_cast<int>(C.rows()));
    if (c.method == "ascent") est.method = "ascent";
    if (c.kappa_hat > est.kappa_hat) {
      est.kappa_hat = c.kappa_hat;
      est.worst_pinning = a;
    }
  }
  est.eta_hat = 1.0 - est.kappa_hat;
  return est;
}

ContractionEstimate entropy_contraction_estimate(const MarkovOperator& P, const ContractionSearch& search) {
  return sup_contraction_ratio(P.matrix, P.domain_measure, P.codomain_measure, search);
}

}  // namespace hdx
