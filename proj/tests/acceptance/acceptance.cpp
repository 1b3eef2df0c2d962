#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "hdx/certificates.hpp"
#include "hdx/contraction.hpp"
#include "hdx/corpus.hpp"
#include "hdx/generators.hpp"
#include "hdx/measures.hpp"
#include "hdx/sampler.hpp"
#include "hdx/spectra.hpp"
#include "hdx/subspace.hpp"
#include "hdx/walks.hpp"
#include "../oracles.hpp"

using namespace hdx;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double max_abs(const Matrix& A) { return A.size() ? A.cwiseAbs().maxCoeff() : 0.0; }

// Pairs of disjoint nonempty subsets of the given sides.
std::vector<std::pair<SideSet, SideSet>> disjoint_pairs(const SideSet& sides) {
  std::vector<std::pair<SideSet, SideSet>> out;
  const auto m = sides.size();
  int total = 1;
  for (std::size_t k = 0; k < m; ++k) total *= 3;
  for (int code = 0; code < total; ++code) {
    SideSet I, J;
    int c = code;
    for (std::size_t k = 0; k < m; ++k, c /= 3) {
      if (c % 3 == 1) I.push_back(sides[k]);
      if (c % 3 == 2) J.push_back(sides[k]);
    }
    if (!I.empty() && !J.empty()) out.emplace_back(I, J);
  }
  return out;
}

std::vector<SideSet> nonempty_subsets(const SideSet& sides) {
  std::vector<SideSet> out;
  for (unsigned mask = 1; mask < (1u << sides.size()); ++mask) {
    SideSet T;
    for (std::size_t k = 0; k < sides.size(); ++k)
      if (mask >> k & 1) T.push_back(sides[k]);
    out.push_back(T);
  }
  return out;
}

double kl(const Vector& mu, const Vector& nu) {
  double d = 0.0;
  for (Eigen::Index x = 0; x < mu.size(); ++x)
    if (mu[x] > 0) d += mu[x] * std::log(mu[x] / nu[x]);
  return d;
}

Vector as_vector(const Distribution& d, const std::vector<Face>& order) {
  Vector v(static_cast<Eigen::Index>(order.size()));
  for (std::size_t k = 0; k < order.size(); ++k) v[static_cast<Eigen::Index>(k)] = d.at(order[k]);
  return v;
}

double pnorm2(const Vector& f, const Vector& pi) { return f.dot(pi.asDiagonal() * f); }

struct Corpus {
  std::vector<CorpusEntry> entries;
  std::vector<const CorpusEntry*> connected;
};

const Corpus& corpus() {
  static Corpus c = [] {
    Corpus out;
    out.entries = load_corpus(std::string(HDX_CORPUS_DIR) + "/manifest.json");
    for (const auto& e : out.entries)
      if (e.complex.n() >= 2 && is_link_connected(e.complex)) out.connected.push_back(&e);
    return out;
  }();
  return c;
}

std::vector<std::vector<int>> orders_for(const WeightedComplex& X) {
  if (X.n() <= 4) return all_orders(X);
  return {canonical_order(X)};
}

Outcome appendix() {
  double worst = 0.0;
  int checks = 0;
  for (int n = 2; n <= 3; ++n)
    for (int k = 2; k <= 4; ++k) {
      auto X = single_edge_coloring(n, k);
      worst = std::max(worst, std::abs(max_eigenvalue(influence_matrix(X, Face{})) - 1.0 / k));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          if (i == j) continue;
          const double expected = (std::min(i, j) == 0 && std::max(i, j) == 1) ? 1.0 / k : 0.0;
          worst = std::max(worst, std::abs(sigma2(colored_walk(X, Face{}, {i}, {j})) - expected));
          ++checks;
        }
    }
  std::ostringstream os;
  os << checks << " walk checks, max deviation " << worst;
  return {worst <= 1e-10, os.str()};
}

Outcome product_baseline() {
  std::mt19937_64 g(2024);
  double s2 = 0.0, eps = 0.0, cosv = 0.0, div = 0.0;
  for (int inst = 0; inst < 20; ++inst) {
    std::vector<Vector> marg;
    std::size_t facets;
    do {
      marg.clear();
      facets = 1;
      const int n = 2 + static_cast<int>(g() % 4);
      for (int s = 0; s < n; ++s) {
        const Eigen::Index size = 1 + static_cast<Eigen::Index>(g() % 5);
        marg.push_back(oracle::random_simplex_point(g, size));
        facets *= static_cast<std::size_t>(size);
      }
    } while (facets > 200 || facets < 2);
    auto X = product_complex(marg);
    const auto order = canonical_order(X);
    auto P = sequential_sweep(X, order);
    s2 = std::max(s2, sigma2(P));
    std::map<SideSet, WeightedSubspace> U;
    for (const auto& T : nonempty_subsets(X.side_labels())) U.emplace(T, subspace_U(X, T));
    for (const auto& [I, J] : disjoint_pairs(X.side_labels())) {
      eps = std::max(eps, eps_param(X, I, J));
      cosv = std::max(cosv, subspace_cosine(U.at(I), U.at(J)));
    }
    for (int t = 0; t < 100; ++t) {
      Vector mu = oracle::random_simplex_point(g, X.pi().size(), t % 2 == 1);
      div = std::max(div, kl(P.matrix.transpose() * mu, X.pi()));
    }
  }
  std::ostringstream os;
  os << "sigma2 " << s2 << ", eps " << eps << ", cos " << cosv << ", D " << div;
  return {s2 <= 1e-10 && eps <= 1e-10 && cosv <= 1e-8 && div <= 1e-12, os.str()};
}

Outcome csv_certification() {
  const auto& C = corpus();
  int checks = 0, failures = 0, vacuous = 0, cert_failures = 0;
  double slack = 1.0;
  for (const CorpusEntry* e : C.connected) {
    const auto& X = e->complex;
    InstanceCache cache(X);
    for (const auto& order : orders_for(X)) {
      auto P = sequential_sweep(X, order);
      const double s2 = X.num_facets() <= 60 ? oracle::sigma2(P.matrix, X.pi(), X.pi()) : sigma2(P);
      double keep = 1.0;
      for (std::size_t j = 1; j < order.size(); ++j) {
        const double ej = cache.eps(SideSet(order.begin(), order.begin() + static_cast<long>(j)), {order[j]});
        keep *= 1.0 - ej * ej;
      }
      const double bound = 1.0 - keep;
      ++checks;
      if (bound >= 1.0 - 1e-12) {
        ++vacuous;
      } else {
        if (s2 * s2 > bound + 1e-8) ++failures;
        slack = std::min(slack, bound - s2 * s2);
      }
      for (const auto& c : certify_csv(cache, order))
        if (c.verdict == Verdict::Fail) ++cert_failures;
    }
  }
  std::ostringstream os;
  os << C.connected.size() << " instances, " << checks << " orders, " << vacuous << " vacuous, " << failures
     << " failures, min slack " << slack << ", certificate failures " << cert_failures;
  return {C.connected.size() >= 50 && failures == 0 && cert_failures == 0, os.str()};
}

Outcome cwadv_certification() {
  const auto& C = corpus();
  long checks = 0;
  int failures = 0, non_product = 0, tighter_instances = 0;
  for (const CorpusEntry* e : C.connected) {
    const auto& X = e->complex;
    const auto prof = eps_product_profile(X);
    const double emax = prof.empty() ? 0.0 : *std::max_element(prof.begin(), prof.end());
    bool tighter = true;
    for (int rank = 0; rank <= X.n() - 2; ++rank)
      for (const Face& a : faces_of_rank(X, rank)) {
        SideSet rest;
        for (int s : X.side_labels())
          if (!a.has_side(s)) rest.push_back(s);
        for (const auto& [I, J] : disjoint_pairs(rest)) {
          const double s2 = sigma2(colored_walk(X, a, I, J));
          double keep = 1.0;
          for (std::size_t p = 0; p < I.size(); ++p)
            for (std::size_t q = 0; q < J.size(); ++q) {
              const double v = prof[a.size() + p + q];
              keep *= 1.0 - v * v;
            }
          const double bound = 1.0 - keep;
          const double prior = static_cast<double>(I.size() * J.size()) * emax * emax;
          ++checks;
          if (bound < 1.0 - 1e-12 && s2 * s2 > bound + 1e-8) ++failures;
          if (prior < 1.0 && bound > prior + 1e-15) tighter = false;
        }
      }
    if (emax > 1e-10) {
      ++non_product;
      if (tighter) ++tighter_instances;
    }
  }
  const double share = non_product ? static_cast<double>(tighter_instances) / non_product : 1.0;
  std::ostringstream os;
  os << checks << " pinned walks, " << failures << " failures; tighter than prior on " << tighter_instances << "/"
     << non_product << " non-product instances";
  return {failures == 0 && share >= 0.8, os.str()};
}

Outcome geometry() {
  const auto& C = corpus();
  std::mt19937_64 g(99);
  std::normal_distribution<double> z;
  double cos_excess = -1.0, proj = 0.0, ssw_excess = -1.0;
  int dim_mismatch = 0;
  for (const CorpusEntry* e : C.connected) {
    const auto& X = e->complex;
    const SideSet all = X.side_labels();
    std::map<SideSet, WeightedSubspace> U;
    for (const auto& T : nonempty_subsets(all)) U.emplace(T, subspace_U(X, T));
    for (const auto& [I, J] : disjoint_pairs(all))
      cos_excess = std::max(cos_excess, subspace_cosine(U.at(I), U.at(J)) - eps_param(X, I, J));
    for (int i : all) proj = std::max(proj, max_abs(update_operator(X, i).matrix - projector(U.at({i}))));
    for (const auto& T : nonempty_subsets(all)) {
      WeightedSubspace acc = U.at({T[0]});
      for (std::size_t k = 1; k < T.size(); ++k) acc = subspace_intersection(acc, U.at({T[k]}));
      if (acc.dim() != static_cast<Eigen::Index>(marginal(X, complement(X, T)).size())) ++dim_mismatch;
    }
    double keep = 1.0;
    WeightedSubspace V = U.at({all[0]});
    for (std::size_t j = 1; j < all.size(); ++j) {
      const double c = subspace_cosine(U.at({all[j]}), V);
      keep *= 1.0 - c * c;
      V = subspace_intersection(V, U.at({all[j]}));
    }
    const Matrix star = projector(V);
    const Matrix P = sequential_sweep(X, all).matrix;
    for (int t = 0; t < 100; ++t) {
      Vector f(X.pi().size());
      for (Eigen::Index k = 0; k < f.size(); ++k) f[k] = z(g);
      const Vector fs = star * f;
      ssw_excess = std::max(ssw_excess, pnorm2(P * f - fs, X.pi()) - (1.0 - keep) * pnorm2(f - fs, X.pi()));
    }
  }
  std::ostringstream os;
  os << "cos-eps max " << cos_excess << ", projector residual " << proj << ", dim mismatches " << dim_mismatch
     << ", product-of-projections excess " << ssw_excess;
  return {cos_excess <= 1e-8 && proj <= 1e-10 && dim_mismatch == 0 && ssw_excess <= 1e-8, os.str()};
}

// Largest KL contraction ratio of C over a simplex grid, computed without the library search.
double grid_kappa(const MarkovOperator& C, int steps) {
  double best = 0.0;
  for_each_grid_point(static_cast<int>(C.rows()), steps, [&](const Vector& mu) {
    const double d = kl(mu, C.domain_measure);
    if (d > 1e-14) best = std::max(best, kl(C.matrix.transpose() * mu, C.codomain_measure) / d);
  });
  return best;
}

Outcome ecc_certification() {
  const auto& C = corpus();
  int instances = 0, orders = 0, failures = 0, cert_failures = 0;
  long points = 0;
  for (const auto& e : C.entries) {
    const auto& X = e.complex;
    if (X.n() < 2) continue;
    InstanceCache cache(X);
    bool any = false;
    for (const auto& order : all_orders(X)) {
      if (!ecc_feasible(cache, order)) continue;
      any = true;
      ++orders;
      double keep = 1.0;
      for (std::size_t j = 1; j < order.size(); ++j) {
        const SideSet prefix(order.begin(), order.begin() + static_cast<long>(j) - 1);
        const SideSet I(order.begin() + static_cast<long>(j), order.end());
        double kappa = 0.0;
        for (const Face& a : faces_of_type(X, prefix))
          kappa = std::max(kappa, grid_kappa(colored_walk(X, a, I, {order[j - 1]}), 100));
        keep *= 1.0 - kappa;
      }
      const double factor = 1.0 - keep;
      const Matrix P = sequential_sweep(X, order).matrix;
      for_each_grid_point(static_cast<int>(X.num_facets()), 20, [&](const Vector& mu) {
        ++points;
        if (kl(P.transpose() * mu, X.pi()) > factor * kl(mu, X.pi()) + 1e-8) ++failures;
      });
      if (certify_ecc(cache, order).verdict == Verdict::Fail) ++cert_failures;
    }
    if (any) ++instances;
  }
  std::ostringstream os;
  os << instances << " instances, " << orders << " orders, " << points << " grid points, " << failures
     << " failures, certificate failures " << cert_failures;
  return {instances >= 3 && failures == 0 && cert_failures == 0, os.str()};
}

Outcome glauber() {
  const auto& C = corpus();
  int lower_fail = 0, upper_fail = 0, upper_checks = 0;
  for (const auto& e : C.entries) {
    const auto& X = e.complex;
    const int n = X.n();
    Matrix avg = Matrix::Zero(X.pi().size(), X.pi().size());
    for (int i = 0; i < n; ++i) avg += update_operator(X, i).matrix / n;
    const Vector s = X.pi().cwiseSqrt();
    Eigen::SelfAdjointEigenSolver<Matrix> es(s.asDiagonal() * avg * s.cwiseInverse().asDiagonal());
    const Vector ev = es.eigenvalues();
    const double gap = ev.size() > 1 ? 1.0 - ev[ev.size() - 2] : 1.0;
    double keep = 1.0;
    for (double gm : gamma_params(X)) keep *= 1.0 - gm;
    if (gap < keep / n - 1e-8) ++lower_fail;
    bool big = true;
    for (const auto& vs : X.vertices()) big = big && vs.size() >= 2;
    if (big) {
      ++upper_checks;
      if (gap > 2.0 / n + 1e-8) ++upper_fail;
    }
  }
  const double bits = gap_glauber(uniform_product({2, 2}));
  std::ostringstream os;
  os << C.entries.size() << " instances, lower-bound failures " << lower_fail << ", upper-bound failures "
     << upper_fail << "/" << upper_checks << ", bits gap " << bits;
  return {lower_fail == 0 && upper_fail == 0 && std::abs(bits - 0.5) <= 1e-12, os.str()};
}

Outcome operator_algebra() {
  const auto& C = corpus();
  double worst = 0.0;
  std::mt19937_64 g(5);
  for (const auto& e : C.entries) {
    const auto& X = e.complex;
    const int n = X.n();
    const Vector& pi = X.pi();
    const bool brute = X.num_facets() <= 100;
    const auto raw = brute ? oracle::raw_of(X) : oracle::Raw{};
    for (int i = 0; i < n; ++i) {
      const Matrix Q = update_operator(X, i).matrix;
      worst = std::max(worst, max_abs(pi.transpose() * Q - pi.transpose()));
      worst = std::max(worst, max_abs(Q * Q - Q));
      worst = std::max(worst, max_abs(weighted_adjoint(update_operator(X, i)).matrix - Q));
      if (brute) worst = std::max(worst, max_abs(oracle::update_matrix(raw, i) - Q));
    }
    auto order = canonical_order(X);
    const auto P = sequential_sweep(X, order);
    std::reverse(order.begin(), order.end());
    worst = std::max(worst, max_abs(weighted_adjoint(P).matrix - sequential_sweep(X, order).matrix));
    const auto D = down_operator(X, n - 1);
    worst = std::max(worst, max_abs(compose(D, weighted_adjoint(D)).matrix - down_up_walk(X).matrix));
    if (n >= 2) {
      const Matrix phi = phi_vectors(X, Face{});
      worst = std::max(worst, max_abs(link_walk(X, Face{}).matrix * phi + phi / (n - 1)));
      for (int r = 0; r <= n - 2; ++r)
        for (const Face& a : faces_of_rank(X, r)) {
          const auto M = link_walk(X, a);
          const Matrix R = Matrix::Identity(M.rows(), M.rows()) - side_average_projector(X, a);
          worst = std::max(worst, max_abs((n - r - 1) * R * M.matrix * R - influence_matrix(X, a).matrix));
        }
      const SideSet rest = complement(X, {0});
      const auto Q1 = update_operator(X, 0);
      const auto Cw = colored_walk(X, Face{}, rest, {0});
      for (int t = 0; t < 5; ++t) {
        const Vector mu = oracle::random_simplex_point(g, pi.size(), t % 2 == 1);
        const auto after_sweep = marginal(X, push_forward(mu, sequential_sweep(X, canonical_order(X))), {0});
        const auto after_update = marginal(X, push_forward(mu, Q1), {0});
        worst = std::max(worst, (after_sweep.mass - after_update.mass).cwiseAbs().maxCoeff());
        const Vector via_walk = Cw.matrix.transpose() * as_vector(marginal(X, mu, rest), Cw.domain_states);
        worst = std::max(worst, (via_walk - as_vector(after_update, Cw.codomain_states)).cwiseAbs().maxCoeff());
      }
    }
  }
  std::ostringstream os;
  os << C.entries.size() << " instances, max residual " << worst;
  return {worst <= 1e-10, os.str()};
}

Outcome sampler_consistency() {
  auto X = single_edge_coloring(2, 3);
  const std::vector<int> order{0, 1};
  const Matrix P = sequential_sweep(X, order).matrix;
  const auto dists = empirical_distributions(X, order, 1, 100000, 20240601);
  double tvd = 0.0;
  for (Eigen::Index x = 0; x < P.rows(); ++x)
    tvd = std::max(tvd, 0.5 * (dists[1].row(x) - P.row(x)).cwiseAbs().sum());
  const auto est = empirical_mixing_time(X, order, 0.01, 20240601, 20000);
  const double bound = mixing_bounds(X, order, 0.01).spectral_bound;
  std::ostringstream os;
  os << "one-sweep TVD " << tvd << ", mixing time " << est.t << " vs spectral bound " << bound;
  return {tvd <= 0.01 && est.t <= std::ceil(bound), os.str()};
}

struct Run {
  int code = -1;
  std::string out;
};

Run run_cli(const std::string& args) {
  const std::string cmd = std::string("env -u HDX_SEED ") + HDX_CLI_PATH + " " + args;
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

Outcome determinism() {
  const std::string args = std::string("certify ") + HDX_CORPUS_DIR + "/manifest.json --suite all";
  const Run a = run_cli(args);
  const Run b = run_cli(args);
  std::ostringstream os;
  os << "exit codes " << a.code << "/" << b.code << ", " << a.out.size() << " bytes, identical "
     << (a.out == b.out ? "yes" : "no");
  return {a.code == 0 && b.code == 0 && !a.out.empty() && a.out == b.out, os.str()};
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;  // <= 0 means no runtime requirement
  std::function<Outcome()> check;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "appendix reproduction", 1.0, appendix},
      {2, "product baseline", 10.0, product_baseline},
      {3, "sweep variance certification", 300.0, csv_certification},
      {4, "colored walk certification", 0.0, cwadv_certification},
      {5, "subspace geometry", 0.0, geometry},
      {6, "entropy contraction certification", 600.0, ecc_certification},
      {7, "glauber gap bounds", 0.0, glauber},
      {8, "operator algebra", 0.0, operator_algebra},
      {9, "sampler consistency", 60.0, sampler_consistency},
      {10, "certify determinism", 0.0, determinism},
  };
  corpus();
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& ex) {
      o = {false, std::string("error: ") + ex.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (c.budget_s > 0 && secs > c.budget_s) {
      o.pass = false;
      o.detail += "; over time budget";
    }
    if (!o.pass) ++failed;
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2fs", secs);
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << c.id << " " << c.name << ": " << o.detail << " (" << timing
              << ")" << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
