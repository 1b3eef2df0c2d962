#include "hdx/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hdx/io.hpp"
#include "hdx/measures.hpp"
#include "hdx/spectra.hpp"
#include "hdx/walks.hpp"

namespace hdx {

using nlohmann::json;

namespace {

constexpr double kTol = 1e-8;

json one_based(const std::vector<int>& v) {
  json a = json::array();
  for (int x : v) a.push_back(x + 1);
  return a;
}

double product_of_complements(const std::vector<double>& eps) {
  double p = 1.0;
  for (double e : eps) p *= 1.0 - e * e;
  return p;
}

double max_or_zero(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, x);
  return m;
}

// Folds many checks of one inequality into a single certificate carrying the worst slack.
struct Aggregate {
  Aggregate(std::string i, std::string d) : id(std::move(i)), digest(std::move(d)) {}

  std::string id;
  std::string digest;
  int checks = 0, vacuous = 0, failures = 0;
  double worst_slack = -std::numeric_limits<double>::infinity();
  double measured = 0.0, bound = 0.0;
  json where;

  void add(double m, double b, bool vac, json at) {
    ++checks;
    if (vac) {
      ++vacuous;
      return;
    }
    if (judge(m, b, "<=", kTol, false) == Verdict::Fail) ++failures;
    if (m - b > worst_slack) {
      worst_slack = m - b;
      measured = m;
      bound = b;
      where = std::move(at);
    }
  }

  Certificate finish() const {
    Certificate c;
    c.theorem_id = id;
    c.inputs_digest = digest;
    c.tolerance = kTol;
    c.measured = measured;
    c.bound = bound;
    if (checks == vacuous) {
      c.verdict = Verdict::Vacuous;
    } else {
      c.verdict = failures ? Verdict::Fail : Verdict::Pass;
    }
    c.context = {{"checks", checks}, {"vacuous_checks", vacuous}, {"failures", failures}};
    if (!where.is_null()) c.context["worst"] = where;
    return c;
  }
};

json pinning_context(const Face& a, const SideSet& I, const SideSet& J) {
  return {{"pinning", a.label()}, {"I", one_based(I)}, {"J", one_based(J)}};
}

SideSet sorted(SideSet s) {
  std::sort(s.begin(), s.end());
  return s;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Vacuous: return "vacuous";
  }
  return "unknown";
}

Verdict judge(double measured, double bound, const std::string& direction, double tolerance, bool vacuous) {
  if (vacuous) return Verdict::Vacuous;
  const bool ok = direction == ">=" ? measured >= bound - tolerance : measured <= bound + tolerance;
  return ok ? Verdict::Pass : Verdict::Fail;
}

json to_json(const Certificate& c) {
  return {{"theorem_id", c.theorem_id}, {"measured", c.measured}, {"bound", c.bound},
          {"direction", c.direction},   {"tolerance", c.tolerance}, {"verdict", to_string(c.verdict)},
          {"inputs_digest", c.inputs_digest}, {"context", c.context}};
}

std::string side_set_label(const SideSet& S) {
  std::string s = "{";
  for (std::size_t k = 0; k < S.size(); ++k) {
    if (k) s += ',';
    s += std::to_string(S[k] + 1);
  }
  return s + "}";
}

InstanceCache::InstanceCache(const WeightedComplex& X) : X_(X), digest_(complex_digest(X)) {}

const std::vector<double>& InstanceCache::gamma() {
  if (!gamma_) gamma_ = gamma_params(X_);
  return *gamma_;
}

const std::vector<double>& InstanceCache::eps_profile() {
  if (!eps_profile_) eps_profile_ = eps_product_profile(X_);
  return *eps_profile_;
}

bool InstanceCache::link_connected() {
  for (double g : gamma())
    if (!(g < 1.0 - 1e-9)) return false;
  return true;
}

double InstanceCache::eps(const SideSet& I, const SideSet& J) {
  auto key = std::make_pair(sorted(I), sorted(J));
  auto it = eps_.find(key);
  if (it != eps_.end()) return it->second;
  double e = eps_param(X_, key.first, key.second);
  eps_.emplace(key, e);
  eps_.emplace(std::make_pair(key.second, key.first), e);
  return e;
}

const EtaEstimate& InstanceCache::eta(const SideSet& I, const SideSet& J, const ContractionSearch& search) {
  auto key = std::make_pair(sorted(I), sorted(J));
  auto it = eta_.find(key);
  if (it == eta_.end()) it = eta_.emplace(key, eta_param_estimate(X_, key.first, key.second, search)).first;
  return it->second;
}

std::vector<std::vector<int>> all_orders(const WeightedComplex& X) {
  std::vector<int> s = X.side_labels();
  std::vector<std::vector<int>> out;
  do out.push_back(s);
  while (std::next_permutation(s.begin(), s.end()));
  return out;
}

std::vector<double> sweep_chain_eps(InstanceCache& cache, const std::vector<int>& order) {
  std::vector<double> e;
  for (std::size_t j = 1; j < order.size(); ++j)
    e.push_back(cache.eps(SideSet(order.begin(), order.begin() + static_cast<long>(j)), {order[j]}));
  return e;
}

std::vector<Certificate> certify_csv(InstanceCache& cache, const std::vector<int>& order) {
  const WeightedComplex& X = cache.complex();
  check_order(X, order);
  const int n = X.n();
  const double s2 = sigma2(sequential_sweep(X, order));
  std::vector<Certificate> out;

  const std::vector<double> chain = sweep_chain_eps(cache, order);
  Certificate main;
  main.theorem_id = "sweep_variance_contraction";
  main.measured = s2 * s2;
  main.bound = 1.0 - product_of_complements(chain);
  main.inputs_digest = cache.digest();
  main.verdict = judge(main.measured, main.bound, "<=", kTol, main.bound >= 1.0 - 1e-12);
  main.context = {{"order", one_based(order)}, {"sigma2", s2}, {"eps_chain", chain}};
  out.push_back(main);
  if (n < 2) return out;

  const std::vector<double>& prof = cache.eps_profile();
  double prod = 1.0;
  for (int j = 2; j <= n; ++j)
    for (int p = 0; p <= j - 2; ++p) prod *= 1.0 - prof[n - j + p] * prof[n - j + p];
  Certificate pf = main;
  pf.theorem_id = "sweep_variance_contraction_product_form";
  pf.bound = 1.0 - prod;
  pf.verdict = judge(pf.measured, pf.bound, "<=", kTol, pf.bound >= 1.0 - 1e-12);
  pf.context = {{"order", one_based(order)}, {"sigma2", s2}, {"eps_profile", prof}};
  out.push_back(pf);

  const double e = max_or_zero(prof);
  Certificate lin;
  lin.theorem_id = "sweep_sigma_linear_in_eps";
  lin.measured = s2;
  lin.bound = n * e / std::sqrt(2.0);
  lin.inputs_digest = cache.digest();
  lin.verdict = judge(lin.measured, lin.bound, "<=", kTol, lin.bound >= 1.0);
  lin.context = {{"order", one_based(order)}, {"eps", e}};
  out.push_back(lin);

  const double g = cache.gamma()[static_cast<std::size_t>(n - 2)];
  const double gp = std::max(g, 0.0);
  const bool hyp = cache.link_connected() && (n <= 2 || 2.0 * n * gp <= static_cast<double>(n) / (n - 2));
  Certificate top;
  top.theorem_id = "sweep_sigma_from_top_link";
  top.measured = s2;
  top.bound = std::sqrt(2.0) * n * gp;
  top.inputs_digest = cache.digest();
  top.verdict = judge(top.measured, top.bound, "<=", kTol, !hyp || top.bound >= 1.0);
  top.context = {{"order", one_based(order)},
                 {"gamma_top", g},
                 {"hypothesis_holds", hyp},
                 {"tight", top.verdict != Verdict::Vacuous && s2 >= 0.9 * top.bound}};
  out.push_back(top);
  return out;
}

namespace {

double cwadv_bound(const std::vector<double>& prof, std::size_t rank, std::size_t ni, std::size_t nj) {
  double prod = 1.0;
  for (std::size_t p = 0; p < ni; ++p)
    for (std::size_t q = 0; q < nj; ++q) {
      const double e = prof[rank + p + q];
      prod *= 1.0 - e * e;
    }
  return 1.0 - prod;
}

}  // namespace

std::vector<Certificate> certify_cwadv(InstanceCache& cache, const Face& alpha, const SideSet& I,
                                       const SideSet& J) {
  const WeightedComplex& X = cache.complex();
  const double s2 = sigma2(colored_walk(X, alpha, I, J));
  const auto& prof = cache.eps_profile();
  Certificate c;
  c.theorem_id = "colored_walk_product_bound";
  c.measured = s2 * s2;
  c.bound = cwadv_bound(prof, alpha.size(), I.size(), J.size());
  c.inputs_digest = cache.digest();
  c.verdict = judge(c.measured, c.bound, "<=", kTol, c.bound >= 1.0 - 1e-12);
  c.context = pinning_context(alpha, I, J);
  Certificate prior = c;
  prior.theorem_id = "colored_walk_prior_bound";
  const double e = max_or_zero(prof);
  prior.bound = static_cast<double>(I.size() * J.size()) * e * e;
  prior.verdict = judge(prior.measured, prior.bound, "<=", kTol, prior.bound >= 1.0);
  return {c, prior};
}

std::vector<Certificate> certify_cwadv_all(InstanceCache& cache) {
  const WeightedComplex& X = cache.complex();
  const int n = X.n();
  Aggregate main{"colored_walk_product_bound", cache.digest()};
  Aggregate prior{"colored_walk_prior_bound", cache.digest()};
  int informative = 0, tighter = 0;
  if (n >= 2) {
    const auto& prof = cache.eps_profile();
    const double e = max_or_zero(prof);
    for (int rank = 0; rank <= n - 2; ++rank)
      for (const Face& a : faces_of_rank(X, rank)) {
        const SideSet rest = remaining_sides(X, a);
        const auto m = static_cast<int>(rest.size());
        int combos = 1;
        for (int k = 0; k < m; ++k) combos *= 3;
        for (int code = 0; code < combos; ++code) {
          SideSet I, J;
          int c = code;
          for (int k = 0; k < m; ++k, c /= 3) {
            if (c % 3 == 1) I.push_back(rest[k]);
            if (c % 3 == 2) J.push_back(rest[k]);
          }
          if (I.empty() || J.empty()) continue;
          const double s2 = sigma2(colored_walk(X, a, I, J));
          const double b = cwadv_bound(prof, a.size(), I.size(), J.size());
          const double bp = static_cast<double>(I.size() * J.size()) * e * e;
          main.add(s2 * s2, b, b >= 1.0 - 1e-12, pinning_context(a, I, J));
          prior.add(s2 * s2, bp, bp >= 1.0, pinning_context(a, I, J));
          if (bp < 1.0) {
            ++informative;
            if (b <= bp + 1e-15) ++tighter;
          }
        }
      }
  }
  Certificate c = main.finish();
  c.context["prior_informative_checks"] = informative;
  c.context["tighter_than_prior"] = tighter;
  return {c, prior.finish()};
}

bool ecc_feasible(InstanceCache& cache, const std::vector<int>& order, const EccOptions& opts) {
  const WeightedComplex& X = cache.complex();
  if (static_cast<int>(X.num_facets()) > opts.max_facets) return false;
  for (std::size_t j = 1; j < order.size(); ++j) {
    const SideSet prefix(order.begin(), order.begin() + static_cast<long>(j) - 1);
    const SideSet I(order.begin() + static_cast<long>(j), order.end());
    for (const Face& a : faces_of_type(X, prefix))
      if (static_cast<int>(pinned_marginal(X, a, I).size()) > opts.eta_search.max_grid_states) return false;
  }
  return true;
}

Certificate certify_ecc(InstanceCache& cache, const std::vector<int>& order, const EccOptions& opts) {
  const WeightedComplex& X = cache.complex();
  check_order(X, order);
  if (!ecc_feasible(cache, order, opts))
    throw Error(ErrorCode::InstanceTooLarge, "entropy grids would not be exhaustive");
  const int n = X.n();
  json etas = json::array();
  double prod = 1.0;
  for (int j = 1; j <= n - 1; ++j) {
    const SideSet I(order.begin() + j, order.end());
    const SideSet J{order[static_cast<std::size_t>(j - 1)]};
    const EtaEstimate& est = cache.eta(I, J, opts.eta_search);
    prod *= est.eta_hat;
    etas.push_back({{"I", one_based(I)},
                    {"J", one_based(J)},
                    {"kappa_hat", est.kappa_hat},
                    {"eta_hat", est.eta_hat},
                    {"direction", EtaEstimate::direction},
                    {"method", est.method}});
  }
  const double factor = 1.0 - prod;
  const MarkovOperator P = sequential_sweep(X, order);
  const Vector& pi = X.pi();
  double worst_excess = -std::numeric_limits<double>::infinity();
  double worst_ratio = 0.0;
  long points = 0;
  const int steps = static_cast<int>(std::lround(1.0 / opts.facet_grid_step));
  for_each_grid_point(static_cast<int>(X.num_facets()), steps, [&](const Vector& mu) {
    ++points;
    const double d = kl_divergence(mu, pi);
    const double dp = kl_divergence(Vector(P.matrix.transpose() * mu), pi);
    worst_excess = std::max(worst_excess, dp - factor * d);
    if (d > 1e-14) worst_ratio = std::max(worst_ratio, dp / d);
  });
  Certificate c;
  c.theorem_id = "sweep_entropy_contraction";
  c.measured = worst_excess;
  c.bound = 0.0;
  c.inputs_digest = cache.digest();
  c.verdict = judge(c.measured, c.bound, "<=", kTol, false);
  c.context = {{"order", one_based(order)},  {"contraction_factor", factor}, {"ec_lower", prod},
               {"worst_ratio", worst_ratio}, {"grid_points", points},         {"eta", etas},
               {"measured_is", "max over grid mu of D(mu P||pi) - factor * D(mu||pi)"}};
  return c;
}

std::vector<Certificate> certify_glauber(InstanceCache& cache) {
  const WeightedComplex& X = cache.complex();
  const int n = X.n();
  const double gap = gap_glauber(X);
  double prod = 1.0;
  for (double g : cache.gamma()) prod *= 1.0 - g;
  Certificate lo;
  lo.theorem_id = "glauber_gap_lower";
  lo.measured = gap;
  lo.direction = ">=";
  lo.bound = n > 0 ? prod / n : 1.0;
  lo.inputs_digest = cache.digest();
  lo.verdict = judge(lo.measured, lo.bound, ">=", kTol, lo.bound <= 0.0);
  lo.context = {{"gamma", cache.gamma()}};

  bool big_sides = n > 0;
  for (const auto& vs : X.vertices()) big_sides = big_sides && vs.size() >= 2;
  Certificate hi;
  hi.theorem_id = "glauber_gap_upper";
  hi.measured = gap;
  hi.bound = n > 0 ? 2.0 / n : 1.0;
  hi.inputs_digest = cache.digest();
  hi.verdict = judge(hi.measured, hi.bound, "<=", kTol, !big_sides || hi.bound >= 1.0 + 1e-12);
  hi.context = {{"all_sides_nontrivial", big_sides}};
  return {lo, hi};
}

std::vector<Certificate> certify_downtrickle(InstanceCache& cache) {
  const WeightedComplex& X = cache.complex();
  const int n = X.n();
  Aggregate trickle{"colored_walk_downtrickle", cache.digest()};
  Aggregate impl{"colored_walk_from_link_expansion", cache.digest()};
  double eps_star = std::numeric_limits<double>::infinity();
  bool hypothesis = false;
  if (n >= 2) {
    const auto& gamma = cache.gamma();
    const double gp = std::max(gamma[static_cast<std::size_t>(n - 2)], 0.0);
    const double den = 1.0 - (n - 2) * gp;
    hypothesis = den > 0.0;
    if (hypothesis) eps_star = gp / den;
    for (int k = 0; k <= n - 2; ++k) {
      const double level_bound_den = (k - 1) * eps_star + 1.0;
      const double tb = hypothesis && level_bound_den > 0.0 ? eps_star / level_bound_den
                                                            : std::numeric_limits<double>::infinity();
      const double ib = (n - 1 - k) * std::max(gamma[static_cast<std::size_t>(k)], 0.0);
      for (const Face& a : faces_of_rank(X, k)) {
        const SideSet rest = remaining_sides(X, a);
        for (std::size_t p = 0; p < rest.size(); ++p)
          for (std::size_t q = p + 1; q < rest.size(); ++q) {
            const double s = sigma2(colored_walk(X, a, {rest[p]}, {rest[q]}));
            trickle.add(s, tb, !(tb < 1.0), pinning_context(a, {rest[p]}, {rest[q]}));
            impl.add(s, ib, !(ib < 1.0), pinning_context(a, {rest[p]}, {rest[q]}));
          }
      }
    }
  }
  Certificate t = trickle.finish();
  t.context["hypothesis_holds"] = hypothesis;
  if (hypothesis) t.context["eps"] = eps_star;
  Certificate i = impl.finish();
  return {t, i};
}

MixingBounds mixing_bounds(const WeightedComplex& X, const std::vector<int>& order, double eps_target,
                           std::optional<double> ec_estimate) {
  if (!(eps_target > 0.0 && eps_target < 1.0)) throw Error(ErrorCode::InvalidArgument, "target must lie in (0,1)");
  const double s2 = sigma2(sequential_sweep(X, order));
  MixingBounds mb;
  mb.gap = 1.0 - s2;
  if (mb.gap <= 1e-12) throw Error(ErrorCode::ZeroGap, "sweep has no spectral gap");
  const double min_pi = X.pi().minCoeff();
  mb.spectral_bound = std::log(1.0 / (eps_target * std::sqrt(min_pi))) / mb.gap;
  if (ec_estimate && *ec_estimate > 0.0) {
    mb.ec_hat = ec_estimate;
    const double inner = std::log(1.0 / (eps_target * min_pi));
    mb.entropy_bound = inner > 1.0 ? std::log(inner) / *ec_estimate : 0.0;
  }
  return mb;
}

std::vector<Certificate> certify_suite(const WeightedComplex& X, const SuiteOptions& opts) {
  static const std::vector<std::string> suites{"all", "csv", "cwadv", "ecc", "glauber", "trickle"};
  if (std::find(suites.begin(), suites.end(), opts.suite) == suites.end())
    throw Error(ErrorCode::InvalidArgument, "unknown suite " + opts.suite);
  InstanceCache cache(X);
  const bool all = opts.suite == "all";
  std::vector<std::vector<int>> orders =
      opts.all_orders && X.n() <= 5 ? all_orders(X) : std::vector<std::vector<int>>{canonical_order(X)};
  std::vector<Certificate> out;
  auto append = [&](std::vector<Certificate> v) { out.insert(out.end(), v.begin(), v.end()); };
  if (all || opts.suite == "csv")
    for (const auto& o : orders) append(certify_csv(cache, o));
  if ((all || opts.suite == "cwadv") && X.n() >= 2) append(certify_cwadv_all(cache));
  if (all || opts.suite == "ecc")
    for (const auto& o : orders) {
      if (ecc_feasible(cache, o, opts.ecc)) {
        out.push_back(certify_ecc(cache, o, opts.ecc));
      } else {
        Certificate c;
        c.theorem_id = "sweep_entropy_contraction";
        c.verdict = Verdict::Vacuous;
        c.inputs_digest = cache.digest();
        c.context = {{"order", one_based(o)}, {"skipped", "InstanceTooLarge"}};
        out.push_back(c);
      }
    }
  if (all || opts.suite == "glauber") append(certify_glauber(cache));
  if ((all || opts.suite == "trickle") && X.n() >= 2) append(certify_downtrickle(cache));
  return out;
}

}  // namespace hdx
