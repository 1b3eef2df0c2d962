#include "hdx/report.hpp"

#include <sstream>

#include "hdx/certificates.hpp"
#include "hdx/io.hpp"
#include "hdx/spectra.hpp"
#include "hdx/walks.hpp"

namespace hdx {

using nlohmann::json;

namespace {

std::string pair_key(int i, int j) { return std::to_string(i + 1) + "->" + std::to_string(j + 1); }

std::string sets_key(const SideSet& I, const SideSet& J) { return side_set_label(I) + "->" + side_set_label(J); }

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) s += ';';
    s += format_double(v[k]);
  }
  return s;
}

}  // namespace

SpectralReport analyze(const WeightedComplex& X, const AnalyzeOptions& opts) {
  InstanceCache cache(X);
  SpectralReport r;
  r.digest = cache.digest();
  r.n = X.n();
  r.num_facets = static_cast<int>(X.num_facets());
  r.gamma = cache.gamma();
  r.eps_profile = cache.eps_profile();
  r.link_connected = cache.link_connected();
  for (const auto& [ij, v] : eps_pairwise(X)) r.eps_pairwise[pair_key(ij.first, ij.second)] = v;

  const std::vector<int> canon = canonical_order(X);
  std::vector<std::vector<int>> orders = opts.orders.empty() ? std::vector<std::vector<int>>{canon} : opts.orders;
  for (const auto& o : orders) {
    check_order(X, o);
    OrderEntry e;
    for (int s : o) e.order.push_back(s + 1);
    e.sigma2 = sigma2(sequential_sweep(X, o));
    double prod = 1.0;
    const auto chain = sweep_chain_eps(cache, o);
    for (std::size_t j = 0; j < chain.size(); ++j) {
      prod *= 1.0 - chain[j] * chain[j];
      r.eps_sets[sets_key(SideSet(o.begin(), o.begin() + static_cast<long>(j) + 1), {o[j + 1]})] = chain[j];
    }
    e.csv_bound = 1.0 - prod;
    r.orders.push_back(e);
  }
  r.sigma2_sweep = sigma2(sequential_sweep(X, canon));
  r.gap_sweep = 1.0 - r.sigma2_sweep;
  r.gap_glauber = gap_glauber(X);

  if (opts.all_pairs) {
    const SideSet& s = X.side_labels();
    int combos = 1;
    for (std::size_t k = 0; k < s.size(); ++k) combos *= 3;
    for (int code = 0; code < combos; ++code) {
      SideSet I, J;
      int c = code;
      for (std::size_t k = 0; k < s.size(); ++k, c /= 3) {
        if (c % 3 == 1) I.push_back(s[k]);
        if (c % 3 == 2) J.push_back(s[k]);
      }
      if (I.empty() || J.empty() || I.front() > J.front()) continue;
      r.eps_sets[sets_key(I, J)] = cache.eps(I, J);
    }
  }

  for (std::size_t j = 1; j < canon.size(); ++j) {
    const SideSet I(canon.begin() + static_cast<long>(j), canon.end());
    const SideSet J{canon[j - 1]};
    const EtaEstimate& est = cache.eta(I, J, opts.search);
    r.eta_sets[sets_key(I, J)] = {est.kappa_hat, est.eta_hat, est.method};
  }

  if (static_cast<int>(X.num_facets()) <= opts.max_ec_facets) {
    ContractionEstimate ec = entropy_contraction_estimate(sequential_sweep(X, canon), opts.search);
    r.ec_sweep_lower = 1.0 - ec.kappa_hat;
  }

  if (opts.levels)
    for (int j = 0; j <= X.n(); ++j) {
      Distribution d = level_distribution(X, j);
      auto& m = r.levels[std::to_string(j)];
      for (std::size_t k = 0; k < d.size(); ++k) m[d.states[k].label()] = d.mass[static_cast<Eigen::Index>(k)];
    }
  return r;
}

json to_json(const SpectralReport& r) {
  json j;
  j["report_version"] = r.report_version;
  j["digest"] = r.digest;
  j["n"] = r.n;
  j["num_facets"] = r.num_facets;
  j["link_connected"] = r.link_connected;
  j["gamma"] = r.gamma;
  j["eps_profile"] = r.eps_profile;
  j["eps_pairwise"] = r.eps_pairwise;
  j["eps_sets"] = r.eps_sets;
  j["sigma2_sweep"] = r.sigma2_sweep;
  j["gap_sweep"] = r.gap_sweep;
  j["gap_glauber"] = r.gap_glauber;
  j["ec_sweep_lower"] = r.ec_sweep_lower ? json(*r.ec_sweep_lower) : json(nullptr);
  j["ec_sweep_direction"] = "ec_hat>=ec";
  json eta = json::object();
  for (const auto& [k, e] : r.eta_sets)
    eta[k] = {{"kappa_hat", e.kappa_hat}, {"eta_hat", e.eta_hat}, {"method", e.method},
              {"direction", EtaEstimate::direction}};
  j["eta_sets"] = eta;
  json orders = json::array();
  for (const auto& o : r.orders) orders.push_back({{"order", o.order}, {"sigma2", o.sigma2}, {"csv_bound", o.csv_bound}});
  j["orders"] = orders;
  if (!r.levels.empty()) j["levels"] = r.levels;
  return j;
}

SpectralReport report_from_json(const json& j) {
  try {
    SpectralReport r;
    r.report_version = j.at("report_version").get<int>();
    r.digest = j.at("digest").get<std::string>();
    r.n = j.at("n").get<int>();
    r.num_facets = j.at("num_facets").get<int>();
    r.link_connected = j.at("link_connected").get<bool>();
    r.gamma = j.at("gamma").get<std::vector<double>>();
    r.eps_profile = j.at("eps_profile").get<std::vector<double>>();
    r.eps_pairwise = j.at("eps_pairwise").get<std::map<std::string, double>>();
    r.eps_sets = j.at("eps_sets").get<std::map<std::string, double>>();
    r.sigma2_sweep = j.at("sigma2_sweep").get<double>();
    r.gap_sweep = j.at("gap_sweep").get<double>();
    r.gap_glauber = j.at("gap_glauber").get<double>();
    if (!j.at("ec_sweep_lower").is_null()) r.ec_sweep_lower = j.at("ec_sweep_lower").get<double>();
    for (const auto& [k, e] : j.at("eta_sets").items())
      r.eta_sets[k] = {e.at("kappa_hat").get<double>(), e.at("eta_hat").get<double>(), e.at("method").get<std::string>()};
    for (const auto& o : j.at("orders"))
      r.orders.push_back({o.at("order").get<std::vector<int>>(), o.at("sigma2").get<double>(),
                          o.at("csv_bound").get<double>()});
    if (j.contains("levels")) r.levels = j.at("levels").get<std::map<std::string, std::map<std::string, double>>>();
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

std::string csv_header() {
  return "name,digest,n,num_facets,link_connected,gamma,eps_profile,eps_pairwise,eps_sets,sigma2_sweep,"
         "gap_sweep,gap_glauber,ec_sweep_lower,eta_sets";
}

std::string csv_row(const SpectralReport& r, const std::string& name) {
  auto flat = [](const auto& m) {
    std::string s;
    for (const auto& [k, v] : m) {
      if (!s.empty()) s += ';';
      if constexpr (std::is_same_v<std::decay_t<decltype(v)>, EtaEntry>)
        s += k + "=" + format_double(v.eta_hat);
      else
        s += k + "=" + format_double(v);
    }
    return s;
  };
  std::ostringstream os;
  os << name << ',' << r.digest << ',' << r.n << ',' << r.num_facets << ',' << (r.link_connected ? 1 : 0) << ','
     << join(r.gamma) << ',' << join(r.eps_profile) << ",\"" << flat(r.eps_pairwise) << "\",\"" << flat(r.eps_sets)
     << "\","
     << format_double(r.sigma2_sweep) << ',' << format_double(r.gap_sweep) << ',' << format_double(r.gap_glauber)
     << ',' << (r.ec_sweep_lower ? format_double(*r.ec_sweep_lower) : std::string()) << ",\"" << flat(r.eta_sets) << '"';
  return os.str();
}

}  // namespace hdx
