#ifndef HDX_REPORT_HPP
#define HDX_REPORT_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "hdx/complex.hpp"
#include "hdx/contraction.hpp"

namespace hdx {

struct EtaEntry {
  double kappa_hat = 0.0;
  double eta_hat = 1.0;
  std::string method;
  bool operator==(const EtaEntry&) const = default;
};

struct OrderEntry {
  std::vector<int> order;  // 1-based
  double sigma2 = 0.0;
  double csv_bound = 0.0;
  bool operator==(const OrderEntry&) const = default;
};

struct SpectralReport {
  int report_version = 1;
  std::string digest;
  int n = 0;
  int num_facets = 0;
  bool link_connected = false;
  std::vector<double> gamma;
  std::vector<double> eps_profile;
  std::map<std::string, double> eps_pairwise;  // "1->2"
  std::map<std::string, double> eps_sets;      // "{1,2}->{3}"
  double sigma2_sweep = 0.0;
  double gap_sweep = 0.0;
  double gap_glauber = 0.0;
  // 1 - kappa_hat(P_SQ); kappa_hat <= kappa, so this sits at or above the true EC.
  std::optional<double> ec_sweep_lower;
  std::map<std::string, EtaEntry> eta_sets;
  std::vector<OrderEntry> orders;
  std::map<std::string, std::map<std::string, double>> levels;  // level -> face label -> mass

  bool operator==(const SpectralReport&) const = default;
};

struct AnalyzeOptions {
  std::vector<std::vector<int>> orders;  // 0-based; empty means canonical only
  bool all_pairs = false;                // every disjoint (I,J) instead of the sweep chain sets
  bool levels = false;
  int max_ec_facets = 400;
  ContractionSearch search{};
};

SpectralReport analyze(const WeightedComplex& X, const AnalyzeOptions& opts = {});

nlohmann::json to_json(const SpectralReport& r);
SpectralReport report_from_json(const nlohmann::json& j);
std::string csv_header();
std::string csv_row(const SpectralReport& r, const std::string& name);

}  // namespace hdx

#endif  // HDX_REPORT_HPP
