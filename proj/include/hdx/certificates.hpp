#ifndef HDX_CERTIFICATES_HPP
#define HDX_CERTIFICATES_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "hdx/complex.hpp"
#include "hdx/contraction.hpp"

namespace hdx {

enum class Verdict { Pass, Fail, Vacuous };
std::string to_string(Verdict v);

struct Certificate {
  std::string theorem_id;
  double measured = 0.0;
  double bound = 0.0;
  std::string direction = "<=";  // measured <= bound, or ">="
  double tolerance = 1e-8;
  Verdict verdict = Verdict::Pass;
  std::string inputs_digest;
  nlohmann::json context = nlohmann::json::object();
};

nlohmann::json to_json(const Certificate& c);
// Pass iff the inequality holds within tolerance; vacuous overrides.
Verdict judge(double measured, double bound, const std::string& direction, double tolerance, bool vacuous);

// Memoizes the expensive instance parameters shared by several certificates.
class InstanceCache {
 public:
  explicit InstanceCache(const WeightedComplex& X);

  const WeightedComplex& complex() const { return X_; }
  const std::string& digest() const { return digest_; }
  const std::vector<double>& gamma();
  const std::vector<double>& eps_profile();
  bool link_connected();
  double eps(const SideSet& I, const SideSet& J);
  const EtaEstimate& eta(const SideSet& I, const SideSet& J, const ContractionSearch& search);

 private:
  WeightedComplex X_;
  std::string digest_;
  std::optional<std::vector<double>> gamma_, eps_profile_;
  std::map<std::pair<SideSet, SideSet>, double> eps_;
  std::map<std::pair<SideSet, SideSet>, EtaEstimate> eta_;
};

// eps^{I->J} terms along the sweep order: I = first j-1 sides, J = j-th side.
std::vector<double> sweep_chain_eps(InstanceCache& cache, const std::vector<int>& order);

// Main inequality plus its product form and the two corollary forms.
std::vector<Certificate> certify_csv(InstanceCache& cache, const std::vector<int>& order);
// Colored-walk bound and the prior |I||J| eps^2 bound for one pinning.
std::vector<Certificate> certify_cwadv(InstanceCache& cache, const Face& alpha, const SideSet& I,
                                       const SideSet& J);
// Every pinning and every ordered disjoint (I,J) of the remaining sides; reports the worst slack.
std::vector<Certificate> certify_cwadv_all(InstanceCache& cache);

struct EccOptions {
  double facet_grid_step = 0.05;
  int max_facets = 8;
  ContractionSearch eta_search{};  // grid_step 0.01 over at most 4 states
};
// Throws InstanceTooLarge when the grids would not be exhaustive.
Certificate certify_ecc(InstanceCache& cache, const std::vector<int>& order, const EccOptions& opts = {});
bool ecc_feasible(InstanceCache& cache, const std::vector<int>& order, const EccOptions& opts = {});

std::vector<Certificate> certify_glauber(InstanceCache& cache);
std::vector<Certificate> certify_downtrickle(InstanceCache& cache);

struct MixingBounds {
  double gap = 0.0;
  double spectral_bound = 0.0;
  std::optional<double> entropy_bound;  // universal constant taken as 1
  std::optional<double> ec_hat;
};
// Throws ZeroGap when sigma_2(P_SQ) is 1.
MixingBounds mixing_bounds(const WeightedComplex& X, const std::vector<int>& order, double eps_target,
                           std::optional<double> ec_estimate = std::nullopt);

struct SuiteOptions {
  std::string suite = "all";  // all | csv | cwadv | ecc | glauber | trickle
  bool all_orders = false;
  EccOptions ecc{};
};
std::vector<Certificate> certify_suite(const WeightedComplex& X, const SuiteOptions& opts = {});

std::vector<std::vector<int>> all_orders(const WeightedComplex& X);
std::string side_set_label(const SideSet& S);

}  // namespace hdx

#endif  // HDX_CERTIFICATES_HPP
