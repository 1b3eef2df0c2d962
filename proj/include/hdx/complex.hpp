#ifndef HDX_COMPLEX_HPP
#define HDX_COMPLEX_HPP

#include <Eigen/Dense>

#include <compare>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hdx/error.hpp"

namespace hdx {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using SideSet = std::vector<int>;

// Partial assignment side -> vertex, kept sorted by side.
class Face {
 public:
  using Entry = std::pair<int, int>;

  Face() = default;
  explicit Face(std::vector<Entry> entries);

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::vector<Entry>& entries() const { return entries_; }

  SideSet type_set() const;
  bool has_side(int side) const;
  int value(int side) const;

  Face restrict(const SideSet& sides) const;
  Face without(int side) const;
  // Throws OverlappingColorSets when both faces assign a common side.
  Face join(const Face& other) const;
  bool contains(const Face& sub) const;

  // "1:0|2:3" with 1-based sides; "-" for the empty face.
  std::string label() const;

  auto operator<=>(const Face&) const = default;
  bool operator==(const Face&) const = default;

 private:
  std::vector<Entry> entries_;
};

struct Distribution {
  std::vector<Face> states;
  Vector mass;

  std::size_t size() const { return states.size(); }
  // -1 if absent.
  int find(const Face& f) const;
  double at(const Face& f) const;
  void validate(double tol = 1e-12) const;
};

// Immutable weighted pure partite complex. Sides carry global labels so that
// links keep the numbering of the parent complex.
class WeightedComplex {
 public:
  int n() const { return static_cast<int>(side_labels_.size()); }
  const SideSet& side_labels() const { return side_labels_; }
  const std::vector<std::vector<int>>& vertices() const { return vertices_; }
  const std::vector<int>& vertices_of(int side) const;
  const std::vector<Face>& facets() const { return facets_; }
  const Vector& pi() const { return pi_; }
  std::size_t num_facets() const { return facets_.size(); }

  int position_of(int side) const;  // -1 if not a side
  int index_of(const Face& facet) const;  // -1 if absent
  bool contains(const Face& face) const;
  Distribution facet_distribution() const { return {facets_, pi_}; }

  friend WeightedComplex make_complex(SideSet, std::vector<std::vector<int>>,
                                      std::vector<Face>, std::vector<double>);

 private:
  SideSet side_labels_;
  std::vector<std::vector<int>> vertices_;
  std::vector<Face> facets_;
  Vector pi_;
  std::map<Face, int> index_;
};

// Core constructor over labelled sides; validates and normalizes.
WeightedComplex make_complex(SideSet side_labels, std::vector<std::vector<int>> vertices,
                             std::vector<Face> facets, std::vector<double> weights);

// Sides numbered 0..n-1; each facet lists one vertex per side.
WeightedComplex build_complex(const std::vector<std::vector<int>>& sides,
                              const std::vector<std::vector<int>>& facets,
                              const std::vector<double>& weights);

WeightedComplex link(const WeightedComplex& X, const Face& alpha);
SideSet remaining_sides(const WeightedComplex& X, const Face& alpha);
SideSet complement(const WeightedComplex& X, const SideSet& S);

Distribution marginal(const WeightedComplex& X, const SideSet& S);
// Marginal of an arbitrary facet measure.
Distribution marginal(const WeightedComplex& X, const Vector& mu, const SideSet& S);
// Marginal on T of pi conditioned on containing alpha.
Distribution pinned_marginal(const WeightedComplex& X, const Face& alpha, const SideSet& T);
Distribution pinned_marginal(const WeightedComplex& X, const Vector& mu, const Face& alpha,
                             const SideSet& T);

std::vector<Face> faces_of_type(const WeightedComplex& X, const SideSet& S);
std::vector<Face> faces_of_rank(const WeightedComplex& X, int rank);

Distribution level_distribution(const WeightedComplex& X, int j);
Distribution level_distribution_by_steps(const WeightedComplex& X, int j);

std::vector<SideSet> subsets_of_size(const SideSet& universe, int k);
double binomial(int n, int k);

}  // namespace hdx

#endif  // HDX_COMPLEX_HPP
