#include "hdx/complex.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace hdx {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicateFacet: return "DuplicateFacet";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::ZeroWeight: return "ZeroWeight";
    case ErrorCode::EmptyComplex: return "EmptyComplex";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::NotPure: return "NotPure";
    case ErrorCode::FaceNotInComplex: return "FaceNotInComplex";
    case ErrorCode::LevelOutOfRange: return "LevelOutOfRange";
    case ErrorCode::SupportViolation: return "SupportViolation";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::SideOutOfRange: return "SideOutOfRange";
    case ErrorCode::NotAPermutation: return "NotAPermutation";
    case ErrorCode::OverlappingColorSets: return "OverlappingColorSets";
    case ErrorCode::FaceTooLarge: return "FaceTooLarge";
    case ErrorCode::ZeroMassState: return "ZeroMassState";
    case ErrorCode::MeasureMismatch: return "MeasureMismatch";
    case ErrorCode::InstanceTooLarge: return "InstanceTooLarge";
    case ErrorCode::ZeroGap: return "ZeroGap";
    case ErrorCode::NoProperColoring: return "NoProperColoring";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::EmptySide: return "EmptySide";
    case ErrorCode::GenerationFailed: return "GenerationFailed";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Face::Face(std::vector<Entry> entries) : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end());
  for (std::size_t k = 1; k < entries_.size(); ++k) {
    if (entries_[k].first == entries_[k - 1].first)
      throw Error(ErrorCode::ArityMismatch,
                  "side " + std::to_string(entries_[k].first + 1) + " assigned twice");
  }
}

SideSet Face::type_set() const {
  SideSet out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.first);
  return out;
}

bool Face::has_side(int side) const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [side](const Entry& e) { return e.first == side; });
}

int Face::value(int side) const {
  for (const auto& e : entries_)
    if (e.first == side) return e.second;
  throw Error(ErrorCode::SideOutOfRange, "face does not assign side " + std::to_string(side + 1));
}

Face Face::restrict(const SideSet& sides) const {
  Face out;
  for (const auto& e : entries_)
    if (std::find(sides.begin(), sides.end(), e.first) != sides.end()) out.entries_.push_back(e);
  return out;
}

Face Face::without(int side) const {
  Face out;
  for (const auto& e : entries_)
    if (e.first != side) out.entries_.push_back(e);
  return out;
}

Face Face::join(const Face& other) const {
  std::vector<Entry> merged;
  merged.reserve(size() + other.size());
  std::merge(entries_.begin(), entries_.end(), other.entries_.begin(), other.entries_.end(),
             std::back_inserter(merged));
  for (std::size_t k = 1; k < merged.size(); ++k)
    if (merged[k].first == merged[k - 1].first)
      throw Error(ErrorCode::OverlappingColorSets, "join of faces sharing a side");
  Face out;
  out.entries_ = std::move(merged);
  return out;
}

bool Face::contains(const Face& sub) const {
  return std::includes(entries_.begin(), entries_.end(), sub.entries_.begin(), sub.entries_.end());
}

std::string Face::label() const {
  if (entries_.empty()) return "-";
  std::ostringstream os;
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    if (k) os << '|';
    os << entries_[k].first + 1 << ':' << entries_[k].second;
  }
  return os.str();
}

int Distribution::find(const Face& f) const {
  auto it = std::lower_bound(states.begin(), states.end(), f);
  if (it == states.end() || !(*it == f)) return -1;
  return static_cast<int>(it - states.begin());
}

double Distribution::at(const Face& f) const {
  int k = find(f);
  return k < 0 ? 0.0 : mass[k];
}

void Distribution::validate(double tol) const {
  if (static_cast<std::size_t>(mass.size()) != states.size())
    throw Error(ErrorCode::InvalidArgument, "distribution size mismatch");
  if ((mass.array() < 0).any()) throw Error(ErrorCode::InvalidArgument, "negative mass");
  if (std::abs(mass.sum() - 1.0) > tol)
    throw Error(ErrorCode::InvalidArgument, "mass does not sum to 1");
}

const std::vector<int>& WeightedComplex::vertices_of(int side) const {
  int p = position_of(side);
  if (p < 0) throw Error(ErrorCode::SideOutOfRange, "no side " + std::to_string(side + 1));
  return vertices_[p];
}

int WeightedComplex::position_of(int side) const {
  auto it = std::lower_bound(side_labels_.begin(), side_labels_.end(), side);
  if (it == side_labels_.end() || *it != side) return -1;
  return static_cast<int>(it - side_labels_.begin());
}

int WeightedComplex::index_of(const Face& facet) const {
  auto it = index_.find(facet);
  return it == index_.end() ? -1 : it->second;
}

bool WeightedComplex::contains(const Face& face) const {
  for (const auto& [side, v] : face.entries()) {
    int p = position_of(side);
    if (p < 0 || !std::binary_search(vertices_[p].begin(), vertices_[p].end(), v)) return false;
  }
  return std::any_of(facets_.begin(), facets_.end(),
                     [&](const Face& f) { return f.contains(face); });
}

WeightedComplex make_complex(SideSet side_labels, std::vector<std::vector<int>> vertices,
                             std::vector<Face> facets, std::vector<double> weights) {
  const std::size_t n = side_labels.size();
  if (vertices.size() != n) throw Error(ErrorCode::ArityMismatch, "vertex lists do not match sides");
  if (facets.empty()) throw Error(ErrorCode::EmptyComplex, "no facets");
  if (weights.size() != facets.size())
    throw Error(ErrorCode::ArityMismatch, "one weight per facet required");
  if (!std::is_sorted(side_labels.begin(), side_labels.end()) ||
      std::adjacent_find(side_labels.begin(), side_labels.end()) != side_labels.end())
    throw Error(ErrorCode::InvalidArgument, "side labels must be strictly increasing");
  for (auto& vs : vertices) {
    std::sort(vs.begin(), vs.end());
    if (std::adjacent_find(vs.begin(), vs.end()) != vs.end())
      throw Error(ErrorCode::InvalidArgument, "repeated vertex within a side");
  }

  std::vector<std::size_t> order(facets.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::vector<std::set<int>> seen(n);
  for (std::size_t k = 0; k < facets.size(); ++k) {
    const Face& f = facets[k];
    if (f.size() != n) throw Error(ErrorCode::ArityMismatch, "facet " + f.label() + " has wrong arity");
    for (std::size_t p = 0; p < n; ++p) {
      const auto& [side, v] = f.entries()[p];
      if (side != side_labels[p])
        throw Error(ErrorCode::ArityMismatch, "facet " + f.label() + " misses a side");
      if (!std::binary_search(vertices[p].begin(), vertices[p].end(), v))
        throw Error(ErrorCode::UnknownVertex, "facet " + f.label() + " uses an unlisted vertex");
      seen[p].insert(v);
    }
    if (!(weights[k] > 0.0) || !std::isfinite(weights[k]))
      throw Error(ErrorCode::ZeroWeight, "facet " + f.label() + " has nonpositive weight");
  }
  for (std::size_t p = 0; p < n; ++p)
    if (seen[p].size() != vertices[p].size())
      throw Error(ErrorCode::NotPure,
                  "side " + std::to_string(side_labels[p] + 1) + " has a vertex in no facet");

  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return facets[a] < facets[b]; });
  WeightedComplex X;
  X.side_labels_ = std::move(side_labels);
  X.vertices_ = std::move(vertices);
  X.facets_.reserve(facets.size());
  X.pi_.resize(static_cast<Eigen::Index>(facets.size()));
  double total = 0.0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const Face& f = facets[order[k]];
    if (k > 0 && f == X.facets_.back())
      throw Error(ErrorCode::DuplicateFacet, "facet " + f.label() + " listed twice");
    X.facets_.push_back(f);
    X.pi_[static_cast<Eigen::Index>(k)] = weights[order[k]];
    total += weights[order[k]];
  }
  X.pi_ /= total;
  for (std::size_t k = 0; k < X.facets_.size(); ++k) X.index_.emplace(X.facets_[k], static_cast<int>(k));
  return X;
}

WeightedComplex build_complex(const std::vector<std::vector<int>>& sides,
                              const std::vector<std::vector<int>>& facets,
                              const std::vector<double>& weights) {
  const int n = static_cast<int>(sides.size());
  if (facets.empty()) throw Error(ErrorCode::EmptyComplex, "no facets");
  SideSet labels(n);
  for (int i = 0; i < n; ++i) labels[i] = i;
  std::vector<Face> faces;
  faces.reserve(facets.size());
  for (const auto& coords : facets) {
    if (static_cast<int>(coords.size()) != n)
      throw Error(ErrorCode::ArityMismatch, "facet with " + std::to_string(coords.size()) +
                                                " coordinates in a " + std::to_string(n) + "-partite complex");
    std::vector<Face::Entry> e;
    e.reserve(n);
    for (int i = 0; i < n; ++i) e.emplace_back(i, coords[i]);
    faces.emplace_back(std::move(e));
  }
  return make_complex(std::move(labels), sides, std::move(faces), weights);
}

SideSet remaining_sides(const WeightedComplex& X, const Face& alpha) {
  SideSet out;
  for (int s : X.side_labels())
    if (!alpha.has_side(s)) out.push_back(s);
  return out;
}

SideSet complement(const WeightedComplex& X, const SideSet& S) {
  SideSet out;
  for (int s : X.side_labels())
    if (std::find(S.begin(), S.end(), s) == S.end()) out.push_back(s);
  return out;
}

static void check_sides(const WeightedComplex& X, const SideSet& S) {
  for (int s : S)
    if (X.position_of(s) < 0) throw Error(ErrorCode::SideOutOfRange, "no side " + std::to_string(s + 1));
}

WeightedComplex link(const WeightedComplex& X, const Face& alpha) {
  check_sides(X, alpha.type_set());
  SideSet rest = remaining_sides(X, alpha);
  std::vector<std::set<int>> verts(rest.size());
  std::vector<Face> facets;
  std::vector<double> weights;
  for (std::size_t k = 0; k < X.num_facets(); ++k) {
    const Face& f = X.facets()[k];
    if (!f.contains(alpha)) continue;
    Face r = f.restrict(rest);
    for (std::size_t p = 0; p < rest.size(); ++p) verts[p].insert(r.entries()[p].second);
    facets.push_back(std::move(r));
    weights.push_back(X.pi()[static_cast<Eigen::Index>(k)]);
  }
  if (facets.empty()) throw Error(ErrorCode::FaceNotInComplex, "face " + alpha.label() + " not in complex");
  std::vector<std::vector<int>> vs;
  for (auto& s : verts) vs.emplace_back(s.begin(), s.end());
  return make_complex(std::move(rest), std::move(vs), std::move(facets), std::move(weights));
}

static Distribution accumulate(const WeightedComplex& X, const Vector& mu, const Face& alpha,
                               const SideSet& T, bool normalize) {
  check_sides(X, T);
  SideSet sorted = T;
  std::sort(sorted.begin(), sorted.end());
  std::map<Face, double> acc;
  double total = 0.0;
  for (std::size_t k = 0; k < X.num_facets(); ++k) {
    const Face& f = X.facets()[k];
    if (!alpha.empty() && !f.contains(alpha)) continue;
    double w = mu[static_cast<Eigen::Index>(k)];
    acc[f.restrict(sorted)] += w;
    total += w;
  }
  if (acc.empty()) throw Error(ErrorCode::FaceNotInComplex, "face " + alpha.label() + " not in complex");
  Distribution d;
  d.mass.resize(static_cast<Eigen::Index>(acc.size()));
  Eigen::Index k = 0;
  for (auto& [f, w] : acc) {
    d.states.push_back(f);
    d.mass[k++] = w;
  }
  if (normalize) {
    if (!(total > 0.0)) throw Error(ErrorCode::ZeroMassState, "pinning " + alpha.label() + " has no mass");
    d.mass /= total;
  }
  return d;
}

Distribution marginal(const WeightedComplex& X, const SideSet& S) {
  return accumulate(X, X.pi(), Face{}, S, false);
}

Distribution marginal(const WeightedComplex& X, const Vector& mu, const SideSet& S) {
  if (static_cast<std::size_t>(mu.size()) != X.num_facets())
    throw Error(ErrorCode::DomainMismatch, "measure size does not match facet count");
  return accumulate(X, mu, Face{}, S, false);
}

Distribution pinned_marginal(const WeightedComplex& X, const Face& alpha, const SideSet& T) {
  return accumulate(X, X.pi(), alpha, T, true);
}

Distribution pinned_marginal(const WeightedComplex& X, const Vector& mu, const Face& alpha,
                             const SideSet& T) {
  if (static_cast<std::size_t>(mu.size()) != X.num_facets())
    throw Error(ErrorCode::DomainMismatch, "measure size does not match facet count");
  return accumulate(X, mu, alpha, T, true);
}

std::vector<Face> faces_of_type(const WeightedComplex& X, const SideSet& S) {
  return marginal(X, S).states;
}

std::vector<SideSet> subsets_of_size(const SideSet& universe, int k) {
  std::vector<SideSet> out;
  const int m = static_cast<int>(universe.size());
  if (k < 0 || k > m) return out;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    SideSet s;
    for (int i : idx) s.push_back(universe[i]);
    out.push_back(std::move(s));
    int i = k - 1;
    while (i >= 0 && idx[i] == m - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

std::vector<Face> faces_of_rank(const WeightedComplex& X, int rank) {
  std::vector<Face> out;
  for (const auto& S : subsets_of_size(X.side_labels(), rank)) {
    auto fs = faces_of_type(X, S);
    out.insert(out.end(), fs.begin(), fs.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

Distribution level_distribution(const WeightedComplex& X, int j) {
  if (j < 0 || j > X.n()) throw Error(ErrorCode::LevelOutOfRange, "level " + std::to_string(j));
  const double c = binomial(X.n(), j);
  std::vector<std::pair<Face, double>> items;
  for (const auto& S : subsets_of_size(X.side_labels(), j)) {
    Distribution m = marginal(X, S);
    for (std::size_t k = 0; k < m.size(); ++k) items.emplace_back(m.states[k], m.mass[k] / c);
  }
  std::sort(items.begin(), items.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  Distribution d;
  d.mass.resize(static_cast<Eigen::Index>(items.size()));
  for (std::size_t k = 0; k < items.size(); ++k) {
    d.states.push_back(items[k].first);
    d.mass[static_cast<Eigen::Index>(k)] = items[k].second;
  }
  return d;
}

Distribution level_distribution_by_steps(const WeightedComplex& X, int j) {
  if (j < 0 || j > X.n()) throw Error(ErrorCode::LevelOutOfRange, "level " + std::to_string(j));
  std::map<Face, double> cur;
  for (std::size_t k = 0; k < X.num_facets(); ++k) cur[X.facets()[k]] = X.pi()[static_cast<Eigen::Index>(k)];
  for (int level = X.n(); level > j; --level) {
    std::map<Face, double> next;
    for (const auto& [beta, w] : cur)
      for (const auto& e : beta.entries()) next[beta.without(e.first)] += w / level;
    cur = std::move(next);
  }
  Distribution d;
  d.mass.resize(static_cast<Eigen::Index>(cur.size()));
  Eigen::Index k = 0;
  for (const auto& [f, w] : cur) {
    d.states.push_back(f);
    d.mass[k++] = w;
  }
  return d;
}

}  // namespace hdx
