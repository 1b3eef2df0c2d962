#include "hdx/walks.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace hdx {

void MarkovOperator::check(double tol) const {
  if (matrix.rows() != domain_measure.size() || matrix.cols() != codomain_measure.size())
    throw Error(ErrorCode::MeasureMismatch, "operator shape does not match its measures");
  if (!row_stochastic) return;
  if ((matrix.rowwise().sum().array() - 1.0).abs().maxCoeff() > tol)
    throw Error(ErrorCode::MeasureMismatch, "rows do not sum to one");
  Vector pushed = matrix.transpose() * domain_measure;
  if ((pushed - codomain_measure).cwiseAbs().maxCoeff() > tol)
    throw Error(ErrorCode::MeasureMismatch, "domain measure does not push forward to codomain measure");
}

MarkovOperator compose(const MarkovOperator& A, const MarkovOperator& B) {
  if (A.codomain_states != B.domain_states)
    throw Error(ErrorCode::DomainMismatch, "cannot compose operators on different state spaces");
  MarkovOperator out;
  out.matrix = A.matrix * B.matrix;
  out.domain_states = A.domain_states;
  out.codomain_states = B.codomain_states;
  out.domain_measure = A.domain_measure;
  out.codomain_measure = B.codomain_measure;
  out.row_stochastic = A.row_stochastic && B.row_stochastic;
  return out;
}

static MarkovOperator on_facets(const WeightedComplex& X, Matrix m) {
  MarkovOperator op;
  op.matrix = std::move(m);
  op.domain_states = X.facets();
  op.codomain_states = X.facets();
  op.domain_measure = X.pi();
  op.codomain_measure = X.pi();
  return op;
}

MarkovOperator conditional_resample(const WeightedComplex& X, const SideSet& keep) {
  const auto N = static_cast<Eigen::Index>(X.num_facets());
  SideSet sorted = keep;
  std::sort(sorted.begin(), sorted.end());
  std::map<Face, std::vector<Eigen::Index>> groups;
  for (Eigen::Index k = 0; k < N; ++k) groups[X.facets()[k].restrict(sorted)].push_back(k);
  Matrix Q = Matrix::Zero(N, N);
  for (const auto& [key, members] : groups) {
    double z = 0.0;
    for (auto k : members) z += X.pi()[k];
    for (auto a : members)
      for (auto b : members) Q(a, b) = X.pi()[b] / z;
  }
  return on_facets(X, std::move(Q));
}

MarkovOperator update_operator(const WeightedComplex& X, int side) {
  if (X.position_of(side) < 0) throw Error(ErrorCode::SideOutOfRange, "no side " + std::to_string(side + 1));
  SideSet keep;
  for (int s : X.side_labels())
    if (s != side) keep.push_back(s);
  return conditional_resample(X, keep);
}

MarkovOperator down_up_walk(const WeightedComplex& X) {
  const auto N = static_cast<Eigen::Index>(X.num_facets());
  if (X.n() == 0) return on_facets(X, Matrix::Identity(N, N));
  Matrix P = Matrix::Zero(N, N);
  for (int s : X.side_labels()) P += update_operator(X, s).matrix;
  P /= X.n();
  return on_facets(X, std::move(P));
}

std::vector<int> canonical_order(const WeightedComplex& X) { return X.side_labels(); }

void check_order(const WeightedComplex& X, const std::vector<int>& order) {
  std::vector<int> s = order;
  std::sort(s.begin(), s.end());
  if (s != X.side_labels()) throw Error(ErrorCode::NotAPermutation, "order is not a permutation of the sides");
}

MarkovOperator sequential_sweep(const WeightedComplex& X, const std::vector<int>& order) {
  check_order(X, order);
  const auto N = static_cast<Eigen::Index>(X.num_facets());
  Matrix P = Matrix::Identity(N, N);
  for (int s : order) P = (P * update_operator(X, s).matrix).eval();
  return on_facets(X, std::move(P));
}

static void check_pinning(const WeightedComplex& X, const Face& alpha) {
  for (int s : alpha.type_set())
    if (X.position_of(s) < 0) throw Error(ErrorCode::SideOutOfRange, "no side " + std::to_string(s + 1));
  if (!X.contains(alpha)) throw Error(ErrorCode::FaceNotInComplex, "face " + alpha.label() + " not in complex");
}

MarkovOperator colored_walk(const WeightedComplex& X, const Face& alpha, const SideSet& I,
                            const SideSet& J) {
  if (I.empty() || J.empty()) throw Error(ErrorCode::InvalidArgument, "color sets must be nonempty");
  std::set<int> used;
  for (int s : alpha.type_set()) used.insert(s);
  for (const SideSet* S : {&I, &J})
    for (int s : *S) {
      if (X.position_of(s) < 0) throw Error(ErrorCode::SideOutOfRange, "no side " + std::to_string(s + 1));
      if (!used.insert(s).second)
        throw Error(ErrorCode::OverlappingColorSets, "color sets overlap each other or the pinning");
    }
  check_pinning(X, alpha);
  SideSet Is = I, Js = J;
  std::sort(Is.begin(), Is.end());
  std::sort(Js.begin(), Js.end());

  std::map<Face, double> mi, mj;
  std::map<std::pair<Face, Face>, double> joint;
  double z = 0.0;
  for (std::size_t k = 0; k < X.num_facets(); ++k) {
    const Face& f = X.facets()[k];
    if (!f.contains(alpha)) continue;
    const double w = X.pi()[static_cast<Eigen::Index>(k)];
    Face a = f.restrict(Is), b = f.restrict(Js);
    mi[a] += w;
    mj[b] += w;
    joint[{std::move(a), std::move(b)}] += w;
    z += w;
  }
  MarkovOperator op;
  std::map<Face, Eigen::Index> ri, cj;
  for (const auto& [f, w] : mi) {
    ri.emplace(f, static_cast<Eigen::Index>(op.domain_states.size()));
    op.domain_states.push_back(f);
  }
  for (const auto& [f, w] : mj) {
    cj.emplace(f, static_cast<Eigen::Index>(op.codomain_states.size()));
    op.codomain_states.push_back(f);
  }
  op.domain_measure.resize(static_cast<Eigen::Index>(mi.size()));
  op.codomain_measure.resize(static_cast<Eigen::Index>(mj.size()));
  for (const auto& [f, w] : mi) op.domain_measure[ri[f]] = w / z;
  for (const auto& [f, w] : mj) op.codomain_measure[cj[f]] = w / z;
  op.matrix = Matrix::Zero(op.domain_measure.size(), op.codomain_measure.size());
  for (const auto& [key, w] : joint) op.matrix(ri[key.first], cj[key.second]) = w / mi[key.first];
  return op;
}

namespace {

struct LinkVertexData {
  std::vector<Face> states;
  std::vector<int> side_of;
  Vector side_mass;  // pi_i(x) for x on side i, normalized within the link
  Matrix pair_mass;  // pi_ij(x,y), normalized within the link
  int m = 0;
};

LinkVertexData link_vertex_data(const WeightedComplex& X, const Face& alpha) {
  check_pinning(X, alpha);
  LinkVertexData d;
  const SideSet rest = remaining_sides(X, alpha);
  d.m = static_cast<int>(rest.size());
  if (d.m < 2) throw Error(ErrorCode::FaceTooLarge, "link walk needs at least two free sides");
  std::set<Face> verts;
  for (const auto& f : X.facets())
    if (f.contains(alpha))
      for (int s : rest) verts.insert(Face({{s, f.value(s)}}));
  d.states.assign(verts.begin(), verts.end());
  std::map<Face, Eigen::Index> idx;
  for (std::size_t k = 0; k < d.states.size(); ++k) {
    idx.emplace(d.states[k], static_cast<Eigen::Index>(k));
    d.side_of.push_back(d.states[k].entries()[0].first);
  }
  const auto V = static_cast<Eigen::Index>(d.states.size());
  d.side_mass = Vector::Zero(V);
  d.pair_mass = Matrix::Zero(V, V);
  double z = 0.0;
  std::vector<Eigen::Index> at(rest.size());
  for (std::size_t k = 0; k < X.num_facets(); ++k) {
    const Face& f = X.facets()[k];
    if (!f.contains(alpha)) continue;
    const double w = X.pi()[static_cast<Eigen::Index>(k)];
    for (std::size_t p = 0; p < rest.size(); ++p) at[p] = idx[Face({{rest[p], f.value(rest[p])}})];
    for (std::size_t p = 0; p < rest.size(); ++p) {
      d.side_mass[at[p]] += w;
      for (std::size_t q = 0; q < rest.size(); ++q)
        if (p != q) d.pair_mass(at[p], at[q]) += w;
    }
    z += w;
  }
  d.side_mass /= z;
  d.pair_mass /= z;
  return d;
}

}  // namespace

MarkovOperator link_walk(const WeightedComplex& X, const Face& alpha) {
  LinkVertexData d = link_vertex_data(X, alpha);
  MarkovOperator op;
  op.matrix = d.side_mass.cwiseInverse().asDiagonal() * d.pair_mass / (d.m - 1);
  op.domain_states = d.states;
  op.codomain_states = d.states;
  op.domain_measure = d.side_mass / d.m;
  op.codomain_measure = op.domain_measure;
  return op;
}

MarkovOperator influence_matrix(const WeightedComplex& X, const Face& alpha) {
  LinkVertexData d = link_vertex_data(X, alpha);
  const auto V = static_cast<Eigen::Index>(d.states.size());
  Matrix inf = Matrix::Zero(V, V);
  for (Eigen::Index x = 0; x < V; ++x)
    for (Eigen::Index y = 0; y < V; ++y)
      if (d.side_of[x] != d.side_of[y]) inf(x, y) = d.pair_mass(x, y) / d.side_mass[x] - d.side_mass[y];
  MarkovOperator op;
  op.matrix = std::move(inf);
  op.domain_states = d.states;
  op.codomain_states = d.states;
  op.domain_measure = d.side_mass / d.m;
  op.codomain_measure = op.domain_measure;
  op.row_stochastic = false;
  return op;
}

Matrix side_average_projector(const WeightedComplex& X, const Face& alpha) {
  LinkVertexData d = link_vertex_data(X, alpha);
  const auto V = static_cast<Eigen::Index>(d.states.size());
  Matrix T = Matrix::Zero(V, V);
  for (Eigen::Index x = 0; x < V; ++x)
    for (Eigen::Index y = 0; y < V; ++y)
      if (d.side_of[x] == d.side_of[y]) T(x, y) = d.side_mass[y];
  return T;
}

Matrix phi_vectors(const WeightedComplex& X, const Face& alpha) {
  LinkVertexData d = link_vertex_data(X, alpha);
  const SideSet rest = remaining_sides(X, alpha);
  const auto V = static_cast<Eigen::Index>(d.states.size());
  Matrix phi(V, static_cast<Eigen::Index>(rest.size()));
  for (std::size_t c = 0; c < rest.size(); ++c)
    for (Eigen::Index x = 0; x < V; ++x)
      phi(x, static_cast<Eigen::Index>(c)) = d.side_of[x] == rest[c] ? d.m - 1.0 : -1.0;
  return phi;
}

MarkovOperator down_operator(const WeightedComplex& X, int level) {
  if (level < 0 || level > X.n()) throw Error(ErrorCode::LevelOutOfRange, "level " + std::to_string(level));
  Distribution lev = level_distribution(X, level);
  const double c = binomial(X.n(), level);
  const auto subsets = subsets_of_size(X.side_labels(), level);
  MarkovOperator op;
  op.matrix = Matrix::Zero(static_cast<Eigen::Index>(X.num_facets()), static_cast<Eigen::Index>(lev.size()));
  for (std::size_t k = 0; k < X.num_facets(); ++k)
    for (const auto& S : subsets)
      op.matrix(static_cast<Eigen::Index>(k), lev.find(X.facets()[k].restrict(S))) = 1.0 / c;
  op.domain_states = X.facets();
  op.codomain_states = lev.states;
  op.domain_measure = X.pi();
  op.codomain_measure = lev.mass;
  return op;
}

}  // namespace hdx
