#include "hdx/generators.hpp"

#include <cmath>

#include "hdx/rng.hpp"
#include "hdx/spectra.hpp"

namespace hdx {

namespace {

constexpr double kMaxTuples = 2e7;

// Calls visit(tuple) for every tuple of the mixed-radix product.
template <class F>
void for_each_tuple(const std::vector<int>& radix, F&& visit) {
  std::vector<int> t(radix.size(), 0);
  for (int r : radix)
    if (r <= 0) return;
  while (true) {
    visit(t);
    std::size_t p = radix.size();
    while (p > 0) {
      --p;
      if (++t[p] < radix[p]) break;
      t[p] = 0;
      if (p == 0) return;
    }
    if (radix.empty()) return;
  }
}

std::vector<std::vector<int>> iota_sides(const std::vector<int>& sizes) {
  std::vector<std::vector<int>> sides;
  for (int s : sizes) {
    std::vector<int> v(s);
    for (int i = 0; i < s; ++i) v[i] = i;
    sides.push_back(std::move(v));
  }
  return sides;
}

}  // namespace

WeightedComplex coloring_complex(int m, const std::vector<Edge>& edges, int q) {
  if (m < 0 || q < 1) throw Error(ErrorCode::InvalidArgument, "need m >= 0 vertices and q >= 1 colors");
  if (m > 10 || std::pow(static_cast<double>(q), m) > kMaxTuples)
    throw Error(ErrorCode::TooLarge, "coloring enumeration too large");
  for (const auto& [a, b] : edges)
    if (a < 0 || b < 0 || a >= m || b >= m)
      throw Error(ErrorCode::InvalidArgument, "edge endpoint out of range");
  std::vector<std::vector<int>> facets;
  for_each_tuple(std::vector<int>(m, q), [&](const std::vector<int>& c) {
    for (const auto& [a, b] : edges)
      if (c[a] == c[b]) return;
    facets.push_back(c);
  });
  if (facets.empty()) throw Error(ErrorCode::NoProperColoring, "graph has no proper coloring");
  return build_complex(iota_sides(std::vector<int>(m, q)), facets, std::vector<double>(facets.size(), 1.0));
}

WeightedComplex single_edge_coloring(int n, int k) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "single edge needs two vertices");
  return coloring_complex(n, {{0, 1}}, k + 1);
}

WeightedComplex product_complex(const std::vector<Vector>& side_marginals) {
  std::vector<int> sizes;
  double total = 1.0;
  for (const auto& m : side_marginals) {
    if (m.size() == 0) throw Error(ErrorCode::EmptySide, "side with no vertices");
    sizes.push_back(static_cast<int>(m.size()));
    total *= static_cast<double>(m.size());
  }
  if (total > kMaxTuples) throw Error(ErrorCode::TooLarge, "product too large");
  std::vector<std::vector<int>> facets;
  std::vector<double> weights;
  for_each_tuple(sizes, [&](const std::vector<int>& t) {
    double w = 1.0;
    for (std::size_t i = 0; i < t.size(); ++i) w *= side_marginals[i][t[i]];
    facets.push_back(t);
    weights.push_back(w);
  });
  return build_complex(iota_sides(sizes), facets, weights);
}

WeightedComplex uniform_product(const std::vector<int>& side_sizes) {
  std::vector<Vector> m;
  for (int s : side_sizes) m.push_back(s > 0 ? Vector::Constant(s, 1.0 / s) : Vector());
  return product_complex(m);
}

RandomInstance random_partite(const std::vector<int>& side_sizes, double density, std::uint64_t seed,
                              WeightMode mode, int max_attempts) {
  if (!(density > 0.0 && density <= 1.0)) throw Error(ErrorCode::InvalidArgument, "density must lie in (0,1]");
  double total = 1.0;
  for (int s : side_sizes) {
    if (s <= 0) throw Error(ErrorCode::EmptySide, "side with no vertices");
    total *= s;
  }
  if (total > kMaxTuples) throw Error(ErrorCode::TooLarge, "product too large");
  const auto sides = iota_sides(side_sizes);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    Rng rng(seed, static_cast<std::uint64_t>(attempt));
    std::vector<std::vector<double>> vw;
    for (int s : side_sizes) {
      std::vector<double> w(s);
      for (auto& x : w) x = 0.25 + rng.uniform();
      vw.push_back(std::move(w));
    }
    std::vector<std::vector<int>> facets;
    std::vector<double> weights;
    for_each_tuple(side_sizes, [&](const std::vector<int>& t) {
      const double keep = rng.uniform();
      double w;
      if (mode == WeightMode::Vertex) {
        w = 1.0;
        for (std::size_t i = 0; i < t.size(); ++i) w *= vw[i][t[i]];
      } else {
        w = 0.1 + rng.uniform();
      }
      if (keep < density) {
        facets.push_back(t);
        weights.push_back(w);
      }
    });
    try {
      RandomInstance out{build_complex(sides, facets, weights), false, attempt + 1};
      out.link_connected = is_link_connected(out.complex);
      return out;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotPure && e.code() != ErrorCode::EmptyComplex) throw;
    }
  }
  throw Error(ErrorCode::GenerationFailed, "no valid instance within the retry cap");
}

}  // namespace hdx
