#ifndef HDX_GENERATORS_HPP
#define HDX_GENERATORS_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hdx/complex.hpp"

namespace hdx {

using Edge = std::pair<int, int>;

// Proper q-colorings of a graph on m vertices, uniform weights; side v holds the colors of vertex v.
WeightedComplex coloring_complex(int m, const std::vector<Edge>& edges, int q);

// Single edge {0,1} among n vertices with k+1 colors.
WeightedComplex single_edge_coloring(int n, int k);

// Each side is a distribution over vertices 0..size-1.
WeightedComplex product_complex(const std::vector<Vector>& side_marginals);
WeightedComplex uniform_product(const std::vector<int>& side_sizes);

enum class WeightMode { Vertex, Facet };

struct RandomInstance {
  WeightedComplex complex;
  bool link_connected = false;
  int attempts = 0;
};

// Keeps each tuple with probability `density`. Vertex mode weighs a facet by a product of
// per-vertex weights (density 1 gives a product complex); facet mode draws each weight independently.
RandomInstance random_partite(const std::vector<int>& side_sizes, double density, std::uint64_t seed,
                              WeightMode mode = WeightMode::Vertex, int max_attempts = 1000);

}  // namespace hdx

#endif  // HDX_GENERATORS_HPP
