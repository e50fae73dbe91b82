#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "markovdim/interval.hpp"
#include "markovdim/words.hpp"

namespace markovdim {

// Transition graph of the subshift of finite type on m-blocks over {1,2}
// avoiding a forbidden set (words up to m+1 digits).  Each edge u -> v is
// weighted by a certified enclosure of the one-step contraction
// |g'(x)| = 1/(u_1 + x)^2 with x ranging over the cylinder of the target
// block v, so products along paths enclose cylinder contraction ratios.
struct TransitionGraph {
  int m = 0;
  std::vector<std::vector<std::uint8_t>> vertices;  // sorted m-blocks
  struct Edge {
    int from, to;
    Interval weight;
  };
  std::vector<Edge> edges;
  std::vector<std::vector<int>> out;  // edge indices by source vertex

  bool empty() const { return vertices.empty(); }
};

TransitionGraph build_graph(const ForbiddenSet& forbidden, int m);

// Certified enclosure of the Hausdorff dimension of the Gauss-Cantor set of
// the subshift: per strongly connected component, the zero of the certified
// Perron-root bracket of the sigma-th Hadamard power is bisected from both
// sides; the enclosure is the max over components.
struct DimEnclosure {
  double lo = 0.0;
  double hi = 0.0;
  int m = 0;
  int components = 0;  // SCCs with at least one internal edge
};

DimEnclosure dim_enclosure(const ForbiddenSet& forbidden, int m,
                           double tol = 1e-4);
DimEnclosure dim_enclosure(const TransitionGraph& graph, double tol = 1e-4);

// Dimension enclosures before and after adding one more forbidden word;
// `separated` reports whether the two enclosures are disjoint (a certified
// strict dimension drop).
struct DimensionDrop {
  DimEnclosure before, after;
  bool separated = false;
};

DimensionDrop dimension_drop(const ForbiddenSet& forbidden, const Word& extra,
                             int m, double tol = 1e-4);

std::string enclosure_to_json(const DimEnclosure& e);

}  // namespace markovdim
