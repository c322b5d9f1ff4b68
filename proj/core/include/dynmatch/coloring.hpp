#pragma once

#include <map>
#include <vector>

#include "dynmatch/graph.hpp"

namespace dynmatch {

using Edge = std::pair<VertexId, VertexId>;
using EdgeList = std::vector<Edge>;

// Proper edge coloring with colors in [1, num_colors], num_colors <= Delta+1.
struct EdgeColoring {
    std::map<Edge, int> colors;  // keyed by (u, v) with u < v
    int num_colors = 0;          // Delta + 1

    int color_of(VertexId u, VertexId v) const { return colors.at(edge_key(u, v)); }
};

// Deterministic Misra-Gries fan rotation.  Tie-breaking: fans extend with the
// smallest-id eligible neighbor, free-color searches scan colors ascending,
// edges are processed in lexicographically ascending (u, v) order.
// Errors if an edge of `edges` is absent from g.
EdgeColoring color_edges(const DynGraph& g, const EdgeList& edges);

// Splits a proper coloring into `num_classes` vertex-disjoint matchings,
// padding with empty classes; class i (1-based) holds the edges of color i.
// Errors if num_classes < the number of colors actually used.
std::vector<EdgeList> matchings_from_coloring(const EdgeColoring& coloring, int num_classes);

}  // namespace dynmatch
