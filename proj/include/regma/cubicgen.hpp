#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "regma/graph.hpp"

namespace regma {

struct CanonicalForm {
  std::string key;           // edge list of the relabeled graph
  std::vector<int> label;    // label[v] = canonical position of vertex v
  friend bool operator==(const CanonicalForm& a, const CanonicalForm& b) { return a.key == b.key; }
};

// Individualization-refinement over vertex orderings; the key is the minimal
// adjacency-multiplicity matrix over all leaves.
CanonicalForm canonical_form(const MultiGraph& g);
MultiGraph canonical_graph(const MultiGraph& g);
// Size of the automorphism group (counts leaves equal to the canonical one).
uint64_t automorphism_count(const MultiGraph& g);

// Connected cubic simple graphs on n vertices up to isomorphism, passing the
// filters, in canonical-key order. Returning false from the callback stops.
void generate_cubic(int n, int min_girth, bool three_edge_connected,
                    const std::function<bool(const MultiGraph&)>& emit);
std::vector<MultiGraph> cubic_graphs(int n, int min_girth = 0, bool three_edge_connected = false);

}  // namespace regma
