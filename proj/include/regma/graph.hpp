#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "regma/exact.hpp"

namespace regma {

// Finite multigraph. Loops and parallel edges are allowed; edge ids are
// positions in edges() and stay fixed for the lifetime of the value.
class MultiGraph {
 public:
  MultiGraph() = default;
  MultiGraph(int n, std::vector<std::pair<int, int>> edges);

  int n() const { return n_; }
  int m() const { return static_cast<int>(edges_.size()); }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  std::pair<int, int> edge(int e) const { return edges_[e]; }
  int other(int e, int v) const { return edges_[e].first == v ? edges_[e].second : edges_[e].first; }
  bool is_loop(int e) const { return edges_[e].first == edges_[e].second; }
  // Incident edge ids; a loop is listed twice.
  const std::vector<int>& incident(int v) const { return inc_[v]; }
  int degree(int v) const { return static_cast<int>(inc_[v].size()); }
  bool is_cubic() const;
  bool is_simple() const;

  friend bool operator==(const MultiGraph& a, const MultiGraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  int n_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> inc_;
};

using EdgeWeights = std::vector<Rat>;

struct Cycle {
  std::vector<int> edge_ids;  // sorted
  friend bool operator==(const Cycle& a, const Cycle& b) { return a.edge_ids == b.edge_ids; }
  friend bool operator<(const Cycle& a, const Cycle& b) { return a.edge_ids < b.edge_ids; }
};

bool is_cycle(const MultiGraph& g, const std::vector<int>& edge_ids);
Rat cycle_weight(const Cycle& c, const EdgeWeights& w);

int component_count(const MultiGraph& g);
std::vector<int> component_labels(const MultiGraph& g);
bool is_connected(const MultiGraph& g);
int betti(const MultiGraph& g);
// nullopt means the graph is a forest.
std::optional<int> girth(const MultiGraph& g);

// Smallest disconnecting edge set of size < k, first in lex order among those
// of minimal size. nullopt if none.
std::optional<std::vector<int>> edge_cut_below(const MultiGraph& g, int k);
bool three_edge_connected(const MultiGraph& g);

std::pair<Cycle, Rat> min_weight_cycle(const MultiGraph& g, const EdgeWeights& w);
std::vector<Cycle> enumerate_cycles(const MultiGraph& g);

MultiGraph delete_edges(const MultiGraph& g, std::vector<int> edges);
MultiGraph contract_edge(const MultiGraph& g, int e);
MultiGraph add_edge(const MultiGraph& g, int u, int v);
MultiGraph relabel(const MultiGraph& g, const std::vector<int>& perm);

// Moves the listed edge ends (edge ids at v; a loop id may appear twice) onto
// a new vertex n and joins it to v by a new edge with id m.
MultiGraph split_vertex_with(const MultiGraph& g, int v, const std::vector<int>& moved_ends);
MultiGraph split_vertex(const MultiGraph& g, int v);

enum class ReductionKind { join_components, contract_bridge, contract_two_cut, split_vertex };

struct ReductionStep {
  ReductionKind kind;
  std::vector<int> edges;  // edge ids in the graph before the step
  int vertex = -1;
  MultiGraph result;
};

struct Reduction {
  MultiGraph graph;
  std::vector<ReductionStep> trace;
};

Reduction reduce_to_cubic(const MultiGraph& g);
std::string to_string(ReductionKind k);

// Named graphs. Accepts theta, k<n>, k(n), k33, moebius_ladder(r), g53, g54,
// petersen, heawood, g1, f11, f12, f13, f14, moebius_kantor.
MultiGraph catalog(const std::string& name);
std::vector<std::string> catalog_names();

// Distinguished cycles of the catalog graphs, given as vertex sequences.
// surface is "torus" or "klein" when the cycle bounds a face of a known
// embedding of Euler characteristic 0, empty for purely structural cycles.
struct NamedCycle {
  std::string name;
  std::vector<int> vertices;
  std::string surface;
};
std::vector<NamedCycle> catalog_cycles(const std::string& graph_name);
Cycle cycle_from_vertices(const MultiGraph& g, const std::vector<int>& vertices);

std::ostream& operator<<(std::ostream& os, const MultiGraph& g);
MultiGraph parse_graph(std::istream& in);
EdgeWeights parse_weights(std::istream& in, int m);
// "builtin:NAME" for a catalog graph, otherwise a graph file path.
MultiGraph load_graph(const std::string& source);

}  // namespace regma
