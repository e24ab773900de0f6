#include "regma/cubicgen.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "regma/error.hpp"

namespace regma {

namespace {

class Canonizer {
 public:
  Canonizer(const MultiGraph& g, bool prune)
      : n_(g.n()), adj_(g.n() * g.n(), 0), nbr_(g.n()), prune_(prune) {
    for (auto [u, v] : g.edges()) {
      ++adj_[u * n_ + v];
      if (u != v) ++adj_[v * n_ + u];
      nbr_[u].push_back(v);
      nbr_[v].push_back(u);
    }
  }

  void run() {
    std::vector<int> col(n_, 0);
    refine(col);
    std::vector<int> prefix;
    search(col, prefix);
  }

  std::vector<int> best_lab;  // best_lab[pos] = vertex
  std::vector<int> best;      // upper-triangular multiplicities in canonical order
  uint64_t equal_leaves = 0;

 private:
  int n_;
  std::vector<int> adj_;
  std::vector<std::vector<int>> nbr_;
  bool prune_;
  std::vector<int> first_lab, first;
  std::vector<std::vector<int>> autos_;

  // Colour refinement; new colours are ranks of (colour, sorted neighbour
  // colours), so cell order depends only on isomorphism-invariant data.
  void refine(std::vector<int>& col) const {
    int classes = -1;
    std::vector<std::vector<int>> sig(n_);
    std::vector<int> order(n_);
    for (;;) {
      for (int v = 0; v < n_; ++v) {
        auto& s = sig[v];
        s.clear();
        for (int u : nbr_[v]) s.push_back(col[u]);
        std::sort(s.begin(), s.end());
        s.insert(s.begin(), col[v]);
      }
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(), [&](int a, int b) { return sig[a] < sig[b]; });
      int k = 0;
      for (int i = 0; i < n_; ++i) {
        if (i > 0 && sig[order[i]] != sig[order[i - 1]]) ++k;
        col[order[i]] = k;
      }
      ++k;
      if (n_ == 0 || k == classes) return;
      classes = k;
    }
  }

  std::vector<int> orbit_roots(const std::vector<int>& prefix) const {
    std::vector<int> uf(n_);
    std::iota(uf.begin(), uf.end(), 0);
    auto find = [&](int x) {
      while (uf[x] != x) x = uf[x] = uf[uf[x]];
      return x;
    };
    for (const auto& a : autos_) {
      bool fixes = std::all_of(prefix.begin(), prefix.end(), [&](int p) { return a[p] == p; });
      if (!fixes) continue;
      for (int v = 0; v < n_; ++v) uf[find(v)] = find(a[v]);
    }
    for (int v = 0; v < n_; ++v) uf[v] = find(v);
    return uf;
  }

  void leaf(const std::vector<int>& col) {
    std::vector<int> lab(n_);
    for (int v = 0; v < n_; ++v) lab[col[v]] = v;
    std::vector<int> mat;
    mat.reserve(n_ * (n_ + 1) / 2);
    for (int i = 0; i < n_; ++i)
      for (int j = i; j < n_; ++j) mat.push_back(adj_[lab[i] * n_ + lab[j]]);
    if (first.empty()) {
      first = mat;
      first_lab = lab;
    } else if (mat == first) {
      record_auto(first_lab, lab);
    }
    if (best.empty() || mat < best) {
      best = std::move(mat);
      best_lab = lab;
      equal_leaves = 1;
    } else if (mat == best) {
      ++equal_leaves;
      record_auto(best_lab, lab);
    }
  }

  void record_auto(const std::vector<int>& a, const std::vector<int>& b) {
    if (!prune_ || a == b) return;
    std::vector<int> g(n_);
    for (int i = 0; i < n_; ++i) g[a[i]] = b[i];
    autos_.push_back(std::move(g));
  }

  void search(const std::vector<int>& col, std::vector<int>& prefix) {
    std::vector<int> size(n_, 0);
    for (int c : col) ++size[c];
    int target = -1;
    for (int c = 0; c < n_; ++c)
      if (size[c] > 1 && (target < 0 || size[c] < size[target])) target = c;
    if (target < 0) {
      leaf(col);
      return;
    }
    std::vector<int> explored;
    for (int w = 0; w < n_; ++w) {
      if (col[w] != target) continue;
      if (prune_ && !explored.empty()) {
        auto roots = orbit_roots(prefix);
        bool same = std::any_of(explored.begin(), explored.end(), [&](int u) { return roots[u] == roots[w]; });
        if (same) continue;
      }
      std::vector<int> c2(n_);
      for (int x = 0; x < n_; ++x) c2[x] = 2 * col[x] + (col[x] == target && x != w ? 1 : 0);
      refine(c2);
      prefix.push_back(w);
      search(c2, prefix);
      prefix.pop_back();
      explored.push_back(w);
    }
  }
};

MultiGraph relabel_sorted(const MultiGraph& g, const std::vector<int>& label) {
  std::vector<std::pair<int, int>> edges;
  for (auto [u, v] : g.edges()) {
    int a = label[u], b = label[v];
    edges.push_back({std::min(a, b), std::max(a, b)});
  }
  std::sort(edges.begin(), edges.end());
  return MultiGraph(g.n(), std::move(edges));
}

void check_guard(const MultiGraph& g) {
  if (g.n() > 20 && !guard_override()) throw GuardError("canonical_form: more than 20 vertices");
}

// Subdivides e1 and e2 (or e1 twice when e1 == e2) and joins the two new vertices.
MultiGraph insert_edge(const MultiGraph& g, int e1, int e2) {
  int x = g.n(), y = g.n() + 1;
  std::vector<std::pair<int, int>> edges;
  for (int e = 0; e < g.m(); ++e)
    if (e != e1 && e != e2) edges.push_back(g.edge(e));
  auto [a, b] = g.edge(e1);
  if (e1 == e2) {
    edges.insert(edges.end(), {{a, x}, {x, y}, {y, b}, {x, y}});
  } else {
    auto [c, d] = g.edge(e2);
    edges.insert(edges.end(), {{a, x}, {x, b}, {c, y}, {y, d}, {x, y}});
  }
  return MultiGraph(g.n() + 2, std::move(edges));
}

// Replaces the loop e at a by two pendant edges ending in new looped vertices.
MultiGraph expand_loop(const MultiGraph& g, int e) {
  int a = g.edge(e).first, x = g.n(), y = g.n() + 1;
  std::vector<std::pair<int, int>> edges;
  for (int f = 0; f < g.m(); ++f)
    if (f != e) edges.push_back(g.edge(f));
  edges.insert(edges.end(), {{a, x}, {a, y}, {x, x}, {y, y}});
  return MultiGraph(g.n() + 2, std::move(edges));
}

// 2 * loops + excess parallel multiplicity. One subdivision lowers it by at
// most one, so a graph with defect above target - n cannot reach a simple
// graph on target vertices.
int defect(const MultiGraph& g) {
  std::map<std::pair<int, int>, int> mult;
  int d = 0;
  for (auto [u, v] : g.edges()) {
    if (u == v) d += 2;
    else if (mult[{std::min(u, v), std::max(u, v)}]++ > 0) d += 1;
  }
  return d;
}

// Connected cubic multigraphs on n vertices that can still grow into simple
// graphs on target vertices, keyed by canonical form. Simple graphs alone are
// not closed under the inverse operation, hence loops and parallel edges at
// intermediate sizes. Every connected cubic multigraph on n >= 4 vertices
// shrinks by deleting an edge of a non-loop cycle and suppressing its ends,
// or, when every cycle is a loop, by collapsing two looped leaves at a common
// neighbour; the two growth steps below invert these.
std::map<std::string, MultiGraph> level(int n, int target) {
  std::map<std::string, MultiGraph> out;
  if (n == 2) {
    for (MultiGraph g : {catalog("theta"), MultiGraph(2, {{0, 0}, {0, 1}, {1, 1}})})
      if (defect(g) <= target - n) out.emplace(canonical_form(g).key, canonical_graph(g));
    return out;
  }
  auto add = [&](const MultiGraph& h) {
    if (defect(h) > target - n) return;
    CanonicalForm cf = canonical_form(h);
    if (!out.count(cf.key)) out.emplace(cf.key, relabel_sorted(h, cf.label));
  };
  for (const auto& [key, g] : level(n - 2, target)) {
    for (int e1 = 0; e1 < g.m(); ++e1)
      for (int e2 = e1; e2 < g.m(); ++e2) add(insert_edge(g, e1, e2));
    for (int e = 0; e < g.m(); ++e)
      if (g.is_loop(e)) add(expand_loop(g, e));
  }
  return out;
}

}  // namespace

CanonicalForm canonical_form(const MultiGraph& g) {
  check_guard(g);
  Canonizer c(g, true);
  c.run();
  CanonicalForm cf;
  int n = g.n();
  cf.label.assign(n, 0);
  for (int i = 0; i < n; ++i) cf.label[c.best_lab[i]] = i;
  cf.key = std::to_string(n) + ":";
  size_t k = 0;
  bool first = true;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j, ++k)
      for (int r = 0; r < c.best[k]; ++r) {
        if (!first) cf.key += ',';
        cf.key += std::to_string(i) + '-' + std::to_string(j);
        first = false;
      }
  return cf;
}

MultiGraph canonical_graph(const MultiGraph& g) { return relabel_sorted(g, canonical_form(g).label); }

uint64_t automorphism_count(const MultiGraph& g) {
  check_guard(g);
  Canonizer c(g, false);
  c.run();
  return c.equal_leaves;
}

void generate_cubic(int n, int min_girth, bool three_ec, const std::function<bool(const MultiGraph&)>& emit) {
  if (n % 2 != 0) throw PreconditionError("generate_cubic: n must be even");
  if (n < 4 || (n > 16 && !guard_override())) throw GuardError("generate_cubic: n must lie in 4..16");
  for (const auto& [key, g] : level(n, n)) {
    if (betti(g) != n / 2 + 1) throw Error("generate_cubic: internal error, Betti number");
    if (min_girth > 0 && girth(g).value_or(1 << 30) < min_girth) continue;
    if (three_ec && !three_edge_connected(g)) continue;
    if (!emit(g)) return;
  }
}

std::vector<MultiGraph> cubic_graphs(int n, int min_girth, bool three_ec) {
  std::vector<MultiGraph> out;
  generate_cubic(n, min_girth, three_ec, [&](const MultiGraph& g) {
    out.push_back(g);
    return true;
  });
  return out;
}

}  // namespace regma
