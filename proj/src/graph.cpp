#include "regma/graph.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <queue>
#include <set>
#include <sstream>

#include "regma/error.hpp"

namespace regma {

MultiGraph::MultiGraph(int n, std::vector<std::pair<int, int>> edges)
    : n_(n), edges_(std::move(edges)), inc_(n < 0 ? 0 : n) {
  if (n < 0) throw PreconditionError("negative vertex count");
  for (int e = 0; e < m(); ++e) {
    auto [u, v] = edges_[e];
    if (u < 0 || v < 0 || u >= n || v >= n) throw PreconditionError("edge endpoint out of range");
    inc_[u].push_back(e);
    inc_[v].push_back(e);
  }
}

bool MultiGraph::is_cubic() const {
  for (int v = 0; v < n_; ++v)
    if (degree(v) != 3) return false;
  return true;
}

bool MultiGraph::is_simple() const {
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : edges_) {
    if (u == v) return false;
    if (!seen.insert({std::min(u, v), std::max(u, v)}).second) return false;
  }
  return true;
}

bool is_cycle(const MultiGraph& g, const std::vector<int>& ids) {
  if (ids.empty()) return false;
  std::map<int, int> deg;
  std::set<int> uniq(ids.begin(), ids.end());
  if (uniq.size() != ids.size()) return false;
  for (int e : ids) {
    if (e < 0 || e >= g.m()) return false;
    auto [u, v] = g.edge(e);
    deg[u]++;
    deg[v]++;
  }
  for (auto [v, d] : deg)
    if (d != 2) return false;
  // connectivity of the selected edges
  std::map<int, std::vector<int>> adj;
  for (int e : ids) {
    auto [u, v] = g.edge(e);
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::set<int> seen{deg.begin()->first};
  std::vector<int> stack{deg.begin()->first};
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int y : adj[x])
      if (seen.insert(y).second) stack.push_back(y);
  }
  return seen.size() == deg.size();
}

Rat cycle_weight(const Cycle& c, const EdgeWeights& w) {
  Rat s = 0;
  for (int e : c.edge_ids) s += w[e];
  return s;
}

std::vector<int> component_labels(const MultiGraph& g) {
  std::vector<int> lab(g.n(), -1);
  int c = 0;
  for (int s = 0; s < g.n(); ++s) {
    if (lab[s] >= 0) continue;
    std::vector<int> stack{s};
    lab[s] = c;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int e : g.incident(x)) {
        int y = g.other(e, x);
        if (lab[y] < 0) {
          lab[y] = c;
          stack.push_back(y);
        }
      }
    }
    ++c;
  }
  return lab;
}

int component_count(const MultiGraph& g) {
  auto lab = component_labels(g);
  return lab.empty() ? 0 : *std::max_element(lab.begin(), lab.end()) + 1;
}

bool is_connected(const MultiGraph& g) { return component_count(g) <= 1; }

int betti(const MultiGraph& g) { return g.m() - g.n() + component_count(g); }

std::optional<int> girth(const MultiGraph& g) {
  std::set<std::pair<int, int>> seen;
  bool parallel = false;
  for (auto [u, v] : g.edges()) {
    if (u == v) return 1;
    if (!seen.insert({std::min(u, v), std::max(u, v)}).second) parallel = true;
  }
  if (parallel) return 2;
  int best = -1;
  std::vector<int> dist(g.n()), pe(g.n());
  for (int r = 0; r < g.n(); ++r) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[r] = 0;
    pe[r] = -1;
    std::queue<int> q;
    q.push(r);
    while (!q.empty()) {
      int x = q.front();
      q.pop();
      if (best >= 0 && 2 * dist[x] + 1 >= best) break;
      for (int e : g.incident(x)) {
        if (e == pe[x]) continue;
        int y = g.other(e, x);
        if (dist[y] < 0) {
          dist[y] = dist[x] + 1;
          pe[y] = e;
          q.push(y);
        } else {
          int len = dist[x] + dist[y] + 1;
          if (best < 0 || len < best) best = len;
        }
      }
    }
  }
  if (best < 0) return std::nullopt;
  return best;
}

namespace {

bool connected_without(const MultiGraph& g, const std::vector<char>& removed) {
  if (g.n() == 0) return true;
  std::vector<char> seen(g.n(), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int e : g.incident(x)) {
      if (removed[e]) continue;
      int y = g.other(e, x);
      if (!seen[y]) {
        seen[y] = 1;
        ++count;
        stack.push_back(y);
      }
    }
  }
  return count == g.n();
}

}  // namespace

std::optional<std::vector<int>> edge_cut_below(const MultiGraph& g, int k) {
  if (!is_connected(g)) throw PreconditionError("edge_cut_below: graph is disconnected");
  std::vector<int> cand;
  for (int e = 0; e < g.m(); ++e)
    if (!g.is_loop(e)) cand.push_back(e);
  std::vector<char> removed(g.m(), 0);
  for (int s = 1; s < k && s <= static_cast<int>(cand.size()); ++s) {
    std::vector<int> idx(s);
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
      for (int i : idx) removed[cand[i]] = 1;
      bool disc = !connected_without(g, removed);
      for (int i : idx) removed[cand[i]] = 0;
      if (disc) {
        std::vector<int> cut;
        for (int i : idx) cut.push_back(cand[i]);
        return cut;
      }
      int i = s - 1;
      while (i >= 0 && idx[i] == static_cast<int>(cand.size()) - s + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return std::nullopt;
}

bool three_edge_connected(const MultiGraph& g) {
  return is_connected(g) && !edge_cut_below(g, 3).has_value();
}

std::pair<Cycle, Rat> min_weight_cycle(const MultiGraph& g, const EdgeWeights& w) {
  if (static_cast<int>(w.size()) != g.m()) throw DimensionError("weight vector length != edge count");
  std::optional<Rat> best;
  Cycle best_cycle;
  std::vector<Rat> dist(g.n());
  std::vector<char> done(g.n());
  std::vector<int> pe(g.n());
  using Item = std::pair<Rat, int>;
  auto cmp = [](const Item& a, const Item& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second > b.second;
  };
  for (int e = 0; e < g.m(); ++e) {
    if (g.is_loop(e)) {
      if (!best || w[e] < *best) {
        best = w[e];
        best_cycle = Cycle{{e}};
      }
      continue;
    }
    // Cheapest cycle whose smallest edge id is e.
    auto [s, t] = g.edge(e);
    std::fill(done.begin(), done.end(), 0);
    std::fill(pe.begin(), pe.end(), -1);
    std::vector<char> reached(g.n(), 0);
    std::priority_queue<Item, std::vector<Item>, decltype(cmp)> pq(cmp);
    dist[s] = 0;
    reached[s] = 1;
    pq.push({Rat(0), s});
    while (!pq.empty()) {
      auto [d, x] = pq.top();
      pq.pop();
      if (done[x]) continue;
      if (best && d + w[e] >= *best) break;
      done[x] = 1;
      if (x == t) break;
      for (int f : g.incident(x)) {
        if (f <= e || g.is_loop(f)) continue;
        int y = g.other(f, x);
        if (done[y]) continue;
        Rat nd = d + w[f];
        if (!reached[y] || nd < dist[y]) {
          reached[y] = 1;
          dist[y] = nd;
          pe[y] = f;
          pq.push({nd, y});
        }
      }
    }
    if (!done[t]) continue;
    Rat total = dist[t] + w[e];
    if (best && total >= *best) continue;
    Cycle c;
    c.edge_ids.push_back(e);
    for (int x = t; x != s; x = g.other(pe[x], x)) c.edge_ids.push_back(pe[x]);
    std::sort(c.edge_ids.begin(), c.edge_ids.end());
    best = total;
    best_cycle = std::move(c);
  }
  if (!best) throw PreconditionError("min_weight_cycle: graph is a forest");
  return {best_cycle, *best};
}

std::vector<Cycle> enumerate_cycles(const MultiGraph& g) {
  if (g.m() > 25 && !guard_override())
    throw GuardError("enumerate_cycles: more than 25 edges; use min_weight_cycle instead");
  std::vector<Cycle> out;
  for (int e = 0; e < g.m(); ++e)
    if (g.is_loop(e)) out.push_back(Cycle{{e}});
  std::vector<char> on_path(g.n(), 0);
  std::vector<int> path_edges;
  for (int s = 0; s < g.n(); ++s) {
    std::function<void(int)> dfs = [&](int x) {
      for (int f : g.incident(x)) {
        if (g.is_loop(f) || f == path_edges.back()) continue;
        int y = g.other(f, x);
        if (y == s) {
          if (path_edges.front() < f) {
            Cycle c{path_edges};
            c.edge_ids.push_back(f);
            std::sort(c.edge_ids.begin(), c.edge_ids.end());
            out.push_back(std::move(c));
          }
          continue;
        }
        if (y < s || on_path[y]) continue;
        on_path[y] = 1;
        path_edges.push_back(f);
        dfs(y);
        path_edges.pop_back();
        on_path[y] = 0;
      }
    };
    on_path[s] = 1;
    for (int f : g.incident(s)) {
      if (g.is_loop(f)) continue;
      int y = g.other(f, s);
      if (y < s) continue;
      on_path[y] = 1;
      path_edges.push_back(f);
      dfs(y);
      path_edges.pop_back();
      on_path[y] = 0;
    }
    on_path[s] = 0;
  }
  std::sort(out.begin(), out.end());
  return out;
}

MultiGraph delete_edges(const MultiGraph& g, std::vector<int> edges) {
  std::sort(edges.begin(), edges.end());
  std::vector<std::pair<int, int>> keep;
  for (int e = 0; e < g.m(); ++e)
    if (!std::binary_search(edges.begin(), edges.end(), e)) keep.push_back(g.edge(e));
  return MultiGraph(g.n(), std::move(keep));
}

MultiGraph contract_edge(const MultiGraph& g, int e) {
  auto [u, v] = g.edge(e);
  if (u == v) return delete_edges(g, {e});
  int keep = std::min(u, v), gone = std::max(u, v);
  auto map = [&](int x) {
    if (x == gone) x = keep;
    return x > gone ? x - 1 : x;
  };
  std::vector<std::pair<int, int>> out;
  for (int f = 0; f < g.m(); ++f) {
    if (f == e) continue;
    auto [a, b] = g.edge(f);
    out.push_back({map(a), map(b)});
  }
  return MultiGraph(g.n() - 1, std::move(out));
}

MultiGraph add_edge(const MultiGraph& g, int u, int v) {
  auto edges = g.edges();
  edges.push_back({u, v});
  return MultiGraph(g.n(), std::move(edges));
}

MultiGraph relabel(const MultiGraph& g, const std::vector<int>& perm) {
  std::vector<std::pair<int, int>> out;
  for (auto [u, v] : g.edges()) out.push_back({perm[u], perm[v]});
  return MultiGraph(g.n(), std::move(out));
}

MultiGraph split_vertex_with(const MultiGraph& g, int v, const std::vector<int>& moved_ends) {
  std::map<int, int> moves;
  for (int e : moved_ends) moves[e]++;
  auto edges = g.edges();
  int nv = g.n();
  for (auto [e, cnt] : moves) {
    auto& [a, b] = edges[e];
    if (a == v && cnt > 0) {
      a = nv;
      --cnt;
    }
    if (b == v && cnt > 0) {
      b = nv;
      --cnt;
    }
    if (cnt != 0) throw PreconditionError("split_vertex: moved end not incident to vertex");
  }
  edges.push_back({v, nv});
  return MultiGraph(g.n() + 1, std::move(edges));
}

MultiGraph split_vertex(const MultiGraph& g, int v) {
  if (v < 0 || v >= g.n()) throw PreconditionError("split_vertex: vertex out of range");
  if (g.degree(v) < 4) throw PreconditionError("split_vertex: vertex degree below four");
  if (!three_edge_connected(g)) throw PreconditionError("split_vertex: graph is not 3-edge-connected");
  const auto& ends = g.incident(v);
  int k = static_cast<int>(ends.size());
  std::vector<std::pair<int, int>> tries{{0, 1}, {2, 3}, {1, 2}};
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) tries.push_back({i, j});
  for (auto [i, j] : tries) {
    MultiGraph h = split_vertex_with(g, v, {ends[i], ends[j]});
    if (three_edge_connected(h)) return h;
  }
  throw Error("split_vertex: no 3-edge-connected splitting found");
}

std::string to_string(ReductionKind k) {
  switch (k) {
    case ReductionKind::join_components: return "join_components";
    case ReductionKind::contract_bridge: return "contract_bridge";
    case ReductionKind::contract_two_cut: return "contract_two_cut";
    case ReductionKind::split_vertex: return "split_vertex";
  }
  return "?";
}

Reduction reduce_to_cubic(const MultiGraph& g0) {
  if (betti(g0) < 2) throw PreconditionError("reduce_to_cubic: Betti number below two");
  Reduction r{g0, {}};
  MultiGraph& g = r.graph;
  for (;;) {
    auto lab = component_labels(g);
    int other = -1;
    for (int v = 0; v < g.n(); ++v)
      if (lab[v] != lab[0]) {
        other = v;
        break;
      }
    if (other < 0) break;
    g = add_edge(g, 0, other);
    r.trace.push_back({ReductionKind::join_components, {g.m() - 1}, -1, g});
  }
  while (auto cut = edge_cut_below(g, 2)) {
    int e = (*cut)[0];
    g = contract_edge(g, e);
    r.trace.push_back({ReductionKind::contract_bridge, {e}, -1, g});
  }
  while (auto cut = edge_cut_below(g, 3)) {
    std::vector<int> c = *cut;
    g = contract_edge(g, c[0]);
    r.trace.push_back({ReductionKind::contract_two_cut, c, -1, g});
  }
  for (;;) {
    int v = -1;
    for (int x = 0; x < g.n(); ++x)
      if (g.degree(x) >= 4) {
        v = x;
        break;
      }
    if (v < 0) break;
    g = split_vertex(g, v);
    r.trace.push_back({ReductionKind::split_vertex, {}, v, g});
  }
  if (!g.is_cubic() || betti(g) != betti(g0))
    throw Error("reduce_to_cubic: internal error, result is not cubic");
  return r;
}

std::ostream& operator<<(std::ostream& os, const MultiGraph& g) {
  os << g.n() << ' ' << g.m() << '\n';
  for (auto [u, v] : g.edges()) os << u << ' ' << v << '\n';
  return os;
}

MultiGraph parse_graph(std::istream& in) {
  long n, m;
  if (!(in >> n >> m) || n < 0 || m < 0) throw ParseError("expected 'n m' header");
  std::vector<std::pair<int, int>> edges;
  for (long i = 0; i < m; ++i) {
    long u, v;
    if (!(in >> u >> v)) throw ParseError("graph file ended early");
    if (u < 0 || v < 0 || u >= n || v >= n) throw ParseError("edge endpoint out of range");
    edges.push_back({static_cast<int>(u), static_cast<int>(v)});
  }
  return MultiGraph(static_cast<int>(n), std::move(edges));
}

EdgeWeights parse_weights(std::istream& in, int m) {
  EdgeWeights w;
  std::string tok;
  while (in >> tok) {
    Rat r = parse_rat(tok);
    if (r < 0) throw ParseError("negative edge weight");
    w.push_back(r);
  }
  if (static_cast<int>(w.size()) != m) throw ParseError("weights file length does not match edge count");
  return w;
}

MultiGraph load_graph(const std::string& source) {
  if (source.rfind("builtin:", 0) == 0) return catalog(source.substr(8));
  std::ifstream in(source);
  if (!in) throw ParseError("cannot open graph file '" + source + "'");
  return parse_graph(in);
}

}  // namespace regma
