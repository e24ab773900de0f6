#pragma once

// Helpers shared by the unit tests and the acceptance binary.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "regma/exact.hpp"
#include "regma/graph.hpp"

namespace regma::testing {

// Connected multigraph with n vertices and m >= n - 1 edges: a random tree
// plus random extra edges, loops and parallels allowed.
inline MultiGraph random_connected_multigraph(std::mt19937& rng, int n, int m, bool loops = true) {
  std::vector<std::pair<int, int>> e;
  for (int v = 1; v < n; ++v) e.push_back({std::uniform_int_distribution<int>(0, v - 1)(rng), v});
  std::uniform_int_distribution<int> pick(0, n - 1);
  while (static_cast<int>(e.size()) < m) {
    int a = pick(rng), b = pick(rng);
    if (a == b && (!loops || (n > 1 && rng() % 3))) continue;
    e.push_back({a, b});
  }
  std::shuffle(e.begin(), e.end(), rng);
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  for (auto& [a, b] : e) {
    a = perm[a];
    b = perm[b];
  }
  return MultiGraph(n, e);
}

inline EdgeWeights random_weights(std::mt19937& rng, int m) {
  EdgeWeights w(m);
  std::uniform_int_distribution<int> num(0, 12), den(1, 7);
  for (auto& x : w) {
    x = Rat(num(rng), den(rng));
    x.canonicalize();
  }
  if (std::all_of(w.begin(), w.end(), [](const Rat& x) { return x == 0; })) w[0] = 1;
  return w;
}

// min over enumerated cycles of weight / total weight.
inline Rat brute_min_cycle_ratio(const MultiGraph& g, const EdgeWeights& w) {
  Rat total = 0;
  for (const Rat& x : w) total += x;
  std::optional<Rat> best;
  for (const auto& c : enumerate_cycles(g)) {
    Rat v = cycle_weight(c, w);
    if (!best || v < *best) best = v;
  }
  return *best / total;
}

// Planar graph: a triangulated polygon with some chords removed, connected.
inline MultiGraph random_planar(std::mt19937& rng, int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.push_back({i, (i + 1) % n});
  // fan-free triangulation by recursive ear splitting
  std::vector<std::pair<int, int>> stack{{0, n - 1}};
  while (!stack.empty()) {
    auto [a, b] = stack.back();
    stack.pop_back();
    if (b - a < 2) continue;
    int c = std::uniform_int_distribution<int>(a + 1, b - 1)(rng);
    if (c - a > 1) e.push_back({a, c});
    if (b - c > 1) e.push_back({c, b});
    stack.push_back({a, c});
    stack.push_back({c, b});
  }
  // drop random chords, never the outer cycle, so the graph stays connected
  std::vector<std::pair<int, int>> kept(e.begin(), e.begin() + n);
  for (size_t i = n; i < e.size(); ++i)
    if (rng() % 3) kept.push_back(e[i]);
  return MultiGraph(n, kept);
}

using Adj = std::vector<std::vector<char>>;

inline Adj adjacency(const MultiGraph& g) {
  Adj a(g.n(), std::vector<char>(g.n(), 0));
  for (auto [u, v] : g.edges()) a[u][v] = a[v][u] = 1;
  return a;
}

inline bool isomorphic(const Adj& a, const Adj& b) {
  int n = static_cast<int>(a.size());
  std::vector<int> img(n, -1);
  std::vector<char> used(n, 0);
  std::function<bool(int)> rec = [&](int v) {
    if (v == n) return true;
    for (int w = 0; w < n; ++w) {
      if (used[w]) continue;
      bool ok = true;
      for (int u = 0; u < v && ok; ++u) ok = a[u][v] == b[img[u]][w];
      if (!ok) continue;
      img[v] = w;
      used[w] = 1;
      if (rec(v + 1)) return true;
      used[w] = 0;
    }
    return false;
  };
  return rec(0);
}

// Isomorphism invariant: sorted per-vertex (distance profile, triangle count).
inline std::vector<std::vector<int>> invariant(const Adj& a) {
  int n = static_cast<int>(a.size());
  std::vector<std::vector<int>> inv;
  for (int s = 0; s < n; ++s) {
    std::vector<int> d(n, -1), prof(n, 0), q{s};
    d[s] = 0;
    for (size_t i = 0; i < q.size(); ++i)
      for (int y = 0; y < n; ++y)
        if (a[q[i]][y] && d[y] < 0) {
          d[y] = d[q[i]] + 1;
          q.push_back(y);
        }
    for (int x : d) prof[x]++;
    int tri = 0;
    for (int x = 0; x < n; ++x)
      for (int y = x + 1; y < n; ++y) tri += a[s][x] && a[s][y] && a[x][y];
    prof.push_back(tri);
    inv.push_back(prof);
  }
  std::sort(inv.begin(), inv.end());
  return inv;
}

// Independent oracle: connected cubic simple graphs with a breadth-first
// labeling (the unlabeled neighbours of vertex i receive the next free labels
// in order), filled row by row, deduplicated by invariant buckets plus a
// backtracking isomorphism test.
inline std::vector<Adj> oracle_cubic(int n) {
  std::map<std::vector<std::vector<int>>, std::vector<Adj>> buckets;
  Adj a(n, std::vector<char>(n, 0));
  std::vector<int> deg(n, 0);
  std::function<void(int, int, int)> rec = [&](int i, int j, int labeled) {
    // row i, next candidate column j, vertices 0..labeled-1 already reached
    if (i == n) {
      auto inv = invariant(a);
      auto& b = buckets[inv];
      for (const Adj& r : b)
        if (isomorphic(r, a)) return;
      b.push_back(a);
      return;
    }
    if (i >= labeled) return;  // disconnected
    if (deg[i] == 3) {
      rec(i + 1, i + 2, labeled);
      return;
    }
    for (int k = j; k < n; ++k) {
      if (deg[k] == 3 || a[i][k]) continue;
      if (k > labeled) break;  // new labels must be taken in order
      a[i][k] = a[k][i] = 1;
      ++deg[i];
      ++deg[k];
      rec(i, k + 1, std::max(labeled, k + 1));
      a[i][k] = a[k][i] = 0;
      --deg[i];
      --deg[k];
    }
  };
  rec(0, 1, 1);
  std::vector<Adj> out;
  for (auto& [k, v] : buckets) out.insert(out.end(), v.begin(), v.end());
  return out;
}

inline MultiGraph from_adj(const Adj& a) {
  std::vector<std::pair<int, int>> e;
  int n = static_cast<int>(a.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (a[i][j]) e.push_back({i, j});
  return MultiGraph(n, e);
}

}  // namespace regma::testing
