#include <algorithm>
#include <map>
#include <regex>

#include "regma/error.hpp"
#include "regma/graph.hpp"

namespace regma {

namespace {

using Edges = std::vector<std::pair<int, int>>;

void expect(bool ok, const std::string& name, const std::string& what) {
  if (!ok) throw Error("catalog " + name + ": invariant failed: " + what);
}

void expect_cubic(const MultiGraph& g, const std::string& name, int n, std::optional<int> gi) {
  expect(g.n() == n, name, "vertex count");
  expect(g.is_cubic(), name, "cubic");
  expect(is_connected(g), name, "connected");
  expect(betti(g) == n / 2 + 1, name, "Betti number");
  if (gi) expect(girth(g) == gi, name, "girth");
}

std::vector<int> five_cycle_counts(const MultiGraph& g) {
  std::vector<int> cnt(g.n(), 0);
  for (const Cycle& c : enumerate_cycles(g)) {
    if (c.edge_ids.size() != 5) continue;
    for (int e : c.edge_ids) {
      auto [u, v] = g.edge(e);
      cnt[u]++;
      cnt[v]++;
    }
  }
  for (int& x : cnt) x /= 2;
  return cnt;
}

bool vertices_form_cycle(const MultiGraph& g, const std::vector<int>& vs) {
  std::vector<int> ids;
  std::vector<char> in(g.n(), 0);
  for (int v : vs) in[v] = 1;
  for (int e = 0; e < g.m(); ++e)
    if (in[g.edge(e).first] && in[g.edge(e).second]) ids.push_back(e);
  return ids.size() == vs.size() && is_cycle(g, ids);
}

Edges cycle_edges(int len) {
  Edges e;
  for (int i = 0; i < len; ++i) e.push_back({i, (i + 1) % len});
  return e;
}

MultiGraph complete(int n) {
  Edges e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.push_back({i, j});
  return MultiGraph(n, e);
}

MultiGraph moebius_ladder(int r) {
  Edges e = cycle_edges(2 * r);
  for (int i = 0; i < r; ++i) e.push_back({i, i + r});
  return MultiGraph(2 * r, e);
}

// Outer n-cycle, spokes i -- n+i, inner edges n+i -- n+(i+k mod n).
MultiGraph generalized_petersen(int n, int k) {
  Edges e = cycle_edges(n);
  for (int i = 0; i < n; ++i) e.push_back({i, n + i});
  for (int i = 0; i < n; ++i) e.push_back({n + i, n + (i + k) % n});
  return MultiGraph(2 * n, e);
}

MultiGraph build_f13() {
  // 9-cycle 0..8; tripod vertices 9, 10, 11 attached to every third vertex.
  Edges e = cycle_edges(9);
  for (int t = 0; t < 3; ++t)
    for (int j = 0; j < 3; ++j) e.push_back({9 + t, t + 3 * j});
  MultiGraph g(12, e);
  expect_cubic(g, "f13", 12, 5);
  auto cnt = five_cycle_counts(g);
  std::vector<int> four, rest;
  for (int v = 0; v < g.n(); ++v) (cnt[v] == 4 ? four : rest).push_back(v);
  expect(four.size() == 9 && vertices_form_cycle(g, four), "f13", "9-cycle of vertices on four 5-cycles");
  for (int a : rest)
    for (int b : rest)
      for (int f : g.incident(a)) expect(g.other(f, a) != b, "f13", "tripod vertices pairwise non-adjacent");
  return g;
}

MultiGraph build_f14() {
  // 8-cycle 0..7; h = 8--9 with 8 on {0,4}, 9 on {2,6}; h' = 10--11 with 10 on {3,7}, 11 on {1,5}.
  Edges e = cycle_edges(8);
  e.insert(e.end(), {{8, 9}, {10, 11}, {0, 8}, {4, 8}, {2, 9}, {6, 9}, {3, 10}, {7, 10}, {1, 11}, {5, 11}});
  MultiGraph g(12, e);
  expect_cubic(g, "f14", 12, 5);
  auto cnt = five_cycle_counts(g);
  std::vector<int> three, four;
  for (int v = 0; v < g.n(); ++v) {
    expect(cnt[v] == 3 || cnt[v] == 4, "f14", "5-cycle counts");
    (cnt[v] == 3 ? three : four).push_back(v);
  }
  expect(three.size() == 8 && vertices_form_cycle(g, three), "f14", "8-cycle of vertices on three 5-cycles");
  expect(four.size() == 4, "f14", "four remaining vertices");
  int matched = 0;
  for (int e2 = 0; e2 < g.m(); ++e2) {
    auto [u, v] = g.edge(e2);
    if (cnt[u] == 4 && cnt[v] == 4) ++matched;
  }
  expect(matched == 2, "f14", "remaining vertices pair up into edges h, h'");
  return g;
}

MultiGraph build_f11() {
  // Halves {0,1,2,4,5,8} and {3,6,7,9,10,11}: a K_{2,3} with parts {1,2},
  // {0,4,5} plus vertex 8 on 4 and 5, and its mirror image. The 2-cut
  // {e1, e2} = {0--3, 8--11} has edge ids 0 and 1.
  Edges e{{0, 3}, {8, 11}, {0, 1}, {0, 2}, {1, 4}, {1, 5}, {2, 4}, {2, 5}, {4, 8},
          {5, 8}, {3, 6}, {3, 7}, {6, 9}, {6, 10}, {7, 9}, {7, 10}, {9, 11}, {10, 11}};
  MultiGraph g(12, e);
  expect_cubic(g, "f11", 12, 4);
  auto cut = edge_cut_below(g, 3);
  expect(cut && *cut == std::vector<int>{0, 1}, "f11", "2-edge cut {e1, e2}");
  return g;
}

MultiGraph build_f12() {
  Edges e{{0, 1}, {0, 2}, {0, 3}, {1, 4}, {1, 6}, {2, 4}, {2, 7}, {3, 5}, {3, 8},
          {4, 5}, {5, 11}, {6, 7}, {6, 9}, {7, 10}, {8, 9}, {8, 10}, {9, 11}, {10, 11}};
  MultiGraph g(12, e);
  expect_cubic(g, "f12", 12, 4);
  expect(three_edge_connected(g), "f12", "3-edge-connected");
  return g;
}

MultiGraph build(const std::string& name) {
  std::smatch m;
  static const std::regex kn(R"(k\(?(\d+)\)?)"), ml(R"(moebius_ladder\((\d+)\))");
  if (name == "theta") {
    MultiGraph g(2, {{0, 1}, {0, 1}, {0, 1}});
    expect(betti(g) == 2, name, "Betti number");
    return g;
  }
  if (name == "k33") {
    Edges e;
    for (int i = 0; i < 3; ++i)
      for (int j = 3; j < 6; ++j) e.push_back({i, j});
    MultiGraph g(6, e);
    expect_cubic(g, name, 6, 4);
    return g;
  }
  if (std::regex_match(name, m, kn)) {
    int n = std::stoi(m[1]);
    if (n < 1 || n > 64) throw PreconditionError("catalog: k(n) needs 1 <= n <= 64");
    MultiGraph g = complete(n);
    expect(betti(g) == (n - 1) * (n - 2) / 2, name, "Betti number");
    return g;
  }
  if (std::regex_match(name, m, ml) || name == "g54") {
    int r = name == "g54" ? 4 : std::stoi(m[1]);
    if (r < 2 || r > 32) throw PreconditionError("catalog: moebius_ladder(r) needs 2 <= r <= 32");
    MultiGraph g = moebius_ladder(r);
    expect_cubic(g, name, 2 * r, std::nullopt);
    return g;
  }
  if (name == "g53") {
    // K_{2,3} on {0,1 | 2,3,4}, triangle 5,6,7, matching 2-5, 3-6, 4-7.
    MultiGraph g(8, {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4},
                     {5, 6}, {6, 7}, {5, 7}, {2, 5}, {3, 6}, {4, 7}});
    expect_cubic(g, name, 8, 3);
    return g;
  }
  if (name == "petersen") {
    MultiGraph g = generalized_petersen(5, 2);
    expect_cubic(g, name, 10, 5);
    return g;
  }
  if (name == "heawood") {
    Edges e = cycle_edges(14);
    for (int i = 0; i < 14; i += 2) e.push_back({i, (i + 5) % 14});
    MultiGraph g(14, e);
    expect_cubic(g, name, 14, 6);
    return g;
  }
  if (name == "moebius_kantor") {
    MultiGraph g = generalized_petersen(8, 3);
    expect_cubic(g, name, 16, 6);
    return g;
  }
  if (name == "g1") {
    // Two copies of K_{2,3}, {0,1 | 2,3,4} and {5,6 | 7,8,9}, joined by f1, f2, f3 = 2-7, 3-8, 4-9.
    MultiGraph g(10, {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {5, 7}, {5, 8},
                      {5, 9}, {6, 7}, {6, 8}, {6, 9}, {2, 7}, {3, 8}, {4, 9}});
    expect_cubic(g, name, 10, 4);
    expect(three_edge_connected(g), name, "3-edge-connected");
    return g;
  }
  if (name == "f11") return build_f11();
  if (name == "f12") return build_f12();
  if (name == "f13") return build_f13();
  if (name == "f14") return build_f14();
  throw PreconditionError("catalog: unknown graph '" + name + "'");
}

}  // namespace

MultiGraph catalog(const std::string& name) { return build(name); }

std::vector<std::string> catalog_names() {
  return {"theta", "k4",  "k33", "g53", "g54", "petersen", "heawood",
          "g1",    "f11", "f12", "f13", "f14", "moebius_kantor"};
}

Cycle cycle_from_vertices(const MultiGraph& g, const std::vector<int>& vs) {
  Cycle c;
  int k = static_cast<int>(vs.size());
  for (int i = 0; i < k; ++i) {
    int a = vs[i], b = vs[(i + 1) % k], found = -1;
    for (int e : g.incident(a))
      if (g.other(e, a) == b && std::find(c.edge_ids.begin(), c.edge_ids.end(), e) == c.edge_ids.end()) {
        found = e;
        break;
      }
    if (found < 0) throw PreconditionError("cycle_from_vertices: consecutive vertices not adjacent");
    c.edge_ids.push_back(found);
  }
  std::sort(c.edge_ids.begin(), c.edge_ids.end());
  if (!is_cycle(g, c.edge_ids)) throw PreconditionError("cycle_from_vertices: not a simple cycle");
  return c;
}

std::vector<NamedCycle> catalog_cycles(const std::string& name) {
  static const std::map<std::string, std::vector<NamedCycle>> table{
      {"heawood", {{"hexagon", {0, 1, 2, 3, 4, 5}, "torus"}}},
      {"f13",
       {{"C9", {0, 1, 2, 3, 4, 5, 6, 7, 8}, ""},
        {"C8", {0, 1, 2, 3, 4, 5, 6, 9}, "klein"},
        {"C8'", {0, 1, 2, 11, 5, 4, 3, 9}, "klein"},
        {"C10", {0, 1, 2, 11, 5, 4, 10, 7, 6, 9}, "klein"},
        // needed for triples of C9 edges spaced two apart, e.g. {0-1, 3-4, 6-7}
        {"C9'", {0, 1, 2, 3, 4, 10, 7, 6, 9}, "torus"}}},
      {"f14",
       {{"C", {0, 1, 2, 3, 4, 5, 6, 7}, ""},
        {"C8", {0, 1, 11, 10, 3, 2, 9, 8}, "torus"},
        {"C9", {0, 1, 2, 3, 10, 11, 5, 4, 8}, "klein"},
        {"C10", {0, 1, 2, 3, 10, 7, 6, 5, 4, 8}, "torus"},
        // needed for triples such as {0-1, 3-4, 10-11}
        {"C7", {0, 1, 11, 10, 3, 4, 8}, "klein"}}},
  };
  auto it = table.find(name);
  if (it == table.end()) return {};
  return it->second;
}

}  // namespace regma
