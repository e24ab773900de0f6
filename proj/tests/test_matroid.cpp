#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "regma/error.hpp"
#include "regma/graph.hpp"
#include "regma/matroid.hpp"

using namespace regma;

namespace {

using Sets = std::set<std::vector<int>>;

Sets as_set(const std::vector<GroundSubset>& v) { return Sets(v.begin(), v.end()); }

// Plain F2 rank of selected columns of a 0/1 matrix.
int oracle_rank(const std::vector<std::vector<int>>& a, const std::vector<int>& cols) {
  std::vector<std::vector<int>> m;
  for (const auto& row : a) {
    std::vector<int> r;
    for (int j : cols) r.push_back(row[j] & 1);
    m.push_back(r);
  }
  int rank = 0;
  for (size_t c = 0; c < cols.size(); ++c) {
    size_t p = rank;
    while (p < m.size() && !m[p][c]) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[rank]);
    for (size_t i = 0; i < m.size(); ++i)
      if (i != static_cast<size_t>(rank) && m[i][c])
        for (size_t k = 0; k < cols.size(); ++k) m[i][k] ^= m[rank][k];
    ++rank;
  }
  return rank;
}

// Minimal dependent column sets by exhaustive search.
Sets oracle_circuits(const std::vector<std::vector<int>>& a, int n) {
  Sets dep;
  for (uint32_t s = 1; s < (1u << n); ++s) {
    std::vector<int> cols;
    for (int j = 0; j < n; ++j)
      if (s >> j & 1) cols.push_back(j);
    if (oracle_rank(a, cols) == static_cast<int>(cols.size())) continue;
    bool minimal = true;
    for (size_t drop = 0; drop < cols.size() && minimal; ++drop) {
      auto sub = cols;
      sub.erase(sub.begin() + drop);
      minimal = oracle_rank(a, sub) == static_cast<int>(sub.size());
    }
    if (minimal) dep.insert(cols);
  }
  return dep;
}

std::vector<std::vector<int>> rows_of(const IntMatrix& m) {
  std::vector<std::vector<int>> a(m.rows(), std::vector<int>(m.cols()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) a[i][j] = static_cast<int>(m.at(i, j).get_si()) & 1;
  return a;
}

bool connected_on(const MultiGraph& g, const std::vector<char>& side, char which) {
  int start = -1, count = 0;
  for (int v = 0; v < g.n(); ++v)
    if (side[v] == which) {
      ++count;
      start = v;
    }
  if (count == 0) return false;
  std::vector<char> seen(g.n(), 0);
  std::vector<int> stack{start};
  seen[start] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int e : g.incident(x)) {
      int y = g.other(e, x);
      if (side[y] != which || seen[y]) continue;
      seen[y] = 1;
      ++reached;
      stack.push_back(y);
    }
  }
  return reached == count;
}

// Minimal edge cuts: cuts between two connected sides.
Sets oracle_bonds(const MultiGraph& g) {
  Sets out;
  for (uint32_t s = 0; s < (1u << (g.n() - 1)); ++s) {
    std::vector<char> side(g.n(), 0);
    for (int v = 1; v < g.n(); ++v) side[v] = (s >> (v - 1)) & 1;
    if (!connected_on(g, side, 0) || !connected_on(g, side, 1)) continue;
    std::vector<int> cut;
    for (int e = 0; e < g.m(); ++e)
      if (side[g.edge(e).first] != side[g.edge(e).second]) cut.push_back(e);
    out.insert(cut);
  }
  return out;
}

Sets cycle_sets(const MultiGraph& g) {
  Sets out;
  for (const auto& c : enumerate_cycles(g)) out.insert(c.edge_ids);
  return out;
}

std::vector<std::vector<int>> subsets_of_size(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int j = start; j < n; ++j) {
      cur.push_back(j);
      self(self, j + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

std::vector<int> complement_of(int n, const std::vector<int>& s) {
  std::vector<int> out;
  for (int j = 0; j < n; ++j)
    if (!std::binary_search(s.begin(), s.end(), j)) out.push_back(j);
  return out;
}

BinaryMatroid fano() {
  IntMatrix h{{1, 0, 0, 1, 1, 0, 1}, {0, 1, 0, 1, 0, 1, 1}, {0, 0, 1, 0, 1, 1, 1}};
  return BinaryMatroid::from_lift({"1", "2", "3", "4", "5", "6", "7"}, h);
}

BinaryMatroid delete_column(const BinaryMatroid& m, int e) {
  std::vector<int> keep = complement_of(m.size(), {e});
  std::vector<std::string> labels;
  for (int j : keep) labels.push_back(m.labels()[j]);
  return BinaryMatroid::from_lift(labels, m.lift()->select_cols(keep));
}

}  // namespace

TEST(Graphic, CircuitsAreCycles) {
  for (std::string name : {"k4", "k33", "petersen", "theta", "moebius_ladder(4)"}) {
    MultiGraph g = catalog(name);
    BinaryMatroid m = graphic(g);
    EXPECT_EQ(m.rank(), g.n() - 1) << name;
    EXPECT_EQ(as_set(circuits(m)), cycle_sets(g)) << name;
  }
  EXPECT_EQ(circuits(graphic(catalog("k4"))).size(), 7u);
}

TEST(Graphic, CocircuitsAreBonds) {
  for (std::string name : {"k4", "k33", "petersen"}) {
    MultiGraph g = catalog(name);
    EXPECT_EQ(as_set(cocircuits(graphic(g))), oracle_bonds(g)) << name;
    EXPECT_EQ(as_set(circuits(cographic(g))), oracle_bonds(g)) << name;
    EXPECT_EQ(as_set(cocircuits(cographic(g))), cycle_sets(g)) << name;
  }
}

TEST(Graphic, HyperplanesComplementCocircuits) {
  BinaryMatroid m = graphic(catalog("k4"));
  auto hs = hyperplanes(m);
  auto cs = cocircuits(m);
  ASSERT_EQ(hs.size(), cs.size());
  for (const auto& h : hs) {
    EXPECT_EQ(m.rank_of(h), m.rank() - 1);
    EXPECT_TRUE(as_set(cs).count(complement_of(m.size(), h)));
  }
}

TEST(Graphic, LiftIsSignedIncidenceAndUnimodular) {
  BinaryMatroid m = graphic(catalog("k33"));
  ASSERT_TRUE(m.lift().has_value());
  EXPECT_EQ(m.lift()->mod2(), m.rep());
  EXPECT_TRUE(odd_determinant_check(*m.lift()).ok);
  for (int i = 0; i < m.rank(); ++i)
    for (int j = 0; j < m.size(); ++j) EXPECT_LE(abs(m.lift()->at(i, j)), 1);
}

TEST(Cographic, RankIsBetti) {
  for (std::string name : {"k4", "k33", "petersen", "heawood", "f13"}) {
    MultiGraph g = catalog(name);
    EXPECT_EQ(cographic(g).rank(), betti(g)) << name;
  }
  EXPECT_EQ(cographic(catalog("k33")).rank(), 4);
}

TEST(Cographic, LiftRowsAreDirectedCycles) {
  MultiGraph g = catalog("petersen");
  BinaryMatroid m = cographic(g);
  // every row of the lift must be a circulation: net flow zero at each vertex
  for (int i = 0; i < m.rank(); ++i)
    for (int v = 0; v < g.n(); ++v) {
      Int flow = 0;
      for (int e = 0; e < g.m(); ++e) {
        if (g.edge(e).first == v) flow += m.lift()->at(i, e);
        if (g.edge(e).second == v) flow -= m.lift()->at(i, e);
      }
      EXPECT_EQ(flow, 0);
    }
  EXPECT_TRUE(odd_determinant_check(*m.lift()).ok);
}

TEST(Dual, BasesAreComplements) {
  for (std::string name : {"k4", "k33"}) {
    MultiGraph g = catalog(name);
    BinaryMatroid m = graphic(g), c = cographic(g), d = dual(m);
    EXPECT_EQ(d.origin().kind, Provenance::Kind::cographic);
    EXPECT_EQ(dual(c).origin().kind, Provenance::Kind::graphic);
    for (const auto& b : subsets_of_size(m.size(), m.rank())) {
      auto co = complement_of(m.size(), b);
      EXPECT_EQ(m.is_basis(b), c.is_basis(co)) << name;
      EXPECT_EQ(m.is_basis(b), d.is_basis(co)) << name;
    }
  }
}

TEST(Dual, WithoutLiftMatchesWithLift) {
  BinaryMatroid m = graphic(catalog("petersen"));
  BinaryMatroid plain(m.labels(), m.rep());
  EXPECT_EQ(as_set(circuits(dual(plain))), as_set(circuits(dual(m))));
  EXPECT_EQ(as_set(circuits(dual(dual(m)))), as_set(circuits(m)));
}

TEST(R10, MatchesExhaustiveCircuits) {
  BinaryMatroid m = r10();
  EXPECT_EQ(m.rank(), 5);
  EXPECT_EQ(m.size(), 10);
  EXPECT_EQ(m.labels().front(), "e1");
  EXPECT_EQ(m.labels().back(), "f5");
  EXPECT_EQ(as_set(circuits(m)), oracle_circuits(rows_of(r10_matrix()), 10));
  EXPECT_TRUE(odd_determinant_check(r10_matrix()).ok);
}

TEST(R10, SelfDual) {
  BinaryMatroid m = r10(), d = dual(m);
  EXPECT_EQ(d.rank(), 5);
  EXPECT_EQ(d.origin().kind, Provenance::Kind::unknown);
  EXPECT_TRUE(isomorphic(m, d).has_value());
  // bases of size 5 among all 252 subsets come in complementary pairs
  auto rows = rows_of(r10_matrix());
  for (const auto& b : subsets_of_size(10, 5)) {
    bool is_b = m.is_basis(b);
    EXPECT_EQ(is_b, oracle_rank(rows, b) == 5);
    EXPECT_EQ(is_b, d.is_basis(complement_of(10, b)));
  }
}

TEST(R10, DeletionIsK33) {
  BinaryMatroid k33 = graphic(catalog("k33"));
  for (int e = 0; e < 10; ++e) EXPECT_TRUE(isomorphic(delete_column(r10(), e), k33).has_value()) << e;
}

TEST(Fano, LiftFailsOddDeterminants) {
  BinaryMatroid f = fano();
  EXPECT_EQ(circuits(f).size(), 14u);
  auto v = odd_determinant_check(*f.lift());
  EXPECT_FALSE(v.ok);
  EXPECT_EQ(v.determinant % 2, 0);
  EXPECT_THROW(weighted(f), PreconditionError);
}

TEST(Matroid, LiftMustReduceToRep) {
  BitMatrix b = BitMatrix::from_rows({{1, 0, 1}, {0, 1, 1}});
  IntMatrix bad{{1, 0, 2}, {0, 1, 1}};
  EXPECT_THROW(BinaryMatroid({"a", "b", "c"}, b, bad), PreconditionError);
  EXPECT_THROW(BinaryMatroid({"a", "b"}, b), DimensionError);
}

TEST(Matroid, RowReductionKeepsLiftConsistent) {
  IntMatrix h{{1, 1, 0, 1}, {1, -1, 1, 0}, {2, 0, 1, 1}};
  BinaryMatroid m = BinaryMatroid::from_lift({"a", "b", "c", "d"}, h);
  EXPECT_EQ(m.rank(), 2);
  EXPECT_EQ(m.lift()->mod2(), m.rep());
  EXPECT_EQ(m.index_of("c"), 2);
  EXPECT_EQ(m.index_of("z"), -1);
}

TEST(Simplify, MergesParallelAndDropsLoops) {
  MultiGraph g(2, {{0, 1}, {0, 1}, {1, 1}, {0, 1}});
  Simplification s = simplify(graphic(g));
  EXPECT_EQ(s.matroid.size(), 1);
  EXPECT_EQ(s.map, (std::vector<int>{0, 0, -1, 0}));
  EXPECT_TRUE(s.matroid.is_simple());
  EXPECT_FALSE(graphic(g).is_simple());
}

TEST(Isomorphic, Examples) {
  MultiGraph k4 = catalog("k4");
  EXPECT_TRUE(isomorphic(graphic(k4), cographic(k4)).has_value());
  EXPECT_TRUE(isomorphic(graphic(k4), graphic(relabel(k4, {2, 0, 3, 1}))).has_value());
  EXPECT_FALSE(isomorphic(graphic(catalog("k33")), fano()).has_value());
  EXPECT_FALSE(isomorphic(graphic(catalog("k33")), cographic(catalog("k33"))).has_value());
  // prism versus K_{3,3}: same size and rank, different circuits
  EXPECT_FALSE(isomorphic(graphic(catalog("moebius_ladder(3)")), graphic(MultiGraph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {0, 3}, {1, 4}, {2, 5}}))).has_value());
  auto map = isomorphic(graphic(k4), cographic(k4));
  Sets target = as_set(circuits(cographic(k4)));
  for (const auto& c : circuits(graphic(k4))) {
    std::vector<int> img;
    for (int e : c) img.push_back((*map)[e]);
    std::sort(img.begin(), img.end());
    EXPECT_TRUE(target.count(img));
  }
}

TEST(Isomorphic, Preconditions) {
  unsetenv("REGMA_GUARD_OVERRIDE");
  EXPECT_THROW(isomorphic(graphic(catalog("theta")), graphic(catalog("theta"))), PreconditionError);
  EXPECT_THROW(isomorphic(graphic(catalog("petersen")), graphic(catalog("petersen"))), GuardError);
  EXPECT_THROW(circuits(graphic(catalog("k(8)"))), GuardError);
}

TEST(Sum1, DirectSum) {
  BinaryMatroid s = sum1(graphic(catalog("k4")), r10());
  EXPECT_EQ(s.rank(), 8);
  EXPECT_EQ(s.size(), 16);
  EXPECT_EQ(s.labels()[0], "1.0");
  EXPECT_EQ(s.labels()[6], "2.e1");
  EXPECT_TRUE(s.lift().has_value());
  EXPECT_EQ(s.origin().kind, Provenance::Kind::sum);
  EXPECT_EQ(s.origin().k, 1);
  EXPECT_EQ(circuits(s).size(), circuits(graphic(catalog("k4"))).size() + circuits(r10()).size());
}

TEST(Sum2, MatchesTwoCliqueSum) {
  MultiGraph g1 = catalog("k4"), g2 = catalog("k33");
  int e1 = 0, e2 = 4;
  BinaryMatroid s = sum2(graphic(g1), e1, graphic(g2), e2);
  // glue the endpoints of e1 and e2, delete both edges, keep column order
  auto [a1, b1] = g1.edge(e1);
  auto [a2, b2] = g2.edge(e2);
  std::vector<int> map2(g2.n());
  int next = g1.n();
  for (int v = 0; v < g2.n(); ++v) map2[v] = v == a2 ? a1 : v == b2 ? b1 : next++;
  std::vector<std::pair<int, int>> edges;
  for (int e = 0; e < g1.m(); ++e)
    if (e != e1) edges.push_back(g1.edge(e));
  for (int e = 0; e < g2.m(); ++e)
    if (e != e2) edges.push_back({map2[g2.edge(e).first], map2[g2.edge(e).second]});
  MultiGraph glued(next, edges);
  EXPECT_EQ(s.rank(), glued.n() - 1);
  EXPECT_EQ(as_set(circuits(s)), cycle_sets(glued));
  ASSERT_TRUE(s.lift().has_value());
  EXPECT_TRUE(s.origin().warning.empty());
  EXPECT_TRUE(odd_determinant_check(*s.lift()).ok);
  EXPECT_EQ(s.origin().from_left[0], 1);
  EXPECT_EQ(s.origin().from_right[s.size() - 1], g2.m() - 1);
}

TEST(Sum3, CographicStarsMatchGluedGraph) {
  MultiGraph g1 = catalog("k33"), g2 = catalog("petersen");
  int v1 = 0, v2 = 0;
  std::vector<int> w1 = g1.incident(v1), w2 = g2.incident(v2);
  std::vector<int> pairing{2, 0, 1};
  BinaryMatroid s = sum3(cographic(g1), w1, cographic(g2), w2, pairing);
  // delete both centres, identify the far end of w1[i] with that of w2[pairing[i]]
  std::vector<int> map1(g1.n(), -1), map2(g2.n(), -1);
  int next = 0;
  for (int v = 0; v < g1.n(); ++v)
    if (v != v1) map1[v] = next++;
  for (int i = 0; i < 3; ++i) map2[g2.other(w2[pairing[i]], v2)] = map1[g1.other(w1[i], v1)];
  for (int v = 0; v < g2.n(); ++v)
    if (v != v2 && map2[v] < 0) map2[v] = next++;
  std::vector<std::pair<int, int>> edges;
  for (int e = 0; e < g1.m(); ++e)
    if (std::find(w1.begin(), w1.end(), e) == w1.end()) edges.push_back({map1[g1.edge(e).first], map1[g1.edge(e).second]});
  for (int e = 0; e < g2.m(); ++e)
    if (std::find(w2.begin(), w2.end(), e) == w2.end()) edges.push_back({map2[g2.edge(e).first], map2[g2.edge(e).second]});
  MultiGraph glued(next, edges);
  EXPECT_EQ(s.rank(), betti(glued));
  EXPECT_EQ(as_set(circuits(s)), oracle_bonds(glued));
  ASSERT_TRUE(s.lift().has_value());
  EXPECT_TRUE(odd_determinant_check(*s.lift()).ok);
}

TEST(Sum3, GraphicTrianglesMatchCliqueSum) {
  MultiGraph big = catalog("k(5)");
  // triangle 0-1-2 in K5 against triangle 0-1-2 in another K5
  std::vector<int> t;
  for (int e = 0; e < big.m(); ++e)
    if (big.edge(e).first <= 2 && big.edge(e).second <= 2) t.push_back(e);
  ASSERT_EQ(t.size(), 3u);
  BinaryMatroid s = sum3(graphic(big), t, graphic(big), t, {0, 1, 2});
  std::vector<std::pair<int, int>> edges;
  for (int e = 0; e < big.m(); ++e)
    if (std::find(t.begin(), t.end(), e) == t.end()) edges.push_back(big.edge(e));
  for (int e = 0; e < big.m(); ++e) {
    if (std::find(t.begin(), t.end(), e) != t.end()) continue;
    auto [u, v] = big.edge(e);
    edges.push_back({u <= 2 ? u : u + 2, v <= 2 ? v : v + 2});
  }
  MultiGraph glued(7, edges);
  EXPECT_EQ(as_set(circuits(s)), cycle_sets(glued));
}

TEST(Sum3, Preconditions) {
  BinaryMatroid k4 = graphic(catalog("k4"));
  BinaryMatroid p = cographic(catalog("petersen"));
  auto star = catalog("petersen").incident(0);
  EXPECT_THROW(sum3(k4, {0, 1, 3}, p, star, {0, 1, 2}), PreconditionError);
  EXPECT_THROW(sum3(p, star, p, star, {0, 0, 1}), PreconditionError);
  EXPECT_THROW(sum3(p, {star[0], star[1], 1}, p, star, {0, 1, 2}), PreconditionError);
  EXPECT_THROW(sum2(k4, 9, k4, 0), PreconditionError);
}

TEST(KSumRep, TwoSumRemoveAndKeep) {
  WeightedRep a = weighted(graphic(catalog("k4")));
  WeightedRep r = ksum_rep(a, a, 2, {{0}, {0}});
  EXPECT_EQ(r.h.rows(), 5);
  EXPECT_EQ(r.h.cols(), 10);
  for (const Rat& x : r.mult) EXPECT_EQ(x, Rat(1, 10));
  BinaryMatroid s = sum2(graphic(catalog("k4")), 0, graphic(catalog("k4")), 0);
  EXPECT_EQ(as_set(circuits(BinaryMatroid::from_lift(s.labels(), r.h))), as_set(circuits(s)));

  WeightedRep k = ksum_rep(a, a, 2, {{0}, {0}}, SumConvention::keep);
  EXPECT_EQ(k.h.cols(), 11);
  EXPECT_EQ(k.mult[0], Rat(1, 6));
  EXPECT_EQ(k.mult[1], Rat(1, 12));
}

TEST(KSumRep, OneSumIsBlockDiagonal) {
  WeightedRep a = weighted(graphic(catalog("theta")));
  WeightedRep b = weighted(r10());
  WeightedRep r = ksum_rep(a, b, 1, {});
  EXPECT_EQ(r.h.rows(), 6);
  EXPECT_EQ(r.h.cols(), 13);
  // each side keeps its total mass before renormalizing
  for (int j = 0; j < 3; ++j) EXPECT_EQ(r.mult[j], Rat(1, 6));
  for (int j = 3; j < 13; ++j) EXPECT_EQ(r.mult[j], Rat(1, 20));
}

TEST(KSumRep, ThreeSumOfStars) {
  MultiGraph g = catalog("petersen");
  BinaryMatroid c = cographic(g);
  std::vector<int> star = g.incident(0);
  // signs so that the lifted star columns sum to zero
  WeightedRep w = weighted(c);
  std::vector<long> f(g.m(), 1);
  int d = w.h.rows();
  for (int mask = 0; mask < 4; ++mask) {
    int s1 = mask & 1 ? -1 : 1, s2 = mask & 2 ? -1 : 1;
    bool ok = true;
    for (int i = 0; i < d && ok; ++i) ok = w.h.at(i, star[0]) + s1 * w.h.at(i, star[1]) + s2 * w.h.at(i, star[2]) == 0;
    if (ok) {
      f[star[1]] = s1;
      f[star[2]] = s2;
      break;
    }
  }
  WeightedRep ws = odd_transform(w, {OddStep::Kind::scale, {}, f});
  WeightedRep r = ksum_rep(ws, ws, 3, {star, star});
  EXPECT_EQ(r.h.rows(), 2 * d - 2);
  EXPECT_EQ(r.h.cols(), 24);
  BinaryMatroid s = sum3(c, star, c, star, {0, 1, 2});
  EXPECT_EQ(as_set(circuits(BinaryMatroid::from_lift(s.labels(), r.h))), as_set(circuits(s)));
  EXPECT_THROW(ksum_rep(w, w, 3, {{0, 1, 2}, {0, 1, 2}}), PreconditionError);
}

TEST(KSumRep, Preconditions) {
  WeightedRep a = weighted(graphic(catalog("k4")));
  EXPECT_THROW(ksum_rep(a, a, 2, {{0, 1}, {0}}), PreconditionError);
  EXPECT_THROW(ksum_rep(a, a, 4, {}), PreconditionError);
  EXPECT_THROW(weighted(IntMatrix{{1, 1}, {1, 1}}, {Rat(1), Rat(1)}), RankError);
  EXPECT_THROW(weighted(IntMatrix{{1, 0}, {0, 1}}, {Rat(-1), Rat(3)}), PreconditionError);
}

TEST(OddTransform, PullbackAndPushforwardInvert) {
  WeightedRep a = weighted(graphic(catalog("k4")));
  IntMatrix A{{1, 2, 0}, {0, 1, 0}, {4, 0, 3}};
  WeightedRep p = odd_transform(a, {OddStep::Kind::pullback, A, {}});
  EXPECT_EQ(p.h, A.transpose() * a.h);
  WeightedRep back = odd_transform(p, {OddStep::Kind::pushforward, A, {}});
  EXPECT_EQ(back.h, a.h);
  EXPECT_THROW(odd_transform(a, {OddStep::Kind::pushforward, A, {}}), PreconditionError);
  IntMatrix even{{2, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  EXPECT_THROW(odd_transform(a, {OddStep::Kind::pullback, even, {}}), PreconditionError);
}

TEST(OddTransform, ScaleAndDivide) {
  WeightedRep a = weighted(graphic(catalog("k4")));
  std::vector<long> f{3, 1, -5, 1, 7, 1};
  WeightedRep s = odd_transform(a, {OddStep::Kind::scale, {}, f});
  EXPECT_EQ(s.h.at(0, 0), 3 * a.h.at(0, 0));
  EXPECT_EQ(odd_transform(s, {OddStep::Kind::divide, {}, f}).h, a.h);
  EXPECT_THROW(odd_transform(a, {OddStep::Kind::divide, {}, f}), PreconditionError);
  EXPECT_THROW(odd_transform(a, {OddStep::Kind::scale, {}, {2, 1, 1, 1, 1, 1}}), PreconditionError);
  EXPECT_THROW(odd_transform(a, {OddStep::Kind::scale, {}, {1}}), DimensionError);
}

TEST(MatroidIO, RoundTrip) {
  BinaryMatroid m = r10();
  std::stringstream ss;
  ss << m;
  BinaryMatroid back = parse_matroid(ss);
  EXPECT_EQ(back.rep(), m.rep());
  EXPECT_EQ(*back.lift(), *m.lift());
  std::istringstream plain("2 3\n1 0 1\n0 1 1\n");
  EXPECT_EQ(parse_matroid(plain).rank(), 2);
  std::istringstream bad("2 3\n1 0 2\n0 1 1\n");
  EXPECT_THROW(parse_matroid(bad), ParseError);
}

TEST(MatroidExpr, BuildsSums) {
  BinaryMatroid s = build_matroid("sum2(graphic(builtin:k4)@0, graphic(builtin:k33)@4)");
  EXPECT_EQ(as_set(circuits(s)), as_set(circuits(sum2(graphic(catalog("k4")), 0, graphic(catalog("k33")), 4))));
  BinaryMatroid t = build_matroid("sum3(cographic(builtin:petersen)@{0,4,5}, dual(graphic(builtin:petersen))@{0, 4, 5}, 120)");
  EXPECT_EQ(t.size(), 24);
  EXPECT_EQ(build_matroid("dual(r10)").rank(), 5);
  EXPECT_EQ(build_matroid(" sum1( r10 , graphic(builtin:moebius_ladder(4)) ) ").size(), 22);
  EXPECT_THROW(build_matroid("r11"), ParseError);
  EXPECT_THROW(build_matroid("sum2(r10@x, r10@e1)"), ParseError);
  EXPECT_THROW(build_matroid("dual(r10"), ParseError);
}
