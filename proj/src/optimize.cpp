#include "regma/optimize.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <thread>

#include "regma/cubicgen.hpp"
#include "regma/error.hpp"

namespace regma {

namespace {

// Shortest cycle through e by edge count, if e lies on a cycle.
std::optional<Cycle> shortest_cycle_through(const MultiGraph& g, int e) {
  auto [s, t] = g.edge(e);
  if (s == t) return Cycle{{e}};
  std::vector<int> pe(g.n(), -1);
  std::vector<char> seen(g.n(), 0);
  std::vector<int> queue{s};
  seen[s] = 1;
  for (size_t i = 0; i < queue.size() && !seen[t]; ++i) {
    int x = queue[i];
    for (int f : g.incident(x)) {
      if (f == e || g.is_loop(f)) continue;
      int y = g.other(f, x);
      if (seen[y]) continue;
      seen[y] = 1;
      pe[y] = f;
      queue.push_back(y);
    }
  }
  if (!seen[t]) return std::nullopt;
  Cycle c{{e}};
  for (int x = t; x != s; x = g.other(pe[x], x)) c.edge_ids.push_back(pe[x]);
  std::sort(c.edge_ids.begin(), c.edge_ids.end());
  return c;
}

Rat sum_of(const std::vector<Rat>& v) {
  Rat s = 0;
  for (const Rat& x : v) s += x;
  return s;
}

SystoleResult finish_systole(const MaxMinResult& r) {
  SystoleResult out;
  out.value = r.value;
  out.weights = r.weights;
  out.rounds = r.rounds;
  for (size_t i = 0; i < r.sets.size(); ++i) {
    Cycle c{r.sets[i]};
    if (cycle_weight(c, out.weights) == out.value) out.tight_cycles.push_back(c);
    if (r.dual[i] > 0) out.dual_dist[c] += r.dual[i];
  }
  std::sort(out.tight_cycles.begin(), out.tight_cycles.end());
  return out;
}

void require_cycle(const MultiGraph& g, const char* what) {
  if (betti(g) == 0) throw PreconditionError(std::string(what) + ": graph is a forest");
}

std::vector<int> support(const BitMatrix& rep, uint64_t v) {
  std::vector<int> s;
  for (int j = 0; j < rep.cols(); ++j)
    if (std::popcount(v & rep.col_mask(j)) & 1) s.push_back(j);
  return s;
}

}  // namespace

// ---------------------------------------------------------------- systole

SystoleResult systole(const MultiGraph& g) {
  require_cycle(g, "systole");
  std::vector<std::vector<int>> seeds;
  seeds.push_back(min_weight_cycle(g, EdgeWeights(g.m(), Rat(1))).first.edge_ids);
  for (int e = 0; e < g.m(); ++e)
    if (auto c = shortest_cycle_through(g, e)) seeds.push_back(c->edge_ids);
  auto oracle = [&g](const std::vector<Rat>& x) {
    auto [c, w] = min_weight_cycle(g, x);
    return std::make_pair(c.edge_ids, w);
  };
  return finish_systole(max_min_cover(g.m(), seeds, oracle));
}

SystoleResult systole_over(const MultiGraph& g, const std::vector<Cycle>& cycles) {
  if (cycles.empty()) throw PreconditionError("systole_over: no cycles");
  std::vector<std::vector<int>> seeds;
  for (const auto& c : cycles) {
    if (!is_cycle(g, c.edge_ids)) throw PreconditionError("systole_over: not a cycle");
    seeds.push_back(c.edge_ids);
  }
  // every cycle is already a constraint, so the oracle never undercuts
  auto oracle = [&cycles](const std::vector<Rat>& x) {
    size_t best = 0;
    Rat bw = cycle_weight(cycles[0], x);
    for (size_t i = 1; i < cycles.size(); ++i) {
      Rat w = cycle_weight(cycles[i], x);
      if (w < bw) {
        bw = w;
        best = i;
      }
    }
    return std::make_pair(cycles[best].edge_ids, bw);
  };
  return finish_systole(max_min_cover(g.m(), seeds, oracle));
}

std::pair<Rat, Cycle> systole_weighted(const MultiGraph& g, const EdgeWeights& w) {
  if (static_cast<int>(w.size()) != g.m()) throw DimensionError("systole_weighted: weight count differs from edges");
  for (const Rat& x : w)
    if (x < 0) throw PreconditionError("systole_weighted: negative weight");
  Rat total = sum_of(w);
  if (total <= 0) throw PreconditionError("systole_weighted: zero total weight");
  require_cycle(g, "systole_weighted");
  auto [c, val] = min_weight_cycle(g, w);
  return {Rat(val / total), c};
}

bool verify_systole(const MultiGraph& g, const SystoleResult& r, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (static_cast<int>(r.weights.size()) != g.m()) return fail("weight count");
  for (const Rat& x : r.weights)
    if (x < 0) return fail("negative weight");
  if (sum_of(r.weights) != 1) return fail("weights do not sum to 1");
  if (min_weight_cycle(g, r.weights).second != r.value) return fail("lightest cycle differs from value");
  for (const auto& c : r.tight_cycles)
    if (!is_cycle(g, c.edge_ids) || cycle_weight(c, r.weights) != r.value) return fail("tight cycle is not tight");
  Rat mass = 0;
  std::vector<Rat> load(g.m(), Rat(0));
  for (const auto& [c, y] : r.dual_dist) {
    if (y < 0) return fail("negative dual mass");
    if (!is_cycle(g, c.edge_ids)) return fail("dual support is not a cycle");
    mass += y;
    for (int e : c.edge_ids) load[e] += y;
  }
  if (mass != 1) return fail("dual masses do not sum to 1");
  if (*std::max_element(load.begin(), load.end()) != r.value) return fail("maximal edge load differs from value");
  return true;
}

// ---------------------------------------------------------------- cogirth

Rat dual_vector_weight(const BitMatrix& rep, const std::vector<Rat>& w, uint64_t v) {
  Rat s = 0;
  for (int j = 0; j < rep.cols(); ++j)
    if (std::popcount(v & rep.col_mask(j)) & 1) s += w[j];
  return s;
}

std::pair<Rat, uint64_t> min_dual_vector(const BitMatrix& rep, const std::vector<Rat>& w) {
  int d = rep.rows();
  if (static_cast<int>(w.size()) != rep.cols()) throw DimensionError("min_dual_vector: weight count differs");
  if (d == 0) throw PreconditionError("min_dual_vector: rank 0");
  if (d > 24 && !guard_override()) throw GuardError("min_dual_vector: more than 2^24 dual vectors");
  std::vector<uint64_t> cols(rep.cols());
  for (int j = 0; j < rep.cols(); ++j) cols[j] = rep.col_mask(j);
  Rat best;
  uint64_t arg = 0;
  for (uint64_t v = 1; v < (uint64_t{1} << d); ++v) {
    Rat s = 0;
    for (size_t j = 0; j < cols.size(); ++j)
      if (std::popcount(v & cols[j]) & 1) s += w[j];
    if (arg == 0 || s < best) {
      best = s;
      arg = v;
    }
  }
  return {best, arg};
}

CogirthResult cogirth(const BinaryMatroid& m) {
  int d = m.rank();
  if (d == 0) throw PreconditionError("cogirth: rank 0");
  if (d > 12 && !guard_override()) throw GuardError("cogirth: rank above 12");
  const BitMatrix& rep = m.rep();
  std::map<std::vector<int>, uint64_t> vec_of;
  std::vector<std::vector<int>> seeds;
  for (int i = 0; i < d; ++i) {
    uint64_t v = uint64_t{1} << i;
    seeds.push_back(support(rep, v));
    vec_of[seeds.back()] = v;
  }
  auto oracle = [&](const std::vector<Rat>& x) {
    auto [val, v] = min_dual_vector(rep, x);
    auto s = support(rep, v);
    vec_of[s] = v;
    return std::make_pair(s, val);
  };
  MaxMinResult r = max_min_cover(m.size(), seeds, oracle);
  CogirthResult out;
  out.value = r.value;
  out.weights = r.weights;
  out.rounds = r.rounds;
  out.witness = min_dual_vector(rep, out.weights).second;
  for (size_t i = 0; i < r.sets.size(); ++i)
    if (r.dual[i] > 0) out.dual_dist[vec_of.at(r.sets[i])] += r.dual[i];
  return out;
}

bool verify_cogirth(const BinaryMatroid& m, const CogirthResult& r, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  const BitMatrix& rep = m.rep();
  if (static_cast<int>(r.weights.size()) != m.size()) return fail("weight count");
  for (const Rat& x : r.weights)
    if (x < 0) return fail("negative weight");
  if (sum_of(r.weights) != 1) return fail("weights do not sum to 1");
  if (r.witness == 0 || dual_vector_weight(rep, r.weights, r.witness) != r.value) return fail("witness value");
  if (min_dual_vector(rep, r.weights).first != r.value) return fail("a dual vector undercuts the value");
  Rat mass = 0;
  std::vector<Rat> load(m.size(), Rat(0));
  for (const auto& [v, y] : r.dual_dist) {
    if (y < 0 || v == 0) return fail("bad dual entry");
    mass += y;
    for (int j : support(rep, v)) load[j] += y;
  }
  if (mass != 1) return fail("dual masses do not sum to 1");
  if (*std::max_element(load.begin(), load.end()) != r.value) return fail("maximal column load differs from value");
  return true;
}

std::pair<Rat, uint64_t> c_of_rep(const WeightedRep& r) {
  validate(r);
  BitMatrix rep = r.h.mod2();
  if (rank_f2(rep) < rep.rows()) throw RankError("c_of_rep: columns do not span mod 2");
  return min_dual_vector(rep, r.mult);
}

// ---------------------------------------------------------------- bounds

BoundTable s_table() {
  return {{1, Rat(1)},    {2, Rat(2, 3)},  {3, Rat(1, 2)},  {4, Rat(4, 9)}, {5, Rat(3, 8)},
          {6, Rat(1, 3)}, {7, Rat(3, 10)}, {8, Rat(2, 7)},  {9, Rat(1, 4)}};
}

BoundTable c_table() {
  return {{1, Rat(1)},    {2, Rat(2, 3)},  {3, Rat(1, 2)},  {4, Rat(4, 9)}, {5, Rat(2, 5)},
          {6, Rat(1, 3)}, {7, Rat(3, 10)}, {8, Rat(2, 7)},  {9, Rat(1, 4)}};
}

namespace {

std::optional<Rat> inverse_at(const BoundTable& t, int k) {
  auto it = t.find(k);
  if (it == t.end()) return std::nullopt;
  if (it->second <= 0) throw PreconditionError("bound table entries must be positive");
  return Rat(1 / it->second);
}

Rat frac(long p, long q) {
  Rat r(p, q);
  r.canonicalize();
  return r;
}

}  // namespace

Rat bound_small_cycle(int b, int g, int h, const BoundTable& s) {
  if (g < 1 || h < 1 || h > std::min(g, b - 1)) throw PreconditionError("bound_small_cycle: need 1 <= h <= min(g, b-1)");
  auto inv = inverse_at(s, b - h);
  if (!inv) throw PreconditionError("bound_small_cycle: s(" + std::to_string(b - h) + ") not in table");
  return frac(h, g) + *inv;
}

std::vector<std::pair<int, Rat>> large_girth_cases(int b, int g, const BoundTable& s) {
  std::vector<std::pair<int, Rat>> out;
  if (g >= 2 && b >= 3)
    if (auto inv = inverse_at(s, b - 2)) out.push_back({1, frac(b - 1, b - 2) * *inv});
  if (g >= 3 && b >= 4)
    if (auto inv = inverse_at(s, b - 3)) out.push_back({2, frac(3 * b - 3, 3 * b - 8) * *inv});
  if (g >= 4 && b >= 6)
    if (auto inv = inverse_at(s, b - 5)) out.push_back({3, frac(b - 1, b - 4) * *inv});
  return out;
}

Rat bound_large_girth(int b, int g, const BoundTable& s, int which) {
  auto cases = large_girth_cases(b, g, s);
  if (which < 0 || which > 3) throw PreconditionError("bound_large_girth: case must be 0..3");
  std::optional<Rat> best;
  for (const auto& [k, v] : cases) {
    if (which != 0 && k != which) continue;
    if (!best || v > *best) best = v;
  }
  if (!best) throw PreconditionError("bound_large_girth: no applicable case");
  return *best;
}

Rat bound_decomposable(int d, const BoundTable& c) {
  if (d < 4) throw PreconditionError("bound_decomposable: need d >= 4");
  std::optional<Rat> best;
  for (int d1 = 1; d1 <= d - 3; ++d1) {
    auto a = inverse_at(c, d1), b = inverse_at(c, d - 2 - d1);
    if (!a || !b) continue;
    Rat v = *a + *b;
    if (!best || v < *best) best = v;
  }
  if (!best) throw PreconditionError("bound_decomposable: table lacks the needed ranks");
  return *best;
}

// ---------------------------------------------------------------- table verification

namespace {

struct Witness {
  int index;
  std::string name;
};

const std::vector<Witness>& s_witnesses() {
  static const std::vector<Witness> w{{1, "k(3)"},     {2, "theta"},   {3, "k4"},
                                      {4, "k33"},      {5, "g54"},     {6, "petersen"},
                                      {7, "f14"},      {8, "heawood"}, {9, "moebius_kantor"}};
  return w;
}

std::vector<Rat> systoles_parallel(const std::vector<MultiGraph>& gs, int jobs) {
  std::vector<Rat> out(gs.size());
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t i = next++; i < gs.size(); i = next++) out[i] = systole(gs[i]).value;
  };
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace

std::vector<TableCheck> verify_tables(const VerifyOptions& opt) {
  if (opt.max_b > 9 || opt.max_d > 9) throw PreconditionError("verify_tables: tables stop at 9");
  std::vector<TableCheck> out;
  BoundTable s = s_table(), c = c_table();
  for (const auto& w : s_witnesses()) {
    if (w.index > opt.max_b) continue;
    TableCheck t;
    t.table = 's';
    t.index = w.index;
    t.expected = s.at(w.index);
    t.witness = w.name;
    t.method = "witness";
    MultiGraph g = catalog(w.name);
    SystoleResult r = systole(g);
    t.computed = r.value;
    t.ok = betti(g) == w.index && r.value == t.expected && verify_systole(g, r);
    out.push_back(std::move(t));
  }
  for (const auto& w : s_witnesses()) {
    if (w.index > opt.max_d) continue;
    TableCheck t;
    t.table = 'c';
    t.index = w.index;
    t.expected = c.at(w.index);
    t.method = "witness";
    BinaryMatroid m;
    if (w.index == 1) {
      t.witness = "graphic(builtin:k(2))";
      m = graphic(catalog("k(2)"));
    } else if (w.index == 5) {
      t.witness = "r10";
      m = r10();
    } else {
      t.witness = "cographic(builtin:" + w.name + ")";
      m = cographic(catalog(w.name));
    }
    CogirthResult r = cogirth(m);
    t.computed = r.value;
    t.ok = m.rank() == w.index && r.value == t.expected && verify_cogirth(m, r);
    out.push_back(std::move(t));
  }
  if (!opt.exhaustive) return out;
  for (int b = std::max(3, opt.min_exhaustive_b); b <= opt.max_b; ++b) {
    TableCheck t;
    t.table = 's';
    t.index = b;
    t.expected = s.at(b);
    t.method = "exhaustive";
    std::vector<MultiGraph> gs = cubic_graphs(2 * b - 2, 0, true);
    std::vector<Rat> vals = systoles_parallel(gs, std::max(1, opt.jobs));
    t.candidates = static_cast<int>(gs.size());
    t.computed = *std::max_element(vals.begin(), vals.end());
    for (size_t i = 0; i < gs.size(); ++i)
      if (vals[i] == t.computed) t.argmax.push_back(canonical_form(gs[i]).key);
    std::sort(t.argmax.begin(), t.argmax.end());
    t.ok = t.computed == t.expected;
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace regma
