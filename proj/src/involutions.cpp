#include "regma/involutions.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <set>

#include "regma/error.hpp"
#include "regma/surface.hpp"

namespace regma {

namespace {

using Values = std::vector<char>;

bool value(uint64_t f, uint64_t column) { return !in_kernel(f, column); }

// The dual vector taking the given values on the columns of m, if one exists.
std::optional<uint64_t> functional_from_values(const BinaryMatroid& m, const Values& y) {
  uint64_t v = 0;
  for (int i = 0; i < m.rank(); ++i) {
    int pivot = 0;
    while (!m.rep().get(i, pivot)) ++pivot;
    if (y[pivot]) v |= uint64_t{1} << i;
  }
  for (int j = 0; j < m.size(); ++j)
    if (value(v, m.column(j)) != static_cast<bool>(y[j])) return std::nullopt;
  return v;
}

bool family_ok(const BinaryMatroid& m, const std::vector<uint64_t>& fam) {
  for (int j = 0; j < m.size(); ++j) {
    int miss = 0;
    for (uint64_t f : fam) miss += value(f, m.column(j));
    if (miss > 2) return false;
  }
  return true;
}

std::vector<uint64_t> distinct_nonzero(const std::vector<uint64_t>& fam) {
  std::vector<uint64_t> out;
  for (uint64_t f : fam)
    if (f != 0 && std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
  return out;
}

std::vector<uint64_t> graphic_family(const BinaryMatroid& m, const MultiGraph& g) {
  std::vector<uint64_t> fam;
  for (int v = 0; v < g.n(); ++v) {
    Values y(g.m(), 0);
    for (int e : g.incident(v))
      if (!g.is_loop(e)) y[e] = 1;
    auto f = functional_from_values(m, y);
    if (!f) return {};
    fam.push_back(*f);
  }
  return distinct_nonzero(fam);
}

std::vector<uint64_t> cographic_family(const BinaryMatroid& m, const MultiGraph& g) {
  std::vector<Cycle> cover;
  try {
    cover = cographic_cycle_cover(g, betti(g));
  } catch (const Error&) {
    return {};
  }
  std::vector<uint64_t> fam;
  for (const Cycle& c : cover) {
    Values y(g.m(), 0);
    for (int e : c.edge_ids) y[e] = 1;
    auto f = functional_from_values(m, y);
    if (!f) return {};
    fam.push_back(*f);
  }
  return fam;
}

// e_i* + e_{i+1}* in the coordinates of the standard R10 matrix, indices mod 5.
std::vector<uint64_t> r10_family(const BinaryMatroid& m) {
  BitMatrix h = r10_matrix().mod2();
  std::vector<uint64_t> fam;
  for (int i = 0; i < 5; ++i) {
    Values y(10, 0);
    for (int j = 0; j < 10; ++j) y[j] = h.get(i, j) != h.get((i + 1) % 5, j);
    auto f = functional_from_values(m, y);
    if (!f) return {};
    fam.push_back(*f);
  }
  return fam;
}

// A functional on V1 + V2 given by one functional on each side.
struct Pair {
  uint64_t f = 0, g = 0;
};

// Sides of a k-sum: each functional with its values on the glued elements
// (one bit for k = 2, three bits in left order for k = 3).
struct Tagged {
  uint64_t v;
  int r;
};

std::optional<std::vector<Pair>> pairs_k2(std::vector<Tagged> a, std::vector<Tagged> b) {
  auto by_value = [](const Tagged& x, const Tagged& y) { return x.r < y.r; };
  std::stable_sort(a.begin(), a.end(), by_value);
  std::stable_sort(b.begin(), b.end(), by_value);
  size_t na = a.size(), nb = b.size();
  if (na < 2 || nb < 2) return std::nullopt;
  std::vector<Pair> out;
  for (size_t i = 0; i + 2 < na; ++i) {
    if (a[i].r) return std::nullopt;
    out.push_back({a[i].v, 0});
  }
  for (size_t j = 0; j + 2 < nb; ++j) {
    if (b[j].r) return std::nullopt;
    out.push_back({0, b[j].v});
  }
  const Tagged &a1 = a[na - 2], &a2 = a[na - 1], &b1 = b[nb - 2], &b2 = b[nb - 1];
  if (!a1.r && !a2.r) {
    out.push_back({a1.v, 0});
    out.push_back({a2.v, 0});
  } else if (!b1.r && !b2.r) {
    out.push_back({0, b1.v});
    out.push_back({0, b2.v});
  } else if (!a1.r) {
    out.push_back({a1.v, 0});
    out.push_back({a2.v, b2.v});
  } else if (!b1.r) {
    out.push_back({0, b1.v});
    out.push_back({a2.v, b2.v});
  } else {
    out.push_back({a1.v, b1.v});
    out.push_back({a2.v, b2.v});
  }
  return out;
}

std::optional<std::vector<Pair>> pairs_k3(std::vector<Tagged> a, std::vector<Tagged> b) {
  auto nonzero_first = [](const Tagged& x, const Tagged& y) { return (x.r != 0) > (y.r != 0); };
  std::stable_sort(a.begin(), a.end(), nonzero_first);
  std::stable_sort(b.begin(), b.end(), nonzero_first);
  if (a.size() < 3 || b.size() < 3) return std::nullopt;
  auto nonzero = [](const std::vector<Tagged>& s) {
    int c = 0;
    for (const Tagged& t : s) c += t.r != 0;
    return c;
  };
  int za = nonzero(a), zb = nonzero(b);
  if (za > 3 || zb > 3) return std::nullopt;
  auto distinct = [](const std::vector<Tagged>& s) {
    std::set<int> seen;
    for (int i = 0; i < 3; ++i)
      if (s[i].r && !seen.insert(s[i].r).second) return false;
    return true;
  };
  std::vector<Pair> out;
  for (size_t i = 3; i < a.size(); ++i) out.push_back({a[i].v, 0});
  for (size_t j = 3; j < b.size(); ++j) out.push_back({0, b[j].v});
  auto flip = [](std::vector<Pair> p) {
    for (auto& x : p) std::swap(x.f, x.g);
    return p;
  };
  // Cases 1 and 2 with three distinct nonzero restrictions on the b side.
  auto full_side = [](const std::vector<Tagged>& a, const std::vector<Tagged>& b,
                      bool a_distinct) -> std::optional<std::vector<Pair>> {
    auto match = [&](int r) {
      for (int j = 0; j < 3; ++j)
        if (b[j].r == r) return j;
      return -1;
    };
    std::vector<Pair> p;
    if (a_distinct) {
      for (int i = 0; i < 3; ++i) {
        if (!a[i].r) {
          p.push_back({a[i].v, 0});
          continue;
        }
        int j = match(a[i].r);
        if (j < 0) return std::nullopt;
        p.push_back({a[i].v, b[j].v});
      }
      return p;
    }
    if (!a[0].r || a[0].r != a[1].r || a[2].r) return std::nullopt;
    int j1 = match(a[0].r);
    if (j1 < 0) return std::nullopt;
    uint64_t rest = 0;
    for (int j = 0; j < 3; ++j)
      if (j != j1) rest ^= b[j].v;
    p.push_back({a[2].v, 0});
    p.push_back({a[1].v, rest});
    p.push_back({a[0].v, b[j1].v});
    return p;
  };
  std::optional<std::vector<Pair>> extra;
  if (zb == 3) {
    extra = full_side(a, b, distinct(a));
  } else if (za == 3) {
    extra = full_side(b, a, distinct(b));
    if (extra) extra = flip(*extra);
  } else {
    // Case 3: the third of each side vanishes on the glued triple.
    std::vector<Pair> p{{a[2].v, 0}, {0, b[2].v}};
    if (!a[1].r) {
      p.push_back({a[1].v, 0});
    } else if (!b[1].r) {
      p.push_back({0, b[1].v});
    } else if (a[0].r == a[1].r && b[0].r == b[1].r) {
      p.push_back({a[0].v ^ a[1].v, b[0].v ^ b[1].v});
    } else if (b[0].r != b[1].r) {
      // first of g1, g2, g1 + g2 agreeing with f2 on the triple
      std::vector<Tagged> cand{b[0], b[1], {b[0].v ^ b[1].v, b[0].r ^ b[1].r}};
      auto it = std::find_if(cand.begin(), cand.end(), [&](const Tagged& t) { return t.r == a[1].r; });
      if (it == cand.end()) return std::nullopt;
      p.push_back({a[1].v, it->v});
    } else {
      std::vector<Tagged> cand{a[0], a[1], {a[0].v ^ a[1].v, a[0].r ^ a[1].r}};
      auto it = std::find_if(cand.begin(), cand.end(), [&](const Tagged& t) { return t.r == b[1].r; });
      if (it == cand.end()) return std::nullopt;
      p.push_back({it->v, b[1].v});
    }
    extra = p;
  }
  if (!extra) return std::nullopt;
  out.insert(out.end(), extra->begin(), extra->end());
  return out;
}

std::vector<uint64_t> sum_family(const BinaryMatroid& m) {
  const Provenance& p = m.origin();
  const BinaryMatroid &left = *p.left, &right = *p.right;
  std::vector<uint64_t> fa = involution_family(left), fb = involution_family(right);
  if (fa.empty() || fb.empty()) return {};
  std::vector<Tagged> a, b;
  for (uint64_t f : fa) {
    int r = 0;
    for (size_t i = 0; i < p.left_glued.size(); ++i) r |= value(f, left.column(p.left_glued[i])) << i;
    a.push_back({f, r});
  }
  for (uint64_t g : fb) {
    int r = 0;
    for (size_t i = 0; i < p.right_glued.size(); ++i) {
      int j = p.k == 3 ? p.pairing[i] : static_cast<int>(i);
      r |= value(g, right.column(p.right_glued[j])) << i;
    }
    b.push_back({g, r});
  }
  std::optional<std::vector<Pair>> pairs;
  if (p.k == 1) {
    pairs.emplace();
    for (const Tagged& t : a) pairs->push_back({t.v, 0});
    for (const Tagged& t : b) pairs->push_back({0, t.v});
  } else if (p.k == 2) {
    pairs = pairs_k2(a, b);
  } else if (p.k == 3) {
    pairs = pairs_k3(a, b);
  }
  if (!pairs) return {};
  std::vector<uint64_t> fam;
  for (const Pair& q : *pairs) {
    Values y(m.size());
    for (int j = 0; j < m.size(); ++j)
      y[j] = p.from_left[j] >= 0 ? value(q.f, left.column(p.from_left[j])) : value(q.g, right.column(p.from_right[j]));
    auto f = functional_from_values(m, y);
    if (!f) return {};
    fam.push_back(*f);
  }
  return fam;
}

std::string method_name(Provenance::Kind k) {
  switch (k) {
    case Provenance::Kind::graphic:
      return "graphic";
    case Provenance::Kind::cographic:
      return "cographic";
    case Provenance::Kind::r10:
      return "r10";
    case Provenance::Kind::sum:
      return "sum";
    case Provenance::Kind::unknown:
      break;
  }
  return "search";
}

// Faces of an embedding with chi >= 1 as edge sets mod 2.
std::optional<std::vector<Cycle>> face_cover(const MultiGraph& g, int b) {
  if (!is_connected(g)) return std::nullopt;
  std::optional<EmbeddingCertificate> cert;
  try {
    cert = embeds_in(g, 1, SurfaceKind::any);
  } catch (const GuardError&) {
    return std::nullopt;
  }
  if (!cert) return std::nullopt;
  std::vector<Cycle> out;
  for (const auto& face : cert->faces) {
    std::vector<char> odd(g.m(), 0);
    for (int d : face) odd[d >> 1] ^= 1;
    Cycle c;
    for (int e = 0; e < g.m(); ++e)
      if (odd[e]) c.edge_ids.push_back(e);
    if (!c.edge_ids.empty() && std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  }
  if (static_cast<int>(out.size()) < b) return std::nullopt;
  out.resize(b);
  return out;
}

// The three 4-cycles of each of two vertex-disjoint K_{2,3} subgraphs.
std::optional<std::vector<Cycle>> k23_cover(const MultiGraph& g, int b) {
  if (!g.is_simple()) return std::nullopt;
  int n = g.n();
  std::vector<std::vector<int>> edge_of(n, std::vector<int>(n, -1));
  for (int e = 0; e < g.m(); ++e) {
    auto [u, v] = g.edge(e);
    edge_of[u][v] = edge_of[v][u] = e;
  }
  struct K23 {
    int a, b;
    std::vector<int> mid;
  };
  std::vector<K23> found;
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) {
      std::vector<int> common;
      for (int z = 0; z < n; ++z)
        if (edge_of[x][z] >= 0 && edge_of[y][z] >= 0) common.push_back(z);
      for (size_t i = 0; i < common.size(); ++i)
        for (size_t j = i + 1; j < common.size(); ++j)
          for (size_t k = j + 1; k < common.size(); ++k) found.push_back({x, y, {common[i], common[j], common[k]}});
    }
  auto verts = [](const K23& k) {
    std::set<int> s{k.a, k.b};
    s.insert(k.mid.begin(), k.mid.end());
    return s;
  };
  for (size_t i = 0; i < found.size(); ++i)
    for (size_t j = i + 1; j < found.size(); ++j) {
      std::set<int> u = verts(found[i]), w = verts(found[j]);
      if (std::any_of(u.begin(), u.end(), [&](int v) { return w.count(v) > 0; })) continue;
      std::vector<Cycle> out;
      for (const K23* k : {&found[i], &found[j]})
        for (int p = 0; p < 3; ++p)
          for (int q = p + 1; q < 3; ++q) {
            int x = k->mid[p], y = k->mid[q];
            Cycle c{{edge_of[k->a][x], edge_of[x][k->b], edge_of[k->b][y], edge_of[y][k->a]}};
            std::sort(c.edge_ids.begin(), c.edge_ids.end());
            out.push_back(c);
          }
      if (static_cast<int>(out.size()) < b) return std::nullopt;
      out.resize(b);
      return out;
    }
  return std::nullopt;
}

std::optional<std::vector<Cycle>> searched_cover(const MultiGraph& g, int b) {
  std::vector<Cycle> cycles = enumerate_cycles(g);
  std::vector<int> use(g.m(), 0);
  std::vector<Cycle> chosen;
  std::function<bool(size_t)> go = [&](size_t from) {
    if (static_cast<int>(chosen.size()) == b) return true;
    for (size_t i = from; i < cycles.size(); ++i) {
      const auto& ids = cycles[i].edge_ids;
      if (std::any_of(ids.begin(), ids.end(), [&](int e) { return use[e] == 2; })) continue;
      for (int e : ids) ++use[e];
      chosen.push_back(cycles[i]);
      if (go(i + 1)) return true;
      chosen.pop_back();
      for (int e : ids) --use[e];
    }
    return false;
  };
  if (!go(0)) return std::nullopt;
  return chosen;
}

}  // namespace

std::vector<uint64_t> involution_family(const BinaryMatroid& m) {
  const Provenance& p = m.origin();
  std::vector<uint64_t> fam;
  switch (p.kind) {
    case Provenance::Kind::graphic:
      fam = graphic_family(m, *p.graph);
      break;
    case Provenance::Kind::cographic:
      fam = cographic_family(m, *p.graph);
      break;
    case Provenance::Kind::r10:
      fam = r10_family(m);
      break;
    case Provenance::Kind::sum:
      fam = sum_family(m);
      break;
    case Provenance::Kind::unknown:
      break;
  }
  if (!family_ok(m, fam)) return {};
  return fam;
}

BinaryMatroid pad_to_rank6(const BinaryMatroid& m) {
  if (m.rank() > 6) throw RankError("pad_to_rank6: rank exceeds 6");
  if (m.rank() == 6) return m;
  int extra = 6 - m.rank();
  std::vector<std::pair<int, int>> path;
  for (int i = 0; i < extra; ++i) path.push_back({i, i + 1});
  return sum1(m, graphic(MultiGraph(extra + 1, path)));
}

std::vector<int> kernel_counts(const BinaryMatroid& m, const std::vector<uint64_t>& vs) {
  std::vector<int> counts(m.size(), 0);
  for (int j = 0; j < m.size(); ++j)
    for (uint64_t v : vs) counts[j] += in_kernel(v, m.column(j));
  return counts;
}

InvolutionSet search_involutions(const BinaryMatroid& input) {
  BinaryMatroid m = pad_to_rank6(input);
  std::vector<uint64_t> cols;
  for (int j = 0; j < m.size(); ++j) {
    uint64_t c = m.column(j);
    if (c != 0 && std::find(cols.begin(), cols.end(), c) == cols.end()) cols.push_back(c);
  }
  // miss[v]: distinct columns outside ker v
  std::vector<uint64_t> miss(64, 0);
  for (uint64_t v = 1; v < 64; ++v)
    for (size_t i = 0; i < cols.size(); ++i)
      if (!in_kernel(v, cols[i])) miss[v] |= uint64_t{1} << i;
  std::vector<uint64_t> chosen;
  // once: columns missed once so far; twice: missed twice
  std::function<bool(uint64_t, uint64_t, uint64_t)> go = [&](uint64_t from, uint64_t once, uint64_t twice) {
    if (chosen.size() == 6) return true;
    for (uint64_t v = from; v + (5 - chosen.size()) < 64; ++v) {
      if (miss[v] & twice) continue;
      chosen.push_back(v);
      if (go(v + 1, once ^ miss[v], twice | (once & miss[v]))) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (!go(1, 0, 0)) throw Error("six_involutions: no six dual vectors cover every element four times");
  return {chosen, kernel_counts(m, chosen), "search"};
}

InvolutionSet six_involutions(const BinaryMatroid& input) {
  if (input.rank() > 6) throw RankError("six_involutions: rank exceeds 6");
  BinaryMatroid m = pad_to_rank6(input);
  std::vector<uint64_t> fam = distinct_nonzero(involution_family(m));
  if (fam.size() >= 6) {
    fam.resize(6);
    std::vector<int> counts = kernel_counts(m, fam);
    if (std::all_of(counts.begin(), counts.end(), [](int c) { return c >= 4; }))
      return {fam, counts, method_name(input.rank() < 6 ? input.origin().kind : m.origin().kind)};
  }
  return search_involutions(m);
}

InvolutionCheck verify_involutions(const BinaryMatroid& input, const std::vector<Rat>& mult, const InvolutionSet& s) {
  BinaryMatroid m = pad_to_rank6(input);
  std::vector<Rat> w = mult;
  if (static_cast<int>(w.size()) == input.size()) w.resize(m.size(), Rat(0));
  if (static_cast<int>(w.size()) != m.size()) throw DimensionError("verify_involutions: one multiplicity per element");
  for (const Rat& x : w)
    if (x < 0) throw PreconditionError("verify_involutions: negative multiplicity");
  InvolutionCheck out;
  for (const Rat& x : w) out.bound += 2 * x;
  for (uint64_t v : s.vs)
    for (int j = 0; j < m.size(); ++j)
      if (!in_kernel(v, m.column(j))) out.total_codim += w[j];
  std::set<uint64_t> distinct(s.vs.begin(), s.vs.end());
  bool shape = s.vs.size() == 6 && distinct.size() == 6 && !distinct.count(0) &&
               std::all_of(s.vs.begin(), s.vs.end(), [](uint64_t v) { return v < 64; });
  out.ok = shape && out.total_codim <= out.bound;
  return out;
}

std::vector<Cycle> cographic_cycle_cover(const MultiGraph& g, int b) {
  if (betti(g) != b) throw PreconditionError("cographic_cycle_cover: b differs from the Betti number");
  if (b > 6) throw PreconditionError("cographic_cycle_cover: Betti number exceeds 6");
  if (b == 0) return {};
  if (auto c = face_cover(g, b)) return *c;
  if (auto c = k23_cover(g, b)) return *c;
  if (auto c = searched_cover(g, b)) return *c;
  throw Error("cographic_cycle_cover: no cover with every edge on at most two cycles");
}

}  // namespace regma
