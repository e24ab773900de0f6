#include "regma/matroid.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <set>

#include "regma/error.hpp"

namespace regma {

namespace {

void row_sub(IntMatrix& m, int dst, int src, int sign) {
  for (int j = 0; j < m.cols(); ++j)
    if (m.at(src, j) != 0) m.at(dst, j) -= sign * m.at(src, j);
}

void row_swap(IntMatrix& m, int a, int b) {
  if (a == b) return;
  for (int j = 0; j < m.cols(); ++j) std::swap(m.at(a, j), m.at(b, j));
}

std::vector<std::string> index_labels(int n) {
  std::vector<std::string> l;
  for (int j = 0; j < n; ++j) l.push_back(std::to_string(j));
  return l;
}

std::vector<int> bits_of(uint64_t x) {
  std::vector<int> out;
  while (x) {
    out.push_back(std::countr_zero(x));
    x &= x - 1;
  }
  return out;
}

// Basis of {x in F2^dim : parity(x & u) = 0 for all u}.
std::vector<uint64_t> f2_annihilator(const std::vector<uint64_t>& us, int dim) {
  std::vector<uint64_t> rows;
  std::vector<int> piv;
  for (uint64_t u : us) {
    for (size_t k = 0; k < rows.size(); ++k)
      if ((u >> piv[k]) & 1u) u ^= rows[k];
    if (!u) continue;
    int p = std::countr_zero(u);
    for (size_t k = 0; k < rows.size(); ++k)
      if ((rows[k] >> p) & 1u) rows[k] ^= u;
    rows.push_back(u);
    piv.push_back(p);
  }
  std::vector<char> is_piv(dim, 0);
  for (int p : piv) is_piv[p] = 1;
  std::vector<uint64_t> out;
  for (int f = 0; f < dim; ++f) {
    if (is_piv[f]) continue;
    uint64_t x = uint64_t{1} << f;
    for (size_t k = 0; k < rows.size(); ++k)
      if ((rows[k] >> f) & 1u) x |= uint64_t{1} << piv[k];
    out.push_back(x);
  }
  return out;
}

BitMatrix from_functionals(const std::vector<uint64_t>& funcs, const std::vector<uint64_t>& cols) {
  BitMatrix b(static_cast<int>(funcs.size()), static_cast<int>(cols.size()));
  for (size_t i = 0; i < funcs.size(); ++i)
    for (size_t j = 0; j < cols.size(); ++j)
      if (std::popcount(funcs[i] & cols[j]) & 1) b.set(static_cast<int>(i), static_cast<int>(j), true);
  return b;
}

bool proportional(const IntMatrix& h, int a, int b) {
  for (int i = 0; i < h.rows(); ++i)
    for (int k = i + 1; k < h.rows(); ++k)
      if (h.at(i, a) * h.at(k, b) != h.at(k, a) * h.at(i, b)) return false;
  return true;
}

IntMatrix block_diag(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) m.at(a.rows() + i, a.cols() + j) = b.at(i, j);
  return m;
}

std::vector<std::string> sum_labels(const BinaryMatroid& m1, const std::vector<int>& keep1, const BinaryMatroid& m2,
                                    const std::vector<int>& keep2) {
  std::vector<std::string> l;
  for (int j : keep1) l.push_back("1." + m1.labels()[j]);
  for (int j : keep2) l.push_back("2." + m2.labels()[j]);
  return l;
}

std::vector<int> complement(int n, const std::vector<int>& removed) {
  std::vector<int> keep;
  for (int j = 0; j < n; ++j)
    if (std::find(removed.begin(), removed.end(), j) == removed.end()) keep.push_back(j);
  return keep;
}

// Quotient of the direct sum by the span of the glued pairs. Integer glue
// vectors are (a_i, -b_i) with lifted columns a_i, b_i; the result lattice
// is their common kernel, written in its Hermite basis.
BinaryMatroid glue(const BinaryMatroid& m1, const BinaryMatroid& m2, int k, const std::vector<int>& g1,
                   const std::vector<int>& g2, const std::vector<int>& pairing) {
  int d1 = m1.rank(), d2 = m2.rank(), D = d1 + d2;
  if (D > 64) throw DimensionError("sum: combined rank above 64");
  std::vector<int> keep1 = complement(m1.size(), g1), keep2 = complement(m2.size(), g2);
  std::vector<uint64_t> cols;
  for (int j : keep1) cols.push_back(m1.column(j));
  for (int j : keep2) cols.push_back(m2.column(j) << d1);
  std::vector<uint64_t> glue_vecs;
  for (size_t i = 0; i < g1.size(); ++i) glue_vecs.push_back(m1.column(g1[i]) | m2.column(g2[pairing[i]]) << d1);
  std::vector<uint64_t> funcs = f2_annihilator(glue_vecs, D);
  BitMatrix rep = from_functionals(funcs, cols);

  Provenance p;
  p.kind = Provenance::Kind::sum;
  p.k = k;
  p.left = std::make_shared<BinaryMatroid>(m1);
  p.right = std::make_shared<BinaryMatroid>(m2);
  p.left_glued = g1;
  p.right_glued = g2;
  p.pairing = pairing;
  for (int j : keep1) {
    p.from_left.push_back(j);
    p.from_right.push_back(-1);
  }
  for (int j : keep2) {
    p.from_left.push_back(-1);
    p.from_right.push_back(j);
  }
  auto labels = sum_labels(m1, keep1, m2, keep2);
  BinaryMatroid plain(labels, rep, std::nullopt, p);
  if (!m1.lift() || !m2.lift()) return plain;

  const IntMatrix& l1 = *m1.lift();
  const IntMatrix& l2 = *m2.lift();
  int gk = static_cast<int>(g1.size());
  // Signs making the lifted glued columns sum to zero on each side (k = 3).
  std::vector<int> s1(gk, 1), s2(gk, 1);
  if (gk == 3) {
    auto find_signs = [](const IntMatrix& l, std::vector<int> cols, std::vector<int>& s) {
      for (int mask = 0; mask < 4; ++mask) {
        int t[3] = {1, mask & 1 ? -1 : 1, mask & 2 ? -1 : 1};
        bool ok = true;
        for (int i = 0; i < l.rows() && ok; ++i)
          ok = t[0] * l.at(i, cols[0]) + t[1] * l.at(i, cols[1]) + t[2] * l.at(i, cols[2]) == 0;
        if (ok) {
          s.assign(t, t + 3);
          return true;
        }
      }
      return false;
    };
    std::vector<int> c2;
    for (int i = 0; i < 3; ++i) c2.push_back(g2[pairing[i]]);
    if (!find_signs(l1, g1, s1) || !find_signs(l2, c2, s2)) {
      p.warning = "integer lift omitted: glued columns admit no zero-sum signing";
      return BinaryMatroid(labels, rep, std::nullopt, p);
    }
  }
  IntMatrix u(gk, D);
  for (int i = 0; i < gk; ++i) {
    for (int r = 0; r < d1; ++r) u.at(i, r) = s1[i] * l1.at(r, g1[i]);
    for (int r = 0; r < d2; ++r) u.at(i, d1 + r) = -s2[i] * l2.at(r, g2[pairing[i]]);
  }
  IntMatrix kb = kernel_lattice_basis(u);
  IntMatrix stacked = block_diag(l1, l2);
  std::vector<int> keep;
  for (int j : keep1) keep.push_back(j);
  for (int j : keep2) keep.push_back(m1.size() + j);
  IntMatrix lift = kb.transpose() * stacked.select_cols(keep);
  BinaryMatroid lifted = BinaryMatroid::from_lift(labels, lift, p);
  if (lifted.rep() == plain.rep() && rank_q(*lifted.lift()) == lifted.rank()) return lifted;
  p.warning = "integer lift omitted: the integer quotient disagrees with the F2 quotient";
  return BinaryMatroid(labels, rep, std::nullopt, p);
}

void check_column(const BinaryMatroid& m, int e, const char* what) {
  if (e < 0 || e >= m.size()) throw PreconditionError(std::string(what) + ": column index out of range");
  if (m.column(e) == 0) throw PreconditionError(std::string(what) + ": glued column is zero");
}

}  // namespace

// ---------------------------------------------------------------- BinaryMatroid

BinaryMatroid::BinaryMatroid(std::vector<std::string> labels, const BitMatrix& rep, std::optional<IntMatrix> lift,
                             Provenance origin)
    : labels_(std::move(labels)), origin_(std::make_shared<Provenance>(std::move(origin))) {
  if (static_cast<int>(labels_.size()) != rep.cols()) throw DimensionError("matroid: label count differs from columns");
  if (lift) {
    if (lift->rows() != rep.rows() || lift->cols() != rep.cols()) throw DimensionError("matroid: lift shape differs");
    if (!(lift->mod2() == rep)) throw PreconditionError("matroid: lift does not reduce to the representation mod 2");
  }
  BitMatrix r = rep;
  int row = 0;
  for (int j = 0; j < r.cols() && row < r.rows(); ++j) {
    int p = -1;
    for (int i = row; i < r.rows(); ++i)
      if (r.get(i, j)) {
        p = i;
        break;
      }
    if (p < 0) continue;
    r.swap_rows(row, p);
    if (lift) row_swap(*lift, row, p);
    for (int i = 0; i < r.rows(); ++i) {
      if (i == row || !r.get(i, j)) continue;
      r.add_row(i, row);
      if (lift) row_sub(*lift, i, row, sgn(lift->at(i, j)) == sgn(lift->at(row, j)) ? 1 : -1);
    }
    ++row;
  }
  if (row > 64) throw DimensionError("matroid: rank above 64");
  std::vector<int> keep(row);
  std::iota(keep.begin(), keep.end(), 0);
  rep_ = BitMatrix(row, r.cols());
  for (int i = 0; i < row; ++i)
    for (int j = 0; j < r.cols(); ++j)
      if (r.get(i, j)) rep_.set(i, j, true);
  if (lift) lift_ = lift->select_rows(keep);
}

BinaryMatroid BinaryMatroid::from_lift(std::vector<std::string> labels, const IntMatrix& lift, Provenance origin) {
  return BinaryMatroid(std::move(labels), lift.mod2(), lift, std::move(origin));
}

int BinaryMatroid::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  return it == labels_.end() ? -1 : static_cast<int>(it - labels_.begin());
}

int BinaryMatroid::rank_of(const std::vector<int>& subset) const {
  std::vector<uint64_t> v;
  for (int j : subset) v.push_back(column(j));
  return rank_f2_masks(std::move(v));
}

bool BinaryMatroid::is_independent(const std::vector<int>& subset) const {
  return rank_of(subset) == static_cast<int>(subset.size());
}

bool BinaryMatroid::is_basis(const std::vector<int>& subset) const {
  return static_cast<int>(subset.size()) == rank() && is_independent(subset);
}

bool BinaryMatroid::is_simple() const {
  std::set<uint64_t> seen;
  for (int j = 0; j < size(); ++j)
    if (column(j) == 0 || !seen.insert(column(j)).second) return false;
  return true;
}

// ---------------------------------------------------------------- constructions

BinaryMatroid graphic(const MultiGraph& g, int root) {
  if (!is_connected(g)) throw PreconditionError("graphic: graph must be connected");
  if (g.n() == 0) return BinaryMatroid({}, BitMatrix(0, 0));
  if (root < 0 || root >= g.n()) throw PreconditionError("graphic: root out of range");
  IntMatrix h(g.n() - 1, g.m());
  auto row = [&](int v) { return v < root ? v : v - 1; };
  for (int e = 0; e < g.m(); ++e) {
    auto [u, v] = g.edge(e);
    if (u == v) continue;
    if (u != root) h.at(row(u), e) = 1;
    if (v != root) h.at(row(v), e) = -1;
  }
  Provenance p;
  p.kind = Provenance::Kind::graphic;
  p.graph = g;
  return BinaryMatroid::from_lift(index_labels(g.m()), h, p);
}

BinaryMatroid cographic(const MultiGraph& g) {
  if (!is_connected(g)) throw PreconditionError("cographic: graph must be connected");
  int n = g.n();
  std::vector<int> parent(n, -1), pedge(n, -1), depth(n, -1);
  std::vector<char> tree(g.m(), 0);
  std::vector<int> queue;
  if (n > 0) {
    depth[0] = 0;
    queue.push_back(0);
  }
  for (size_t i = 0; i < queue.size(); ++i) {
    int x = queue[i];
    for (int e : g.incident(x)) {
      int y = g.other(e, x);
      if (depth[y] >= 0) continue;
      depth[y] = depth[x] + 1;
      parent[y] = x;
      pedge[y] = e;
      tree[e] = 1;
      queue.push_back(y);
    }
  }
  std::vector<std::vector<long>> rows;
  for (int f = 0; f < g.m(); ++f) {
    if (tree[f]) continue;
    std::vector<long> c(g.m(), 0);
    auto [a, b] = g.edge(f);
    c[f] = 1;
    // close the cycle with the tree path from b back to a
    int x = b, y = a;
    std::vector<int> down;
    while (depth[x] > depth[y]) {
      c[pedge[x]] += g.edge(pedge[x]).first == x ? 1 : -1;
      x = parent[x];
    }
    while (depth[y] > depth[x]) {
      down.push_back(y);
      y = parent[y];
    }
    while (x != y) {
      c[pedge[x]] += g.edge(pedge[x]).first == x ? 1 : -1;
      x = parent[x];
      down.push_back(y);
      y = parent[y];
    }
    for (int z : down) c[pedge[z]] += g.edge(pedge[z]).first == parent[z] ? 1 : -1;
    rows.push_back(std::move(c));
  }
  IntMatrix h = rows.empty() ? IntMatrix(0, g.m()) : IntMatrix::from_rows(rows);
  Provenance p;
  p.kind = Provenance::Kind::cographic;
  p.graph = g;
  return BinaryMatroid::from_lift(index_labels(g.m()), h, p);
}

IntMatrix r10_matrix() {
  return IntMatrix{{1, 0, 0, 0, 0, -1, 1, 0, 0, 1},
                   {0, 1, 0, 0, 0, 1, -1, 1, 0, 0},
                   {0, 0, 1, 0, 0, 0, 1, -1, 1, 0},
                   {0, 0, 0, 1, 0, 0, 0, 1, -1, 1},
                   {0, 0, 0, 0, 1, 1, 0, 0, 1, -1}};
}

BinaryMatroid r10() {
  Provenance p;
  p.kind = Provenance::Kind::r10;
  return BinaryMatroid::from_lift({"e1", "e2", "e3", "e4", "e5", "f1", "f2", "f3", "f4", "f5"}, r10_matrix(), p);
}

BinaryMatroid dual(const BinaryMatroid& m) {
  Provenance p;
  if (m.origin().kind == Provenance::Kind::graphic || m.origin().kind == Provenance::Kind::cographic) {
    p.kind = m.origin().kind == Provenance::Kind::graphic ? Provenance::Kind::cographic : Provenance::Kind::graphic;
    p.graph = m.origin().graph;
  }
  if (m.lift()) return BinaryMatroid::from_lift(m.labels(), kernel_lattice_basis(*m.lift()).transpose(), p);
  std::vector<uint64_t> rows;
  int n = m.size();
  if (n > 64) throw DimensionError("dual: more than 64 columns without a lift");
  for (int i = 0; i < m.rank(); ++i) {
    uint64_t r = 0;
    for (int j = 0; j < n; ++j)
      if (m.rep().get(i, j)) r |= uint64_t{1} << j;
    rows.push_back(r);
  }
  std::vector<uint64_t> ker = f2_annihilator(rows, n);
  BitMatrix b(static_cast<int>(ker.size()), n);
  for (size_t i = 0; i < ker.size(); ++i)
    for (int j : bits_of(ker[i])) b.set(static_cast<int>(i), j, true);
  return BinaryMatroid(m.labels(), b, std::nullopt, p);
}

BinaryMatroid contract(const BinaryMatroid& m, const std::vector<int>& set) {
  std::vector<uint64_t> glued;
  for (int j : set) {
    if (j < 0 || j >= m.size()) throw PreconditionError("contract: column index out of range");
    glued.push_back(m.column(j));
  }
  std::vector<int> keep = complement(m.size(), set);
  std::vector<uint64_t> cols;
  std::vector<std::string> labels;
  for (int j : keep) {
    cols.push_back(m.column(j));
    labels.push_back(m.labels()[j]);
  }
  return BinaryMatroid(labels, from_functionals(f2_annihilator(glued, m.rank()), cols));
}

// ---------------------------------------------------------------- enumeration

std::vector<GroundSubset> circuits(const BinaryMatroid& m) {
  int n = m.size();
  if (n > 24 && !guard_override()) throw GuardError("circuits: more than 24 elements");
  std::vector<uint64_t> rows;
  for (int i = 0; i < m.rank(); ++i) {
    uint64_t r = 0;
    for (int j = 0; j < n; ++j)
      if (m.rep().get(i, j)) r |= uint64_t{1} << j;
    rows.push_back(r);
  }
  std::vector<uint64_t> ker = f2_annihilator(rows, n);
  std::vector<GroundSubset> out;
  uint64_t x = 0;
  uint64_t total = uint64_t{1} << ker.size();
  for (uint64_t i = 1; i < total; ++i) {
    x ^= ker[std::countr_zero(i)];  // Gray code walk over the cycle space
    std::vector<int> s = bits_of(x);
    if (m.rank_of(s) == static_cast<int>(s.size()) - 1) out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

std::vector<GroundSubset> cocircuits(const BinaryMatroid& m) {
  int n = m.size(), d = m.rank();
  if (n > 24 && !guard_override()) throw GuardError("cocircuits: more than 24 elements");
  std::vector<GroundSubset> out;
  for (uint64_t v = 1; v < (uint64_t{1} << d); ++v) {
    std::vector<int> s, rest;
    for (int j = 0; j < n; ++j) (std::popcount(v & m.column(j)) & 1 ? s : rest).push_back(j);
    if (m.rank_of(rest) == d - 1) out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

std::vector<GroundSubset> hyperplanes(const BinaryMatroid& m) {
  std::vector<GroundSubset> out;
  for (const auto& c : cocircuits(m)) out.push_back(complement(m.size(), c));
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------- sums

BinaryMatroid sum1(const BinaryMatroid& m1, const BinaryMatroid& m2) { return glue(m1, m2, 1, {}, {}, {}); }

BinaryMatroid sum2(const BinaryMatroid& m1, int e1, const BinaryMatroid& m2, int e2) {
  if (m1.size() < 2 || m2.size() < 2) throw PreconditionError("sum2: each matroid needs at least 2 elements");
  check_column(m1, e1, "sum2");
  check_column(m2, e2, "sum2");
  return glue(m1, m2, 2, {e1}, {e2}, {0});
}

BinaryMatroid sum3(const BinaryMatroid& m1, const std::vector<int>& w1, const BinaryMatroid& m2,
                   const std::vector<int>& w2, const std::vector<int>& pairing) {
  if (m1.size() < 7 || m2.size() < 7) throw PreconditionError("sum3: each matroid needs at least 7 elements");
  if (w1.size() != 3 || w2.size() != 3) throw PreconditionError("sum3: need three glued columns on each side");
  std::vector<int> perm = pairing;
  std::sort(perm.begin(), perm.end());
  if (perm != std::vector<int>{0, 1, 2}) throw PreconditionError("sum3: pairing must be a permutation of 0,1,2");
  for (const auto* side : {&w1, &w2}) {
    const BinaryMatroid& m = side == &w1 ? m1 : m2;
    std::set<int> ids(side->begin(), side->end());
    if (ids.size() != 3) throw PreconditionError("sum3: glued columns must be distinct");
    for (int e : *side) check_column(m, e, "sum3");
    uint64_t a = m.column((*side)[0]), b = m.column((*side)[1]), c = m.column((*side)[2]);
    if (a == b || b == c || a == c) throw PreconditionError("sum3: glued columns must span a 2-dimensional space");
    if ((a ^ b ^ c) != 0) throw PreconditionError("sum3: glued columns must sum to zero over F2");
  }
  return glue(m1, m2, 3, w1, w2, pairing);
}

Simplification simplify(const BinaryMatroid& m) {
  Simplification s;
  s.map.assign(m.size(), -1);
  std::vector<int> kept;
  for (int j = 0; j < m.size(); ++j) {
    if (m.column(j) == 0) continue;
    for (size_t k = 0; k < kept.size(); ++k)
      if (m.column(kept[k]) == m.column(j) && (!m.lift() || proportional(*m.lift(), kept[k], j))) {
        s.map[j] = static_cast<int>(k);
        break;
      }
    if (s.map[j] >= 0) continue;
    s.map[j] = static_cast<int>(kept.size());
    kept.push_back(j);
  }
  std::vector<std::string> labels;
  for (int j : kept) labels.push_back(m.labels()[j]);
  std::optional<IntMatrix> lift;
  if (m.lift()) lift = m.lift()->select_cols(kept);
  s.matroid = BinaryMatroid(labels, m.rep().select_cols(kept), lift);
  return s;
}

std::optional<std::vector<int>> isomorphic(const BinaryMatroid& m1, const BinaryMatroid& m2) {
  if ((m1.size() > 12 || m2.size() > 12) && !guard_override()) throw GuardError("isomorphic: more than 12 elements");
  if (!m1.is_simple() || !m2.is_simple()) throw PreconditionError("isomorphic: matroids must be simple");
  int n = m1.size();
  if (m2.size() != n || m2.rank() != m1.rank()) return std::nullopt;
  auto c1 = circuits(m1), c2 = circuits(m2);
  if (c1.size() != c2.size()) return std::nullopt;
  auto signature = [n](const std::vector<GroundSubset>& cs) {
    std::vector<std::vector<int>> sig(n);
    for (const auto& c : cs)
      for (int e : c) sig[e].push_back(static_cast<int>(c.size()));
    for (auto& s : sig) std::sort(s.begin(), s.end());
    return sig;
  };
  auto s1 = signature(c1), s2 = signature(c2);
  {
    auto a = s1, b = s2;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return std::nullopt;
  }
  std::set<uint32_t> target;
  for (const auto& c : c2) {
    uint32_t x = 0;
    for (int e : c) x |= 1u << e;
    target.insert(x);
  }
  // circuits of m1 grouped by their largest element
  std::vector<std::vector<uint32_t>> closing(n);
  for (const auto& c : c1) {
    uint32_t x = 0;
    for (int e : c) x |= 1u << e;
    closing[c.back()].push_back(x);
  }
  std::vector<int> img(n, -1);
  std::vector<char> used(n, 0);
  std::function<bool(int)> rec = [&](int e) {
    if (e == n) return true;
    for (int f = 0; f < n; ++f) {
      if (used[f] || s1[e] != s2[f]) continue;
      img[e] = f;
      bool ok = true;
      for (uint32_t c : closing[e]) {
        uint32_t y = 0;
        for (int x : bits_of(c)) y |= 1u << img[x];
        if (!target.count(y)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      used[f] = 1;
      if (rec(e + 1)) return true;
      used[f] = 0;
    }
    img[e] = -1;
    return false;
  };
  if (!rec(0)) return std::nullopt;
  return img;
}

// ---------------------------------------------------------------- weighted representations

void validate(const WeightedRep& r) {
  if (static_cast<int>(r.mult.size()) != r.h.cols()) throw DimensionError("weighted rep: multiplicity count differs");
  if (rank_q(r.h) != r.h.rows()) throw RankError("weighted rep: weight matrix is rank deficient");
  Rat sum = 0;
  for (const Rat& x : r.mult) {
    if (x < 0) throw PreconditionError("weighted rep: negative multiplicity");
    sum += x;
  }
  if (sum != 1) throw PreconditionError("weighted rep: multiplicities must sum to 1");
  if (!odd_determinant_check(r.h).ok) throw PreconditionError("weighted rep: an invertible minor has even determinant");
}

WeightedRep weighted(const IntMatrix& h, std::vector<Rat> mult) {
  Rat sum = 0;
  for (const Rat& x : mult) sum += x;
  if (sum <= 0) throw PreconditionError("weighted rep: multiplicities must have positive sum");
  for (Rat& x : mult) x /= sum;
  WeightedRep r{h, std::move(mult)};
  validate(r);
  return r;
}

WeightedRep weighted(const BinaryMatroid& m) {
  if (!m.lift()) throw PreconditionError("weighted rep: matroid has no integer lift");
  return weighted(*m.lift(), std::vector<Rat>(m.size(), Rat(1)));
}

WeightedRep ksum_rep(const WeightedRep& r1, const WeightedRep& r2, int k, const KSumSelection& sel,
                     SumConvention conv) {
  if (k < 1 || k > 3) throw PreconditionError("ksum_rep: k must be 1, 2 or 3");
  size_t need = k == 1 ? 0 : (k == 2 ? 1 : 3);
  if (sel.left.size() != need || sel.right.size() != need)
    throw PreconditionError("ksum_rep: selection size does not match k");
  int d1 = r1.h.rows(), d2 = r2.h.rows(), D = d1 + d2;
  for (int j : sel.left)
    if (j < 0 || j >= r1.h.cols() || r1.h.col(j) == std::vector<Int>(d1)) throw PreconditionError("ksum_rep: selected weight is zero or out of range");
  for (int j : sel.right)
    if (j < 0 || j >= r2.h.cols() || r2.h.col(j) == std::vector<Int>(d2)) throw PreconditionError("ksum_rep: selected weight is zero or out of range");
  if (k == 3) {
    for (int i = 0; i < d1; ++i)
      if (r1.h.at(i, sel.left[0]) + r1.h.at(i, sel.left[1]) + r1.h.at(i, sel.left[2]) != 0)
        throw PreconditionError("ksum_rep: left weights do not sum to zero");
    for (int i = 0; i < d2; ++i)
      if (r2.h.at(i, sel.right[0]) + r2.h.at(i, sel.right[1]) + r2.h.at(i, sel.right[2]) != 0)
        throw PreconditionError("ksum_rep: right weights do not sum to zero");
  }
  IntMatrix u(static_cast<int>(need), D);
  for (size_t i = 0; i < need; ++i) {
    for (int r = 0; r < d1; ++r) u.at(static_cast<int>(i), r) = r1.h.at(r, sel.left[i]);
    for (int r = 0; r < d2; ++r) u.at(static_cast<int>(i), d1 + r) = -r2.h.at(r, sel.right[i]);
  }
  IntMatrix kb = need ? kernel_lattice_basis(u) : IntMatrix::identity(D);
  IntMatrix stacked = block_diag(r1.h, r2.h);
  std::vector<int> cols;
  std::vector<Rat> mult;
  for (int j = 0; j < r1.h.cols(); ++j) {
    auto it = std::find(sel.left.begin(), sel.left.end(), j);
    if (it == sel.left.end()) {
      cols.push_back(j);
      mult.push_back(r1.mult[j]);
    } else if (conv == SumConvention::keep) {
      cols.push_back(j);
      mult.push_back(r1.mult[j] + r2.mult[sel.right[it - sel.left.begin()]]);
    }
  }
  for (int j = 0; j < r2.h.cols(); ++j) {
    if (std::find(sel.right.begin(), sel.right.end(), j) != sel.right.end()) continue;
    cols.push_back(r1.h.cols() + j);
    mult.push_back(r2.mult[j]);
  }
  IntMatrix h = kb.transpose() * stacked.select_cols(cols);
  if (rank_q(h) != h.rows()) throw RankError("ksum_rep: surviving weights do not span the sum lattice");
  return weighted(h, std::move(mult));
}

WeightedRep odd_transform(const WeightedRep& r, const OddStep& step) {
  int d = r.h.rows(), n = r.h.cols();
  IntMatrix h = r.h;
  switch (step.kind) {
    case OddStep::Kind::pullback:
    case OddStep::Kind::pushforward: {
      if (step.a.rows() != d || step.a.cols() != d) throw DimensionError("odd_transform: A must be d x d");
      Int det_a = det(step.a);
      if (mpz_even_p(det_a.get_mpz_t())) throw PreconditionError("odd_transform: det(A) must be odd");
      IntMatrix at = step.a.transpose();
      if (step.kind == OddStep::Kind::pullback) {
        h = at * r.h;
        break;
      }
      // solve A^T x = column exactly over Q, then demand integrality
      for (int j = 0; j < n; ++j) {
        std::vector<std::vector<Rat>> aug(d, std::vector<Rat>(d + 1));
        for (int i = 0; i < d; ++i) {
          for (int c = 0; c < d; ++c) aug[i][c] = Rat(at.at(i, c));
          aug[i][d] = Rat(r.h.at(i, j));
        }
        for (int c = 0; c < d; ++c) {
          int p = c;
          while (aug[p][c] == 0) ++p;
          std::swap(aug[p], aug[c]);
          for (int i = 0; i < d; ++i) {
            if (i == c || aug[i][c] == 0) continue;
            Rat f = aug[i][c] / aug[c][c];
            for (int t = c; t <= d; ++t) aug[i][t] -= f * aug[c][t];
          }
        }
        for (int i = 0; i < d; ++i) {
          Rat x = aug[i][d] / aug[i][i];
          if (x.get_den() != 1) throw PreconditionError("odd_transform: pushforward is not integral");
          h.at(i, j) = x.get_num();
        }
      }
      break;
    }
    case OddStep::Kind::scale:
    case OddStep::Kind::divide: {
      if (static_cast<int>(step.factors.size()) != n) throw DimensionError("odd_transform: one factor per column");
      for (int j = 0; j < n; ++j) {
        long f = step.factors[j];
        if (f % 2 == 0) throw PreconditionError("odd_transform: factors must be odd");
        for (int i = 0; i < d; ++i) {
          if (step.kind == OddStep::Kind::scale) {
            h.at(i, j) *= f;
          } else {
            if (!mpz_divisible_ui_p(h.at(i, j).get_mpz_t(), static_cast<unsigned long>(f < 0 ? -f : f)))
              throw PreconditionError("odd_transform: division is not exact");
            h.at(i, j) /= f;
          }
        }
      }
      break;
    }
  }
  WeightedRep out{h, r.mult};
  validate(out);
  return out;
}

// ---------------------------------------------------------------- I/O

BinaryMatroid parse_matroid(std::istream& in) {
  long d, n;
  if (!(in >> d >> n) || d < 0 || n < 0) throw ParseError("matroid: expected 'd n' header");
  BitMatrix b(static_cast<int>(d), static_cast<int>(n));
  for (long i = 0; i < d; ++i) {
    long j = 0;
    while (j < n) {
      std::string tok;
      if (!(in >> tok)) throw ParseError("matroid: representation ended early");
      for (char ch : tok) {
        if (ch != '0' && ch != '1') throw ParseError("matroid: representation entries must be 0 or 1");
        if (j >= n) throw ParseError("matroid: row too long");
        b.set(static_cast<int>(i), static_cast<int>(j++), ch == '1');
      }
    }
  }
  std::optional<IntMatrix> lift;
  std::string tok;
  if (in >> tok) {
    if (tok != "LIFT") throw ParseError("matroid: expected LIFT or end of input");
    lift = IntMatrix(static_cast<int>(d), static_cast<int>(n));
    for (long i = 0; i < d; ++i)
      for (long j = 0; j < n; ++j) {
        if (!(in >> tok)) throw ParseError("matroid: lift ended early");
        try {
          lift->at(static_cast<int>(i), static_cast<int>(j)) = Int(tok);
        } catch (const std::invalid_argument&) {
          throw ParseError("matroid: bad lift entry '" + tok + "'");
        }
      }
  }
  return BinaryMatroid(index_labels(static_cast<int>(n)), b, lift);
}

std::ostream& operator<<(std::ostream& os, const BinaryMatroid& m) {
  os << m.rank() << ' ' << m.size() << '\n';
  for (int i = 0; i < m.rank(); ++i) {
    for (int j = 0; j < m.size(); ++j) os << (j ? " " : "") << m.rep().get(i, j);
    os << '\n';
  }
  if (m.lift()) {
    os << "LIFT\n";
    for (int i = 0; i < m.rank(); ++i) {
      for (int j = 0; j < m.size(); ++j) os << (j ? " " : "") << m.lift()->at(i, j);
      os << '\n';
    }
  }
  return os;
}

}  // namespace regma

// ---------------------------------------------------------------- expression language

namespace regma {

namespace {

class ExprParser {
 public:
  explicit ExprParser(const std::string& s) : s_(s) {}

  BinaryMatroid parse() {
    BinaryMatroid m = expr();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return m;
  }

 private:
  const std::string& s_;
  size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("matroid expression at offset " + std::to_string(pos_) + ": " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(const std::string& tok) {
    skip();
    if (s_.compare(pos_, tok.size(), tok) != 0) return false;
    pos_ += tok.size();
    return true;
  }
  void expect(const std::string& tok) {
    if (!eat(tok)) fail("expected '" + tok + "'");
  }
  // Raw text up to a depth-0 delimiter.
  std::string raw(const std::string& stops) {
    skip();
    size_t start = pos_;
    int depth = 0;
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (depth == 0 && stops.find(c) != std::string::npos) break;
      if (c == '(' || c == '{') ++depth;
      if (c == ')' || c == '}') --depth;
      ++pos_;
    }
    std::string out = s_.substr(start, pos_ - start);
    while (!out.empty() && std::isspace(static_cast<unsigned char>(out.back()))) out.pop_back();
    if (out.empty()) fail("empty token");
    return out;
  }
  int column(const BinaryMatroid& m, const std::string& label) {
    int j = m.index_of(label);
    if (j < 0) fail("unknown element label '" + label + "'");
    return j;
  }

  BinaryMatroid expr() {
    if (eat("graphic(")) {
      MultiGraph g = load_graph(raw(")"));
      expect(")");
      return graphic(g);
    }
    if (eat("cographic(")) {
      MultiGraph g = load_graph(raw(")"));
      expect(")");
      return cographic(g);
    }
    if (eat("dual(")) {
      BinaryMatroid m = expr();
      expect(")");
      return dual(m);
    }
    if (eat("sum1(")) {
      BinaryMatroid a = expr();
      expect(",");
      BinaryMatroid b = expr();
      expect(")");
      return sum1(a, b);
    }
    if (eat("sum2(")) {
      BinaryMatroid a = expr();
      expect("@");
      int ea = column(a, raw(","));
      expect(",");
      BinaryMatroid b = expr();
      expect("@");
      int eb = column(b, raw(")"));
      expect(")");
      return sum2(a, ea, b, eb);
    }
    if (eat("sum3(")) {
      BinaryMatroid a = expr();
      std::vector<int> wa = triple(a);
      expect(",");
      BinaryMatroid b = expr();
      std::vector<int> wb = triple(b);
      expect(",");
      std::string perm = raw(")");
      expect(")");
      std::vector<int> pairing;
      for (char c : perm) {
        if (c < '0' || c > '2') fail("pairing must be a permutation of 012");
        pairing.push_back(c - '0');
      }
      return sum3(a, wa, b, wb, pairing);
    }
    if (eat("file:")) {
      std::string path = raw(",)@");
      std::ifstream in(path);
      if (!in) throw ParseError("cannot open matroid file '" + path + "'");
      return parse_matroid(in);
    }
    if (eat("r10")) return r10();
    fail("expected graphic, cographic, r10, dual, sum1, sum2, sum3 or file:");
  }

  std::vector<int> triple(const BinaryMatroid& m) {
    expect("@");
    expect("{");
    std::vector<int> w;
    for (int i = 0; i < 3; ++i) {
      if (i) expect(",");
      w.push_back(column(m, raw(",}")));
    }
    expect("}");
    return w;
  }
};

}  // namespace

BinaryMatroid build_matroid(const std::string& expr) { return ExprParser(expr).parse(); }

}  // namespace regma
