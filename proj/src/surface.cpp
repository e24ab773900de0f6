#include "regma/surface.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "regma/error.hpp"

namespace regma {

namespace {

std::vector<std::vector<int>> darts_at(const MultiGraph& g) {
  std::vector<std::vector<int>> d(g.n());
  for (int e = 0; e < g.m(); ++e) {
    d[g.edge(e).first].push_back(2 * e);
    d[g.edge(e).second].push_back(2 * e + 1);
  }
  return d;
}

// Face tracing over (dart, local orientation) states; state index 2*dart + (s > 0).
class Tracer {
 public:
  explicit Tracer(const MultiGraph& g)
      : g_(g), nxt_(2 * g.m()), prv_(2 * g.m()), sgn_(g.m(), 1), seen_(4 * g.m(), 0), pin_(g.m(), 0), pin_seen_(g.m(), 0) {}

  void set_rotation(const std::vector<int>& r) {
    int k = static_cast<int>(r.size());
    for (int i = 0; i < k; ++i) {
      nxt_[r[i]] = r[(i + 1) % k];
      prv_[r[(i + 1) % k]] = r[i];
    }
  }
  void set_sign(int e, int s) { sgn_[e] = s; }
  void set_pin(const Cycle& c) {
    pin_len_ = static_cast<int>(c.edge_ids.size());
    for (int e : c.edge_ids) pin_[e] = 1;
  }

  // Number of faces; sets pinned_hit when some face walks exactly the pinned cycle.
  int count(FaceList* out = nullptr) {
    if (++epoch_ == 0) {
      std::fill(seen_.begin(), seen_.end(), 0);
      epoch_ = 1;
    }
    pinned_hit = false;
    if (g_.m() == 0) {
      if (out) out->push_back({});
      return 1;
    }
    int faces = 0;
    int states = 4 * g_.m();
    for (int st0 = 0; st0 < states; ++st0) {
      if (seen_[st0] == epoch_) continue;
      ++faces;
      std::vector<int> walk;
      int len = 0;
      bool inside = true;
      ++face_id_;
      int d = st0 >> 1, s = st0 & 1 ? 1 : -1;
      do {
        int e = d >> 1;
        seen_[2 * d + (s > 0)] = epoch_;
        int s2 = s * sgn_[e];
        int o = d ^ 1;
        seen_[2 * o + (s2 < 0)] = epoch_;  // reverse traversal of the same face
        if (out) walk.push_back(d);
        ++len;
        // a pinned edge seen twice in one walk cannot be a simple boundary
        inside = inside && pin_[e] && pin_seen_[e] != face_id_;
        pin_seen_[e] = face_id_;
        d = s2 > 0 ? nxt_[o] : prv_[o];
        s = s2;
      } while (2 * d + (s > 0) != st0);
      if (pin_len_ > 0 && inside && len == pin_len_) pinned_hit = true;
      if (out) out->push_back(std::move(walk));
    }
    return faces;
  }

  bool pinned_hit = false;

 private:
  const MultiGraph& g_;
  std::vector<int> nxt_, prv_, sgn_;
  std::vector<uint32_t> seen_;
  uint32_t epoch_ = 0;
  std::vector<char> pin_;
  std::vector<uint64_t> pin_seen_;
  uint64_t face_id_ = 0;
  int pin_len_ = 0;
};

struct SearchSpace {
  std::vector<std::vector<std::vector<int>>> perms;  // per vertex, rotations with first dart fixed
  std::vector<int> nontree;
};

SearchSpace build_space(const MultiGraph& g, SurfaceKind kind) {
  if (!is_connected(g)) throw PreconditionError("embedding search needs a connected graph");
  SearchSpace sp;
  auto darts = darts_at(g);
  double total = 1;
  for (auto& d : darts) {
    std::vector<std::vector<int>> ps;
    if (d.size() <= 1) {
      ps.push_back(d);
    } else {
      std::vector<int> rest(d.begin() + 1, d.end());
      std::sort(rest.begin(), rest.end());
      do {
        std::vector<int> r{d[0]};
        r.insert(r.end(), rest.begin(), rest.end());
        ps.push_back(std::move(r));
      } while (std::next_permutation(rest.begin(), rest.end()));
    }
    total *= static_cast<double>(ps.size());
    sp.perms.push_back(std::move(ps));
  }
  std::vector<char> tree(g.m(), 0), seen(g.n(), 0);
  std::vector<int> queue{0};
  if (g.n() > 0) seen[0] = 1;
  for (size_t i = 0; i < queue.size(); ++i) {
    int x = queue[i];
    for (int e : g.incident(x)) {
      int y = g.other(e, x);
      if (!seen[y]) {
        seen[y] = 1;
        tree[e] = 1;
        queue.push_back(y);
      }
    }
  }
  for (int e = 0; e < g.m(); ++e)
    if (!tree[e]) sp.nontree.push_back(e);
  if (kind != SurfaceKind::orientable) total *= std::ldexp(1.0, static_cast<int>(sp.nontree.size()));
  if (total > 1e9 && !guard_override())
    throw GuardError("embedding search space exceeds 1e9 rotation systems");
  if (sp.nontree.size() > 62) throw GuardError("embedding search: too many sign classes");
  return sp;
}

// Runs the canonical search; accept(faces, pinned_hit) decides acceptance,
// returning true stops the search at the current system.
template <class Accept>
std::optional<RotationSystem> search(const MultiGraph& g, SurfaceKind kind, const Cycle* pin, Accept accept) {
  SearchSpace sp = build_space(g, kind);
  Tracer tr(g);
  if (pin) tr.set_pin(*pin);
  int n = g.n();
  uint64_t masks = kind == SurfaceKind::orientable ? 1 : (uint64_t{1} << sp.nontree.size());
  uint64_t first_mask = kind == SurfaceKind::nonorientable ? 1 : 0;
  std::optional<RotationSystem> found;
  for (uint64_t mask = first_mask; mask < masks; ++mask) {
    for (size_t i = 0; i < sp.nontree.size(); ++i) tr.set_sign(sp.nontree[i], mask >> i & 1 ? -1 : 1);
    std::vector<size_t> idx(n, 0);
    for (int v = 0; v < n; ++v) tr.set_rotation(sp.perms[v][0]);
    for (;;) {
      int f = tr.count();
      int verdict = accept(f, tr.pinned_hit);
      if (verdict) {
        RotationSystem r;
        for (int v = 0; v < n; ++v) r.rot.push_back(sp.perms[v][idx[v]]);
        r.sign.assign(g.m(), 1);
        for (size_t i = 0; i < sp.nontree.size(); ++i)
          if (mask >> i & 1) r.sign[sp.nontree[i]] = -1;
        found = r;
        if (verdict > 0) return found;
      }
      int v = n - 1;
      while (v >= 0 && idx[v] + 1 == sp.perms[v].size()) {
        idx[v] = 0;
        tr.set_rotation(sp.perms[v][0]);
        --v;
      }
      if (v < 0) break;
      ++idx[v];
      tr.set_rotation(sp.perms[v][idx[v]]);
    }
  }
  return found;
}

EmbeddingCertificate make_certificate(const MultiGraph& g, RotationSystem r) {
  EmbeddingCertificate c;
  c.faces = trace_faces(g, r);
  c.chi = g.n() - g.m() + static_cast<int>(c.faces.size());
  c.orientable = is_orientable(g, r);
  c.rotation = std::move(r);
  return c;
}

}  // namespace

bool valid_rotation(const MultiGraph& g, const RotationSystem& r) {
  if (static_cast<int>(r.rot.size()) != g.n() || static_cast<int>(r.sign.size()) != g.m()) return false;
  std::vector<int> count(2 * g.m(), 0);
  for (int v = 0; v < g.n(); ++v)
    for (int d : r.rot[v]) {
      if (d < 0 || d >= 2 * g.m() || dart_vertex(g, d) != v) return false;
      if (++count[d] > 1) return false;
    }
  for (int c : count)
    if (c != 1) return false;
  for (int s : r.sign)
    if (s != 1 && s != -1) return false;
  return true;
}

FaceList trace_faces(const MultiGraph& g, const RotationSystem& r) {
  if (!valid_rotation(g, r)) throw PreconditionError("trace_faces: invalid rotation system");
  Tracer tr(g);
  for (int v = 0; v < g.n(); ++v) tr.set_rotation(r.rot[v]);
  for (int e = 0; e < g.m(); ++e) tr.set_sign(e, r.sign[e]);
  FaceList out;
  tr.count(&out);
  return out;
}

bool is_orientable(const MultiGraph& g, const RotationSystem& r) {
  std::vector<int> p(g.n(), 0);
  for (int s = 0; s < g.n(); ++s) {
    if (p[s]) continue;
    p[s] = 1;
    std::vector<int> st{s};
    while (!st.empty()) {
      int x = st.back();
      st.pop_back();
      for (int e : g.incident(x)) {
        int y = g.other(e, x);
        if (!p[y]) {
          p[y] = p[x] * r.sign[e];
          st.push_back(y);
        }
      }
    }
  }
  for (int e = 0; e < g.m(); ++e)
    if (r.sign[e] != p[g.edge(e).first] * p[g.edge(e).second]) return false;
  return true;
}

std::optional<EmbeddingCertificate> embeds_in(const MultiGraph& g, int chi, SurfaceKind kind) {
  int need = chi - g.n() + g.m();
  auto r = search(g, kind, nullptr, [&](int f, bool) { return f >= need ? 1 : 0; });
  if (!r) return std::nullopt;
  return make_certificate(g, *r);
}

std::optional<EmbeddingCertificate> embeds_with_face(const MultiGraph& g, int chi, SurfaceKind kind,
                                                     const Cycle& face) {
  if (!is_cycle(g, face.edge_ids)) throw PreconditionError("embeds_with_face: not a cycle of the graph");
  int need = chi - g.n() + g.m();
  auto r = search(g, kind, &face, [&](int f, bool hit) { return f >= need && hit ? 1 : 0; });
  if (!r) return std::nullopt;
  return make_certificate(g, *r);
}

std::optional<EmbeddingCertificate> best_embedding(const MultiGraph& g, SurfaceKind kind) {
  int best = -1;
  int cap = kind == SurfaceKind::nonorientable ? 1 : 2;
  int cap_faces = cap - g.n() + g.m();
  auto r = search(g, kind, nullptr, [&](int f, bool) {
    if (f <= best) return 0;
    best = f;
    return f >= cap_faces ? 1 : -1;
  });
  if (!r) return std::nullopt;
  return make_certificate(g, *r);
}

bool verify_certificate(const MultiGraph& g, const EmbeddingCertificate& c, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (!valid_rotation(g, c.rotation)) return fail("invalid rotation system");
  FaceList faces = trace_faces(g, c.rotation);
  if (faces != c.faces) return fail("faces differ from traced faces");
  if (c.chi != g.n() - g.m() + static_cast<int>(faces.size())) return fail("Euler characteristic mismatch");
  if (c.orientable != is_orientable(g, c.rotation)) return fail("orientability flag mismatch");
  std::vector<int> sides(g.m(), 0);
  for (const auto& f : faces)
    for (int d : f) sides[d >> 1]++;
  for (int s : sides)
    if (s != 2) return fail("an edge side is not traversed exactly once");
  return true;
}

bool has_face(const MultiGraph&, const EmbeddingCertificate& c, const Cycle& face) {
  for (const auto& f : c.faces) {
    if (f.size() != face.edge_ids.size()) continue;
    std::vector<int> ids;
    for (int d : f) ids.push_back(d >> 1);
    std::sort(ids.begin(), ids.end());
    if (ids == face.edge_ids) return true;
  }
  return false;
}

Rat embedding_systole_bound(int b, int chi) {
  if (b - 1 + chi <= 0) throw PreconditionError("embedding_systole_bound: b - 1 + chi must be positive");
  Rat r(2, b - 1 + chi);
  r.canonicalize();
  return r;
}

}  // namespace regma
