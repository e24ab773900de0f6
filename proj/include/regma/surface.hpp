#pragma once

#include <optional>
#include <string>
#include <vector>

#include "regma/graph.hpp"

namespace regma {

// Edge e has dart 2e at its first endpoint and dart 2e+1 at its second.
inline int dart_vertex(const MultiGraph& g, int d) {
  return d & 1 ? g.edge(d >> 1).second : g.edge(d >> 1).first;
}

struct RotationSystem {
  std::vector<std::vector<int>> rot;  // cyclic dart order at each vertex
  std::vector<int> sign;              // +1 or -1 per edge
};

// Boundary walks as sequences of departing darts.
using FaceList = std::vector<std::vector<int>>;

struct EmbeddingCertificate {
  RotationSystem rotation;
  FaceList faces;
  int chi = 0;
  bool orientable = true;
};

enum class SurfaceKind {
  orientable,     // all signs +1
  any,            // orientable or not
  nonorientable,  // at least one cycle with odd sign product
};

bool valid_rotation(const MultiGraph& g, const RotationSystem& r);
FaceList trace_faces(const MultiGraph& g, const RotationSystem& r);
// True iff every cycle has an even number of -1 edges.
bool is_orientable(const MultiGraph& g, const RotationSystem& r);

// First certificate with Euler characteristic >= chi in the canonical search
// order: sign classes by increasing mask over non-tree edges (tree edges +1),
// then rotations lexicographically with vertex 0 most significant.
std::optional<EmbeddingCertificate> embeds_in(const MultiGraph& g, int chi, SurfaceKind kind);
std::optional<EmbeddingCertificate> embeds_with_face(const MultiGraph& g, int chi, SurfaceKind kind,
                                                     const Cycle& face);
// Certificate with the largest Euler characteristic over the whole search.
std::optional<EmbeddingCertificate> best_embedding(const MultiGraph& g, SurfaceKind kind);

// Recomputes faces and chi from the rotation system alone.
bool verify_certificate(const MultiGraph& g, const EmbeddingCertificate& c, std::string* why = nullptr);
bool has_face(const MultiGraph& g, const EmbeddingCertificate& c, const Cycle& face);

// Upper bound 2/(b-1+chi) on sys(G) for Betti-b graphs embedded with characteristic chi.
Rat embedding_systole_bound(int b, int chi);

}  // namespace regma
