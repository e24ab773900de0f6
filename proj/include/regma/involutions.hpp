#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "regma/exact.hpp"
#include "regma/graph.hpp"
#include "regma/matroid.hpp"

namespace regma {

// A dual vector v on a rank-d binary matroid is a bitmask over the rows of
// its reduced representation; column c lies in ker v iff popcount(v & c) is even.
inline bool in_kernel(uint64_t v, uint64_t column) { return (__builtin_popcountll(v & column) & 1) == 0; }

struct InvolutionSet {
  std::vector<uint64_t> vs;  // six distinct nonzero dual vectors
  std::vector<int> counts;   // per element, the number of vs whose kernel holds it
  std::string method;        // graphic, cographic, r10, sum, search
};

// Rank-d matroids with d < 6 are padded by a 1-sum with 6 - d coloops
// (the graphic matroid of a path); the padding columns come last.
BinaryMatroid pad_to_rank6(const BinaryMatroid& m);

// Kernel counts of the given vectors on every column of m.
std::vector<int> kernel_counts(const BinaryMatroid& m, const std::vector<uint64_t>& vs);

// Six distinct nonzero dual vectors with every element in at least four
// kernels. Uses the declared provenance (graphic, cographic, r10, k-sums)
// and falls back to search when the construction yields fewer than six.
// Throws RankError above rank 6 and Error when no such set exists.
InvolutionSet six_involutions(const BinaryMatroid& m);

// Lexicographically first valid set among 6-subsets of nonzero vectors.
InvolutionSet search_involutions(const BinaryMatroid& m);

// Per-element dual-vector family from the provenance: each element lies
// outside at most two of the kernels. Empty when the provenance is unknown
// or a construction step fails.
std::vector<uint64_t> involution_family(const BinaryMatroid& m);

struct InvolutionCheck {
  bool ok = false;
  Rat total_codim;  // sum over i of the mult outside ker v_i
  Rat bound;        // 2 * sum of mult
};
// mult has one entry per column of m; when m is padded, padding columns get 0.
InvolutionCheck verify_involutions(const BinaryMatroid& m, const std::vector<Rat>& mult, const InvolutionSet& s);

// b distinct nonzero even subgraphs of g (Betti number b <= 6) with every
// edge on at most two of them. Face boundaries of a projective-plane or
// planar embedding when one exists, else the 4-cycles of two disjoint
// K_{2,3} subgraphs, else a search over simple cycles.
std::vector<Cycle> cographic_cycle_cover(const MultiGraph& g, int b);

}  // namespace regma
