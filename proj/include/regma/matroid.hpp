#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "regma/exact.hpp"
#include "regma/graph.hpp"

namespace regma {

class BinaryMatroid;

// How a matroid was built. Structure-aware algorithms (six involutions) use
// this declaration instead of recognizing graphic or cographic structure.
struct Provenance {
  enum class Kind { unknown, graphic, cographic, r10, sum } kind = Kind::unknown;
  std::optional<MultiGraph> graph;  // graphic / cographic; columns are edge ids
  int k = 0;                        // sum
  std::shared_ptr<const BinaryMatroid> left, right;
  std::vector<int> left_glued, right_glued;  // glued column indices
  std::vector<int> pairing;                  // sum3: left_glued[i] ~ right_glued[pairing[i]]
  // Column j of the sum came from column from_left[j] of left when >= 0,
  // else from column from_right[j] of right.
  std::vector<int> from_left, from_right;
  std::string warning;  // set when an input lift could not be carried through
};

// Binary matroid given by a full-row-rank F2 matrix in reduced row echelon
// form, optionally with an integer lift reducing to it mod 2.
class BinaryMatroid {
 public:
  BinaryMatroid() = default;
  // Row-reduces rep (dropping zero rows) and applies the same unimodular row
  // operations to lift. Throws if lift mod 2 differs from rep.
  BinaryMatroid(std::vector<std::string> labels, const BitMatrix& rep, std::optional<IntMatrix> lift = std::nullopt,
                Provenance origin = {});
  // Takes the representation from lift mod 2.
  static BinaryMatroid from_lift(std::vector<std::string> labels, const IntMatrix& lift, Provenance origin = {});

  int rank() const { return rep_.rows(); }
  int size() const { return rep_.cols(); }
  const BitMatrix& rep() const { return rep_; }
  const std::optional<IntMatrix>& lift() const { return lift_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const Provenance& origin() const { return *origin_; }
  int index_of(const std::string& label) const;  // -1 if absent

  uint64_t column(int j) const { return rep_.col_mask(j); }
  int rank_of(const std::vector<int>& subset) const;
  bool is_independent(const std::vector<int>& subset) const;
  bool is_basis(const std::vector<int>& subset) const;
  // No zero columns and no two equal columns.
  bool is_simple() const;

 private:
  std::vector<std::string> labels_;
  BitMatrix rep_;
  std::optional<IntMatrix> lift_;
  std::shared_ptr<const Provenance> origin_ = std::make_shared<Provenance>();
};

using GroundSubset = std::vector<int>;

// Signed incidence matrix with the root row deleted; loops are zero columns.
BinaryMatroid graphic(const MultiGraph& g, int root = 0);
// Rows are fundamental cycles of a BFS spanning tree; column e holds the
// values of the edge dual e* on them.
BinaryMatroid cographic(const MultiGraph& g);
BinaryMatroid r10();
IntMatrix r10_matrix();

// Bases of the dual are complements of bases. The lift is the transpose of
// an integer kernel basis of the input lift.
BinaryMatroid dual(const BinaryMatroid& m);

// Quotient by the span of the given columns, which are removed. The lift is dropped.
BinaryMatroid contract(const BinaryMatroid& m, const std::vector<int>& set);

std::vector<GroundSubset> circuits(const BinaryMatroid& m);
std::vector<GroundSubset> cocircuits(const BinaryMatroid& m);
std::vector<GroundSubset> hyperplanes(const BinaryMatroid& m);

// Labels of the sums are "1.<label>" and "2.<label>".
BinaryMatroid sum1(const BinaryMatroid& m1, const BinaryMatroid& m2);
BinaryMatroid sum2(const BinaryMatroid& m1, int e1, const BinaryMatroid& m2, int e2);
// w1, w2 are three columns each; w1[i] is glued to w2[pairing[i]].
BinaryMatroid sum3(const BinaryMatroid& m1, const std::vector<int>& w1, const BinaryMatroid& m2,
                   const std::vector<int>& w2, const std::vector<int>& pairing);

struct Simplification {
  BinaryMatroid matroid;
  std::vector<int> map;  // old column -> new column, -1 for zero columns
};
// Drops zero columns and merges parallel ones (equal over F2 and, with a
// lift, proportional over Q), keeping the first of each class.
Simplification simplify(const BinaryMatroid& m);

// Ground-set bijection m1 -> m2 preserving circuits, if one exists.
std::optional<std::vector<int>> isomorphic(const BinaryMatroid& m1, const BinaryMatroid& m2);

// ---- weighted representations ----

struct WeightedRep {
  IntMatrix h;            // d x n weight matrix
  std::vector<Rat> mult;  // multiplicities, normalized to sum 1
};

// Checks rank_q(h) = rows, odd determinants, mult >= 0 and sum(mult) = 1.
void validate(const WeightedRep& r);
WeightedRep weighted(const BinaryMatroid& m);  // lift with uniform multiplicities
WeightedRep weighted(const IntMatrix& h, std::vector<Rat> mult);  // normalizes mult

enum class SumConvention {
  remove,  // glued weights are dropped
  keep,    // one copy of each glued weight stays, carrying both multiplicities
};

struct KSumSelection {
  std::vector<int> left, right;  // k = 2: one column each; k = 3: three columns each
};

// Weights restricted to the lattice {x : (w_left - w_right)(x) = 0 for all glued pairs},
// written in the column Hermite basis of that lattice.
WeightedRep ksum_rep(const WeightedRep& r1, const WeightedRep& r2, int k, const KSumSelection& sel,
                     SumConvention conv = SumConvention::remove);

struct OddStep {
  enum class Kind { pullback, pushforward, scale, divide } kind;
  IntMatrix a;              // pullback / pushforward
  std::vector<long> factors;  // scale / divide, one odd integer per column
};
WeightedRep odd_transform(const WeightedRep& r, const OddStep& step);

// ---- I/O ----

// "d n", d rows of n bits, then optionally "LIFT" and d integer rows.
BinaryMatroid parse_matroid(std::istream& in);
std::ostream& operator<<(std::ostream& os, const BinaryMatroid& m);

// Expression language: graphic(G), cographic(G), r10, dual(X), sum1(X, Y),
// sum2(X@l, Y@l), sum3(X@{a,b,c}, Y@{a,b,c}, pqr) where pqr is a permutation
// of 012, and file:PATH for a matroid file. G is builtin:NAME or a graph file path.
BinaryMatroid build_matroid(const std::string& expr);

}  // namespace regma
