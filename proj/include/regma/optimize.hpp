#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "regma/exact.hpp"
#include "regma/graph.hpp"
#include "regma/matroid.hpp"

namespace regma {

// ---- exact linear programming ----

struct LinearConstraint {
  std::vector<Rat> a;
  Rat b;
};

enum class LPStatus { optimal, infeasible, unbounded };
std::string to_string(LPStatus s);

struct LPSolution {
  LPStatus status = LPStatus::infeasible;
  std::vector<Rat> primal;
  std::vector<Rat> dual;  // equality rows first, then inequality rows
  Rat value;
};

// max c.x subject to eq rows a.x = b, le rows a.x <= b and x >= 0.
// Dense two-phase tableau simplex with Bland's rule.
LPSolution lp_max(const std::vector<Rat>& c, const std::vector<LinearConstraint>& eq,
                  const std::vector<LinearConstraint>& le);

// Checks primal feasibility, dual feasibility (y_le >= 0, A^T y >= c) and
// equality of both objective values.
bool verify_lp(const std::vector<Rat>& c, const std::vector<LinearConstraint>& eq,
               const std::vector<LinearConstraint>& le, const LPSolution& s, std::string* why = nullptr);

// max over probability vectors x on n items of min over subsets S of x(S).
// The oracle returns a subset of minimal weight under the given x; the
// cutting-plane loop adds it while it undercuts the current LP value.
struct MaxMinResult {
  Rat value;
  std::vector<Rat> weights;
  std::vector<std::vector<int>> sets;  // every constraint added
  std::vector<Rat> dual;               // per set; a probability vector
  int rounds = 0;
};
using SetOracle = std::function<std::pair<std::vector<int>, Rat>(const std::vector<Rat>&)>;
MaxMinResult max_min_cover(int n, std::vector<std::vector<int>> seeds, const SetOracle& oracle);

// ---- systole ----

struct SystoleResult {
  Rat value;
  EdgeWeights weights;                  // sums to 1
  std::vector<Cycle> tight_cycles;      // cycles of weight exactly value, sorted
  std::map<Cycle, Rat> dual_dist;       // probability distribution on cycles
  int rounds = 0;
};

SystoleResult systole(const MultiGraph& g);
// Systole over an explicit cycle list, solved as one LP (brute-force oracle).
SystoleResult systole_over(const MultiGraph& g, const std::vector<Cycle>& cycles);
// sys(G, w) = min cycle weight / total weight, with a witness cycle.
std::pair<Rat, Cycle> systole_weighted(const MultiGraph& g, const EdgeWeights& w);
// value is a lower bound through the weights and an upper bound through the
// dual distribution (every weighting has a cycle no heavier than the maximal
// edge load).
bool verify_systole(const MultiGraph& g, const SystoleResult& r, std::string* why = nullptr);

// ---- cogirth ----

// f_w(v) = sum of w_i over columns i with <v, col_i> = 1 over F2.
Rat dual_vector_weight(const BitMatrix& rep, const std::vector<Rat>& w, uint64_t v);
// Minimum of f_w over nonzero v in (F2^d)*, first minimizer in increasing v.
std::pair<Rat, uint64_t> min_dual_vector(const BitMatrix& rep, const std::vector<Rat>& w);

struct CogirthResult {
  Rat value;
  std::vector<Rat> weights;
  uint64_t witness = 0;                 // bit i = coordinate i of the dual vector
  std::map<uint64_t, Rat> dual_dist;    // probability distribution on dual vectors
  int rounds = 0;
};

CogirthResult cogirth(const BinaryMatroid& m);
bool verify_cogirth(const BinaryMatroid& m, const CogirthResult& r, std::string* why = nullptr);

// c(H, mult): minimum over nonzero F2 dual vectors of f_mult, mult normalized.
std::pair<Rat, uint64_t> c_of_rep(const WeightedRep& r);

// ---- recursive bounds (all values are reciprocals sys^-1 or c^-1) ----

// b -> s(b) or d -> c(d); lookups of missing keys make a case inapplicable.
using BoundTable = std::map<int, Rat>;
BoundTable s_table();
BoundTable c_table();

// h/g + s(b-h)^-1 for a cycle of length g in a 3-edge-connected graph.
Rat bound_small_cycle(int b, int g, int h, const BoundTable& s);
// Large girth cases 1..3; case 0 asks for the largest applicable one.
Rat bound_large_girth(int b, int g, const BoundTable& s, int which = 0);
std::vector<std::pair<int, Rat>> large_girth_cases(int b, int g, const BoundTable& s);
// min over d1 + d2 = d - 2, d1, d2 >= 1 of c(d1)^-1 + c(d2)^-1.
Rat bound_decomposable(int d, const BoundTable& c);

// ---- table verification ----

struct TableCheck {
  char table = 's';  // 's' for s(b), 'c' for c(d)
  int index = 0;     // b or d
  Rat expected;
  Rat computed;
  std::string witness;              // catalog name or matroid expression
  std::string method;               // "witness" or "exhaustive"
  int candidates = 0;               // exhaustive: graphs examined
  std::vector<std::string> argmax;  // exhaustive: canonical keys attaining the max
  bool ok = false;
};

struct VerifyOptions {
  int max_b = 9;
  int max_d = 9;
  bool exhaustive = false;
  int min_exhaustive_b = 3;
  int jobs = 1;
};

std::vector<TableCheck> verify_tables(const VerifyOptions& opt);

}  // namespace regma
