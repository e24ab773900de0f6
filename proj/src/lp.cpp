#include <algorithm>
#include <set>

#include "regma/error.hpp"
#include "regma/optimize.hpp"

namespace regma {

std::string to_string(LPStatus s) {
  switch (s) {
    case LPStatus::optimal:
      return "optimal";
    case LPStatus::infeasible:
      return "infeasible";
    case LPStatus::unbounded:
      return "unbounded";
  }
  return "unknown";
}

namespace {

// Dense tableau. Row r < rows holds B^-1 [A | b]; the last row holds reduced
// costs z_j = c_B B^-1 A_j - c_j and the current objective value.
class Tableau {
 public:
  Tableau(int rows, int cols) : rows_(rows), cols_(cols), t_((rows + 1) * static_cast<size_t>(cols + 1)) {}

  Rat& at(int r, int c) { return t_[static_cast<size_t>(r) * (cols_ + 1) + c]; }
  Rat& rhs(int r) { return at(r, cols_); }
  Rat& z(int c) { return at(rows_, c); }

  void pivot(int pr, int pc) {
    Rat inv = 1 / at(pr, pc);
    std::vector<int> nz;
    for (int c = 0; c <= cols_; ++c) {
      Rat& x = at(pr, c);
      if (x == 0) continue;
      x *= inv;
      nz.push_back(c);
    }
    for (int r = 0; r <= rows_; ++r) {
      if (r == pr) continue;
      Rat f = at(r, pc);
      if (f == 0) continue;
      for (int c : nz) at(r, c) -= f * at(pr, c);
    }
    basis[pr] = pc;
  }

  void set_objective(const std::vector<Rat>& cost) {
    for (int c = 0; c <= cols_; ++c) {
      Rat v = c < cols_ ? Rat(-cost[c]) : Rat(0);
      for (int r = 0; r < rows_; ++r)
        if (cost[basis[r]] != 0) v += cost[basis[r]] * at(r, c);
      z(c) = v;
    }
  }

  // Bland's rule; returns false when unbounded.
  bool optimize(const std::vector<char>& barred) {
    for (;;) {
      int pc = -1;
      for (int c = 0; c < cols_; ++c)
        if (!barred[c] && z(c) < 0) {
          pc = c;
          break;
        }
      if (pc < 0) return true;
      int pr = -1;
      Rat best;
      for (int r = 0; r < rows_; ++r) {
        if (at(r, pc) <= 0) continue;
        Rat ratio = rhs(r) / at(r, pc);
        if (pr < 0 || ratio < best || (ratio == best && basis[r] < basis[pr])) {
          pr = r;
          best = ratio;
        }
      }
      if (pr < 0) return false;
      pivot(pr, pc);
    }
  }

  std::vector<int> basis;

 private:
  int rows_, cols_;
  std::vector<Rat> t_;
};

}  // namespace

LPSolution lp_max(const std::vector<Rat>& c, const std::vector<LinearConstraint>& eq,
                  const std::vector<LinearConstraint>& le) {
  int n = static_cast<int>(c.size());
  int p = static_cast<int>(eq.size()), q = static_cast<int>(le.size()), m = p + q;
  for (const auto* rows : {&eq, &le})
    for (const auto& row : *rows)
      if (static_cast<int>(row.a.size()) != n) throw DimensionError("lp_max: constraint length differs from objective");

  // Columns: x (n), one surplus/slack per inequality row (q), one unit
  // column per row (m) which is a slack for a plain <= row and an artificial
  // otherwise.
  int cols = n + q + m;
  Tableau t(m, cols);
  t.basis.assign(m, 0);
  std::vector<int> flip(m, 1);
  std::vector<char> artificial(cols, 0);
  for (int r = 0; r < m; ++r) {
    const LinearConstraint& row = r < p ? eq[r] : le[r - p];
    if (row.b < 0) flip[r] = -1;
    for (int j = 0; j < n; ++j) t.at(r, j) = flip[r] * row.a[j];
    t.rhs(r) = flip[r] * row.b;
    bool slack_is_unit = r >= p && flip[r] == 1;
    if (r >= p && !slack_is_unit) t.at(r, n + (r - p)) = -1;  // surplus of a flipped row
    t.at(r, n + q + r) = 1;
    if (!slack_is_unit) artificial[n + q + r] = 1;
    t.basis[r] = n + q + r;
  }
  // Plain rows leave their surplus column empty.
  std::vector<char> barred(cols, 0);
  for (int r = p; r < m; ++r)
    if (flip[r] == 1) barred[n + (r - p)] = 1;

  LPSolution sol;
  std::vector<Rat> phase1(cols, Rat(0));
  bool any_artificial = false;
  for (int j = 0; j < cols; ++j)
    if (artificial[j]) {
      phase1[j] = -1;
      any_artificial = true;
    }
  if (any_artificial) {
    t.set_objective(phase1);
    t.optimize(barred);
    if (t.z(cols) < 0) {
      sol.status = LPStatus::infeasible;
      return sol;
    }
    // drive zero-level artificials out of the basis where possible
    for (int r = 0; r < m; ++r) {
      if (!artificial[t.basis[r]]) continue;
      for (int j = 0; j < n + q; ++j)
        if (!barred[j] && t.at(r, j) != 0) {
          t.pivot(r, j);
          break;
        }
    }
    for (int j = 0; j < cols; ++j)
      if (artificial[j]) barred[j] = 1;
  }
  std::vector<Rat> cost(cols, Rat(0));
  for (int j = 0; j < n; ++j) cost[j] = c[j];
  t.set_objective(cost);
  if (!t.optimize(barred)) {
    sol.status = LPStatus::unbounded;
    return sol;
  }
  sol.status = LPStatus::optimal;
  sol.primal.assign(n, Rat(0));
  for (int r = 0; r < m; ++r)
    if (t.basis[r] < n) sol.primal[t.basis[r]] = t.rhs(r);
  sol.value = t.z(cols);
  sol.dual.resize(m);
  for (int r = 0; r < m; ++r) sol.dual[r] = flip[r] * t.z(n + q + r);
  return sol;
}

bool verify_lp(const std::vector<Rat>& c, const std::vector<LinearConstraint>& eq,
               const std::vector<LinearConstraint>& le, const LPSolution& s, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (s.status != LPStatus::optimal) return fail("status is " + to_string(s.status));
  size_t n = c.size();
  if (s.primal.size() != n || s.dual.size() != eq.size() + le.size()) return fail("certificate sizes");
  for (const Rat& x : s.primal)
    if (x < 0) return fail("negative primal entry");
  auto dot = [&](const std::vector<Rat>& a) {
    Rat v = 0;
    for (size_t j = 0; j < n; ++j) v += a[j] * s.primal[j];
    return v;
  };
  for (const auto& row : eq)
    if (dot(row.a) != row.b) return fail("equality row violated");
  for (const auto& row : le)
    if (dot(row.a) > row.b) return fail("inequality row violated");
  for (size_t i = 0; i < le.size(); ++i)
    if (s.dual[eq.size() + i] < 0) return fail("negative dual on an inequality row");
  Rat dual_value = 0;
  for (size_t j = 0; j < n; ++j) {
    Rat col = 0;
    for (size_t i = 0; i < eq.size(); ++i) col += s.dual[i] * eq[i].a[j];
    for (size_t i = 0; i < le.size(); ++i) col += s.dual[eq.size() + i] * le[i].a[j];
    if (col < c[j]) return fail("dual constraint violated at variable " + std::to_string(j));
  }
  for (size_t i = 0; i < eq.size(); ++i) dual_value += s.dual[i] * eq[i].b;
  for (size_t i = 0; i < le.size(); ++i) dual_value += s.dual[eq.size() + i] * le[i].b;
  Rat primal_value = dot(c);
  if (primal_value != s.value) return fail("reported value differs from c.x");
  if (dual_value != primal_value) return fail("duality gap " + to_string(Rat(primal_value - dual_value)));
  return true;
}

MaxMinResult max_min_cover(int n, std::vector<std::vector<int>> seeds, const SetOracle& oracle) {
  if (n <= 0) throw PreconditionError("max_min_cover: no items");
  MaxMinResult res;
  std::set<std::vector<int>> have;
  for (auto& s : seeds) {
    std::sort(s.begin(), s.end());
    if (have.insert(s).second) res.sets.push_back(s);
  }
  std::vector<Rat> c(n + 1, Rat(0));
  c[n] = 1;
  LinearConstraint total{std::vector<Rat>(n + 1, Rat(1)), Rat(1)};
  total.a[n] = 0;
  std::vector<LinearConstraint> le;
  auto row_for = [n](const std::vector<int>& s) {
    LinearConstraint row{std::vector<Rat>(n + 1, Rat(0)), Rat(0)};
    row.a[n] = 1;
    for (int j : s) row.a[j] -= 1;
    return row;
  };
  for (const auto& s : res.sets) le.push_back(row_for(s));
  for (;;) {
    ++res.rounds;
    LPSolution sol = lp_max(c, {total}, le);
    if (sol.status != LPStatus::optimal) throw Error("max_min_cover: LP is " + to_string(sol.status));
    std::vector<Rat> x(sol.primal.begin(), sol.primal.begin() + n);
    auto [set, val] = oracle(x);
    if (val < sol.value) {
      std::sort(set.begin(), set.end());
      if (!have.insert(set).second) throw Error("max_min_cover: oracle repeated a constraint");
      res.sets.push_back(set);
      le.push_back(row_for(set));
      continue;
    }
    res.value = sol.value;
    res.weights = x;
    res.dual.assign(sol.dual.begin() + 1, sol.dual.end());
    return res;
  }
}

}  // namespace regma
