#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cacsa/constraint.hpp"

namespace cacsa {

/// `bottom`, or pending equations | solved equations | inequations.
/// The solved part is kept as a substitution (variables distinct, none
/// occurring in a right-hand side).
struct EqualityState {
  bool bottom = false;
  std::set<Equation> pending;
  SizeSubst solved;
  std::set<Inequation> ineqs;

  static EqualityState from(const ConstraintProblem& c);
  /// The conjunction this state denotes.
  ConstraintProblem as_problem() const;
  friend bool operator==(const EqualityState&, const EqualityState&) = default;
};

struct EqualityStep {
  int rule;  // 1 peel, 2 delete, 3 occurs, 4 infinity clash, 5 eliminate
  EqualityState next;
};

/// Applies one rule to the first pending equation, or nullopt when nothing
/// is pending (or the state is bottom).
std::optional<EqualityStep> equality_step(const EqualityState& st);
EqualityState simplify_equalities(EqualityState st);

/// (pending count, symbol count of pending); bottom is (0, 0).
std::pair<std::size_t, std::size_t> equality_measure(const EqualityState& st);

/// Edge `from -> to` with label p - q for `s^p from <= s^q to`.
struct DependencyEdge {
  SizeVar from, to;
  std::int64_t weight;
  Inequation source;
};

class DependencyGraph {
 public:
  DependencyGraph() = default;
  /// Uses the linear inequations of `ineqs`; others are ignored.
  explicit DependencyGraph(const std::set<Inequation>& ineqs);
  DependencyGraph(std::vector<SizeVar> vertices, std::vector<DependencyEdge> edges);

  const std::vector<SizeVar>& vertices() const { return vertices_; }
  const std::vector<DependencyEdge>& edges() const { return edges_; }

 private:
  std::vector<SizeVar> vertices_;
  std::vector<DependencyEdge> edges_;
};

/// Edge indices (into g.edges()) of a simple cycle of positive cost, in path order.
std::optional<std::vector<std::size_t>> find_increasing_cycle(const DependencyGraph& g);

bool is_linear(const Inequation& e);
bool is_infinity_ineq(const Inequation& e);  // oo <= alpha

struct InequalityStep {
  int rule;  // 1 drop, 2 cycle, 3 propagate
  std::set<Inequation> next;
};

/// One step on an inequality conjunction, trying rule 1, then 3, then 2.
/// Rule 3 also fires on `oo <= s^l alpha` with l > 0 so that normal forms
/// are reduced.
std::optional<InequalityStep> inequality_step(const std::set<Inequation>& c);

struct InequalityMeasure {
  std::size_t symbols = 0;
  std::vector<std::size_t> occurrences;  // per variable, sorted descending
  friend auto operator<=>(const InequalityMeasure&, const InequalityMeasure&) = default;
};
InequalityMeasure inequality_measure(const std::set<Inequation>& c);

struct ReducedForm {
  std::set<SizeVar> infinite;      // the oo <= alpha part
  std::set<Inequation> linear;     // no increasing cycle
  std::set<Inequation> as_set() const;
  friend bool operator==(const ReducedForm&, const ReducedForm&) = default;
};

ReducedForm simplify_inequalities(const std::set<Inequation>& c);

/// Least solution of a reduced linear part: each variable gets s^z of the
/// fresh base of its connected component, z the longest path reaching it.
SizeSubst minimal_linear_solution(const std::set<Inequation>& linear, FreshSizeVars& fresh);
/// The exponent vector z and component index per variable.
struct LinearSolution {
  std::vector<SizeVar> vars;
  std::vector<std::int64_t> z;
  std::vector<std::size_t> component;
};
LinearSolution minimal_linear_vector(const std::set<Inequation>& linear);

struct SolveTrace {
  ConstraintProblem input;
  EqualityState after_equalities;
  std::optional<ReducedForm> reduced;
  std::optional<SizeSubst> mgs;
};

/// The most general solution, or nullopt when unsatisfiable. Fresh bases come
/// from `fresh`, which first reserves the variables of `c`.
std::optional<SizeSubst> solve(const ConstraintProblem& c, FreshSizeVars& fresh);
std::optional<SizeSubst> solve(const ConstraintProblem& c);
SolveTrace solve_traced(const ConstraintProblem& c, FreshSizeVars& fresh);

std::string to_string(const EqualityState& st);
std::string to_string(const ReducedForm& r);

}  // namespace cacsa
