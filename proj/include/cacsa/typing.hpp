#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cacsa/constraint.hpp"
#include "cacsa/rewrite.hpp"
#include "cacsa/signature.hpp"
#include "cacsa/solver.hpp"

namespace cacsa {

enum class ErrorKind {
  NotAProduct,
  UnsatConstraints,
  UnboundVariable,
  IllSortedBinder,
  BoxHasNoType,
  FuelExhausted,
  SortMismatch,
  InvalidRule,
  InvalidDeclaration,
};

const char* to_string(ErrorKind k);

class TypeError : public std::runtime_error {
 public:
  TypeError(ErrorKind kind, const std::string& message, std::optional<ConstraintProblem> residue = std::nullopt)
      : std::runtime_error(message), kind_(kind), residue_(std::move(residue)) {}

  ErrorKind kind() const { return kind_; }
  const SourceSpan& span() const { return span_; }
  void set_span(const SourceSpan& s) { span_ = s; }
  const std::optional<ConstraintProblem>& residue() const { return residue_; }

 private:
  ErrorKind kind_;
  SourceSpan span_;
  std::optional<ConstraintProblem> residue_;
};

struct TypingOptions {
  std::uint64_t fuel = kDefaultFuel;
  /// Receives one line per inference rule application, innermost first.
  std::function<void(const std::string&)> trace;
};

/// Mutable state of one inference run: the used size variables and the
/// counter for opened binders.
class InferSession {
 public:
  explicit InferSession(TypingOptions options = {}) : options_(std::move(options)) {}

  const TypingOptions& options() const { return options_; }
  FreshSizeVars& sizes() { return sizes_; }
  void reserve(const std::set<SizeVar>& vs) { sizes_.reserve(vs); }
  std::string fresh_term_var(const std::string& hint);

  /// Normalization with the session's fuel, reported as a TypeError.
  Term normal_form(const Signature& sig, const Term& t) const;

 private:
  TypingOptions options_;
  FreshSizeVars sizes_;
  std::uint64_t term_counter_ = 0;
};

/// Type inference for terms without size annotations. Size variables of symbol types are renamed
/// apart at each occurrence; application solves its constraint on the spot.
Term infer(const Signature& sig, const Env& env, const Term& t, InferSession& session);
Term infer(const Signature& sig, const Env& env, const Term& t, const TypingOptions& options = {});

struct CheckResult {
  Term inferred;        // the type computed for the term
  SizeSubst solution;   // most general solution of inferred <= expected
  SizeSubst on_expected;  // its restriction to the variables of the expected type
  ConstraintProblem problem;  // inferred <= expected after normalization
};

/// Decides whether `t` has type `expected` for some instance of its size
/// variables. Throws TypeError (UnsatConstraints with the residue) otherwise.
CheckResult check(const Signature& sig, const Env& env, const Term& t, const Term& expected,
                  const TypingOptions& options = {});

/// Infers the sort of every symbol type with annotations erased and stores
/// it in the signature. Returns one error per offending symbol.
std::vector<TypeError> validate_signature(Signature& sig, const TypingOptions& options = {});
/// Checks a single declaration against the symbols declared before it.
std::optional<TypeError> validate_symbol(Signature& sig, const std::string& name, const TypingOptions& options = {});
std::vector<TypeError> validate_rules(const Signature& sig, const TypingOptions& options = {});
std::optional<TypeError> validate_rule(const Signature& sig, const RewriteRule& rule, const TypingOptions& options = {});
/// Each declared type, with annotations erased, must have a sort.
void validate_env(const Signature& sig, const Env& env, const TypingOptions& options = {});

/// Inference that collects the constraints of every application into `acc`
/// instead of solving them, so that size variables of an annotated
/// environment stay connected to the result.
struct DeferredPolicy {
  const TermNode* unrenamed = nullptr;    // symbol occurrence typed with its declared type
  std::string rigid_symbol;               // occurrences of this symbol keep `rigid`
  std::optional<SizeVar> rigid;
};
Term infer_with_constraints(const Signature& sig, const Env& env, const Term& t, InferSession& session,
                            ConstraintProblem& acc, const DeferredPolicy& policy = {});

struct RuleAnnotationResult {
  Term lhs_type;
  Term rhs_type;
  ConstraintProblem problem;
  std::optional<SizeSubst> solution;
  /// Variables of the head's declared type mapped to `oo` by the solution.
  std::vector<SizeVar> forced_infinite;
};

/// Heuristic check of a rule's annotations: types both sides under the
/// rule's annotated context and solves rhs type <= lhs type. The head's
/// declared type is used as is; `output` stays shared by recursive calls
/// when it is absent from the head's argument types. Context size variables
/// that also occur in the head's type denote the same sizes; the others are
/// renamed apart per rule.
RuleAnnotationResult check_rule_annotations(const Signature& sig, const RewriteRule& rule, const Env& context,
                                            const std::optional<SizeVar>& output, InferSession& session);

/// Output annotation variable of a symbol (the annotation on the head of its
/// final codomain), when that is a plain variable.
std::optional<SizeVar> output_size_var(const SymbolSig& sig);

struct AnnotationReport {
  std::string symbol;
  std::optional<SizeVar> output;
  std::vector<RuleAnnotationResult> rules;
  ConstraintProblem combined;
  std::optional<SizeSubst> solution;
  /// e.g. "X = a"; empty when unsatisfiable or no relation was found.
  std::string relation;
};

/// Runs check_rule_annotations over all rules of `symbol` and solves their
/// conjunction.
AnnotationReport annotate_symbol(const Signature& sig, const std::string& symbol, const TypingOptions& options = {});

}  // namespace cacsa
