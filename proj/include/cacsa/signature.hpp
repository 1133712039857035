#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cacsa/term.hpp"

namespace cacsa {

/// Position in a source file (1-based; 0 when unknown).
struct SourceSpan {
  std::string file;
  int line = 0;
  int column = 0;
};

struct SymbolSig {
  std::string name;
  Term type;
  Sort sort = Sort::Star;  // filled in by validate_signature
  bool is_const_pred = false;
  std::size_t arity = 0;
  SourceSpan span;
};

/// A rewrite rule `lhs --> rhs`. Pattern variables are free variables of
/// `lhs`. An inaccessible pattern `{t}` is stored as a fresh pattern variable
/// in `lhs` that matches anything; `inaccessible` maps it to `t`, which is
/// only used when typing the left-hand side.
struct RewriteRule {
  std::string head;
  Term lhs;
  Term rhs;
  std::map<std::string, Term> inaccessible;
  std::optional<Env> context;  // the `[in x : T, ...]` clause
  SourceSpan span;

  /// `lhs` with the inaccessible patterns replaced by their terms.
  Term typing_lhs() const { return subst_term(inaccessible, lhs); }
};

class Signature {
 public:
  /// Throws std::invalid_argument on redeclaration.
  void declare(SymbolSig sig);
  void add_rule(RewriteRule rule);

  const SymbolSig* find(const std::string& name) const;
  SymbolSig* find_mutable(const std::string& name);
  bool is_const_pred(const std::string& name) const {
    const SymbolSig* s = find(name);
    return s && s->is_const_pred;
  }
  const std::vector<std::string>& symbol_order() const { return order_; }
  const std::vector<RewriteRule>& rules() const { return rules_; }
  std::vector<const RewriteRule*> rules_for(const std::string& head) const;

 private:
  std::map<std::string, SymbolSig> symbols_;
  std::vector<std::string> order_;
  std::vector<RewriteRule> rules_;
  std::map<std::string, std::vector<std::size_t>> by_head_;
};

enum class TermClass { Object, Predicate, Kind, Sort, Other };

/// Syntactic class of `t`. A variable has sort Kind when its declared type
/// is a kind or `Type`, and sort Type otherwise.
TermClass classify(const Signature& sig, const Env& env, const Term& t);
TermClass classify(const Signature& sig, const Term& t);
const char* to_string(TermClass c);

}  // namespace cacsa
