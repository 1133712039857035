#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "cacsa/signature.hpp"

namespace cacsa {

class ParseError : public std::runtime_error {
 public:
  ParseError(SourceSpan span, const std::string& message) : std::runtime_error(message), span_(std::move(span)) {}
  const SourceSpan& span() const { return span_; }

 private:
  SourceSpan span_;
};

enum class DeclKind { Data, Symbol, Rule, Assume, Infer, Check, Annotate };

struct Decl {
  DeclKind kind;
  SourceSpan span;
  std::string name;   // Data, Symbol, Assume, Annotate
  Term type;          // Data, Symbol, Assume; expected type for Check
  Term term;          // Infer, Check
  std::size_t rule_index = 0;  // Rule: index into the signature's rules
};

/// A parsed file. The signature is built while parsing, since identifiers
/// resolve against the declarations above them.
struct SourceFile {
  std::string name;
  std::vector<Decl> decls;
  Signature sig;
  Env assumptions;
};

/// Grammar, one declaration per `.`:
///   data C : K .          symbol f : T .        assume x : T .
///   rule L --> R [in x : T, ...] .
///   infer t .             check t : T .         annotate f .
/// Terms: Type, Kind, (x : T) U, T -> U, [x : T] u, application by
/// juxtaposition, C^a for data C. Sizes: oo, a variable, or (s ... a).
/// In patterns, `_` is a wildcard and `{t}` an inaccessible term.
/// `--` starts a comment.
SourceFile parse_source(const std::string& text, const std::string& filename = "<input>");

/// Parses a single term against an existing signature; identifiers that are
/// not symbols become free variables.
Term parse_term(const std::string& text, const Signature& sig);

/// Renders a declaration so that parse_source reads it back.
std::string print_decl(const SourceFile& file, const Decl& d);
std::string print_rule(const RewriteRule& rule);
std::string print_source(const SourceFile& file);

}  // namespace cacsa
