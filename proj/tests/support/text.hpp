#pragma once

#include <sstream>
#include <stdexcept>
#include <string>

#include "cacsa/constraint.hpp"
#include "cacsa/size.hpp"
#include "cacsa/syntax.hpp"

namespace cacsa::testing {

/// "oo", "a", "s s a".
inline SizeExpr sz(const std::string& text) {
  std::istringstream in(text);
  std::string word;
  std::uint32_t succs = 0;
  while (in >> word) {
    if (word == "s") {
      ++succs;
      continue;
    }
    std::string rest;
    if (in >> rest) throw std::invalid_argument("trailing text in size: " + text);
    return normalize(word == "oo" ? SizeSyntax::infinity(succs) : SizeSyntax::var(word, succs));
  }
  throw std::invalid_argument("empty size");
}

/// Atoms separated by ';', each "x = y" or "x <= y"; "false" is bottom.
inline ConstraintProblem problem(const std::string& text) {
  ConstraintProblem c;
  std::stringstream ss(text);
  std::string atom;
  while (std::getline(ss, atom, ';')) {
    if (atom.find_first_not_of(' ') == std::string::npos) continue;
    if (atom.find("false") != std::string::npos) {
      c.set_bottom();
      continue;
    }
    if (auto p = atom.find("<="); p != std::string::npos) {
      c.add_leq(sz(atom.substr(0, p)), sz(atom.substr(p + 2)));
    } else if (auto q = atom.find('='); q != std::string::npos) {
      c.add_equal(sz(atom.substr(0, q)), sz(atom.substr(q + 1)));
    } else {
      throw std::invalid_argument("bad atom: " + atom);
    }
  }
  return c;
}

/// "a := s b, c := oo".
inline SizeSubst subst(const std::string& text) {
  SizeSubst phi;
  std::stringstream ss(text);
  std::string binding;
  while (std::getline(ss, binding, ',')) {
    auto p = binding.find(":=");
    if (p == std::string::npos) continue;
    std::string v = binding.substr(0, p);
    v.erase(0, v.find_first_not_of(' '));
    v.erase(v.find_last_not_of(' ') + 1);
    phi.bind(SizeVar(v), sz(binding.substr(p + 2)));
  }
  return phi;
}

/// Parsed signature for the natural-number examples.
inline const char* kNatSource = R"(
data nat : Type .
data bool : Type .
data list : Type -> nat -> Type .
symbol 0 : nat^(s a) .
symbol s : nat^a -> nat^(s a) .
symbol true : bool .
symbol false : bool .
symbol minus : nat^a -> nat^b -> nat^a .
rule minus 0 x --> 0 .
rule minus x 0 --> x .
rule minus (s x) (s y) --> minus x y .
)";

inline SourceFile nat_file() { return parse_source(kNatSource, "nat"); }

}  // namespace cacsa::testing
