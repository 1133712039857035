#include <sstream>

#include "cacsa/syntax.hpp"

namespace cacsa {

std::string print_rule(const RewriteRule& rule) {
  std::map<std::string, std::string> text;
  for (const auto& v : free_vars(rule.lhs)) {
    if (v.rfind("_#", 0) != 0) continue;
    auto it = rule.inaccessible.find(v);
    text[v] = it == rule.inaccessible.end() ? "_" : "{" + to_string(it->second) + "}";
  }
  std::ostringstream os;
  os << "rule " << to_string(rule.lhs, text) << " --> " << to_string(rule.rhs);
  if (rule.context) {
    os << " [in ";
    bool first = true;
    for (const auto& [x, ty] : rule.context->entries()) {
      os << (first ? "" : ", ") << x << " : " << to_string(ty);
      first = false;
    }
    os << "]";
  }
  os << " .";
  return os.str();
}

std::string print_decl(const SourceFile& file, const Decl& d) {
  switch (d.kind) {
    case DeclKind::Data:
      return "data " + d.name + " : " + to_string(d.type) + " .";
    case DeclKind::Symbol:
      return "symbol " + d.name + " : " + to_string(d.type) + " .";
    case DeclKind::Assume:
      return "assume " + d.name + " : " + to_string(d.type) + " .";
    case DeclKind::Rule:
      return print_rule(file.sig.rules().at(d.rule_index));
    case DeclKind::Infer:
      return "infer " + to_string(d.term) + " .";
    case DeclKind::Check:
      return "check " + to_string(d.term) + " : " + to_string(d.type) + " .";
    case DeclKind::Annotate:
      return "annotate " + d.name + " .";
  }
  return "";
}

std::string print_source(const SourceFile& file) {
  std::string out;
  for (const auto& d : file.decls) out += print_decl(file, d) + "\n";
  return out;
}

}  // namespace cacsa
