#include "cacsa/signature.hpp"

#include <stdexcept>

namespace cacsa {

void Signature::declare(SymbolSig sig) {
  if (symbols_.count(sig.name)) throw std::invalid_argument("symbol '" + sig.name + "' is already declared");
  sig.arity = product_arity(sig.type);
  order_.push_back(sig.name);
  std::string name = sig.name;
  symbols_.emplace(std::move(name), std::move(sig));
}

void Signature::add_rule(RewriteRule rule) {
  by_head_[rule.head].push_back(rules_.size());
  rules_.push_back(std::move(rule));
}

const SymbolSig* Signature::find(const std::string& name) const {
  auto it = symbols_.find(name);
  return it == symbols_.end() ? nullptr : &it->second;
}

SymbolSig* Signature::find_mutable(const std::string& name) {
  auto it = symbols_.find(name);
  return it == symbols_.end() ? nullptr : &it->second;
}

std::vector<const RewriteRule*> Signature::rules_for(const std::string& head) const {
  std::vector<const RewriteRule*> out;
  auto it = by_head_.find(head);
  if (it == by_head_.end()) return out;
  for (std::size_t i : it->second) out.push_back(&rules_[i]);
  return out;
}

namespace {

struct Classifier {
  const Signature& sig;
  const Env& env;
  std::vector<bool> bound_box;  // innermost last

  static bool sorts_box(TermClass type_class) { return type_class == TermClass::Kind || type_class == TermClass::Sort; }

  TermClass var_class(bool box) const { return box ? TermClass::Predicate : TermClass::Object; }

  TermClass go(const Term& t) {
    switch (t.kind()) {
      case TermKind::Sort:
        return TermClass::Sort;
      case TermKind::BVar:
        if (t->index >= bound_box.size()) return TermClass::Other;
        return var_class(bound_box[bound_box.size() - 1 - t->index]);
      case TermKind::FVar: {
        const Term* ty = env.lookup(t->name);
        if (!ty) return TermClass::Other;
        Classifier inner{sig, env, {}};
        return var_class(sorts_box(inner.go(*ty)));
      }
      case TermKind::Const:
        return TermClass::Predicate;
      case TermKind::Symb: {
        const SymbolSig* s = sig.find(t->name);
        if (!s) return TermClass::Other;
        return s->sort == Sort::Box ? TermClass::Predicate : TermClass::Object;
      }
      case TermKind::Abs:
      case TermKind::Prod: {
        bool box = sorts_box(go(t->left));
        bound_box.push_back(box);
        TermClass body = go(t->right);
        bound_box.pop_back();
        if (t.kind() == TermKind::Abs)
          return body == TermClass::Object || body == TermClass::Predicate ? body : TermClass::Other;
        if (body == TermClass::Predicate) return TermClass::Predicate;
        if (body == TermClass::Kind) return TermClass::Kind;
        if (t->right.kind() == TermKind::Sort && t->right->sort == Sort::Star) return TermClass::Kind;
        return TermClass::Other;
      }
      case TermKind::App: {
        TermClass fn = go(t->left);
        return fn == TermClass::Object || fn == TermClass::Predicate ? fn : TermClass::Other;
      }
    }
    return TermClass::Other;
  }
};

}  // namespace

TermClass classify(const Signature& sig, const Env& env, const Term& t) {
  Classifier c{sig, env, {}};
  return c.go(t);
}

TermClass classify(const Signature& sig, const Term& t) { return classify(sig, Env(), t); }

const char* to_string(TermClass c) {
  switch (c) {
    case TermClass::Object: return "object";
    case TermClass::Predicate: return "predicate";
    case TermClass::Kind: return "kind";
    case TermClass::Sort: return "sort";
    case TermClass::Other: return "other";
  }
  return "other";
}

}  // namespace cacsa
