#include "cacsa/term.hpp"

#include <functional>
#include <sstream>

namespace cacsa {

namespace {

Term make(TermNode n) { return Term(std::make_shared<const TermNode>(std::move(n))); }

Term rebuild_binder(const Term& t, Term left, Term right) {
  if (left.get() == t->left.get() && right.get() == t->right.get()) return t;
  TermNode n = *t;
  n.left = std::move(left);
  n.right = std::move(right);
  return make(std::move(n));
}

// Generic bottom-up map with binder depth. `leaf` may return an invalid term
// to keep the node unchanged.
Term map_term(const Term& t, std::uint32_t depth,
              const std::function<Term(const Term&, std::uint32_t)>& leaf) {
  switch (t.kind()) {
    case TermKind::Sort:
    case TermKind::BVar:
    case TermKind::FVar:
    case TermKind::Const:
    case TermKind::Symb: {
      Term r = leaf(t, depth);
      return r.valid() ? r : t;
    }
    case TermKind::Abs:
    case TermKind::Prod:
      return rebuild_binder(t, map_term(t->left, depth, leaf), map_term(t->right, depth + 1, leaf));
    case TermKind::App:
      return rebuild_binder(t, map_term(t->left, depth, leaf), map_term(t->right, depth, leaf));
  }
  return t;
}

bool eq_impl(const Term& a, const Term& b, bool sizes) {
  if (a.get() == b.get()) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case TermKind::Sort:
      return a->sort == b->sort;
    case TermKind::BVar:
      return a->index == b->index;
    case TermKind::FVar:
    case TermKind::Symb:
      return a->name == b->name;
    case TermKind::Const:
      return a->name == b->name && (!sizes || a->size == b->size);
    case TermKind::Abs:
    case TermKind::Prod:
    case TermKind::App:
      return eq_impl(a->left, b->left, sizes) && eq_impl(a->right, b->right, sizes);
  }
  return false;
}

}  // namespace

Term mk_sort(Sort s) {
  TermNode n;
  n.kind = TermKind::Sort;
  n.sort = s;
  return make(std::move(n));
}

Term mk_star() {
  static const Term t = mk_sort(Sort::Star);
  return t;
}

Term mk_box() {
  static const Term t = mk_sort(Sort::Box);
  return t;
}

Term mk_bvar(std::uint32_t i) {
  TermNode n;
  n.kind = TermKind::BVar;
  n.index = i;
  return make(std::move(n));
}

Term mk_fvar(const std::string& name) {
  TermNode n;
  n.kind = TermKind::FVar;
  n.name = name;
  return make(std::move(n));
}

Term mk_const(const std::string& name, SizeExpr size) {
  TermNode n;
  n.kind = TermKind::Const;
  n.name = name;
  n.size = std::move(size);
  return make(std::move(n));
}

Term mk_symb(const std::string& name) {
  TermNode n;
  n.kind = TermKind::Symb;
  n.name = name;
  return make(std::move(n));
}

Term mk_abs(const std::string& hint, Term domain, Term body) {
  TermNode n;
  n.kind = TermKind::Abs;
  n.name = hint;
  n.left = std::move(domain);
  n.right = std::move(body);
  return make(std::move(n));
}

Term mk_prod(const std::string& hint, Term domain, Term body) {
  TermNode n;
  n.kind = TermKind::Prod;
  n.name = hint;
  n.left = std::move(domain);
  n.right = std::move(body);
  return make(std::move(n));
}

Term mk_arrow(Term domain, Term codomain) { return mk_prod("_", std::move(domain), shift(codomain, 1)); }

Term mk_app(Term fn, Term arg) {
  TermNode n;
  n.kind = TermKind::App;
  n.left = std::move(fn);
  n.right = std::move(arg);
  return make(std::move(n));
}

Term mk_apps(Term head, const std::vector<Term>& args) {
  for (const Term& a : args) head = mk_app(std::move(head), a);
  return head;
}

Term mk_abs_named(const std::string& name, Term domain, const Term& body) {
  return mk_abs(name, std::move(domain), abstract(body, name));
}

Term mk_prod_named(const std::string& name, Term domain, const Term& body) {
  return mk_prod(name, std::move(domain), abstract(body, name));
}

bool alpha_eq(const Term& a, const Term& b) { return eq_impl(a, b, true); }
bool alpha_eq_erased(const Term& a, const Term& b) { return eq_impl(a, b, false); }

std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> out;
  std::function<void(const Term&)> go = [&](const Term& u) {
    switch (u.kind()) {
      case TermKind::FVar:
        out.insert(u->name);
        break;
      case TermKind::Abs:
      case TermKind::Prod:
      case TermKind::App:
        go(u->left);
        go(u->right);
        break;
      default:
        break;
    }
  };
  go(t);
  return out;
}

std::set<SizeVar> size_vars(const Term& t) {
  std::set<SizeVar> out;
  std::function<void(const Term&)> go = [&](const Term& u) {
    switch (u.kind()) {
      case TermKind::Const:
        if (!u->size.is_infinite()) out.insert(u->size.base());
        break;
      case TermKind::Abs:
      case TermKind::Prod:
      case TermKind::App:
        go(u->left);
        go(u->right);
        break;
      default:
        break;
    }
  };
  go(t);
  return out;
}

bool is_infinity_term(const Term& t) { return size_vars(t).empty(); }

Term erase_sizes(const Term& t) {
  return map_term(t, 0, [](const Term& u, std::uint32_t) {
    if (u.kind() == TermKind::Const && !u->size.is_infinite()) return mk_const(u->name);
    return Term();
  });
}

Term subst_term(const TermSubst& sigma, const Term& t) {
  if (sigma.empty()) return t;
  return map_term(t, 0, [&](const Term& u, std::uint32_t depth) {
    if (u.kind() != TermKind::FVar) return Term();
    auto it = sigma.find(u->name);
    if (it == sigma.end()) return Term();
    return depth ? shift(it->second, depth) : it->second;
  });
}

Term subst_size(const SizeSubst& phi, const Term& t) {
  if (phi.empty()) return t;
  return map_term(t, 0, [&](const Term& u, std::uint32_t) {
    if (u.kind() != TermKind::Const) return Term();
    SizeExpr e = apply(phi, u->size);
    if (e == u->size) return Term();
    return mk_const(u->name, e);
  });
}

Term shift(const Term& t, std::int64_t d, std::uint32_t cutoff) {
  if (d == 0) return t;
  return map_term(t, 0, [&](const Term& u, std::uint32_t depth) {
    if (u.kind() != TermKind::BVar || u->index < cutoff + depth) return Term();
    return mk_bvar(std::uint32_t(std::int64_t(u->index) + d));
  });
}

Term instantiate(const Term& body, const Term& u) {
  return map_term(body, 0, [&](const Term& v, std::uint32_t depth) {
    if (v.kind() != TermKind::BVar || v->index < depth) return Term();
    if (v->index == depth) return shift(u, depth);
    return mk_bvar(v->index - 1);
  });
}

Term abstract(const Term& t, const std::string& name) {
  return map_term(t, 0, [&](const Term& v, std::uint32_t depth) {
    if (v.kind() == TermKind::FVar && v->name == name) return mk_bvar(depth);
    if (v.kind() == TermKind::BVar && v->index >= depth) return mk_bvar(v->index + 1);
    return Term();
  });
}

bool has_loose_bvar(const Term& t, std::uint32_t index) {
  switch (t.kind()) {
    case TermKind::BVar:
      return t->index == index;
    case TermKind::Abs:
    case TermKind::Prod:
      return has_loose_bvar(t->left, index) || has_loose_bvar(t->right, index + 1);
    case TermKind::App:
      return has_loose_bvar(t->left, index) || has_loose_bvar(t->right, index);
    default:
      return false;
  }
}

bool is_locally_closed(const Term& t) {
  std::function<bool(const Term&, std::uint32_t)> go = [&](const Term& u, std::uint32_t depth) {
    switch (u.kind()) {
      case TermKind::BVar:
        return u->index < depth;
      case TermKind::Abs:
      case TermKind::Prod:
        return go(u->left, depth) && go(u->right, depth + 1);
      case TermKind::App:
        return go(u->left, depth) && go(u->right, depth);
      default:
        return true;
    }
  };
  return go(t, 0);
}

std::pair<Term, std::vector<Term>> spine(const Term& t) {
  std::vector<Term> args;
  Term h = t;
  while (h.kind() == TermKind::App) {
    args.push_back(h->right);
    h = h->left;
  }
  return {h, std::vector<Term>(args.rbegin(), args.rend())};
}

std::size_t product_arity(const Term& t) {
  std::size_t n = 0;
  for (Term u = t; u.kind() == TermKind::Prod; u = u->right) ++n;
  return n;
}

const Term* Env::lookup(const std::string& name) const {
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it)
    if (it->first == name) return &it->second;
  return nullptr;
}

Env Env::extended(const std::string& name, Term type) const {
  Env e = *this;
  e.push(name, std::move(type));
  return e;
}

Env subst_size(const SizeSubst& phi, const Env& env) {
  Env out;
  for (const auto& [x, ty] : env.entries()) out.push(x, subst_size(phi, ty));
  return out;
}

std::set<SizeVar> size_vars(const Env& env) {
  std::set<SizeVar> out;
  for (const auto& e : env.entries()) {
    auto vs = size_vars(e.second);
    out.insert(vs.begin(), vs.end());
  }
  return out;
}

const char* to_string(Sort s) { return s == Sort::Star ? "Type" : "Kind"; }

namespace {

void collect_names(const Term& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case TermKind::FVar:
    case TermKind::Const:
    case TermKind::Symb:
      out.insert(t->name);
      break;
    case TermKind::Abs:
    case TermKind::Prod:
    case TermKind::App:
      collect_names(t->left, out);
      collect_names(t->right, out);
      break;
    default:
      break;
  }
}

std::string base_hint(const std::string& hint) {
  std::string h = hint.substr(0, hint.find('#'));
  if (h.empty() || h == "_") h = "x";
  return h;
}

class Printer {
 public:
  Printer(const Term& t, const std::map<std::string, std::string>* fvar_text) : fvar_text_(fvar_text) {
    collect_names(t, taken_);
  }

  // level 0: binders and arrows, 1: application, 2: atoms
  void print(std::ostream& os, const Term& t, int level) {
    switch (t.kind()) {
      case TermKind::Sort:
        os << to_string(t->sort);
        return;
      case TermKind::BVar:
        if (t->index < scope_.size())
          os << scope_[scope_.size() - 1 - t->index];
        else
          os << "#" << (t->index - scope_.size());
        return;
      case TermKind::FVar:
        if (fvar_text_) {
          auto it = fvar_text_->find(t->name);
          if (it != fvar_text_->end()) {
            os << it->second;
            return;
          }
        }
        os << t->name;
        return;
      case TermKind::Symb:
        os << t->name;
        return;
      case TermKind::Const:
        os << t->name;
        if (!t->size.is_infinite()) {
          if (t->size.shift() == 0)
            os << '^' << t->size;
          else
            os << "^(" << t->size << ')';
        }
        return;
      case TermKind::App: {
        if (level > 1) os << '(';
        print(os, t->left, 1);
        os << ' ';
        print(os, t->right, 2);
        if (level > 1) os << ')';
        return;
      }
      case TermKind::Abs:
      case TermKind::Prod: {
        if (level > 0) os << '(';
        bool arrow = t.kind() == TermKind::Prod && !has_loose_bvar(t->right);
        if (arrow) {
          print(os, t->left, 1);
          os << " -> ";
          scope_.push_back("_");
          print(os, t->right, 0);
          scope_.pop_back();
        } else {
          std::string name = pick(t->name);
          os << (t.kind() == TermKind::Abs ? '[' : '(') << name << " : ";
          print(os, t->left, 0);
          os << (t.kind() == TermKind::Abs ? "] " : ") ");
          scope_.push_back(name);
          print(os, t->right, 0);
          scope_.pop_back();
        }
        if (level > 0) os << ')';
        return;
      }
    }
  }

 private:
  std::string pick(const std::string& hint) {
    std::string base = base_hint(hint);
    std::string name = base;
    for (int i = 0; clashes(name); ++i) name = base + std::to_string(i);
    return name;
  }
  bool clashes(const std::string& name) const {
    if (taken_.count(name)) return true;
    for (const auto& s : scope_)
      if (s == name) return true;
    return name == "Type" || name == "Kind" || name == "oo" || name == "s" || name == "in" ||
           name == "data" || name == "symbol" || name == "rule" || name == "assume" ||
           name == "infer" || name == "check" || name == "annotate";
  }

  const std::map<std::string, std::string>* fvar_text_;
  std::set<std::string> taken_;
  std::vector<std::string> scope_;
};

}  // namespace

std::string to_string(const Term& t) {
  std::ostringstream os;
  Printer(t, nullptr).print(os, t, 0);
  return os.str();
}

std::string to_string(const Term& t, const std::map<std::string, std::string>& fvar_text) {
  std::ostringstream os;
  Printer(t, &fvar_text).print(os, t, 0);
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Term& t) { return os << to_string(t); }

}  // namespace cacsa
