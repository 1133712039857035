#include "cacsa/typing.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace cacsa {

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotAProduct: return "NotAProduct";
    case ErrorKind::UnsatConstraints: return "UnsatConstraints";
    case ErrorKind::UnboundVariable: return "UnboundVariable";
    case ErrorKind::IllSortedBinder: return "IllSortedBinder";
    case ErrorKind::BoxHasNoType: return "BoxHasNoType";
    case ErrorKind::FuelExhausted: return "FuelExhausted";
    case ErrorKind::SortMismatch: return "SortMismatch";
    case ErrorKind::InvalidRule: return "InvalidRule";
    case ErrorKind::InvalidDeclaration: return "InvalidDeclaration";
  }
  return "Error";
}

std::string InferSession::fresh_term_var(const std::string& hint) {
  std::string base = hint.substr(0, hint.find('#'));
  if (base.empty() || base == "_") base = "x";
  return base + "#" + std::to_string(++term_counter_);
}

Term InferSession::normal_form(const Signature& sig, const Term& t) const {
  try {
    return normalize_term(sig, t, options_.fuel);
  } catch (const FuelExhausted& e) {
    throw TypeError(ErrorKind::FuelExhausted, std::string(e.what()) + " while normalizing " + to_string(t));
  }
}

namespace {

Term rename_sizes(const Term& t, FreshSizeVars& fresh, const std::optional<SizeVar>& keep = std::nullopt) {
  SizeSubst rho;
  for (const auto& v : size_vars(t))
    if (!keep || v != *keep) rho.bind(v, SizeExpr::var(fresh.fresh()));
  return subst_size(rho, t);
}

class Inferrer {
 public:
  Inferrer(const Signature& sig, InferSession& s, ConstraintProblem* acc, const DeferredPolicy* policy)
      : sig_(sig), s_(s), acc_(acc), policy_(policy) {}

  Term go(const Env& env, const Term& t, int depth) {
    switch (t.kind()) {
      case TermKind::Sort:
        if (t->sort == Sort::Box) throw TypeError(ErrorKind::BoxHasNoType, "Kind has no type");
        return done(depth, "ax", t, mk_box());
      case TermKind::BVar:
        throw TypeError(ErrorKind::UnboundVariable, "loose bound variable in " + to_string(t));
      case TermKind::FVar: {
        const Term* ty = env.lookup(t->name);
        if (!ty) throw TypeError(ErrorKind::UnboundVariable, "unbound variable '" + t->name + "'");
        return done(depth, "var", t, *ty);
      }
      case TermKind::Const: {
        const SymbolSig* sym = sig_.find(t->name);
        if (!sym || !sym->is_const_pred)
          throw TypeError(ErrorKind::UnboundVariable, "undeclared type constant '" + t->name + "'");
        return done(depth, "size", t, sym->type);
      }
      case TermKind::Symb: {
        const SymbolSig* sym = sig_.find(t->name);
        if (!sym) throw TypeError(ErrorKind::UnboundVariable, "undeclared symbol '" + t->name + "'");
        Term ty;
        if (policy_ && policy_->unrenamed == t.get())
          ty = sym->type;
        else if (policy_ && policy_->rigid && policy_->rigid_symbol == t->name)
          ty = rename_sizes(sym->type, s_.sizes(), policy_->rigid);
        else
          ty = rename_sizes(sym->type, s_.sizes());
        return done(depth, "symb", t, ty);
      }
      case TermKind::Prod: {
        binder_sort(env, t->left, depth);
        std::string x = s_.fresh_term_var(t->name);
        Env inner = env.extended(x, t->left);
        Term body_ty = s_.normal_form(sig_, go(inner, instantiate(t->right, mk_fvar(x)), depth + 1));
        if (body_ty.kind() != TermKind::Sort)
          throw TypeError(ErrorKind::SortMismatch,
                          "body of product " + to_string(t) + " has type " + to_string(body_ty) + ", not a sort");
        return done(depth, "prod", t, body_ty);
      }
      case TermKind::Abs: {
        binder_sort(env, t->left, depth);
        std::string x = s_.fresh_term_var(t->name);
        Env inner = env.extended(x, t->left);
        Term body_ty = go(inner, instantiate(t->right, mk_fvar(x)), depth + 1);
        Term nf = s_.normal_form(sig_, body_ty);
        if (nf.kind() == TermKind::Sort && nf->sort == Sort::Box)
          throw TypeError(ErrorKind::SortMismatch, "body of abstraction " + to_string(t) + " has type Kind");
        return done(depth, "abs", t, mk_prod(t->name, t->left, abstract(body_ty, x)));
      }
      case TermKind::App: {
        Term fn_ty = go(env, t->left, depth + 1);
        s_.reserve(size_vars(fn_ty));
        Term arg_ty = go(env, t->right, depth + 1);
        Term fn_nf = s_.normal_form(sig_, fn_ty);
        if (fn_nf.kind() != TermKind::Prod)
          throw TypeError(ErrorKind::NotAProduct, "'" + to_string(t->left) + "' has type " + to_string(fn_nf) +
                                                      ", which is not a product");
        ConstraintProblem c = gen_sub(s_.normal_form(sig_, arg_ty), fn_nf->left);
        if (acc_) {
          if (c.is_bottom())
            throw TypeError(ErrorKind::UnsatConstraints,
                            "argument '" + to_string(t->right) + "' of type " + to_string(arg_ty) +
                                " does not fit " + to_string(fn_nf->left),
                            c);
          acc_->add(c);
          return done(depth, "app", t, instantiate(fn_nf->right, t->right));
        }
        auto phi = solve(c, s_.sizes());
        if (!phi)
          throw TypeError(ErrorKind::UnsatConstraints,
                          "argument '" + to_string(t->right) + "' of type " + to_string(arg_ty) +
                              " does not fit " + to_string(fn_nf->left),
                          c);
        Term v = rename_sizes(subst_size(*phi, fn_nf->right), s_.sizes());
        return done(depth, "app", t, instantiate(v, t->right));
      }
    }
    throw TypeError(ErrorKind::SortMismatch, "unexpected term");
  }

 private:
  void binder_sort(const Env& env, const Term& dom, int depth) {
    Term k = s_.normal_form(sig_, go(env, dom, depth + 1));
    if (k.kind() != TermKind::Sort)
      throw TypeError(ErrorKind::IllSortedBinder,
                      "binder type " + to_string(dom) + " has type " + to_string(k) + ", not a sort");
  }

  Term done(int depth, const char* rule, const Term& t, Term ty) {
    if (s_.options().trace) {
      std::ostringstream os;
      os << std::string(std::size_t(depth) * 2, ' ') << '(' << rule << ") " << to_string(t) << " : " << to_string(ty);
      s_.options().trace(os.str());
    }
    return ty;
  }

  const Signature& sig_;
  InferSession& s_;
  ConstraintProblem* acc_;
  const DeferredPolicy* policy_;
};

}  // namespace

Term infer(const Signature& sig, const Env& env, const Term& t, InferSession& session) {
  session.reserve(size_vars(env));
  session.reserve(size_vars(t));
  return Inferrer(sig, session, nullptr, nullptr).go(env, t, 0);
}

Term infer(const Signature& sig, const Env& env, const Term& t, const TypingOptions& options) {
  InferSession session(options);
  return infer(sig, env, t, session);
}

Term infer_with_constraints(const Signature& sig, const Env& env, const Term& t, InferSession& session,
                            ConstraintProblem& acc, const DeferredPolicy& policy) {
  session.reserve(size_vars(env));
  session.reserve(size_vars(t));
  return Inferrer(sig, session, &acc, &policy).go(env, t, 0);
}

namespace {

void expect_sorted(const Signature& sig, const Env& env, const Term& ty, InferSession& session,
                   const std::string& what) {
  Term k = session.normal_form(sig, infer(sig, env, erase_sizes(ty), session));
  if (k.kind() != TermKind::Sort)
    throw TypeError(ErrorKind::SortMismatch, what + " " + to_string(ty) + " has type " + to_string(k) + ", not a sort");
}

Env erased(const Env& env) {
  Env out;
  for (const auto& [x, ty] : env.entries()) out.push(x, erase_sizes(ty));
  return out;
}

}  // namespace

CheckResult check(const Signature& sig, const Env& env, const Term& t, const Term& expected,
                  const TypingOptions& options) {
  {
    InferSession sorting(options);
    expect_sorted(sig, erased(env), expected, sorting, "expected type");
  }
  InferSession session(options);
  std::set<SizeVar> target_vars = size_vars(expected);
  session.reserve(target_vars);
  CheckResult r;
  r.inferred = infer(sig, env, t, session);
  ConstraintProblem c = gen_sub(session.normal_form(sig, r.inferred), session.normal_form(sig, expected));
  auto psi = solve(c, session.sizes());
  if (!psi)
    throw TypeError(ErrorKind::UnsatConstraints,
                    "'" + to_string(t) + "' has type " + to_string(r.inferred) + ", which is not a subtype of any instance of " +
                        to_string(expected),
                    c);
  r.solution = *psi;
  r.problem = c;
  r.on_expected = psi->restricted(target_vars);
  return r;
}

void validate_env(const Signature& sig, const Env& env, const TypingOptions& options) {
  Env prefix;
  InferSession session(options);
  for (const auto& [x, ty] : env.entries()) {
    if (prefix.contains(x)) throw TypeError(ErrorKind::InvalidDeclaration, "variable '" + x + "' declared twice");
    expect_sorted(sig, prefix, ty, session, "type of '" + x + "',");
    prefix.push(x, erase_sizes(ty));
  }
}

std::optional<TypeError> validate_symbol(Signature& sig, const std::string& name, const TypingOptions& options) {
  SymbolSig* sym = sig.find_mutable(name);
  if (!sym) return TypeError(ErrorKind::UnboundVariable, "undeclared symbol '" + name + "'");
  try {
    InferSession session(options);
    Term k = session.normal_form(sig, infer(sig, Env(), erase_sizes(sym->type), session));
    if (k.kind() != TermKind::Sort)
      return TypeError(ErrorKind::InvalidDeclaration,
                       "type of '" + name + "' has type " + to_string(k) + ", not a sort");
    sym->sort = k->sort;
    if (sym->is_const_pred) {
      if (!is_infinity_term(sym->type))
        return TypeError(ErrorKind::InvalidDeclaration, "type of '" + name + "' must not carry size annotations");
      TermClass c = classify(sig, sym->type);
      if (sym->sort != Sort::Box || (c != TermClass::Kind && c != TermClass::Sort))
        return TypeError(ErrorKind::InvalidDeclaration, "type of data '" + name + "' must be a kind");
    }
  } catch (const TypeError& e) {
    return e;
  }
  return std::nullopt;
}

std::vector<TypeError> validate_signature(Signature& sig, const TypingOptions& options) {
  std::vector<TypeError> errs;
  for (const auto& name : sig.symbol_order()) {
    if (auto e = validate_symbol(sig, name, options)) {
      TypeError err = *e;
      if (const SymbolSig* s = sig.find(name)) err.set_span(s->span);
      errs.push_back(err);
    }
  }
  return errs;
}

namespace {

bool algebraic(const Signature& sig, const Term& t) {
  auto [h, args] = spine(t);
  if (h.kind() == TermKind::FVar) return args.empty();
  if (h.kind() != TermKind::Symb && h.kind() != TermKind::Const) return false;
  if (h.kind() == TermKind::Symb && !sig.find(h->name)) return false;
  for (const auto& a : args)
    if (!algebraic(sig, a)) return false;
  return true;
}

std::string join(const std::set<std::string>& names) {
  std::string s;
  for (const auto& n : names) s += (s.empty() ? "'" : ", '") + n + "'";
  return s;
}

}  // namespace

std::optional<TypeError> validate_rule(const Signature& sig, const RewriteRule& rule, const TypingOptions& options) {
  auto fail = [&](const std::string& msg) {
    TypeError e(ErrorKind::InvalidRule, msg);
    e.set_span(rule.span);
    return e;
  };
  auto [h, args] = spine(rule.lhs);
  if (h.kind() == TermKind::Const) return fail("rule is headed by data '" + h->name + "'");
  if (h.kind() != TermKind::Symb) return fail("left-hand side must be a symbol application");
  const SymbolSig* head = sig.find(h->name);
  if (!head) return fail("undeclared head symbol '" + h->name + "'");
  if (head->is_const_pred) return fail("rule is headed by data '" + h->name + "'");
  if (h->name != rule.head) return fail("head mismatch");
  if (!algebraic(sig, rule.lhs)) return fail("left-hand side is not algebraic");
  if (args.size() > head->arity)
    return fail("'" + h->name + "' takes " + std::to_string(head->arity) + " arguments, the pattern has " +
                std::to_string(args.size()));
  std::set<std::string> lhs_vars = free_vars(rule.lhs);
  std::set<std::string> extra;
  for (const auto& x : free_vars(rule.rhs))
    if (!lhs_vars.count(x)) extra.insert(x);
  if (!extra.empty()) return fail("right-hand side uses variables not bound by the pattern: " + join(extra));
  for (const auto& [x, t] : rule.inaccessible) {
    for (const auto& y : free_vars(t))
      if (!lhs_vars.count(y)) extra.insert(y);
  }
  if (!extra.empty()) return fail("inaccessible pattern uses unbound variables: " + join(extra));
  if (!is_infinity_term(rule.lhs) || !is_infinity_term(rule.rhs))
    return fail("rules must not carry size annotations");
  if (rule.context) {
    std::set<std::string> missing;
    for (const auto& x : free_vars(rule.typing_lhs()))
      if (!rule.context->contains(x)) missing.insert(x);
    if (!missing.empty()) return fail("context does not declare " + join(missing));
    try {
      validate_env(sig, *rule.context, options);
    } catch (TypeError& e) {
      e.set_span(rule.span);
      return e;
    }
  }
  return std::nullopt;
}

std::vector<TypeError> validate_rules(const Signature& sig, const TypingOptions& options) {
  std::vector<TypeError> errs;
  for (const auto& r : sig.rules())
    if (auto e = validate_rule(sig, r, options)) errs.push_back(*e);
  return errs;
}

std::optional<SizeVar> output_size_var(const SymbolSig& sym) {
  Term t = sym.type;
  while (t.kind() == TermKind::Prod) t = t->right;
  Term h = spine(t).first;
  if (h.kind() == TermKind::Const && h->size.is_variable()) return h->size.base();
  return std::nullopt;
}

namespace {

std::set<SizeVar> param_size_vars(const Term& type) {
  std::set<SizeVar> out;
  for (Term t = type; t.kind() == TermKind::Prod; t = t->right) {
    auto vs = size_vars(t->left);
    out.insert(vs.begin(), vs.end());
  }
  return out;
}

// Size variables of the head type, parameters first in order of occurrence.
std::vector<SizeVar> ordered_size_vars(const Term& type) {
  std::vector<SizeVar> out;
  std::function<void(const Term&)> go = [&](const Term& t) {
    switch (t.kind()) {
      case TermKind::Const:
        if (!t->size.is_infinite() && std::find(out.begin(), out.end(), t->size.base()) == out.end())
          out.push_back(t->size.base());
        break;
      case TermKind::Abs:
      case TermKind::Prod:
      case TermKind::App:
        go(t->left);
        go(t->right);
        break;
      default:
        break;
    }
  };
  go(type);
  return out;
}

}  // namespace

RuleAnnotationResult check_rule_annotations(const Signature& sig, const RewriteRule& rule, const Env& context,
                                            const std::optional<SizeVar>& output, InferSession& session) {
  const SymbolSig* head = sig.find(rule.head);
  if (!head) throw TypeError(ErrorKind::UnboundVariable, "undeclared symbol '" + rule.head + "'");
  session.reserve(size_vars(head->type));
  if (output) session.sizes().reserve(*output);
  session.reserve(size_vars(context));

  SizeSubst local;
  const std::set<SizeVar> shared = size_vars(head->type);
  for (const auto& v : size_vars(context))
    if (!shared.count(v)) local.bind(v, SizeExpr::var(session.sizes().fresh()));
  Env ctx = subst_size(local, context);
  validate_env(sig, ctx, session.options());

  RuleAnnotationResult r;
  Term lhs = rule.typing_lhs();
  DeferredPolicy lhs_policy;
  lhs_policy.unrenamed = spine(lhs).first.get();
  r.lhs_type = infer_with_constraints(sig, ctx, lhs, session, r.problem, lhs_policy);

  DeferredPolicy rhs_policy;
  if (output && !param_size_vars(head->type).count(*output)) {
    rhs_policy.rigid_symbol = rule.head;
    rhs_policy.rigid = output;
  }
  r.rhs_type = infer_with_constraints(sig, ctx, rule.rhs, session, r.problem, rhs_policy);

  r.problem.add(gen_sub(session.normal_form(sig, r.rhs_type), session.normal_form(sig, r.lhs_type)));
  r.solution = solve(r.problem, session.sizes());
  if (r.solution)
    for (const auto& v : ordered_size_vars(head->type))
      if (r.solution->image(v).is_infinite()) r.forced_infinite.push_back(v);
  return r;
}

namespace {

std::string describe_relation(const SizeSubst& psi, const SizeVar& x, const std::vector<SizeVar>& params) {
  SizeExpr xv = psi.image(x);
  if (xv.is_infinite()) return x.name() + " = oo";
  for (const auto& v : params)
    if (psi.image(v) == xv) return x.name() + " = " + v.name();
  for (const auto& v : params) {
    SizeExpr pv = psi.image(v);
    if (pv.is_infinite() || pv.base() != xv.base()) continue;
    if (xv.shift() > pv.shift()) return x.name() + " = " + to_string(SizeExpr::var(v, xv.shift() - pv.shift()));
    return v.name() + " = " + to_string(SizeExpr::var(x, pv.shift() - xv.shift()));
  }
  return "";
}

}  // namespace

AnnotationReport annotate_symbol(const Signature& sig, const std::string& symbol, const TypingOptions& options) {
  const SymbolSig* head = sig.find(symbol);
  if (!head) throw TypeError(ErrorKind::UnboundVariable, "undeclared symbol '" + symbol + "'");
  AnnotationReport rep;
  rep.symbol = symbol;
  rep.output = output_size_var(*head);
  InferSession session(options);
  for (const RewriteRule* rule : sig.rules_for(symbol)) {
    if (!rule->context) {
      TypeError e(ErrorKind::InvalidRule, "rule for '" + symbol + "' has no [in ...] context");
      e.set_span(rule->span);
      throw e;
    }
    try {
      rep.rules.push_back(check_rule_annotations(sig, *rule, *rule->context, rep.output, session));
    } catch (TypeError& e) {
      if (e.span().line == 0) e.set_span(rule->span);
      throw;
    }
    rep.combined.add(rep.rules.back().problem);
  }
  rep.solution = solve(rep.combined, session.sizes());
  if (rep.solution && rep.output) {
    std::vector<SizeVar> params;
    for (const auto& v : ordered_size_vars(head->type))
      if (v != *rep.output) params.push_back(v);
    rep.relation = describe_relation(*rep.solution, *rep.output, params);
  }
  return rep;
}

}  // namespace cacsa
