#include "cacsa/driver.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "cacsa/syntax.hpp"
#include "cacsa/typing.hpp"

namespace cacsa {

namespace {

std::string position(const SourceSpan& s, const std::string& fallback_file) {
  std::ostringstream os;
  os << (s.file.empty() ? fallback_file : s.file) << ':' << s.line << ':' << s.column;
  return os.str();
}

int exit_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::FuelExhausted:
      return kExitFuel;
    case ErrorKind::UnsatConstraints:
    case ErrorKind::NotAProduct:
    case ErrorKind::UnboundVariable:
    case ErrorKind::IllSortedBinder:
    case ErrorKind::BoxHasNoType:
    case ErrorKind::SortMismatch:
      return kExitTypeError;
    case ErrorKind::InvalidRule:
    case ErrorKind::InvalidDeclaration:
      return kExitInvalid;
  }
  return kExitTypeError;
}

void indent_lines(std::ostringstream& os, const std::vector<std::string>& lines) {
  for (const auto& l : lines) os << "  " << l << '\n';
}

class Runner {
 public:
  Runner(const SourceFile& file, const RunFlags& flags) : file_(file), flags_(flags) {
    options_.fuel = flags.fuel;
    if (flags.trace)
      options_.trace = [this](const std::string& line) { report_ << "  " << line << '\n'; };
  }

  RunResult finish() {
    RunResult r;
    r.exit_code = exit_;
    r.report = report_.str();
    r.diagnostics = diag_.str();
    return r;
  }

  void error(const SourceSpan& span, ErrorKind kind, const std::string& msg, int code) {
    diag_ << position(span, file_.name) << ": error[" << to_string(kind) << "]: " << msg << '\n';
    exit_ = std::max(exit_, code);
  }
  void error(const TypeError& e, const SourceSpan& fallback) {
    const SourceSpan& s = e.span().line == 0 ? fallback : e.span();
    error(s, e.kind(), e.what(), exit_for(e.kind()));
    if (flags_.dump_constraints && e.residue()) {
      report_ << "```residue " << position(s, file_.name) << '\n';
      indent_lines(report_, atom_lines(*e.residue()));
      report_ << "```\n";
    }
  }

  bool validate(SourceFile& file) {
    TypingOptions quiet = options_;
    quiet.trace = nullptr;
    for (const auto& e : validate_signature(file.sig, quiet)) error(e, SourceSpan{});
    if (exit_ != kExitOk) return false;
    for (const auto& d : file.decls) {
      if (d.kind != DeclKind::Rule) continue;
      if (auto e = validate_rule(file.sig, file.sig.rules().at(d.rule_index), quiet)) error(*e, d.span);
    }
    return exit_ == kExitOk;
  }

  void goals() {
    Env env;
    for (const auto& d : file_.decls) {
      try {
        switch (d.kind) {
          case DeclKind::Assume: {
            Env next = env.extended(d.name, d.type);
            TypingOptions quiet = options_;
            quiet.trace = nullptr;
            validate_env(file_.sig, next, quiet);
            env = std::move(next);
            break;
          }
          case DeclKind::Infer:
            infer_goal(env, d);
            break;
          case DeclKind::Check:
            check_goal(env, d);
            break;
          case DeclKind::Annotate:
            annotate_goal(d);
            break;
          default:
            break;
        }
      } catch (const TypeError& e) {
        report_ << "error at " << position(d.span, file_.name) << '\n';
        error(e, d.span);
        if (d.kind == DeclKind::Assume) return;  // later goals would see an invalid environment
      }
    }
  }

 private:
  void dump(const std::string& label, const ConstraintProblem& c, FreshSizeVars fresh) {
    if (!flags_.dump_constraints) return;
    SolveTrace tr = solve_traced(c, fresh);
    report_ << "```constraints " << label << '\n';
    report_ << "input:\n";
    indent_lines(report_, atom_lines(tr.input));
    report_ << "after equalities:\n";
    if (tr.after_equalities.bottom) {
      report_ << "  false\n";
    } else {
      for (const auto& [v, e] : tr.after_equalities.solved.bindings())
        report_ << "  " << to_string(SizeExpr::var(v)) << " = " << to_string(e) << '\n';
      indent_lines(report_, atom_lines(tr.after_equalities.as_problem()));
    }
    if (tr.reduced) {
      report_ << "reduced:\n";
      for (const auto& v : tr.reduced->infinite) report_ << "  oo <= " << to_string(SizeExpr::var(v)) << '\n';
      for (const auto& e : tr.reduced->linear) report_ << "  " << to_string(e) << '\n';
    }
    report_ << "mgs:\n";
    report_ << "  " << (tr.mgs ? to_string(*tr.mgs) : std::string("none")) << '\n';
    report_ << "```\n";
  }

  void infer_goal(const Env& env, const Decl& d) {
    report_ << "infer " << to_string(d.term) << '\n';
    InferSession session(options_);
    Term ty = infer(file_.sig, env, d.term, session);
    report_ << "  : " << to_string(ty) << '\n';
    if (flags_.dump_constraints) {
      InferSession deferred;
      ConstraintProblem c;
      infer_with_constraints(file_.sig, env, d.term, deferred, c);
      dump("infer " + to_string(d.term), c, deferred.sizes());
    }
  }

  void check_goal(const Env& env, const Decl& d) {
    report_ << "check " << to_string(d.term) << " : " << to_string(d.type) << '\n';
    CheckResult r = check(file_.sig, env, d.term, d.type, options_);
    report_ << "  ok, inferred " << to_string(r.inferred) << '\n';
    report_ << "  psi = " << to_string(r.on_expected) << '\n';
    FreshSizeVars fresh(size_vars(d.type));
    dump("check " + to_string(d.term), r.problem, fresh);
  }

  void annotate_goal(const Decl& d) {
    report_ << "annotate " << d.name << " (heuristic)\n";
    AnnotationReport rep = annotate_symbol(file_.sig, d.name, options_);
    const SymbolSig* head = file_.sig.find(d.name);
    std::set<SizeVar> shown = size_vars(head->type);
    auto rules = file_.sig.rules_for(d.name);
    for (std::size_t i = 0; i < rep.rules.size(); ++i) {
      const RuleAnnotationResult& rr = rep.rules[i];
      report_ << "  rule " << (i + 1) << " (line " << rules[i]->span.line << "): ";
      if (!rr.solution) {
        report_ << "unsat\n";
      } else if (rr.forced_infinite.empty()) {
        report_ << "sat, size-preserving\n";
      } else {
        report_ << "sat, forces";
        for (const auto& v : rr.forced_infinite) report_ << ' ' << v << " = oo";
        report_ << '\n';
      }
      if (flags_.dump_constraints) {
        FreshSizeVars fresh(rr.problem.vars());
        dump(d.name + " rule " + std::to_string(i + 1), rr.problem, fresh);
      }
    }
    if (!rep.solution) {
      throw TypeError(ErrorKind::UnsatConstraints,
                      "the annotations of '" + d.name + "' are not satisfiable by its rules", rep.combined);
    }
    report_ << "  solution: " << to_string(rep.solution->restricted(shown)) << '\n';
    if (!rep.relation.empty()) report_ << "  relation: " << rep.relation << '\n';
  }

  const SourceFile& file_;
  RunFlags flags_;
  TypingOptions options_;
  std::ostringstream report_;
  std::ostringstream diag_;
  int exit_ = kExitOk;
};

}  // namespace

RunResult run_source(const std::string& text, const std::string& filename, const RunFlags& flags) {
  SourceFile file;
  try {
    file = parse_source(text, filename);
  } catch (const ParseError& e) {
    RunResult r;
    r.exit_code = kExitInvalid;
    r.diagnostics = position(e.span(), filename) + ": error[ParseError]: " + e.what() + "\n";
    return r;
  } catch (const std::invalid_argument& e) {
    RunResult r;
    r.exit_code = kExitInvalid;
    r.diagnostics = filename + ":0:0: error[InvalidDeclaration]: " + e.what() + "\n";
    return r;
  }
  Runner runner(file, flags);
  if (runner.validate(file)) runner.goals();
  return runner.finish();
}

RunResult run_file(const std::string& path, const RunFlags& flags) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    RunResult r;
    r.exit_code = kExitInvalid;
    r.diagnostics = path + ":0:0: error[InvalidDeclaration]: cannot read file\n";
    return r;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return run_source(ss.str(), path, flags);
}

}  // namespace cacsa
