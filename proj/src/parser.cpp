#include <cctype>
#include <optional>

#include "cacsa/syntax.hpp"

namespace cacsa {

namespace {

enum class Tok { Ident, LParen, RParen, LBrack, RBrack, LBrace, RBrace, Colon, Comma, Dot, Caret, Arrow, LongArrow, End };

struct Token {
  Tok kind;
  std::string text;
  int line, col;
};

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

std::vector<Token> lex(const std::string& src, const std::string& file) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    int l = line, cl = col;
    if (src.compare(i, 3, "-->") == 0) {
      out.push_back({Tok::LongArrow, "-->", l, cl});
      advance(3);
      continue;
    }
    if (src.compare(i, 2, "->") == 0) {
      out.push_back({Tok::Arrow, "->", l, cl});
      advance(2);
      continue;
    }
    if (src.compare(i, 2, "--") == 0) {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (ident_char(c)) {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      out.push_back({Tok::Ident, src.substr(i, j - i), l, cl});
      advance(j - i);
      continue;
    }
    Tok k;
    switch (c) {
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case '[': k = Tok::LBrack; break;
      case ']': k = Tok::RBrack; break;
      case '{': k = Tok::LBrace; break;
      case '}': k = Tok::RBrace; break;
      case ':': k = Tok::Colon; break;
      case ',': k = Tok::Comma; break;
      case '.': k = Tok::Dot; break;
      case '^': k = Tok::Caret; break;
      default:
        throw ParseError({file, l, cl}, std::string("unexpected character '") + c + "'");
    }
    out.push_back({k, std::string(1, c), l, cl});
    advance(1);
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

const char* describe(Tok k) {
  switch (k) {
    case Tok::Ident: return "identifier";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrack: return "'['";
    case Tok::RBrack: return "']'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Colon: return "':'";
    case Tok::Comma: return "','";
    case Tok::Dot: return "'.'";
    case Tok::Caret: return "'^'";
    case Tok::Arrow: return "'->'";
    case Tok::LongArrow: return "'-->'";
    case Tok::End: return "end of input";
  }
  return "token";
}

bool is_keyword(const std::string& s) {
  return s == "data" || s == "symbol" || s == "rule" || s == "assume" || s == "infer" || s == "check" ||
         s == "annotate" || s == "Type" || s == "Kind" || s == "in" || s == "oo";
}

// Where unknown identifiers go while parsing a term.
struct PatternScope {
  RewriteRule* rule = nullptr;  // non-null inside a rule's left-hand side
  std::size_t* counter = nullptr;
};

class Parser {
 public:
  Parser(std::vector<Token> toks, std::string file, Signature& sig)
      : toks_(std::move(toks)), file_(std::move(file)), sig_(sig) {}

  SourceFile parse_file() {
    SourceFile f;
    f.name = file_;
    while (peek().kind != Tok::End) f.decls.push_back(parse_decl(f));
    return f;
  }

  Term parse_single_term() {
    Term t = term();
    expect(Tok::End);
    return t;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  SourceSpan span_of(const Token& t) const { return {file_, t.line, t.col}; }
  [[noreturn]] void fail(const Token& t, const std::string& msg) const { throw ParseError(span_of(t), msg); }

  const Token& expect(Tok k) {
    const Token& t = peek();
    if (t.kind != k) fail(t, std::string("expected ") + describe(k) + ", found " + found(t));
    ++pos_;
    return t;
  }
  static std::string found(const Token& t) {
    return t.kind == Tok::Ident ? "'" + t.text + "'" : std::string(describe(t.kind));
  }
  bool at_keyword(const char* kw) const { return peek().kind == Tok::Ident && peek().text == kw; }

  std::string name() {
    const Token& t = expect(Tok::Ident);
    if (is_keyword(t.text)) fail(t, "'" + t.text + "' is a keyword");
    return t.text;
  }

  Decl parse_decl(SourceFile& f) {
    const Token& start = peek();
    if (start.kind != Tok::Ident) fail(start, "expected a declaration, found " + found(start));
    Decl d;
    d.span = span_of(start);
    const std::string kw = start.text;
    ++pos_;
    if (kw == "data" || kw == "symbol") {
      d.kind = kw == "data" ? DeclKind::Data : DeclKind::Symbol;
      const Token& nt = peek();
      d.name = name();
      expect(Tok::Colon);
      d.type = term();
      expect(Tok::Dot);
      if (sig_.find(d.name)) fail(nt, "'" + d.name + "' is already declared");
      SymbolSig s;
      s.name = d.name;
      s.type = d.type;
      s.is_const_pred = d.kind == DeclKind::Data;
      s.span = d.span;
      sig_.declare(std::move(s));
    } else if (kw == "assume") {
      d.kind = DeclKind::Assume;
      d.name = name();
      expect(Tok::Colon);
      d.type = term();
      expect(Tok::Dot);
      f.assumptions.push(d.name, d.type);
    } else if (kw == "infer") {
      d.kind = DeclKind::Infer;
      d.term = term();
      expect(Tok::Dot);
    } else if (kw == "check") {
      d.kind = DeclKind::Check;
      d.term = term();
      expect(Tok::Colon);
      d.type = term();
      expect(Tok::Dot);
    } else if (kw == "annotate") {
      d.kind = DeclKind::Annotate;
      const Token& nt = peek();
      d.name = name();
      const SymbolSig* s = sig_.find(d.name);
      if (!s || s->is_const_pred) fail(nt, "'" + d.name + "' is not a declared symbol");
      expect(Tok::Dot);
    } else if (kw == "rule") {
      d.kind = DeclKind::Rule;
      RewriteRule r;
      r.span = d.span;
      pattern_.rule = &r;
      pattern_.counter = &wildcards_;
      r.lhs = term();
      pattern_.rule = nullptr;
      expect(Tok::LongArrow);
      r.rhs = term();
      if (peek().kind == Tok::LBrack && peek(1).kind == Tok::Ident && peek(1).text == "in") {
        pos_ += 2;
        Env ctx;
        for (;;) {
          std::string x = name();
          expect(Tok::Colon);
          ctx.push(x, term());
          if (peek().kind == Tok::Comma) {
            ++pos_;
            continue;
          }
          break;
        }
        expect(Tok::RBrack);
        r.context = std::move(ctx);
      }
      expect(Tok::Dot);
      Term h = spine(r.lhs).first;
      if (h.kind() != TermKind::Symb && h.kind() != TermKind::Const)
        fail(start, "left-hand side of a rule must start with a symbol");
      r.head = h->name;
      d.rule_index = sig_.rules().size();
      sig_.add_rule(std::move(r));
    } else {
      fail(start, "expected a declaration, found '" + kw + "'");
    }
    return d;
  }

  bool starts_binder() const {
    return (peek().kind == Tok::LParen || peek().kind == Tok::LBrack) && peek(1).kind == Tok::Ident &&
           peek(2).kind == Tok::Colon && peek(1).text != "in";
  }

  bool starts_atom() const {
    switch (peek().kind) {
      case Tok::Ident:
        return peek().text != "in" && !(is_keyword(peek().text) && peek().text != "Type" && peek().text != "Kind");
      case Tok::LParen:
        return true;
      case Tok::LBrack:
        return starts_binder();
      case Tok::LBrace:
        return pattern_.rule != nullptr;
      default:
        return false;
    }
  }

  Term term() {
    if (starts_binder()) return binder();
    Term lhs = app();
    if (peek().kind == Tok::Arrow) {
      ++pos_;
      bound_.push_back("");  // the arrow's anonymous binder
      Term rhs = term();
      bound_.pop_back();
      return mk_prod("_", lhs, rhs);
    }
    return lhs;
  }

  Term binder() {
    bool abs = peek().kind == Tok::LBrack;
    ++pos_;
    std::string x = name();
    expect(Tok::Colon);
    Term dom = term();
    expect(abs ? Tok::RBrack : Tok::RParen);
    bound_.push_back(x);
    Term body = term();
    bound_.pop_back();
    return abs ? mk_abs(x, dom, body) : mk_prod(x, dom, body);
  }

  Term app() {
    if (!starts_atom()) fail(peek(), "expected a term, found " + found(peek()));
    Term t = atom();
    while (starts_atom()) t = mk_app(t, atom());
    return t;
  }

  Term atom() {
    const Token& t = peek();
    if (t.kind == Tok::LParen) {
      if (starts_binder()) return binder();
      ++pos_;
      Term inner = term();
      expect(Tok::RParen);
      return inner;
    }
    if (t.kind == Tok::LBrack) return binder();
    if (t.kind == Tok::LBrace) {
      ++pos_;
      RewriteRule* r = pattern_.rule;
      pattern_.rule = nullptr;
      Term inner = term();
      pattern_.rule = r;
      expect(Tok::RBrace);
      std::string v = "_#" + std::to_string(++*pattern_.counter);
      r->inaccessible.emplace(v, inner);
      return mk_fvar(v);
    }
    ++pos_;
    if (t.text == "Type") return mk_star();
    if (t.text == "Kind") return mk_box();
    Term head = resolve(t);
    if (peek().kind == Tok::Caret) {
      if (head.kind() != TermKind::Const) fail(peek(), "only data symbols carry size annotations");
      ++pos_;
      return mk_const(head->name, normalize(size_atom()));
    }
    return head;
  }

  Term resolve(const Token& t) {
    for (std::size_t k = bound_.size(); k-- > 0;)
      if (bound_[k] == t.text) return mk_bvar(std::uint32_t(bound_.size() - 1 - k));
    if (const SymbolSig* s = sig_.find(t.text)) return s->is_const_pred ? mk_const(t.text) : mk_symb(t.text);
    if (t.text == "_") {
      if (!pattern_.rule) fail(t, "'_' is only allowed in patterns");
      return mk_fvar("_#" + std::to_string(++*pattern_.counter));
    }
    return mk_fvar(t.text);
  }

  SizeSyntax size_atom() {
    const Token& t = peek();
    if (t.kind == Tok::LParen) {
      ++pos_;
      SizeSyntax s = size_expr();
      expect(Tok::RParen);
      return s;
    }
    if (t.kind != Tok::Ident) fail(t, "expected a size, found " + found(t));
    ++pos_;
    if (t.text == "oo") return SizeSyntax::infinity();
    if (t.text == "s") fail(t, "write successor sizes in parentheses, as in (s a)");
    if (is_keyword(t.text)) fail(t, "'" + t.text + "' is not a size variable");
    return SizeSyntax::var(t.text);
  }

  SizeSyntax size_expr() {
    if (peek().kind == Tok::Ident && peek().text == "s") {
      ++pos_;
      SizeSyntax inner = size_expr();
      ++inner.succs;
      return inner;
    }
    return size_atom();
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::string file_;
  Signature& sig_;
  std::vector<std::string> bound_;
  PatternScope pattern_;
  std::size_t wildcards_ = 0;
};

}  // namespace

SourceFile parse_source(const std::string& text, const std::string& filename) {
  Signature sig;
  Parser p(lex(text, filename), filename, sig);
  SourceFile f = p.parse_file();
  f.sig = std::move(sig);
  return f;
}

Term parse_term(const std::string& text, const Signature& sig) {
  Signature copy = sig;
  Parser p(lex(text, "<term>"), "<term>", copy);
  return p.parse_single_term();
}

}  // namespace cacsa
