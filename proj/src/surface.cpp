// Copyright 2026 The sortc Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sortc/surface.hpp"

#include <cctype>
#include <functional>
#include <set>
#include <sstream>

namespace sortc {
namespace {

// ---------------------------------------------------------------------------
// Lexer

enum class Tok {
  Ident,  // lower-case or '_'-prefixed identifier
  Ctor,   // upper-case identifier
  Keyword,
  Symbol,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  int line, col;
  std::size_t offset;
};

const std::set<std::string> kKeywords = {"data", "block", "of",      "in",
                                         "fn",   "case",  "declare", "as",
                                         "unit"};

struct ParseFailure {
  Diagnostic diag;
};

[[noreturn]] void fail_at(int line, int col, int length, std::string msg) {
  throw ParseFailure{make_diagnostic("PARSE", std::move(msg),
                                     SourceLoc{line, col, length})};
}

std::vector<Token> lex(std::string_view src) {
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
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token t{Tok::Symbol, "", line, col, i};
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) ||
              src[j] == '_'))
        ++j;
      t.text = std::string(src.substr(i, j - i));
      if (t.text == "_") {
        t.kind = Tok::Symbol;
      } else if (kKeywords.count(t.text)) {
        t.kind = Tok::Keyword;
      } else if (std::isupper(static_cast<unsigned char>(c))) {
        t.kind = Tok::Ctor;
      } else {
        t.kind = Tok::Ident;
      }
      advance(j - i);
      out.push_back(t);
      continue;
    }
    static const char* two[] = {"->", "=>", "<="};
    bool matched = false;
    for (const char* s : two) {
      if (src.substr(i, 2) == s) {
        t.text = s;
        advance(2);
        matched = true;
        break;
      }
    }
    if (!matched) {
      if (std::string_view("(){},;:*&|!").find(c) == std::string_view::npos)
        fail_at(line, col, 1, std::string("unexpected character '") + c + "'");
      t.text = std::string(1, c);
      advance(1);
    }
    out.push_back(t);
  }
  out.push_back(Token{Tok::End, "<end of input>", line, col, src.size()});
  return out;
}

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src), toks_(lex(src)) {}

  Program program();
  Type type_only() {
    Type t = type();
    expect_end();
    return t;
  }
  UType utype_only() {
    UType t = utype();
    expect_end();
    return t;
  }
  Pattern pattern_only() {
    Pattern p = pattern();
    expect_end();
    return p;
  }
  Expr expr_only() {
    Expr e = expr();
    expect_end();
    return e;
  }
  Signature signature_only() {
    Signature sig;
    while (is_kw("block")) sig.blocks.push_back(block());
    expect_end();
    return sig;
  }

  std::vector<Diagnostic> semantic_errors;

 private:
  const Token& peek(std::size_t k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool is_sym(const char* s, std::size_t k = 0) const {
    return peek(k).kind == Tok::Symbol && peek(k).text == s;
  }
  bool is_kw(const char* s) const {
    return peek().kind == Tok::Keyword && peek().text == s;
  }
  [[noreturn]] void fail(const std::string& what) {
    const Token& t = peek();
    int len = t.kind == Tok::End ? 0 : static_cast<int>(t.text.size());
    fail_at(t.line, t.col, len, "expected " + what + ", found '" + t.text + "'");
  }
  void expect_sym(const char* s) {
    if (!is_sym(s)) fail(std::string("'") + s + "'");
    next();
  }
  void expect_kw(const char* s) {
    if (!is_kw(s)) fail(std::string("'") + s + "'");
    next();
  }
  std::string ident(const char* what) {
    if (peek().kind != Tok::Ident) fail(what);
    return next().text;
  }
  std::string ctor_name() {
    if (peek().kind != Tok::Ctor) fail("constructor name");
    return next().text;
  }
  void expect_end() {
    if (peek().kind != Tok::End) fail("end of input");
  }
  SourceLoc loc_from(const Token& start) const {
    std::size_t end = pos_ > 0 ? toks_[pos_ - 1].offset +
                                     toks_[pos_ - 1].text.size()
                               : start.offset;
    if (toks_[pos_ > 0 ? pos_ - 1 : 0].kind == Tok::End) end = src_.size();
    int len = end > start.offset ? static_cast<int>(end - start.offset) : 0;
    return SourceLoc{start.line, start.col, len};
  }

  // Types -----------------------------------------------------------------
  UType utype() {
    UType left = utype_prod();
    if (is_sym("->")) {
      next();
      return UType::arrow(left, utype());
    }
    return left;
  }
  UType utype_prod() {
    UType t = utype_atom();
    while (is_sym("*")) {
      next();
      t = UType::prod(t, utype_atom());
    }
    return t;
  }
  UType utype_atom() {
    if (is_kw("unit")) {
      next();
      return UType::unit();
    }
    if (peek().kind == Tok::Ident) return UType::data(next().text);
    if (is_sym("(")) {
      next();
      UType t = utype();
      expect_sym(")");
      return t;
    }
    fail("unrefined type");
  }

  Type type() {
    Type left = type_inter();
    if (is_sym("->")) {
      next();
      return Type::arrow(left, type());
    }
    return left;
  }
  Type type_inter() {
    Type t = type_prod();
    while (is_sym("&")) {
      next();
      t = Type::intersect(t, type_prod());
    }
    return t;
  }
  Type type_prod() {
    Type t = type_atom();
    while (is_sym("*")) {
      next();
      t = Type::prod(t, type_atom());
    }
    return t;
  }
  Type type_atom() {
    if (is_kw("unit")) {
      next();
      return Type::unit();
    }
    if (peek().kind == Tok::Ident) return Type::sort(next().text);
    if (is_sym("(")) {
      next();
      Type t = type();
      expect_sym(")");
      return t;
    }
    fail("type");
  }

  // Signatures --------------------------------------------------------------
  Block block() {
    const Token& start = peek();
    expect_kw("block");
    Block b;
    expect_sym("(");
    do {
      const Token& s = peek();
      SortDecl d;
      d.sort = ident("sort name");
      expect_kw("of");
      d.refines = ident("datatype name");
      d.loc = loc_from(s);
      b.sorts.push_back(d);
    } while (is_sym(",") && (next(), true));
    expect_sym(")");
    expect_sym("{");
    while (!is_sym("}")) {
      b.items.push_back(item());
      if (is_sym(";")) {
        next();
      } else if (!is_sym("}")) {
        fail("';' or '}'");
      }
    }
    expect_sym("}");
    b.loc = loc_from(start);
    return b;
  }

  BlockItem item() {
    const Token& start = peek();
    if (peek().kind == Tok::Ident) {
      SubsortDecl s;
      s.sub = next().text;
      expect_sym("<=");
      s.sup = ident("sort name");
      return BlockItem{s, loc_from(start)};
    }
    if (peek().kind == Tok::Ctor) {
      Name ctor = next().text;
      expect_sym(":");
      Type t = type();
      if (auto arr = t.as<Type::Arrow>()) {
        if (auto res = arr->cod.as<Type::Sort>())
          return BlockItem{CtorDecl{ctor, arr->dom, res->name},
                           loc_from(start)};
      } else if (auto res = t.as<Type::Sort>()) {
        return BlockItem{CtorDecl{ctor, Type::unit(), res->name},
                         loc_from(start)};
      }
      fail_at(start.line, start.col, loc_from(start).length,
              "constructor typing must end in a sort");
    }
    fail("subsorting or constructor typing");
  }

  // Patterns ----------------------------------------------------------------
  Pattern pattern() {
    Pattern left = pattern_as();
    if (is_sym("|")) {
      next();
      return Pattern::or_(left, pattern());
    }
    return left;
  }
  Pattern pattern_as() {
    if (peek().kind == Tok::Ident) {
      std::string x = next().text;
      if (is_kw("as")) {
        next();
        return Pattern::bind(x, pattern_as());
      }
      return Pattern::bind(x, Pattern::wild());
    }
    return pattern_atom();
  }
  Pattern pattern_atom() {
    if (is_sym("_")) {
      next();
      return Pattern::wild();
    }
    if (is_sym("!")) {
      next();
      return Pattern::empty();
    }
    if (peek().kind == Tok::Ctor) {
      std::string c = next().text;
      if (!is_sym("(")) fail("'(' after constructor " + c);
      return Pattern::ctor(c, pattern_paren());
    }
    if (is_sym("(")) return pattern_paren();
    fail("pattern");
  }
  Pattern pattern_paren() {
    expect_sym("(");
    if (is_sym(")")) {
      next();
      return Pattern::unit();
    }
    Pattern p = pattern();
    if (is_sym(",")) {
      next();
      Pattern q = pattern();
      expect_sym(")");
      return Pattern::pair(p, q);
    }
    expect_sym(")");
    return p;
  }

  // Expressions -------------------------------------------------------------
  Expr expr() {
    const Token& start = peek();
    if (is_kw("fn")) {
      next();
      std::string x = ident("variable");
      expect_sym("=>");
      Expr body = expr();
      return Expr::lam(x, body, loc_from(start));
    }
    if (is_kw("declare")) {
      next();
      Signature ext;
      if (!is_kw("block")) fail("'block'");
      while (is_kw("block")) ext.blocks.push_back(block());
      expect_kw("in");
      Expr body = expr();
      return Expr::declare(ext, body, loc_from(start));
    }
    Expr e = atom();
    while (atom_start()) {
      Expr arg = atom();
      e = Expr::app(e, arg, loc_from(start));
    }
    return e;
  }
  bool atom_start() const {
    const Token& t = peek();
    return t.kind == Tok::Ident || t.kind == Tok::Ctor || is_sym("(") ||
           (t.kind == Tok::Keyword && t.text == "case");
  }
  Expr atom() {
    const Token& start = peek();
    if (peek().kind == Tok::Ident) {
      std::string x = next().text;
      return Expr::var(x, loc_from(start));
    }
    if (peek().kind == Tok::Ctor) {
      std::string c = next().text;
      if (!is_sym("(")) fail("'(' after constructor " + c);
      Expr arg = paren();
      return Expr::ctor(c, arg, loc_from(start));
    }
    if (is_sym("(")) return paren();
    if (is_kw("case")) {
      next();
      Expr scrut = expr();
      expect_kw("of");
      expect_sym("{");
      Matches arms;
      while (!is_sym("}")) {
        Pattern p = pattern();
        expect_sym("=>");
        Expr body = expr();
        arms.push_back(Arm{p, body});
        if (is_sym(";")) {
          next();
        } else if (!is_sym("}")) {
          fail("';' or '}'");
        }
      }
      expect_sym("}");
      return Expr::case_(scrut, std::move(arms), loc_from(start));
    }
    fail("expression");
  }
  Expr paren() {
    const Token& start = peek();
    expect_sym("(");
    if (is_sym(")")) {
      next();
      return Expr::unit(loc_from(start));
    }
    Expr e = expr();
    if (is_sym(",")) {
      next();
      Expr f = expr();
      expect_sym(")");
      return Expr::pair(e, f, loc_from(start));
    }
    if (is_sym(":")) {
      next();
      std::vector<Type> types{type()};
      while (is_sym(",")) {
        next();
        types.push_back(type());
      }
      expect_sym(")");
      return Expr::anno(e, std::move(types), loc_from(start));
    }
    expect_sym(")");
    return e;
  }

  void collect_data(const std::set<std::string>& known, const UType& t,
                    const Token& at) {
    if (auto d = t.as<UType::Data>()) {
      if (!known.count(d->name))
        semantic_errors.push_back(make_diagnostic(
            "UNKNOWN_DATATYPE", "datatype '" + d->name + "' is not declared",
            SourceLoc{at.line, at.col, static_cast<int>(at.text.size())}));
    } else if (auto a = t.as<UType::Arrow>()) {
      collect_data(known, a->dom, at);
      collect_data(known, a->cod, at);
    } else if (auto p = t.as<UType::Prod>()) {
      collect_data(known, p->left, at);
      collect_data(known, p->right, at);
    }
  }

  std::string_view src_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

Program Parser::program() {
  Program prog{{}, {}, Expr::unit()};
  std::set<std::string> datas, ctors;
  std::vector<std::pair<UType, Token>> args;
  while (is_kw("data")) {
    next();
    const Token& dt = peek();
    std::string d = ident("datatype name");
    if (!datas.insert(d).second) {
      semantic_errors.push_back(make_diagnostic(
          "DUPDATA", "datatype '" + d + "' is declared twice",
          SourceLoc{dt.line, dt.col, static_cast<int>(d.size())}));
    } else {
      prog.ursig.datatypes.push_back(d);
    }
    expect_sym("{");
    while (!is_sym("}")) {
      const Token& ct = peek();
      std::string c = ctor_name();
      expect_sym(":");
      UType arg = utype();
      args.emplace_back(arg, ct);
      if (!ctors.insert(c).second) {
        semantic_errors.push_back(make_diagnostic(
            "DUPCTOR", "constructor '" + c + "' is declared twice",
            SourceLoc{ct.line, ct.col, static_cast<int>(c.size())}));
      } else {
        prog.ursig.ctors.push_back(UCtor{c, arg, d});
      }
      if (is_sym(";")) {
        next();
      } else if (!is_sym("}")) {
        fail("';' or '}'");
      }
    }
    expect_sym("}");
  }
  for (const auto& [arg, tok] : args) collect_data(datas, arg, tok);
  while (is_kw("block")) prog.sig.blocks.push_back(block());
  expect_kw("in");
  prog.main = expr();
  expect_end();
  return prog;
}

template <typename T, typename F>
Parsed<T> run_parser(std::string_view text, F f) {
  Parsed<T> out;
  try {
    Parser p(text);
    T value = f(p);
    if (p.semantic_errors.empty()) {
      out.value = std::move(value);
    } else {
      out.diagnostics = std::move(p.semantic_errors);
      sort_diagnostics(out.diagnostics);
    }
  } catch (const ParseFailure& e) {
    out.diagnostics.push_back(e.diag);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Printer

std::string type_at(const Type& a, int level) {
  if (a.as<Type::Unit>()) return "unit";
  if (auto s = a.as<Type::Sort>()) return s->name;
  std::string s;
  int own;
  if (auto x = a.as<Type::Arrow>()) {
    s = type_at(x->dom, 1) + " -> " + type_at(x->cod, 0);
    own = 0;
  } else if (auto x = a.as<Type::Intersect>()) {
    s = type_at(x->left, 1) + " & " + type_at(x->right, 2);
    own = 1;
  } else {
    auto p = a.as<Type::Prod>();
    s = type_at(p->left, 2) + " * " + type_at(p->right, 3);
    own = 2;
  }
  return level > own ? "(" + s + ")" : s;
}

std::string utype_at(const UType& t, int level) {
  if (t.as<UType::Unit>()) return "unit";
  if (auto d = t.as<UType::Data>()) return d->name;
  if (auto x = t.as<UType::Arrow>()) {
    std::string s = utype_at(x->dom, 1) + " -> " + utype_at(x->cod, 0);
    return level > 0 ? "(" + s + ")" : s;
  }
  auto p = t.as<UType::Prod>();
  std::string s = utype_at(p->left, 2) + " * " + utype_at(p->right, 3);
  return level > 2 ? "(" + s + ")" : s;
}

std::string pattern_at(const Pattern& p, int level);

std::string pattern_paren(const Pattern& p) {
  if (p.is<Pattern::Unit>()) return "()";
  if (auto q = p.as<Pattern::Pair>())
    return "(" + pattern_at(q->left, 0) + ", " + pattern_at(q->right, 0) + ")";
  return "(" + pattern_at(p, 0) + ")";
}

std::string pattern_at(const Pattern& p, int level) {
  if (p.is<Pattern::Wild>()) return "_";
  if (p.is<Pattern::Empty>()) return "!";
  if (p.is<Pattern::Unit>()) return "()";
  if (auto c = p.as<Pattern::Ctor>()) return c->ctor + pattern_paren(c->arg);
  if (p.is<Pattern::Pair>()) return pattern_paren(p);
  if (auto a = p.as<Pattern::As>()) {
    if (a->inner.is<Pattern::Wild>()) return a->var;
    std::string s = a->var + " as " + pattern_at(a->inner, 1);
    return level > 1 ? "(" + s + ")" : s;
  }
  auto o = p.as<Pattern::Or>();
  std::string s = pattern_at(o->left, 1) + " | " + pattern_at(o->right, 0);
  return level > 0 ? "(" + s + ")" : s;
}

std::string item_text(const BlockItem& it) {
  if (auto s = it.subsort()) return s->sub + " <= " + s->sup;
  auto c = it.ctor();
  return c->ctor + " : " + type_at(c->arg, 1) + " -> " + c->result;
}

std::string block_header(const Block& b) {
  std::string s = "block (";
  for (std::size_t i = 0; i < b.sorts.size(); ++i) {
    if (i) s += ", ";
    s += b.sorts[i].sort + " of " + b.sorts[i].refines;
  }
  return s + ")";
}

std::string block_inline(const Block& b) {
  std::string s = block_header(b) + " {";
  for (std::size_t i = 0; i < b.items.size(); ++i)
    s += (i ? "; " : " ") + item_text(b.items[i]);
  return s + " }";
}

std::string expr_at(const Expr& e, int level);

std::string expr_paren(const Expr& e) {
  if (e.is<Expr::Unit>() || e.is<Expr::Pair>() || e.is<Expr::Anno>())
    return expr_at(e, 2);
  return "(" + expr_at(e, 0) + ")";
}

std::string expr_at(const Expr& e, int level) {
  return std::visit(
      [&](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Expr::Var>) {
          return x.name;
        } else if constexpr (std::is_same_v<T, Expr::Unit>) {
          return "()";
        } else if constexpr (std::is_same_v<T, Expr::Lam>) {
          std::string s = "fn " + x.var + " => " + expr_at(x.body, 0);
          return level > 0 ? "(" + s + ")" : s;
        } else if constexpr (std::is_same_v<T, Expr::Declare>) {
          std::string s = "declare";
          for (const auto& b : x.ext.blocks) s += " " + block_inline(b);
          s += " in " + expr_at(x.body, 0);
          return level > 0 ? "(" + s + ")" : s;
        } else if constexpr (std::is_same_v<T, Expr::App>) {
          std::string s = expr_at(x.fn, 1) + " " + expr_at(x.arg, 2);
          return level > 1 ? "(" + s + ")" : s;
        } else if constexpr (std::is_same_v<T, Expr::Pair>) {
          return "(" + expr_at(x.left, 0) + ", " + expr_at(x.right, 0) + ")";
        } else if constexpr (std::is_same_v<T, Expr::Ctor>) {
          return x.ctor + expr_paren(x.arg);
        } else if constexpr (std::is_same_v<T, Expr::Case>) {
          std::string s = "case " + expr_at(x.scrutinee, 0) + " of {";
          for (std::size_t i = 0; i < x.arms.size(); ++i) {
            s += i ? "; " : " ";
            s += pattern_at(x.arms[i].pattern, 0) + " => " +
                 expr_at(x.arms[i].body, 0);
          }
          return s + " }";
        } else {
          std::string s = "(" + expr_at(x.body, 0) + " : ";
          for (std::size_t i = 0; i < x.types.size(); ++i) {
            if (i) s += ", ";
            s += type_at(x.types[i], 0);
          }
          return s + ")";
        }
      },
      e.node().v);
}

}  // namespace

Parsed<Program> parse_program(std::string_view text) {
  return run_parser<Program>(text, [](Parser& p) { return p.program(); });
}
Parsed<Type> parse_type(std::string_view text) {
  return run_parser<Type>(text, [](Parser& p) { return p.type_only(); });
}
Parsed<UType> parse_utype(std::string_view text) {
  return run_parser<UType>(text, [](Parser& p) { return p.utype_only(); });
}
Parsed<Pattern> parse_pattern(std::string_view text) {
  return run_parser<Pattern>(text, [](Parser& p) { return p.pattern_only(); });
}
Parsed<Expr> parse_expr(std::string_view text) {
  return run_parser<Expr>(text, [](Parser& p) { return p.expr_only(); });
}
Parsed<Signature> parse_signature(std::string_view text) {
  return run_parser<Signature>(text,
                               [](Parser& p) { return p.signature_only(); });
}

std::string print_type(const Type& a) { return type_at(a, 0); }
std::string print_utype(const UType& t) { return utype_at(t, 0); }
std::string print_pattern(const Pattern& p) { return pattern_at(p, 0); }
std::string print_expr(const Expr& e) { return expr_at(e, 0); }

std::string print_block(const Block& b) {
  std::string s = block_header(b) + " {\n";
  for (const auto& it : b.items) s += "  " + item_text(it) + ";\n";
  return s + "}\n";
}

std::string print_signature(const Signature& sig) {
  std::string s;
  for (const auto& b : sig.blocks) s += print_block(b);
  return s;
}

std::string print_program(const Program& p) {
  std::string s;
  for (const auto& d : p.ursig.datatypes) {
    s += "data " + d + " {";
    bool first = true;
    for (const auto& c : p.ursig.ctors) {
      if (c.result != d) continue;
      s += first ? " " : "; ";
      s += c.ctor + " : " + print_utype(c.arg);
      first = false;
    }
    s += " }\n";
  }
  s += print_signature(p.sig);
  s += "in\n" + print_expr(p.main) + "\n";
  return s;
}

std::string print_context(const Context& g) {
  std::string s;
  for (const auto& [x, a] : g.entries()) {
    if (!s.empty()) s += ", ";
    s += x + " : " + print_type(a);
  }
  return s;
}

std::string print_track(const Track& t) {
  std::string ctx = print_context(t.bindings);
  return (ctx.empty() ? "" : ctx + " ") + "|- " + print_type(t.residual);
}

}  // namespace sortc
