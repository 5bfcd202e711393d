#include "thomas/parser.hpp"

#include <algorithm>
#include <cctype>

namespace thomas {

namespace {

struct Token {
  enum Kind { Ident, Int, Punct, End } kind;
  std::string text;
  int line, col;
};

struct Lexer {
  const std::string& src;
  std::size_t pos = 0;
  int line = 1, col = 1;

  explicit Lexer(const std::string& s) : src(s) {}

  void advance(char c) {
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  Token next() {
    while (pos < src.size()) {
      char c = src[pos];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance(c);
        continue;
      }
      if (c == '#') {  // comment to end of line
        while (pos < src.size() && src[pos] != '\n') advance(src[pos]);
        continue;
      }
      break;
    }
    if (pos >= src.size()) return {Token::End, "", line, col};
    int l = line, cl = col;
    char c = src[pos];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string s;
      while (pos < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_')) {
        s += src[pos];
        advance(src[pos]);
      }
      return {Token::Ident, s, l, cl};
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string s;
      while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
        s += src[pos];
        advance(src[pos]);
      }
      return {Token::Int, s, l, cl};
    }
    advance(c);
    return {Token::Punct, std::string(1, c), l, cl};
  }
};

struct Parser {
  Lexer lex;
  Token tok;

  explicit Parser(const std::string& s) : lex(s) { tok = lex.next(); }

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, tok.line, tok.col); }

  void bump() { tok = lex.next(); }

  bool at_punct(const char* p) { return tok.kind == Token::Punct && tok.text == p; }

  void expect_punct(const char* p) {
    if (!at_punct(p)) fail(std::string("expected '") + p + "'");
    bump();
  }

  std::string expect_ident() {
    if (tok.kind != Token::Ident) fail("expected identifier");
    std::string s = tok.text;
    bump();
    return s;
  }

  std::uint32_t expect_int() {
    if (tok.kind != Token::Int) fail("expected integer");
    std::uint32_t v = static_cast<std::uint32_t>(std::stoul(tok.text));
    bump();
    return v;
  }

  std::vector<std::string> name_list() {
    std::vector<std::string> out;
    while (tok.kind == Token::Ident) {
      out.push_back(tok.text);
      bump();
      if (at_punct(",")) bump();
    }
    if (out.empty()) fail("expected at least one name");
    return out;
  }

  Expr parse_expr() {
    Expr lhs = parse_term();
    while (at_punct("+") || at_punct("-")) {
      bool add = tok.text == "+";
      int l = tok.line, c = tok.col;
      bump();
      Expr rhs = parse_term();
      Expr node;
      node.kind = add ? Expr::Add : Expr::Sub;
      node.line = l;
      node.col = c;
      node.kids.push_back(std::move(lhs));
      node.kids.push_back(std::move(rhs));
      lhs = std::move(node);
    }
    return lhs;
  }

  Expr parse_term() {
    Expr lhs = parse_factor();
    while (at_punct("*")) {
      int l = tok.line, c = tok.col;
      bump();
      Expr rhs = parse_factor();
      Expr node;
      node.kind = Expr::Mul;
      node.line = l;
      node.col = c;
      node.kids.push_back(std::move(lhs));
      node.kids.push_back(std::move(rhs));
      lhs = std::move(node);
    }
    return lhs;
  }

  Expr parse_factor() {
    Expr base = parse_atom();
    if (at_punct("^")) {
      int l = tok.line, c = tok.col;
      bump();
      Expr node;
      node.kind = Expr::Pow;
      node.exponent = expect_int();
      node.line = l;
      node.col = c;
      node.kids.push_back(std::move(base));
      return node;
    }
    return base;
  }

  Expr parse_atom() {
    int l = tok.line, c = tok.col;
    if (at_punct("-")) {
      bump();
      Expr node;
      node.kind = Expr::Neg;
      node.line = l;
      node.col = c;
      node.kids.push_back(parse_factor());
      return node;
    }
    if (at_punct("(")) {
      bump();
      Expr e = parse_expr();
      expect_punct(")");
      return e;
    }
    if (tok.kind == Token::Int) {
      Expr e;
      e.kind = Expr::Number;
      e.line = l;
      e.col = c;
      mpz_class num(tok.text);
      bump();
      if (at_punct("/")) {
        bump();
        if (tok.kind != Token::Int) fail("expected integer denominator");
        mpz_class den(tok.text);
        bump();
        if (den == 0) fail("zero denominator");
        e.num = mpq_class(num, den);
        e.num.canonicalize();
      } else {
        e.num = mpq_class(num);
      }
      return e;
    }
    if (tok.kind == Token::Ident) {
      std::string name = tok.text;
      bump();
      if ((name == "sin" || name == "cos") && at_punct("(")) {
        bump();
        Expr e;
        e.kind = name == "sin" ? Expr::Sin : Expr::Cos;
        e.name = expect_ident();
        e.line = l;
        e.col = c;
        expect_punct(")");
        return e;
      }
      Expr e;
      e.kind = Expr::Jet;
      e.name = name;
      e.line = l;
      e.col = c;
      if (at_punct("[")) {
        bump();
        if (at_punct("(")) {
          bump();
          std::vector<std::uint32_t> J;
          J.push_back(expect_int());
          while (at_punct(",")) {
            bump();
            J.push_back(expect_int());
          }
          expect_punct(")");
          e.jet_numeric = std::move(J);
        } else {
          while (tok.kind == Token::Ident) {
            e.jet_syms.push_back(tok.text);
            bump();
            if (at_punct(",")) bump();
          }
        }
        expect_punct("]");
      }
      return e;
    }
    fail("expected expression");
  }

  SystemAst parse_file() {
    SystemAst ast;
    while (tok.kind != Token::End) {
      if (tok.kind != Token::Ident) fail("expected statement keyword");
      std::string kw = tok.text;
      if (kw == "indep") {
        bump();
        auto ns = name_list();
        ast.indeps.insert(ast.indeps.end(), ns.begin(), ns.end());
        expect_punct(";");
      } else if (kw == "dep") {
        bump();
        auto ns = name_list();
        ast.deps.insert(ast.deps.end(), ns.begin(), ns.end());
        expect_punct(";");
      } else if (kw == "param") {
        bump();
        auto ns = name_list();
        ast.params.insert(ast.params.end(), ns.begin(), ns.end());
        expect_punct(";");
      } else if (kw == "ranking") {
        bump();
        if (tok.kind == Token::Ident && tok.text == "blocks") bump();
        while (at_punct("[")) {
          bump();
          std::vector<std::string> block = name_list();
          expect_punct("]");
          ast.blocks.push_back(std::move(block));
        }
        if (tok.kind == Token::Ident && tok.text == "degrevlex") bump();
        expect_punct(";");
      } else if (kw == "eq" || kw == "ineq") {
        bump();
        Statement st;
        st.kind = kw == "eq" ? Statement::Eq : Statement::Ineq;
        st.expr = parse_expr();
        expect_punct(";");
        ast.statements.push_back(std::move(st));
      } else {
        fail("unknown statement '" + kw + "'");
      }
    }
    return ast;
  }
};

}  // namespace

SystemAst parse_system(const std::string& text) {
  Parser p(text);
  return p.parse_file();
}

Poly build_expression(const DiffRing& ring, const Expr& e) {
  switch (e.kind) {
    case Expr::Number:
      return Poly(e.num);
    case Expr::Add:
      return build_expression(ring, e.kids[0]) + build_expression(ring, e.kids[1]);
    case Expr::Sub:
      return build_expression(ring, e.kids[0]) - build_expression(ring, e.kids[1]);
    case Expr::Mul:
      return build_expression(ring, e.kids[0]) * build_expression(ring, e.kids[1]);
    case Expr::Neg:
      return -build_expression(ring, e.kids[0]);
    case Expr::Pow:
      return build_expression(ring, e.kids[0]).pow(e.exponent);
    case Expr::Sin:
    case Expr::Cos:
      throw ParseError("trigonometric term requires encoding", e.line, e.col);
    case Expr::Jet: {
      auto dep = ring.dep_index(e.name);
      if (dep) {
        MultiIndex J(ring.n_derivations(), 0);
        if (e.jet_numeric) {
          if (e.jet_numeric->size() != ring.n_derivations())
            throw ParseError("jet index length mismatch", e.line, e.col);
          J = *e.jet_numeric;
        } else {
          for (const auto& s : e.jet_syms) {
            bool found = false;
            for (std::uint32_t j = 0; j < ring.indeps().size(); ++j) {
              if (ring.indeps()[j] == s) {
                J[j] += 1;
                found = true;
                break;
              }
            }
            if (!found)
              throw ParseError("unknown derivation symbol '" + s + "'", e.line, e.col);
          }
        }
        return Poly::var(ring.jet_var(*dep, J));
      }
      auto sym = ring.symbol(e.name);
      if (sym) {
        if (!e.jet_syms.empty() || e.jet_numeric)
          throw ParseError("'" + e.name + "' is not differentiable", e.line, e.col);
        return Poly::var(*sym);
      }
      throw ParseError("undeclared symbol '" + e.name + "'", e.line, e.col);
    }
  }
  throw ParseError("bad expression", e.line, e.col);
}

BuiltSystem build_system(const SystemAst& ast) {
  std::optional<RankingSpec> spec;
  if (!ast.blocks.empty()) {
    RankingSpec rs;
    for (const auto& block : ast.blocks) {
      rs.blocks.emplace_back();
      for (const auto& name : block) {
        auto it = std::find(ast.deps.begin(), ast.deps.end(), name);
        if (it == ast.deps.end()) throw ParseError("block lists undeclared '" + name + "'", 0, 0);
        rs.blocks.back().push_back(static_cast<std::uint32_t>(it - ast.deps.begin()));
      }
    }
    spec = std::move(rs);
  }
  BuiltSystem out;
  out.ring = std::make_shared<DiffRing>(ast.indeps, ast.params, ast.deps, spec);
  out.system.ring = out.ring;
  for (const auto& st : ast.statements) {
    Poly p = build_expression(*out.ring, st.expr);
    (st.kind == Statement::Eq ? out.system.equations : out.system.inequations).push_back(p);
  }
  return out;
}

Poly parse_expression(const DiffRing& ring, const std::string& text) {
  Parser p(text);
  Expr e = p.parse_expr();
  if (p.tok.kind != Token::End) throw ParseError("trailing input", p.tok.line, p.tok.col);
  return build_expression(ring, e);
}

}  // namespace thomas
