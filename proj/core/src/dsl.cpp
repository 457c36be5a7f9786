#include "fusionlab/dsl.hpp"

#include "fusionlab/errors.hpp"

#include <cctype>
#include <limits>

namespace fusionlab::dsl {

std::string Affine::to_string() const {
  std::string out;
  auto add = [&](const std::string& term) {
    if (!out.empty()) out += " + ";
    out += term;
  };
  if (n_coef == 1) add("n");
  else if (n_coef > 1) add(std::to_string(n_coef) + "*n");
  if (l_coef == 1) add("l");
  else if (l_coef > 1) add(std::to_string(l_coef) + "*l");
  if (constant != 0 || out.empty()) add(std::to_string(constant));
  return out;
}

ExprPtr Expr::constant(bool v) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Const;
  e->value = v;
  return e;
}

ExprPtr Expr::bit(Affine k, Affine j) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Bit;
  e->k = k;
  e->j = j;
  return e;
}

ExprPtr Expr::negate(ExprPtr a) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Not;
  e->lhs = std::move(a);
  return e;
}

ExprPtr Expr::binary(Kind kind, ExprPtr a, ExprPtr b) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->lhs = std::move(a);
  e->rhs = std::move(b);
  return e;
}

bool same_tree(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
  case Expr::Kind::Const: return a.value == b.value;
  case Expr::Kind::Bit: return a.k == b.k && a.j == b.j;
  case Expr::Kind::Not: return same_tree(*a.lhs, *b.lhs);
  default: return same_tree(*a.lhs, *b.lhs) && same_tree(*a.rhs, *b.rhs);
  }
}

const FamilySpec* Document::find_family(std::string_view name) const {
  for (const auto& f : families)
    if (f.name == name) return &f;
  return nullptr;
}

const LuzinDecl* Document::find_luzin(std::string_view name) const {
  for (const auto& d : luzin)
    if (d.name == name) return &d;
  return nullptr;
}

const BaireDecl* Document::find_baire(std::string_view name) const {
  for (const auto& d : baire)
    if (d.name == name) return &d;
  return nullptr;
}

namespace {

struct Token {
  enum class Kind { Ident, Int, Sym, End };
  Kind kind = Kind::End;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&] {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++i;
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance();
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance();
      continue;
    }
    Token tok;
    tok.line = line;
    tok.column = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      tok.kind = Token::Kind::Ident;
      while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
        tok.text += text[i];
        advance();
      }
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      tok.kind = Token::Kind::Int;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        tok.text += text[i];
        advance();
      }
    } else if (std::string_view("()=,!&|^*+-:;{}").find(c) != std::string_view::npos) {
      tok.kind = Token::Kind::Sym;
      tok.text = std::string(1, c);
      advance();
    } else {
      throw SyntaxError(line, col, "a token (found '" + std::string(1, c) + "')");
    }
    out.push_back(std::move(tok));
  }
  Token end;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

struct Vars {
  bool n = false;
  bool l = false;
};

class Parser {
public:
  explicit Parser(std::string_view text) : tokens_(tokenize(text)) {}

  Document document(std::string_view source) {
    Document doc;
    doc.source = std::string(source);
    struct Ref {
      std::string name;
      Token at;
    };
    std::vector<Ref> refs;
    std::set<std::string> names;
    auto declare = [&](const Token& at, const std::string& name) {
      if (!names.insert(name).second) throw SyntaxError(at.line, at.column, "a fresh declaration name ('" + name + "' is taken)");
    };
    while (!at_end()) {
      const Token kw = peek();
      if (is_ident("family") || is_ident("cfamily")) {
        FamilySpec spec = family_decl();
        declare(kw, spec.name);
        doc.families.push_back(std::move(spec));
      } else if (is_ident("luzin")) {
        next();
        LuzinDecl d;
        const Token name_tok = peek();
        d.name = ident();
        declare(name_tok, d.name);
        expect_sym(":");
        refs.push_back({"", peek()});
        d.family = ident();
        refs.back().name = d.family;
        expect_keyword("except");
        d.exception = expr(Vars{true, false});
        expect_keyword("budget");
        const Token two = next();
        if (two.kind != Token::Kind::Int || two.text != "2") throw SyntaxError(two.line, two.column, "'2' in a budget 2^-(...)");
        expect_sym("^");
        expect_sym("-");
        expect_sym("(");
        d.budget_exponent = affine(Vars{true, false});
        expect_sym(")");
        doc.luzin.push_back(std::move(d));
      } else if (is_ident("baire")) {
        next();
        BaireDecl d;
        const Token name_tok = peek();
        d.name = ident();
        declare(name_tok, d.name);
        expect_sym(":");
        refs.push_back({"", peek()});
        d.family = ident();
        refs.back().name = d.family;
        expect_keyword("avoid");
        d.avoid.push_back(point());
        while (is_sym(",")) {
          next();
          d.avoid.push_back(point());
        }
        doc.baire.push_back(std::move(d));
      } else {
        throw SyntaxError(kw.line, kw.column, "a declaration keyword (family, cfamily, luzin, baire)");
      }
    }
    for (const auto& r : refs)
      if (!doc.find_family(r.name)) throw SyntaxError(r.at.line, r.at.column, "the name of a declared family");
    return doc;
  }

  FamilySpec single_family() {
    FamilySpec spec = family_decl();
    if (!at_end()) fail("end of input");
    return spec;
  }

  ExprPtr set_expression() {
    ExprPtr e = expr(Vars{});
    if (!at_end()) fail("end of input");
    return e;
  }

private:
  FamilySpec family_decl() {
    FamilySpec spec;
    spec.cantor = is_ident("cfamily");
    if (!spec.cantor && !is_ident("family")) fail("'family' or 'cfamily'");
    next();
    spec.name = ident();
    expect_sym("(");
    expect_keyword("n");
    if (spec.cantor) {
      expect_sym(",");
      expect_keyword("l");
    }
    expect_sym(")");
    expect_sym("=");
    spec.expr = expr(Vars{true, spec.cantor});
    return spec;
  }

  ExprPtr expr(Vars vars) { return or_expr(vars); }

  ExprPtr or_expr(Vars vars) {
    ExprPtr e = xor_expr(vars);
    while (is_sym("|")) {
      next();
      e = Expr::binary(Expr::Kind::Or, e, xor_expr(vars));
    }
    return e;
  }

  ExprPtr xor_expr(Vars vars) {
    ExprPtr e = and_expr(vars);
    while (is_sym("^")) {
      next();
      e = Expr::binary(Expr::Kind::Xor, e, and_expr(vars));
    }
    return e;
  }

  ExprPtr and_expr(Vars vars) {
    ExprPtr e = unary(vars);
    while (is_sym("&")) {
      next();
      e = Expr::binary(Expr::Kind::And, e, unary(vars));
    }
    return e;
  }

  ExprPtr unary(Vars vars) {
    if (is_sym("!")) {
      next();
      return Expr::negate(unary(vars));
    }
    return primary(vars);
  }

  ExprPtr primary(Vars vars) {
    const Token& t = peek();
    if (t.kind == Token::Kind::Int && (t.text == "0" || t.text == "1")) {
      next();
      return Expr::constant(t.text == "1");
    }
    if (is_ident("bit")) {
      next();
      expect_sym("(");
      Affine k = affine(vars);
      expect_sym(",");
      Affine j = affine(vars);
      expect_sym(")");
      return Expr::bit(k, j);
    }
    if (is_sym("(")) {
      next();
      ExprPtr e = expr(vars);
      expect_sym(")");
      return e;
    }
    fail("an expression (0, 1, bit(...), !, or '(')");
  }

  Affine affine(Vars vars) {
    Affine out;
    add_term(out, vars);
    while (is_sym("+")) {
      next();
      add_term(out, vars);
    }
    if (is_sym("-")) throw IndexError(peek().line, peek().column, "negative coefficients are not allowed");
    if (is_sym("*")) throw IndexError(peek().line, peek().column, "index is not affine");
    return out;
  }

  void add_term(Affine& out, Vars vars) {
    if (is_sym("-")) throw IndexError(peek().line, peek().column, "negative coefficients are not allowed");
    const Token first = next();
    std::uint64_t coef = 1;
    std::string var;
    if (first.kind == Token::Kind::Int) {
      coef = to_int(first);
      if (is_sym("*")) {
        next();
        const Token second = next();
        if (second.kind == Token::Kind::Int) coef *= to_int(second);
        else var = variable(second, vars);
      }
    } else if (first.kind == Token::Kind::Ident) {
      var = variable(first, vars);
      if (is_sym("*")) {
        const Token star = next();
        const Token second = next();
        if (second.kind == Token::Kind::Int) coef = to_int(second);
        else if (second.kind == Token::Kind::Ident && (second.text == "n" || second.text == "l"))
          throw IndexError(star.line, star.column, "index is not affine (product of variables)");
        else throw SyntaxError(second.line, second.column, "an integer coefficient");
      }
    } else {
      throw SyntaxError(first.line, first.column, "an affine index (integer, n, l, or c*n + d)");
    }
    if (var.empty()) out.constant += coef;
    else if (var == "n") out.n_coef += coef;
    else out.l_coef += coef;
  }

  std::string variable(const Token& t, Vars vars) {
    if (t.kind != Token::Kind::Ident || (t.text != "n" && t.text != "l"))
      throw SyntaxError(t.line, t.column, "an affine index (integer, n, l, or c*n + d)");
    if ((t.text == "n" && !vars.n) || (t.text == "l" && !vars.l))
      throw IndexError(t.line, t.column, "variable '" + t.text + "' is not available here");
    return t.text;
  }

  std::uint64_t to_int(const Token& t) {
    if (t.text.size() > 18) throw SyntaxError(t.line, t.column, "an integer below 10^18");
    return std::stoull(t.text);
  }

  PointSpec point() {
    expect_keyword("point");
    expect_sym("{");
    PointSpec p;
    std::map<Coord, bool> assigned;
    if (!is_sym(";")) {
      for (;;) {
        expect_sym("(");
        const Token kt = next();
        if (kt.kind != Token::Kind::Int) throw SyntaxError(kt.line, kt.column, "a coordinate index");
        expect_sym(",");
        const Token jt = next();
        if (jt.kind != Token::Kind::Int) throw SyntaxError(jt.line, jt.column, "a bit index");
        expect_sym(")");
        expect_sym("=");
        const Token bt = next();
        if (bt.kind != Token::Kind::Int || (bt.text != "0" && bt.text != "1"))
          throw SyntaxError(bt.line, bt.column, "a bit value 0 or 1");
        const auto k = to_int(kt), j = to_int(jt);
        if (k > std::numeric_limits<std::uint32_t>::max() || j > std::numeric_limits<std::uint32_t>::max())
          throw SyntaxError(kt.line, kt.column, "a coordinate below 2^32");
        assigned[Coord{static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(j)}] = bt.text == "1";
        if (!is_sym(",")) break;
        next();
      }
    }
    expect_sym(";");
    expect_keyword("tail");
    expect_sym("=");
    if (is_ident("zero")) p = PointSpec::all_zero();
    else if (is_ident("one")) p = PointSpec::all_one();
    else fail("'zero' or 'one'");
    next();
    expect_sym("}");
    for (const auto& [c, v] : assigned) p.set(c, v);
    return p;
  }

  const Token& peek() const { return tokens_[pos_]; }
  Token next() {
    Token t = tokens_[pos_];
    if (t.kind != Token::Kind::End) ++pos_;
    return t;
  }
  bool at_end() const { return peek().kind == Token::Kind::End; }
  bool is_sym(std::string_view s) const { return peek().kind == Token::Kind::Sym && peek().text == s; }
  bool is_ident(std::string_view s) const { return peek().kind == Token::Kind::Ident && peek().text == s; }

  [[noreturn]] void fail(const std::string& expected) const {
    throw SyntaxError(peek().line, peek().column, expected);
  }

  void expect_sym(std::string_view s) {
    if (!is_sym(s)) fail("'" + std::string(s) + "'");
    next();
  }

  void expect_keyword(std::string_view s) {
    if (!is_ident(s)) fail("'" + std::string(s) + "'");
    next();
  }

  std::string ident() {
    if (peek().kind != Token::Kind::Ident) fail("an identifier");
    return next().text;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

} // namespace

Document parse_document(std::string_view text) { return Parser(text).document(text); }

FamilySpec parse_family(std::string_view text) { return Parser(text).single_family(); }

ExprPtr parse_set_expression(std::string_view text) { return Parser(text).set_expression(); }

std::string print(const Expr& e) {
  switch (e.kind) {
  case Expr::Kind::Const: return e.value ? "1" : "0";
  case Expr::Kind::Bit: return "bit(" + e.k.to_string() + ", " + e.j.to_string() + ")";
  case Expr::Kind::Not: return "!" + print(*e.lhs);
  case Expr::Kind::And: return "(" + print(*e.lhs) + " & " + print(*e.rhs) + ")";
  case Expr::Kind::Or: return "(" + print(*e.lhs) + " | " + print(*e.rhs) + ")";
  case Expr::Kind::Xor: return "(" + print(*e.lhs) + " ^ " + print(*e.rhs) + ")";
  }
  return {};
}

std::string print(const FamilySpec& spec) {
  return (spec.cantor ? "cfamily " : "family ") + spec.name + (spec.cantor ? "(n, l) = " : "(n) = ") + print(*spec.expr);
}

std::string print(const Document& doc) {
  std::string out;
  for (const auto& f : doc.families) out += print(f) + "\n";
  for (const auto& d : doc.luzin)
    out += "luzin " + d.name + " : " + d.family + " except " + print(*d.exception) + " budget 2^-(" +
           d.budget_exponent.to_string() + ")\n";
  for (const auto& d : doc.baire) {
    out += "baire " + d.name + " : " + d.family + " avoid ";
    for (std::size_t i = 0; i < d.avoid.size(); ++i) out += (i ? ", " : "") + to_string(d.avoid[i]);
    out += "\n";
  }
  return out;
}

namespace {

Coord atom_coord(const Expr& e, std::uint64_t n, std::uint64_t l) {
  const std::uint64_t k = e.k.eval(n, l), j = e.j.eval(n, l);
  if (k > std::numeric_limits<std::uint32_t>::max() || j > std::numeric_limits<std::uint32_t>::max())
    throw Error("instantiated index exceeds 2^32");
  return Coord{static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(j)};
}

void collect(const Expr& e, std::uint64_t n, std::uint64_t l, std::set<Coord>& out) {
  switch (e.kind) {
  case Expr::Kind::Const: return;
  case Expr::Kind::Bit: out.insert(atom_coord(e, n, l)); return;
  case Expr::Kind::Not: collect(*e.lhs, n, l, out); return;
  default:
    collect(*e.lhs, n, l, out);
    collect(*e.rhs, n, l, out);
  }
}

} // namespace

std::set<Coord> atoms(const Expr& e, std::uint64_t n, std::uint64_t l) {
  std::set<Coord> out;
  collect(e, n, l, out);
  return out;
}

bool eval(const Expr& e, std::uint64_t n, std::uint64_t l, const std::function<bool(const Coord&)>& bit) {
  switch (e.kind) {
  case Expr::Kind::Const: return e.value;
  case Expr::Kind::Bit: return bit(atom_coord(e, n, l));
  case Expr::Kind::Not: return !eval(*e.lhs, n, l, bit);
  case Expr::Kind::And: return eval(*e.lhs, n, l, bit) && eval(*e.rhs, n, l, bit);
  case Expr::Kind::Or: return eval(*e.lhs, n, l, bit) || eval(*e.rhs, n, l, bit);
  case Expr::Kind::Xor: return eval(*e.lhs, n, l, bit) != eval(*e.rhs, n, l, bit);
  }
  return false;
}

ClopenSet to_clopen(const Expr& e, std::uint64_t n, std::uint64_t l) {
  switch (e.kind) {
  case Expr::Kind::Const: return ClopenSet::constant(e.value);
  case Expr::Kind::Bit: return ClopenSet::literal(atom_coord(e, n, l), true);
  case Expr::Kind::Not: return to_clopen(*e.lhs, n, l).complement();
  case Expr::Kind::And: return to_clopen(*e.lhs, n, l) & to_clopen(*e.rhs, n, l);
  case Expr::Kind::Or: return to_clopen(*e.lhs, n, l) | to_clopen(*e.rhs, n, l);
  case Expr::Kind::Xor: return to_clopen(*e.lhs, n, l) ^ to_clopen(*e.rhs, n, l);
  }
  return {};
}

} // namespace fusionlab::dsl
