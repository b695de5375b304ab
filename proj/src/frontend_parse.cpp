// Copyright (c) mzia contributors.
// SPDX-License-Identifier: Apache-2.0
//
// Lexer, recursive-descent parser, and printer for the model description
// language.  Two notational frictions are settled in the lexer: a trailing
// ? or ! sticks to the identifier it decorates (except when ! opens !=), and
// ".." never swallows the dot of a decimal number, so "int 0..5" and "4.25"
// coexist.  Schema predicates over real-typed variables are normalized into
// linear atoms here, at parse time, where positions are still available for
// error reporting.
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mzia/frontend.hpp"
#include "mzia/zschema.hpp"

namespace mzia {

// ── Error formatting ────────────────────────────────────────────────────────

namespace {

std::string source_line(const std::string& text, std::size_t line) {
  std::size_t start = 0;
  for (std::size_t i = 1; i < line; ++i) {
    start = text.find('\n', start);
    if (start == std::string::npos) return "";
    ++start;
  }
  const std::size_t end = text.find('\n', start);
  return text.substr(start, end == std::string::npos ? std::string::npos : end - start);
}

std::string parse_error_message(const ModelSource& src, std::size_t line, std::size_t column,
                                const std::string& expected, const std::string& found) {
  std::ostringstream os;
  os << src.name << ":" << line << ":" << column << ": expected " << expected << ", found ";
  if (found == "end of input")
    os << found;
  else
    os << "'" << found << "'";
  const std::string ln = source_line(src.text, line);
  if (!ln.empty()) {
    os << "\n  " << ln << "\n  ";
    for (std::size_t i = 1; i < column && i <= ln.size(); ++i) os << ' ';
    os << '^';
  }
  return os.str();
}

}  // namespace

ParseError::ParseError(const ModelSource& src, std::size_t errLine, std::size_t errColumn,
                       std::string errExpected, std::string errFound)
    : Error(parse_error_message(src, errLine, errColumn, errExpected, errFound)),
      line(errLine),
      column(errColumn),
      expected(std::move(errExpected)),
      found(std::move(errFound)) {}

// ── Lexer ───────────────────────────────────────────────────────────────────

namespace {

enum class Tok { Ident, Num, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

std::vector<Token> tokenize(const std::string& t) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  auto advance = [&](std::size_t n) {
    for (; n; --n, ++i) {
      if (t[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto alnum = [&](std::size_t j) {
    return j < t.size() && (std::isalnum(static_cast<unsigned char>(t[j])) || t[j] == '_');
  };
  while (i < t.size()) {
    const char c = t[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < t.size() && t[i + 1] == '/') {  // line comment
      while (i < t.size() && t[i] != '\n') advance(1);
      continue;
    }
    Token tok;
    tok.line = line;
    tok.column = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (alnum(j)) ++j;
      if (j < t.size() && t[j] == '?') ++j;
      else if (j < t.size() && t[j] == '!' && !(j + 1 < t.size() && t[j + 1] == '=')) ++j;
      tok.kind = Tok::Ident;
      tok.text = t.substr(i, j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < t.size() && std::isdigit(static_cast<unsigned char>(t[j]))) ++j;
      if (j + 1 < t.size() && t[j] == '.' && std::isdigit(static_cast<unsigned char>(t[j + 1]))) {
        ++j;
        while (j < t.size() && std::isdigit(static_cast<unsigned char>(t[j]))) ++j;
      }
      tok.kind = Tok::Num;
      tok.text = t.substr(i, j - i);
    } else {
      static const char* multi[] = {":=", "<=", ">=", "->", "..", "!="};
      tok.kind = Tok::Punct;
      tok.text = std::string(1, c);
      if (i + 1 < t.size()) {
        const std::string two = t.substr(i, 2);
        for (const char* s : multi)
          if (two == s) {
            tok.text = s;
            break;
          }
      }
    }
    advance(tok.text.size());
    out.push_back(std::move(tok));
  }
  out.push_back({Tok::End, "end of input", line, col});
  return out;
}

/// "x?" -> (x, Input); "x!" -> (x, Output); "x" -> (x, Internal).
std::pair<std::string, VarKind> undecorate(const std::string& s) {
  if (!s.empty() && s.back() == '?') return {s.substr(0, s.size() - 1), VarKind::Input};
  if (!s.empty() && s.back() == '!') return {s.substr(0, s.size() - 1), VarKind::Output};
  return {s, VarKind::Internal};
}

bool is_num(const Expr& e) { return e.op() == Expr::Op::Num; }

// Constant-folding constructors: numeric subtrees collapse as they are built,
// so a parsed model carries canonical expressions and printing round-trips.
Expr fold_neg(const Expr& e) { return is_num(e) ? Expr::num(-e.number()) : Expr::neg(e); }
Expr fold_add(const Expr& a, const Expr& b) {
  if (is_num(a) && is_num(b)) return Expr::num(a.number() + b.number());
  if (is_num(a) && a.number() == 0) return b;
  if (is_num(b) && b.number() == 0) return a;
  return Expr::add(a, b);
}
Expr fold_sub(const Expr& a, const Expr& b) {
  if (is_num(a) && is_num(b)) return Expr::num(a.number() - b.number());
  if (is_num(b) && b.number() == 0) return a;
  return Expr::sub(a, b);
}
Expr fold_mul(const Expr& a, const Expr& b) {
  if (is_num(a) && is_num(b)) return Expr::num(a.number() * b.number());
  if (is_num(a) && a.number() == 1) return b;
  if (is_num(b) && b.number() == 1) return a;
  return Expr::mul(a, b);
}
Expr fold_div(const Expr& a, const Expr& b) {  // caller rejects a zero divisor
  if (is_num(a) && is_num(b)) return Expr::num(a.number() / b.number());
  if (is_num(b) && b.number() == 1) return a;
  return Expr::div(a, b);
}

CmpOp mirror(CmpOp op) {
  switch (op) {
    case CmpOp::Lt: return CmpOp::Gt;
    case CmpOp::Le: return CmpOp::Ge;
    case CmpOp::Ge: return CmpOp::Le;
    case CmpOp::Gt: return CmpOp::Lt;
    default: return op;
  }
}

// ── Parser ──────────────────────────────────────────────────────────────────

class Parser {
 public:
  explicit Parser(const ModelSource& src) : src_(src), toks_(tokenize(src.text)) {}

  Mzia model() {
    Mzia m;
    expect("automaton", "'automaton'");
    m.name = plain(ident("an automaton name"), "an undecorated automaton name");
    expect("{", "'{'");
    while (!accept("}")) {
      if (at("continuous") || at("discrete")) varDecl(m);
      else if (at("action")) actionDecl(m);
      else if (at("location")) locationDecl(m);
      else if (at("trans")) transDecl(m);
      else if (at("init")) initDecl(m);
      else if (at("schema")) schemaDecl();
      else fail("a declaration or '}'");
    }
    if (peek().kind != Tok::End) fail("end of input");  // one automaton per document
    attachSchemas(m);
    return m;
  }

 private:
  const ModelSource& src_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;

  struct PendingSchema {
    bool forState;
    Token nameTok;
    ZSchema schema;
  };
  std::vector<PendingSchema> pending_;

  // ── token plumbing ──
  const Token& peek(std::size_t k = 0) const {
    const std::size_t i = pos_ + k;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  Token next() {
    Token t = peek();
    if (t.kind != Tok::End) ++pos_;
    return t;
  }
  bool at(const char* text) const { return peek().text == text; }
  bool accept(const char* text) {
    if (!at(text)) return false;
    next();
    return true;
  }
  [[noreturn]] void fail_at(const Token& t, const std::string& expected) const {
    throw ParseError(src_, t.line, t.column, expected, t.text);
  }
  [[noreturn]] void fail(const std::string& expected) const { fail_at(peek(), expected); }
  void expect(const char* text, const char* what) {
    if (!accept(text)) fail(what);
  }
  Token ident(const char* what) {
    if (peek().kind != Tok::Ident) fail(what);
    return next();
  }
  /// Rejects a decorated name where only a bare one makes sense.
  std::string plain(const Token& t, const char* what) const {
    auto [name, kind] = undecorate(t.text);
    if (kind != VarKind::Internal) fail_at(t, what);
    return name;
  }

  // ── literals ──
  Rational rationalLit(const char* what = "a rational") {
    const bool neg = accept("-");
    if (peek().kind != Tok::Num) fail(what);
    Rational v = parse_rational(next().text).value();
    if (accept("/")) {
      if (peek().kind != Tok::Num) fail("a denominator");
      const Token d = peek();
      const Rational den = parse_rational(next().text).value();
      if (den == 0) fail_at(d, "a nonzero denominator");
      v /= den;
    }
    return neg ? -v : v;
  }

  BigInt intLit() {
    const bool neg = accept("-");
    if (peek().kind != Tok::Num) fail("an integer");
    const Rational v = parse_rational(peek().text).value();
    if (!is_integer(v)) fail("an integer");
    next();
    const BigInt b = floor_int(v);
    return neg ? BigInt(-b) : b;
  }

  ZType typeLit() {
    if (accept("real")) return ZType::real();
    if (accept("int")) {
      const BigInt lo = intLit();
      expect("..", "'..'");
      const Token hiTok = peek();
      const BigInt hi = intLit();
      if (lo > hi) fail_at(hiTok, "an upper bound not below the lower bound");
      return ZType::ints(lo, hi);
    }
    if (accept("{")) {
      std::vector<std::string> labels;
      labels.push_back(plain(ident("a label"), "an undecorated label"));
      while (accept(",")) labels.push_back(plain(ident("a label"), "an undecorated label"));
      expect("}", "'}'");
      return ZType::enums(std::move(labels));
    }
    fail("a type (real, int lo..hi, or {labels})");
  }

  // ── declarations ──
  void varDecl(Mzia& m) {
    const bool continuous = next().text == "continuous";
    const Token nameTok = ident("a variable name");
    auto [name, kind] = undecorate(nameTok.text);
    ZType type = ZType::real();
    if (accept(":")) {
      const Token typeTok = peek();
      type = typeLit();
      if (continuous && type.tag() != ZType::Tag::Real)
        fail_at(typeTok, "type real for a continuous variable");
    }
    expect(";", "';'");
    if (continuous)
      m.continuousVars.push_back({name, kind});
    else
      m.discreteVars.push_back({name, kind, type});
  }

  void actionDecl(Mzia& m) {
    next();  // action
    const Token nameTok = ident("an action name");
    auto [name, kind] = undecorate(nameTok.text);
    m.actions.push_back({name, kind, {}});
    expect(";", "';'");
  }

  void locationDecl(Mzia& m) {
    next();  // location
    Location loc;
    loc.name = plain(ident("a location name"), "an undecorated location name");
    expect("{", "'{'");
    while (accept("rate")) {
      const Token varTok = ident("a variable name");
      const std::string var = undecorate(varTok.text).first;
      expect("=", "'='");
      const Rational r = rationalLit();
      expect(";", "';'");
      if (!loc.rates.emplace(var, r).second) fail_at(varTok, "a single rate per variable");
    }
    if (accept("inv")) {
      loc.invariant.push_back(rect());
      while (accept(",")) loc.invariant.push_back(rect());
      expect(";", "';'");
    }
    expect("}", "'}'");
    m.locations.push_back(std::move(loc));
  }

  ZoneConstraint rect() {
    if (peek().kind == Tok::Num || at("-")) {  // rational ("<="|"<") varName
      const Rational c = rationalLit();
      bool strict;
      if (accept("<=")) strict = false;
      else if (accept("<")) strict = true;
      else fail("'<=' or '<'");
      const std::string var = undecorate(ident("a variable name").text).first;
      return LowerBoundC{var, Bound::finite(c, strict)};
    }
    const std::string var = undecorate(ident("a variable name").text).first;
    if (accept("<=")) return UpperBoundC{var, Bound::leq(rationalLit())};
    if (accept("<")) return UpperBoundC{var, Bound::less(rationalLit())};
    if (accept(">=")) return LowerBoundC{var, Bound::leq(rationalLit())};
    if (accept(">")) return LowerBoundC{var, Bound::less(rationalLit())};
    fail("a comparison operator");
  }

  void transDecl(Mzia& m) {
    next();  // trans
    TransitionDecl t;
    t.source = undecorate(ident("a location name").text).first;
    expect("->", "'->'");
    t.target = undecorate(ident("a location name").text).first;
    expect("on", "'on'");
    t.action = undecorate(ident("an action name").text).first;
    if (accept("when")) {
      t.guard.push_back(rect());
      while (accept(",")) t.guard.push_back(rect());
    }
    if (accept("reset")) {
      do {
        const Token varTok = ident("a variable name");
        const std::string var = undecorate(varTok.text).first;
        expect(":=", "':='");
        const Rational v = rationalLit();
        if (!t.resets.insert(var).second) fail_at(varTok, "a single reset per variable");
        t.resetValues[var] = v;
      } while (peek().kind == Tok::Ident);
    }
    expect(";", "';'");
    m.transitions.push_back(std::move(t));
  }

  void initDecl(Mzia& m) {
    const Token kw = next();  // init
    if (!m.initialLocation.empty()) fail_at(kw, "a single init block");
    m.initialLocation = undecorate(ident("a location name").text).first;
    expect("{", "'{'");
    do {
      const Token varTok = ident("a variable name");
      const std::string var = undecorate(varTok.text).first;
      expect("=", "'='");
      const Rational v = rationalLit();
      expect(";", "';'");
      if (!m.initPoint.emplace(var, v).second)
        fail_at(varTok, "a single initial value per variable");
    } while (!accept("}"));
  }

  void schemaDecl() {
    next();  // schema
    bool forState;
    if (accept("state")) forState = true;
    else if (accept("action")) forState = false;
    else fail("'state' or 'action'");
    const Token nameTok = ident(forState ? "a location name" : "an action name");
    ZSchema s = schemaLiteral();
    pending_.push_back({forState, nameTok, std::move(s)});
  }

  /// `schema` declarations may precede the thing they attach to, so they are
  /// collected during the pass and resolved once the whole model is read.
  void attachSchemas(Mzia& m) {
    std::set<std::string> seenActions, seenStates;
    for (auto& p : pending_) {
      const std::string name = undecorate(p.nameTok.text).first;
      if (p.forState) {
        if (!m.find_location(name)) fail_at(p.nameTok, "a declared location name");
        if (!seenStates.insert(name).second) fail_at(p.nameTok, "a single schema per location");
        m.stateSchemaOverrides[name] = std::move(p.schema);
      } else {
        ActionDecl* a = nullptr;
        for (auto& ad : m.actions)
          if (ad.name == name) a = &ad;
        if (!a) fail_at(p.nameTok, "a declared action name");
        if (!seenActions.insert(name).second) fail_at(p.nameTok, "a single schema per action");
        a->schema = std::move(p.schema);
      }
    }
  }

  // ── schema literals ──
  ZSchema schemaLiteral() {
    ZSchema s;
    expect("[", "'['");
    if (accept("]")) return s;
    if (!at("|")) {
      literalDecl(s);
      while (accept(";")) literalDecl(s);
    }
    if (accept("|")) {
      if (!accept("true")) {
        atomInto(s);
        while (accept(";")) atomInto(s);
      }
    }
    expect("]", "']'");
    return s;
  }

  void literalDecl(ZSchema& s) {
    const Token nameTok = ident("a variable declaration");
    auto [name, kind] = undecorate(nameTok.text);
    expect(":", "':'");
    ZType ty = typeLit();
    if (s.find(name)) fail_at(nameTok, "a fresh variable name");
    s.decls.push_back({name, kind, std::move(ty)});
  }

  Value valueLit() {
    if (peek().kind == Tok::Ident) return undecorate(next().text).first;
    return rationalLit("a value");
  }

  void atomInto(ZSchema& s) {
    if ((at("even") || at("odd")) && peek(1).text == "(") {
      const bool even = next().text == "even";
      next();  // (
      Expr e = expr(s);
      expect(")", "')'");
      s.predicate.push_back(ParityAtom{std::move(e), even});
      return;
    }
    const Token startTok = peek();
    Expr lhs = expr(s);
    if (accept("in")) {
      expect("{", "'{'");
      MemberAtom ma{std::move(lhs), {}};
      ma.candidates.push_back(valueLit());
      while (accept(",")) ma.candidates.push_back(valueLit());
      expect("}", "'}'");
      s.predicate.push_back(std::move(ma));
      return;
    }
    bool any = false;
    while (std::optional<CmpOp> op = cmpOp()) {
      Expr rhs = expr(s);
      s.predicate.push_back(makeAtom(s, lhs, *op, rhs, startTok));
      lhs = std::move(rhs);  // chains expand pairwise: 0 <= y <= 5
      any = true;
    }
    if (!any) fail("a comparison, 'in', or a parity atom");
  }

  std::optional<CmpOp> cmpOp() {
    if (accept("<=")) return CmpOp::Le;
    if (accept("<")) return CmpOp::Lt;
    if (accept("=")) return CmpOp::Eq;
    if (accept("!=")) return CmpOp::Ne;
    if (accept(">=")) return CmpOp::Ge;
    if (accept(">")) return CmpOp::Gt;
    return std::nullopt;
  }

  // ── expressions ──
  Expr expr(const ZSchema& s) {
    Expr e = term(s);
    while (true) {
      if (accept("+")) e = fold_add(e, term(s));
      else if (accept("-")) e = fold_sub(e, term(s));
      else return e;
    }
  }

  Expr term(const ZSchema& s) {
    Expr e = factor(s);
    while (true) {
      if (accept("*")) {
        e = fold_mul(e, factor(s));
      } else if (accept("/")) {
        const Token dTok = peek();
        const Expr d = factor(s);
        if (is_num(d) && d.number() == 0) fail_at(dTok, "a nonzero divisor");
        e = fold_div(e, d);
      } else if (accept("div")) {
        const Token dTok = peek();
        const Expr d = factor(s);
        if (is_num(d) && d.number() == 0) fail_at(dTok, "a nonzero divisor");
        e = Expr::floordiv(e, d);
      } else if (accept("mod")) {
        const Token dTok = peek();
        const Expr d = factor(s);
        if (is_num(d) && d.number() == 0) fail_at(dTok, "a nonzero divisor");
        e = Expr::mod(e, d);
      } else {
        return e;
      }
    }
  }

  Expr factor(const ZSchema& s) {
    if (accept("-")) return fold_neg(factor(s));
    if (accept("(")) {
      Expr e = expr(s);
      expect(")", "')'");
      return e;
    }
    if (peek().kind == Tok::Num) return Expr::num(parse_rational(next().text).value());
    if (peek().kind == Tok::Ident) {
      auto [name, kind] = undecorate(next().text);
      // Declared names are variable references; anything else is an
      // enumeration label (there is no other bare-identifier value).
      if (s.find(name)) return Expr::var(name);
      return Expr::label(name);
    }
    fail("an expression");
  }

  // ── linear normalization ────────────────────────────────────────────────
  // An atom that mentions a real-typed declared variable becomes a LinearAtom
  // with the continuous variables collected on the left; everything else stays
  // a CompareAtom.  Coefficients must not multiply or divide by continuous
  // subterms, and div/mod never apply to them.

  struct Lin {
    std::map<std::string, Expr> coeff;
    Expr rest = Expr::num(0);
  };

  [[noreturn]] void linfail(const Token& t) const {
    fail_at(t, "a linear constraint over the real-typed variables");
  }

  Lin lin(const ZSchema& s, const Expr& e, const Token& at) {
    Lin l;
    switch (e.op()) {
      case Expr::Op::Num:
      case Expr::Op::Label:
      case Expr::Op::Const:
        l.rest = e;
        return l;
      case Expr::Op::Var: {
        const VarDecl* d = s.find(e.name());
        if (d && !d->type.discrete()) l.coeff.emplace(e.name(), Expr::num(1));
        else l.rest = e;
        return l;
      }
      case Expr::Op::Neg: {
        l = lin(s, e.child(0), at);
        for (auto& [v, c] : l.coeff) c = fold_neg(c);
        l.rest = fold_neg(l.rest);
        return l;
      }
      case Expr::Op::Add:
      case Expr::Op::Sub: {
        const bool add = e.op() == Expr::Op::Add;
        Lin a = lin(s, e.child(0), at);
        Lin b = lin(s, e.child(1), at);
        for (auto& [v, c] : b.coeff) {
          auto it = a.coeff.find(v);
          if (it == a.coeff.end()) a.coeff.emplace(v, add ? c : fold_neg(c));
          else it->second = add ? fold_add(it->second, c) : fold_sub(it->second, c);
        }
        a.rest = add ? fold_add(a.rest, b.rest) : fold_sub(a.rest, b.rest);
        return a;
      }
      case Expr::Op::Mul: {
        Lin a = lin(s, e.child(0), at);
        Lin b = lin(s, e.child(1), at);
        if (!a.coeff.empty() && !b.coeff.empty()) linfail(at);
        if (a.coeff.empty() && !b.coeff.empty()) std::swap(a, b);
        for (auto& [v, c] : a.coeff) c = fold_mul(c, b.rest);
        a.rest = fold_mul(a.rest, b.rest);
        return a;
      }
      case Expr::Op::Div: {
        Lin a = lin(s, e.child(0), at);
        Lin b = lin(s, e.child(1), at);
        if (!b.coeff.empty()) linfail(at);
        for (auto& [v, c] : a.coeff) c = fold_div(c, b.rest);
        a.rest = fold_div(a.rest, b.rest);
        return a;
      }
      case Expr::Op::FloorDiv:
      case Expr::Op::Mod: {
        std::set<std::string> vs;
        e.collect_vars(vs);
        for (const auto& v : vs) {
          const VarDecl* d = s.find(v);
          if (d && !d->type.discrete()) linfail(at);
        }
        l.rest = e;
        return l;
      }
    }
    linfail(at);  // unreachable
  }

  Atom makeAtom(const ZSchema& s, Expr lhs, CmpOp op, Expr rhs, const Token& startTok) {
    auto mentionsReal = [&](const Expr& e) {
      std::set<std::string> vs;
      e.collect_vars(vs);
      for (const auto& v : vs) {
        const VarDecl* d = s.find(v);
        if (d && !d->type.discrete()) return true;
      }
      return false;
    };
    const bool left = mentionsReal(lhs), right = mentionsReal(rhs);
    if (!left && !right) return CompareAtom{std::move(lhs), op, std::move(rhs)};
    if (op == CmpOp::Ne) fail_at(startTok, "a linear comparison (!= excludes real variables)");
    if (!left && right) {  // keep the continuous side on the left
      std::swap(lhs, rhs);
      op = mirror(op);
    }
    Lin a = lin(s, lhs, startTok);
    Lin b = lin(s, rhs, startTok);
    std::map<std::string, Expr> terms = std::move(a.coeff);
    for (auto& [v, c] : b.coeff) {
      auto it = terms.find(v);
      if (it == terms.end()) terms.emplace(v, fold_neg(c));
      else it->second = fold_sub(it->second, c);
    }
    LinearAtom la;
    la.op = op;
    la.rhs = fold_sub(b.rest, a.rest);
    for (auto& [v, c] : terms) {
      if (is_num(c) && c.number() == 0) continue;
      la.terms.push_back({std::move(c), v});
    }
    if (la.terms.empty()) return CompareAtom{Expr::num(0), op, std::move(la.rhs)};
    return la;
  }
};

}  // namespace

Mzia parse_model(const ModelSource& src) { return Parser(src).model(); }

Mzia load_model(const ModelSource& src, ValidationReport& report) {
  Mzia m = parse_model(src);
  report = validate_model(m);
  return m;
}

// ── Printer ─────────────────────────────────────────────────────────────────

namespace {

std::string decorate(const std::string& name, VarKind kind) {
  if (kind == VarKind::Input) return name + "?";
  if (kind == VarKind::Output) return name + "!";
  return name;
}

std::string rect_string(const ZoneConstraint& c) {
  const auto side = [](const std::string& var, const Bound& b, bool upper) {
    if (b.infinite()) throw Error("cannot print an unbounded rectangle constraint on " + var);
    const char* op = upper ? (b.strict() ? " < " : " <= ") : (b.strict() ? " > " : " >= ");
    return var + op + to_string(b.value());
  };
  if (const auto* u = std::get_if<UpperBoundC>(&c)) return side(u->var, u->bound, true);
  if (const auto* lo = std::get_if<LowerBoundC>(&c)) return side(lo->var, lo->bound, false);
  throw Error("cannot print a relative constraint in a rectangle position");
}

}  // namespace

std::string print_model(const Mzia& m) {
  std::ostringstream os;
  os << "automaton " << m.name << " {\n";
  for (const auto& v : m.continuousVars) os << "  continuous " << decorate(v.name, v.kind) << ";\n";
  for (const auto& d : m.discreteVars)
    os << "  discrete " << decorated(d) << ": " << d.type.str() << ";\n";
  for (const auto& a : m.actions) os << "  action " << decorate(a.name, a.kind) << ";\n";
  for (const auto& a : m.actions)
    if (!a.schema.decls.empty() || !a.schema.predicate.empty())
      os << "  schema action " << a.name << " " << schema_string(a.schema) << "\n";
  for (const auto& l : m.locations) {
    os << "  location " << l.name << " {\n";
    for (const auto& [v, r] : l.rates) os << "    rate " << v << " = " << to_string(r) << ";\n";
    if (!l.invariant.empty()) {
      os << "    inv ";
      for (std::size_t i = 0; i < l.invariant.size(); ++i)
        os << (i ? ", " : "") << rect_string(l.invariant[i]);
      os << ";\n";
    }
    os << "  }\n";
  }
  if (!m.initialLocation.empty()) {
    os << "  init " << m.initialLocation << " {";
    for (const auto& [v, r] : m.initPoint) os << " " << v << " = " << to_string(r) << ";";
    os << " }\n";
  }
  for (const auto& t : m.transitions) {
    os << "  trans " << t.source << " -> " << t.target << " on " << t.action;
    if (!t.guard.empty()) {
      os << " when ";
      for (std::size_t i = 0; i < t.guard.size(); ++i)
        os << (i ? ", " : "") << rect_string(t.guard[i]);
    }
    if (!t.resets.empty()) {
      os << " reset";
      for (const auto& v : t.resets) os << " " << v << " := " << to_string(t.resetValues.at(v));
    }
    os << ";\n";
  }
  for (const auto& [loc, sch] : m.stateSchemaOverrides)
    os << "  schema state " << loc << " " << schema_string(sch) << "\n";
  os << "}\n";
  return os.str();
}

}  // namespace mzia
