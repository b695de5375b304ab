// Copyright (c) mzia contributors.
// SPDX-License-Identifier: Apache-2.0
#include "mzia/zschema.hpp"

#include <algorithm>
#include <sstream>

#include "mzia/errors.hpp"

namespace mzia {

std::string value_string(const Value& v) {
  if (const auto* r = std::get_if<Rational>(&v)) return to_string(*r);
  return std::get<std::string>(v);
}

// ── Expr ────────────────────────────────────────────────────────────────────

struct Expr::Node {
  Op op;
  Rational num;
  std::string name;
  std::vector<Expr> kids;
};

Expr Expr::num(Rational v) {
  auto n = std::make_shared<Node>();
  n->op = Op::Num;
  n->num = std::move(v);
  return Expr(std::move(n));
}
Expr Expr::label(std::string text) {
  auto n = std::make_shared<Node>();
  n->op = Op::Label;
  n->name = std::move(text);
  return Expr(std::move(n));
}
Expr Expr::constant(std::string name) {
  auto n = std::make_shared<Node>();
  n->op = Op::Const;
  n->name = std::move(name);
  return Expr(std::move(n));
}
Expr Expr::var(std::string name) {
  auto n = std::make_shared<Node>();
  n->op = Op::Var;
  n->name = std::move(name);
  return Expr(std::move(n));
}

Expr Expr::neg(Expr e) {
  auto n = std::make_shared<Node>();
  n->op = Op::Neg;
  n->kids = {std::move(e)};
  return Expr(std::move(n));
}
#define MZIA_EXPR_BINARY(fn, opname)                \
  Expr Expr::fn(Expr a, Expr b) {                   \
    auto n = std::make_shared<Node>();              \
    n->op = Op::opname;                             \
    n->kids = {std::move(a), std::move(b)};         \
    return Expr(std::move(n));                      \
  }
MZIA_EXPR_BINARY(add, Add)
MZIA_EXPR_BINARY(sub, Sub)
MZIA_EXPR_BINARY(mul, Mul)
MZIA_EXPR_BINARY(div, Div)
MZIA_EXPR_BINARY(floordiv, FloorDiv)
MZIA_EXPR_BINARY(mod, Mod)
#undef MZIA_EXPR_BINARY

Expr::Op Expr::op() const { return n_->op; }
const Rational& Expr::number() const { return n_->num; }
const std::string& Expr::name() const { return n_->name; }
const Expr& Expr::child(std::size_t i) const { return n_->kids.at(i); }
std::size_t Expr::arity() const { return n_->kids.size(); }

namespace {

const Rational& as_num(const Value& v, const std::string& what) {
  if (const auto* r = std::get_if<Rational>(&v)) return *r;
  throw FragmentError("arithmetic on enumeration label in " + what);
}

}  // namespace

Value Expr::eval(const Assignment& a, const SchemaEnv& env) const {
  switch (n_->op) {
    case Op::Num:
      return n_->num;
    case Op::Label:
      return n_->name;
    case Op::Const: {
      auto it = env.consts.find(n_->name);
      if (it == env.consts.end()) throw Error("unknown constant: " + n_->name);
      return it->second;
    }
    case Op::Var: {
      auto it = a.find(n_->name);
      if (it == a.end()) throw VariableError("unbound variable: " + n_->name);
      return it->second;
    }
    case Op::Neg:
      return Rational(-as_num(child(0).eval(a, env), "negation"));
    default:
      break;
  }
  Rational l = as_num(child(0).eval(a, env), "arithmetic");
  Rational r = as_num(child(1).eval(a, env), "arithmetic");
  switch (n_->op) {
    case Op::Add:
      return Rational(l + r);
    case Op::Sub:
      return Rational(l - r);
    case Op::Mul:
      return Rational(l * r);
    case Op::Div:
      if (r == 0) throw Error("division by zero");
      return Rational(l / r);
    case Op::FloorDiv:
      if (r == 0) throw Error("division by zero");
      return Rational(floor_div(l, r));
    case Op::Mod:
      if (r == 0) throw Error("division by zero");
      return mod_floor(l, r);
    default:
      throw Error("malformed expression");
  }
}

void Expr::collect_vars(std::set<std::string>& out) const {
  if (n_->op == Op::Var) out.insert(n_->name);
  for (const auto& k : n_->kids) k.collect_vars(out);
}

namespace {

int precedence(const Expr& e) {
  switch (e.op()) {
    case Expr::Op::Add:
    case Expr::Op::Sub:
      return 1;
    case Expr::Op::Neg:
    case Expr::Op::Mul:
    case Expr::Op::Div:
    case Expr::Op::FloorDiv:
    case Expr::Op::Mod:
      return 2;
    case Expr::Op::Num:
      return 3;  // negative literals render with their sign attached
    default:
      return 4;
  }
}

std::string render(const Expr& e, const std::map<std::string, std::string>& decor, int need) {
  std::string body;
  int mine = precedence(e);
  switch (e.op()) {
    case Expr::Op::Num:
      body = to_string(e.number());
      if (e.number() < 0) mine = 2;
      break;
    case Expr::Op::Const:
    case Expr::Op::Label:
      body = e.name();
      break;
    case Expr::Op::Var: {
      auto it = decor.find(e.name());
      body = it == decor.end() ? e.name() : it->second;
      break;
    }
    case Expr::Op::Neg:
      body = "-" + render(e.child(0), decor, 3);
      break;
    case Expr::Op::Add:
      body = render(e.child(0), decor, 1) + " + " + render(e.child(1), decor, 2);
      break;
    case Expr::Op::Sub:
      body = render(e.child(0), decor, 1) + " - " + render(e.child(1), decor, 2);
      break;
    case Expr::Op::Mul:
      body = render(e.child(0), decor, 2) + "*" + render(e.child(1), decor, 3);
      break;
    case Expr::Op::Div:
      body = render(e.child(0), decor, 2) + "/" + render(e.child(1), decor, 3);
      break;
    case Expr::Op::FloorDiv:
      body = render(e.child(0), decor, 2) + " div " + render(e.child(1), decor, 3);
      break;
    case Expr::Op::Mod:
      body = render(e.child(0), decor, 2) + " mod " + render(e.child(1), decor, 3);
      break;
  }
  return mine < need ? "(" + body + ")" : body;
}

}  // namespace

std::string Expr::str(const std::map<std::string, std::string>& decor) const {
  return render(*this, decor, 0);
}

bool Expr::same_as(const Expr& other) const {
  if (n_->op != other.n_->op) return false;
  switch (n_->op) {
    case Op::Num:
      return n_->num == other.n_->num;
    case Op::Const:
    case Op::Var:
    case Op::Label:
      return n_->name == other.n_->name;
    default:
      if (arity() != other.arity()) return false;
      for (std::size_t i = 0; i < arity(); ++i)
        if (!child(i).same_as(other.child(i))) return false;
      return true;
  }
}

// ── Atoms ───────────────────────────────────────────────────────────────────

std::string cmp_string(CmpOp op) {
  switch (op) {
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Eq: return "=";
    case CmpOp::Ne: return "!=";
    case CmpOp::Ge: return ">=";
    case CmpOp::Gt: return ">";
  }
  return "?";
}

std::set<std::string> atom_vars(const Atom& a) {
  std::set<std::string> out;
  if (const auto* c = std::get_if<CompareAtom>(&a)) {
    c->lhs.collect_vars(out);
    c->rhs.collect_vars(out);
  } else if (const auto* m = std::get_if<MemberAtom>(&a)) {
    m->e.collect_vars(out);
  } else if (const auto* p = std::get_if<ParityAtom>(&a)) {
    p->e.collect_vars(out);
  } else {
    const auto& l = std::get<LinearAtom>(a);
    for (const auto& [coeff, var] : l.terms) {
      coeff.collect_vars(out);
      out.insert(var);
    }
    l.rhs.collect_vars(out);
  }
  return out;
}

// ── ZType ───────────────────────────────────────────────────────────────────

ZType ZType::enums(std::vector<std::string> labels) {
  if (labels.empty()) throw Error("enumeration type needs at least one label");
  ZType t;
  t.tag_ = Tag::Enum;
  t.labels_ = std::move(labels);
  return t;
}
ZType ZType::ints(BigInt lo, BigInt hi) {
  if (lo > hi) throw Error("integer range with lo > hi");
  ZType t;
  t.tag_ = Tag::IntRange;
  t.lo_ = std::move(lo);
  t.hi_ = std::move(hi);
  return t;
}
ZType ZType::real() { return ZType(); }

BigInt ZType::count() const {
  switch (tag_) {
    case Tag::Enum:
      return BigInt(labels_.size());
    case Tag::IntRange:
      return hi_ - lo_ + 1;
    case Tag::Real:
      throw FragmentError("continuous type has no finite enumeration");
  }
  return 0;
}

std::vector<Value> ZType::values() const {
  std::vector<Value> out;
  if (tag_ == Tag::Enum) {
    for (const auto& l : labels_) out.emplace_back(l);
  } else if (tag_ == Tag::IntRange) {
    for (BigInt v = lo_; v <= hi_; ++v) out.emplace_back(Rational(v));
  } else {
    throw FragmentError("continuous type has no finite enumeration");
  }
  return out;
}

bool ZType::contains(const Value& v) const {
  switch (tag_) {
    case Tag::Enum: {
      const auto* s = std::get_if<std::string>(&v);
      return s && std::find(labels_.begin(), labels_.end(), *s) != labels_.end();
    }
    case Tag::IntRange: {
      const auto* r = std::get_if<Rational>(&v);
      return r && is_integer(*r) && numerator(*r) >= lo_ && numerator(*r) <= hi_;
    }
    case Tag::Real:
      return std::holds_alternative<Rational>(v);
  }
  return false;
}

std::string ZType::str() const {
  switch (tag_) {
    case Tag::Enum: {
      std::string s = "{";
      for (std::size_t i = 0; i < labels_.size(); ++i)
        s += (i ? ", " : "") + labels_[i];
      return s + "}";
    }
    case Tag::IntRange: {
      std::ostringstream out;
      out << "int " << lo_ << ".." << hi_;
      return out.str();
    }
    case Tag::Real:
      return "real";
  }
  return "?";
}

std::string decorated(const VarDecl& d) {
  switch (d.kind) {
    case VarKind::Input: return d.name + "?";
    case VarKind::Output: return d.name + "!";
    case VarKind::Internal: return d.name;
  }
  return d.name;
}

// ── ZSchema ─────────────────────────────────────────────────────────────────

const VarDecl* ZSchema::find(const std::string& name) const {
  for (const auto& d : decls)
    if (d.name == name) return &d;
  return nullptr;
}

const VarDecl& ZSchema::decl(const std::string& name) const {
  const VarDecl* d = find(name);
  if (!d) throw VariableError("undeclared schema variable: " + name);
  return *d;
}

std::set<std::string> ZSchema::names(VarKind kind) const {
  std::set<std::string> out;
  for (const auto& d : decls)
    if (d.kind == kind) out.insert(d.name);
  return out;
}

std::set<std::string> ZSchema::all_names() const {
  std::set<std::string> out;
  for (const auto& d : decls) out.insert(d.name);
  return out;
}

namespace {

void check_atom(const ZSchema& s, const Atom& a) {
  if (const auto* l = std::get_if<LinearAtom>(&a)) {
    std::set<std::string> termVars;
    for (const auto& [coeff, var] : l->terms) {
      if (!s.decl(var).type.discrete()) {
        termVars.insert(var);
      } else {
        throw FragmentError("linear term over discrete variable: " + var);
      }
      std::set<std::string> cv;
      coeff.collect_vars(cv);
      for (const auto& v : cv)
        if (!s.decl(v).type.discrete())
          throw FragmentError("coefficient depends on continuous variable: " + v);
    }
    if (termVars.size() > 2)
      throw FragmentError("linear atom over more than two continuous variables");
    std::set<std::string> rv;
    l->rhs.collect_vars(rv);
    for (const auto& v : rv)
      if (!s.decl(v).type.discrete())
        throw FragmentError("bound depends on continuous variable: " + v);
  } else {
    for (const auto& v : atom_vars(a))
      if (!s.decl(v).type.discrete())
        throw FragmentError("discrete atom over continuous variable: " + v);
  }
}

}  // namespace

void check_schema(const ZSchema& s) {
  std::set<std::string> seen;
  for (const auto& d : s.decls)
    if (!seen.insert(d.name).second)
      throw VariableError("duplicate schema variable: " + d.name);
  for (const auto& a : s.predicate) check_atom(s, a);
  for (const auto& c : s.cases) {
    for (const auto& [k, v] : c.given) {
      const VarDecl& d = s.decl(k);
      if (!d.type.discrete()) throw FragmentError("case key over continuous variable: " + k);
      if (!d.type.contains(v)) throw VariableError("case value outside type of " + k);
    }
    for (const auto& a : c.atoms) check_atom(s, a);
  }
}

// ── Evaluation ──────────────────────────────────────────────────────────────

namespace {

bool compare_values(const Value& l, CmpOp op, const Value& r) {
  const auto* ls = std::get_if<std::string>(&l);
  const auto* rs = std::get_if<std::string>(&r);
  if (ls || rs) {
    if (!ls || !rs) throw FragmentError("comparison mixes label and number");
    if (op == CmpOp::Eq) return *ls == *rs;
    if (op == CmpOp::Ne) return *ls != *rs;
    throw FragmentError("ordered comparison of enumeration labels");
  }
  const Rational& a = std::get<Rational>(l);
  const Rational& b = std::get<Rational>(r);
  switch (op) {
    case CmpOp::Lt: return a < b;
    case CmpOp::Le: return a <= b;
    case CmpOp::Eq: return a == b;
    case CmpOp::Ne: return a != b;
    case CmpOp::Ge: return a >= b;
    case CmpOp::Gt: return a > b;
  }
  return false;
}

bool atom_holds(const Atom& atom, const Assignment& a, const SchemaEnv& env) {
  if (const auto* c = std::get_if<CompareAtom>(&atom))
    return compare_values(c->lhs.eval(a, env), c->op, c->rhs.eval(a, env));
  if (const auto* m = std::get_if<MemberAtom>(&atom)) {
    Value v = m->e.eval(a, env);
    return std::find(m->candidates.begin(), m->candidates.end(), v) != m->candidates.end();
  }
  if (const auto* p = std::get_if<ParityAtom>(&atom)) {
    const Rational& v = as_num(p->e.eval(a, env), "parity test");
    if (!is_integer(v)) throw FragmentError("parity of a non-integer value");
    bool evenValue = numerator(v) % 2 == 0;
    return p->even == evenValue;
  }
  const auto& l = std::get<LinearAtom>(atom);
  Rational sum = 0;
  for (const auto& [coeff, var] : l.terms) {
    auto it = a.find(var);
    if (it == a.end()) throw VariableError("unbound variable: " + var);
    sum += as_num(coeff.eval(a, env), "coefficient") * as_num(it->second, "continuous value");
  }
  return compare_values(Value(sum), l.op, l.rhs.eval(a, env));
}

bool case_applies(const SchemaCase& c, const Assignment& a, const SchemaEnv& env) {
  for (const auto& [k, v] : c.given) {
    auto it = a.find(k);
    if (it == a.end()) throw VariableError("unbound variable: " + k);
    if (!(it->second == v)) return false;
  }
  return std::all_of(c.atoms.begin(), c.atoms.end(),
                     [&](const Atom& atom) { return atom_holds(atom, a, env); });
}

}  // namespace

bool evaluate(const Assignment& a, const ZSchema& s, const SchemaEnv& env) {
  for (const auto& d : s.decls) {
    auto it = a.find(d.name);
    if (it == a.end()) throw VariableError("assignment misses variable: " + d.name);
    if (!d.type.contains(it->second))
      throw VariableError("value outside declared type of " + d.name);
  }
  for (const auto& atom : s.predicate)
    if (!atom_holds(atom, a, env)) return false;
  if (s.cases.empty()) return true;
  return std::any_of(s.cases.begin(), s.cases.end(),
                     [&](const SchemaCase& c) { return case_applies(c, a, env); });
}

// ── Enumeration and grounding ───────────────────────────────────────────────

std::vector<Assignment> discrete_assignments(const std::vector<VarDecl>& decls,
                                             const SchemaEnv& env) {
  std::vector<const VarDecl*> ds;
  BigInt total = 1;
  for (const auto& d : decls) {
    if (!d.type.discrete()) continue;
    ds.push_back(&d);
    total *= d.type.count();
    if (total > env.maxAssignments)
      throw CapacityError("discrete enumeration exceeds the configured cap of " +
                          to_string(Rational(env.maxAssignments)) + " assignments");
  }
  std::vector<Assignment> out{Assignment{}};
  for (const auto* d : ds) {
    std::vector<Assignment> next;
    std::vector<Value> vals = d->type.values();
    next.reserve(out.size() * vals.size());
    for (const auto& a : out) {
      for (const auto& v : vals) {
        Assignment b = a;
        b[d->name] = v;
        next.push_back(std::move(b));
      }
    }
    out = std::move(next);
  }
  return out;
}

namespace {

/// Adds the grounded form of one atom to `sys`; returns false when the atom is
/// a discrete fact that fails under the assignment.
bool ground_atom(const Atom& atom, const Assignment& disc, const SchemaEnv& env,
                 LinearSystem& sys) {
  const auto* l = std::get_if<LinearAtom>(&atom);
  if (!l) return atom_holds(atom, disc, env);
  std::map<std::string, Rational> coeffs;
  for (const auto& [coeff, var] : l->terms)
    coeffs[var] += as_num(coeff.eval(disc, env), "coefficient");
  Rational r = as_num(l->rhs.eval(disc, env), "bound");
  std::map<std::string, Rational> negated;
  for (const auto& [v, c] : coeffs) negated[v] = -c;
  switch (l->op) {
    case CmpOp::Le:
      sys.add(lin_leq(std::move(coeffs), std::move(r)));
      break;
    case CmpOp::Lt:
      sys.add(lin_less(std::move(coeffs), std::move(r)));
      break;
    case CmpOp::Ge:
      sys.add(lin_leq(std::move(negated), -r));
      break;
    case CmpOp::Gt:
      sys.add(lin_less(std::move(negated), -r));
      break;
    case CmpOp::Eq:
      sys.add(lin_leq(std::move(coeffs), r));
      sys.add(lin_leq(std::move(negated), -r));
      break;
    case CmpOp::Ne:
      throw FragmentError("continuous disequality is outside the supported fragment");
  }
  return true;
}

}  // namespace

std::vector<LinearSystem> ground_continuous(const ZSchema& s, const Assignment& disc,
                                            const SchemaEnv& env) {
  for (const auto& d : s.decls) {
    if (!d.type.discrete()) continue;
    auto it = disc.find(d.name);
    if (it == disc.end()) throw VariableError("grounding misses variable: " + d.name);
    if (!d.type.contains(it->second))
      throw VariableError("value outside declared type of " + d.name);
  }
  LinearSystem base;
  for (const auto& atom : s.predicate)
    if (!ground_atom(atom, disc, env, base)) return {};
  if (s.cases.empty()) return {base};
  std::vector<LinearSystem> out;
  for (const auto& c : s.cases) {
    bool match = true;
    for (const auto& [k, v] : c.given) {
      auto it = disc.find(k);
      if (it == disc.end()) throw VariableError("grounding misses variable: " + k);
      if (!(it->second == v)) {
        match = false;
        break;
      }
    }
    if (!match) continue;
    LinearSystem sys = base;
    bool alive = true;
    for (const auto& atom : c.atoms)
      if (!ground_atom(atom, disc, env, sys)) {
        alive = false;
        break;
      }
    if (alive) out.push_back(std::move(sys));
  }
  return out;
}

// ── Hiding ──────────────────────────────────────────────────────────────────

namespace {

std::string assignment_repr(const Assignment& a) {
  std::string s;
  for (const auto& [k, v] : a) s += k + "=" + value_string(v) + ";";
  return s;
}

std::vector<Atom> constraints_to_atoms(const LinearSystem& sys) {
  std::vector<Atom> out;
  for (const auto& c : sys.constraints()) {
    LinearAtom a;
    for (const auto& [var, coeff] : c.coeffs) a.terms.emplace_back(Expr::num(coeff), var);
    a.op = c.strict ? CmpOp::Lt : CmpOp::Le;
    a.rhs = Expr::num(c.bound);
    out.push_back(std::move(a));
  }
  return out;
}

std::string atoms_repr(const std::vector<Atom>& atoms) {
  std::string s;
  for (const auto& a : atoms) s += atom_string(a) + ";";
  return s;
}

struct KeyData {
  Assignment key;
  bool truth = false;               // some alternative degenerates to "true"
  std::vector<std::vector<Atom>> residuals;
  std::set<std::string> seen;
};

ZSchema assemble_hidden(ZSchema out, std::map<std::string, KeyData> byKey,
                        const BigInt& fullKeyCount) {
  bool complete = BigInt(byKey.size()) == fullKeyCount;
  if (complete) {
    bool allTrue = std::all_of(byKey.begin(), byKey.end(),
                               [](const auto& kv) { return kv.second.truth; });
    if (allTrue) return out;  // the hidden part is vacuous everywhere
    bool foldable = std::all_of(byKey.begin(), byKey.end(), [](const auto& kv) {
      return !kv.second.truth && kv.second.residuals.size() == 1;
    });
    if (foldable) {
      const std::string& sig = *byKey.begin()->second.seen.begin();
      foldable = std::all_of(byKey.begin(), byKey.end(), [&](const auto& kv) {
        return *kv.second.seen.begin() == sig;
      });
      if (foldable) {
        // Identical residual under every key: plain conjunction, no cases.
        auto& atoms = byKey.begin()->second.residuals.front();
        out.predicate.insert(out.predicate.end(), atoms.begin(), atoms.end());
        return out;
      }
    }
  }
  for (auto& [repr, kd] : byKey) {
    if (kd.truth) {
      out.cases.push_back(SchemaCase{kd.key, {}});
    } else {
      for (auto& atoms : kd.residuals) out.cases.push_back(SchemaCase{kd.key, std::move(atoms)});
    }
  }
  if (out.cases.empty()) {
    // No key survived: the schema is unsatisfiable.
    out.predicate.push_back(CompareAtom{Expr::num(0), CmpOp::Eq, Expr::num(1)});
  }
  return out;
}

void record_residual(std::map<std::string, KeyData>& byKey, Assignment key,
                     const LinearSystem& projected) {
  KeyData& kd = byKey[assignment_repr(key)];
  kd.key = std::move(key);
  if (kd.truth) return;
  std::vector<Atom> atoms = constraints_to_atoms(projected);
  if (atoms.empty()) {
    kd.truth = true;
    kd.residuals.clear();
    kd.seen.clear();
    return;
  }
  std::string sig = atoms_repr(atoms);
  if (kd.seen.insert(sig).second) kd.residuals.push_back(std::move(atoms));
}

}  // namespace

ZSchema hide(const ZSchema& s, const std::set<std::string>& hidden, const SchemaEnv& env) {
  for (const auto& h : hidden) s.decl(h);  // must be declared
  if (hidden.empty()) return s;

  ZSchema out;
  for (const auto& d : s.decls)
    if (!hidden.count(d.name)) out.decls.push_back(d);

  std::set<std::string> hiddenCont;
  for (const auto& h : hidden)
    if (!s.decl(h).type.discrete()) hiddenCont.insert(h);

  if (s.cases.empty()) {
    // Atoms free of hidden variables pass through untouched; only the rest is
    // ground-projected.
    std::vector<const Atom*> touched;
    for (const auto& atom : s.predicate) {
      std::set<std::string> vs = atom_vars(atom);
      bool hit = std::any_of(vs.begin(), vs.end(),
                             [&](const std::string& v) { return hidden.count(v) != 0; });
      if (hit)
        touched.push_back(&atom);
      else
        out.predicate.push_back(atom);
    }
    if (touched.empty()) return out;

    std::set<std::string> touchedDisc;
    for (const auto* atom : touched)
      for (const auto& v : atom_vars(*atom))
        if (s.decl(v).type.discrete()) touchedDisc.insert(v);
    std::vector<VarDecl> enumDecls;
    BigInt fullKeyCount = 1;
    for (const auto& d : s.decls) {
      if (!touchedDisc.count(d.name)) continue;
      enumDecls.push_back(d);
      if (!hidden.count(d.name)) fullKeyCount *= d.type.count();
    }

    std::map<std::string, KeyData> byKey;
    for (const auto& disc : discrete_assignments(enumDecls, env)) {
      LinearSystem sys;
      bool alive = true;
      for (const auto* atom : touched)
        if (!ground_atom(*atom, disc, env, sys)) {
          alive = false;
          break;
        }
      if (!alive) continue;
      LinearSystem projected = sys.eliminated_all(hiddenCont);
      if (!projected.feasible()) continue;
      Assignment key;
      for (const auto& [k, v] : disc)
        if (!hidden.count(k)) key[k] = v;
      record_residual(byKey, std::move(key), projected);
    }
    return assemble_hidden(std::move(out), std::move(byKey), fullKeyCount);
  }

  // General path (input already carries cases): enumerate all discrete
  // variables and rebuild the case structure from scratch.
  std::vector<VarDecl> discDecls;
  BigInt fullKeyCount = 1;
  for (const auto& d : s.decls) {
    if (!d.type.discrete()) continue;
    discDecls.push_back(d);
    if (!hidden.count(d.name)) fullKeyCount *= d.type.count();
  }
  std::map<std::string, KeyData> byKey;
  for (const auto& disc : discrete_assignments(discDecls, env)) {
    Assignment key;
    for (const auto& [k, v] : disc)
      if (!hidden.count(k)) key[k] = v;
    for (const auto& sys : ground_continuous(s, disc, env)) {
      LinearSystem projected = sys.eliminated_all(hiddenCont);
      if (!projected.feasible()) continue;
      record_residual(byKey, key, projected);
    }
  }
  return assemble_hidden(std::move(out), std::move(byKey), fullKeyCount);
}

// ── Rendering ───────────────────────────────────────────────────────────────

namespace {

std::string term_string(const Expr& coeff, const std::string& var,
                        const std::map<std::string, std::string>& decor) {
  auto it = decor.find(var);
  std::string v = it == decor.end() ? var : it->second;
  if (coeff.op() == Expr::Op::Num && coeff.number() == 1) return v;
  return render(coeff, decor, 3) + "*" + v;
}

}  // namespace

std::string atom_string(const Atom& a, const std::map<std::string, std::string>& decor) {
  if (const auto* c = std::get_if<CompareAtom>(&a))
    return c->lhs.str(decor) + " " + cmp_string(c->op) + " " + c->rhs.str(decor);
  if (const auto* m = std::get_if<MemberAtom>(&a)) {
    std::string s = m->e.str(decor) + " in {";
    for (std::size_t i = 0; i < m->candidates.size(); ++i)
      s += (i ? ", " : "") + value_string(m->candidates[i]);
    return s + "}";
  }
  if (const auto* p = std::get_if<ParityAtom>(&a))
    return std::string(p->even ? "even(" : "odd(") + p->e.str(decor) + ")";
  const auto& l = std::get<LinearAtom>(a);
  std::string s;
  for (std::size_t i = 0; i < l.terms.size(); ++i)
    s += (i ? " + " : "") + term_string(l.terms[i].first, l.terms[i].second, decor);
  if (l.terms.empty()) s = "0";
  return s + " " + cmp_string(l.op) + " " + l.rhs.str(decor);
}

std::string schema_string(const ZSchema& s) {
  std::map<std::string, std::string> decor;
  for (const auto& d : s.decls) decor[d.name] = decorated(d);
  std::string out = "[";
  for (std::size_t i = 0; i < s.decls.size(); ++i)
    out += (i ? "; " : "") + decorated(s.decls[i]) + ": " + s.decls[i].type.str();
  if (!s.predicate.empty() || !s.cases.empty()) {
    out += " | ";
    for (std::size_t i = 0; i < s.predicate.size(); ++i)
      out += (i ? "; " : "") + atom_string(s.predicate[i], decor);
  }
  if (!s.cases.empty()) {
    if (!s.predicate.empty()) out += "; ";
    out += "case";
    for (std::size_t i = 0; i < s.cases.size(); ++i) {
      out += i ? " or {" : " {";
      bool first = true;
      for (const auto& [k, v] : s.cases[i].given) {
        out += (first ? "" : ", ") + (decor.count(k) ? decor.at(k) : k) + " = " + value_string(v);
        first = false;
      }
      out += ": ";
      for (std::size_t j = 0; j < s.cases[i].atoms.size(); ++j)
        out += (j ? "; " : "") + atom_string(s.cases[i].atoms[j], decor);
      if (s.cases[i].atoms.empty()) out += "true";
      out += "}";
    }
  }
  return out + "]";
}

}  // namespace mzia
