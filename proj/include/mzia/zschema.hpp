// Copyright (c) mzia contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "mzia/linear.hpp"
#include "mzia/rational.hpp"

namespace mzia {

// ── Values and assignments ──────────────────────────────────────────────────

/// A schema-level value: a rational number or an enumeration label.
using Value = std::variant<Rational, std::string>;
using Assignment = std::map<std::string, Value>;

std::string value_string(const Value& v);

/// Shared evaluation context: named rational constants (e.g. a rational
/// binding for pi) and the ceiling on discrete enumeration size.
struct SchemaEnv {
  std::map<std::string, Rational> consts{};
  BigInt maxAssignments = 1000000;
};

// ── Expressions over discrete variables ─────────────────────────────────────

// Immutable arithmetic expression tree.  Variables stand for discrete schema
// variables; evaluation under an assignment yields a Value.  Arithmetic on
// enumeration labels is rejected at evaluation time.
class Expr {
 public:
  enum class Op { Num, Label, Const, Var, Neg, Add, Sub, Mul, Div, FloorDiv, Mod };

  Expr() : Expr(num(0)) {}

  static Expr num(Rational v);
  static Expr label(std::string text);  // enumeration literal
  static Expr constant(std::string name);
  static Expr var(std::string name);
  static Expr neg(Expr e);
  static Expr add(Expr a, Expr b);
  static Expr sub(Expr a, Expr b);
  static Expr mul(Expr a, Expr b);
  static Expr div(Expr a, Expr b);
  static Expr floordiv(Expr a, Expr b);
  static Expr mod(Expr a, Expr b);

  Op op() const;
  const Rational& number() const;    // Num only
  const std::string& name() const;   // Label / Const / Var only
  const Expr& child(std::size_t i) const;
  std::size_t arity() const;

  Value eval(const Assignment& a, const SchemaEnv& env) const;
  void collect_vars(std::set<std::string>& out) const;

  /// Canonical rendering; `decor` maps variable names to their decorated
  /// display form ("x" -> "x?").
  std::string str(const std::map<std::string, std::string>& decor = {}) const;

  bool same_as(const Expr& other) const;  // structural equality

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

// ── Atoms ───────────────────────────────────────────────────────────────────

enum class CmpOp { Lt, Le, Eq, Ne, Ge, Gt };

std::string cmp_string(CmpOp op);

/// Comparison of two discrete expressions.  Labels admit only = and !=.
struct CompareAtom {
  Expr lhs;
  CmpOp op;
  Expr rhs;
};

/// Membership of a discrete expression in an explicit finite set.
struct MemberAtom {
  Expr e;
  std::vector<Value> candidates;
};

/// Parity of an integer-valued discrete expression.
struct ParityAtom {
  Expr e;
  bool even = true;
};

/// Σ coeff·var ≺ rhs over at most two continuous variables.  Coefficients and
/// the right-hand side are expressions over discrete variables; substituting
/// any discrete assignment turns the atom into a concrete linear constraint.
struct LinearAtom {
  std::vector<std::pair<Expr, std::string>> terms;
  CmpOp op = CmpOp::Le;
  Expr rhs;
};

using Atom = std::variant<CompareAtom, MemberAtom, ParityAtom, LinearAtom>;

/// Every variable mentioned anywhere in the atom.
std::set<std::string> atom_vars(const Atom& a);

// ── Types and declarations ──────────────────────────────────────────────────

class ZType {
 public:
  enum class Tag { Enum, IntRange, Real };

  static ZType enums(std::vector<std::string> labels);  // non-empty
  static ZType ints(BigInt lo, BigInt hi);              // lo <= hi
  static ZType real();

  Tag tag() const { return tag_; }
  bool discrete() const { return tag_ != Tag::Real; }
  const std::vector<std::string>& labels() const { return labels_; }
  const BigInt& lo() const { return lo_; }
  const BigInt& hi() const { return hi_; }

  BigInt count() const;                 // number of values; error on Real
  std::vector<Value> values() const;    // all values; error on Real
  bool contains(const Value& v) const;
  std::string str() const;

  friend bool operator==(const ZType&, const ZType&) = default;

 private:
  ZType() = default;
  Tag tag_ = Tag::Real;
  std::vector<std::string> labels_;
  BigInt lo_, hi_;
};

enum class VarKind { Input, Output, Internal };

struct VarDecl {
  std::string name;
  VarKind kind = VarKind::Internal;
  ZType type = ZType::real();
};

/// "x?", "y!", or plain name for internals.
std::string decorated(const VarDecl& d);

// ── Schemas ─────────────────────────────────────────────────────────────────

/// One alternative produced by hiding discrete variables: applies when the
/// listed visible variables take exactly the `given` values, and then
/// contributes the extra atoms.
struct SchemaCase {
  Assignment given;
  std::vector<Atom> atoms;
};

// A Z schema: declarations plus a conjunction of atoms.  `cases`, when
// non-empty, adds one level of disjunction (the schema holds when the
// predicate holds and at least one case applies); it only arises from hiding
// discrete variables and never from parsed source.
struct ZSchema {
  std::vector<VarDecl> decls;
  std::vector<Atom> predicate;
  std::vector<SchemaCase> cases;

  const VarDecl* find(const std::string& name) const;
  const VarDecl& decl(const std::string& name) const;  // throws VariableError
  std::set<std::string> names(VarKind kind) const;
  std::set<std::string> all_names() const;
};

/// Structural well-formedness: unique declaration names, every mentioned
/// variable declared, discrete atoms free of continuous variables, linear
/// atoms over continuous variables with discrete coefficient expressions.
/// Throws on violation.
void check_schema(const ZSchema& s);

/// Truth of the schema under a total assignment of its declared variables.
bool evaluate(const Assignment& a, const ZSchema& s, const SchemaEnv& env = {});

/// Existential projection of the named variables.  Discrete variables are
/// eliminated by enumeration (folding the resulting disjunction into pass-
/// through atoms where possible, case blocks otherwise); continuous variables
/// by exact linear projection.
ZSchema hide(const ZSchema& s, const std::set<std::string>& hidden, const SchemaEnv& env = {});

/// Every total assignment of the discrete variables among `decls`.
/// Throws CapacityError beyond env.maxAssignments.
std::vector<Assignment> discrete_assignments(const std::vector<VarDecl>& decls,
                                             const SchemaEnv& env);

/// The continuous content of the schema under a fixed discrete assignment, as
/// alternatives whose union is the schema's point set there.  An empty result
/// means the schema is unsatisfiable under that assignment.  `disc` must bind
/// at least every discrete declared variable.
std::vector<LinearSystem> ground_continuous(const ZSchema& s, const Assignment& disc,
                                            const SchemaEnv& env = {});

std::string atom_string(const Atom& a, const std::map<std::string, std::string>& decor = {});
std::string schema_string(const ZSchema& s);

}  // namespace mzia
