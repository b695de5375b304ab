// Copyright (c) mzia contributors.
// SPDX-License-Identifier: Apache-2.0
#include "mzia/schema_logic.hpp"

#include <algorithm>

#include "mzia/errors.hpp"

namespace mzia {

namespace {

/// Merged declaration list of both sides, first-seen order; shared names must
/// agree on their type.
std::vector<VarDecl> merged_decls(const ZSchema& a, const ZSchema& b) {
  std::vector<VarDecl> out = a.decls;
  for (const auto& d : b.decls) {
    const auto it = std::find_if(out.begin(), out.end(),
                                 [&](const VarDecl& e) { return e.name == d.name; });
    if (it == out.end()) {
      out.push_back(d);
    } else if (!(it->type == d.type)) {
      throw ContextError("variable " + d.name + " declared with two different types");
    }
  }
  return out;
}

Assignment complete_counterexample(const Assignment& disc, const Point& pt,
                                   const std::vector<VarDecl>& decls) {
  Assignment cex = disc;
  for (const auto& [var, val] : pt) cex[var] = val;
  for (const auto& d : decls)
    if (!cex.count(d.name)) cex[d.name] = Rational(0);  // unconstrained directions
  return cex;
}

}  // namespace

bool tv(const ZSchema& lhs, const ZSchema& rhs, const SchemaEnv& env, Assignment* cex) {
  std::vector<VarDecl> decls = merged_decls(lhs, rhs);
  for (const auto& disc : discrete_assignments(decls, env)) {
    std::vector<LinearSystem> la = ground_continuous(lhs, disc, env);
    std::vector<LinearSystem> lb = ground_continuous(rhs, disc, env);
    for (const auto& sys : la) {
      Point pt;
      if (!covered_by_union(sys, lb, cex ? &pt : nullptr)) {
        if (cex) *cex = complete_counterexample(disc, pt, decls);
        return false;
      }
    }
  }
  return true;
}

namespace {

/// dom(S) at a fixed discrete input assignment: the continuous-input regions
/// obtained by running over all discrete outputs and projecting the
/// continuous outputs away.
std::vector<LinearSystem> input_domain(const ZSchema& s, const Assignment& inputsDisc,
                                       const std::vector<VarDecl>& outputsDisc,
                                       const std::set<std::string>& outputsCont,
                                       const SchemaEnv& env) {
  std::vector<LinearSystem> out;
  std::set<std::string> seen;
  for (const auto& outDisc : discrete_assignments(outputsDisc, env)) {
    Assignment disc = inputsDisc;
    disc.insert(outDisc.begin(), outDisc.end());
    for (const auto& sys : ground_continuous(s, disc, env)) {
      LinearSystem projected = sys.eliminated_all(outputsCont);
      if (!projected.feasible()) continue;
      std::string sig;
      for (const auto& c : projected.constraints()) sig += c.str() + ";";
      if (seen.insert(sig).second) out.push_back(std::move(projected));
    }
  }
  return out;
}

bool rcl_mixed_guarded(const ZSchema& M, const ZSchema& N, const SchemaEnv& env) {
  std::vector<VarDecl> inputsDisc, outputsDisc;
  std::set<std::string> outputsCont;
  for (const auto& d : M.decls) {
    if (d.kind == VarKind::Input && d.type.discrete()) inputsDisc.push_back(d);
    if (d.kind == VarKind::Output) {
      if (d.type.discrete())
        outputsDisc.push_back(d);
      else
        outputsCont.insert(d.name);
    }
  }
  for (const auto& inDisc : discrete_assignments(inputsDisc, env)) {
    std::vector<LinearSystem> domM = input_domain(M, inDisc, outputsDisc, outputsCont, env);
    std::vector<LinearSystem> domN = input_domain(N, inDisc, outputsDisc, outputsCont, env);
    // Refined inputs must be acceptable to the abstract schema.
    for (const auto& d : domM)
      if (!covered_by_union(d, domN)) return false;
    // Inside the refined domain, every abstract behaviour satisfies the
    // refined schema.
    for (const auto& outDisc : discrete_assignments(outputsDisc, env)) {
      Assignment disc = inDisc;
      disc.insert(outDisc.begin(), outDisc.end());
      std::vector<LinearSystem> lm = ground_continuous(M, disc, env);
      std::vector<LinearSystem> ln = ground_continuous(N, disc, env);
      for (const auto& n : ln)
        for (const auto& d : domM)
          if (!covered_by_union(n.intersect(d), lm)) return false;
    }
  }
  return true;
}

}  // namespace

bool rcl(const ZSchema& M, const ZSchema& N, RelMode mode, const SchemaEnv& env) {
  if (!M.names(VarKind::Internal).empty() || !N.names(VarKind::Internal).empty())
    throw ContextError("schema preorder requires internal variables to be hidden first");
  if (M.names(VarKind::Output) != N.names(VarKind::Output)) return false;
  if (M.names(VarKind::Input) != N.names(VarKind::Input)) return false;
  bool hasInputs = !M.names(VarKind::Input).empty();
  bool hasOutputs = !M.names(VarKind::Output).empty();
  if (!hasInputs && !hasOutputs) return true;
  if (!hasInputs) return tv(N, M, env);
  if (!hasOutputs) return tv(M, N, env);
  if (mode == RelMode::Strict) return tv(N, M, env) && tv(M, N, env);
  return rcl_mixed_guarded(M, N, env);
}

bool rcz(const ZSchema& S, const ZSchema& T, RelMode mode, const SchemaEnv& env) {
  const std::set<std::string> si = S.names(VarKind::Input);
  const std::set<std::string> so = S.names(VarKind::Output);
  const std::set<std::string> ti = T.names(VarKind::Input);
  const std::set<std::string> to = T.names(VarKind::Output);
  if (!std::includes(ti.begin(), ti.end(), si.begin(), si.end())) return false;
  if (!std::includes(to.begin(), to.end(), so.begin(), so.end())) return false;
  // Hide S's internals; hide from T everything outside S's visible sets.
  std::set<std::string> hideT;
  for (const auto& d : T.decls)
    if (!si.count(d.name) && !so.count(d.name)) hideT.insert(d.name);
  ZSchema sv = hide(S, S.names(VarKind::Internal), env);
  ZSchema tv_ = hide(T, hideT, env);
  // Hiding T's extra inputs/outputs leaves declarations whose kinds already
  // match S's; the preorder then compares like for like.
  return rcl(sv, tv_, mode, env);
}

// ── Brute-force oracle ──────────────────────────────────────────────────────

namespace {

std::vector<Value> candidate_values(const VarDecl& d, const BruteCaps& caps) {
  if (d.type.discrete()) return d.type.values();
  std::vector<Value> out;
  for (Rational v = caps.lo; v <= caps.hi; v += caps.step) out.emplace_back(v);
  return out;
}

/// All assignments of the given variables from their candidate sets.
std::vector<Assignment> candidate_assignments(const std::vector<const VarDecl*>& ds,
                                              const BruteCaps& caps) {
  std::vector<Assignment> out{Assignment{}};
  for (const auto* d : ds) {
    std::vector<Value> vals = candidate_values(*d, caps);
    std::vector<Assignment> next;
    next.reserve(out.size() * vals.size());
    for (const auto& a : out)
      for (const auto& v : vals) {
        Assignment b = a;
        b[d->name] = v;
        next.push_back(std::move(b));
      }
    out = std::move(next);
  }
  return out;
}

BigInt candidate_count(const std::vector<const VarDecl*>& ds, const BruteCaps& caps) {
  BigInt n = 1;
  for (const auto* d : ds) {
    if (d->type.discrete())
      n *= d->type.count();
    else
      n *= BigInt(((caps.hi - caps.lo) / caps.step).convert_to<BigInt>() + 1);
  }
  return n;
}

Assignment merged(const Assignment& a, const Assignment& b) {
  Assignment m = a;
  m.insert(b.begin(), b.end());
  return m;
}

}  // namespace

bool geq_bruteforce(const ZSchema& A, const ZSchema& B, RelMode mode, const SchemaEnv& env,
                    const BruteCaps& caps) {
  if (!A.names(VarKind::Internal).empty() || !B.names(VarKind::Internal).empty())
    throw ContextError("oracle requires internal variables to be hidden first");
  if (A.names(VarKind::Input) != B.names(VarKind::Input) ||
      A.names(VarKind::Output) != B.names(VarKind::Output))
    throw ContextError("oracle requires matching variable sets");

  std::vector<const VarDecl*> ins, outs;
  for (const auto& d : A.decls)
    (d.kind == VarKind::Input ? ins : outs).push_back(&d);

  if (candidate_count(ins, caps) * candidate_count(outs, caps) > caps.maxCases)
    throw CapacityError("oracle candidate space exceeds the configured cap");

  const bool hasInputs = !ins.empty(), hasOutputs = !outs.empty();
  if (!hasInputs && !hasOutputs) return true;

  std::vector<Assignment> rhos = candidate_assignments(ins, caps);
  std::vector<Assignment> sigmas = candidate_assignments(outs, caps);

  auto inA = [&](const Assignment& full) { return evaluate(full, A, env); };
  auto inB = [&](const Assignment& full) { return evaluate(full, B, env); };

  if (!hasOutputs) {  // inputs only: A's domain lies inside B's
    return std::all_of(rhos.begin(), rhos.end(),
                       [&](const Assignment& r) { return !inA(r) || inB(r); });
  }
  if (!hasInputs) {  // outputs only: B's range lies inside A's
    return std::all_of(sigmas.begin(), sigmas.end(),
                       [&](const Assignment& s) { return !inB(s) || inA(s); });
  }
  if (mode == RelMode::Strict) {
    for (const auto& r : rhos)
      for (const auto& s : sigmas) {
        Assignment full = merged(r, s);
        bool a = inA(full), b = inB(full);
        if (a != b) return false;  // both universal implications must hold
      }
    return true;
  }
  for (const auto& r : rhos) {
    bool inDomA = std::any_of(sigmas.begin(), sigmas.end(),
                              [&](const Assignment& s) { return inA(merged(r, s)); });
    if (!inDomA) continue;
    bool inDomB = std::any_of(sigmas.begin(), sigmas.end(),
                              [&](const Assignment& s) { return inB(merged(r, s)); });
    if (!inDomB) return false;
    for (const auto& s : sigmas) {
      Assignment full = merged(r, s);
      if (inB(full) && !inA(full)) return false;
    }
  }
  return true;
}

}  // namespace mzia
