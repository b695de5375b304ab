// Copyright (c) mzia contributors.
// SPDX-License-Identifier: Apache-2.0
#include "mzia/zonegraph.hpp"

#include <deque>
#include <random>

#include "mzia/errors.hpp"

namespace mzia {
namespace {

Dcm rect_dcm(const Mzia& m, const Location& loc, const std::vector<ZoneConstraint>& cs) {
  return Dcm::from_constraints(m.dcm_vars(), m.dcm_rates(loc), cs);
}

bool satisfies_rect(const std::map<std::string, Rational>& p,
                    const std::vector<ZoneConstraint>& cs) {
  for (const auto& c : cs) {
    if (const auto* lo = std::get_if<LowerBoundC>(&c)) {
      auto it = p.find(lo->var);
      if (it == p.end() || lo->bound.infinite()) continue;
      const bool ok = lo->bound.strict() ? lo->bound.value() < it->second
                                         : lo->bound.value() <= it->second;
      if (!ok) return false;
    } else if (const auto* up = std::get_if<UpperBoundC>(&c)) {
      auto it = p.find(up->var);
      if (it == p.end()) continue;
      if (!up->bound.admits(it->second)) return false;
    }
  }
  return true;
}

void append_bound_atom(std::vector<Atom>& atoms, const std::string& var, CmpOp op, Rational v) {
  atoms.push_back(LinearAtom{{{Expr::num(1), var}}, op, Expr::num(std::move(v))});
}

/// Zone constraints as schema atoms, folding exact lower/upper pairs into
/// equalities so point variables read as "y = 700".
void append_zone_atoms(std::vector<Atom>& atoms, const std::vector<ZoneConstraint>& cs) {
  for (std::size_t k = 0; k < cs.size(); ++k) {
    if (const auto* lo = std::get_if<LowerBoundC>(&cs[k])) {
      if (k + 1 < cs.size()) {
        const auto* up = std::get_if<UpperBoundC>(&cs[k + 1]);
        if (up && up->var == lo->var && !lo->bound.strict() && !up->bound.strict() &&
            lo->bound.value() == up->bound.value()) {
          append_bound_atom(atoms, lo->var, CmpOp::Eq, up->bound.value());
          ++k;
          continue;
        }
      }
      append_bound_atom(atoms, lo->var, lo->bound.strict() ? CmpOp::Gt : CmpOp::Ge,
                        lo->bound.value());
    } else if (const auto* up = std::get_if<UpperBoundC>(&cs[k])) {
      append_bound_atom(atoms, up->var, up->bound.strict() ? CmpOp::Lt : CmpOp::Le,
                        up->bound.value());
    } else {
      const auto& rel = std::get<RelativeC>(cs[k]);
      const std::vector<std::pair<Expr, std::string>> terms{{Expr::num(rel.coeffA), rel.varA},
                                                            {Expr::num(-rel.coeffB), rel.varB}};
      if (!rel.lower.infinite() && !rel.upper.infinite() && !rel.lower.strict() &&
          !rel.upper.strict() && rel.lower.value() == rel.upper.value()) {
        atoms.push_back(LinearAtom{terms, CmpOp::Eq, Expr::num(rel.upper.value())});
        continue;
      }
      if (!rel.lower.infinite())
        atoms.push_back(LinearAtom{terms, rel.lower.strict() ? CmpOp::Gt : CmpOp::Ge,
                                   Expr::num(rel.lower.value())});
      if (!rel.upper.infinite())
        atoms.push_back(LinearAtom{terms, rel.upper.strict() ? CmpOp::Lt : CmpOp::Le,
                                   Expr::num(rel.upper.value())});
    }
  }
}

}  // namespace

std::optional<SymState> post(const Mzia& m, const SymState& s, const TransitionDecl& t,
                             PostTrace* trace) {
  if (t.source != s.location)
    throw ContextError("transition out of " + t.source + " applied at " + s.location);
  const Location& src = m.location(t.source);
  const Location& tgt = m.location(t.target);
  const Dcm inv = rect_dcm(m, src, src.invariant);
  if (trace) {
    trace->source = s.zone;
    trace->invariant = inv;
  }
  const Dcm start = s.zone.intersect(inv);
  if (start.is_empty()) return std::nullopt;
  const Dcm elapsed = start.elapsed();
  if (trace) trace->elapsed = elapsed;
  const Dcm guard = rect_dcm(m, src, t.guard);
  if (trace) trace->guard = guard;
  const Dcm guarded = elapsed.intersect(inv).intersect(guard);
  if (trace) trace->guarded = guarded;
  if (guarded.is_empty()) return std::nullopt;
  const std::vector<std::string> lambda(t.resets.begin(), t.resets.end());
  Dcm result = guarded.reset(lambda, t.resetValues, m.dcm_rates(tgt));
  if (trace) trace->result = result;
  if (result.is_empty()) return std::nullopt;
  return SymState{t.target, std::move(result)};
}

SymState initial_symstate(const Mzia& m) {
  const Location& loc = m.location(m.initialLocation);
  std::vector<ZoneConstraint> cs;
  for (const auto& v : m.continuousVars) {
    auto it = m.initPoint.find(v.name);
    if (it == m.initPoint.end()) throw ContextError("no initial value for variable " + v.name);
    cs.push_back(LowerBoundC{v.name, Bound::leq(it->second)});
    cs.push_back(UpperBoundC{v.name, Bound::leq(it->second)});
  }
  cs.push_back(LowerBoundC{m.clockName, Bound::leq(0)});
  cs.push_back(UpperBoundC{m.clockName, Bound::leq(0)});
  Dcm z = Dcm::from_constraints(m.dcm_vars(), m.dcm_rates(loc), cs);
  if (z.intersect(rect_dcm(m, loc, loc.invariant)).is_empty())
    throw Error("initial valuation violates the invariant of " + loc.name);
  return {m.initialLocation, std::move(z)};
}

ZoneAutomaton build_zone_automaton(const Mzia& m, const BuildOptions& opts) {
  ZoneAutomaton za;
  std::vector<Dcm> clockFree;  // cache of the states' clock-projected zones
  auto add_state = [&](SymState st) {
    if (za.states.size() >= opts.maxStates)
      throw CapacityError("zone automaton exceeds " + std::to_string(opts.maxStates) + " states");
    clockFree.push_back(st.zone.project(m.clockName));
    za.states.push_back(std::move(st));
    return za.states.size() - 1;
  };

  add_state(initial_symstate(m));
  za.initials = {0};
  std::deque<std::size_t> work{0};
  while (!work.empty()) {
    const std::size_t id = work.front();
    work.pop_front();
    const SymState st = za.states[id];  // copy: the vector grows below
    const Location& loc = m.location(st.location);
    if (!rect_dcm(m, loc, loc.invariant).includes(st.zone)) {
      // The entry region leaves the invariant: the construction reports the
      // state as computed but does not step through it.
      za.frontier.insert(id);
      continue;
    }
    for (const auto& t : m.transitions) {
      if (t.source != st.location) continue;
      std::optional<SymState> nxt = post(m, st, t);
      if (!nxt) continue;
      const Dcm cand = nxt->zone.project(m.clockName);
      std::optional<std::size_t> equal, covering;
      for (std::size_t i = 0; i < za.states.size() && !equal; ++i) {
        if (za.states[i].location != nxt->location) continue;
        if (clockFree[i] == cand)
          equal = i;
        else if (!covering && clockFree[i].includes(cand))
          covering = i;
      }
      if (equal) {
        za.transitions.push_back({id, t.action, *equal});
      } else if (covering) {
        if (opts.mode == SubsumptionMode::Redirect) {
          za.transitions.push_back({id, t.action, *covering});
        } else {
          const std::size_t nid = add_state(std::move(*nxt));
          za.transitions.push_back({id, t.action, nid});
          za.subsumed.emplace(nid, *covering);
        }
      } else {
        const std::size_t nid = add_state(std::move(*nxt));
        za.transitions.push_back({id, t.action, nid});
        work.push_back(nid);
      }
    }
  }
  return za;
}

ZSchema synthesize_state_schema(const Mzia& m, const SymState& s) {
  ZSchema out;
  out.decls.push_back({"l", VarKind::Internal, ZType::enums(m.location_names())});
  for (const auto& v : m.continuousVars) out.decls.push_back({v.name, v.kind, ZType::real()});
  for (const auto& d : m.discreteVars) out.decls.push_back(d);
  out.decls.push_back({m.clockName, VarKind::Internal, ZType::real()});
  out.predicate.push_back(CompareAtom{Expr::var("l"), CmpOp::Eq, Expr::label(s.location)});
  append_zone_atoms(out.predicate, s.zone.project(m.clockName).zone_constraints());
  const std::size_t ci = s.zone.index_of(m.clockName);
  const Bound& lo = s.zone.entry(0, ci);
  const Bound& hi = s.zone.entry(ci, 0);
  std::vector<ZoneConstraint> clockCs;
  if (!lo.infinite())
    clockCs.push_back(LowerBoundC{m.clockName, Bound::finite(-lo.value(), lo.strict())});
  if (!hi.infinite()) clockCs.push_back(UpperBoundC{m.clockName, hi});
  append_zone_atoms(out.predicate, clockCs);
  return out;
}

Trajectory simulate(const Mzia& m, std::uint64_t seed, std::size_t steps) {
  Trajectory out;
  out.initialLocation = m.initialLocation;
  out.initialValues = m.initPoint;
  std::map<std::string, Rational> values = m.initPoint;
  std::string loc = m.initialLocation;
  Rational clock = 0;
  std::mt19937_64 rng(seed);

  auto move_point = [&](const Location& L, const Rational& d) {
    std::map<std::string, Rational> p = values;
    for (auto& [v, val] : p) val += L.rates.at(v) * d;
    return p;
  };

  for (std::size_t k = 0; k < steps; ++k) {
    const Location& L = m.location(loc);
    std::optional<Rational> dmax;
    for (const auto& c : L.invariant) {
      const auto* up = std::get_if<UpperBoundC>(&c);
      if (!up || up->bound.infinite()) continue;
      const Rational slack = (up->bound.value() - values.at(up->var)) / L.rates.at(up->var);
      if (!dmax || slack < *dmax) dmax = slack;
    }
    Rational dcap = dmax.value_or(Rational(16));  // unconstrained: bounded horizon
    if (dcap < 0) dcap = 0;

    std::vector<const TransitionDecl*> enabled;
    for (const auto& t : m.transitions) {
      if (t.source != loc) continue;
      if (!satisfies_rect(values, t.guard)) continue;
      std::map<std::string, Rational> landing = values;
      for (const auto& [v, val] : t.resetValues) landing[v] = val;
      if (!satisfies_rect(landing, m.location(t.target).invariant)) continue;
      enabled.push_back(&t);
    }

    if (enabled.empty() && dcap == 0) {
      out.deadlocked = true;
      break;
    }

    const std::size_t pick = static_cast<std::size_t>(rng() % (1 + enabled.size()));
    if (pick == 0) {
      std::size_t j = static_cast<std::size_t>(rng() % 17);
      Rational d = dcap * Rational(static_cast<long long>(j), 16);
      // a strict invariant bound may reject the endpoint; back off the grid
      while (j > 0 && !satisfies_rect(move_point(L, d), L.invariant)) {
        --j;
        d = dcap * Rational(static_cast<long long>(j), 16);
      }
      values = move_point(L, d);
      clock += d;
      TrajStep st;
      st.isDelay = true;
      st.delay = d;
      st.location = loc;
      st.values = values;
      st.clock = clock;
      out.steps.push_back(std::move(st));
    } else {
      const TransitionDecl& t = *enabled[pick - 1];
      for (const auto& [v, val] : t.resetValues) values[v] = val;
      loc = t.target;
      TrajStep st;
      st.action = t.action;
      st.location = loc;
      st.values = values;
      st.clock = clock;
      out.steps.push_back(std::move(st));
    }
  }
  return out;
}

bool trajectory_covered(const Mzia& m, const ZoneAutomaton& za, const Trajectory& t) {
  std::map<std::size_t, Dcm> cache;
  auto clock_free = [&](std::size_t id) -> const Dcm& {
    auto it = cache.find(id);
    if (it == cache.end()) it = cache.emplace(id, za.states[id].zone.project(m.clockName)).first;
    return it->second;
  };

  std::set<std::size_t> cur;
  for (std::size_t i : za.initials)
    if (za.states[i].location == t.initialLocation && clock_free(i).contains_point(t.initialValues))
      cur.insert(za.resolve(i));
  for (const auto& step : t.steps) {
    if (step.isDelay) continue;  // zones absorb time elapse
    std::set<std::size_t> next;
    for (std::size_t id : cur)
      for (const auto& e : za.transitions) {
        if (e.from != id || e.action != step.action) continue;
        if (za.states[e.to].location == step.location &&
            clock_free(e.to).contains_point(step.values))
          next.insert(za.resolve(e.to));
      }
    if (next.empty()) return false;
    cur = next;
  }
  return !cur.empty();
}

FiniteSystem to_finite_system(const Mzia& m, const ZoneAutomaton& za) {
  FiniteSystem fs;
  fs.name = m.name;
  std::vector<std::optional<std::size_t>> remap(za.states.size());
  for (std::size_t i = 0; i < za.states.size(); ++i) {
    if (za.subsumed.count(i)) continue;
    remap[i] = fs.states.size();
    fs.states.push_back("s" + std::to_string(i));
    fs.stateSchemas.push_back(synthesize_state_schema(m, za.states[i]));
    const Location& loc = m.location(za.states[i].location);
    const Dcm inv = rect_dcm(m, loc, loc.invariant);
    const Dcm held = za.states[i].zone.intersect(inv);
    fs.canDelay.push_back(!held.is_empty() && !held.includes(held.elapsed().intersect(inv)));
  }
  for (std::size_t i : za.initials) fs.initials.push_back(*remap[za.resolve(i)]);
  for (const auto& e : za.transitions)
    fs.transitions.push_back({*remap[za.resolve(e.from)], e.action, *remap[za.resolve(e.to)]});
  for (const auto& a : m.actions) fs.actionSchemas.emplace(a.name, a.schema);
  return fs;
}

}  // namespace mzia
