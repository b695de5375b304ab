// Copyright (c) mzia contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <set>

#include "mzia/finite_system.hpp"
#include "mzia/model.hpp"

namespace mzia {

/// A symbolic state of the reachability construction: a location plus a
/// non-empty canonical zone over the continuous variables and the clock, at
/// the location's flow rates.  The zone is the *entry* region of the state
/// (post-reset, pre-elapse); it may poke outside the location's invariant,
/// in which case only the inside part can evolve further.
struct SymState {
  std::string location;
  Dcm zone;
};

/// The matrices of one post computation, in pipeline order.  Later fields are
/// unset when the pipeline stops early (empty intersection).
struct PostTrace {
  std::optional<Dcm> source;     // the zone stepped from
  std::optional<Dcm> invariant;  // source-location invariant as a zone
  std::optional<Dcm> elapsed;    // (source ∧ invariant) after arbitrary elapse
  std::optional<Dcm> guard;      // the transition guard as a zone
  std::optional<Dcm> guarded;    // elapsed ∧ invariant ∧ guard
  std::optional<Dcm> result;     // after the reset, at the target's rates
};

/// One discrete step: elapse inside the source invariant, guard, reset.  The
/// result keeps the full image of the reset — the target invariant is not
/// intersected in, so entry regions are reported exactly as computed.
/// Returns nullopt when the action is not enabled from any point of the zone.
std::optional<SymState> post(const Mzia& m, const SymState& s, const TransitionDecl& t,
                             PostTrace* trace = nullptr);

/// Point zone of the initial valuation with clock = 0, at the initial
/// location.  Throws when the point violates the location's invariant.
SymState initial_symstate(const Mzia& m);

enum class SubsumptionMode {
  Leaf,      // keep the covered state as an unexpanded leaf (default)
  Redirect,  // point the edge at the covering state, creating cycles
};

struct BuildOptions {
  SubsumptionMode mode = SubsumptionMode::Leaf;
  std::size_t maxStates = 4096;
};

struct ZaEdge {
  std::size_t from;
  std::string action;
  std::size_t to;
  friend bool operator==(const ZaEdge&, const ZaEdge&) = default;
};

struct ZoneAutomaton {
  std::vector<SymState> states;  // ids are the indices, in discovery order
  std::vector<std::size_t> initials;
  std::vector<ZaEdge> transitions;
  /// Covered leaf -> covering state (Leaf mode only).
  std::map<std::size_t, std::size_t> subsumed;
  /// States whose zone leaves their own invariant; kept but not expanded.
  std::set<std::size_t> frontier;

  /// Follow subsumption links to the state that carries the outgoing edges.
  std::size_t resolve(std::size_t id) const {
    while (true) {
      auto it = subsumed.find(id);
      if (it == subsumed.end()) return id;
      id = it->second;
    }
  }
};

/// Breadth-first worklist exploration from the initial state.  Zones equal to
/// an existing same-location state (clock disregarded) close a cycle; zones
/// included in one are subsumed.  Deterministic: state ids follow discovery
/// order, successors follow transition declaration order.
/// Throws CapacityError beyond opts.maxStates states.
ZoneAutomaton build_zone_automaton(const Mzia& m, const BuildOptions& opts = {});

/// The state's Z schema: location pin, the clock-free zone's constraints, and
/// the clock's interval.
ZSchema synthesize_state_schema(const Mzia& m, const SymState& s);

struct TrajStep {
  bool isDelay = false;
  Rational delay = 0;                      // delay steps only
  std::string action;                      // action steps only
  std::string location;                    // location after the step
  std::map<std::string, Rational> values;  // continuous values after the step
  Rational clock = 0;                      // cumulative time
};

struct Trajectory {
  std::string initialLocation;
  std::map<std::string, Rational> initialValues;
  std::vector<TrajStep> steps;
  bool deadlocked = false;
};

/// Pseudo-random concrete execution, deterministic in the seed.  Each step
/// picks uniformly among one delay move (a random sixteenth of the largest
/// invariant-respecting delay) and every enabled action; an action is enabled
/// when its guard holds and the post-reset point satisfies the target
/// invariant.  Stops early, with the deadlock flag, when nothing is possible.
Trajectory simulate(const Mzia& m, std::uint64_t seed, std::size_t steps);

/// Does the zone automaton admit a path visiting, location- and zone-wise,
/// every post-action concrete state of the trajectory?  Zone membership
/// disregards the clock (the cumulative clock outgrows any single zone on
/// cyclic runs); subsumed leaves stand in for their covering states.
bool trajectory_covered(const Mzia& m, const ZoneAutomaton& za, const Trajectory& t);

/// The finite schema-labelled system of the zone automaton: subsumed leaves
/// are merged into their covering states, everything else keeps its id-based
/// name.
FiniteSystem to_finite_system(const Mzia& m, const ZoneAutomaton& za);

}  // namespace mzia
