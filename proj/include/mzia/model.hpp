// Copyright (c) mzia contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "mzia/dcm.hpp"
#include "mzia/zschema.hpp"

namespace mzia {

/// A continuous model variable and the channel it belongs to (input/output/
/// internal), which decides its ? / ! decoration in schemas.
struct VarSpec {
  std::string name;
  VarKind kind = VarKind::Output;
};

struct ActionDecl {
  std::string name;
  VarKind kind = VarKind::Output;
  ZSchema schema;  // operation schema over the model's variables
};

struct Location {
  std::string name;
  /// Flow rate per continuous variable; the clock always flows at rate 1 and
  /// is not listed here.
  std::map<std::string, Rational> rates;
  /// Rectangle invariant: per-variable bounds only (no relative constraints).
  std::vector<ZoneConstraint> invariant;
};

struct TransitionDecl {
  std::string source;
  std::string action;
  std::vector<ZoneConstraint> guard;  // rectangle, same restriction as invariants
  std::set<std::string> resets;       // variables frozen to a fresh value
  std::map<std::string, Rational> resetValues;  // keyed exactly by `resets`
  std::string target;
};

/// A multirate hybrid interface automaton whose actions carry operation
/// schemas.  The structure is plain data; `validate_model` decides whether it
/// is a well-formed model.
struct Mzia {
  std::string name;
  std::vector<VarSpec> continuousVars;
  std::vector<VarDecl> discreteVars;  // discrete model variables, if any
  std::string clockName = "clock";
  std::vector<ActionDecl> actions;
  std::vector<Location> locations;
  std::string initialLocation;
  std::map<std::string, Rational> initPoint;  // one value per continuous variable
  std::vector<TransitionDecl> transitions;
  /// Handwritten replacements for location_state_schema, keyed by location;
  /// only consulted by the schema-compatibility validation pass.
  std::map<std::string, ZSchema> stateSchemaOverrides;

  const Location* find_location(const std::string& n) const;
  const Location& location(const std::string& n) const;  // throws ContextError
  const ActionDecl* find_action(const std::string& n) const;
  const ActionDecl& action(const std::string& n) const;  // throws ContextError
  const VarSpec* find_continuous(const std::string& n) const;

  std::vector<std::string> continuous_names() const;
  std::vector<std::string> location_names() const;

  /// Variable order of the model's zone matrices: continuous variables in
  /// declaration order, then the clock.
  std::vector<std::string> dcm_vars() const;
  /// Flow rates in a location, including the clock at rate 1.
  std::map<std::string, Rational> dcm_rates(const Location& loc) const;
};

struct Finding {
  std::string rule;     // stable identifier, e.g. "initialized-rate"
  std::string context;  // e.g. "transition l0 -> l1 on a0"
  std::string message;
};

struct ValidationReport {
  std::vector<Finding> errors;
  std::vector<Finding> warnings;
  bool ok() const { return errors.empty(); }
};

std::string finding_string(const Finding& f);

/// Structural validation.  Never throws: every problem becomes a report entry.
/// Hard violations (dangling references, non-positive rates, rate changes
/// without a reset, …) are errors; the per-transition schema-compatibility
/// condition is only a warning, because meaningful models routinely constrain
/// an action's outputs away from the source state's current values.
ValidationReport validate_model(const Mzia& m, const SchemaEnv& env = {});

/// Labels on transitions leaving the location.
std::set<std::string> enabled_actions(const Mzia& m, const std::string& location);

/// The model-level state schema of a location: the location variable `l`
/// ranging over all location names, the continuous channels, the discrete
/// variables, the clock, plus the atom pinning `l` to this location.  States
/// of the zone construction refine this with the zone's constraints.
ZSchema location_state_schema(const Mzia& m, const std::string& location);

}  // namespace mzia
