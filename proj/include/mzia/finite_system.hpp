// Copyright (c) mzia contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "mzia/zschema.hpp"

namespace mzia {

struct FsEdge {
  std::size_t from;
  std::string action;
  std::size_t to;
  friend bool operator==(const FsEdge&, const FsEdge&) = default;
};

/// A finite transition system whose states and actions carry Z schemas: the
/// common input of the refinement checker, produced either from a zone
/// automaton or directly (e.g. handwritten test systems).
struct FiniteSystem {
  std::string name;
  std::vector<std::string> states;  // display names; indices are the ids
  std::vector<ZSchema> stateSchemas;
  std::vector<std::size_t> initials;
  std::vector<FsEdge> transitions;
  std::map<std::string, ZSchema> actionSchemas;
  // Per state: can time pass at all from its region?  Filled by the zone
  // construction; may be left empty (treated as all-false) for handwritten
  // systems, in which case the optional delay check of the refinement
  // procedure degenerates to a no-op.
  std::vector<bool> canDelay;

  std::vector<std::size_t> successors(std::size_t s, const std::string& a) const {
    std::vector<std::size_t> out;
    for (const auto& e : transitions)
      if (e.from == s && e.action == a) out.push_back(e.to);
    return out;
  }

  /// Actions with at least one outgoing transition from s.
  std::set<std::string> enabled(std::size_t s) const {
    std::set<std::string> out;
    for (const auto& e : transitions)
      if (e.from == s) out.insert(e.action);
    return out;
  }
};

}  // namespace mzia
