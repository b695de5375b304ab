// Copyright (c) mzia contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mzia/finite_system.hpp"
#include "mzia/schema_logic.hpp"

namespace mzia {

/// The primitive check that a failed verdict bottomed out on.
enum class FailKind {
  RczState,           // state schema of the right state does not refine the left one
  RczAction,          // action schema comparison failed
  MissingTransition,  // the side that must answer a move has no such transition
  DelayMatch,         // left state can let time pass, right state cannot (optional check)
};

std::string fail_kind_string(FailKind k);

/// One step of a failure path: the pair the search stood at and the action it
/// followed to reach the next pair.
struct WitnessStep {
  std::size_t p;  // left-system state
  std::size_t q;  // right-system state
  std::string action;
  friend bool operator==(const WitnessStep&, const WitnessStep&) = default;
};

struct RcOptions {
  RelMode mode = RelMode::Guarded;
  // Require that whenever the left state admits positive time elapse, the
  // right state does too (off by default; the plain procedure ignores delays).
  bool requireDelayMatch = false;
  // Additionally run the converse move-matching direction (every left-system
  // move answered by a right-system move, schema comparisons unchanged) and
  // report it in Verdict::converseHolds.  Diagnostic only; does not affect
  // the main verdict.
  bool checkConverse = false;
  SchemaEnv env = {};
};

struct Verdict {
  bool refines = false;
  RelMode mode = RelMode::Guarded;
  // On failure: a replayable descent from the first initial pair to the pair
  // where the terminal check failed.
  std::vector<WitnessStep> witness;
  std::optional<std::pair<std::size_t, std::size_t>> failPair;
  std::optional<FailKind> failKind;
  std::optional<std::string> failAction;  // for RczAction / MissingTransition
  // Verdicts of every pair the search settled, keyed (left, right).
  std::map<std::pair<std::size_t, std::size_t>, bool> pairResults;
  std::size_t finalizedPairs = 0;  // never exceeds |states(lhs)| * |states(rhs)|
  std::size_t bodyRuns = 0;
  std::optional<bool> converseHolds;
};

/// Decides whether the right system refines the left one: every right-system
/// move is answered by a left-system move with the same action, and the right
/// side's state and action schemas refine the left side's throughout.  The
/// verdict is the disjunction over all pairs of initial states.  Cycles are
/// closed coinductively (a pair currently being explored is assumed to hold);
/// cached positive results remember which assumptions they rest on and are
/// discarded if an assumption later fails, so memoization never changes the
/// outcome.
Verdict rc(const FiniteSystem& lhs, const FiniteSystem& rhs, const RcOptions& opts = {});

/// One pair of the simulation search, with a fresh memo table.
bool rcs(const FiniteSystem& lhs, const FiniteSystem& rhs, std::size_t p, std::size_t q,
         const RcOptions& opts = {});

/// Per-action matching at a pair: true when every right a-successor is
/// answered by some left a-successor (vacuously true when the right state has
/// none), including the action-schema comparison.  Throws ContextError when
/// either system lacks a schema for the action.
bool match_action(const FiniteSystem& lhs, const FiniteSystem& rhs, std::size_t p, std::size_t q,
                  const std::string& a, const RcOptions& opts = {});

}  // namespace mzia
