// Copyright (c) mzia contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "mzia/zschema.hpp"

namespace mzia {

// Two readings of the schema preorder's mixed input/output case.  Guarded is
// the default: it restricts the output implication to inputs that the refined
// schema can produce at all, and asks the refined input domain to be contained
// in the abstract one.  Strict is the literal universally-quantified text; the
// two agree whenever inputs or outputs are absent.
enum class RelMode { Guarded, Strict };

/// Validity of "lhs ⇒ rhs" for every assignment of the declared variables
/// (finite discrete types enumerated, continuous variables decided exactly).
/// On failure a violating assignment is stored in *cex when given; variables
/// left unconstrained by the counterexample region default to 0.
bool tv(const ZSchema& lhs, const ZSchema& rhs, const SchemaEnv& env = {},
        Assignment* cex = nullptr);

/// Schema preorder on internal-free schemas with matching input and output
/// variable sets; mismatched sets yield false, internals are a usage error.
bool rcl(const ZSchema& M, const ZSchema& N, RelMode mode = RelMode::Guarded,
         const SchemaEnv& env = {});

/// Schema refinement: requires the refined schema's inputs and outputs to be
/// a superset of the abstract one's, hides everything else on both sides, and
/// defers to rcl.  All failures are false verdicts, never errors.
bool rcz(const ZSchema& S, const ZSchema& T, RelMode mode = RelMode::Guarded,
         const SchemaEnv& env = {});

/// Sampling box for the brute-force oracle's continuous variables.
struct BruteCaps {
  Rational lo = -10;
  Rational hi = 10;
  Rational step = Rational(1, 4);
  BigInt maxCases = 2000000;
};

/// Independent oracle for rcl: evaluates the preorder's quantifier structure
/// directly, point by point, over full discrete enumeration and a grid of
/// continuous values.  Exact whenever every satisfiable continuous region
/// intersects the grid (e.g. integer-bounded rectangle constraints with the
/// default quarter step); used to cross-check rcl on such families.
bool geq_bruteforce(const ZSchema& A, const ZSchema& B, RelMode mode = RelMode::Guarded,
                    const SchemaEnv& env = {}, const BruteCaps& caps = {});

}  // namespace mzia
