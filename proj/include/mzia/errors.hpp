// Copyright (c) mzia contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace mzia {

// Structural misuse of the library (mismatched variable sets, unknown names,
// malformed arguments).  Semantic outcomes -- empty zones, failed refinements,
// validation findings -- are ordinary return values, never exceptions.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Two matrices/systems over different variable sets or rate vectors.
struct ContextError : Error {
  using Error::Error;
};

// Rates must be strictly positive rationals.
struct RateError : Error {
  using Error::Error;
};

// Reference to a variable that is not declared in the receiving object.
struct VariableError : Error {
  using Error::Error;
};

// A formula left the decidable fragment (too many continuous variables in one
// atom, nonlinear continuous products, and the like).
struct FragmentError : Error {
  using Error::Error;
};

// An enumeration or search exceeded its configured budget.
struct CapacityError : Error {
  using Error::Error;
};

}  // namespace mzia
