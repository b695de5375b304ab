// Copyright (c) mzia contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "mzia/errors.hpp"
#include "mzia/model.hpp"

namespace mzia {

/// One model document; `name` is used in positions and diagnostics
/// (typically the file name).
struct ModelSource {
  std::string name;
  std::string text;
};

/// Syntax error with a 1-based position; the message reproduces the
/// offending line with a caret.
struct ParseError : Error {
  std::size_t line = 0;
  std::size_t column = 0;
  std::string expected;
  std::string found;

  ParseError(const ModelSource& src, std::size_t line, std::size_t column, std::string expected,
             std::string found);
};

/// Parses the model description language into a model.  Syntax only; run
/// validate_model (or load_model below) before trusting the result.
Mzia parse_model(const ModelSource& src);

/// parse_model followed by validate_model; findings land in `report`.
Mzia load_model(const ModelSource& src, ValidationReport& report);

/// Renders a model back to source text.  Parsing the output yields a
/// structurally identical model, and printing is idempotent across the
/// round trip.
std::string print_model(const Mzia& m);

/// The command-line surface: validate / reach / check / simulate.
/// Returns the process exit code: 0 success (or: refines), 1 check found no
/// refinement, 2 usage, parse, or validation errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mzia
