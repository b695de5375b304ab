// Copyright (c) mzia contributors.
// SPDX-License-Identifier: Apache-2.0
#include "mzia/bound.hpp"

namespace mzia {

std::string Bound::str() const {
  if (inf_) return "inf";
  std::string s = to_string(value_);
  if (strict_) s += " (strict)";
  return s;
}

}  // namespace mzia
