// Copyright 2026 The hhl-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Plain-text problem instance files.
//
//   # comments run to end of line
//   n      = 1
//   matrix = 1,0   -1/3,0
//            -1/3,0  1,0
//   b      = 0,0   1,0
//
// Fields may appear in any order, each exactly once. The `=` (or `:`) after a
// keyword is optional. Every complex entry is written `re,im`; whitespace
// between tokens is free, including around the comma. Real parts and
// imaginary parts accept decimal/scientific literals or a rational `p/q`.
// `matrix` lists N*N entries in row-major order and `b` lists N entries,
// where N = 2^n.

#include <filesystem>
#include <string>
#include <string_view>

#include "hhl/linsys.hpp"

namespace hhl {

struct ProblemInstance {
    int n = 0;
    Matrix matrix;
    Vector rhs;
};

/// Parses the text of a problem file; throws Error(ParseError) with a
/// line-numbered diagnostic on malformed input. Validation of the system
/// itself (Hermiticity, unit b) is left to validate_system().
ProblemInstance parse_problem(std::string_view text);

ProblemInstance load_problem(const std::filesystem::path &path);

/// Writes an instance in the canonical layout above (full double precision).
std::string format_problem(const ProblemInstance &problem);

}  // namespace hhl
