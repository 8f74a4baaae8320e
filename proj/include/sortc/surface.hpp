// Copyright 2026 The sortc Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SORTC_SURFACE_HPP_
#define SORTC_SURFACE_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sortc/diagnostic.hpp"
#include "sortc/syntax.hpp"

namespace sortc {

struct Program {
  UnrefinedSignature ursig;
  Signature sig;
  Expr main;

  friend bool operator==(const Program&, const Program&) = default;
};

template <typename T>
struct Parsed {
  std::optional<T> value;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return value.has_value(); }
};

// Constructor names start with an upper-case letter; every other
// identifier (sorts, datatypes, variables) starts lower-case or with '_'.

Parsed<Program> parse_program(std::string_view text);
Parsed<Type> parse_type(std::string_view text);
Parsed<UType> parse_utype(std::string_view text);
Parsed<Pattern> parse_pattern(std::string_view text);
Parsed<Expr> parse_expr(std::string_view text);
/** One or more `block (...) { ... }` declarations. */
Parsed<Signature> parse_signature(std::string_view text);

std::string print_program(const Program& p);
std::string print_type(const Type& a);
std::string print_utype(const UType& t);
std::string print_pattern(const Pattern& p);
std::string print_expr(const Expr& e);
std::string print_block(const Block& b);
std::string print_signature(const Signature& sig);
std::string print_context(const Context& g);
/** `x : empty |- list`, or `|- list` when nothing is bound. */
std::string print_track(const Track& t);

}  // namespace sortc

#endif  // SORTC_SURFACE_HPP_
