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

#ifndef SORTC_TESTS_SUPPORT_HPP_
#define SORTC_TESTS_SUPPORT_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

#include "sortc/signatures.hpp"
#include "sortc/surface.hpp"
#include "sortc/syntax.hpp"

namespace sortc::test {

// Signatures shared by the unit tests, written in the surface syntax.

inline constexpr const char* kBits = R"(
data bits { Empty : unit; One : bits; Zero : bits }
block (bits_s of bits, even of bits, odd of bits) {
  even <= bits_s;
  odd <= bits_s;
  Empty : unit -> even;
  One : even -> odd;
  One : odd -> even;
  Zero : even -> even;
  Zero : odd -> odd;
  One : bits_s -> bits_s;
  Zero : bits_s -> bits_s;
  Empty : unit -> bits_s;
}
)";

inline constexpr const char* kList = R"(
data list { Nil : unit; Cons : list }
block (list of list, empty of list) {
  empty <= list;
  Nil : unit -> empty;
  Cons : list -> list;
}
)";

inline constexpr const char* kSubempty = R"(
block (subempty of list) {
  subempty <= empty;
  Nil : unit -> subempty;
}
)";

// Cons has two typings into list.
inline constexpr const char* kListOpt = R"(
data list { Nil : unit; Cons : list }
block (list of list, empty of list) {
  empty <= list;
  Nil : unit -> empty;
  Cons : empty -> list;
  Cons : list -> list;
}
)";

inline constexpr const char* kSig2 = R"(
data list { Nil : unit; Cons : list }
block (list of list, empty of list, nonempty of list) {
  empty <= list;
  nonempty <= list;
  Nil : unit -> empty;
  Cons : empty -> nonempty;
}
)";

inline constexpr const char* kNat = R"(
data nat { Z : unit; S : nat }
block (nat_s of nat, tainted of nat, untainted of nat) {
  tainted <= nat_s;
  untainted <= nat_s;
  Z : unit -> nat_s;
  S : nat_s -> nat_s;
  Z : unit -> tainted;
  S : tainted -> tainted;
  Z : unit -> untainted;
  S : untainted -> untainted;
}
)";

inline constexpr const char* kCnf = R"(
data sym { A : unit; B : unit }
data formula { Var : sym; Not : formula; Or : formula * formula; And : formula * formula }
block (symbol of sym, cnf of formula, clause of formula, literal of formula, pos_literal of formula) {
  A : unit -> symbol;
  B : unit -> symbol;
  pos_literal <= literal;
  literal <= clause;
  clause <= cnf;
  Var : symbol -> pos_literal;
  Not : pos_literal -> literal;
  Or : clause * clause -> clause;
  And : cnf * cnf -> cnf;
}
)";

inline constexpr const char* kStar = R"(
data d { C : unit }
block (s1 of d, s2 of d) {
  C : unit -> s1;
  C : unit -> s2;
}
block (t of d) {
  s1 <= t;
  t <= s2;
}
)";

template <typename T>
T must(Parsed<T> p, std::string_view text) {
  if (!p.ok()) {
    std::string why = p.diagnostics.empty() ? "?" : p.diagnostics[0].message;
    throw std::runtime_error("cannot parse '" + std::string(text) + "': " + why);
  }
  return std::move(*p.value);
}

inline Type T(std::string_view s) { return must(parse_type(s), s); }
inline UType U(std::string_view s) { return must(parse_utype(s), s); }
inline Pattern P(std::string_view s) { return must(parse_pattern(s), s); }
inline Expr E(std::string_view s) { return must(parse_expr(s), s); }
inline Signature S(std::string_view s) { return must(parse_signature(s), s); }

/** A whole program; `main` defaults to unit. */
inline Program program(std::string_view sig_text, std::string_view main = "()") {
  std::string text = std::string(sig_text) + "\nin " + std::string(main);
  return must(parse_program(text), text);
}

}  // namespace sortc::test

#endif  // SORTC_TESTS_SUPPORT_HPP_
