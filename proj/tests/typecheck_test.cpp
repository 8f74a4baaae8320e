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
#include <gtest/gtest.h>

#include <algorithm>

#include "sortc/oracles.hpp"
#include "sortc/patterns.hpp"
#include "sortc/typecheck.hpp"
#include "support.hpp"

namespace sortc {
namespace {

using test::E;
using test::P;
using test::T;

CheckSession session_for(const char* sig_text, CheckOptions opts = {}) {
  Program p = test::program(sig_text);
  return CheckSession(p.ursig, p.sig, opts);
}

bool has_code(const std::vector<Diagnostic>& ds, const std::string& code) {
  return std::any_of(ds.begin(), ds.end(),
                     [&](const Diagnostic& d) { return d.code == code; });
}

Matches arms_of(const char* case_text) {
  Expr e = E(case_text);
  return e.as<Expr::Case>()->arms;
}

TEST(CtorTypes, ListsEveryTypingInOrder) {
  auto s = session_for(test::kBits);
  EXPECT_EQ(s.ctor_types("One"),
            (std::vector<CtorTyping>{{"One", T("even"), "odd"},
                                     {"One", T("odd"), "even"},
                                     {"One", T("bits_s"), "bits_s"}}));
  auto l = session_for(test::kList);
  EXPECT_EQ(l.ctor_types("Cons"),
            (std::vector<CtorTyping>{{"Cons", T("list"), "list"}}));
  EXPECT_TRUE(l.ctor_types("Missing").empty());
}

TEST(Check, ConstructorPicksAMatchingTyping) {
  auto s = session_for(test::kBits);
  EXPECT_TRUE(s.check({{"b", T("odd")}}, E("One(b)"), T("even")).ok());
  EXPECT_FALSE(s.check({{"b", T("odd")}}, E("One(b)"), T("odd")).ok());
  EXPECT_TRUE(s.check({}, E("Zero(One(Empty(())))"), T("odd")).ok());
}

TEST(Check, SubsumptionFailureIsATypeMismatch) {
  auto s = session_for(test::kNat);
  auto out = s.check({{"x", T("tainted")}}, E("S(x)"), T("untainted"));
  ASSERT_FALSE(out.ok());
  EXPECT_TRUE(has_code(out.errors, "TYPE_MISMATCH"));
  EXPECT_TRUE(s.check({{"x", T("untainted")}}, E("S(x)"), T("untainted")).ok());
}

TEST(Check, LambdaAgainstIntersectionChecksEachConjunct) {
  auto s = session_for(test::kBits);
  EXPECT_TRUE(s.check({}, E("fn x => x"), T("(even -> even) & (odd -> odd)")).ok());
  EXPECT_FALSE(s.check({}, E("fn x => One(x)"), T("(even -> odd) & (odd -> odd)")).ok());
  EXPECT_TRUE(s.check({}, E("fn x => One(x)"), T("(even -> odd) & (odd -> even)")).ok());
}

TEST(Check, CaseOverEmptySortNeedsOnlyNilArm) {
  auto s = session_for(test::kList);
  EXPECT_TRUE(s.check({{"x", T("empty")}}, E("case x of { Nil(u) => () }"), T("unit")).ok());
  auto bad = s.check({{"x", T("list")}}, E("case x of { Nil(u) => () }"), T("unit"));
  EXPECT_TRUE(has_code(bad.errors, "NONEXHAUSTIVE"));
}

TEST(Check, DeepPatternCoversNonempty) {
  auto s = session_for(test::kSig2);
  EXPECT_TRUE(s.check({{"x", T("nonempty")}}, E("case x of { Cons(Nil(())) => () }"),
                      T("unit")).ok());
  EXPECT_FALSE(s.check({{"x", T("list")}}, E("case x of { Cons(Nil(())) => () }"),
                       T("unit")).ok());
}

TEST(Check, UnitAndPairs) {
  auto s = session_for(test::kBits);
  EXPECT_TRUE(s.check({}, E("()"), T("unit")).ok());
  EXPECT_TRUE(s.check({{"b", T("even")}}, E("(b, One(b))"), T("even * odd")).ok());
  EXPECT_FALSE(s.check({{"b", T("even")}}, E("(b, b)"), T("even * odd")).ok());
  EXPECT_TRUE(s.check({{"b", T("even")}}, E("b"), T("even & bits_s")).ok());
}

TEST(Check, UnboundVariable) {
  auto s = session_for(test::kBits);
  auto out = s.check({}, E("y"), T("even"));
  EXPECT_TRUE(has_code(out.errors, "UNBOUND_VAR"));
}

TEST(Synth, Application) {
  auto s = session_for(test::kBits);
  auto out = s.synth({{"f", T("odd -> even")}, {"b", T("odd")}}, E("f b"));
  ASSERT_TRUE(out.ok());
  EXPECT_EQ(out.types, std::vector<Type>{T("even")});
}

TEST(Synth, VariableAndAnnotation) {
  auto s = session_for(test::kBits);
  auto v = s.synth({{"b", T("odd")}}, E("b"));
  ASSERT_TRUE(v.ok());
  EXPECT_EQ(v.types.front(), T("odd"));
  auto a = s.synth({}, E("(fn x => x : even -> even, odd -> odd)"));
  ASSERT_TRUE(a.ok());
  EXPECT_NE(std::find(a.types.begin(), a.types.end(), T("even -> even")), a.types.end());
  EXPECT_NE(std::find(a.types.begin(), a.types.end(), T("odd -> odd")), a.types.end());
}

TEST(Synth, IntersectionIsProjected) {
  auto s = session_for(test::kBits);
  auto out = s.synth({{"f", T("(even -> odd) & (odd -> even)")}, {"b", T("odd")}}, E("f b"));
  ASSERT_TRUE(out.ok());
  EXPECT_EQ(out.types.front(), T("even"));
}

TEST(Synth, LambdaDoesNotSynthesize) {
  auto s = session_for(test::kBits);
  auto out = s.synth({}, E("fn x => x"));
  EXPECT_FALSE(out.ok());
  EXPECT_TRUE(has_code(out.errors, "NO_SYNTH"));
}

TEST(CheckMatches, CnfClauseWithoutAndArmIsExhaustive) {
  auto s = session_for(test::kCnf);
  auto ms = arms_of("case c of { Var(x) => (); Not(l) => (); Or(p) => () }");
  EXPECT_TRUE(s.check_matches({}, T("clause"), P("_"), ms, T("unit")).ok());
}

TEST(CheckMatches, CnfClauseWithoutVarArmReportsAVarWitness) {
  auto s = session_for(test::kCnf);
  auto ms = arms_of("case c of { Or(p) => (); Not(l) => () }");
  // Independent check: every small clause value missed by the arms is a Var.
  std::vector<Expr> missed;
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& v : enum_values(s, T("clause"), n)) {
      bool hit = std::any_of(ms.begin(), ms.end(), [&](const Arm& a) {
        return match_value(a.pattern, v).has_value();
      });
      if (!hit) missed.push_back(v);
    }
  ASSERT_FALSE(missed.empty());
  for (const auto& v : missed) EXPECT_TRUE(v.is<Expr::Ctor>() && v.as<Expr::Ctor>()->ctor == "Var");

  auto out = s.check_matches({}, T("clause"), P("_"), ms, T("unit"));
  ASSERT_EQ(out.errors.size(), 1u);
  const auto& d = out.errors[0];
  EXPECT_EQ(d.code, "NONEXHAUSTIVE");
  ASSERT_NE(d.find_extra("witness"), nullptr);
  EXPECT_EQ(*d.find_extra("witness"), "Var(A())");
  EXPECT_EQ(E("Var(A())"), missed.front());
}

TEST(CheckMatches, ListWithOnlyNilArm) {
  auto s = session_for(test::kList);
  auto out = s.check_matches({}, T("list"), P("_"), arms_of("case x of { Nil(u) => () }"),
                             T("unit"));
  EXPECT_TRUE(has_code(out.errors, "NONEXHAUSTIVE"));
}

TEST(CheckMatches, NestedPatternUnderIntersectionArgument) {
  Program p = test::program(R"(
data bits { Empty : unit; One : bits; Zero : bits }
data box { Box : bits }
block (bits_s of bits, even of bits, odd of bits) {
  even <= bits_s;
  odd <= bits_s;
  Empty : unit -> even;
  One : even -> odd;
  One : odd -> even;
  Zero : even -> even;
  Zero : odd -> odd;
}
block (both of box) { Box : even & bits_s -> both; }
)");
  CheckSession s(p.ursig, p.sig);
  auto ms = arms_of("case b of { Box(Empty()) => (); Box(One(x)) => (); Box(Zero(y)) => () }");
  EXPECT_TRUE(s.check_matches({}, T("both"), P("_"), ms, T("unit")).ok());
  auto partial = arms_of("case b of { Box(One(x)) => () }");
  auto out = s.check_matches({}, T("both"), P("_"), partial, T("unit"));
  EXPECT_TRUE(has_code(out.errors, "NONEXHAUSTIVE"));
}

TEST(CheckMatches, UnreachableArmBodyIsNotChecked) {
  auto s = session_for(test::kList);
  auto ms = arms_of("case x of { Nil(u) => (); Cons(t) => nonsense }");
  EXPECT_TRUE(s.check_matches({}, T("empty"), P("_"), ms, T("unit")).ok());
}

TEST(CheckProgram, ParityAgainstGoals) {
  Program p = test::program(test::kBits, "One(One(Empty(())))");
  EXPECT_TRUE(check_program(p, T("even")).ok());
  auto odd = check_program(p, T("odd"));
  EXPECT_TRUE(has_code(odd.diagnostics, "NO_CTOR_TYPING"));
  EXPECT_TRUE(has_code(check_program(p, std::nullopt).diagnostics, "NO_SYNTH"));
  Program anno = test::program(test::kBits, "(One(One(Empty(()))) : even)");
  auto any = check_program(anno, std::nullopt);
  ASSERT_TRUE(any.ok());
  EXPECT_EQ(any.type, T("even"));
}

TEST(CheckProgram, SignatureErrorsStopTypechecking) {
  Program p = test::program(test::kStar, "nonsense");
  auto out = check_program(p, std::nullopt);
  EXPECT_TRUE(has_code(out.diagnostics, "SUBSORT_BACKPATCH"));
  EXPECT_FALSE(has_code(out.diagnostics, "UNBOUND_VAR"));
}

TEST(CheckProgram, UnannotatedLambdaDoesNotSynthesize) {
  Program p = test::program(test::kBits, "fn x => x");
  EXPECT_TRUE(has_code(check_program(p, std::nullopt).diagnostics, "NO_SYNTH"));
  EXPECT_TRUE(check_program(p, T("even -> even")).ok());
}

TEST(CheckProgram, DiagnosticsAreSorted) {
  Program p = test::program(test::kBits, "(fn x => (One(x), Zero(x)) : even -> even * even)");
  auto out = check_program(p, std::nullopt);
  ASSERT_FALSE(out.ok());
  for (std::size_t i = 1; i < out.diagnostics.size(); ++i) {
    const auto& a = out.diagnostics[i - 1].span;
    const auto& b = out.diagnostics[i].span;
    EXPECT_LE(std::make_pair(a.line, a.col), std::make_pair(b.line, b.col));
  }
}

TEST(CheckProgram, DeclareExtendsForItsBody) {
  Program p = test::program(test::kList,
                            "declare block (subempty of list) { subempty <= empty; "
                            "Nil : unit -> subempty; } in "
                            "(Nil(()) : subempty)");
  EXPECT_TRUE(check_program(p, T("empty")).ok());
  EXPECT_FALSE(check_program(p, T("list -> list")).ok());
  EXPECT_TRUE(has_code(check_program(p, std::nullopt).diagnostics, "NO_SYNTH"));
}

TEST(CheckProgram, CoverageRecordsOneEntryPerCase) {
  Program p = test::program(test::kListOpt,
                            "(fn x => case x of { Cons(y) => (); Nil(u) => () } : list -> unit)");
  CoverageLog log;
  ASSERT_TRUE(check_program(p, std::nullopt, {}, &log).ok());
  ASSERT_EQ(log.size(), 1u);
  EXPECT_TRUE(log[0].exhaustive);
  ASSERT_EQ(log[0].arms.size(), 2u);
  EXPECT_EQ(log[0].arms[0].tracks.size(), 2u);
  CoverageLog opt;
  ASSERT_TRUE(check_program(p, std::nullopt, {.optimize_tracks = true}, &opt).ok());
  EXPECT_EQ(opt[0].arms[0].tracks.size(), 1u);
}

TEST(CheckProgram, MutantAcceptsCovariantDomains) {
  auto std_s = session_for(test::kBits);
  auto mut_s = session_for(test::kBits, {.mode = SubtypeMode::CovariantArrowMutant});
  Context g{{"f", T("even -> bits_s")}};
  EXPECT_FALSE(std_s.check(g, E("f"), T("bits_s -> bits_s")).ok());
  EXPECT_TRUE(mut_s.check(g, E("f"), T("bits_s -> bits_s")).ok());
}

}  // namespace
}  // namespace sortc
