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

#include "sortc/surface.hpp"
#include "support.hpp"

namespace sortc {
namespace {

using test::E;
using test::P;
using test::T;

const char* kSmallest =
    "data d { C : unit }  block (s of d) { C : unit -> s }  in C(())";

TEST(ParseProgram, SmallestProgram) {
  auto p = parse_program(kSmallest);
  ASSERT_TRUE(p.ok());
  EXPECT_EQ(p.value->ursig.datatypes, std::vector<Name>{"d"});
  EXPECT_EQ(p.value->sig.blocks.size(), 1u);
  EXPECT_EQ(p.value->main, Expr::ctor("C", Expr::unit()));
}

TEST(ParseProgram, ParitySignatureAsRepeatedTypings) {
  auto p = parse_program(std::string(test::kBits) + " in One(Empty())");
  ASSERT_TRUE(p.ok());
  const Block& b = p.value->sig.blocks.at(0);
  EXPECT_EQ(b.sorts.size(), 3u);
  int ones = 0;
  for (const auto& item : b.items)
    if (item.ctor() && item.ctor()->ctor == "One") ++ones;
  EXPECT_EQ(ones, 3);
}

TEST(ParseType, AmpersandBindsTighterThanArrow) {
  EXPECT_EQ(T("even -> even & odd -> odd"),
            Type::arrow(T("even"),
                        Type::arrow(Type::intersect(T("even"), T("odd")),
                                    T("odd"))));
  EXPECT_EQ(T("((even -> even) & (odd -> odd))"),
            Type::intersect(T("even -> even"), T("odd -> odd")));
}

TEST(ParseType, StarBindsTighterThanAmpersand) {
  EXPECT_EQ(T("a * b & c * d"),
            Type::intersect(T("(a * b)"), T("(c * d)")));
}

TEST(ParseProgram, IntersectionAnnotationWithEmptyDataSection) {
  auto ok = parse_program("in (fn x => x : ((even -> even) & (odd -> odd)))");
  ASSERT_TRUE(ok.ok());
  auto anno = ok.value->main.as<Expr::Anno>();
  ASSERT_NE(anno, nullptr);
  EXPECT_EQ(anno->types, std::vector<Type>{T("(even -> even) & (odd -> odd)")});
  EXPECT_TRUE(parse_program("in (fn x => x : even -> even & odd -> odd)").ok());
}

TEST(ParseProgram, ReportsParseErrorsWithSpans) {
  std::string text = "data d { C : unit }\nin (fn x => )";
  auto p = parse_program(text);
  ASSERT_FALSE(p.ok());
  ASSERT_FALSE(p.diagnostics.empty());
  EXPECT_EQ(p.diagnostics[0].code, "PARSE");
  EXPECT_EQ(p.diagnostics[0].span.line, 2);
  EXPECT_GE(p.diagnostics[0].span.col, 1);
}

TEST(ParseProgram, DuplicateDatatypeAndConstructor) {
  auto dd = parse_program("data d { C : unit } data d { D : unit } in ()");
  ASSERT_FALSE(dd.ok());
  EXPECT_EQ(dd.diagnostics[0].code, "DUPDATA");
  auto dc = parse_program("data d { C : unit; C : d } in ()");
  ASSERT_FALSE(dc.ok());
  EXPECT_EQ(dc.diagnostics[0].code, "DUPCTOR");
}

TEST(Print, IntersectionOfArrows) {
  EXPECT_EQ(print_type(Type::intersect(T("even -> even"), T("odd -> odd"))),
            "(even -> even) & (odd -> odd)");
}

TEST(Print, OrPattern) {
  Pattern p = Pattern::or_(Pattern::ctor("Not", Pattern::wild()),
                           Pattern::ctor("Var", Pattern::wild()));
  EXPECT_EQ(print_pattern(p), "Not(_) | Var(_)");
}

TEST(Print, TrackAndContext) {
  Track t{{}, Context{{"x", T("empty")}}, T("list")};
  EXPECT_EQ(print_track(t), "x : empty |- list");
  EXPECT_EQ(print_track(Track{{}, {}, T("list")}), "|- list");
}

TEST(RoundTrip, ParseExamples) {
  for (std::string text :
       {std::string(kSmallest),
        std::string(test::kBits) + " in (fn b => One(b) : odd -> even) One(Empty())",
        std::string("in (fn x => x : ((even -> even) & (odd -> odd)))")}) {
    auto p = parse_program(text);
    ASSERT_TRUE(p.ok()) << text;
    auto again = parse_program(print_program(*p.value));
    ASSERT_TRUE(again.ok()) << print_program(*p.value);
    EXPECT_EQ(*again.value, *p.value);
  }
}

TEST(RoundTrip, Types) {
  for (const char* s : {"unit", "even -> odd -> even", "(even -> odd) -> even",
                        "unit * unit * unit", "(unit * unit) * unit",
                        "(even -> even) & (odd -> odd)", "even & odd",
                        "(even & odd) * unit", "unit -> unit * unit",
                        "(unit -> unit) * unit"}) {
    Type t = T(s);
    EXPECT_EQ(T(print_type(t)), t) << s;
  }
}

TEST(RoundTrip, Patterns) {
  for (const char* s : {"_", "!", "()", "Cons(Nil(()))", "(x as _, Nil())",
                        "x as Cons(y as _) | Nil(_)", "(A() | B(), _)"}) {
    Pattern p = P(s);
    EXPECT_EQ(P(print_pattern(p)), p) << s;
  }
}

TEST(RoundTrip, Expressions) {
  for (const char* s :
       {"fn x => fn y => x y", "f (g x)", "(f g) x", "(x, (y, ()))",
        "case x of { Nil() => (); Cons(y as _) => y }",
        "(fn x => x : even -> even, odd -> odd)",
        "declare block (t of d) { t <= s; C : unit -> t } in C(())",
        "case (x : list) of { _ => case y of { _ => () } }"}) {
    Expr e = E(s);
    EXPECT_EQ(E(print_expr(e)), e) << s << " printed as " << print_expr(e);
  }
}

TEST(Signatures, CtorShorthandMeansUnitArgument) {
  EXPECT_EQ(test::S("block (s of d) { C : s; }"),
            test::S("block (s of d) { C : unit -> s; }"));
}

}  // namespace
}  // namespace sortc
