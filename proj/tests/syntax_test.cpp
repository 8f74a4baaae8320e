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

#include "sortc/syntax.hpp"
#include "support.hpp"

namespace sortc {
namespace {

using test::E;
using test::T;

const Expr kUnit = Expr::unit();
const Expr kNil = Expr::ctor("Nil", Expr::unit());

TEST(IsValue, LambdaIsAValue) {
  EXPECT_TRUE(is_value(Expr::lam("x", Expr::var("x"))));
}

TEST(IsValue, RedexIsNotAValue) {
  EXPECT_FALSE(is_value(Expr::app(Expr::lam("x", Expr::var("x")), kUnit)));
}

TEST(IsValue, AnnotatedValueIsAValue) {
  EXPECT_TRUE(is_value(Expr::anno(kNil, {Type::sort("empty")})));
}

TEST(IsValue, StructuralCases) {
  EXPECT_TRUE(is_value(Expr::pair(kUnit, kNil)));
  EXPECT_TRUE(is_value(Expr::var("x")));
  EXPECT_FALSE(is_value(Expr::ctor("Cons", E("(fn x => x) Nil()"))));
  EXPECT_FALSE(is_value(E("case Nil() of { _ => () }")));
}

TEST(Subst, ReplacesFreeVariable) {
  EXPECT_EQ(subst({{"x", kUnit}}, Expr::var("x")), kUnit);
}

TEST(Subst, LeavesShadowedBinderAlone) {
  Expr id = Expr::lam("x", Expr::var("x"));
  EXPECT_EQ(subst({{"x", kUnit}}, id), id);
}

TEST(Subst, ReplacesEveryOccurrence) {
  Expr e = Expr::pair(Expr::var("y"), Expr::var("y"));
  EXPECT_EQ(subst({{"y", kNil}}, e), Expr::pair(kNil, kNil));
}

TEST(Subst, EmptySubstitutionIsIdentity) {
  Expr e = E("fn x => case x of { y as Cons(_) => (y, z) ; _ => w }");
  EXPECT_EQ(subst({}, e), e);
}

TEST(Subst, AsVariablesShadowInArms) {
  Expr e = E("case v of { x as _ => x ; _ => x }");
  Expr out = subst({{"x", kUnit}}, e);
  EXPECT_EQ(out, E("case v of { x as _ => x ; _ => () }"));
}

TEST(Subst, AvoidsCapture) {
  // y is free in the replacement, so the binder must be renamed.
  Expr e = Expr::lam("y", Expr::pair(Expr::var("x"), Expr::var("y")));
  Expr out = subst({{"x", Expr::var("y")}}, e);
  auto lam = out.as<Expr::Lam>();
  ASSERT_NE(lam, nullptr);
  EXPECT_NE(lam->var, "y");
  EXPECT_EQ(out, Expr::lam(lam->var, Expr::pair(Expr::var("y"),
                                                Expr::var(lam->var))));
}

TEST(Subst, SequentialMatchesSimultaneousOnDisjointDomains) {
  Expr e = E("(x, fn z => (y, x))");
  Expr seq = subst({{"y", kNil}}, subst({{"x", kUnit}}, e));
  Expr sim = subst({{"x", kUnit}, {"y", kNil}}, e);
  EXPECT_EQ(seq, sim);
}

TEST(Erase, DropsAnnotations) {
  EXPECT_EQ(erase(Expr::anno(kUnit, {Type::unit()})), kUnit);
  EXPECT_EQ(erase(Expr::lam("x", Expr::anno(Expr::var("x"), {T("even")}))),
            Expr::lam("x", Expr::var("x")));
  EXPECT_EQ(erase(kUnit), kUnit);
}

TEST(Erase, ValuesStayValues) {
  Expr v = Expr::anno(Expr::pair(kNil, Expr::lam("x", Expr::var("x"))),
                      {T("empty * (unit -> unit)")});
  ASSERT_TRUE(is_value(v));
  EXPECT_TRUE(is_value(erase(v)));
}

TEST(FreeVars, CountsOnlyUnboundNames) {
  Expr e = E("fn x => case x of { y as Cons(_) => (y, z) ; _ => w }");
  EXPECT_EQ(free_vars(e), (std::set<Name>{"z", "w"}));
}

TEST(ExprSize, AnnotationsAreFree) {
  EXPECT_EQ(expr_size(kUnit), 1u);
  EXPECT_EQ(expr_size(kNil), 2u);
  EXPECT_EQ(expr_size(Expr::anno(kNil, {T("empty")})), 2u);
}

TEST(Equality, IgnoresSourceLocations) {
  EXPECT_EQ(E("fn x =>   x"), E("fn x => x"));
  EXPECT_EQ(T("even -> odd"), Type::arrow(Type::sort("even"), Type::sort("odd")));
}

TEST(Blocks, ItemOrderIsIrrelevant) {
  Signature a = test::S("block (s of d, t of d) { s <= t; C : unit -> s; }");
  Signature b = test::S("block (s of d, t of d) { C : unit -> s; s <= t; }");
  EXPECT_EQ(a, b);
}

TEST(Context, RightmostBindingWins) {
  Context g{{"x", T("even")}, {"x", T("odd")}};
  ASSERT_NE(g.lookup("x"), nullptr);
  EXPECT_EQ(*g.lookup("x"), T("odd"));
  EXPECT_EQ(g.lookup("y"), nullptr);
}

}  // namespace
}  // namespace sortc
