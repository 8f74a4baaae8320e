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

#include "sortc/eval.hpp"
#include "support.hpp"

namespace sortc {
namespace {

using test::E;
using test::P;

TEST(Step, BetaReduction) {
  EXPECT_EQ(step(E("(fn x => x) ()")), E("()"));
  EXPECT_EQ(step(E("(fn x => (x, x)) Nil(())")), E("(Nil(()), Nil(()))"));
}

TEST(Step, ArgumentsReduceBeforeTheCall) {
  EXPECT_EQ(step(E("(fn x => x) ((fn y => y) ())")), E("(fn x => x) ()"));
  EXPECT_EQ(step(E("((fn y => y) (fn z => z)) ()")), E("(fn z => z) ()"));
}

TEST(Step, CaseSelectsTheMatchingArm) {
  EXPECT_EQ(step(E("case Cons(Nil(())) of { Nil(u) => u; Cons(t) => t }")), E("Nil(())"));
  EXPECT_EQ(step(E("case Nil(()) of { Nil(u) => u; Cons(t) => t }")), E("()"));
}

TEST(Step, DeclareIsDiscarded) {
  auto e = E("declare block (s of list) { Nil : unit -> s; } in Nil(())");
  EXPECT_EQ(step(e), E("Nil(())"));
}

TEST(Step, DeclareHookSeesTheExtension) {
  auto e = E("declare block (s of list) { Nil : unit -> s; } in Nil(())");
  int calls = 0;
  StepOptions opts;
  opts.on_declare = [&](const Signature& ext, const Expr& body) {
    ++calls;
    EXPECT_EQ(ext.blocks.size(), 1u);
    return Expr::pair(body, body);
  };
  EXPECT_EQ(step(e, opts), E("(Nil(()), Nil(()))"));
  EXPECT_EQ(calls, 1);
}

TEST(Step, ValuesAndStuckTermsDoNotStep) {
  for (const char* v : {"()", "x", "fn x => x", "(Nil(()), ())", "Cons(Nil(()))"})
    EXPECT_FALSE(step(E(v))) << v;
  EXPECT_FALSE(step(E("() ()")));
  EXPECT_FALSE(step(E("case () of { Nil(u) => u }")));
}

TEST(Step, AnnotationsAreDroppedOnElimination) {
  EXPECT_EQ(step(E("(fn x => x : unit -> unit) ()")), E("()"));
  EXPECT_EQ(step(E("case (Nil(()) : list) of { Nil(u) => u }")), E("()"));
}

TEST(StepMatches, FirstMatchWins) {
  Matches ms = E("case z of { Nil(u) => A(()); x as _ => x }").as<Expr::Case>()->arms;
  EXPECT_EQ(step_matches(ms, E("Nil(())")), E("A(())"));
  EXPECT_EQ(step_matches(ms, E("Cons(Nil(()))")), E("Cons(Nil(()))"));
}

TEST(StepMatches, NoArmMatches) {
  Matches ms = E("case z of { Nil(u) => u }").as<Expr::Case>()->arms;
  EXPECT_FALSE(step_matches(ms, E("Cons(Nil(()))")));
  EXPECT_FALSE(step_matches({}, E("()")));
}

TEST(Eval, ValueNeedsNoFuel) {
  auto r = eval(E("()"), 0);
  EXPECT_EQ(r.status, EvalStatus::Value);
  EXPECT_EQ(r.steps, 0u);
}

TEST(Eval, DivergenceRunsOutOfFuel) {
  auto r = eval(E("(fn x => x x) (fn x => x x)"), 100);
  EXPECT_EQ(r.status, EvalStatus::OutOfFuel);
  EXPECT_EQ(r.steps, 100u);
  EXPECT_STREQ(status_name(r.status), "out_of_fuel");
}

TEST(Eval, ConstructorValues) {
  auto r = eval(E("One(One(Empty(())))"), 10);
  EXPECT_EQ(r.status, EvalStatus::Value);
  EXPECT_EQ(r.term, E("One(One(Empty(())))"));
}

TEST(Eval, StuckTermsAreReported) {
  auto r = eval(E("case Cons(Nil(())) of { Nil(u) => u }"), 10);
  EXPECT_EQ(r.status, EvalStatus::Stuck);
  EXPECT_STREQ(status_name(r.status), "stuck");
}

TEST(Eval, ErasingAnnotationsGivesTheSameValue) {
  auto e = E("((fn f => fn b => f b : (unit -> unit) -> unit -> unit) (fn x => x)) ()");
  auto keep = eval(e, 50, AnnotationMode::Keep);
  auto erase = eval(e, 50, AnnotationMode::Erase);
  EXPECT_EQ(keep.status, EvalStatus::Value);
  EXPECT_EQ(erase.status, EvalStatus::Value);
  EXPECT_EQ(keep.term, E("()"));
  EXPECT_EQ(erase.term, E("()"));
}

TEST(Eval, NestedEvaluation) {
  auto r = eval(E("case (fn x => Cons(x)) Nil(()) of { Cons(Nil(u)) => (u, u); y as _ => ((), ()) }"),
                20);
  EXPECT_EQ(r.status, EvalStatus::Value);
  EXPECT_EQ(r.term, E("((), ())"));
  EXPECT_EQ(r.steps, 2u);
}

}  // namespace
}  // namespace sortc
