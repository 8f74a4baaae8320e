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

#include "sortc/oracles.hpp"
#include "sortc/patterns.hpp"
#include "support.hpp"

namespace sortc {
namespace {

using test::E;
using test::P;
using test::T;
using test::U;

struct Patterns : ::testing::Test {
  Program list = test::program(test::kList);
  Program opt = test::program(test::kListOpt);
  Program bits = test::program(test::kBits);
  Program cnf = test::program(test::kCnf);
};

TEST_F(Patterns, PatternSuitability) {
  EXPECT_TRUE(pat_type(list.ursig, P("Nil(())"), U("list")));
  EXPECT_TRUE(pat_type(list.ursig, P("_"), U("unit -> unit")));
  EXPECT_FALSE(pat_type(list.ursig, P("Nil(())"), U("unit")));
  EXPECT_FALSE(pat_type(list.ursig, P("(_, _)"), U("list")));
  EXPECT_TRUE(pat_type(list.ursig, P("(x as Nil(_), Cons(_) | Nil(())) "),
                       U("list * list")));
}

TEST_F(Patterns, Complement) {
  EXPECT_EQ(complement(list.ursig, U("list"), P("_")), P("!"));
  EXPECT_EQ(complement(list.ursig, U("list"), P("Nil(_)")),
            Pattern::or_(P("Nil(!)"), P("Cons(_)")));
  EXPECT_EQ(complement(list.ursig, U("list"), P("!")), P("_"));
  EXPECT_EQ(complement(list.ursig, U("unit"), P("()")), P("!"));
  EXPECT_THROW(complement(list.ursig, U("list"), P("(_, _)")), Error);
}

TEST_F(Patterns, Intersection) {
  for (const char* p : {"_", "!", "Nil(_)", "(x as _, ())"})
    EXPECT_EQ(pat_intersect(P("_"), P(p)), P(p)) << p;
  EXPECT_EQ(pat_intersect(P("Nil(_)"), P("Cons(_)")), P("!"));
  EXPECT_EQ(pat_intersect(P("(_, Nil(_))"), P("(Cons(_), _)")),
            P("(Cons(_), Nil(_))"));
  EXPECT_EQ(pat_intersect(P("x as Nil(_)"), P("Nil(())")), P("x as Nil(())"));
  EXPECT_EQ(pat_intersect(P("()"), P("()")), P("()"));
}

TEST_F(Patterns, IntersectionDistributesOverLeftOrFirst) {
  Pattern out = pat_intersect(P("Nil(_) | Cons(_)"), P("Nil(()) | Cons(Nil(_))"));
  EXPECT_EQ(out, Pattern::or_(Pattern::or_(P("Nil(())"), P("!")),
                              Pattern::or_(P("!"), P("Cons(Nil(_))"))));
  EXPECT_EQ(normalize(out), P("Nil(()) | Cons(Nil(_))"));
}

TEST_F(Patterns, Normalize) {
  EXPECT_EQ(normalize(P("! | Nil(_)")), P("Nil(_)"));
  EXPECT_EQ(normalize(P("Cons(!)")), P("!"));
  for (const char* p : {"_", "Nil(())", "(x as Cons(_), ())", "Cons(Cons(_))"})
    EXPECT_EQ(normalize(P(p)), P(p)) << p;
  EXPECT_EQ(normalize(P("Nil(_) | Nil(_)")), P("Nil(_)"));
  EXPECT_EQ(normalize(P("(!, _) | x as !")), P("!"));
}

TEST_F(Patterns, MatchValue) {
  auto nil = E("Nil(())");
  auto cons = E("Cons(Nil(()))");
  auto m = match_value(P("Nil(())"), nil);
  ASSERT_TRUE(m);
  EXPECT_TRUE(m->empty());
  auto as = match_value(P("x as Cons(_)"), cons);
  ASSERT_TRUE(as);
  EXPECT_EQ(*as, (Substitution{{"x", cons}}));
  EXPECT_FALSE(match_value(P("Nil(_)"), cons));
  EXPECT_FALSE(match_value(P("!"), nil));
}

TEST_F(Patterns, MatchValueTriesLeftBranchFirst) {
  auto m = match_value(P("x as Nil(_) | y as _"), E("Nil(())"));
  ASSERT_TRUE(m);
  EXPECT_EQ(m->count("x"), 1u);
  EXPECT_EQ(m->count("y"), 0u);
}

TEST_F(Patterns, MatchValueSeesThroughAnnotations) {
  EXPECT_TRUE(match_value(P("Cons(Nil(_))"), E("(Cons((Nil(()) : empty)) : list)")));
}

TEST_F(Patterns, IntersectReturnsOneTrackPerTyping) {
  SigEnv env(opt.sig);
  auto tracks = intersect(env, T("list"), P("Cons(x as _)"));
  ASSERT_EQ(tracks.size(), 2u);
  EXPECT_EQ(print_track(tracks[0]), "x : empty |- list");
  EXPECT_EQ(print_track(tracks[1]), "x : list |- list");
}

TEST_F(Patterns, IntersectWithEmptyPatternIsEmpty) {
  SigEnv env(opt.sig);
  for (const char* a : {"list", "empty", "list * empty", "unit"})
    EXPECT_TRUE(intersect(env, T(a), P("!")).empty()) << a;
}

TEST_F(Patterns, IntersectFiltersByResultSort) {
  // Independent count: typings of Cons whose result lies below empty.
  NaiveClosure c(list.sig);
  int expected = 0;
  for (const auto& b : list.sig.blocks)
    for (const auto& item : b.items)
      if (item.ctor() && item.ctor()->ctor == "Cons" &&
          c.holds(item.ctor()->result, "empty"))
        ++expected;
  ASSERT_EQ(expected, 0);
  SigEnv env(list.sig);
  EXPECT_TRUE(intersect(env, T("empty"), P("Cons(_)")).empty());
}

TEST_F(Patterns, IntersectWildcardAndUnit) {
  SigEnv env(bits.sig);
  auto w = intersect(env, T("even & odd"), P("x as _"));
  ASSERT_EQ(w.size(), 1u);
  EXPECT_EQ(print_track(w[0]), "x : even & odd |- even & odd");
  auto u = intersect(env, T("unit"), P("()"));
  ASSERT_EQ(u.size(), 1u);
  EXPECT_EQ(u[0].residual, T("unit"));
}

TEST_F(Patterns, IntersectMeetsTracksOfEachConjunct) {
  SigEnv env(bits.sig);
  auto tracks = intersect(env, T("even & bits_s"), P("One(x as _)"));
  std::vector<std::string> got;
  for (const auto& t : tracks) got.push_back(print_track(t));
  EXPECT_EQ(got, (std::vector<std::string>{"x : odd & even |- even & odd",
                                           "x : odd & odd |- even & even",
                                           "x : odd & bits_s |- even & bits_s"}));
}

TEST_F(Patterns, IntersectPairsOnlyTracksOfTheSameBranch) {
  SigEnv env(bits.sig);
  auto tracks = intersect(env, T("even & even"), P("x as Empty(_) | y as One(_)"));
  ASSERT_EQ(tracks.size(), 2u);
  EXPECT_EQ(print_track(tracks[0]), "x : even & even |- even & even");
  EXPECT_EQ(print_track(tracks[1]), "y : even & even |- even & even");
}

TEST_F(Patterns, IntersectRejectsShapeMismatch) {
  SigEnv env(bits.sig);
  EXPECT_THROW(intersect(env, T("even -> odd"), P("One(_)")), Error);
}

TEST_F(Patterns, OptimizeTracksKeepsTheWeakestContext) {
  SigEnv env(opt.sig);
  auto tracks = optimize_tracks(env, intersect(env, T("list"), P("Cons(x as _)")));
  ASSERT_EQ(tracks.size(), 1u);
  EXPECT_EQ(print_track(tracks[0]), "x : list |- list");
  EXPECT_TRUE(optimize_tracks(env, {}).empty());
}

TEST_F(Patterns, OptimizeTracksKeepsIncomparableContexts) {
  SigEnv env(bits.sig);
  std::vector<Track> ts{{{}, Context{{"x", T("even")}}, T("bits_s")},
                        {{}, Context{{"x", T("odd")}}, T("bits_s")}};
  EXPECT_EQ(optimize_tracks(env, ts), ts);
}

TEST_F(Patterns, OptimizeTracksKeepsEarlierOfEquals) {
  SigEnv env(bits.sig);
  std::vector<Track> ts{{{}, Context{{"x", T("even")}}, T("bits_s")},
                        {{}, Context{{"x", T("even")}}, T("even")}};
  auto out = optimize_tracks(env, ts);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0], ts[0]);
}

TEST_F(Patterns, ValuesOfSizeAndWitness) {
  SigEnv env(bits.sig);
  EXPECT_EQ(values_of_size(env, T("even"), 2), std::vector<Expr>{E("Empty(())")});
  EXPECT_EQ(values_of_size(env, T("odd"), 3), std::vector<Expr>{E("One(Empty(()))")});
  EXPECT_TRUE(values_of_size(env, T("even -> even"), 2).empty());
  EXPECT_TRUE(inhabits(env, T("odd"), E("Zero(One(Empty(())))")));
  EXPECT_FALSE(inhabits(env, T("even"), E("Zero(One(Empty(())))")));
  auto w = find_witness(env, T("bits_s"), P("Zero(_)"));
  ASSERT_TRUE(w);
  EXPECT_EQ(*w, E("Zero(Empty(()))"));
}

// Small exhaustive checks of the pattern laws over the CNF signature.
TEST_F(Patterns, DichotomyAndNormalizeOverSmallValues) {
  SigEnv env(cnf.sig);
  std::vector<Expr> values;
  for (std::size_t n = 1; n <= 6; ++n)
    for (auto& v : values_of_size(env, T("cnf"), n)) values.push_back(v);
  ASSERT_FALSE(values.empty());
  std::vector<Pattern> pats;
  for (const char* p : {"_", "!", "Var(_)", "Not(Var(A(())))", "Or(_, Var(_)) | And(_)",
                        "x as Not(_)", "Or(y as _, Not(_))", "Var(B(_)) | Not(Var(_))"})
    pats.push_back(P(p));
  for (const auto& v : values)
    for (const auto& p : pats) {
      auto direct = match_value(p, v);
      auto other = match_value(complement(cnf.ursig, U("formula"), p), v);
      EXPECT_TRUE(direct ? !other : (other && other->empty()))
          << print_pattern(p) << " on " << print_expr(v);
      EXPECT_EQ(direct.has_value(), match_value(normalize(p), v).has_value());
      for (const auto& q : pats) {
        bool both = direct && match_value(q, v);
        EXPECT_EQ(both, match_value(pat_intersect(p, q), v).has_value());
      }
    }
}

}  // namespace
}  // namespace sortc
